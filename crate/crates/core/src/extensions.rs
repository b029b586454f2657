//! Central extensions, generalized semi-direct products and double extensions.

use num::Zero;
use rayon::prelude::*;

use crate::algebra::{direct_sum, Element, Parity, SuperAlgebra, SuperSpace};
use crate::error::{Error, Result};
use crate::identities::{check_malcev, CheckReport, Witness, MAX_WITNESSES};
use crate::linalg::Matrix;
use crate::operators::{check_malcev_operator, check_skew_supersymmetric, OperatorMap};
use crate::quadratic::{validate, BilinearForm, QuadraticAlgebra};
use crate::scalar::{one, ratio, sign, Scalar};

/// The pair `(D, A₀)` driving a generalized double extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GdeData {
    pub d: OperatorMap,
    pub a0: Element,
    pub verified: bool,
}

impl GdeData {
    pub fn new(space: SuperSpace, d: OperatorMap, a0: Element) -> Result<Self> {
        if d.parity() != Parity::Odd {
            return Err(Error::Grading("D must be odd".into()));
        }
        if d.dim() != space.dim() || a0.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                got: a0.len(),
            });
        }
        if !a0.is_zero() && a0.parity(space) != Some(Parity::Even) {
            return Err(Error::Grading("A0 must be even".into()));
        }
        Ok(Self { d, a0, verified: false })
    }

    pub fn zero(space: SuperSpace) -> Self {
        Self {
            d: OperatorMap::zero(space.dim(), Parity::Odd),
            a0: Element::zeros(space.dim()),
            verified: false,
        }
    }
}

/// Itemized verification of GDE data.
#[derive(Debug, Clone)]
pub struct GdeReport {
    pub skew: CheckReport,
    pub malcev_operator: CheckReport,
    pub square: CheckReport,
    pub eq1: CheckReport,
    pub eq2: CheckReport,
    pub eq3: CheckReport,
}

impl GdeReport {
    pub fn reports(&self) -> [&CheckReport; 6] {
        [&self.skew, &self.malcev_operator, &self.square, &self.eq1, &self.eq2, &self.eq3]
    }

    pub fn passed(&self) -> bool {
        self.reports().iter().all(|r| r.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckReport> {
        self.reports().into_iter().find(|r| !r.passed)
    }

    /// All items folded into one report, in checking order.
    pub fn combined(&self) -> CheckReport {
        let mut r = CheckReport::pass("gde data");
        for item in self.reports() {
            if !item.passed {
                r.notes.push(format!("{} failed", item.name));
            }
            r.merge(item.clone());
        }
        r
    }
}

fn vector_check(
    name: &str,
    tuples: impl ParallelIterator<Item = (Vec<usize>, Element, Element)>,
) -> CheckReport {
    let mut fails: Vec<(Vec<usize>, Element, Element)> = tuples.filter(|(_, l, r)| l != r).collect();
    fails.sort_by(|a, b| a.0.cmp(&b.0));
    let count = fails.len();
    let ws = fails
        .into_iter()
        .take(MAX_WITNESSES)
        .map(|(indices, lhs, rhs)| Witness { indices, lhs, rhs })
        .collect();
    CheckReport::from_witnesses(name, count, ws)
}

/// Skew-supersymmetry, the Malcev operator identity, `D²(A₀) = ½A₀A₀`, and the
/// three admissibility equations
/// `D(A₀X) = A₀D(X) − D(A₀)X`,
/// `(A₀X)Y = D(D(X)Y) + D²(XY) + (−1)^x D(X)D(Y) + (−1)^{xy} D²(Y)X`,
/// `A₀(XY) = D(D(X)Y) + D²(X)Y − (−1)^{xy}(D²(Y)X + D(D(Y)X))`.
pub fn verify_gde_data(q: &QuadraticAlgebra, g: &GdeData) -> Result<GdeReport> {
    let a = &q.algebra;
    let n = a.dim();
    let s = a.space();
    if g.d.dim() != n || g.a0.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: g.a0.len(),
        });
    }
    let skew = check_skew_supersymmetric(&q.form, &g.d, s)?;
    let malcev_operator = check_malcev_operator(a, &g.d)?;

    let d = |v: &[Scalar]| g.d.apply(v);
    let a0 = &g.a0;
    let d2a0 = d(&d(a0));
    let half_sq = a.mul(a0, a0).scaled(&ratio(1, 2));
    let square = if d2a0 == half_sq {
        CheckReport::pass("D^2(A0) = A0A0/2")
    } else {
        CheckReport::from_witnesses(
            "D^2(A0) = A0A0/2",
            1,
            vec![Witness {
                indices: vec![],
                lhs: d2a0,
                rhs: half_sq,
            }],
        )
    };

    let da0 = d(a0);
    let eq1 = vector_check(
        "admissibility eq1",
        (0..n).into_par_iter().map(|x| {
            let bx = Element::basis(n, x);
            let lhs = d(&a.mul(a0, &bx));
            let rhs = a.mul(a0, &d(&bx)).minus(&a.mul(&da0, &bx));
            (vec![x], lhs, rhs)
        }),
    );

    let images: Vec<Element> = (0..n).map(|i| g.d.image(i)).collect();
    let squares: Vec<Element> = images.iter().map(|v| d(v)).collect();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    let eq2 = vector_check(
        "admissibility eq2",
        pairs.par_iter().map(|&(x, y)| {
            let (px, py) = (s.p(x), s.p(y));
            let bx = Element::basis(n, x);
            let lhs = a.mul_basis_right(&a.mul(a0, &bx), y);
            let xy = a.basis_product_element(x, y);
            let mut rhs = d(&a.mul_basis_right(&images[x], y));
            rhs.add_scaled(&one(), &d(&d(&xy)));
            rhs.add_scaled(&sign(px), &a.mul(&images[x], &images[y]));
            rhs.add_scaled(&sign(px * py), &a.mul_basis_right(&squares[y], x));
            (vec![x, y], lhs, rhs)
        }),
    );
    let eq3 = vector_check(
        "admissibility eq3",
        pairs.par_iter().map(|&(x, y)| {
            let (px, py) = (s.p(x), s.p(y));
            let lhs = a.mul(a0, &a.basis_product_element(x, y));
            let mut rhs = d(&a.mul_basis_right(&images[x], y));
            rhs.add_scaled(&one(), &a.mul_basis_right(&squares[x], y));
            let mut inner = a.mul_basis_right(&squares[y], x);
            inner.add_scaled(&one(), &d(&a.mul_basis_right(&images[y], x)));
            rhs.add_scaled(&-sign(px * py), &inner);
            (vec![x, y], lhs, rhs)
        }),
    );

    Ok(GdeReport {
        skew,
        malcev_operator,
        square,
        eq1,
        eq2,
        eq3,
    })
}

/// Where the new vectors went and where the old basis vectors moved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionWitness {
    pub e_index: usize,
    pub e_star_index: usize,
    /// `embedding[i]` is the output index of input basis vector `i`.
    pub embedding: Vec<usize>,
}

impl ExtensionWitness {
    /// Layout of an odd extension: even of M, then e, odd of M, e*.
    pub fn odd_layout(space: SuperSpace) -> Self {
        let p = space.even;
        Self {
            e_index: p,
            e_star_index: space.dim() + 1,
            embedding: (0..space.dim()).map(|i| if i < p { i } else { i + 1 }).collect(),
        }
    }

    /// Layout of an even extension: e, even of M, e*, odd of M.
    pub fn even_layout(space: SuperSpace) -> Self {
        let p = space.even;
        Self {
            e_index: 0,
            e_star_index: p + 1,
            embedding: (0..space.dim()).map(|i| if i < p { i + 1 } else { i + 2 }).collect(),
        }
    }

    /// Embedding of an input vector into the output coordinates.
    pub fn embed(&self, v: &[Scalar]) -> Element {
        let mut out = Element::zeros(self.embedding.len() + 2);
        for (i, c) in v.iter().enumerate() {
            out[self.embedding[i]] = c.clone();
        }
        out
    }
}

fn check_odd_operator(q: &QuadraticAlgebra, d: &OperatorMap, parity: Parity) -> Result<()> {
    if d.parity() != parity {
        return Err(Error::Grading(format!("operator must be {parity}")));
    }
    if d.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: q.dim(),
            got: d.dim(),
        });
    }
    let skew = check_skew_supersymmetric(&q.form, d, q.space())?;
    if !skew.passed {
        return Err(Error::validation("skew-supersymmetry of the operator", skew));
    }
    let op = check_malcev_operator(&q.algebra, d)?;
    if !op.passed {
        return Err(Error::validation("malcev operator identity", op));
    }
    Ok(())
}

/// `M ⊕ 𝕂e*` with `e*` odd and appended last; `XY ↦ XY − B(D X, Y) e*`.
pub fn central_extension(q: &QuadraticAlgebra, d: &OperatorMap) -> Result<SuperAlgebra> {
    check_odd_operator(q, d, Parity::Odd)?;
    Ok(central_extension_unchecked(q, d))
}

fn central_extension_unchecked(q: &QuadraticAlgebra, d: &OperatorMap) -> SuperAlgebra {
    let a = &q.algebra;
    let s = a.space();
    let n = s.dim();
    let star = n;
    let phi = d.matrix().transpose().mul(q.form.gram()); // B(D b_i, b_j)
    let space = SuperSpace::new(s.even, s.odd + 1);
    SuperAlgebra::from_basis_products(format!("{}.c", a.name()), space, |i, j| {
        let mut out = Element::zeros(n + 1);
        if i < n && j < n {
            for (k, c) in a.basis_product(i, j) {
                out[*k] = c.clone();
            }
            out[star] = -phi[(i, j)].clone();
        }
        out
    })
    .expect("central extension respects the grading")
}

/// The operator and cocycle data of a generalized semi-direct product of `M`
/// and `V`: `omega[i]` acts on `V` for basis vector `i` of `M`, and `zeta[i][j]`
/// lies in `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemidirectData {
    pub omega: Vec<OperatorMap>,
    pub zeta: Vec<Vec<Element>>,
}

/// Per-condition results; `omega_operators` and `zeta_shape` are the standing
/// hypotheses, `conditions` holds (i) to (v) in order.
#[derive(Debug, Clone)]
pub struct GsdReport {
    pub omega_operators: CheckReport,
    pub zeta_shape: CheckReport,
    pub conditions: [CheckReport; 5],
}

impl GsdReport {
    pub fn passed(&self) -> bool {
        self.omega_operators.passed && self.zeta_shape.passed && self.conditions.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckReport> {
        std::iter::once(&self.omega_operators)
            .chain(std::iter::once(&self.zeta_shape))
            .chain(self.conditions.iter())
            .find(|r| !r.passed)
    }
}

fn check_semidirect_shapes(m: &SuperAlgebra, v: &SuperAlgebra, s: &SemidirectData) -> Result<()> {
    let (nm, nv) = (m.dim(), v.dim());
    if s.omega.len() != nm || s.zeta.len() != nm || s.zeta.iter().any(|r| r.len() != nm) {
        return Err(Error::DimensionMismatch {
            expected: nm,
            got: s.omega.len(),
        });
    }
    for o in &s.omega {
        if o.dim() != nv {
            return Err(Error::DimensionMismatch {
                expected: nv,
                got: o.dim(),
            });
        }
    }
    for row in &s.zeta {
        for z in row {
            if z.len() != nv {
                return Err(Error::DimensionMismatch {
                    expected: nv,
                    got: z.len(),
                });
            }
        }
    }
    Ok(())
}

/// Conditions (i) to (v) of the generalized semi-direct product, each on all
/// basis tuples, plus the standing hypotheses on `Ω` and `ζ`.
pub fn check_gsd_conditions(m: &SuperAlgebra, v: &SuperAlgebra, s: &SemidirectData) -> Result<GsdReport> {
    check_semidirect_shapes(m, v, s)?;
    let (nm, nv) = (m.dim(), v.dim());
    let (sm, sv) = (m.space(), v.space());

    let mut omega_operators = CheckReport::pass("omega values are malcev operators");
    for (i, o) in s.omega.iter().enumerate() {
        let expected = sm.parity(i);
        if o.parity() != expected && !o.is_zero() {
            omega_operators.fail(Witness {
                indices: vec![i],
                lhs: Element::zeros(0),
                rhs: Element::zeros(0),
            });
            omega_operators.notes.push(format!("omega({i}) has the wrong parity"));
            continue;
        }
        let r = check_malcev_operator(v, o)?;
        if !r.passed {
            let mut r = r;
            for w in &mut r.witnesses {
                w.indices.insert(0, i);
            }
            omega_operators.merge(r);
        }
    }
    omega_operators.name = "omega values are malcev operators".into();

    let mut zeta_shape = CheckReport::pass("zeta even and graded skew");
    for i in 0..nm {
        for j in 0..nm {
            let z = &s.zeta[i][j];
            let want = sm.parity(i).add(sm.parity(j));
            if !z.is_zero() && z.parity(sv) != Some(want) {
                zeta_shape.fail(Witness {
                    indices: vec![i, j],
                    lhs: z.clone(),
                    rhs: Element::zeros(nv),
                });
            }
            let rhs = s.zeta[j][i].scaled(&-sign(sm.p(i) * sm.p(j)));
            if *z != rhs {
                zeta_shape.fail(Witness {
                    indices: vec![i, j],
                    lhs: z.clone(),
                    rhs,
                });
            }
        }
    }

    // helpers: Ω applied to an element of M, ζ on elements of M
    let omega_of = |x: &[Scalar], h: &[Scalar]| -> Element {
        let mut out = Element::zeros(nv);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(c, &s.omega[i].apply(h));
            }
        }
        out
    };
    let om = |i: usize, h: &[Scalar]| s.omega[i].apply(h);
    let zeta_of = |x: &[Scalar], y: &[Scalar]| -> Element {
        let mut out = Element::zeros(nv);
        for (i, ci) in x.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, cj) in y.iter().enumerate() {
                if !cj.is_zero() {
                    out.add_scaled(&(ci * cj), &s.zeta[i][j]);
                }
            }
        }
        out
    };
    let vb = |k: usize| Element::basis(nv, k);
    let mb = |k: usize| Element::basis(nm, k);
    let vm = |a: &[Scalar], b: &[Scalar]| v.mul(a, b);

    // (i): X, Y in M; h, i in V
    let c1 = {
        let tuples: Vec<[usize; 4]> = quads(nm, nm, nv, nv);
        vector_check(
            "condition (i)",
            tuples.par_iter().map(|&[x, y, h, i]| {
                let (px, py, pz, pt) = (sm.p(x), sm.p(y), sv.p(h), sv.p(i));
                let (bh, bi) = (vb(h), vb(i));
                let xy = m.basis_product_element(x, y);
                let mut sum = vm(&omega_of(&xy, &bh), &bi);
                sum.add_scaled(&-one(), &om(x, &vm(&om(y, &bh), &bi)));
                sum.add_scaled(&-sign(py * pz), &vm(&om(x, &bh), &om(y, &bi)));
                sum.add_scaled(&sign(px * py), &om(y, &om(x, &vm(&bh, &bi))));
                sum.add_scaled(&sign(pt * pz + px * py), &vm(&om(y, &om(x, &bi)), &bh));
                sum.add_scaled(&one(), &vm(&vm(&s.zeta[x][y], &bh), &bi));
                (vec![x, y, h, i], sum, Element::zeros(nv))
            }),
        )
    };

    // (ii): X, Z in M; g, i in V
    let c2 = {
        let tuples = quads(nm, nm, nv, nv);
        vector_check(
            "condition (ii)",
            tuples.par_iter().map(|&[x, z, g, i]| {
                let (px, pz, py, pt) = (sm.p(x), sm.p(z), sv.p(g), sv.p(i));
                let (bg, bi) = (vb(g), vb(i));
                let gi = vm(&bg, &bi);
                let mut lhs = vm(&s.zeta[x][z], &gi);
                lhs.add_scaled(&one(), &omega_of(&m.basis_product_element(x, z), &gi));
                let lhs = lhs.scaled(&sign(py * pz));
                let mut rhs = vm(&om(z, &om(x, &bg)), &bi).scaled(&-sign(pz * (px + py)));
                rhs.add_scaled(&sign(py * pz), &om(x, &vm(&om(z, &bg), &bi)));
                rhs.add_scaled(&-sign(py * (pz + pt)), &vm(&om(x, &om(z, &bi)), &bg));
                rhs.add_scaled(&sign(pt * py + (px + py) * pz), &om(z, &vm(&om(x, &bi), &bg)));
                (vec![x, z, g, i], lhs, rhs)
            }),
        )
    };

    // (iii): X, Y, T in M; h in V
    let c3 = {
        let tuples = quads(nm, nm, nm, nv);
        vector_check(
            "condition (iii)",
            tuples.par_iter().map(|&[x, y, t, h]| {
                let (px, py, pt, pz) = (sm.p(x), sm.p(y), sm.p(t), sv.p(h));
                let bh = vb(h);
                let mut sum = vm(&om(x, &bh), &s.zeta[y][t]).scaled(&sign(py * pz));
                sum.add_scaled(&sign(pt * (px + py + pz)), &om(t, &vm(&s.zeta[x][y], &bh)));
                sum.add_scaled(&sign(pt * (px + pz) + px * py), &vm(&om(y, &s.zeta[t][x]), &bh));
                (vec![x, y, t, h], sum, Element::zeros(nv))
            }),
        )
    };

    // (iv): X, Y, Z, T in M
    let c4 = {
        let tuples = quads(nm, nm, nm, nm);
        vector_check(
            "condition (iv)",
            tuples.par_iter().map(|&[x, y, z, t]| {
                let (px, py, pz, pt) = (sm.p(x), sm.p(y), sm.p(z), sm.p(t));
                let mp = |a: usize, b: usize| m.basis_product_element(a, b);
                let xz = mp(x, z);
                let yt = mp(y, t);
                let mut lhs = omega_of(&xz, &s.zeta[y][t]).scaled(&-sign(py * pz));
                lhs.add_scaled(&sign(pt * (py + pz)), &om(x, &om(t, &s.zeta[y][z])));
                lhs.add_scaled(&sign(px * (py + pz + pt) + py * pz), &om(z, &om(y, &s.zeta[t][x])));
                lhs.add_scaled(&-one(), &om(x, &zeta_of(&mp(y, z), &mb(t))));
                lhs.add_scaled(&-sign((px + py) * (pz + pt)), &om(z, &zeta_of(&mp(t, x), &mb(y))));

                let mut inner = zeta_of(&xz, &yt);
                inner.add_scaled(&one(), &vm(&s.zeta[x][z], &s.zeta[y][t]));
                let mut rhs = inner.scaled(&-sign(py * pz));
                let tri = |a: usize, b: usize, c: usize| m.mul_basis_right(&mp(a, b), c);
                rhs.add_scaled(&one(), &zeta_of(&tri(x, y, z), &mb(t)));
                rhs.add_scaled(&sign(px * (py + pz + pt)), &zeta_of(&tri(y, z, t), &mb(x)));
                rhs.add_scaled(&sign((px + py) * (pz + pt)), &zeta_of(&tri(z, t, x), &mb(y)));
                rhs.add_scaled(&sign(pt * (px + py + pz)), &zeta_of(&tri(t, x, y), &mb(z)));
                (vec![x, y, z, t], lhs, rhs)
            }),
        )
    };

    // (v): X, Y, Z in M; i in V
    let c5 = {
        let tuples = quads(nm, nm, nm, nv);
        vector_check(
            "condition (v)",
            tuples.par_iter().map(|&[x, y, z, i]| {
                let (px, py, pz) = (sm.p(x), sm.p(y), sm.p(z));
                let bi = vb(i);
                let mp = |a: usize, b: usize| m.basis_product_element(a, b);
                let mut sum = omega_of(&mp(x, z), &om(y, &bi)).scaled(&sign(py * pz));
                sum.add_scaled(&-one(), &vm(&zeta_of(&mp(x, y), &mb(z)), &bi));
                sum.add_scaled(&-one(), &omega_of(&m.mul_basis_right(&mp(x, y), z), &bi));
                sum.add_scaled(&one(), &om(x, &omega_of(&mp(y, z), &bi)));
                sum.add_scaled(&-sign(px * py), &om(y, &om(x, &om(z, &bi))));
                sum.add_scaled(&sign((px + py) * pz + px * py), &om(z, &om(y, &om(x, &bi))));
                (vec![x, y, z, i], sum, Element::zeros(nv))
            }),
        )
    };

    Ok(GsdReport {
        omega_operators,
        zeta_shape,
        conditions: [c1, c2, c3, c4, c5],
    })
}

fn quads(a: usize, b: usize, c: usize, d: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(a * b * c * d);
    for i in 0..a {
        for j in 0..b {
            for k in 0..c {
                for l in 0..d {
                    out.push([i, j, k, l]);
                }
            }
        }
    }
    out
}

/// `(X+f)(Y+h) = (XY)_M + (fh)_V + Ω(X)(h) − (−1)^{xy}Ω(Y)(f) + ζ(X,Y)` on the
/// direct-sum layout of `M ⊕ V`. Refuses unless every condition passes.
pub fn generalized_semidirect_product(m: &SuperAlgebra, v: &SuperAlgebra, s: &SemidirectData) -> Result<SuperAlgebra> {
    let report = check_gsd_conditions(m, v, s)?;
    if let Some(f) = report.first_failure() {
        return Err(Error::validation(f.name.clone(), f.clone()));
    }
    Ok(semidirect_unchecked(m, v, s))
}

pub(crate) fn semidirect_unchecked(m: &SuperAlgebra, v: &SuperAlgebra, s: &SemidirectData) -> SuperAlgebra {
    let (sum, emb) = direct_sum(m, v);
    let total = sum.space();
    let n = total.dim();
    let lift_v = |e: &Element| {
        let mut out = Element::zeros(n);
        for (k, c) in e.iter().enumerate() {
            out[emb.right[k]] = c.clone();
        }
        out
    };
    // owner[k] = (is_m, local index)
    let mut owner = vec![(false, 0usize); n];
    for (i, &g) in emb.left.iter().enumerate() {
        owner[g] = (true, i);
    }
    for (i, &g) in emb.right.iter().enumerate() {
        owner[g] = (false, i);
    }
    let sm = m.space();
    let sv = v.space();
    SuperAlgebra::from_basis_products(format!("{}x{}", m.name(), v.name()), total, |a, b| {
        let mut out = sum.basis_product_element(a, b);
        match (owner[a], owner[b]) {
            ((true, i), (true, j)) => out.add_scaled(&one(), &lift_v(&s.zeta[i][j])),
            ((true, i), (false, h)) => out.add_scaled(&one(), &lift_v(&s.omega[i].image(h))),
            ((false, f), (true, j)) => {
                out.add_scaled(&-sign(sv.p(f) * sm.p(j)), &lift_v(&s.omega[j].image(f)))
            }
            ((false, _), (false, _)) => {}
        }
        out
    })
    .expect("semi-direct product respects the grading")
}

/// The operator `D̃` on `M ⊕ 𝕂e*`: `D̃(X) = D(X) − (−1)^x B(X, A₀) e*`, `D̃(e*) = 0`.
pub fn extended_operator(q: &QuadraticAlgebra, g: &GdeData) -> OperatorMap {
    let s = q.space();
    let n = s.dim();
    let space = SuperSpace::new(s.even, s.odd + 1);
    let ba0 = q.form.gram().mul_vec(&g.a0); // B(b_i, A0)
    let mut m = Matrix::zeros(n + 1, n + 1);
    for (r, c, v) in g.d.matrix().nonzero_entries() {
        m[(r, c)] = v.clone();
    }
    for i in 0..n {
        if !ba0[i].is_zero() {
            m[(n, i)] = -sign(s.p(i)) * &ba0[i];
        }
    }
    OperatorMap::new(space, m, Parity::Odd).expect("extended operator is odd")
}

/// `(Ω, ζ)` with `Ω(e) = D̃` and `ζ(e, e) = A₀`, together with the two factors
/// `(𝕂e)₁̄` and the central extension `M ⊕ 𝕂e*`.
pub fn induced_semidirect_data(q: &QuadraticAlgebra, g: &GdeData) -> (SuperAlgebra, SuperAlgebra, SemidirectData) {
    let line = SuperAlgebra::abelian("Ke", SuperSpace::new(0, 1));
    let v = central_extension_unchecked(q, &g.d);
    let mut a0 = g.a0.0.clone();
    a0.push(Scalar::zero());
    let data = SemidirectData {
        omega: vec![extended_operator(q, g)],
        zeta: vec![vec![Element(a0)]],
    };
    (line, v, data)
}

/// The bracket table of the generalized double extension, without any checks.
pub fn gde_algebra(q: &QuadraticAlgebra, g: &GdeData) -> (SuperAlgebra, ExtensionWitness) {
    let a = &q.algebra;
    let s = a.space();
    let w = ExtensionWitness::odd_layout(s);
    let n = s.dim();
    let total = n + 2;
    let space = SuperSpace::new(s.even, s.odd + 2);
    let star = w.e_star_index;
    let ba0 = q.form.gram().mul_vec(&g.a0); // B(b_i, A0)
    let phi = g.d.matrix().transpose().mul(q.form.gram()); // B(D b_i, b_j)
    let mut back = vec![None; total];
    for (i, &k) in w.embedding.iter().enumerate() {
        back[k] = Some(i);
    }
    // e b_i = D(b_i) − (−1)^i B(b_i, A0) e*
    let e_times = |i: usize| -> Element {
        let mut out = w.embed(&g.d.image(i));
        out[star] = -sign(s.p(i)) * &ba0[i];
        out
    };
    let alg = SuperAlgebra::from_basis_products(format!("gde({})", a.name()), space, |x, y| {
        if x == star || y == star {
            return Element::zeros(total);
        }
        match (back[x], back[y]) {
            (None, None) => w.embed(&g.a0),
            (None, Some(j)) => e_times(j),
            (Some(i), None) => e_times(i).scaled(&-sign(s.p(i))),
            (Some(i), Some(j)) => {
                let mut out = w.embed(&a.basis_product_element(i, j));
                out[star] = -phi[(i, j)].clone();
                out
            }
        }
    })
    .expect("extension respects the grading");
    (alg, w)
}

/// `B̃`: `B` on the embedded copy of `M`, `B̃(e*, e) = 1 = −B̃(e, e*)`, all other new pairings zero.
pub fn gde_form(q: &QuadraticAlgebra, w: &ExtensionWitness) -> BilinearForm {
    let n = q.dim() + 2;
    let mut g = Matrix::zeros(n, n);
    for (i, j, v) in q.form.gram().nonzero_entries() {
        g[(w.embedding[i], w.embedding[j])] = v.clone();
    }
    g[(w.e_star_index, w.e_index)] = one();
    g[(w.e_index, w.e_star_index)] = -one();
    BilinearForm::new(g).expect("square")
}

/// Generalized double extension by the odd line. Refuses unverified data.
pub fn generalized_double_extension(q: &QuadraticAlgebra, g: &GdeData) -> Result<(QuadraticAlgebra, ExtensionWitness)> {
    let report = verify_gde_data(q, g)?;
    if let Some(f) = report.first_failure() {
        return Err(Error::validation(f.name.clone(), f.clone()));
    }
    let (alg, w) = gde_algebra(q, g);
    let form = gde_form(q, &w);
    Ok((
        QuadraticAlgebra {
            algebra: alg,
            form,
            validated: q.validated,
        },
        w,
    ))
}

/// Double extension by the even line: `eX = D(X)`, `XY = (XY)_M + B(DX, Y)e*`,
/// `ee = 0`, `e*` central, hyperbolic form on `(e, e*)`. The result is validated
/// and refused with witnesses if any check fails.
pub fn double_extension_even(q: &QuadraticAlgebra, d: &OperatorMap) -> Result<(QuadraticAlgebra, ExtensionWitness)> {
    check_odd_operator(q, d, Parity::Even)?;
    let (alg, form, w) = even_extension_parts(q, d);
    let report = validate(&alg, &form)?;
    if let Some(f) = report.first_failure() {
        return Err(Error::validation(f.name.clone(), f.clone()));
    }
    Ok((
        QuadraticAlgebra {
            algebra: alg,
            form,
            validated: true,
        },
        w,
    ))
}

pub(crate) fn even_extension_parts(q: &QuadraticAlgebra, d: &OperatorMap) -> (SuperAlgebra, BilinearForm, ExtensionWitness) {
    let a = &q.algebra;
    let s = a.space();
    let w = ExtensionWitness::even_layout(s);
    let total = s.dim() + 2;
    let space = SuperSpace::new(s.even + 2, s.odd);
    let (e, star) = (w.e_index, w.e_star_index);
    let phi = d.matrix().transpose().mul(q.form.gram());
    let mut back = vec![None; total];
    for (i, &k) in w.embedding.iter().enumerate() {
        back[k] = Some(i);
    }
    let alg = SuperAlgebra::from_basis_products(format!("de({})", a.name()), space, |x, y| {
        if x == star || y == star || (x == e && y == e) {
            return Element::zeros(total);
        }
        match (back[x], back[y]) {
            (None, Some(j)) => w.embed(&d.image(j)),
            (Some(i), None) => w.embed(&d.image(i)).scaled(&-one()),
            (Some(i), Some(j)) => {
                let mut out = w.embed(&a.basis_product_element(i, j));
                out[star] = phi[(i, j)].clone();
                out
            }
            (None, None) => unreachable!(),
        }
    })
    .expect("extension respects the grading");
    let mut g = Matrix::zeros(total, total);
    for (i, j, v) in q.form.gram().nonzero_entries() {
        g[(w.embedding[i], w.embedding[j])] = v.clone();
    }
    g[(e, star)] = one();
    g[(star, e)] = one();
    (alg, BilinearForm::new(g).expect("square"), w)
}

/// Quick Malcev status of an extension output, for diagnostics.
pub fn extension_is_malcev(a: &SuperAlgebra) -> bool {
    check_malcev(a).passed
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn abelian12() -> QuadraticAlgebra {
        let a = SuperAlgebra::abelian("ab", SuperSpace::new(1, 2));
        let b = BilinearForm::from_entries(3, [(0, 0, int(1)), (1, 2, int(1)), (2, 1, int(-1))]).unwrap();
        QuadraticAlgebra::new(a, b).unwrap()
    }

    fn data12() -> GdeData {
        let s = SuperSpace::new(1, 2);
        let d = OperatorMap::from_entries(s, Parity::Odd, [(1, 0, int(1)), (0, 2, int(-1))]).unwrap();
        GdeData::new(s, d, Element::basis(3, 0)).unwrap()
    }

    #[test]
    fn abelian_base_extension_has_the_expected_brackets() {
        let q = abelian12();
        let g = data12();
        assert!(verify_gde_data(&q, &g).unwrap().passed());
        let (k, w) = generalized_double_extension(&q, &g).unwrap();
        // layout: u=0, e=1, w=2, z=3, e*=4
        assert_eq!((w.e_index, w.e_star_index), (1, 4));
        let a = &k.algebra;
        assert_eq!(a.basis_product_element(1, 1), Element::basis(5, 0));
        let mut ew = Element::basis(5, 2);
        ew[4] = int(-1);
        assert_eq!(a.basis_product_element(1, 0), ew);
        assert_eq!(a.basis_product_element(1, 3), Element::basis(5, 0).scaled(&int(-1)));
        assert_eq!(a.basis_product_element(0, 3), Element::basis(5, 4).scaled(&int(-1)));
        assert_eq!(a.nnz(), 9);
        assert!(validate(&k.algebra, &k.form).unwrap().passed());
    }

    #[test]
    fn central_extension_products() {
        let q = abelian12();
        let c = central_extension(&q, &data12().d).unwrap();
        assert_eq!(c.basis_product_element(0, 2), Element::basis(4, 3).scaled(&int(-1)));
        assert_eq!(c.basis_product_element(2, 0), Element::basis(4, 3));
        assert_eq!(c.nnz(), 2);
    }

    #[test]
    fn induced_data_satisfies_the_conditions_and_matches() {
        let q = abelian12();
        let g = data12();
        let (m, v, s) = induced_semidirect_data(&q, &g);
        let r = check_gsd_conditions(&m, &v, &s).unwrap();
        for c in &r.conditions {
            assert!(c.passed, "{} {:?}", c.name, c.witnesses);
        }
        let prod = generalized_semidirect_product(&m, &v, &s).unwrap();
        assert_eq!(prod, gde_algebra(&q, &g).0);
    }

    #[test]
    fn trivial_data_gives_hyperbolic_sum() {
        let q = abelian12();
        let (k, _) = generalized_double_extension(&q, &GdeData::zero(q.space())).unwrap();
        assert!(k.algebra.is_abelian());
        assert!(validate(&k.algebra, &k.form).unwrap().passed());
    }

    #[test]
    fn even_extension_of_the_zero_algebra() {
        let q = QuadraticAlgebra::zero();
        let (k, w) = double_extension_even(&q, &OperatorMap::zero(0, Parity::Even)).unwrap();
        assert_eq!(k.space(), SuperSpace::new(2, 0));
        assert_eq!(k.form.pair(w.e_index, w.e_star_index), &int(1));
    }
}
