//! Malcev operators, skew-supersymmetric maps and Malcev 2-cocycles.

use num::Zero;
use rayon::prelude::*;

use crate::algebra::{Element, Parity, SuperAlgebra, SuperSpace};
use crate::error::{Error, Result};
use crate::identities::{collect_report, CheckReport, ProductCache, Witness, MAX_WITNESSES};
use crate::linalg::{Matrix, RowReducer};
use crate::quadratic::{BilinearForm, QuadraticAlgebra};
use crate::scalar::{sign, Scalar, ScalarStream};

/// Homogeneous linear endomorphism; column `c` is the image of `b_c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorMap {
    matrix: Matrix,
    parity: Parity,
}

/// True when every nonzero entry `(r, c)` has `parity(r) = parity(c) + parity`.
fn is_homogeneous_matrix(space: SuperSpace, m: &Matrix, parity: Parity) -> Option<(usize, usize)> {
    m.nonzero_entries()
        .find(|(r, c, _)| space.parity(*r) != space.parity(*c).add(parity))
        .map(|(r, c, _)| (r, c))
}

impl OperatorMap {
    pub fn new(space: SuperSpace, matrix: Matrix, parity: Parity) -> Result<Self> {
        let n = space.dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: matrix.cols(),
            });
        }
        if let Some((r, c)) = is_homogeneous_matrix(space, &matrix, parity) {
            return Err(Error::Grading(format!(
                "operator of parity {parity} has a nonzero entry at ({r}, {c})"
            )));
        }
        Ok(Self { matrix, parity })
    }

    pub fn zero(n: usize, parity: Parity) -> Self {
        Self {
            matrix: Matrix::zeros(n, n),
            parity,
        }
    }

    /// `(row, column, value)` entries: the coefficient of `b_row` in the image of `b_column`.
    pub fn from_entries(
        space: SuperSpace,
        parity: Parity,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Self> {
        let n = space.dim();
        let mut m = Matrix::zeros(n, n);
        for (r, c, v) in entries {
            if r >= n || c >= n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: r.max(c) + 1,
                });
            }
            m[(r, c)] += v;
        }
        Self::new(space, m, parity)
    }

    /// Left multiplication by a basis vector, with that vector's parity.
    pub fn left_multiplication(a: &SuperAlgebra, i: usize) -> Self {
        Self {
            matrix: a.left_multiplication(i),
            parity: a.space().parity(i),
        }
    }

    /// Splits an arbitrary matrix into its even and odd homogeneous components.
    pub fn split(space: SuperSpace, m: &Matrix) -> (OperatorMap, OperatorMap) {
        let n = space.dim();
        let mut even = Matrix::zeros(n, n);
        let mut odd = Matrix::zeros(n, n);
        for (r, c, v) in m.nonzero_entries() {
            if space.parity(r) == space.parity(c) {
                even[(r, c)] = v.clone();
            } else {
                odd[(r, c)] = v.clone();
            }
        }
        (
            OperatorMap {
                matrix: even,
                parity: Parity::Even,
            },
            OperatorMap {
                matrix: odd,
                parity: Parity::Odd,
            },
        )
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, v: &[Scalar]) -> Element {
        Element(self.matrix.mul_vec(v))
    }

    /// Image of the basis vector `b_i`.
    pub fn image(&self, i: usize) -> Element {
        Element(self.matrix.column(i))
    }

    pub fn compose(&self, other: &OperatorMap) -> OperatorMap {
        OperatorMap {
            matrix: self.matrix.mul(&other.matrix),
            parity: self.parity.add(other.parity),
        }
    }

    /// Same operator in a new basis whose vectors are the columns of `basis`.
    pub fn change_basis(&self, basis: &Matrix) -> Result<OperatorMap> {
        let inv = basis
            .inverse()
            .ok_or_else(|| Error::precondition("basis change matrix is singular"))?;
        Ok(OperatorMap {
            matrix: inv.mul(&self.matrix).mul(basis),
            parity: self.parity,
        })
    }
}

/// Bilinear map `ω(b_i, b_j)` with values in a one-dimensional space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    values: Matrix,
    parity: Parity,
}

impl Cocycle {
    /// Only the degree is validated here; skew-symmetry is part of [`check_cocycle`].
    pub fn new(space: SuperSpace, values: Matrix, parity: Parity) -> Result<Self> {
        let n = space.dim();
        if values.rows() != n || values.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: values.cols(),
            });
        }
        if let Some((i, j, _)) = values
            .nonzero_entries()
            .find(|(i, j, _)| space.parity(*i).add(space.parity(*j)) != parity)
        {
            return Err(Error::Grading(format!(
                "cocycle of degree {parity} is nonzero on ({i}, {j})"
            )));
        }
        Ok(Self { values, parity })
    }

    pub fn values(&self) -> &Matrix {
        &self.values
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let wy = self.values.mul_vec(y);
        x.iter()
            .zip(&wy)
            .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
    }
}

/// `φ((XY)Z) = (φ(X)Y)Z − (−1)^{xy}φ(Y)(XZ) − (−1)^{z(x+y)}(φ(Z)X)Y − (−1)^{x(y+z)}φ(YZ)X`
/// on every basis triple.
pub fn check_malcev_operator(a: &SuperAlgebra, f: &OperatorMap) -> Result<CheckReport> {
    let n = a.dim();
    if f.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: f.dim(),
        });
    }
    let s = a.space();
    let cache = ProductCache::new(a);
    let images: Vec<Element> = (0..n).map(|i| f.image(i)).collect();
    let chunks: Vec<(usize, Vec<Witness>)> = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut failures = 0;
            let mut ws = Vec::new();
            let px = s.p(x);
            for y in 0..n {
                let py = s.p(y);
                for z in 0..n {
                    let pz = s.p(z);
                    let lhs = f.apply(cache.triple(x, y, z));
                    let mut rhs = a.mul_basis_right(&a.mul_basis_right(&images[x], y), z);
                    rhs.add_scaled(&-sign(px * py), &a.mul(&images[y], cache.pair(x, z)));
                    rhs.add_scaled(
                        &-sign(pz * (px + py)),
                        &a.mul_basis_right(&a.mul_basis_right(&images[z], x), y),
                    );
                    rhs.add_scaled(
                        &-sign(px * (py + pz)),
                        &a.mul_basis_right(&f.apply(cache.pair(y, z)), x),
                    );
                    if lhs != rhs {
                        failures += 1;
                        if ws.len() < MAX_WITNESSES {
                            ws.push(Witness {
                                indices: vec![x, y, z],
                                lhs,
                                rhs,
                            });
                        }
                    }
                }
            }
            (failures, ws)
        })
        .collect();
    Ok(collect_report("malcev operator", chunks))
}

/// `B(φX, Y) = −(−1)^{αx} B(X, φY)` on basis pairs.
pub fn check_skew_supersymmetric(b: &BilinearForm, f: &OperatorMap, space: SuperSpace) -> Result<CheckReport> {
    let n = b.dim();
    if f.dim() != n || space.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: f.dim(),
        });
    }
    let left = f.matrix().transpose().mul(b.gram());
    let right = b.gram().mul(f.matrix());
    let alpha = f.parity().bit();
    let mut report = CheckReport::pass("skew-supersymmetry");
    for i in 0..n {
        for j in 0..n {
            let rhs = -sign(alpha * space.p(i)) * &right[(i, j)];
            if left[(i, j)] != rhs {
                report.fail(Witness {
                    indices: vec![i, j],
                    lhs: Element(vec![left[(i, j)].clone()]),
                    rhs: Element(vec![rhs]),
                });
            }
        }
    }
    Ok(report)
}

/// Graded skew-symmetry plus the four-variable cocycle identity on basis quadruples.
pub fn check_cocycle(a: &SuperAlgebra, w: &Cocycle) -> Result<CheckReport> {
    let n = a.dim();
    if w.values().rows() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: w.values().rows(),
        });
    }
    let s = a.space();
    let vals = w.values();
    let mut skew = CheckReport::pass("cocycle skew-symmetry");
    for i in 0..n {
        for j in i..n {
            let rhs = -sign(s.p(i) * s.p(j)) * &vals[(j, i)];
            if vals[(i, j)] != rhs {
                skew.fail(Witness {
                    indices: vec![i, j],
                    lhs: Element(vec![vals[(i, j)].clone()]),
                    rhs: Element(vec![rhs]),
                });
            }
        }
    }

    let cache = ProductCache::new(a);
    // ω(u, b_t) for every u is a dot product with column t
    let col = |u: &[Scalar], t: usize| -> Scalar {
        u.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(Scalar::zero(), |acc, (k, c)| acc + c * &vals[(k, t)])
    };
    let chunks: Vec<(usize, Vec<Witness>)> = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut failures = 0;
            let mut ws = Vec::new();
            let px = s.p(x);
            for y in 0..n {
                let py = s.p(y);
                for z in 0..n {
                    let pz = s.p(z);
                    for t in 0..n {
                        let pt = s.p(t);
                        let lhs = sign(py * pz) * w.eval(cache.pair(x, z), cache.pair(y, t));
                        let rhs = col(cache.triple(x, y, z), t)
                            + sign(px * (py + pz + pt)) * col(cache.triple(y, z, t), x)
                            + sign((px + py) * (pz + pt)) * col(cache.triple(z, t, x), y)
                            + sign(pt * (px + py + pz)) * col(cache.triple(t, x, y), z);
                        if lhs != rhs {
                            failures += 1;
                            if ws.len() < MAX_WITNESSES {
                                ws.push(Witness {
                                    indices: vec![x, y, z, t],
                                    lhs: Element(vec![lhs]),
                                    rhs: Element(vec![rhs]),
                                });
                            }
                        }
                    }
                }
            }
            (failures, ws)
        })
        .collect();
    let mut report = collect_report("malcev cocycle", chunks);
    report.merge(skew);
    report.name = "malcev cocycle".into();
    Ok(report)
}

/// The unique `φ` with `ω(X, Y) = B(φX, Y)`: `Φ = (W G⁻¹)ᵀ`.
pub fn operator_from_cocycle(q: &QuadraticAlgebra, w: &Cocycle) -> Result<OperatorMap> {
    let ginv = q.form.gram().inverse().ok_or(Error::DegenerateForm)?;
    let matrix = w.values().mul(&ginv).transpose();
    OperatorMap::new(q.space(), matrix, w.parity())
}

/// `ω(X, Y) = B(fX, Y)`, i.e. `W = Φᵀ G`.
pub fn cocycle_from_operator(q: &QuadraticAlgebra, f: &OperatorMap) -> Result<Cocycle> {
    if f.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: q.dim(),
            got: f.dim(),
        });
    }
    Cocycle::new(q.space(), f.matrix().transpose().mul(q.form.gram()), f.parity())
}

/// Positions `(row, column)` an operator of the given parity may occupy.
fn homogeneous_slots(space: SuperSpace, parity: Parity) -> Vec<(usize, usize)> {
    let n = space.dim();
    (0..n)
        .flat_map(|c| (0..n).map(move |r| (r, c)))
        .filter(|(r, c)| space.parity(*r) == space.parity(*c).add(parity))
        .collect()
}

/// Basis of the space of skew-supersymmetric Malcev operators of a given
/// parity, as the nullspace of the linear conditions on the matrix entries.
pub fn skew_malcev_operator_basis(q: &QuadraticAlgebra, parity: Parity) -> Vec<OperatorMap> {
    let a = &q.algebra;
    let s = a.space();
    let n = a.dim();
    let slots = homogeneous_slots(s, parity);
    let var = |r: usize, c: usize| slots.iter().position(|&(rr, cc)| rr == r && cc == c);
    let nv = slots.len();
    if nv == 0 {
        return Vec::new();
    }
    let mut red = RowReducer::new(nv);
    let g = q.form.gram();
    let alpha = parity.bit();

    // skew-supersymmetry: Σ_m Φ[m,i] G[m,j] + (−1)^{αi} Σ_m G[i,m] Φ[m,j] = 0
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![Scalar::zero(); nv];
            for m in 0..n {
                if let Some(v) = var(m, i) {
                    row[v] += &g[(m, j)];
                }
                if let Some(v) = var(m, j) {
                    row[v] += sign(alpha * s.p(i)) * &g[(i, m)];
                }
            }
            if row.iter().any(|x| !x.is_zero()) {
                red.insert(row);
            }
        }
    }

    // Malcev operator identity: each term is linear in the unknown entries
    let cache = ProductCache::new(a);
    let basis_times: Vec<Vec<Element>> = (0..n)
        .map(|m| (0..n * n).map(|xz| a.mul_basis_left(m, cache.pair(xz / n, xz % n))).collect())
        .collect();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (px, py, pz) = (s.p(x), s.p(y), s.p(z));
                // rows indexed by output coordinate k
                let mut rows = vec![vec![Scalar::zero(); nv]; n];
                let mut add = |var_idx: usize, coef: &Scalar, vec: &[Scalar]| {
                    for (k, c) in vec.iter().enumerate() {
                        if !c.is_zero() {
                            rows[k][var_idx] += coef * c;
                        }
                    }
                };
                let one = crate::scalar::one();
                // lhs φ((XY)Z): variable (k, c) times ((XY)Z)_c in row k
                let xyz = cache.triple(x, y, z);
                for (c, val) in xyz.iter().enumerate() {
                    if val.is_zero() {
                        continue;
                    }
                    for k in 0..n {
                        if let Some(v) = var(k, c) {
                            let mut e = vec![Scalar::zero(); n];
                            e[k] = val.clone();
                            add(v, &one, &e);
                        }
                    }
                }
                let minus = -crate::scalar::one();
                for m in 0..n {
                    // −(φ(X)Y)Z
                    if let Some(v) = var(m, x) {
                        add(v, &minus, cache.triple(m, y, z));
                    }
                    // +(−1)^{xy} φ(Y)(XZ)
                    if let Some(v) = var(m, y) {
                        add(v, &sign(px * py), &basis_times[m][x * n + z]);
                    }
                    // +(−1)^{z(x+y)} (φ(Z)X)Y
                    if let Some(v) = var(m, z) {
                        add(v, &sign(pz * (px + py)), cache.triple(m, x, y));
                    }
                    // +(−1)^{x(y+z)} φ(YZ)X
                    let yz = cache.pair(y, z);
                    for (c, val) in yz.iter().enumerate() {
                        if val.is_zero() {
                            continue;
                        }
                        if let Some(v) = var(m, c) {
                            add(v, &(sign(px * (py + pz)) * val), cache.pair(m, x));
                        }
                    }
                }
                for row in rows {
                    if row.iter().any(|x| !x.is_zero()) {
                        red.insert(row);
                    }
                }
            }
        }
    }

    red.nullspace()
        .into_iter()
        .map(|v| {
            let mut m = Matrix::zeros(n, n);
            for (idx, val) in v.into_iter().enumerate() {
                let (r, c) = slots[idx];
                m[(r, c)] = val;
            }
            OperatorMap { matrix: m, parity }
        })
        .collect()
}

/// Random homogeneous operator with small integer entries.
pub fn random_operator(space: SuperSpace, parity: Parity, rng: &mut ScalarStream) -> OperatorMap {
    let n = space.dim();
    let mut m = Matrix::zeros(n, n);
    for (r, c) in homogeneous_slots(space, parity) {
        m[(r, c)] = rng.next_int(3);
    }
    OperatorMap { matrix: m, parity }
}

/// Random linear combination of the given operators (all of the same parity).
pub fn random_combination(ops: &[OperatorMap], n: usize, parity: Parity, rng: &mut ScalarStream) -> OperatorMap {
    let mut m = Matrix::zeros(n, n);
    for op in ops {
        m = m.add(&op.matrix.scale(&rng.next_int(3)));
    }
    OperatorMap { matrix: m, parity }
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

    fn d_abelian12(flip: bool) -> OperatorMap {
        let s = SuperSpace::new(1, 2);
        let zu = if flip { int(1) } else { int(-1) };
        OperatorMap::from_entries(s, Parity::Odd, [(1, 0, int(1)), (0, 2, zu)]).unwrap()
    }

    #[test]
    fn skew_example_and_its_sign_flip() {
        let q = abelian12();
        let good = check_skew_supersymmetric(&q.form, &d_abelian12(false), q.space()).unwrap();
        assert!(good.passed);
        let bad = check_skew_supersymmetric(&q.form, &d_abelian12(true), q.space()).unwrap();
        assert!(!bad.passed);
        assert!(bad.witnesses.iter().any(|w| w.indices == vec![0, 2] || w.indices == vec![2, 0]));
    }

    #[test]
    fn operator_cocycle_round_trip() {
        let q = abelian12();
        let d = d_abelian12(false);
        let w = cocycle_from_operator(&q, &d).unwrap();
        assert!(check_cocycle(&q.algebra, &w).unwrap().passed);
        assert_eq!(operator_from_cocycle(&q, &w).unwrap(), d);
        let zero = OperatorMap::zero(3, Parity::Odd);
        assert!(cocycle_from_operator(&q, &zero).unwrap().values().is_zero());
    }

    #[test]
    fn non_skew_operator_gives_non_skew_cocycle() {
        let q = abelian12();
        let w = cocycle_from_operator(&q, &d_abelian12(true)).unwrap();
        assert!(!check_cocycle(&q.algebra, &w).unwrap().passed);
    }

    #[test]
    fn inhomogeneous_operator_is_rejected() {
        let s = SuperSpace::new(1, 1);
        let e = OperatorMap::from_entries(s, Parity::Even, [(0, 1, int(1))]);
        assert!(matches!(e, Err(Error::Grading(_))));
    }

    #[test]
    fn anything_is_a_malcev_operator_on_an_abelian_algebra() {
        let q = abelian12();
        let mut rng = ScalarStream::new(3);
        let f = random_operator(q.space(), Parity::Odd, &mut rng);
        assert!(check_malcev_operator(&q.algebra, &f).unwrap().passed);
    }
}
