//! Reductions by central vectors, membership in the base set, and the
//! inductive decomposition with rebuild certificates.

use num::Zero;

use crate::algebra::{Element, Parity, SuperAlgebra, SuperSpace};
use crate::error::{Error, Result};
use crate::extensions::{
    double_extension_even, even_extension_parts, gde_algebra, gde_form, verify_gde_data, ExtensionWitness, GdeData,
    GdeReport,
};
use crate::identities::{check_jacobi, CheckReport, Witness};
use crate::ideals::{center, derived_subspace, is_simple, trace_form, Simplicity};
use crate::linalg::{Matrix, RowReducer};
use crate::operators::OperatorMap;
use crate::quadratic::{
    b_irreducible_components, orthogonal_complement, orthogonal_sum_all, ordered_basis, BilinearForm, Completeness,
    QuadraticAlgebra,
};
use crate::scalar::{one, ratio, sign, Scalar};
use crate::subspace::GradedSubspace;

/// Basis of a subspace in "trailing" echelon form: each vector's last nonzero
/// coordinate is 1 and no other vector is nonzero there. Sorted so that the
/// vector with the highest such coordinate comes first.
fn trailing_echelon(n: usize, vectors: &[Element]) -> Vec<Element> {
    let rev = |v: &[Scalar]| -> Vec<Scalar> { v.iter().rev().cloned().collect() };
    let mut red = RowReducer::new(n);
    for v in vectors {
        red.insert(rev(v));
    }
    // leading pivots of the reversed vectors are the trailing ones of the originals
    red.basis().into_iter().map(|v| Element(rev(&v))).collect()
}

/// Whether the algebra passed to a reduction was certified B-irreducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Irreducibility {
    Certified,
    Heuristic,
    /// A non-degenerate proper ideal exists; the reduction still applies.
    Reducible,
}

impl Irreducibility {
    pub fn as_str(self) -> &'static str {
        match self {
            Irreducibility::Certified => "certified",
            Irreducibility::Heuristic => "heuristic",
            Irreducibility::Reducible => "reducible",
        }
    }

    fn of(q: &QuadraticAlgebra) -> Self {
        let c = b_irreducible_components(q);
        match (c.parts.len(), c.completeness) {
            (1, Completeness::Exhaustive) => Irreducibility::Certified,
            (1, Completeness::Heuristic) => Irreducibility::Heuristic,
            _ => Irreducibility::Reducible,
        }
    }
}

/// Output of the odd reduction. In the basis `basis` (columns in the input
/// coordinates) the input equals the generalized double extension of `n` by `gde`.
#[derive(Debug, Clone)]
pub struct OddReduction {
    pub n: QuadraticAlgebra,
    pub gde: GdeData,
    pub basis: Matrix,
    pub witness: ExtensionWitness,
    pub e: Element,
    pub e_star: Element,
    pub alpha_check: CheckReport,
    pub phi_check: CheckReport,
    pub psi_check: CheckReport,
    pub gde_report: GdeReport,
    pub irreducibility: Irreducibility,
}

/// Output of the even reduction, mirroring [`OddReduction`].
#[derive(Debug, Clone)]
pub struct EvenReduction {
    pub n: QuadraticAlgebra,
    pub operator: OperatorMap,
    pub basis: Matrix,
    pub witness: ExtensionWitness,
    pub e: Element,
    pub e_star: Element,
    pub alpha_check: CheckReport,
    pub phi_check: CheckReport,
    pub irreducibility: Irreducibility,
}

fn require_validated(q: &QuadraticAlgebra) -> Result<()> {
    if !q.validated {
        return Err(Error::precondition("input has not been validated"));
    }
    if q.dim() <= 1 {
        return Err(Error::precondition("reduction needs dimension at least 2"));
    }
    Ok(())
}

/// Picks `e*` in the given central part and `e` of the same parity with `B(e*, e) = 1`.
fn central_pair(q: &QuadraticAlgebra, parity: Parity) -> Result<(Element, Element)> {
    let n = q.dim();
    let s = q.space();
    let z = center(&q.algebra).part(parity);
    let Some(e_star) = trailing_echelon(n, &z).into_iter().next() else {
        return Err(Error::precondition(format!("the center has no {parity} vector")));
    };
    let pairing = q.form.covector(&e_star); // B(e*, b_j)
    let Some(j) = s.indices(parity).find(|&j| !pairing[j].is_zero()) else {
        return Err(Error::DegenerateForm);
    };
    let e = Element::basis(n, j).scaled(&(one() / &pairing[j]));
    Ok((e, e_star))
}

/// Basis of `span{e, e*}^⊥` arranged even-first, plus the full adapted basis in
/// the requested layout.
fn complement_basis(q: &QuadraticAlgebra, e: &Element, e_star: &Element) -> Result<Vec<Element>> {
    let a = GradedSubspace::from_homogeneous(q.space(), [e.clone(), e_star.clone()])?;
    let perp = orthogonal_complement(&q.form, &a)?;
    if perp.dim() + 2 != q.dim() {
        return Err(Error::DegenerateForm);
    }
    Ok(ordered_basis(&perp))
}

fn columns(n: usize, vs: &[Element]) -> Matrix {
    let cols: Vec<Vec<Scalar>> = vs.iter().map(|v| v.0.clone()).collect();
    Matrix::from_columns(n, &cols)
}

/// Splits a vector in the adapted basis into its N-part, e-part and e*-part.
struct Layout<'a> {
    w: &'a ExtensionWitness,
}

impl Layout<'_> {
    fn n_part(&self, v: &[Scalar]) -> Element {
        Element(self.w.embedding.iter().map(|&k| v[k].clone()).collect())
    }
}

/// Odd reduction along an odd central vector.
pub fn reduce_odd(q: &QuadraticAlgebra) -> Result<OddReduction> {
    require_validated(q)?;
    let dim = q.dim();
    let (e, e_star) = central_pair(q, Parity::Odd)?;
    let nb = complement_basis(q, &e, &e_star)?;
    let s = q.space();
    let n_space = SuperSpace::new(s.even, s.odd - 2);
    let w = ExtensionWitness::odd_layout(n_space);
    let mut cols = vec![Element::zeros(dim); dim];
    for (i, v) in nb.iter().enumerate() {
        cols[w.embedding[i]] = v.clone();
    }
    cols[w.e_index] = e.clone();
    cols[w.e_star_index] = e_star.clone();
    let basis = columns(dim, &cols);
    let k = q.change_basis(&basis)?;
    let lay = Layout { w: &w };
    let nn = n_space.dim();
    let (ei, si) = (w.e_index, w.e_star_index);

    // α: N-components of products of N; the e-component must vanish
    let mut alpha_check = CheckReport::pass("product of N has no e-component");
    let mut entries = Vec::new();
    let mut phi = Matrix::zeros(nn, nn);
    for i in 0..nn {
        for j in 0..nn {
            let prod = k.algebra.basis_product_element(w.embedding[i], w.embedding[j]);
            if !prod[ei].is_zero() {
                alpha_check.fail(Witness {
                    indices: vec![i, j],
                    lhs: prod.clone(),
                    rhs: Element::zeros(dim),
                });
            }
            for (c, v) in lay.n_part(&prod).0.into_iter().enumerate() {
                if !v.is_zero() {
                    entries.push(((i, j, c), v));
                }
            }
            phi[(i, j)] = prod[si].clone();
        }
    }
    let n_alg = SuperAlgebra::new(format!("{}.n", q.name()), n_space, entries)?;
    let n_form = BilinearForm::new(k.form.gram().select(&w.embedding, &w.embedding))?;
    let n_q = QuadraticAlgebra::new(n_alg, n_form)?;

    // D and ψ from eX, A0 from ee
    let mut d = Matrix::zeros(nn, nn);
    let mut psi = vec![Scalar::zero(); nn];
    for j in 0..nn {
        let prod = k.algebra.basis_product_element(ei, w.embedding[j]);
        if !prod[ei].is_zero() {
            alpha_check.fail(Witness {
                indices: vec![ei, j],
                lhs: prod.clone(),
                rhs: Element::zeros(dim),
            });
        }
        for (r, v) in lay.n_part(&prod).0.into_iter().enumerate() {
            d[(r, j)] = v;
        }
        psi[j] = prod[si].clone();
    }
    let ee = k.algebra.basis_product_element(ei, ei);
    let a0 = lay.n_part(&ee);
    let d = OperatorMap::new(n_space, d, Parity::Odd)?;
    let mut gde = GdeData::new(n_space, d, a0)?;

    // closed forms φ(X,Y) = −B(D X, Y), ψ(X) = −(−1)^x B(X, A0)
    let bd = gde.d.matrix().transpose().mul(n_q.form.gram());
    let mut phi_check = CheckReport::pass("phi closed form");
    for i in 0..nn {
        for j in 0..nn {
            let want = -bd[(i, j)].clone();
            if phi[(i, j)] != want {
                phi_check.fail(Witness {
                    indices: vec![i, j],
                    lhs: Element(vec![phi[(i, j)].clone()]),
                    rhs: Element(vec![want]),
                });
            }
        }
    }
    let ba0 = n_q.form.gram().mul_vec(&gde.a0);
    let mut psi_check = CheckReport::pass("psi closed form");
    for j in 0..nn {
        let want = -sign(n_space.p(j)) * &ba0[j];
        if psi[j] != want {
            psi_check.fail(Witness {
                indices: vec![j],
                lhs: Element(vec![psi[j].clone()]),
                rhs: Element(vec![want]),
            });
        }
    }

    let gde_report = verify_gde_data(&n_q, &gde)?;
    gde.verified = gde_report.passed();
    for r in [&alpha_check, &phi_check, &psi_check] {
        if !r.passed {
            return Err(Error::validation(r.name.clone(), r.clone()));
        }
    }
    if let Some(f) = gde_report.first_failure() {
        return Err(Error::validation(f.name.clone(), f.clone()));
    }
    let (rebuilt, _) = gde_algebra(&n_q, &gde);
    if rebuilt != k.algebra || gde_form(&n_q, &w) != k.form {
        return Err(Error::validation(
            "reduction round trip",
            CheckReport::pass("reduction round trip").with_note("rebuilt extension differs from the input"),
        ));
    }
    Ok(OddReduction {
        irreducibility: Irreducibility::of(q),
        n: n_q,
        gde,
        basis,
        witness: w,
        e,
        e_star,
        alpha_check,
        phi_check,
        psi_check,
        gde_report,
    })
}

/// Even reduction along an even central vector. Abelian inputs of dimension
/// above one, and inputs whose chosen central vector is not isotropic, are
/// refused: they split orthogonally and should be decomposed first.
pub fn reduce_even(q: &QuadraticAlgebra) -> Result<EvenReduction> {
    require_validated(q)?;
    if q.algebra.is_abelian() {
        return Err(Error::precondition(
            "abelian input splits into orthogonal lines; split first",
        ));
    }
    let dim = q.dim();
    let (e0, e_star) = central_pair(q, Parity::Even)?;
    if !q.form.eval(&e_star, &e_star).is_zero() {
        return Err(Error::precondition(
            "central vector is not isotropic, so it spans a non-degenerate ideal; split first",
        ));
    }
    // make e isotropic: e − (B(e,e)/2) e*
    let c = q.form.eval(&e0, &e0) * ratio(1, 2);
    let mut e = e0;
    e.add_scaled(&-c, &e_star);
    let nb = complement_basis(q, &e, &e_star)?;
    let s = q.space();
    let n_space = SuperSpace::new(s.even - 2, s.odd);
    let w = ExtensionWitness::even_layout(n_space);
    let mut cols = vec![Element::zeros(dim); dim];
    for (i, v) in nb.iter().enumerate() {
        cols[w.embedding[i]] = v.clone();
    }
    cols[w.e_index] = e.clone();
    cols[w.e_star_index] = e_star.clone();
    let basis = columns(dim, &cols);
    let k = q.change_basis(&basis)?;
    let lay = Layout { w: &w };
    let nn = n_space.dim();
    let (ei, si) = (w.e_index, w.e_star_index);

    let mut alpha_check = CheckReport::pass("product of N has no e-component");
    let mut entries = Vec::new();
    let mut phi = Matrix::zeros(nn, nn);
    for i in 0..nn {
        for j in 0..nn {
            let prod = k.algebra.basis_product_element(w.embedding[i], w.embedding[j]);
            if !prod[ei].is_zero() {
                alpha_check.fail(Witness {
                    indices: vec![i, j],
                    lhs: prod.clone(),
                    rhs: Element::zeros(dim),
                });
            }
            for (c, v) in lay.n_part(&prod).0.into_iter().enumerate() {
                if !v.is_zero() {
                    entries.push(((i, j, c), v));
                }
            }
            phi[(i, j)] = prod[si].clone();
        }
    }
    let n_alg = SuperAlgebra::new(format!("{}.n", q.name()), n_space, entries)?;
    let n_form = BilinearForm::new(k.form.gram().select(&w.embedding, &w.embedding))?;
    let n_q = QuadraticAlgebra::new(n_alg, n_form)?;

    let mut d = Matrix::zeros(nn, nn);
    for j in 0..nn {
        let prod = k.algebra.basis_product_element(ei, w.embedding[j]);
        if !prod[ei].is_zero() || !prod[si].is_zero() {
            alpha_check.fail(Witness {
                indices: vec![ei, j],
                lhs: prod.clone(),
                rhs: Element::zeros(dim),
            });
        }
        for (r, v) in lay.n_part(&prod).0.into_iter().enumerate() {
            d[(r, j)] = v;
        }
    }
    let operator = OperatorMap::new(n_space, d, Parity::Even)?;
    let bd = operator.matrix().transpose().mul(n_q.form.gram());
    let mut phi_check = CheckReport::pass("phi closed form");
    for i in 0..nn {
        for j in 0..nn {
            if phi[(i, j)] != bd[(i, j)] {
                phi_check.fail(Witness {
                    indices: vec![i, j],
                    lhs: Element(vec![phi[(i, j)].clone()]),
                    rhs: Element(vec![bd[(i, j)].clone()]),
                });
            }
        }
    }
    for r in [&alpha_check, &phi_check] {
        if !r.passed {
            return Err(Error::validation(r.name.clone(), r.clone()));
        }
    }
    let (rebuilt, _) = double_extension_even(&n_q, &operator)?;
    if rebuilt.algebra != k.algebra || rebuilt.form != k.form {
        return Err(Error::validation(
            "reduction round trip",
            CheckReport::pass("reduction round trip").with_note("rebuilt extension differs from the input"),
        ));
    }
    Ok(EvenReduction {
        irreducibility: Irreducibility::of(q),
        n: n_q,
        operator,
        basis,
        witness: w,
        e,
        e_star,
        alpha_check,
        phi_check,
    })
}

/// Members of the base set, plus the two ways a leaf can fall outside it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ULabel {
    Zero,
    OneDimLie,
    SimpleNonLieMalcev,
    SimpleLieSuperalgebra,
    NotInU,
    /// Center zero, no split found: recorded as a leaf rather than guessed.
    SemisimpleUnsplit,
}

impl ULabel {
    pub fn as_str(self) -> &'static str {
        match self {
            ULabel::Zero => "zero",
            ULabel::OneDimLie => "one_dim_lie",
            ULabel::SimpleNonLieMalcev => "simple_non_lie_malcev",
            ULabel::SimpleLieSuperalgebra => "simple_lie_superalgebra",
            ULabel::NotInU => "not_in_U",
            ULabel::SemisimpleUnsplit => "semisimple, unsplit (heuristic limit)",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            ULabel::Zero,
            ULabel::OneDimLie,
            ULabel::SimpleNonLieMalcev,
            ULabel::SimpleLieSuperalgebra,
            ULabel::NotInU,
            ULabel::SemisimpleUnsplit,
        ]
        .into_iter()
        .find(|l| l.as_str() == s)
    }

    pub fn in_u(self) -> bool {
        !matches!(self, ULabel::NotInU | ULabel::SemisimpleUnsplit)
    }
}

/// A label together with the checks that justify it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub label: ULabel,
    /// `false` when the simplicity test was inconclusive.
    pub conclusive: bool,
    pub certificate: String,
}

pub fn classify_u(q: &QuadraticAlgebra) -> Classification {
    let s = q.space();
    let done = |label, certificate: &str| Classification {
        label,
        conclusive: true,
        certificate: certificate.to_string(),
    };
    if q.dim() == 0 {
        return done(ULabel::Zero, "dimension 0");
    }
    if s == SuperSpace::new(1, 0) {
        return done(ULabel::OneDimLie, "dimension (1|0)");
    }
    let simple = is_simple(&q.algebra);
    match simple.status {
        Simplicity::NotSimple => done(ULabel::NotInU, &format!("not simple: {}", simple.certificate)),
        Simplicity::Unknown => Classification {
            label: ULabel::NotInU,
            conclusive: false,
            certificate: format!("simplicity unknown: {}", simple.certificate),
        },
        Simplicity::Simple => {
            let jac = check_jacobi(&q.algebra);
            if jac.passed {
                done(ULabel::SimpleLieSuperalgebra, "simple; graded Jacobi holds; quadratic")
            } else {
                done(ULabel::SimpleNonLieMalcev, "simple; graded Jacobi fails; quadratic")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReductiveReport {
    pub reductive: Verdict,
    pub center_dim: usize,
    pub derived_dim: usize,
    pub certificate: String,
}

/// Whether the even part is its center plus a semisimple derived algebra.
/// Semisimplicity of the derived algebra is certified by a non-degenerate
/// trace form `tr(R_x R_y)`.
pub fn check_reductive_even(q: &QuadraticAlgebra) -> ReductiveReport {
    let m0 = q.algebra.even_part();
    let z = center(&m0);
    let d = derived_subspace(&m0);
    let (zd, dd) = (z.dim(), d.dim());
    let report = |reductive, certificate: String| ReductiveReport {
        reductive,
        center_dim: zd,
        derived_dim: dd,
        certificate,
    };
    if zd + dd != m0.dim() || z.sum(&d).dim() != m0.dim() {
        return report(
            Verdict::No,
            format!("center ({zd}) and derived algebra ({dd}) do not span the even part ({})", m0.dim()),
        );
    }
    if dd == 0 {
        return report(Verdict::Yes, "even part is abelian".into());
    }
    let s = m0
        .restrict("derived", &ordered_basis(&d))
        .expect("derived algebra is closed");
    if trace_form(&s).rank() == dd {
        report(Verdict::Yes, "trace form on the derived algebra is non-degenerate".into())
    } else {
        report(Verdict::No, "trace form on the derived algebra is degenerate".into())
    }
}

/// Evidence that a candidate submodule `Y` of the odd part has no invariant complement.
#[derive(Debug, Clone)]
pub struct Obstruction {
    pub y: GradedSubspace,
    /// `M₀·M₁ ⊆ Y`.
    pub image_in_y: bool,
    /// `M₀·Y = 0`.
    pub y_annihilated: bool,
    /// `M₀·M₁ ≠ 0`.
    pub action_nonzero: bool,
}

#[derive(Debug, Clone)]
pub struct ReducibilityReport {
    pub completely_reducible: Verdict,
    pub witness: Option<Obstruction>,
    pub certificate: String,
}

/// Left multiplications by even basis vectors, restricted to the odd part.
fn odd_action(a: &SuperAlgebra) -> Vec<Matrix> {
    let s = a.space();
    let odd: Vec<usize> = s.indices(Parity::Odd).collect();
    s.indices(Parity::Even)
        .map(|i| a.left_multiplication(i).select(&odd, &odd))
        .collect()
}

/// Whether an invariant subspace `Y` (coordinates in the odd block) has an
/// invariant complement: solves for a module projection onto `Y`.
fn has_invariant_complement(action: &[Matrix], y: &[Vec<Scalar>], q1: usize) -> bool {
    let k = y.len();
    if k == 0 || k == q1 {
        return true;
    }
    let ym = Matrix::from_columns(q1, y);
    // R_a with L_a Y = Y R_a
    let reps: Vec<Matrix> = action
        .iter()
        .map(|l| {
            let ly = l.mul(&ym);
            let cols: Vec<Vec<Scalar>> = (0..k)
                .map(|c| crate::linalg::solve(&ym, &ly.column(c)).expect("Y is invariant"))
                .collect();
            Matrix::from_columns(k, &cols)
        })
        .collect();
    // unknown C (k × q1), variable index r * q1 + c
    let nv = k * q1;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    // C y_j = e_j
    for (j, yj) in y.iter().enumerate() {
        for r in 0..k {
            let mut row = vec![Scalar::zero(); nv];
            for c in 0..q1 {
                row[r * q1 + c] = yj[c].clone();
            }
            rows.push(row);
            rhs.push(if r == j { one() } else { Scalar::zero() });
        }
    }
    // C L_a − R_a C = 0
    for (l, ra) in action.iter().zip(&reps) {
        for r in 0..k {
            for c in 0..q1 {
                let mut row = vec![Scalar::zero(); nv];
                for m in 0..q1 {
                    row[r * q1 + m] += &l[(m, c)];
                }
                for m in 0..k {
                    row[m * q1 + c] -= &ra[(r, m)];
                }
                rows.push(row);
                rhs.push(Scalar::zero());
            }
        }
    }
    crate::linalg::solve(&Matrix::from_rows(rows), &rhs).is_some()
}

/// Complete reducibility of the odd part as a module over the even part.
///
/// The verdict is exact: the associative algebra generated by the action is
/// semisimple iff its trace form is non-degenerate. Candidate submodules
/// (supplied ones first, then `M₀·M₁` and the annihilator of `M₀`) are tested
/// for an invariant complement to produce a witness.
pub fn check_completely_reducible_action(q: &QuadraticAlgebra, supplied: &[GradedSubspace]) -> ReducibilityReport {
    let a = &q.algebra;
    let s = a.space();
    let p = s.even;
    let q1 = s.odd;
    let action = odd_action(a);
    if action.iter().all(|m| m.is_zero()) {
        return ReducibilityReport {
            completely_reducible: Verdict::Yes,
            witness: None,
            certificate: "even part acts by zero".into(),
        };
    }
    let gens: Vec<Matrix> = action.iter().filter(|m| !m.is_zero()).cloned().collect();
    let semisimple = associative_semisimple(q1, &gens);

    let odd_coords = |v: &Element| -> Vec<Scalar> { v[p..].to_vec() };
    let lift = |c: &[Scalar]| -> Element {
        let mut v = Element::zeros(s.dim());
        for (i, x) in c.iter().enumerate() {
            v[p + i] = x.clone();
        }
        v
    };
    let image: Vec<Vec<Scalar>> = {
        let mut red = RowReducer::new(q1);
        for m in &action {
            for c in m.columns() {
                red.insert(c);
            }
        }
        red.basis()
    };
    let annihilator: Vec<Vec<Scalar>> = {
        let mut red = RowReducer::new(q1);
        for m in &action {
            for r in 0..q1 {
                red.insert(m.row(r).to_vec());
            }
        }
        red.nullspace()
    };
    let mut candidates: Vec<Vec<Vec<Scalar>>> = supplied
        .iter()
        .map(|y| y.part(Parity::Odd).iter().map(odd_coords).collect())
        .collect();
    candidates.push(image.clone());
    candidates.push(annihilator.clone());

    let invariant = |y: &[Vec<Scalar>]| {
        let mut red = RowReducer::new(q1);
        for v in y {
            red.insert(v.clone());
        }
        action.iter().all(|m| y.iter().all(|v| red.contains(&m.mul_vec(v))))
    };
    let mut witness = None;
    for y in &candidates {
        if y.is_empty() || y.len() == q1 || !invariant(y) {
            continue;
        }
        if !has_invariant_complement(&action, y, q1) {
            let mut red = RowReducer::new(q1);
            for v in y {
                red.insert(v.clone());
            }
            let image_in_y = image.iter().all(|v| red.contains(v));
            let y_annihilated = action.iter().all(|m| y.iter().all(|v| m.mul_vec(v).iter().all(|x| x.is_zero())));
            witness = Some(Obstruction {
                y: GradedSubspace::from_homogeneous(s, y.iter().map(|c| lift(c))).expect("odd vectors"),
                image_in_y,
                y_annihilated,
                action_nonzero: true,
            });
            break;
        }
    }
    match (semisimple, &witness) {
        (_, Some(_)) => ReducibilityReport {
            completely_reducible: Verdict::No,
            witness,
            certificate: "an invariant subspace has no invariant complement".into(),
        },
        (true, None) => ReducibilityReport {
            completely_reducible: Verdict::Yes,
            witness: None,
            certificate: "associative algebra generated by the action is semisimple".into(),
        },
        (false, None) => ReducibilityReport {
            completely_reducible: Verdict::No,
            witness: None,
            certificate: "associative algebra generated by the action has a nonzero radical".into(),
        },
    }
}

/// Semisimplicity of the unital matrix algebra generated by `gens`, via
/// non-degeneracy of `(x, y) ↦ tr(xy)` on it (characteristic zero).
fn associative_semisimple(n: usize, gens: &[Matrix]) -> bool {
    let basis = generated_algebra_basis(n, gens);
    let k = basis.len();
    let mut g = Matrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let p = basis[i].mul(&basis[j]);
            let mut t = Scalar::zero();
            for d in 0..n {
                t += &p[(d, d)];
            }
            g[(i, j)] = t;
        }
    }
    g.rank() == k
}

fn generated_algebra_basis(n: usize, gens: &[Matrix]) -> Vec<Matrix> {
    let flat = |m: &Matrix| -> Vec<Scalar> { (0..n).flat_map(|r| m.row(r).to_vec()).collect() };
    let mut red = RowReducer::new(n * n);
    let mut basis = vec![Matrix::identity(n)];
    red.insert(flat(&basis[0]));
    let mut i = 0;
    while i < basis.len() {
        for g in gens {
            let p = g.mul(&basis[i]);
            if red.insert(flat(&p)) {
                basis.push(p);
            }
        }
        i += 1;
    }
    basis
}

/// One node of an inductive decomposition. Every node keeps the algebra it
/// describes; internal nodes keep the basis in which that algebra equals the
/// construction applied to their children.
#[derive(Debug, Clone)]
pub struct DecompositionTree {
    pub algebra: QuadraticAlgebra,
    pub node: TreeNode,
}

#[derive(Debug, Clone)]
pub enum TreeNode {
    Leaf(Classification),
    OddGde {
        child: Box<DecompositionTree>,
        gde: GdeData,
        basis: Matrix,
        irreducibility: Irreducibility,
    },
    EvenDe {
        child: Box<DecompositionTree>,
        operator: OperatorMap,
        basis: Matrix,
        irreducibility: Irreducibility,
    },
    Sum {
        children: Vec<DecompositionTree>,
        basis: Matrix,
        completeness: Completeness,
    },
}

impl DecompositionTree {
    pub fn kind(&self) -> &'static str {
        match self.node {
            TreeNode::Leaf(_) => "leaf",
            TreeNode::OddGde { .. } => "odd_gde",
            TreeNode::EvenDe { .. } => "even_de",
            TreeNode::Sum { .. } => "sum",
        }
    }

    pub fn children(&self) -> Vec<&DecompositionTree> {
        match &self.node {
            TreeNode::Leaf(_) => Vec::new(),
            TreeNode::OddGde { child, .. } | TreeNode::EvenDe { child, .. } => vec![child],
            TreeNode::Sum { children, .. } => children.iter().collect(),
        }
    }

    pub fn leaves(&self) -> Vec<&DecompositionTree> {
        match self.node {
            TreeNode::Leaf(_) => vec![self],
            _ => self.children().into_iter().flat_map(|c| c.leaves()).collect(),
        }
    }

    pub fn leaf_labels(&self) -> Vec<ULabel> {
        self.leaves()
            .into_iter()
            .filter_map(|l| match &l.node {
                TreeNode::Leaf(c) => Some(c.label),
                _ => None,
            })
            .collect()
    }

    /// True when some leaf is outside the base set or rests on an inconclusive test.
    pub fn is_inconclusive(&self) -> bool {
        self.leaves().into_iter().any(|l| match &l.node {
            TreeNode::Leaf(c) => !c.conclusive || !c.label.in_u(),
            _ => false,
        })
    }

    /// Number of odd_gde nodes on the path to each leaf.
    pub fn odd_depths(&self) -> Vec<(ULabel, usize)> {
        fn walk(t: &DecompositionTree, depth: usize, out: &mut Vec<(ULabel, usize)>) {
            match &t.node {
                TreeNode::Leaf(c) => out.push((c.label, depth)),
                TreeNode::OddGde { child, .. } => walk(child, depth + 1, out),
                TreeNode::EvenDe { child, .. } => walk(child, depth, out),
                TreeNode::Sum { children, .. } => children.iter().for_each(|c| walk(c, depth, out)),
            }
        }
        let mut out = Vec::new();
        walk(self, 0, &mut out);
        out
    }
}

/// Recursive decomposition: base-set leaf, orthogonal split, odd reduction,
/// even reduction, in that order; a center-free algebra that does not split
/// becomes a labelled leaf.
pub fn inductive_decompose(q: &QuadraticAlgebra) -> Result<DecompositionTree> {
    if !q.validated {
        return Err(Error::precondition("input has not been validated"));
    }
    let class = classify_u(q);
    if class.label.in_u() {
        return Ok(leaf(q, class));
    }
    let comps = b_irreducible_components(q);
    if comps.parts.len() > 1 {
        let basis = comps.basis_matrix(q.dim());
        let children = comps
            .parts
            .iter()
            .map(|c| inductive_decompose(&c.algebra))
            .collect::<Result<Vec<_>>>()?;
        return Ok(DecompositionTree {
            algebra: q.clone(),
            node: TreeNode::Sum {
                children,
                basis,
                completeness: comps.completeness,
            },
        });
    }
    let z = center(&q.algebra);
    if z.odd_dim() > 0 {
        let r = reduce_odd(q)?;
        let child = inductive_decompose(&r.n)?;
        return Ok(DecompositionTree {
            algebra: q.clone(),
            node: TreeNode::OddGde {
                child: Box::new(child),
                gde: r.gde,
                basis: r.basis,
                irreducibility: r.irreducibility,
            },
        });
    }
    if z.even_dim() > 0 {
        let r = reduce_even(q)?;
        let child = inductive_decompose(&r.n)?;
        return Ok(DecompositionTree {
            algebra: q.clone(),
            node: TreeNode::EvenDe {
                child: Box::new(child),
                operator: r.operator,
                basis: r.basis,
                irreducibility: r.irreducibility,
            },
        });
    }
    Ok(leaf(
        q,
        Classification {
            label: ULabel::SemisimpleUnsplit,
            conclusive: false,
            certificate: format!("center is zero and no split was found; {}", class.certificate),
        },
    ))
}

fn leaf(q: &QuadraticAlgebra, class: Classification) -> DecompositionTree {
    DecompositionTree {
        algebra: q.clone(),
        node: TreeNode::Leaf(class),
    }
}

/// Rebuilds a node from its leaves and stored witnesses only, expressed in the
/// node's original basis.
pub fn rebuild(t: &DecompositionTree) -> Result<QuadraticAlgebra> {
    let name = t.algebra.name().to_string();
    let back = |k: QuadraticAlgebra, basis: &Matrix| -> Result<QuadraticAlgebra> {
        let inv = basis
            .inverse()
            .ok_or_else(|| Error::precondition("corrupted witness: singular basis"))?;
        if inv.rows() != k.dim() {
            return Err(Error::precondition("corrupted witness: basis size mismatch"));
        }
        Ok(k.change_basis(&inv)?.with_name(name.clone()))
    };
    match &t.node {
        TreeNode::Leaf(_) => Ok(t.algebra.clone()),
        TreeNode::OddGde { child, gde, basis, .. } => {
            let n = rebuild(child)?;
            check_sizes(&n, gde.d.dim())?;
            let (alg, w) = gde_algebra(&n, gde);
            let k = QuadraticAlgebra {
                form: gde_form(&n, &w),
                algebra: alg,
                validated: n.validated,
            };
            back(k, basis)
        }
        TreeNode::EvenDe {
            child, operator, basis, ..
        } => {
            let n = rebuild(child)?;
            check_sizes(&n, operator.dim())?;
            let (alg, form, _) = even_extension_parts(&n, operator);
            back(
                QuadraticAlgebra {
                    algebra: alg,
                    form,
                    validated: n.validated,
                },
                basis,
            )
        }
        TreeNode::Sum { children, basis, .. } => {
            let parts = children.iter().map(rebuild).collect::<Result<Vec<_>>>()?;
            back(orthogonal_sum_all(&parts), basis)
        }
    }
}

fn check_sizes(n: &QuadraticAlgebra, expected: usize) -> Result<()> {
    if n.dim() != expected {
        return Err(Error::precondition("corrupted witness: operator size mismatch"));
    }
    Ok(())
}

/// Convenience: the odd-center subspace used by the completely-reducible
/// witness of an extension, `span{central odd vectors}`.
pub fn odd_center(q: &QuadraticAlgebra) -> GradedSubspace {
    let z = center(&q.algebra);
    GradedSubspace::from_homogeneous(q.space(), z.part(Parity::Odd)).expect("odd vectors")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::*;
    use crate::scalar::int;

    #[test]
    fn trailing_echelon_prefers_late_coordinates() {
        let vs = [
            Element(vec![int(1), int(0), int(1)]),
            Element(vec![int(0), int(1), int(0)]),
        ];
        let t = trailing_echelon(3, &vs);
        assert_eq!(t[0][2], one());
        assert!(t[0][1].is_zero());
    }

    #[test]
    fn odd_hyperbolic_reduces_to_zero() {
        let q = odd_hyperbolic().unwrap();
        let r = reduce_odd(&q).unwrap();
        assert_eq!(r.n.dim(), 0);
        assert!(r.gde.d.is_zero() && r.gde.a0.is_zero());
    }

    #[test]
    fn even_hyperbolic_is_refused() {
        let q = even_hyperbolic().unwrap();
        let err = reduce_even(&q).unwrap_err();
        assert!(err.to_string().contains("split first"));
    }

    #[test]
    fn sl2_has_no_even_center() {
        assert_eq!(reduce_even(&sl2().unwrap()).unwrap_err().exit_code(), 4);
    }

    #[test]
    fn labels() {
        assert_eq!(classify_u(&one_dim_lie().unwrap()).label, ULabel::OneDimLie);
        assert_eq!(classify_u(&QuadraticAlgebra::zero()).label, ULabel::Zero);
        assert_eq!(classify_u(&sl2().unwrap()).label, ULabel::SimpleLieSuperalgebra);
        assert_eq!(classify_u(&osp12().unwrap()).label, ULabel::SimpleLieSuperalgebra);
        assert_eq!(classify_u(&example_m(2).unwrap()).label, ULabel::NotInU);
    }

    #[test]
    fn reductive_examples() {
        assert_eq!(check_reductive_even(&sl2().unwrap()).reductive, Verdict::Yes);
        assert_eq!(check_reductive_even(&example_m(1).unwrap()).reductive, Verdict::Yes);
    }
}
