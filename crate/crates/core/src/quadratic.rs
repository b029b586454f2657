//! Invariant scalar products, orthogonal complements and orthogonal splitting.

use num::Zero;

use crate::algebra::{direct_sum, Element, Parity, SuperAlgebra, SuperSpace};
use crate::error::{Error, Result};
use crate::identities::{check_malcev, check_super_anticommutativity, CheckReport, Witness};
use crate::ideals::{closure_of_vectors, is_ideal, is_simple, CandidateIdeals};
use crate::linalg::{Matrix, RowReducer};
use crate::scalar::{sign, zero, Scalar};
use crate::subspace::GradedSubspace;

/// Bilinear form given by its Gram matrix on the basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    gram: Matrix,
}

impl BilinearForm {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch {
                expected: gram.rows(),
                got: gram.cols(),
            });
        }
        Ok(Self { gram })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            gram: Matrix::zeros(n, n),
        }
    }

    /// Builds a Gram matrix from `(i, j, value)` entries; repeated keys add up.
    pub fn from_entries(n: usize, entries: impl IntoIterator<Item = (usize, usize, Scalar)>) -> Result<Self> {
        let mut gram = Matrix::zeros(n, n);
        for (i, j, v) in entries {
            if i >= n || j >= n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: i.max(j) + 1,
                });
            }
            gram[(i, j)] += v;
        }
        Ok(Self { gram })
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn pair(&self, i: usize, j: usize) -> &Scalar {
        &self.gram[(i, j)]
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let gy = self.gram.mul_vec(y);
        x.iter().zip(&gy).fold(zero(), |acc, (a, b)| acc + a * b)
    }

    /// Row vector `B(x, .)`.
    pub fn covector(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.gram.transpose().mul_vec(x)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.rank() == self.dim()
    }

    /// Gram matrix of the given vectors: `P^T G P`.
    pub fn restrict(&self, basis: &[Element]) -> BilinearForm {
        let k = basis.len();
        let mut g = Matrix::zeros(k, k);
        let images: Vec<Vec<Scalar>> = basis.iter().map(|v| self.gram.mul_vec(v)).collect();
        for a in 0..k {
            for b in 0..k {
                g[(a, b)] = basis[a].iter().zip(&images[b]).fold(zero(), |acc, (x, y)| acc + x * y);
            }
        }
        BilinearForm { gram: g }
    }

    pub fn change_basis(&self, basis: &Matrix) -> BilinearForm {
        BilinearForm {
            gram: basis.transpose().mul(&self.gram).mul(basis),
        }
    }

    /// Block form on a direct sum, laid out like [`direct_sum`].
    pub fn direct_sum(a: &BilinearForm, sa: SuperSpace, b: &BilinearForm, sb: SuperSpace) -> BilinearForm {
        let emb = crate::algebra::SumEmbedding::new(sa, sb);
        let n = sa.dim() + sb.dim();
        let mut g = Matrix::zeros(n, n);
        for (i, j, v) in a.gram.nonzero_entries() {
            g[(emb.left[i], emb.left[j])] = v.clone();
        }
        for (i, j, v) in b.gram.nonzero_entries() {
            g[(emb.right[i], emb.right[j])] = v.clone();
        }
        BilinearForm { gram: g }
    }
}

/// The four axioms of an invariant scalar product, each with its own report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormReport {
    pub even: CheckReport,
    pub supersymmetric: CheckReport,
    pub nondegenerate: CheckReport,
    pub invariant: CheckReport,
}

impl FormReport {
    pub fn passed(&self) -> bool {
        self.even.passed && self.supersymmetric.passed && self.nondegenerate.passed && self.invariant.passed
    }

    pub fn reports(&self) -> [&CheckReport; 4] {
        [&self.even, &self.supersymmetric, &self.nondegenerate, &self.invariant]
    }

    /// The first failing axiom, if any.
    pub fn first_failure(&self) -> Option<&CheckReport> {
        self.reports().into_iter().find(|r| !r.passed)
    }
}

fn scalar_witness(indices: Vec<usize>, lhs: Scalar, rhs: Scalar) -> Witness {
    Witness {
        indices,
        lhs: Element(vec![lhs]),
        rhs: Element(vec![rhs]),
    }
}

/// Evenness, supersymmetry, non-degeneracy and invariance `B(XY, Z) = B(X, YZ)`.
pub fn check_form(a: &SuperAlgebra, b: &BilinearForm) -> Result<FormReport> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: b.dim(),
        });
    }
    let s = a.space();
    let g = b.gram();

    let mut even = CheckReport::pass("form evenness");
    let mut supersymmetric = CheckReport::pass("form supersymmetry");
    for i in 0..n {
        for j in 0..n {
            if s.p(i) != s.p(j) && !g[(i, j)].is_zero() {
                even.fail(scalar_witness(vec![i, j], g[(i, j)].clone(), zero()));
            }
            if i <= j {
                // B(X, Y) = (-1)^{xy} B(Y, X)
                let rhs = sign(s.p(i) * s.p(j)) * &g[(j, i)];
                if g[(i, j)] != rhs {
                    supersymmetric.fail(scalar_witness(vec![i, j], g[(i, j)].clone(), rhs));
                }
            }
        }
    }

    let nondegenerate = if b.is_nondegenerate() {
        CheckReport::pass("form non-degeneracy")
    } else {
        let mut r = CheckReport::pass("form non-degeneracy");
        for v in g.nullspace() {
            r.fail(Witness {
                indices: Vec::new(),
                lhs: Element(g.mul_vec(&v)),
                rhs: Element(v),
            });
        }
        r.with_note("witness lhs is G v = 0 for the radical vector v in rhs")
    };

    let mut invariant = CheckReport::pass("form invariance");
    // B(b_i b_j, b_k) - B(b_i, b_j b_k)
    let gt = g.transpose();
    for i in 0..n {
        let row_i = gt.mul_vec(&Element::basis(n, i));
        for j in 0..n {
            let left = b.covector(&a.basis_product_element(i, j));
            for k in 0..n {
                let lhs = left[k].clone();
                let jk = a.basis_product(j, k);
                let mut rhs = zero();
                for (m, c) in jk {
                    rhs += &row_i[*m] * c;
                }
                if lhs != rhs {
                    invariant.fail(scalar_witness(vec![i, j, k], lhs, rhs));
                }
            }
        }
    }

    Ok(FormReport {
        even,
        supersymmetric,
        nondegenerate,
        invariant,
    })
}

/// A Malcev superalgebra with a bilinear form. `validated` records whether the
/// full set of checks passed when it was built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticAlgebra {
    pub algebra: SuperAlgebra,
    pub form: BilinearForm,
    pub validated: bool,
}

/// Reports of the full quadratic-Malcev validation.
#[derive(Debug, Clone)]
pub struct QuadraticReport {
    pub anticommutativity: CheckReport,
    pub malcev: CheckReport,
    pub form: FormReport,
}

impl QuadraticReport {
    pub fn passed(&self) -> bool {
        self.anticommutativity.passed && self.malcev.passed && self.form.passed()
    }

    pub fn reports(&self) -> Vec<&CheckReport> {
        let mut v = vec![&self.anticommutativity, &self.malcev];
        v.extend(self.form.reports());
        v
    }

    pub fn first_failure(&self) -> Option<&CheckReport> {
        self.reports().into_iter().find(|r| !r.passed)
    }
}

pub fn validate(a: &SuperAlgebra, b: &BilinearForm) -> Result<QuadraticReport> {
    let form = check_form(a, b)?;
    Ok(QuadraticReport {
        anticommutativity: check_super_anticommutativity(a),
        malcev: check_malcev(a),
        form,
    })
}

impl QuadraticAlgebra {
    /// Validates everything and refuses on the first failing check.
    pub fn new(algebra: SuperAlgebra, form: BilinearForm) -> Result<Self> {
        let report = validate(&algebra, &form)?;
        if let Some(fail) = report.first_failure() {
            return Err(Error::validation(fail.name.clone(), fail.clone()));
        }
        Ok(Self {
            algebra,
            form,
            validated: true,
        })
    }

    pub fn new_unchecked(algebra: SuperAlgebra, form: BilinearForm) -> Self {
        Self {
            algebra,
            form,
            validated: false,
        }
    }

    pub fn zero() -> Self {
        Self {
            algebra: SuperAlgebra::zero_algebra(),
            form: BilinearForm::zero(0),
            validated: true,
        }
    }

    pub fn space(&self) -> SuperSpace {
        self.algebra.space()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn name(&self) -> &str {
        self.algebra.name()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.algebra = self.algebra.with_name(name);
        self
    }

    /// Both the constants and the Gram matrix in a new basis (columns of `basis`).
    pub fn change_basis(&self, basis: &Matrix) -> Result<QuadraticAlgebra> {
        Ok(QuadraticAlgebra {
            algebra: self.algebra.change_basis(basis)?,
            form: self.form.change_basis(basis),
            validated: self.validated,
        })
    }

    /// Restriction to a graded subalgebra spanned by homogeneous vectors, even ones first.
    pub fn restrict(&self, name: impl Into<String>, basis: &[Element]) -> Result<QuadraticAlgebra> {
        Ok(QuadraticAlgebra {
            algebra: self.algebra.restrict(name, basis)?,
            form: self.form.restrict(basis),
            validated: false,
        })
    }

    /// Exact equality of constants and Gram matrices (names are ignored).
    pub fn same_structure(&self, other: &QuadraticAlgebra) -> bool {
        self.algebra == other.algebra && self.form == other.form
    }
}

/// Orthogonal direct sum of quadratic algebras.
pub fn orthogonal_sum(a: &QuadraticAlgebra, b: &QuadraticAlgebra) -> QuadraticAlgebra {
    let (alg, _) = direct_sum(&a.algebra, &b.algebra);
    QuadraticAlgebra {
        form: BilinearForm::direct_sum(&a.form, a.space(), &b.form, b.space()),
        algebra: alg,
        validated: a.validated && b.validated,
    }
}

/// Orthogonal sum of several summands; bases interleave as even parts in order, then odd parts.
pub fn orthogonal_sum_all(parts: &[QuadraticAlgebra]) -> QuadraticAlgebra {
    let mut it = parts.iter();
    let Some(first) = it.next() else {
        return QuadraticAlgebra::zero();
    };
    it.fold(first.clone(), |acc, q| orthogonal_sum(&acc, q))
}

/// `{x : B(v, x) = 0 for all v in s}`.
pub fn orthogonal_complement(b: &BilinearForm, s: &GradedSubspace) -> Result<GradedSubspace> {
    if !b.is_nondegenerate() {
        return Err(Error::DegenerateForm);
    }
    let n = b.dim();
    let mut red = RowReducer::new(n);
    for v in s.basis() {
        red.insert(b.covector(v));
    }
    let kernel = red.nullspace().into_iter().map(Element);
    Ok(GradedSubspace::graded_hull(s.space(), kernel))
}

/// Basis vectors of a graded subspace arranged even-first.
pub(crate) fn ordered_basis(s: &GradedSubspace) -> Vec<Element> {
    let mut v = s.part(Parity::Even);
    v.extend(s.part(Parity::Odd));
    v
}

/// Result of splitting along a non-degenerate ideal.
#[derive(Debug, Clone)]
pub struct OrthogonalSplit {
    pub ideal: QuadraticAlgebra,
    pub complement: QuadraticAlgebra,
    /// Columns: even of the ideal, even of the complement, odd of the ideal,
    /// odd of the complement. In this basis the input equals the orthogonal sum.
    pub basis: Matrix,
}

pub fn orthogonal_split(q: &QuadraticAlgebra, i: &GradedSubspace) -> Result<OrthogonalSplit> {
    if i.is_zero() || i.is_whole() {
        return Err(Error::precondition("splitting needs a proper nonzero ideal"));
    }
    if !is_ideal(&q.algebra, i) {
        return Err(Error::precondition("subspace is not an ideal"));
    }
    let ib = ordered_basis(i);
    if !q.form.restrict(&ib).is_nondegenerate() {
        return Err(Error::precondition("form restricted to the ideal is degenerate"));
    }
    let j = orthogonal_complement(&q.form, i)?;
    let jb = ordered_basis(&j);
    let ideal = q.restrict(format!("{}.i", q.name()), &ib)?;
    let complement = q.restrict(format!("{}.j", q.name()), &jb)?;
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    let s = q.space();
    for parity in [Parity::Even, Parity::Odd] {
        for v in ib.iter().chain(&jb) {
            if v.parity(s) == Some(parity) {
                cols.push(v.0.clone());
            }
        }
    }
    Ok(OrthogonalSplit {
        ideal: mark_valid(ideal, q.validated),
        complement: mark_valid(complement, q.validated),
        basis: Matrix::from_columns(q.dim(), &cols),
    })
}

/// A non-degenerate ideal of a valid quadratic algebra is again valid; its
/// complement too. Carry the flag rather than re-scanning.
fn mark_valid(mut q: QuadraticAlgebra, valid: bool) -> QuadraticAlgebra {
    q.validated = valid;
    q
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completeness {
    /// Every component is provably B-irreducible.
    Exhaustive,
    /// Some component was only searched heuristically.
    Heuristic,
}

impl Completeness {
    pub fn as_str(self) -> &'static str {
        match self {
            Completeness::Exhaustive => "exhaustive",
            Completeness::Heuristic => "heuristic",
        }
    }
}

/// One B-irreducible piece together with its basis in the input coordinates.
#[derive(Debug, Clone)]
pub struct Component {
    pub algebra: QuadraticAlgebra,
    pub basis: Vec<Element>,
}

#[derive(Debug, Clone)]
pub struct Components {
    pub parts: Vec<Component>,
    pub completeness: Completeness,
}

impl Components {
    /// Columns ordered as in [`orthogonal_sum_all`] of the parts.
    pub fn basis_matrix(&self, n: usize) -> Matrix {
        let mut cols = Vec::new();
        for parity in [Parity::Even, Parity::Odd] {
            for c in &self.parts {
                let s = c.algebra.space();
                let range = s.indices(parity);
                for k in range {
                    cols.push(c.basis[k].0.clone());
                }
            }
        }
        Matrix::from_columns(n, &cols)
    }
}

/// A proper nonzero ideal on which the form is non-degenerate, if the candidate
/// search finds one.
pub fn find_nondegenerate_ideal(q: &QuadraticAlgebra) -> Option<GradedSubspace> {
    let nondeg = |s: &GradedSubspace| {
        s.is_proper_nonzero() && q.form.restrict(&ordered_basis(s)).is_nondegenerate()
    };
    let mut seen: Vec<GradedSubspace> = Vec::new();
    for cand in CandidateIdeals::new(&q.algebra) {
        if nondeg(&cand) {
            return Some(cand);
        }
        if cand.is_proper_nonzero() {
            seen.push(cand);
        }
    }
    // sums of two candidates: catches hyperbolic pairs of isotropic ideals
    const PAIR_LIMIT: usize = 64;
    seen.truncate(PAIR_LIMIT);
    for a in 0..seen.len() {
        for b in (a + 1)..seen.len() {
            let sum = seen[a].sum(&seen[b]);
            if nondeg(&sum) {
                return Some(sum);
            }
        }
    }
    None
}

fn provably_irreducible(q: &QuadraticAlgebra) -> bool {
    let s = q.space();
    if q.dim() <= 1 || (s.even == 0 && s.odd == 2) {
        return true;
    }
    !q.algebra.is_abelian() && is_simple(&q.algebra).is_simple()
}

/// Splits along non-degenerate ideals until the candidate search finds none.
pub fn b_irreducible_components(q: &QuadraticAlgebra) -> Components {
    let n = q.dim();
    let mut done: Vec<Component> = Vec::new();
    let mut work = vec![Component {
        algebra: q.clone(),
        basis: (0..n).map(|i| Element::basis(n, i)).collect(),
    }];
    while let Some(c) = work.pop() {
        match find_nondegenerate_ideal(&c.algebra) {
            Some(ideal) => {
                let split = orthogonal_split(&c.algebra, &ideal).expect("candidate satisfies the split preconditions");
                let lift = |local: &Matrix, range: std::ops::Range<usize>| -> Vec<Element> {
                    range
                        .map(|k| {
                            let col = local.column(k);
                            let mut v = Element::zeros(n);
                            for (coef, b) in col.iter().zip(&c.basis) {
                                if !coef.is_zero() {
                                    v.add_scaled(coef, b);
                                }
                            }
                            v
                        })
                        .collect()
                };
                let ib = ordered_basis(&ideal);
                let jb = ordered_basis(&orthogonal_complement(&c.algebra.form, &ideal).expect("non-degenerate"));
                let im = Matrix::from_columns(c.algebra.dim(), &ib.iter().map(|v| v.0.clone()).collect::<Vec<_>>());
                let jm = Matrix::from_columns(c.algebra.dim(), &jb.iter().map(|v| v.0.clone()).collect::<Vec<_>>());
                // keep left-to-right order stable: push the complement first so the ideal is processed next
                work.push(Component {
                    algebra: split.complement,
                    basis: lift(&jm, 0..jb.len()),
                });
                work.push(Component {
                    algebra: split.ideal,
                    basis: lift(&im, 0..ib.len()),
                });
            }
            None => done.push(c),
        }
    }
    let completeness = if done.iter().all(|c| provably_irreducible(&c.algebra)) {
        Completeness::Exhaustive
    } else {
        Completeness::Heuristic
    };
    Components {
        parts: done,
        completeness,
    }
}

/// Smallest ideal containing the given vectors, exposed for callers building candidates by hand.
pub fn ideal_generated_by(q: &QuadraticAlgebra, vectors: &[Element]) -> GradedSubspace {
    closure_of_vectors(&q.algebra, vectors.iter().cloned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn hyperbolic_even() -> QuadraticAlgebra {
        let a = SuperAlgebra::abelian("h", SuperSpace::new(2, 0));
        let b = BilinearForm::from_entries(2, [(0, 1, int(1)), (1, 0, int(1))]).unwrap();
        QuadraticAlgebra::new(a, b).unwrap()
    }

    #[test]
    fn zero_gram_is_degenerate() {
        let a = SuperAlgebra::abelian("a", SuperSpace::new(2, 0));
        let r = check_form(&a, &BilinearForm::zero(2)).unwrap();
        assert!(!r.nondegenerate.passed);
        assert!(r.even.passed && r.supersymmetric.passed && r.invariant.passed);
    }

    #[test]
    fn cross_parity_entry_breaks_evenness() {
        let a = SuperAlgebra::abelian("a", SuperSpace::new(1, 1));
        let b = BilinearForm::from_entries(2, [(0, 1, int(1)), (1, 0, int(1))]).unwrap();
        let r = check_form(&a, &b).unwrap();
        assert!(!r.even.passed);
        assert_eq!(r.even.witnesses[0].indices, vec![0, 1]);
    }

    #[test]
    fn odd_block_must_be_antisymmetric() {
        let a = SuperAlgebra::abelian("a", SuperSpace::new(0, 2));
        let sym = BilinearForm::from_entries(2, [(0, 1, int(1)), (1, 0, int(1))]).unwrap();
        assert!(!check_form(&a, &sym).unwrap().supersymmetric.passed);
        let skew = BilinearForm::from_entries(2, [(0, 1, int(1)), (1, 0, int(-1))]).unwrap();
        assert!(check_form(&a, &skew).unwrap().passed());
    }

    #[test]
    fn complement_dimensions_and_involution() {
        let q = hyperbolic_even();
        let s = GradedSubspace::from_homogeneous(q.space(), [Element::basis(2, 0)]).unwrap();
        let c = orthogonal_complement(&q.form, &s).unwrap();
        assert_eq!(c.dim(), 1);
        assert_eq!(c, s); // e is isotropic, so it is its own complement
        let whole = GradedSubspace::whole(q.space());
        assert!(orthogonal_complement(&q.form, &whole).unwrap().is_zero());
        let zero = GradedSubspace::zero(q.space());
        assert!(orthogonal_complement(&q.form, &zero).unwrap().is_whole());
        assert_eq!(
            orthogonal_complement(&q.form, &orthogonal_complement(&q.form, &s).unwrap()).unwrap(),
            s
        );
    }

    #[test]
    fn hyperbolic_plane_splits_with_values_two_and_minus_two() {
        let q = hyperbolic_even();
        let comps = b_irreducible_components(&q);
        assert_eq!(comps.parts.len(), 2);
        let mut values: Vec<Scalar> = comps.parts.iter().map(|c| c.algebra.form.pair(0, 0).clone()).collect();
        values.sort();
        assert_eq!(values, vec![int(-2), int(2)]);
        assert_eq!(comps.completeness, Completeness::Exhaustive);
        let p = comps.basis_matrix(2);
        let parts: Vec<QuadraticAlgebra> = comps.parts.iter().map(|c| c.algebra.clone()).collect();
        assert!(q.change_basis(&p).unwrap().same_structure(&orthogonal_sum_all(&parts)));
    }

    #[test]
    fn odd_plane_stays_whole() {
        let a = SuperAlgebra::abelian("o", SuperSpace::new(0, 2));
        let b = BilinearForm::from_entries(2, [(0, 1, int(1)), (1, 0, int(-1))]).unwrap();
        let q = QuadraticAlgebra::new(a, b).unwrap();
        let comps = b_irreducible_components(&q);
        assert_eq!(comps.parts.len(), 1);
    }

    #[test]
    fn split_rejects_zero_subspace() {
        let q = hyperbolic_even();
        let err = orthogonal_split(&q, &GradedSubspace::zero(q.space())).unwrap_err();
        assert_eq!(err.exit_code(), 4);
    }
}
