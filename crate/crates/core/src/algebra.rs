//! Graded spaces, elements, and superalgebras given by structure constants.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Deref, DerefMut};

use num::Zero;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{one, sign, zero, Scalar};

/// Element of Z/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(b: u8) -> Self {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn add(self, other: Parity) -> Parity {
        Parity::from_bit(self.bit() + other.bit())
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Graded dimensions `(p | q)`. Basis index `i` is even iff `i < p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SuperSpace {
    pub even: usize,
    pub odd: usize,
}

impl SuperSpace {
    pub const ZERO: SuperSpace = SuperSpace { even: 0, odd: 0 };

    pub fn new(even: usize, odd: usize) -> Self {
        Self { even, odd }
    }

    pub fn dim(&self) -> usize {
        self.even + self.odd
    }

    pub fn parity(&self, i: usize) -> Parity {
        debug_assert!(i < self.dim());
        if i < self.even {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `parity(i)` as 0/1, for sign exponents.
    #[inline]
    pub fn p(&self, i: usize) -> u8 {
        u8::from(i >= self.even)
    }

    pub fn indices(&self, parity: Parity) -> std::ops::Range<usize> {
        match parity {
            Parity::Even => 0..self.even,
            Parity::Odd => self.even..self.dim(),
        }
    }
}

impl fmt::Display for SuperSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.even, self.odd)
    }
}

/// Coordinate vector with respect to the fixed basis (even basis vectors first).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Element(pub Vec<Scalar>);

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl Deref for Element {
    type Target = Vec<Scalar>;

    fn deref(&self) -> &Vec<Scalar> {
        &self.0
    }
}

impl DerefMut for Element {
    fn deref_mut(&mut self) -> &mut Vec<Scalar> {
        &mut self.0
    }
}

impl From<Vec<Scalar>> for Element {
    fn from(v: Vec<Scalar>) -> Self {
        Element(v)
    }
}

impl Element {
    pub fn zeros(n: usize) -> Self {
        Element(vec![zero(); n])
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut e = Self::zeros(n);
        e.0[i] = one();
        e
    }

    pub fn into_inner(self) -> Vec<Scalar> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &[Scalar]) {
        debug_assert_eq!(self.len(), other.len());
        if c.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(other) {
            if !b.is_zero() {
                *a += c * b;
            }
        }
    }

    pub fn plus(&self, other: &Element) -> Element {
        Element(self.0.iter().zip(other.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn minus(&self, other: &Element) -> Element {
        Element(self.0.iter().zip(other.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, c: &Scalar) -> Element {
        Element(self.0.iter().map(|a| a * c).collect())
    }

    /// Parity of the support, or `None` for zero and for mixed vectors.
    pub fn parity(&self, space: SuperSpace) -> Option<Parity> {
        let even = self.0[..space.even].iter().any(|x| !x.is_zero());
        let odd = self.0[space.even..].iter().any(|x| !x.is_zero());
        match (even, odd) {
            (true, false) => Some(Parity::Even),
            (false, true) => Some(Parity::Odd),
            _ => None,
        }
    }

    pub fn is_homogeneous(&self, space: SuperSpace) -> bool {
        self.is_zero() || self.parity(space).is_some()
    }

    /// The component supported on one parity block.
    pub fn component(&self, space: SuperSpace, parity: Parity) -> Element {
        let mut out = Element::zeros(self.len());
        for i in space.indices(parity) {
            out.0[i] = self.0[i].clone();
        }
        out
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.0.iter().enumerate().filter(|(_, v)| !v.is_zero())
    }
}

pub type ConstantKey = (usize, usize, usize);

/// Finite-dimensional superalgebra: `b_i b_j = sum_k c_ij^k b_k`.
///
/// Constants are stored sparsely, nonzero only, in lexicographic key order.
/// The grading is checked on construction.
#[derive(Clone)]
pub struct SuperAlgebra {
    name: String,
    space: SuperSpace,
    constants: BTreeMap<ConstantKey, Scalar>,
    // products[i * n + j] = sparse b_i b_j
    products: Vec<Vec<(usize, Scalar)>>,
}

impl fmt::Debug for SuperAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SuperAlgebra")
            .field("name", &self.name)
            .field("space", &self.space)
            .field("nnz", &self.constants.len())
            .finish()
    }
}

impl PartialEq for SuperAlgebra {
    /// Structural equality; the name is a label and does not participate.
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.constants == other.constants
    }
}

impl Eq for SuperAlgebra {}

impl SuperAlgebra {
    /// Builds an algebra from `(i, j, k) -> c` entries. Duplicate keys are summed and
    /// zero entries dropped.
    pub fn new(
        name: impl Into<String>,
        space: SuperSpace,
        entries: impl IntoIterator<Item = (ConstantKey, Scalar)>,
    ) -> Result<Self> {
        let n = space.dim();
        let mut constants: BTreeMap<ConstantKey, Scalar> = BTreeMap::new();
        for ((i, j, k), c) in entries {
            if i >= n || j >= n || k >= n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: i.max(j).max(k) + 1,
                });
            }
            *constants.entry((i, j, k)).or_insert_with(zero) += c;
        }
        constants.retain(|_, v| !v.is_zero());
        for &(i, j, k) in constants.keys() {
            if space.p(k) != (space.p(i) + space.p(j)) % 2 {
                return Err(Error::Grading(format!(
                    "constant ({i}, {j}, {k}) maps {} x {} into {}",
                    space.parity(i),
                    space.parity(j),
                    space.parity(k)
                )));
            }
        }
        Ok(Self::from_sorted(name.into(), space, constants))
    }

    fn from_sorted(name: String, space: SuperSpace, constants: BTreeMap<ConstantKey, Scalar>) -> Self {
        let n = space.dim();
        let mut products = vec![Vec::new(); n * n];
        for (&(i, j, k), c) in &constants {
            products[i * n + j].push((k, c.clone()));
        }
        Self {
            name,
            space,
            constants,
            products,
        }
    }

    /// Builds an algebra from a rule giving the product of two basis vectors.
    pub fn from_basis_products(
        name: impl Into<String>,
        space: SuperSpace,
        mut rule: impl FnMut(usize, usize) -> Element,
    ) -> Result<Self> {
        let n = space.dim();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let v = rule(i, j);
                if v.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        got: v.len(),
                    });
                }
                for (k, c) in v.support() {
                    entries.push(((i, j, k), c.clone()));
                }
            }
        }
        Self::new(name, space, entries)
    }

    pub fn zero_algebra() -> Self {
        Self::from_sorted("zero".into(), SuperSpace::ZERO, BTreeMap::new())
    }

    pub fn abelian(name: impl Into<String>, space: SuperSpace) -> Self {
        Self::from_sorted(name.into(), space, BTreeMap::new())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn space(&self) -> SuperSpace {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn constants(&self) -> impl Iterator<Item = (ConstantKey, &Scalar)> {
        self.constants.iter().map(|(k, v)| (*k, v))
    }

    pub fn nnz(&self) -> usize {
        self.constants.len()
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.constants.get(&(i, j, k)).cloned().unwrap_or_else(zero)
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.is_empty()
    }

    /// Sparse `b_i b_j`.
    #[inline]
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i * self.dim() + j]
    }

    pub fn basis_product_element(&self, i: usize, j: usize) -> Element {
        let mut out = Element::zeros(self.dim());
        for (k, c) in self.basis_product(i, j) {
            out[*k] = c.clone();
        }
        out
    }

    fn check_len(&self, x: &[Scalar]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Bilinear product of two elements.
    pub fn product(&self, x: &[Scalar], y: &[Scalar]) -> Result<Element> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.mul(x, y))
    }

    /// Product without length checks; callers guarantee `x.len() == y.len() == dim`.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Element {
        let n = self.dim();
        let mut out = Element::zeros(n);
        let ys: Vec<(usize, &Scalar)> = y.iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for &(j, yj) in &ys {
                let terms = &self.products[i * n + j];
                if terms.is_empty() {
                    continue;
                }
                let f = xi * yj;
                for (k, c) in terms {
                    out[*k] += &f * c;
                }
            }
        }
        out
    }

    /// `b_i * y`.
    pub fn mul_basis_left(&self, i: usize, y: &[Scalar]) -> Element {
        let n = self.dim();
        let mut out = Element::zeros(n);
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            for (k, c) in &self.products[i * n + j] {
                out[*k] += yj * c;
            }
        }
        out
    }

    /// `x * b_j`.
    pub fn mul_basis_right(&self, x: &[Scalar], j: usize) -> Element {
        let n = self.dim();
        let mut out = Element::zeros(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (k, c) in &self.products[i * n + j] {
                out[*k] += xi * c;
            }
        }
        out
    }

    /// Matrix of `y -> b_i y`.
    pub fn left_multiplication(&self, i: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            for (k, c) in self.basis_product(i, j) {
                m[(*k, j)] = c.clone();
            }
        }
        m
    }

    /// Matrix of `x -> x b_j`.
    pub fn right_multiplication(&self, j: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for (k, c) in self.basis_product(i, j) {
                m[(*k, i)] = c.clone();
            }
        }
        m
    }

    /// Expresses the algebra in a new basis whose vectors are the columns of
    /// `basis` (old coordinates). Columns must be homogeneous, all even ones first,
    /// and linearly independent.
    pub fn change_basis(&self, basis: &Matrix) -> Result<SuperAlgebra> {
        let n = self.dim();
        if basis.rows() != n || basis.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: basis.cols(),
            });
        }
        let new_space = adapted_space(self.space, basis)?;
        let inv = basis
            .inverse()
            .ok_or_else(|| Error::precondition("basis change matrix is singular"))?;
        let cols = basis.columns();
        let mut entries = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let prod = self.mul(&cols[a], &cols[b]);
                if prod.is_zero() {
                    continue;
                }
                let coords = inv.mul_vec(&prod);
                for (k, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        entries.push(((a, b, k), c));
                    }
                }
            }
        }
        SuperAlgebra::new(self.name.clone(), new_space, entries)
    }

    /// Subalgebra spanned by the even basis vectors.
    pub fn even_part(&self) -> SuperAlgebra {
        let p = self.space.even;
        let constants = self
            .constants
            .iter()
            .filter(|((i, j, _), _)| *i < p && *j < p)
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        Self::from_sorted(format!("{}_even", self.name), SuperSpace::new(p, 0), constants)
    }

    /// Restriction of the product to a subalgebra given by independent columns
    /// (even columns first). The product must close on the span.
    pub fn restrict(&self, name: impl Into<String>, basis: &[Element]) -> Result<SuperAlgebra> {
        let n = self.dim();
        let cols: Vec<Vec<Scalar>> = basis.iter().map(|e| e.0.clone()).collect();
        let m = Matrix::from_columns(n, &cols);
        let space = adapted_space_partial(self.space, &m)?;
        let k = basis.len();
        let mut entries = Vec::new();
        for a in 0..k {
            for b in 0..k {
                let prod = self.mul(&basis[a], &basis[b]);
                if prod.is_zero() {
                    continue;
                }
                let coords = crate::linalg::solve(&m, &prod)
                    .ok_or_else(|| Error::precondition("subspace is not closed under the product"))?;
                for (c, v) in coords.into_iter().enumerate() {
                    if !v.is_zero() {
                        entries.push(((a, b, c), v));
                    }
                }
            }
        }
        SuperAlgebra::new(name, space, entries)
    }
}

/// Graded dimensions of the basis given by the columns of a square matrix, checking
/// homogeneity and the even-first order.
pub(crate) fn adapted_space(space: SuperSpace, basis: &Matrix) -> Result<SuperSpace> {
    adapted_space_partial(space, basis)
}

pub(crate) fn adapted_space_partial(space: SuperSpace, basis: &Matrix) -> Result<SuperSpace> {
    let mut even = 0;
    let mut seen_odd = false;
    for (c, col) in basis.columns().into_iter().enumerate() {
        let e = Element(col);
        match e.parity(space) {
            Some(Parity::Even) if !seen_odd => even += 1,
            Some(Parity::Even) => {
                return Err(Error::Grading(format!("even basis column {c} follows an odd one")))
            }
            Some(Parity::Odd) => seen_odd = true,
            None => return Err(Error::Grading(format!("basis column {c} is not homogeneous"))),
        }
    }
    Ok(SuperSpace::new(even, basis.cols() - even))
}

/// Index maps of the two summands into a direct sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumEmbedding {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl SumEmbedding {
    pub fn new(a: SuperSpace, b: SuperSpace) -> Self {
        let left = (0..a.dim())
            .map(|i| if i < a.even { i } else { i + b.even })
            .collect();
        let right = (0..b.dim())
            .map(|i| if i < b.even { a.even + i } else { a.dim() + i })
            .collect();
        Self { left, right }
    }
}

/// Block-diagonal sum: even of `a`, even of `b`, odd of `a`, odd of `b`.
pub fn direct_sum(a: &SuperAlgebra, b: &SuperAlgebra) -> (SuperAlgebra, SumEmbedding) {
    let emb = SumEmbedding::new(a.space, b.space);
    let space = SuperSpace::new(a.space.even + b.space.even, a.space.odd + b.space.odd);
    let mut constants = BTreeMap::new();
    for ((i, j, k), c) in a.constants() {
        constants.insert((emb.left[i], emb.left[j], emb.left[k]), c.clone());
    }
    for ((i, j, k), c) in b.constants() {
        constants.insert((emb.right[i], emb.right[j], emb.right[k]), c.clone());
    }
    let name = format!("{}+{}", a.name, b.name);
    (SuperAlgebra::from_sorted(name, space, constants), emb)
}

/// `-(-1)^{xy}` for basis indices, the graded skew sign.
#[inline]
pub(crate) fn skew_sign(space: SuperSpace, i: usize, j: usize) -> Scalar {
    -sign(space.p(i) * space.p(j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn sl2() -> SuperAlgebra {
        // h, e, f
        SuperAlgebra::new(
            "sl2",
            SuperSpace::new(3, 0),
            [
                ((0, 1, 1), int(2)),
                ((1, 0, 1), int(-2)),
                ((0, 2, 2), int(-2)),
                ((2, 0, 2), int(2)),
                ((1, 2, 0), int(1)),
                ((2, 1, 0), int(-1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn grading_violation_is_rejected() {
        let err = SuperAlgebra::new("bad", SuperSpace::new(1, 1), [((0, 0, 1), int(1))]);
        assert!(matches!(err, Err(Error::Grading(_))));
    }

    #[test]
    fn zero_entries_are_dropped_and_duplicates_summed() {
        let a = SuperAlgebra::new(
            "a",
            SuperSpace::new(2, 0),
            [((0, 1, 1), int(1)), ((0, 1, 1), int(-1)), ((1, 0, 0), int(0))],
        )
        .unwrap();
        assert!(a.is_abelian());
    }

    #[test]
    fn product_is_bilinear_extension() {
        let a = sl2();
        let h = Element::basis(3, 0);
        let e = Element::basis(3, 1);
        assert_eq!(a.product(&h, &e).unwrap(), e.scaled(&int(2)));
        let x = h.plus(&e);
        let y = Element::basis(3, 2);
        // (h+e) f = -2f + h
        assert_eq!(
            a.product(&x, &y).unwrap(),
            Element(vec![int(1), int(0), int(-2)])
        );
        assert!(a.product(&Element::zeros(3), &y).unwrap().is_zero());
        assert!(matches!(
            a.product(&Element::zeros(2), &y),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn direct_sum_orders_even_blocks_first() {
        let a = SuperAlgebra::abelian("a", SuperSpace::new(3, 0));
        let b = SuperAlgebra::abelian("b", SuperSpace::new(1, 4));
        let (s, emb) = direct_sum(&a, &b);
        assert_eq!(s.space(), SuperSpace::new(4, 4));
        assert_eq!(emb.left, vec![0, 1, 2]);
        assert_eq!(emb.right, vec![3, 4, 5, 6, 7]);
        let (t, _) = direct_sum(&sl2(), &SuperAlgebra::zero_algebra());
        assert_eq!(t, sl2());
    }

    #[test]
    fn change_basis_by_identity_is_identity() {
        let a = sl2();
        assert_eq!(a.change_basis(&Matrix::identity(3)).unwrap(), a);
    }

    #[test]
    fn change_basis_rejects_mixed_columns() {
        let a = SuperAlgebra::abelian("a", SuperSpace::new(1, 1));
        let m = Matrix::from_rows(vec![vec![int(1), int(0)], vec![int(1), int(1)]]);
        assert!(matches!(a.change_basis(&m), Err(Error::Grading(_))));
    }
}
