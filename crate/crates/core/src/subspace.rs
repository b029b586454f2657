use std::fmt;

use crate::algebra::{Element, Parity, SuperSpace};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, RowReducer};
use crate::scalar::Scalar;

/// Graded subspace held as a reduced echelon basis of homogeneous vectors.
///
/// Because even coordinates precede odd ones, the reduced echelon basis of a
/// graded subspace is automatically homogeneous: even vectors come first.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedSubspace {
    space: SuperSpace,
    basis: Vec<Element>,
}

impl fmt::Debug for GradedSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedSubspace")
            .field("space", &self.space)
            .field("dims", &(self.even_dim(), self.odd_dim()))
            .field("basis", &self.basis)
            .finish()
    }
}

impl GradedSubspace {
    pub fn zero(space: SuperSpace) -> Self {
        Self {
            space,
            basis: Vec::new(),
        }
    }

    pub fn whole(space: SuperSpace) -> Self {
        let n = space.dim();
        Self {
            space,
            basis: (0..n).map(|i| Element::basis(n, i)).collect(),
        }
    }

    /// Span of homogeneous vectors; rejects mixed-parity input.
    pub fn from_homogeneous(space: SuperSpace, vectors: impl IntoIterator<Item = Element>) -> Result<Self> {
        let vectors: Vec<Element> = vectors.into_iter().collect();
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != space.dim() {
                return Err(Error::DimensionMismatch {
                    expected: space.dim(),
                    got: v.len(),
                });
            }
            if !v.is_homogeneous(space) {
                return Err(Error::Grading(format!("seed vector {i} is not homogeneous")));
            }
        }
        Ok(Self::span_unchecked(space, vectors))
    }

    /// Smallest graded subspace containing the vectors: each vector contributes
    /// both of its homogeneous components.
    pub fn graded_hull(space: SuperSpace, vectors: impl IntoIterator<Item = Element>) -> Self {
        let comps = vectors.into_iter().flat_map(|v| {
            [
                v.component(space, Parity::Even),
                v.component(space, Parity::Odd),
            ]
        });
        Self::span_unchecked(space, comps)
    }

    fn span_unchecked(space: SuperSpace, vectors: impl IntoIterator<Item = Element>) -> Self {
        let mut red = RowReducer::new(space.dim());
        for v in vectors {
            red.insert(v.0);
        }
        Self {
            space,
            basis: red.basis().into_iter().map(Element).collect(),
        }
    }

    pub fn space(&self) -> SuperSpace {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.basis.len() == self.space.dim()
    }

    pub fn is_proper_nonzero(&self) -> bool {
        !self.is_zero() && !self.is_whole()
    }

    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    pub fn even_dim(&self) -> usize {
        self.basis
            .iter()
            .filter(|v| v.parity(self.space) == Some(Parity::Even))
            .count()
    }

    pub fn odd_dim(&self) -> usize {
        self.dim() - self.even_dim()
    }

    pub fn part(&self, parity: Parity) -> Vec<Element> {
        self.basis
            .iter()
            .filter(|v| v.parity(self.space) == Some(parity))
            .cloned()
            .collect()
    }

    /// Columns are the basis vectors.
    pub fn basis_matrix(&self) -> Matrix {
        let cols: Vec<Vec<Scalar>> = self.basis.iter().map(|v| v.0.clone()).collect();
        Matrix::from_columns(self.space.dim(), &cols)
    }

    pub fn reducer(&self) -> RowReducer {
        let mut red = RowReducer::new(self.space.dim());
        for v in &self.basis {
            red.insert(v.0.clone());
        }
        red
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reducer().contains(v)
    }

    pub fn contains_subspace(&self, other: &GradedSubspace) -> bool {
        let red = self.reducer();
        other.basis.iter().all(|v| red.contains(v))
    }

    pub fn sum(&self, other: &GradedSubspace) -> GradedSubspace {
        Self::span_unchecked(self.space, self.basis.iter().chain(&other.basis).cloned())
    }

    /// Expresses a vector of the subspace in terms of its basis.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        crate::linalg::solve(&self.basis_matrix(), v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn hull_splits_mixed_vectors() {
        let s = SuperSpace::new(1, 1);
        let v = Element(vec![int(1), int(1)]);
        assert!(GradedSubspace::from_homogeneous(s, [v.clone()]).is_err());
        let h = GradedSubspace::graded_hull(s, [v]);
        assert!(h.is_whole());
        assert_eq!(h.even_dim(), 1);
    }

    #[test]
    fn echelon_basis_is_canonical() {
        let s = SuperSpace::new(3, 0);
        let a = GradedSubspace::from_homogeneous(
            s,
            [Element(vec![int(2), int(2), int(0)]), Element(vec![int(0), int(1), int(1)])],
        )
        .unwrap();
        let b = GradedSubspace::from_homogeneous(
            s,
            [Element(vec![int(1), int(0), int(-1)]), Element(vec![int(1), int(2), int(1)])],
        )
        .unwrap();
        assert_eq!(a, b);
        assert!(a.contains(&[int(3), int(1), int(-2)]));
    }
}
