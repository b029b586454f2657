//! Center, ideal closures, and the simplicity search.

use num::Zero;

use crate::algebra::{Element, Parity, SuperAlgebra};
use crate::linalg::{Matrix, RowReducer};
use crate::scalar::{zero, Scalar, ScalarStream};
use crate::subspace::GradedSubspace;

/// `{X : XY = YX = 0 for all Y}`, solved separately on each parity block.
pub fn center(a: &SuperAlgebra) -> GradedSubspace {
    let n = a.dim();
    let s = a.space();
    let mut vectors = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        let idx: Vec<usize> = s.indices(parity).collect();
        if idx.is_empty() {
            continue;
        }
        let mut red = RowReducer::new(idx.len());
        for j in 0..n {
            for k in 0..n {
                let left: Vec<Scalar> = idx.iter().map(|&i| a.constant(i, j, k)).collect();
                let right: Vec<Scalar> = idx.iter().map(|&i| a.constant(j, i, k)).collect();
                if left.iter().any(|x| !x.is_zero()) {
                    red.insert(left);
                }
                if right.iter().any(|x| !x.is_zero()) {
                    red.insert(right);
                }
            }
        }
        for v in red.nullspace() {
            let mut e = Element::zeros(n);
            for (c, &i) in idx.iter().enumerate() {
                e[i] = v[c].clone();
            }
            vectors.push(e);
        }
    }
    GradedSubspace::graded_hull(s, vectors)
}

/// Center restricted to one parity.
pub fn center_part(a: &SuperAlgebra, parity: Parity) -> Vec<Element> {
    center(a).part(parity)
}

/// `M M`, the span of all products of basis vectors.
pub fn derived_subspace(a: &SuperAlgebra) -> GradedSubspace {
    let n = a.dim();
    let prods = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| a.basis_product_element(i, j));
    GradedSubspace::graded_hull(a.space(), prods)
}

/// Smallest graded two-sided ideal containing `seed`, by fixpoint iteration.
pub fn ideal_closure(a: &SuperAlgebra, seed: &GradedSubspace) -> GradedSubspace {
    closure_of_vectors(a, seed.basis().iter().cloned())
}

pub(crate) fn closure_of_vectors(a: &SuperAlgebra, seed: impl IntoIterator<Item = Element>) -> GradedSubspace {
    let n = a.dim();
    let s = a.space();
    let mut red = RowReducer::new(n);
    let mut queue: Vec<Element> = Vec::new();
    let push = |v: Element, red: &mut RowReducer, queue: &mut Vec<Element>| {
        for parity in [Parity::Even, Parity::Odd] {
            let c = v.component(s, parity);
            if !c.is_zero() && red.insert(c.0.clone()) {
                queue.push(c);
            }
        }
    };
    for v in seed {
        push(v, &mut red, &mut queue);
    }
    while let Some(v) = queue.pop() {
        if red.is_full() {
            break;
        }
        for j in 0..n {
            push(a.mul_basis_right(&v, j), &mut red, &mut queue);
            push(a.mul_basis_left(j, &v), &mut red, &mut queue);
        }
    }
    GradedSubspace::from_homogeneous(s, red.basis().into_iter().map(Element))
        .expect("closure basis is homogeneous")
}

pub fn is_ideal(a: &SuperAlgebra, s: &GradedSubspace) -> bool {
    let red = s.reducer();
    let n = a.dim();
    s.basis().iter().all(|v| {
        (0..n).all(|j| red.contains(&a.mul_basis_right(v, j)) && red.contains(&a.mul_basis_left(j, v)))
    })
}

/// Deterministic stream of candidate ideals: closures of center basis vectors,
/// of basis vectors, of pairwise sums of basis vectors, of seeded random
/// homogeneous vectors, and of kernel vectors of random multiplication
/// operators. Duplicates are skipped.
pub struct CandidateIdeals<'a> {
    algebra: &'a SuperAlgebra,
    seeds: std::vec::IntoIter<Element>,
    seen: Vec<GradedSubspace>,
}

/// Seed used for the pseudo-random part of every candidate search.
pub const SEARCH_SEED: u64 = 0x5eed_1dea;
const RANDOM_ROUNDS: usize = 12;

impl<'a> CandidateIdeals<'a> {
    pub fn new(a: &'a SuperAlgebra) -> Self {
        let n = a.dim();
        let s = a.space();
        let mut seeds: Vec<Element> = center(a).basis().to_vec();
        seeds.extend((0..n).map(|i| Element::basis(n, i)));
        for i in 0..n {
            for j in (i + 1)..n {
                if s.p(i) == s.p(j) {
                    let mut e = Element::basis(n, i);
                    e[j] = crate::scalar::one();
                    seeds.push(e);
                }
            }
        }
        let mut rng = ScalarStream::new(SEARCH_SEED);
        for _ in 0..RANDOM_ROUNDS {
            for parity in [Parity::Even, Parity::Odd] {
                let mut v = Element::zeros(n);
                for i in s.indices(parity) {
                    v[i] = rng.next_int(3);
                }
                if !v.is_zero() {
                    seeds.push(v);
                }
            }
            // kernel vectors of a random left multiplication L_x and its even/odd pieces
            let mut x = Element::zeros(n);
            for i in 0..n {
                x[i] = rng.next_int(2);
            }
            let lx = left_mult_of(a, &x);
            for v in lx.nullspace() {
                for parity in [Parity::Even, Parity::Odd] {
                    let c = Element(v.clone()).component(s, parity);
                    if !c.is_zero() {
                        seeds.push(c);
                    }
                }
            }
        }
        Self {
            algebra: a,
            seeds: seeds.into_iter(),
            seen: Vec::new(),
        }
    }
}

impl Iterator for CandidateIdeals<'_> {
    type Item = GradedSubspace;

    fn next(&mut self) -> Option<GradedSubspace> {
        for seed in self.seeds.by_ref() {
            let c = closure_of_vectors(self.algebra, [seed]);
            if self.seen.contains(&c) {
                continue;
            }
            self.seen.push(c.clone());
            return Some(c);
        }
        None
    }
}

fn left_mult_of(a: &SuperAlgebra, x: &[Scalar]) -> Matrix {
    let n = a.dim();
    let mut m = Matrix::zeros(n, n);
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for j in 0..n {
            for (k, c) in a.basis_product(i, j) {
                m[(*k, j)] += xi * c;
            }
        }
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Simplicity {
    Simple,
    NotSimple,
    Unknown,
}

#[derive(Debug, Clone)]
pub struct SimplicityReport {
    pub status: Simplicity,
    /// A proper nonzero graded ideal when `NotSimple` (absent for abelian/zero algebras).
    pub witness: Option<GradedSubspace>,
    pub certificate: String,
}

impl SimplicityReport {
    pub fn is_simple(&self) -> bool {
        self.status == Simplicity::Simple
    }
}

/// Simplicity test over the left/right multiplication operators.
///
/// A proper ideal found by the candidate search proves non-simplicity. A
/// positive answer is certified by Burnside's theorem: the associative algebra
/// generated by all multiplications and the parity projection is the full
/// matrix algebra, so no proper graded ideal exists even after scalar
/// extension. Anything else is reported as unknown.
pub fn is_simple(a: &SuperAlgebra) -> SimplicityReport {
    let n = a.dim();
    let not_simple = |witness, cert: &str| SimplicityReport {
        status: Simplicity::NotSimple,
        witness,
        certificate: cert.to_string(),
    };
    if n == 0 {
        return not_simple(None, "zero algebra");
    }
    if a.is_abelian() {
        return not_simple(None, "abelian");
    }
    let z = center(a);
    if !z.is_zero() {
        return not_simple(Some(z), "nonzero center");
    }
    let d = derived_subspace(a);
    if !d.is_whole() {
        return not_simple(Some(d), "derived algebra is proper");
    }
    for cand in CandidateIdeals::new(a) {
        if cand.is_proper_nonzero() {
            return not_simple(Some(cand), "candidate ideal closure");
        }
    }
    if enveloping_dimension(a) == n * n {
        SimplicityReport {
            status: Simplicity::Simple,
            witness: None,
            certificate: "multiplication algebra is the full matrix algebra".into(),
        }
    } else {
        SimplicityReport {
            status: Simplicity::Unknown,
            witness: None,
            certificate: "no ideal found and multiplication algebra is not the full matrix algebra".into(),
        }
    }
}

/// Generators of the multiplication algebra: all `L_i`, `R_i`, and the even projection.
pub(crate) fn multiplication_generators(a: &SuperAlgebra) -> Vec<Matrix> {
    let n = a.dim();
    let s = a.space();
    let mut gens = Vec::new();
    for i in 0..n {
        let l = a.left_multiplication(i);
        if !l.is_zero() {
            gens.push(l);
        }
        let r = a.right_multiplication(i);
        if !r.is_zero() {
            gens.push(r);
        }
    }
    let mut p = Matrix::zeros(n, n);
    for i in s.indices(Parity::Even) {
        p[(i, i)] = crate::scalar::one();
    }
    gens.push(p);
    gens
}

/// Dimension of the unital associative algebra generated by `gens` (all `n x n`).
pub(crate) fn generated_algebra_dimension(n: usize, gens: &[Matrix]) -> usize {
    let flat = |m: &Matrix| -> Vec<Scalar> {
        let mut v = Vec::with_capacity(n * n);
        for r in 0..n {
            v.extend_from_slice(m.row(r));
        }
        v
    };
    let mut red = RowReducer::new(n * n);
    let mut queue = vec![Matrix::identity(n)];
    red.insert(flat(&queue[0]));
    while let Some(w) = queue.pop() {
        if red.is_full() {
            break;
        }
        for g in gens {
            let p = g.mul(&w);
            if red.insert(flat(&p)) {
                queue.push(p);
            }
        }
    }
    red.rank()
}

pub(crate) fn enveloping_dimension(a: &SuperAlgebra) -> usize {
    generated_algebra_dimension(a.dim(), &multiplication_generators(a))
}

/// Trace form `tr(R_x R_y)` on basis vectors.
pub fn trace_form(a: &SuperAlgebra) -> Matrix {
    let n = a.dim();
    let rs: Vec<Matrix> = (0..n).map(|i| a.right_multiplication(i)).collect();
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let p = rs[i].mul(&rs[j]);
            let mut t = zero();
            for k in 0..n {
                t += &p[(k, k)];
            }
            g[(i, j)] = t;
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SuperSpace;
    use crate::scalar::int;

    fn heisenberg() -> SuperAlgebra {
        // [x, y] = z
        SuperAlgebra::new(
            "heis",
            SuperSpace::new(3, 0),
            [((0, 1, 2), int(1)), ((1, 0, 2), int(-1))],
        )
        .unwrap()
    }

    #[test]
    fn heisenberg_center_and_closures() {
        let a = heisenberg();
        let z = center(&a);
        assert_eq!(z.dim(), 1);
        assert!(z.contains(&[int(0), int(0), int(1)]));
        assert!(is_ideal(&a, &z));
        let cl = closure_of_vectors(&a, [Element::basis(3, 0)]);
        assert_eq!(cl.dim(), 2);
        assert_eq!(is_simple(&a).status, Simplicity::NotSimple);
    }

    #[test]
    fn zero_seed_closes_to_zero() {
        let a = heisenberg();
        assert!(ideal_closure(&a, &GradedSubspace::zero(a.space())).is_zero());
    }

    #[test]
    fn one_dimensional_is_not_simple() {
        let a = SuperAlgebra::abelian("k", SuperSpace::new(1, 0));
        assert_eq!(is_simple(&a).status, Simplicity::NotSimple);
    }

    #[test]
    fn generated_dimension_of_scalars() {
        assert_eq!(generated_algebra_dimension(3, &[]), 1);
    }
}
