//! Identity verifiers evaluated on basis tuples.
//!
//! All identities involved are multilinear, so checking every tuple of basis
//! vectors is a complete test.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{skew_sign, Element, SuperAlgebra};
use crate::scalar::sign;

/// Witnesses kept per report; `failures` still counts all of them.
pub const MAX_WITNESSES: usize = 8;

/// A failing instance: basis indices plus both sides of the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub lhs: Element,
    pub rhs: Element,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub failures: usize,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn pass(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: true,
            failures: 0,
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn from_witnesses(name: impl Into<String>, failures: usize, mut witnesses: Vec<Witness>) -> Self {
        witnesses.truncate(MAX_WITNESSES);
        Self {
            name: name.into(),
            passed: failures == 0,
            failures,
            witnesses,
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Records a failure; keeps the witness if there is room.
    pub fn fail(&mut self, w: Witness) {
        self.passed = false;
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(w);
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.failures += other.failures;
        self.passed &= other.passed;
        for w in other.witnesses {
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(w);
            }
        }
        self.notes.extend(other.notes);
    }

    pub fn first_witness(&self) -> Option<&Witness> {
        self.witnesses.first()
    }

    pub fn to_json(&self, with_witnesses: bool) -> serde_json::Value {
        #[derive(Serialize)]
        struct W<'a> {
            indices: &'a [usize],
            lhs: Vec<String>,
            rhs: Vec<String>,
        }
        let ws: Vec<W> = if with_witnesses {
            self.witnesses
                .iter()
                .map(|w| W {
                    indices: &w.indices,
                    lhs: w.lhs.iter().map(crate::scalar::to_text).collect(),
                    rhs: w.rhs.iter().map(crate::scalar::to_text).collect(),
                })
                .collect()
        } else {
            Vec::new()
        };
        serde_json::json!({
            "check": self.name,
            "passed": self.passed,
            "failures": self.failures,
            "witnesses": ws,
            "notes": self.notes,
        })
    }
}

/// Collects per-chunk failures from a parallel scan in deterministic order.
pub(crate) fn collect_report(name: &str, chunks: Vec<(usize, Vec<Witness>)>) -> CheckReport {
    let failures = chunks.iter().map(|(f, _)| f).sum();
    let witnesses = chunks.into_iter().flat_map(|(_, w)| w).take(MAX_WITNESSES).collect();
    CheckReport::from_witnesses(name, failures, witnesses)
}

/// `c_ij^k = -(-1)^{|i||j|} c_ji^k` for all index triples.
pub fn check_super_anticommutativity(a: &SuperAlgebra) -> CheckReport {
    let n = a.dim();
    let s = a.space();
    let mut report = CheckReport::pass("super-anticommutativity");
    for i in 0..n {
        for j in i..n {
            let lhs = a.basis_product_element(i, j);
            let rhs = a.basis_product_element(j, i).scaled(&skew_sign(s, i, j));
            if lhs != rhs {
                report.fail(Witness {
                    indices: vec![i, j],
                    lhs,
                    rhs,
                });
            }
        }
    }
    report
}

/// Pair and left-normed triple products of basis vectors, shared by the
/// multilinear scans.
pub(crate) struct ProductCache {
    n: usize,
    pairs: Vec<Element>,
    triples: Vec<Element>,
}

impl ProductCache {
    pub(crate) fn new(a: &SuperAlgebra) -> Self {
        let n = a.dim();
        let pairs: Vec<Element> = (0..n * n).map(|ij| a.basis_product_element(ij / n, ij % n)).collect();
        let triples = (0..n * n * n)
            .into_par_iter()
            .map(|idx| {
                let (ij, k) = (idx / n, idx % n);
                a.mul_basis_right(&pairs[ij], k)
            })
            .collect();
        Self { n, pairs, triples }
    }

    #[inline]
    pub(crate) fn pair(&self, i: usize, j: usize) -> &Element {
        &self.pairs[i * self.n + j]
    }

    /// `(b_i b_j) b_k`.
    #[inline]
    pub(crate) fn triple(&self, i: usize, j: usize, k: usize) -> &Element {
        &self.triples[(i * self.n + j) * self.n + k]
    }
}

/// The four-variable super-Malcev identity
/// `(-1)^{yz}(XZ)(YT) = ((XY)Z)T + (-1)^{x(y+z+t)}((YZ)T)X
///   + (-1)^{(x+y)(z+t)}((ZT)X)Y + (-1)^{t(x+y+z)}((TX)Y)Z`
/// on every basis quadruple.
pub fn check_malcev(a: &SuperAlgebra) -> CheckReport {
    let n = a.dim();
    let s = a.space();
    let cache = ProductCache::new(a);
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
                        let lhs = a
                            .mul(cache.pair(x, z), cache.pair(y, t))
                            .scaled(&sign(py * pz));
                        let mut rhs = a.mul_basis_right(cache.triple(x, y, z), t);
                        rhs.add_scaled(
                            &sign(px * (py + pz + pt)),
                            &a.mul_basis_right(cache.triple(y, z, t), x),
                        );
                        rhs.add_scaled(
                            &sign((px + py) * (pz + pt)),
                            &a.mul_basis_right(cache.triple(z, t, x), y),
                        );
                        rhs.add_scaled(
                            &sign(pt * (px + py + pz)),
                            &a.mul_basis_right(cache.triple(t, x, y), z),
                        );
                        if lhs != rhs {
                            failures += 1;
                            if ws.len() < MAX_WITNESSES {
                                ws.push(Witness {
                                    indices: vec![x, y, z, t],
                                    lhs,
                                    rhs,
                                });
                            }
                        }
                    }
                }
            }
            (failures, ws)
        })
        .collect();
    let mut report = collect_report("malcev identity", chunks);
    if !check_super_anticommutativity(a).passed {
        report = report.with_note("algebra is not super-anticommutative; identity evaluated anyway");
    }
    report
}

/// Graded Jacobi: `(-1)^{xz} X(YZ) + (-1)^{yx} Y(ZX) + (-1)^{zy} Z(XY) = 0`.
pub fn check_jacobi(a: &SuperAlgebra) -> CheckReport {
    let n = a.dim();
    let s = a.space();
    let chunks: Vec<(usize, Vec<Witness>)> = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut failures = 0;
            let mut ws = Vec::new();
            for y in 0..n {
                for z in 0..n {
                    let (px, py, pz) = (s.p(x), s.p(y), s.p(z));
                    let mut sum = a.mul_basis_left(x, &a.basis_product_element(y, z));
                    sum = sum.scaled(&sign(px * pz));
                    sum.add_scaled(&sign(py * px), &a.mul_basis_left(y, &a.basis_product_element(z, x)));
                    sum.add_scaled(&sign(pz * py), &a.mul_basis_left(z, &a.basis_product_element(x, y)));
                    if !sum.is_zero() {
                        failures += 1;
                        if ws.len() < MAX_WITNESSES {
                            ws.push(Witness {
                                indices: vec![x, y, z],
                                lhs: sum,
                                rhs: Element::zeros(n),
                            });
                        }
                    }
                }
            }
            (failures, ws)
        })
        .collect();
    collect_report("graded jacobi", chunks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SuperSpace;
    use crate::scalar::int;

    #[test]
    fn abelian_algebra_passes_everything() {
        let a = SuperAlgebra::abelian("ab", SuperSpace::new(2, 2));
        assert!(check_super_anticommutativity(&a).passed);
        assert!(check_malcev(&a).passed);
        assert!(check_jacobi(&a).passed);
    }

    #[test]
    fn one_sided_odd_constant_breaks_anticommutativity() {
        // odd x odd products are symmetric; store only one side with the wrong sign
        let a = SuperAlgebra::new(
            "bad",
            SuperSpace::new(1, 2),
            [((1, 2, 0), int(1)), ((2, 1, 0), int(-1))],
        )
        .unwrap();
        let r = check_super_anticommutativity(&a);
        assert!(!r.passed);
        assert_eq!(r.witnesses[0].indices, vec![1, 2]);
    }

    #[test]
    fn report_truncates_witnesses_but_counts_all() {
        let mut r = CheckReport::pass("x");
        for i in 0..20 {
            r.fail(Witness {
                indices: vec![i],
                lhs: Element::zeros(1),
                rhs: Element::zeros(1),
            });
        }
        assert_eq!(r.failures, 20);
        assert_eq!(r.witnesses.len(), MAX_WITNESSES);
        assert!(!r.passed);
    }
}
