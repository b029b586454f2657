//! Randomized invariants.

use malcev_core::algebra::Parity;
use malcev_core::catalog::*;
use malcev_core::decompose::{inductive_decompose, rebuild};
use malcev_core::identities::check_malcev;
use malcev_core::io::{emit_document, parse_document, Document};
use malcev_core::operators::*;
use malcev_core::quadratic::*;
use malcev_core::scalar::{parse, to_text, Scalar, ScalarStream};
use num::BigInt;
use proptest::prelude::*;

fn small_catalog(i: usize) -> QuadraticAlgebra {
    match i % 6 {
        0 => one_dim_lie(),
        1 => sl2(),
        2 => osp12(),
        3 => odd_hyperbolic(),
        4 => abelian(1, 2),
        _ => example_m(1),
    }
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalar_text_round_trip(n in -10_000i64..10_000, d in 1i64..5_000) {
        let s = Scalar::new(BigInt::from(n), BigInt::from(d));
        prop_assert_eq!(parse(&to_text(&s)).unwrap(), s);
    }

    #[test]
    fn operator_cocycle_round_trip(seed in any::<u64>(), odd in any::<bool>(), which in 0usize..6) {
        let q = small_catalog(which);
        let parity = if odd { Parity::Odd } else { Parity::Even };
        let mut rng = ScalarStream::new(seed);
        let f = random_operator(q.space(), parity, &mut rng);
        let w = cocycle_from_operator(&q, &f).unwrap();
        prop_assert_eq!(operator_from_cocycle(&q, &w).unwrap(), f);
    }

    #[test]
    fn skew_operators_give_cocycles(seed in any::<u64>(), odd in any::<bool>(), which in 0usize..6) {
        let q = small_catalog(which);
        let parity = if odd { Parity::Odd } else { Parity::Even };
        let ops = skew_malcev_operator_basis(&q, parity);
        let mut rng = ScalarStream::new(seed);
        let f = random_combination(&ops, q.dim(), parity, &mut rng);
        prop_assert!(check_skew_supersymmetric(&q.form, &f, q.space()).unwrap().passed);
        prop_assert!(check_malcev_operator(&q.algebra, &f).unwrap().passed);
        let w = cocycle_from_operator(&q, &f).unwrap();
        prop_assert!(check_cocycle(&q.algebra, &w).unwrap().passed);
    }

    #[test]
    fn direct_sums_validate_and_serialize(picks in prop::collection::vec(0usize..6, 1..4)) {
        let parts: Vec<_> = picks.iter().map(|&i| small_catalog(i)).collect();
        let s = orthogonal_sum_all(&parts);
        let q = QuadraticAlgebra::new(s.algebra, s.form).unwrap();
        prop_assert!(check_malcev(&q.algebra).passed);
        let text = emit_document(&Document::new(q.clone()));
        let back = parse_document(&text).unwrap();
        prop_assert!(back.algebra.same_structure(&q));
        prop_assert_eq!(emit_document(&back), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn decompose_rebuild_under_permutation(picks in prop::collection::vec(0usize..6, 1..3), perm_seed in any::<u64>()) {
        let parts: Vec<_> = picks.iter().map(|&i| small_catalog(i)).collect();
        let s = orthogonal_sum_all(&parts);
        let n = s.dim();
        let mut perm: Vec<usize> = (0..n).collect();
        // keep parities in place: shuffle the even and odd blocks separately
        let mut rng = ScalarStream::new(perm_seed);
        let p = s.space().even;
        for block in [0..p, p..n] {
            let idx: Vec<usize> = block.collect();
            for k in (1..idx.len()).rev() {
                let j = (rng.next_u64() % (k as u64 + 1)) as usize;
                perm.swap(idx[k], idx[j]);
            }
        }
        let q = QuadraticAlgebra::new(s.algebra, s.form).unwrap().change_basis(&permutation_matrix(&perm)).unwrap();
        let q = QuadraticAlgebra::new(q.algebra, q.form).unwrap();
        let t = inductive_decompose(&q).unwrap();
        let r = rebuild(&t).unwrap();
        prop_assert!(r.same_structure(&q));
    }
}
