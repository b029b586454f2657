//! Worked examples with known answers, one test per example.

use malcev_core::algebra::{Element, Parity, SuperAlgebra, SuperSpace};
use malcev_core::catalog::*;
use malcev_core::decompose::*;
use malcev_core::extensions::*;
use malcev_core::identities::{check_jacobi, check_malcev, check_super_anticommutativity};
use malcev_core::ideals::{center, ideal_closure};
use malcev_core::linalg::Matrix;
use malcev_core::operators::*;
use malcev_core::quadratic::*;
use malcev_core::scalar::{int, one, zero, Scalar, ScalarStream};
use malcev_core::subspace::GradedSubspace;

/// Copy of `a` with the constant at `key` replaced by `value`.
fn with_constant(a: &SuperAlgebra, key: (usize, usize, usize), value: Scalar) -> SuperAlgebra {
    let mut entries: Vec<_> = a.constants().filter(|(k, _)| *k != key).map(|(k, c)| (k, c.clone())).collect();
    entries.push((key, value));
    SuperAlgebra::new("mutated", a.space(), entries).unwrap()
}

fn span(space: SuperSpace, idx: &[usize]) -> GradedSubspace {
    GradedSubspace::from_homogeneous(space, idx.iter().map(|&i| Element::basis(space.dim(), i))).unwrap()
}

fn form_with(b: &BilinearForm, i: usize, j: usize, v: Scalar) -> BilinearForm {
    let mut g = b.gram().clone();
    g[(i, j)] = v;
    BilinearForm::new(g).unwrap()
}

#[test]
fn catalog_algebras_are_malcev() {
    for q in [one_dim_lie(), sl2(), m7(), osp12(), odd_hyperbolic(), even_hyperbolic(), example_m(2)] {
        let q = q.unwrap();
        assert!(check_super_anticommutativity(&q.algebra).passed, "{}", q.name());
        assert!(check_malcev(&q.algebra).passed, "{}", q.name());
        assert!(check_form(&q.algebra, &q.form).unwrap().passed(), "{}", q.name());
    }
}

#[test]
fn one_sided_sign_flip_breaks_anticommutativity() {
    // a·v₁ = y₁ keeps its value while v₁·a flips from −y₁ to +y₁
    let q = example_m(2).unwrap();
    let (a, v1, y1) = (example_index_a(), example_index_v(0), example_index_y(2, 0));
    assert_eq!(q.algebra.constant(v1, a, y1), int(-1));
    let bad = with_constant(&q.algebra, (v1, a, y1), one());
    let r = check_super_anticommutativity(&bad);
    assert!(!r.passed);
    let w = &r.witnesses[0].indices;
    assert!(w == &vec![a, v1] || w == &vec![v1, a], "witness {w:?}");
}

#[test]
fn odd_square_is_not_constrained_by_anticommutativity() {
    // v₁v₁ = a is symmetric in an odd pair, so negating it stays anticommutative
    let q = example_m(2).unwrap();
    let v1 = example_index_v(0);
    let bad = with_constant(&q.algebra, (v1, v1, 0), int(-1));
    assert!(check_super_anticommutativity(&bad).passed);
}

#[test]
fn m7_is_malcev_but_not_lie() {
    let q = m7().unwrap();
    assert!(check_malcev(&q.algebra).passed);
    let j = check_jacobi(&q.algebra);
    assert!(!j.passed);
    assert_eq!(j.witnesses[0].indices.len(), 3);
}

#[test]
fn zeroing_one_m7_constant_breaks_malcev() {
    let q = m7().unwrap();
    let ((i, j, k), _) = q.algebra.constants().next().unwrap();
    let bad = with_constant(&q.algebra, (i, j, k), zero());
    let r = check_malcev(&bad);
    assert!(!r.passed);
    assert_eq!(r.witnesses[0].indices.len(), 4);
    assert_ne!(r.witnesses[0].lhs, r.witnesses[0].rhs);
}

#[test]
fn example_centers() {
    for n in 1..=3 {
        let q = example_m(n).unwrap();
        let ys: Vec<usize> = (0..n).map(|i| example_index_y(n, i)).collect();
        assert_eq!(center(&q.algebra), span(q.space(), &ys), "n = {n}");
    }
    let m = vec![1, 2];
    let k = catalog_get("example_gde", &CatalogParams { n: 2, m: m.clone(), p: 1, q: 2 }).unwrap().algebra;
    let z = center(&k.algebra);
    let last = k.dim() - 1;
    for idx in [2 + 2, 2 + 2 + 1, last] {
        assert!(z.contains(&Element::basis(k.dim(), idx).0), "index {idx}");
    }
}

#[test]
fn ideal_closure_of_an_odd_generator() {
    let q = example_m(2).unwrap();
    let closure = ideal_closure(&q.algebra, &span(q.space(), &[example_index_v(0)]));
    let expected = span(
        q.space(),
        &[example_index_a(), example_index_v(0), example_index_y(2, 0), example_index_y(2, 1)],
    );
    assert_eq!(closure, expected);
    let whole = ideal_closure(&q.algebra, &span(q.space(), &[example_index_v(0), example_index_v(1)]));
    assert!(whole.is_whole());
}

#[test]
fn form_checks_on_the_example() {
    let q = example_m(2).unwrap();
    let printed = example_m_printed_form(2).unwrap();
    assert!(check_form(&q.algebra, &printed).unwrap().passed());

    let (v1, y1) = (example_index_v(0), example_index_y(2, 0));
    // supersymmetry on an odd pair needs B(v,y) = −B(y,v)
    let broken = form_with(&q.form, v1, y1, q.form.pair(y1, v1).clone());
    let r = check_form(&q.algebra, &broken).unwrap();
    assert!(!r.passed());

    // an entry pairing even with odd is a grading violation, not a failed check
    let cross = form_with(&q.form, 0, v1, one());
    assert!(check_form(&q.algebra, &cross).is_err() || !check_form(&q.algebra, &cross).unwrap().passed());

    // dropping a hyperbolic pair makes the form degenerate
    let mut g = q.form.gram().clone();
    g[(v1, y1)] = zero();
    g[(y1, v1)] = zero();
    let degenerate = BilinearForm::new(g).unwrap();
    assert!(!degenerate.is_nondegenerate());
    assert!(!check_form(&q.algebra, &degenerate).unwrap().passed());
}

#[test]
fn abelian_odd_operator_skew_condition() {
    let q = abelian(1, 2).unwrap();
    let d = abelian12_gde_data().d;
    assert!(check_skew_supersymmetric(&q.form, &d, q.space()).unwrap().passed);

    // D(z) = +u instead of −u
    let s = q.space();
    let flipped = OperatorMap::from_entries(s, Parity::Odd, vec![(1, 0, one()), (0, 2, one())]).unwrap();
    let r = check_skew_supersymmetric(&q.form, &flipped, s).unwrap();
    assert!(!r.passed);
    let mut w = r.witnesses[0].indices.clone();
    w.sort();
    assert_eq!(w, vec![0, 2]);
}

#[test]
fn inner_derivation_is_a_malcev_operator() {
    let q = sl2().unwrap();
    let h = OperatorMap::left_multiplication(&q.algebra, 0);
    assert_eq!(h.image(1), Element(vec![zero(), int(2), zero()]));
    assert!(check_malcev_operator(&q.algebra, &h).unwrap().passed);
    assert!(check_skew_supersymmetric(&q.form, &h, q.space()).unwrap().passed);
}

#[test]
fn random_dense_even_map_on_m7_fails() {
    // M7 has no odd part, so only even maps are non-trivial there
    let q = m7().unwrap();
    let mut rng = ScalarStream::new(11);
    let f = random_operator(q.space(), Parity::Even, &mut rng);
    assert!(!check_malcev_operator(&q.algebra, &f).unwrap().passed);
    let odd = random_operator(q.space(), Parity::Odd, &mut rng);
    assert!(odd.is_zero());
}

#[test]
fn generic_skew_form_on_m7_is_not_a_cocycle() {
    let q = m7().unwrap();
    let mut g = Matrix::zeros(7, 7);
    for i in 0..7 {
        for j in (i + 1)..7 {
            let v = int((i * 7 + j) as i64 % 5 + 1);
            g[(i, j)] = v.clone();
            g[(j, i)] = -v;
        }
    }
    let w = Cocycle::new(q.space(), g, Parity::Even).unwrap();
    assert!(!check_cocycle(&q.algebra, &w).unwrap().passed);
    // the cocycle of an actual skew Malcev operator passes
    let ops = skew_malcev_operator_basis(&q, Parity::Even);
    assert_eq!(ops.len(), 7);
    let c = cocycle_from_operator(&q, &ops[0]).unwrap();
    assert!(check_cocycle(&q.algebra, &c).unwrap().passed);
    assert_eq!(operator_from_cocycle(&q, &c).unwrap(), ops[0]);
}

#[test]
fn central_extension_of_abelian_superalgebra() {
    let q = abelian(1, 2).unwrap();
    let d = abelian12_gde_data().d;
    let c = central_extension(&q, &d).unwrap();
    let star = 3;
    let nonzero: Vec<_> = c.constants().map(|(k, v)| (k, v.clone())).collect();
    assert_eq!(nonzero, vec![((0, 2, star), int(-1)), ((2, 0, star), int(1))]);
}

#[test]
fn abelian_generalized_double_extension_brackets() {
    let q = abelian(1, 2).unwrap();
    let g = abelian12_gde_data();
    assert!(verify_gde_data(&q, &g).unwrap().passed());
    let (k, w) = generalized_double_extension(&q, &g).unwrap();
    let (e, star) = (w.e_index, w.e_star_index);
    let (u, wv, z) = (w.embedding[0], w.embedding[1], w.embedding[2]);
    let n = k.dim();
    let b = |i| Element::basis(n, i);
    let prod = |i, j| k.algebra.basis_product_element(i, j);
    assert_eq!(prod(e, e), b(u));
    assert_eq!(prod(e, u), b(wv).minus(&b(star)));
    assert_eq!(prod(e, z), b(u).scaled(&int(-1)));
    assert_eq!(prod(u, z), b(star).scaled(&int(-1)));
}

#[test]
fn rescaled_zeta_still_matches_the_direct_check() {
    // the only even direction of V here is a, so every even perturbation of
    // ζ(e,e) rescales it; the conditions and the built product agree on that
    let q = example_m(2).unwrap();
    let g = example_gde_data(2, &[1, 1]).unwrap();
    let (m, v, s0) = induced_semidirect_data(&q, &g);
    for c in [-1, 0, 2] {
        let mut s = s0.clone();
        s.zeta[0][0][0] = int(c);
        let r = check_gsd_conditions(&m, &v, &s).unwrap();
        let direct = check_malcev(&generalized_semidirect_product(&m, &v, &s).unwrap()).passed;
        assert_eq!(r.passed(), direct);
    }
    // an odd component in ζ(e,e) breaks its shape
    let mut s = s0.clone();
    s.zeta[0][0][example_index_v(0)] += one();
    assert!(!check_gsd_conditions(&m, &v, &s).unwrap().passed());
}

#[test]
fn perturbed_zeta_on_m7_fails_a_condition() {
    let m = m7().unwrap().algebra;
    let v = SuperAlgebra::abelian("line", SuperSpace::new(1, 0));
    let mut s = SemidirectData {
        omega: (0..7).map(|_| OperatorMap::zero(1, Parity::Even)).collect(),
        zeta: vec![vec![Element::zeros(1); 7]; 7],
    };
    assert!(check_gsd_conditions(&m, &v, &s).unwrap().passed());
    for i in 0..7 {
        for j in (i + 1)..7 {
            let c = int((i * 7 + j) as i64 % 5 + 1);
            s.zeta[i][j][0] = c.clone();
            s.zeta[j][i][0] = -c;
        }
    }
    let r = check_gsd_conditions(&m, &v, &s).unwrap();
    assert!(r.omega_operators.passed && r.zeta_shape.passed);
    assert!(r.conditions.iter().any(|c| !c.passed));
    assert!(generalized_semidirect_product(&m, &v, &s).is_err());
}

#[test]
fn trivial_semidirect_data_gives_direct_sum() {
    let m = abelian(1, 2).unwrap().algebra;
    let v = odd_hyperbolic().unwrap().algebra;
    let n = m.dim();
    let s = SemidirectData {
        omega: (0..n).map(|_| OperatorMap::zero(v.dim(), Parity::Even)).collect(),
        zeta: vec![vec![Element::zeros(v.dim()); n]; n],
    };
    let p = generalized_semidirect_product(&m, &v, &s).unwrap();
    let (sum, _) = malcev_core::algebra::direct_sum(&m, &v);
    assert_eq!(p.constants().count(), sum.constants().count());
    assert_eq!(p.nnz(), 0);
}

#[test]
fn even_double_extension_of_sl2_round_trips() {
    let q = sl2().unwrap();
    let h = OperatorMap::left_multiplication(&q.algebra, 0);
    let (k, w) = double_extension_even(&q, &h).unwrap();
    assert!(k.validated);
    let z = center(&k.algebra);
    assert!(z.contains(&Element::basis(k.dim(), w.e_star_index).0));
    let r = reduce_even(&k).unwrap();
    assert!(r.n.same_structure(&q));
    assert_eq!(r.operator, h);
    assert!(r.alpha_check.passed && r.phi_check.passed);
    let (back, _) = double_extension_even(&r.n, &r.operator).unwrap();
    assert!(back.same_structure(&k));
}

#[test]
fn even_hyperbolic_needs_a_split_first() {
    let q = even_hyperbolic().unwrap();
    assert!(reduce_even(&q).is_err());
    let parts = b_irreducible_components(&q);
    assert_eq!(parts.parts.len(), 2);
}

#[test]
fn solvable_even_part_is_not_reductive() {
    // [x, y] = y on a two-dimensional even space
    let a = SuperAlgebra::new(
        "solvable",
        SuperSpace::new(2, 0),
        vec![((0, 1, 1), one()), ((1, 0, 1), int(-1))],
    )
    .unwrap();
    let q = QuadraticAlgebra::new_unchecked(a, BilinearForm::new(Matrix::identity(2)).unwrap());
    let r = check_reductive_even(&q);
    assert_eq!(r.reductive, Verdict::No);
    assert_eq!(check_reductive_even(&sl2().unwrap()).reductive, Verdict::Yes);
}

#[test]
fn reductive_even_parts_act_completely_reducibly() {
    let trivial = orthogonal_sum(&sl2().unwrap(), &odd_hyperbolic().unwrap());
    assert_eq!(check_completely_reducible_action(&trivial, &[]).completely_reducible, Verdict::Yes);
    let osp = osp12().unwrap();
    assert_eq!(check_completely_reducible_action(&osp, &[]).completely_reducible, Verdict::Yes);
}

#[test]
fn direct_sum_has_two_components() {
    let k = catalog_get("example_gde", &CatalogParams { n: 2, m: vec![1, 1], p: 1, q: 2 }).unwrap().algebra;
    let total = orthogonal_sum(&sl2().unwrap(), &k);
    let parts = b_irreducible_components(&total);
    assert_eq!(parts.parts.len(), 2);
    let dims: Vec<usize> = parts.parts.iter().map(|c| c.algebra.dim()).collect();
    assert!(dims.contains(&3) && dims.contains(&k.dim()));
}

#[test]
fn m7_is_a_simple_non_lie_leaf() {
    let q = m7().unwrap();
    let c = classify_u(&q);
    assert_eq!(c.label, ULabel::SimpleNonLieMalcev);
    assert!(c.conclusive);
    let t = inductive_decompose(&q).unwrap();
    assert_eq!(t.leaf_labels(), vec![ULabel::SimpleNonLieMalcev]);
    assert_eq!(t.kind(), "leaf");
}

#[test]
fn odd_reduction_recovers_the_example_base() {
    let m = vec![2, 1];
    let k = catalog_get("example_gde", &CatalogParams { n: 2, m: m.clone(), p: 1, q: 2 }).unwrap().algebra;
    let r = reduce_odd(&k).unwrap();
    assert!(r.n.same_structure(&example_m(2).unwrap()));
    assert_eq!(r.gde.d, example_gde_data(2, &m).unwrap().d);
}
