//! Named ground-truth algebras.

use crate::algebra::{Element, Parity, SuperAlgebra, SuperSpace};
use crate::error::{Error, Result};
use crate::extensions::{generalized_double_extension, verify_gde_data, GdeData};
use crate::linalg::Matrix;
use crate::operators::OperatorMap;
use crate::quadratic::{BilinearForm, QuadraticAlgebra};
use crate::scalar::{int, Scalar};

pub const CATALOG_NAMES: [&str; 11] = [
    "zero",
    "one_dim_lie",
    "abelian",
    "sl2",
    "m7",
    "osp12",
    "example_M",
    "example_gde",
    "odd_hyperbolic",
    "even_hyperbolic",
    "gde_abelian12",
];

/// Parameters of the parametric families. Unused fields are ignored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogParams {
    pub n: usize,
    pub m: Vec<i64>,
    pub p: usize,
    pub q: usize,
}

impl Default for CatalogParams {
    fn default() -> Self {
        Self {
            n: 2,
            m: Vec::new(),
            p: 1,
            q: 2,
        }
    }
}

impl CatalogParams {
    pub fn example(n: usize, m: &[i64]) -> Self {
        Self {
            n,
            m: m.to_vec(),
            ..Self::default()
        }
    }

    pub fn abelian(p: usize, q: usize) -> Self {
        Self {
            p,
            q,
            ..Self::default()
        }
    }

    /// `m` padded with ones when left empty.
    fn multipliers(&self) -> Result<Vec<i64>> {
        let m = if self.m.is_empty() { vec![1; self.n] } else { self.m.clone() };
        if self.n == 0 {
            return Err(Error::precondition("the example family needs n >= 1"));
        }
        if m.len() != self.n {
            return Err(Error::precondition(format!("expected {} multipliers, got {}", self.n, m.len())));
        }
        if m.contains(&0) {
            return Err(Error::precondition("multipliers must be nonzero"));
        }
        Ok(m)
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub params: CatalogParams,
    pub algebra: QuadraticAlgebra,
    /// Extension data shipped with the entry, verified.
    pub gde: Option<GdeData>,
    /// For extensions: the entry that was extended.
    pub base: Option<Box<CatalogEntry>>,
}

pub fn catalog_get(name: &str, params: &CatalogParams) -> Result<CatalogEntry> {
    let entry = |algebra: QuadraticAlgebra| CatalogEntry {
        name: name.to_string(),
        params: params.clone(),
        algebra,
        gde: None,
        base: None,
    };
    match name {
        "zero" => Ok(entry(QuadraticAlgebra::zero().with_name("zero"))),
        "one_dim_lie" => Ok(entry(one_dim_lie()?)),
        "abelian" => Ok(entry(abelian(params.p, params.q)?)),
        "sl2" => Ok(entry(sl2()?)),
        "m7" => Ok(entry(m7()?)),
        "osp12" => Ok(entry(osp12()?)),
        "odd_hyperbolic" => Ok(entry(odd_hyperbolic()?)),
        "even_hyperbolic" => Ok(entry(even_hyperbolic()?)),
        "example_M" => {
            let m = params.multipliers()?;
            let q = example_m(params.n)?;
            let g = verified(&q, example_gde_data(params.n, &m)?)?;
            let mut e = entry(q);
            e.gde = Some(g);
            Ok(e)
        }
        "example_gde" => {
            let base = catalog_get("example_M", params)?;
            extension_entry(name, params, base)
        }
        "gde_abelian12" => {
            let q = abelian(1, 2)?;
            let g = verified(&q, abelian12_gde_data())?;
            let base = CatalogEntry {
                name: "abelian".into(),
                params: CatalogParams::abelian(1, 2),
                algebra: q,
                gde: Some(g),
                base: None,
            };
            extension_entry(name, params, base)
        }
        other => Err(Error::precondition(format!(
            "unknown catalog name '{other}' (known: {})",
            CATALOG_NAMES.join(", ")
        ))),
    }
}

fn extension_entry(name: &str, params: &CatalogParams, base: CatalogEntry) -> Result<CatalogEntry> {
    let g = base.gde.clone().expect("extension bases carry data");
    let (k, _) = generalized_double_extension(&base.algebra, &g)?;
    let k = QuadraticAlgebra::new(k.algebra.with_name(name), k.form)?;
    Ok(CatalogEntry {
        name: name.to_string(),
        params: params.clone(),
        algebra: k,
        gde: None,
        base: Some(Box::new(base)),
    })
}

fn verified(q: &QuadraticAlgebra, mut g: GdeData) -> Result<GdeData> {
    let report = verify_gde_data(q, &g)?;
    if let Some(f) = report.first_failure() {
        return Err(Error::validation(f.name.clone(), f.clone()));
    }
    g.verified = true;
    Ok(g)
}

fn structure(name: &str, space: SuperSpace, products: &[(usize, usize, usize, i64)]) -> Result<SuperAlgebra> {
    SuperAlgebra::new(name, space, products.iter().map(|&(i, j, k, c)| ((i, j, k), int(c))))
}

/// Adds the mirrored entry `b_j b_i = −(−1)^{ij} b_i b_j` for each listed product.
fn skew_completed(name: &str, space: SuperSpace, products: &[(usize, usize, usize, i64)]) -> Result<SuperAlgebra> {
    let mut all = Vec::new();
    for &(i, j, k, c) in products {
        all.push((i, j, k, c));
        if i != j {
            let s = if space.p(i) * space.p(j) == 1 { 1 } else { -1 };
            all.push((j, i, k, s * c));
        }
    }
    structure(name, space, &all)
}

fn form(n: usize, entries: &[(usize, usize, i64)]) -> Result<BilinearForm> {
    BilinearForm::from_entries(n, entries.iter().map(|&(i, j, v)| (i, j, int(v))))
}

pub fn one_dim_lie() -> Result<QuadraticAlgebra> {
    QuadraticAlgebra::new(
        SuperAlgebra::abelian("one_dim_lie", SuperSpace::new(1, 0)),
        form(1, &[(0, 0, 1)])?,
    )
}

/// Abelian `(p|q)` with the identity on the even block and hyperbolic odd pairs.
pub fn abelian(p: usize, q: usize) -> Result<QuadraticAlgebra> {
    if q % 2 == 1 {
        return Err(Error::precondition("odd dimension of an abelian quadratic algebra must be even"));
    }
    let mut g = Vec::new();
    for i in 0..p {
        g.push((i, i, 1));
    }
    for k in 0..q / 2 {
        g.push((p + 2 * k, p + 2 * k + 1, 1));
        g.push((p + 2 * k + 1, p + 2 * k, -1));
    }
    QuadraticAlgebra::new(SuperAlgebra::abelian("abelian", SuperSpace::new(p, q)), form(p + q, &g)?)
}

/// Basis `h, e, f` with the trace form.
pub fn sl2() -> Result<QuadraticAlgebra> {
    let a = skew_completed("sl2", SuperSpace::new(3, 0), &[(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)])?;
    QuadraticAlgebra::new(a, form(3, &[(0, 0, 2), (1, 2, 1), (2, 1, 1)])?)
}

/// Oriented Fano lines: `e_i e_j = e_k` for each cyclic rotation of a listed triple.
pub const FANO_TRIPLES: [(usize, usize, usize); 7] =
    [(1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 6, 5)];

/// Imaginary octonions under the commutator, halved: the seven-dimensional
/// cross product. Simple Malcev, not Lie. Form: identity.
pub fn m7() -> Result<QuadraticAlgebra> {
    let mut prods = Vec::new();
    for &(i, j, k) in &FANO_TRIPLES {
        let (i, j, k) = (i - 1, j - 1, k - 1);
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            prods.push((a, b, c, 1));
        }
    }
    let a = skew_completed("m7", SuperSpace::new(7, 0), &prods)?;
    let g: Vec<(usize, usize, i64)> = (0..7).map(|i| (i, i, 1)).collect();
    QuadraticAlgebra::new(a, form(7, &g)?)
}

/// Scalar `c` with `tr(R_x R_y) = c B(x, y)` on [`m7`].
pub const M7_TRACE_SCALAR: i64 = -6;

/// `osp(1|2)`: even `h, e, f`, odd `x, y`.
pub fn osp12() -> Result<QuadraticAlgebra> {
    let a = skew_completed(
        "osp12",
        SuperSpace::new(3, 2),
        &[
            (0, 1, 1, 2),
            (0, 2, 2, -2),
            (1, 2, 0, 1),
            (0, 3, 3, 1),
            (0, 4, 4, -1),
            (1, 4, 3, 1),
            (2, 3, 4, 1),
            (3, 3, 1, 2),
            (4, 4, 2, -2),
            (3, 4, 0, -1),
        ],
    )?;
    QuadraticAlgebra::new(a, form(5, &[(0, 0, 2), (1, 2, 1), (2, 1, 1), (3, 4, -2), (4, 3, 2)])?)
}

/// Abelian `(0|2)` with `B(b1, b0) = 1`: the extension of the zero algebra by trivial data.
pub fn odd_hyperbolic() -> Result<QuadraticAlgebra> {
    QuadraticAlgebra::new(
        SuperAlgebra::abelian("odd_hyperbolic", SuperSpace::new(0, 2)),
        form(2, &[(0, 1, -1), (1, 0, 1)])?,
    )
}

pub fn even_hyperbolic() -> Result<QuadraticAlgebra> {
    QuadraticAlgebra::new(
        SuperAlgebra::abelian("even_hyperbolic", SuperSpace::new(2, 0)),
        form(2, &[(0, 1, 1), (1, 0, 1)])?,
    )
}

/// Index helpers for the example family: `a`, then `v_1..v_n`, then `y_1..y_n`.
pub fn example_index_a() -> usize {
    0
}

pub fn example_index_v(i: usize) -> usize {
    1 + i
}

pub fn example_index_y(n: usize, i: usize) -> usize {
    1 + n + i
}

fn example_products(n: usize) -> Result<SuperAlgebra> {
    let mut prods = Vec::new();
    for i in 0..n {
        let (v, y) = (example_index_v(i), example_index_y(n, i));
        prods.push((0, v, y, 1));
        prods.push((v, v, 0, 1));
    }
    skew_completed("example_M", SuperSpace::new(1, 2 * n), &prods)
}

/// The example form exactly as written: `B(a,a) = 1`, `B(y_i, v_j) = δ_ij = −B(v_j, y_i)`.
pub fn example_m_printed_form(n: usize) -> Result<BilinearForm> {
    let mut g = vec![(0, 0, 1)];
    for i in 0..n {
        g.push((example_index_y(n, i), example_index_v(i), 1));
        g.push((example_index_v(i), example_index_y(n, i), -1));
    }
    form(1 + 2 * n, &g)
}

/// The example algebra with the negated form, the sign choice under which the
/// stated brackets of its extension can all hold at once.
pub fn example_m(n: usize) -> Result<QuadraticAlgebra> {
    let printed = example_m_printed_form(n)?;
    let g = printed.gram().scale(&int(-1));
    QuadraticAlgebra::new(example_products(n)?, BilinearForm::new(g)?)
}

fn example_operator(n: usize, m: &[i64], sign_a: i64) -> Result<OperatorMap> {
    let s = SuperSpace::new(1, 2 * n);
    let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
    for (i, &mi) in m.iter().enumerate() {
        entries.push((example_index_y(n, i), 0, int(sign_a * mi)));
        entries.push((0, example_index_v(i), int(mi)));
    }
    OperatorMap::from_entries(s, Parity::Odd, entries)
}

/// Corrected data: `D(a) = −Σ m_i y_i`, `D(v_i) = m_i a`, `D(y_i) = 0`, `A₀ = a`.
pub fn example_gde_data(n: usize, m: &[i64]) -> Result<GdeData> {
    GdeData::new(SuperSpace::new(1, 2 * n), example_operator(n, m, -1)?, Element::basis(1 + 2 * n, 0))
}

/// The data as written: `D(a) = Σ m_i y_i`, `D(v_i) = m_i a`. Fails skew-supersymmetry.
pub fn example_gde_data_as_printed(n: usize, m: &[i64]) -> Result<GdeData> {
    GdeData::new(SuperSpace::new(1, 2 * n), example_operator(n, m, 1)?, Element::basis(1 + 2 * n, 0))
}

/// On abelian `(1|2)` with basis `u, w, z`: `D(u) = w`, `D(z) = −u`, `D(w) = 0`, `A₀ = u`.
pub fn abelian12_gde_data() -> GdeData {
    let s = SuperSpace::new(1, 2);
    let d = OperatorMap::from_entries(s, Parity::Odd, [(1, 0, int(1)), (0, 2, int(-1))]).expect("odd");
    GdeData::new(s, d, Element::basis(3, 0)).expect("valid shape")
}

/// Every catalog entry with default parameters plus the example family for n = 1, 2, 3.
pub fn all_entries() -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for name in CATALOG_NAMES {
        match name {
            "example_M" | "example_gde" => {
                for (n, m) in [(1, vec![1]), (2, vec![1, 1]), (2, vec![1, 2]), (3, vec![2, 1, 2])] {
                    out.push(catalog_get(name, &CatalogParams::example(n, &m))?);
                }
            }
            _ => out.push(catalog_get(name, &CatalogParams::default())?),
        }
    }
    Ok(out)
}

/// Permutation matrix whose column `i` is basis vector `perm[i]`.
pub fn permutation_matrix(perm: &[usize]) -> Matrix {
    let n = perm.len();
    let mut m = Matrix::zeros(n, n);
    for (c, &r) in perm.iter().enumerate() {
        m[(r, c)] = crate::scalar::one();
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::check_jacobi;
    use crate::quadratic::check_form;

    #[test]
    fn every_entry_builds() {
        let all = all_entries().unwrap();
        assert_eq!(all.len(), CATALOG_NAMES.len() + 6);
        for e in &all {
            assert!(e.algebra.validated, "{}", e.name);
        }
    }

    #[test]
    fn example_dimensions() {
        let e = catalog_get("example_M", &CatalogParams::example(2, &[1, 1])).unwrap();
        assert_eq!(e.algebra.space(), SuperSpace::new(1, 4));
        let k = catalog_get("example_gde", &CatalogParams::example(2, &[1, 1])).unwrap();
        assert_eq!(k.algebra.space(), SuperSpace::new(1, 6));
    }

    #[test]
    fn printed_example_form_is_also_invariant() {
        let q = example_m(2).unwrap();
        assert!(check_form(&q.algebra, &example_m_printed_form(2).unwrap()).unwrap().passed());
    }

    #[test]
    fn zero_multiplier_is_rejected() {
        let err = catalog_get("example_M", &CatalogParams::example(2, &[1, 0])).unwrap_err();
        assert_eq!(err.exit_code(), 4);
        assert_eq!(catalog_get("nope", &CatalogParams::default()).unwrap_err().exit_code(), 4);
    }

    #[test]
    fn lie_status() {
        assert!(check_jacobi(&sl2().unwrap().algebra).passed);
        assert!(check_jacobi(&osp12().unwrap().algebra).passed);
        assert!(!check_jacobi(&m7().unwrap().algebra).passed);
    }

    #[test]
    fn m7_trace_form_is_a_multiple_of_the_identity() {
        let q = m7().unwrap();
        let t = crate::ideals::trace_form(&q.algebra);
        assert_eq!(t, q.form.gram().scale(&int(M7_TRACE_SCALAR)));
    }
}

