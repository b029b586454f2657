//! Canonical text documents for algebras, operators, extension data and
//! decomposition trees.
//!
//! Algebra documents are JSON with one sparse entry per line, entries sorted,
//! scalars as lowest-terms `num/den` strings. Emitting a parsed canonical
//! document gives back the same bytes.

use std::fmt::Write as _;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::algebra::{Element, Parity, SuperAlgebra, SuperSpace};
use crate::decompose::{Classification, DecompositionTree, Irreducibility, TreeNode, ULabel};
use crate::error::{Error, Result};
use crate::extensions::GdeData;
use crate::linalg::Matrix;
use crate::operators::OperatorMap;
use crate::quadratic::{BilinearForm, Completeness, QuadraticAlgebra};
use crate::scalar::{self, to_text, Scalar};

pub const FORMAT_VERSION: u32 = 1;

/// An algebra with the optional blocks a document may carry.
#[derive(Debug, Clone)]
pub struct Document {
    pub algebra: QuadraticAlgebra,
    pub operator: Option<OperatorMap>,
    pub gde: Option<GdeData>,
    /// Free-form provenance written by `reduce`; kept verbatim.
    pub witness: Option<Value>,
}

impl Document {
    pub fn new(algebra: QuadraticAlgebra) -> Self {
        Self {
            algebra,
            operator: None,
            gde: None,
            witness: None,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    format_version: u32,
    name: String,
    even_dim: usize,
    odd_dim: usize,
    constants: Vec<(usize, usize, usize, String)>,
    gram: Vec<(usize, usize, String)>,
    #[serde(default)]
    operator: Option<RawOperator>,
    #[serde(default)]
    gde: Option<RawGde>,
    #[serde(default)]
    witness: Option<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOperator {
    parity: String,
    entries: Vec<(usize, usize, String)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGde {
    d: Vec<(usize, usize, String)>,
    a0: Vec<(usize, String)>,
}

fn parse_err(msg: impl std::fmt::Display) -> Error {
    Error::Parse(msg.to_string())
}

fn scalar_of(text: &str) -> Result<Scalar> {
    scalar::parse(text).map_err(parse_err)
}

fn check_index(n: usize, idx: &[usize], what: &str) -> Result<()> {
    match idx.iter().find(|&&i| i >= n) {
        Some(i) => Err(parse_err(format!("{what} index {i} out of range for dimension {n}"))),
        None => Ok(()),
    }
}

fn parity_of(text: &str) -> Result<Parity> {
    match text {
        "even" => Ok(Parity::Even),
        "odd" => Ok(Parity::Odd),
        other => Err(parse_err(format!("parity must be \"even\" or \"odd\", got {other:?}"))),
    }
}

fn unique<K: Ord + Copy>(keys: impl Iterator<Item = K>, what: &str) -> Result<()> {
    let mut seen = std::collections::BTreeSet::new();
    for k in keys {
        if !seen.insert(k) {
            return Err(parse_err(format!("duplicate {what} entry")));
        }
    }
    Ok(())
}

fn matrix_entries(n: usize, entries: &[(usize, usize, String)], what: &str) -> Result<Matrix> {
    unique(entries.iter().map(|(r, c, _)| (*r, *c)), what)?;
    let mut m = Matrix::zeros(n, n);
    for (r, c, v) in entries {
        check_index(n, &[*r, *c], what)?;
        m[(*r, *c)] = scalar_of(v)?;
    }
    Ok(m)
}

fn from_raw(raw: RawDocument) -> Result<Document> {
    if raw.format_version != FORMAT_VERSION {
        return Err(parse_err(format!("unsupported format_version {}", raw.format_version)));
    }
    let space = SuperSpace::new(raw.even_dim, raw.odd_dim);
    let n = space.dim();
    unique(raw.constants.iter().map(|(i, j, k, _)| (*i, *j, *k)), "constants")?;
    let mut entries = Vec::with_capacity(raw.constants.len());
    for (i, j, k, v) in &raw.constants {
        check_index(n, &[*i, *j, *k], "constants")?;
        entries.push(((*i, *j, *k), scalar_of(v)?));
    }
    let gram = matrix_entries(n, &raw.gram, "gram")?;
    if let Some((i, j, _)) = gram.nonzero_entries().find(|(i, j, _)| space.p(*i) != space.p(*j)) {
        return Err(Error::Grading(format!(
            "evenness violated: gram entry ({i}, {j}) pairs an even and an odd basis vector"
        )));
    }
    let algebra = SuperAlgebra::new(raw.name, space, entries)?;
    let form = BilinearForm::new(gram)?;
    let operator = match raw.operator {
        None => None,
        Some(op) => {
            let m = matrix_entries(n, &op.entries, "operator")?;
            Some(OperatorMap::new(space, m, parity_of(&op.parity)?)?)
        }
    };
    let gde = match raw.gde {
        None => None,
        Some(g) => {
            let d = OperatorMap::new(space, matrix_entries(n, &g.d, "gde.d")?, Parity::Odd)?;
            unique(g.a0.iter().map(|(i, _)| *i), "gde.a0")?;
            let mut a0 = Element::zeros(n);
            for (i, v) in &g.a0 {
                check_index(n, &[*i], "gde.a0")?;
                a0[*i] = scalar_of(v)?;
            }
            Some(GdeData::new(space, d, a0)?)
        }
    };
    Ok(Document {
        algebra: QuadraticAlgebra::new_unchecked(algebra, form),
        operator,
        gde,
        witness: raw.witness,
    })
}

/// Parses without running the algebra checks (`validated` is false).
/// Syntax and shape problems are parse errors; grading problems are reported as such.
pub fn parse_document_unchecked(text: &str) -> Result<Document> {
    let raw: RawDocument = serde_json::from_str(text).map_err(parse_err)?;
    from_raw(raw)
}

/// Parses and validates: the result is a quadratic Malcev superalgebra or an
/// error naming the failing check.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut doc = parse_document_unchecked(text)?;
    let q = doc.algebra;
    doc.algebra = QuadraticAlgebra::new(q.algebra, q.form)?;
    Ok(doc)
}

fn document_from_value(v: &Value) -> Result<Document> {
    let raw: RawDocument = serde_json::from_value(v.clone()).map_err(parse_err)?;
    from_raw(raw)
}

fn q(s: &Scalar) -> String {
    serde_json::to_string(&to_text(s)).expect("string")
}

fn sparse_matrix(m: &Matrix) -> Vec<String> {
    m.nonzero_entries().map(|(r, c, v)| format!("[{r}, {c}, {}]", q(v))).collect()
}

fn push_list(out: &mut String, indent: &str, key: &str, items: &[String], last: bool) {
    let comma = if last { "" } else { "," };
    if items.is_empty() {
        let _ = writeln!(out, "{indent}\"{key}\": []{comma}");
        return;
    }
    let _ = writeln!(out, "{indent}\"{key}\": [");
    for (i, it) in items.iter().enumerate() {
        let sep = if i + 1 == items.len() { "" } else { "," };
        let _ = writeln!(out, "{indent}  {it}{sep}");
    }
    let _ = writeln!(out, "{indent}]{comma}");
}

/// Canonical text of a document.
pub fn emit_document(doc: &Document) -> String {
    let a = &doc.algebra.algebra;
    let s = a.space();
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"format_version\": {FORMAT_VERSION},");
    let _ = writeln!(out, "  \"name\": {},", serde_json::to_string(a.name()).expect("string"));
    let _ = writeln!(out, "  \"even_dim\": {},", s.even);
    let _ = writeln!(out, "  \"odd_dim\": {},", s.odd);
    let constants: Vec<String> = a
        .constants()
        .map(|((i, j, k), v)| format!("[{i}, {j}, {k}, {}]", q(v)))
        .collect();
    let trailing = doc.operator.is_none() && doc.gde.is_none() && doc.witness.is_none();
    push_list(&mut out, "  ", "constants", &constants, false);
    push_list(&mut out, "  ", "gram", &sparse_matrix(doc.algebra.form.gram()), trailing);
    if let Some(op) = &doc.operator {
        let last = doc.gde.is_none() && doc.witness.is_none();
        out.push_str("  \"operator\": {\n");
        let _ = writeln!(out, "    \"parity\": \"{}\",", op.parity().as_str());
        push_list(&mut out, "    ", "entries", &sparse_matrix(op.matrix()), true);
        out.push_str(if last { "  }\n" } else { "  },\n" });
    }
    if let Some(g) = &doc.gde {
        let last = doc.witness.is_none();
        out.push_str("  \"gde\": {\n");
        push_list(&mut out, "    ", "d", &sparse_matrix(g.d.matrix()), false);
        let a0: Vec<String> = g.a0.support().map(|(i, v)| format!("[{i}, {}]", q(v))).collect();
        push_list(&mut out, "    ", "a0", &a0, true);
        out.push_str(if last { "  }\n" } else { "  },\n" });
    }
    if let Some(w) = &doc.witness {
        let _ = writeln!(out, "  \"witness\": {}", serde_json::to_string(w).expect("json"));
    }
    out.push_str("}\n");
    out
}

pub fn emit_algebra(q: &QuadraticAlgebra) -> String {
    emit_document(&Document::new(q.clone()))
}

/// Sparse `[row, col, "v"]` list of a matrix, as a JSON value.
pub fn matrix_value(m: &Matrix) -> Value {
    Value::Array(
        m.nonzero_entries()
            .map(|(r, c, v)| json!([r, c, to_text(v)]))
            .collect(),
    )
}

pub fn vector_value(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(to_text(x))).collect())
}

fn matrix_from_value(n: usize, v: &Value, what: &str) -> Result<Matrix> {
    let entries: Vec<(usize, usize, String)> = serde_json::from_value(v.clone()).map_err(parse_err)?;
    matrix_entries(n, &entries, what)
}

fn document_value(q: &QuadraticAlgebra) -> Value {
    serde_json::from_str(&emit_algebra(q)).expect("emitted documents are valid JSON")
}

fn gde_value(g: &GdeData) -> Value {
    json!({
        "d": matrix_value(g.d.matrix()),
        "a0": Value::Array(g.a0.support().map(|(i, v)| json!([i, to_text(v)])).collect()),
    })
}

fn gde_from_value(space: SuperSpace, v: &Value) -> Result<GdeData> {
    let raw: RawGde = serde_json::from_value(v.clone()).map_err(parse_err)?;
    let n = space.dim();
    let d = OperatorMap::new(space, matrix_entries(n, &raw.d, "gde.d")?, Parity::Odd)?;
    let mut a0 = Element::zeros(n);
    for (i, val) in &raw.a0 {
        check_index(n, &[*i], "gde.a0")?;
        a0[*i] = scalar_of(val)?;
    }
    GdeData::new(space, d, a0)
}

/// Nested JSON for a decomposition tree. Every node embeds the full document
/// of the algebra it describes.
pub fn tree_to_value(t: &DecompositionTree) -> Value {
    let algebra = document_value(&t.algebra);
    match &t.node {
        TreeNode::Leaf(c) => json!({
            "kind": "leaf",
            "label": c.label.as_str(),
            "conclusive": c.conclusive,
            "certificate": c.certificate,
            "algebra": algebra,
        }),
        TreeNode::OddGde {
            child,
            gde,
            basis,
            irreducibility,
        } => json!({
            "kind": "odd_gde",
            "irreducibility": irreducibility.as_str(),
            "gde": gde_value(gde),
            "basis": matrix_value(basis),
            "algebra": algebra,
            "child": tree_to_value(child),
        }),
        TreeNode::EvenDe {
            child,
            operator,
            basis,
            irreducibility,
        } => json!({
            "kind": "even_de",
            "irreducibility": irreducibility.as_str(),
            "operator": matrix_value(operator.matrix()),
            "basis": matrix_value(basis),
            "algebra": algebra,
            "child": tree_to_value(child),
        }),
        TreeNode::Sum {
            children,
            basis,
            completeness,
        } => json!({
            "kind": "sum",
            "completeness": completeness.as_str(),
            "basis": matrix_value(basis),
            "algebra": algebra,
            "children": children.iter().map(tree_to_value).collect::<Vec<_>>(),
        }),
    }
}

pub fn emit_tree(t: &DecompositionTree) -> String {
    render_json(&tree_to_value(t))
}

/// Indented JSON in which arrays of scalars stay on one line. Object keys come
/// out sorted, so the text is deterministic.
pub fn render_json(v: &Value) -> String {
    fn flat(v: &Value) -> bool {
        !matches!(v, Value::Array(_) | Value::Object(_))
    }
    fn go(v: &Value, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent + 1);
        match v {
            Value::Array(xs) if xs.is_empty() => out.push_str("[]"),
            Value::Array(xs) if xs.iter().all(flat) => {
                let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                let _ = write!(out, "[{}]", parts.join(", "));
            }
            Value::Array(xs) => {
                out.push_str("[\n");
                for (i, x) in xs.iter().enumerate() {
                    out.push_str(&pad);
                    go(x, indent + 1, out);
                    out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
                }
                let _ = write!(out, "{}]", "  ".repeat(indent));
            }
            Value::Object(m) if m.is_empty() => out.push_str("{}"),
            Value::Object(m) => {
                out.push_str("{\n");
                for (i, (k, x)) in m.iter().enumerate() {
                    let _ = write!(out, "{pad}{}: ", Value::String(k.clone()));
                    go(x, indent + 1, out);
                    out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
                }
                let _ = write!(out, "{}}}", "  ".repeat(indent));
            }
            other => out.push_str(&other.to_string()),
        }
    }
    let mut out = String::new();
    go(v, 0, &mut out);
    out.push('\n');
    out
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(format!("tree node lacks \"{key}\"")))
}

fn str_field<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    field(v, key)?
        .as_str()
        .ok_or_else(|| parse_err(format!("tree field \"{key}\" must be a string")))
}

fn irreducibility_of(text: &str) -> Result<Irreducibility> {
    [Irreducibility::Certified, Irreducibility::Heuristic, Irreducibility::Reducible]
        .into_iter()
        .find(|i| i.as_str() == text)
        .ok_or_else(|| parse_err(format!("unknown irreducibility {text:?}")))
}

/// Reads a tree written by [`emit_tree`]. Leaf algebras are validated; the
/// documents at inner nodes only supply names and dimensions.
pub fn tree_from_value(v: &Value) -> Result<DecompositionTree> {
    let doc = document_from_value(field(v, "algebra")?)?;
    let algebra = doc.algebra;
    let n = algebra.dim();
    let node = match str_field(v, "kind")? {
        "leaf" => {
            let label = str_field(v, "label")?;
            let label = ULabel::parse(label).ok_or_else(|| parse_err(format!("unknown label {label:?}")))?;
            let conclusive = field(v, "conclusive")?
                .as_bool()
                .ok_or_else(|| parse_err("\"conclusive\" must be a boolean"))?;
            let certificate = str_field(v, "certificate")?.to_string();
            let algebra = QuadraticAlgebra::new(algebra.algebra, algebra.form)?;
            return Ok(DecompositionTree {
                algebra,
                node: TreeNode::Leaf(Classification {
                    label,
                    conclusive,
                    certificate,
                }),
            });
        }
        "odd_gde" => {
            let child = tree_from_value(field(v, "child")?)?;
            let gde = gde_from_value(child.algebra.space(), field(v, "gde")?)?;
            TreeNode::OddGde {
                gde,
                basis: matrix_from_value(n, field(v, "basis")?, "basis")?,
                irreducibility: irreducibility_of(str_field(v, "irreducibility")?)?,
                child: Box::new(child),
            }
        }
        "even_de" => {
            let child = tree_from_value(field(v, "child")?)?;
            let cs = child.algebra.space();
            let m = matrix_from_value(cs.dim(), field(v, "operator")?, "operator")?;
            TreeNode::EvenDe {
                operator: OperatorMap::new(cs, m, Parity::Even)?,
                basis: matrix_from_value(n, field(v, "basis")?, "basis")?,
                irreducibility: irreducibility_of(str_field(v, "irreducibility")?)?,
                child: Box::new(child),
            }
        }
        "sum" => {
            let children = field(v, "children")?
                .as_array()
                .ok_or_else(|| parse_err("\"children\" must be an array"))?
                .iter()
                .map(tree_from_value)
                .collect::<Result<Vec<_>>>()?;
            let completeness = match str_field(v, "completeness")? {
                "exhaustive" => Completeness::Exhaustive,
                "heuristic" => Completeness::Heuristic,
                other => return Err(parse_err(format!("unknown completeness {other:?}"))),
            };
            TreeNode::Sum {
                children,
                basis: matrix_from_value(n, field(v, "basis")?, "basis")?,
                completeness,
            }
        }
        other => return Err(parse_err(format!("unknown node kind {other:?}"))),
    };
    Ok(DecompositionTree { algebra, node })
}

pub fn parse_tree(text: &str) -> Result<DecompositionTree> {
    let v: Value = serde_json::from_str(text).map_err(parse_err)?;
    tree_from_value(&v)
}
