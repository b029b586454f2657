//! Command-line front end. Kept in the library so tests can drive it in-process.

use std::io::Read;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebra::Parity;
use crate::catalog::{catalog_get, CatalogParams};
use crate::decompose::{inductive_decompose, rebuild, reduce_even, reduce_odd};
use crate::error::{Error, Result};
use crate::extensions::{double_extension_even, generalized_double_extension, ExtensionWitness};
use crate::identities::{check_jacobi, CheckReport};
use crate::ideals::center;
use crate::io::{emit_document, emit_tree, matrix_value, parse_document, parse_document_unchecked, parse_tree, render_json, vector_value, Document};
use crate::operators::{check_malcev_operator, check_skew_supersymmetric};
use crate::quadratic::validate;

/// Environment variable selecting report verbosity; `summary` drops witnesses.
pub const VERBOSITY_VAR: &str = "MALCEV_VERBOSITY";

#[derive(Parser, Debug)]
#[command(name = "malcev", version, about = "Exact checks and constructions for quadratic Malcev superalgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run all axiom checks on a document.
    Check { file: String },
    /// Print a basis of the center.
    Center { file: String },
    /// Check the document's operator block (Malcev operator, skew-supersymmetric).
    OperatorCheck { file: String },
    /// Generalized double extension by the odd line, driven by the gde block.
    ExtendOdd { file: String },
    /// Double extension by the even line, driven by an even operator block.
    ExtendEven { file: String },
    /// Undo one extension along a central vector.
    Reduce {
        file: String,
        #[arg(long, conflicts_with = "odd")]
        even: bool,
        #[arg(long)]
        odd: bool,
    },
    /// Inductive decomposition, printed as a nested JSON tree.
    Decompose { file: String },
    /// Rebuild an algebra from a decomposition tree.
    Rebuild { file: String },
    /// Emit a catalog entry.
    Catalog {
        name: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        m: Vec<i64>,
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long, default_value_t = 2)]
        q: usize,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Ctx<'a> {
    stdin: &'a mut dyn Read,
    witnesses: bool,
}

impl Ctx<'_> {
    fn read(&mut self, file: &str) -> Result<String> {
        if file == "-" {
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Error::Parse(format!("reading stdin: {e}")))?;
            Ok(s)
        } else {
            std::fs::read_to_string(file).map_err(|e| Error::Parse(format!("reading {file}: {e}")))
        }
    }

    fn report(&self, r: &CheckReport) -> Value {
        r.to_json(self.witnesses)
    }
}

fn pretty(v: &Value) -> String {
    render_json(v)
}

/// Runs the CLI on `args` (including the program name) with verbosity read from the environment.
pub fn run(args: impl IntoIterator<Item = String>, stdin: &mut dyn Read) -> Outcome {
    let witnesses = std::env::var(VERBOSITY_VAR).map(|v| v != "summary").unwrap_or(true);
    run_with(args, stdin, witnesses)
}

pub fn run_with(args: impl IntoIterator<Item = String>, stdin: &mut dyn Read, witnesses: bool) -> Outcome {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let mut ctx = Ctx { stdin, witnesses };
    match dispatch(cli.command, &mut ctx) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => {
            let mut v = json!({ "error": e.to_string(), "exit_code": e.exit_code() });
            if let Error::Validation { report, .. } = &e {
                v["report"] = ctx.report(report);
            }
            Outcome {
                code: e.exit_code(),
                stdout: String::new(),
                stderr: pretty(&v),
            }
        }
    }
}

fn dispatch(cmd: Command, ctx: &mut Ctx) -> Result<(i32, String)> {
    match cmd {
        Command::Check { file } => {
            let doc = parse_document_unchecked(&ctx.read(&file)?)?;
            let q = &doc.algebra;
            let report = validate(&q.algebra, &q.form)?;
            let passed = report.passed();
            let checks: Vec<Value> = report.reports().into_iter().map(|r| ctx.report(r)).collect();
            let jacobi = check_jacobi(&q.algebra);
            let v = json!({
                "algebra": q.name(),
                "even_dim": q.space().even,
                "odd_dim": q.space().odd,
                "passed": passed,
                "checks": checks,
                "informational": { "jacobi": ctx.report(&jacobi) },
            });
            Ok((if passed { 0 } else { 3 }, pretty(&v)))
        }
        Command::Center { file } => {
            let doc = parse_document(&ctx.read(&file)?)?;
            let z = center(&doc.algebra.algebra);
            let v = json!({
                "algebra": doc.algebra.name(),
                "even_dim": z.even_dim(),
                "odd_dim": z.odd_dim(),
                "even": z.part(Parity::Even).iter().map(|e| vector_value(e)).collect::<Vec<_>>(),
                "odd": z.part(Parity::Odd).iter().map(|e| vector_value(e)).collect::<Vec<_>>(),
            });
            Ok((0, pretty(&v)))
        }
        Command::OperatorCheck { file } => {
            let doc = parse_document(&ctx.read(&file)?)?;
            let op = doc
                .operator
                .ok_or_else(|| Error::precondition("document has no operator block"))?;
            let q = &doc.algebra;
            let malcev = check_malcev_operator(&q.algebra, &op)?;
            let skew = check_skew_supersymmetric(&q.form, &op, q.space())?;
            let passed = malcev.passed && skew.passed;
            let v = json!({
                "algebra": q.name(),
                "parity": op.parity().as_str(),
                "passed": passed,
                "checks": [ctx.report(&malcev), ctx.report(&skew)],
            });
            Ok((if passed { 0 } else { 3 }, pretty(&v)))
        }
        Command::ExtendOdd { file } => {
            let doc = parse_document(&ctx.read(&file)?)?;
            let g = doc.gde.ok_or_else(|| Error::precondition("document has no gde block"))?;
            let (k, w) = generalized_double_extension(&doc.algebra, &g)?;
            let mut out = Document::new(k);
            out.witness = Some(extension_witness("odd_gde", &w));
            Ok((0, emit_document(&out)))
        }
        Command::ExtendEven { file } => {
            let doc = parse_document(&ctx.read(&file)?)?;
            let op = doc
                .operator
                .ok_or_else(|| Error::precondition("document has no operator block"))?;
            let (k, w) = double_extension_even(&doc.algebra, &op)?;
            let mut out = Document::new(k);
            out.witness = Some(extension_witness("even_de", &w));
            Ok((0, emit_document(&out)))
        }
        Command::Reduce { file, even, odd } => {
            let doc = parse_document(&ctx.read(&file)?)?;
            let q = &doc.algebra;
            let use_even = even || (!odd && center(&q.algebra).odd_dim() == 0);
            let out = if use_even {
                let r = reduce_even(q)?;
                let mut out = Document::new(r.n);
                out.operator = Some(r.operator);
                out.witness = Some(json!({
                    "kind": "even_de",
                    "basis": matrix_value(&r.basis),
                    "e": vector_value(&r.e),
                    "e_star": vector_value(&r.e_star),
                    "e_index": r.witness.e_index,
                    "e_star_index": r.witness.e_star_index,
                    "irreducibility": r.irreducibility.as_str(),
                    "checks": [ctx.report(&r.alpha_check), ctx.report(&r.phi_check)],
                }));
                out
            } else {
                let r = reduce_odd(q)?;
                let mut out = Document::new(r.n);
                out.gde = Some(r.gde);
                out.witness = Some(json!({
                    "kind": "odd_gde",
                    "basis": matrix_value(&r.basis),
                    "e": vector_value(&r.e),
                    "e_star": vector_value(&r.e_star),
                    "e_index": r.witness.e_index,
                    "e_star_index": r.witness.e_star_index,
                    "irreducibility": r.irreducibility.as_str(),
                    "checks": [
                        ctx.report(&r.alpha_check),
                        ctx.report(&r.phi_check),
                        ctx.report(&r.psi_check),
                        ctx.report(&r.gde_report.combined()),
                    ],
                }));
                out
            };
            Ok((0, emit_document(&out)))
        }
        Command::Decompose { file } => {
            let doc = parse_document(&ctx.read(&file)?)?;
            let t = inductive_decompose(&doc.algebra)?;
            let code = if t.is_inconclusive() { 5 } else { 0 };
            Ok((code, emit_tree(&t)))
        }
        Command::Rebuild { file } => {
            let t = parse_tree(&ctx.read(&file)?)?;
            let q = rebuild(&t)?;
            if !q.same_structure(&t.algebra) {
                return Err(Error::validation(
                    "rebuild",
                    CheckReport::pass("rebuild")
                        .with_note("rebuilt algebra differs from the document stored at the root"),
                ));
            }
            Ok((0, emit_document(&Document::new(q))))
        }
        Command::Catalog { name, n, m, p, q } => {
            let e = catalog_get(&name, &CatalogParams { n, m, p, q })?;
            let mut doc = Document::new(e.algebra);
            doc.gde = e.gde;
            Ok((0, emit_document(&doc)))
        }
    }
}

fn extension_witness(kind: &str, w: &ExtensionWitness) -> Value {
    json!({
        "kind": kind,
        "e_index": w.e_index,
        "e_star_index": w.e_star_index,
        "embedding": w.embedding,
    })
}
