//! Command-line front end: JSON input documents, analysis dispatch and report rendering.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::algebra::{derivation_algebra, inner_derivations, jacobson_radical_with, ker_phi_lie, phi_lie_image, StructureAlgebra};
use crate::certify::{certify_algebra, certify_presentation, AnalysisConfig};
use crate::error::{Error, Result};
use crate::exactmath::{Field, Scalar};
use crate::oracle::{enumerate_automorphisms, induced_jj2_matrices};
use crate::poly::parse_poly;
use crate::presentation::{normal_form, presentation_from_algebra, Presentation};

pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "fdalg", version, about = "Invariants and rationality certificates for finite-dimensional algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Override the field of the input: Q or GFp:<p>.
    #[arg(long, global = true)]
    pub field: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Height bound for rational point searches.
    #[arg(long, global = true)]
    pub height_bound: Option<u64>,
    /// Primes for finite-field scans, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub primes: Option<Vec<u64>>,
    /// Limit on exhaustive enumerations.
    #[arg(long, global = true)]
    pub max_enum: Option<u128>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full pipeline and certificate.
    Analyze { path: PathBuf },
    /// Jacobson radical and its filtration.
    Radical { path: PathBuf },
    /// Normal-form presentation of a local commutative algebra.
    Present { path: PathBuf },
    /// Derivation algebra dimensions.
    Der { path: PathBuf },
    /// Brute-force automorphism group over GF(p).
    OracleAut { path: PathBuf },
}

#[derive(Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = if e.is_unsupported() { EXIT_UNSUPPORTED } else { EXIT_SCHEMA };
        CliError { code, message: e.to_string() }
    }
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type")]
enum FieldSpec {
    Q,
    GFp { p: u64 },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum InputDocument {
    StructureConstants { field: FieldSpec, dim: usize, one: Vec<Value>, table: Vec<Vec<Vec<Value>>> },
    Presentation { field: FieldSpec, n_vars: usize, trunc_degree: usize, generators: Vec<String> },
}

/// A parsed input file.
#[derive(Clone, Debug)]
pub enum Input {
    Algebra(StructureAlgebra),
    Presentation(Presentation),
}

impl Input {
    pub fn algebra(&self) -> StructureAlgebra {
        match self {
            Input::Algebra(a) => a.clone(),
            Input::Presentation(p) => p.quotient_algebra(),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Input::Algebra(a) => a.field(),
            Input::Presentation(p) => p.field(),
        }
    }
}

fn scalar(field: Field, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => field.parse_scalar(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => field.parse_scalar(&n.to_string()),
        other => Err(Error::Schema(format!("scalar must be an integer or a \"p/q\" string, got {other}"))),
    }
}

/// Parses a JSON input document; `field` overrides the document's field.
pub fn parse_input(text: &str, field: Option<Field>) -> Result<Input> {
    let doc: InputDocument = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    let resolve = |spec: &FieldSpec| match (field, spec) {
        (Some(f), _) => Ok(f),
        (None, FieldSpec::Q) => Ok(Field::Rationals),
        (None, FieldSpec::GFp { p }) => Field::prime(*p),
    };
    match doc {
        InputDocument::StructureConstants { field: spec, dim, one, table } => {
            let f = resolve(&spec)?;
            if one.len() != dim || table.len() != dim || table.iter().any(|r| r.len() != dim || r.iter().any(|c| c.len() != dim)) {
                return Err(Error::Schema(format!("table and unit must have dimension {dim}")));
            }
            let one = one.iter().map(|v| scalar(f, v)).collect::<Result<Vec<_>>>()?;
            let table = table
                .iter()
                .map(|row| row.iter().map(|cell| cell.iter().map(|v| scalar(f, v)).collect()).collect())
                .collect::<Result<Vec<Vec<Vec<_>>>>>()?;
            Ok(Input::Algebra(StructureAlgebra::load(f, table, one)?))
        }
        InputDocument::Presentation { field: spec, n_vars, trunc_degree, generators } => {
            let f = resolve(&spec)?;
            let gens = generators.iter().map(|g| parse_poly(g, n_vars, f)).collect::<Result<Vec<_>>>()?;
            Ok(Input::Presentation(Presentation::from_ideal(f, n_vars, trunc_degree, gens)?))
        }
    }
}

/// The structure-constant input document for `a`.
pub fn structure_constants_document(a: &StructureAlgebra) -> Value {
    let field = match a.field() {
        Field::Rationals => json!({"type": "Q"}),
        Field::Prime(p) => json!({"type": "GFp", "p": p}),
    };
    let table: Vec<Vec<Vec<String>>> = a.table().iter().map(|row| row.iter().map(|c| strings(c)).collect()).collect();
    json!({"kind": "structure_constants", "field": field, "dim": a.dim(), "one": strings(a.one()), "table": table})
}

pub fn load_input(path: &Path, field: Option<Field>) -> std::result::Result<Input, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError { code: EXIT_SCHEMA, message: format!("{}: {e}", path.display()) })?;
    Ok(parse_input(&text, field)?)
}

impl Cli {
    pub fn config(&self) -> AnalysisConfig {
        let mut cfg = AnalysisConfig::default();
        if let Some(h) = self.height_bound {
            cfg.height_bound = h;
        }
        if let Some(p) = &self.primes {
            cfg.primes = p.clone();
        }
        if let Some(m) = self.max_enum {
            cfg.max_enum = m;
        }
        cfg
    }

    fn path(&self) -> &Path {
        match &self.command {
            Command::Analyze { path } | Command::Radical { path } | Command::Present { path } | Command::Der { path } | Command::OracleAut { path } => path,
        }
    }
}

/// Runs the command and returns the rendered report.
pub fn execute(cli: &Cli) -> std::result::Result<String, CliError> {
    let field = cli.field.as_deref().map(Field::parse).transpose()?;
    let input = load_input(cli.path(), field)?;
    let cfg = cli.config();
    if let Command::Analyze { .. } = cli.command {
        let cert = match &input {
            Input::Algebra(a) => certify_algebra(a, &cfg),
            Input::Presentation(p) => certify_presentation(p, &cfg),
        };
        return Ok(match cli.format {
            Format::Json => cert.to_json(),
            Format::Text => cert.to_string(),
        });
    }
    let report = match cli.command {
        Command::Radical { .. } => radical_report(&input, &cfg)?,
        Command::Present { .. } => present_report(&input, &cfg)?,
        Command::Der { .. } => der_report(&input, &cfg)?,
        Command::OracleAut { .. } => oracle_report(&input, &cfg)?,
        Command::Analyze { .. } => unreachable!(),
    };
    Ok(render(&report, cli.format))
}

fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes"),
        Format::Text => {
            let mut out = String::new();
            if let Value::Object(map) = report {
                for (k, v) in map {
                    let shown = match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    writeln!(out, "{k}: {shown}").unwrap();
                }
            }
            out
        }
    }
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn radical_report(input: &Input, cfg: &AnalysisConfig) -> Result<Value> {
    let a = input.algebra();
    let rad = jacobson_radical_with(&a, cfg.max_enum)?;
    Ok(json!({
        "dim": a.dim(),
        "dim_j": rad.dim(),
        "dim_j2": rad.j2().dim(),
        "dim_jj2": rad.jj2_dim(),
        "lowey_length": rad.lowey_length,
        "method": rad.method,
        "radical_basis": rad.radical.basis_vectors().iter().map(|v| strings(v)).collect::<Vec<_>>(),
    }))
}

pub fn present_report(input: &Input, cfg: &AnalysisConfig) -> Result<Value> {
    let p = match input {
        Input::Presentation(p) => p.clone(),
        Input::Algebra(a) => {
            let rad = jacobson_radical_with(a, cfg.max_enum)?;
            presentation_from_algebra(a, &rad)?.0
        }
    };
    let nf = normal_form(&p);
    Ok(json!({
        "n_vars": p.n_vars(),
        "lowey": p.lowey(),
        "generators": nf.generators.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "is_monomial": nf.is_monomial,
        "property_star_r": nf.property_star_r,
        "algebra_dim": p.algebra_dim(),
        "warnings": p.warnings(),
    }))
}

pub fn der_report(input: &Input, cfg: &AnalysisConfig) -> Result<Value> {
    let a = input.algebra();
    let rad = jacobson_radical_with(&a, cfg.max_enum)?;
    let der = derivation_algebra(&a);
    Ok(json!({
        "dim_der": der.dim(),
        "dim_inner_der": inner_derivations(&a).dim(),
        "dim_ker_phi_lie": ker_phi_lie(&der, &rad).dim(),
        "dim_im_phi_lie": phi_lie_image(&der, &rad).map(|im| im.dim()),
    }))
}

pub fn oracle_report(input: &Input, cfg: &AnalysisConfig) -> Result<Value> {
    if !input.field().is_finite() {
        return Err(Error::RequiresPrimeField);
    }
    let a = input.algebra();
    let g = enumerate_automorphisms(&a, cfg.max_enum)?;
    let blocks = induced_jj2_matrices(&g, &a)?;
    Ok(json!({
        "order": g.order,
        "candidates": g.candidates.to_string(),
        "axioms_verified": g.axioms_verified,
        "jj2_image_size": blocks.image_size,
        "jj2_kernel_count": blocks.kernel_count,
    }))
}

/// Entry point for the binary: prints the report or the error, returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    match execute(cli) {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            0
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_structure_constants() {
        let doc = r#"{"kind":"structure_constants","field":{"type":"Q"},"dim":2,"one":[1,0],
            "table":[[[1,0],[0,1]],[[0,1],["0","0"]]]}"#;
        let Input::Algebra(a) = parse_input(doc, None).unwrap() else { panic!() };
        assert_eq!(a.dim(), 2);
        let over5 = parse_input(doc, Some(Field::Prime(5))).unwrap();
        assert_eq!(over5.field(), Field::Prime(5));
    }

    #[test]
    fn parses_presentations() {
        let doc = r#"{"kind":"presentation","field":{"type":"GFp","p":5},"n_vars":2,"trunc_degree":3,"generators":["X1^2+X2^2"]}"#;
        let Input::Presentation(p) = parse_input(doc, None).unwrap() else { panic!() };
        assert_eq!((p.field(), p.algebra_dim()), (Field::Prime(5), 5));
    }

    #[test]
    fn schema_errors() {
        for doc in [
            "{not json",
            r#"{"kind":"presentation","field":{"type":"Q"},"n_vars":2}"#,
            r#"{"kind":"structure_constants","field":{"type":"Q"},"dim":2,"one":[1],"table":[]}"#,
            r#"{"kind":"presentation","field":{"type":"GFp","p":4},"n_vars":1,"trunc_degree":2,"generators":[]}"#,
            r#"{"kind":"structure_constants","field":{"type":"Q"},"dim":1,"one":[1.5],"table":[[[1]]]}"#,
        ] {
            let e: CliError = parse_input(doc, None).unwrap_err().into();
            assert_eq!(e.code, EXIT_SCHEMA, "{doc}");
        }
    }
}
