//! Command-line front end. Exit codes: 0 when every check passes, 1 when a
//! mathematical property fails, 2 on input or usage errors.

use std::ffi::OsString;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::coset::{
    check_commutativity, check_generation, check_lambda_imod_equality, dmod_failures, imod_basis, in_ideal,
    lambda_imod_offender, laplace_generation_check, laplacian_symbol, project_mod_ideal, verify_direct_sum, Verdict,
    SEMANTICS_NOTE,
};
use crate::error::{Error, Result};
use crate::expr::{eval_enveloping, eval_in_sm, eval_symmetric, parse_expr, Vocabulary};
use crate::format::{load_named, LoadedSetup};
use crate::lie::{
    check_character, check_structure, invariant_complement, is_invariant_complement, is_subalgebra, ComplementOutcome,
};
use crate::linalg::format_rational;
use crate::presets;

#[derive(Debug, Parser)]
#[command(name = "invdiff", version, about = "Invariant differential operators on homogeneous spaces G/H")]
struct Cli {
    /// Preset name or path to a setup JSON file
    #[arg(long, global = true)]
    setup: Option<String>,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the built-in presets
    Presets,
    /// Validate structure constants, subalgebra, character and complement
    Check,
    /// PBW normal form of an expression read in U(g)
    Normalize { expr: String },
    /// Symmetrization of an expression read in S(g)
    Symmetrize { expr: String },
    /// Canonical representative modulo the ideal generated by Y + chi(Y)
    Project { expr: String },
    /// Basis of I_mod(m) in one degree
    Invariants {
        #[arg(long)]
        degree: usize,
    },
    /// Search for an invariant complement to h
    Reductive,
    /// Dimension check of the direct sum decomposition up to a degree
    Decompose {
        #[arg(long)]
        degree: usize,
    },
    /// Membership of an expression (read in U(g)) in D_mod
    Dmod { expr: String },
    /// Compare lambda(I_mod) with lambda(S(m)) ∩ D_mod degree by degree
    Equality {
        #[arg(long, default_value_t = 3)]
        degree: usize,
    },
    /// Pairwise commutators of symmetrized invariants modulo the ideal
    Commutativity {
        #[arg(long, default_value_t = 4)]
        degree: usize,
    },
    /// Generation of the invariant classes by given polynomials on m
    Generation {
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long = "gen", required = true, num_args = 1..)]
        generators: Vec<String>,
    },
    /// Generation by the quadratic sum of eps_i X_i^2 over the m-basis
    Laplace {
        #[arg(long, required = true, num_args = 1.., value_delimiter = ',', allow_negative_numbers = true)]
        signature: Vec<i64>,
        #[arg(long, default_value_t = 4)]
        degree: usize,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

const CHI_NOTE: &str = "chi is nonzero: statements about operators on G/H assume it extends to a character of G";
const LAPLACE_NOTE: &str =
    "transitivity of the isotropy action is not checked; only generation of the invariant algebra is";

struct Report {
    fields: Map<String, Value>,
    notes: Vec<String>,
    pass: bool,
}

impl Report {
    fn new(command: &str, setup: &str) -> Self {
        let mut fields = Map::new();
        fields.insert("command".into(), json!(command));
        fields.insert("setup".into(), json!(setup));
        Self { fields, notes: Vec::new(), pass: true }
    }

    fn set(&mut self, key: &str, value: impl Serialize) {
        self.fields.insert(key.into(), serde_json::to_value(value).expect("serializable report field"));
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn finish(mut self, as_json: bool) -> (i32, String) {
        self.fields.insert("status".into(), json!(if self.pass { "pass" } else { "fail" }));
        if !self.notes.is_empty() {
            self.fields.insert("notes".into(), json!(self.notes));
        }
        let code = if self.pass { 0 } else { 1 };
        if as_json {
            let text = serde_json::to_string_pretty(&Value::Object(self.fields)).expect("json");
            return (code, text + "\n");
        }
        let mut out = String::new();
        for (k, v) in &self.fields {
            render_text(&mut out, 0, k, v);
        }
        (code, out)
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Object(m) => m.iter().map(|(k, x)| format!("{k}={}", inline(x))).collect::<Vec<_>>().join(" "),
        Value::Array(a) => format!("[{}]", a.iter().map(inline).collect::<Vec<_>>().join(", ")),
        other => scalar(other),
    }
}

fn render_text(out: &mut String, indent: usize, key: &str, v: &Value) {
    let pad = " ".repeat(indent);
    match v {
        Value::Array(items) if items.is_empty() => out.push_str(&format!("{pad}{key}: (none)\n")),
        Value::Array(items) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for item in items {
                out.push_str(&format!("{pad}  - {}\n", inline(item)));
            }
        }
        Value::Object(m) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, x) in m {
                render_text(out, indent + 2, k, x);
            }
        }
        other => out.push_str(&format!("{pad}{key}: {}\n", scalar(other))),
    }
}

fn invariance_notes(report: &mut Report, loaded: &LoadedSetup) {
    let reps = if loaded.rep_labels.is_empty() { "none".to_string() } else { loaded.rep_labels.join(", ") };
    report.note(format!("{SEMANTICS_NOTE}; representatives applied: {reps}"));
    if !loaded.setup.chi().is_trivial() {
        report.note(CHI_NOTE);
    }
}

fn verdict_report(report: &mut Report, v: Verdict) {
    report.set("verdict", v);
    report.pass = v.passed();
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    if let Command::Presets = cli.command {
        let mut report = Report::new("presets", "-");
        report.set("presets", presets::NAMES);
        return Ok(report.finish(cli.json));
    }
    let source =
        cli.setup.as_deref().ok_or_else(|| Error::Format("no setup given (use --setup <preset|path>)".into()))?;
    let loaded = load_named(source)?;
    let s = &loaded.setup;
    let alg = s.algebra();
    let vocab = Vocabulary::from_setup(s)?;
    let adapted = s.adapted_names();
    let m_names = s.m_names();
    let mut report = Report::new(command_name(&cli.command), &loaded.name);

    match &cli.command {
        Command::Presets => unreachable!(),
        Command::Check => {
            report.set("description", &loaded.description);
            report.set("dim g", s.n());
            report.set("dim m", s.r());
            report.set("basis", alg.names());
            report.set("adapted order", adapted);
            let show = |sub: &crate::lie::Subspace| -> Vec<String> {
                sub.vectors().iter().map(|v| alg.render_vector(v)).collect()
            };
            report.set("h", show(s.h()));
            report.set("m", show(s.m()));
            report.set("m chosen", if s.m_auto() { "auto-complement" } else { "given" });
            report.set("chi", s.chi().values.iter().map(format_rational).collect::<Vec<_>>());
            report.set("component reps", &loaded.rep_labels);
            let labels: Map<String, Value> =
                loaded.labels.iter().map(|(k, sub)| (k.clone(), json!(show(sub)))).collect();
            if !labels.is_empty() {
                report.set("labels", labels);
            }
            let jacobi = check_structure(alg).is_valid();
            let sub = is_subalgebra(alg, s.h());
            let chi = check_character(s);
            report.set("jacobi", jacobi);
            report.set("h subalgebra", sub);
            report.set("chi vanishes on [h,h]", chi);
            report.pass = jacobi && sub && chi;
        }
        Command::Normalize { expr } => {
            let e = parse_expr(expr, &vocab)?;
            report.set("input", e.to_string());
            report.set("normal form", eval_enveloping(&e, s, &vocab)?.render(adapted));
        }
        Command::Symmetrize { expr } => {
            let e = parse_expr(expr, &vocab)?;
            let p = eval_symmetric(&e, s, &vocab)?;
            report.set("input", e.to_string());
            report.set("polynomial", p.render(adapted));
            report.set("symmetrization", s.env().symmetrize(&p).render(adapted));
        }
        Command::Project { expr } => {
            let e = parse_expr(expr, &vocab)?;
            let u = eval_enveloping(&e, s, &vocab)?;
            report.set("input", e.to_string());
            report.set("normal form", u.render(adapted));
            report.set("canonical representative", project_mod_ideal(s, &u).render(adapted));
            report.set("in ideal", in_ideal(s, &u));
        }
        Command::Dmod { expr } => {
            let e = parse_expr(expr, &vocab)?;
            let u = eval_enveloping(&e, s, &vocab)?;
            let failures = dmod_failures(s, &u);
            report.set("input", e.to_string());
            report.set("normal form", u.render(adapted));
            report.set("in D_mod", failures.is_empty());
            report.set("failed conditions", &failures);
            report.pass = failures.is_empty();
            invariance_notes(&mut report, &loaded);
        }
        Command::Invariants { degree } => {
            let b = imod_basis(s, *degree);
            report.set("degree", degree);
            report.set("variables", m_names);
            report.set("dimension", b.dim());
            report.set("basis", b.polys.iter().map(|p| p.render(m_names)).collect::<Vec<_>>());
            invariance_notes(&mut report, &loaded);
        }
        Command::Reductive => {
            match invariant_complement(alg, s.h(), s.component_reps()) {
                ComplementOutcome::Invariant(w) => {
                    report.set("reductive", true);
                    report.set(
                        "invariant complement",
                        w.vectors().iter().map(|v| alg.render_vector(v)).collect::<Vec<_>>(),
                    );
                    report.set("given m invariant", is_invariant_complement(alg, s.h(), s.m()));
                }
                ComplementOutcome::Infeasible(cert) => {
                    report.set("reductive", false);
                    report.set(
                        "certificate",
                        cert.combination
                            .iter()
                            .map(|(l, w)| format!("{w} * [{} on {}]_{}", l.operator, l.on, l.coordinate))
                            .collect::<Vec<_>>(),
                    );
                    report.set("certificate residual", &cert.residual);
                    report.pass = false;
                }
            }
            invariance_notes(&mut report, &loaded);
        }
        Command::Decompose { degree } => {
            let rows: Vec<_> = (0..=*degree).map(|d| verify_direct_sum(s, d)).collect();
            report.pass = rows.iter().all(|r| r.pass);
            report.set("rows", rows);
        }
        Command::Equality { degree } => {
            lambda_imod_field(&mut report, s, *degree);
            let eq = check_lambda_imod_equality(s, *degree);
            report.set("rows", &eq.rows);
            verdict_report(&mut report, eq.verdict);
            invariance_notes(&mut report, &loaded);
        }
        Command::Commutativity { degree } => {
            lambda_imod_field(&mut report, s, *degree);
            let c = check_commutativity(s, *degree);
            report.set("pairs checked", c.pairs_checked);
            if let Some((a, b, red)) = &c.counterexample {
                report.set("counterexample", json!({"a": a, "b": b, "reduced commutator": red}));
            }
            verdict_report(&mut report, c.verdict);
            invariance_notes(&mut report, &loaded);
        }
        Command::Generation { degree, generators } => {
            let gens = generators
                .iter()
                .map(|g| eval_in_sm(&parse_expr(g, &vocab)?, s, &vocab))
                .collect::<Result<Vec<_>>>()?;
            report.set("generators", gens.iter().map(|p| p.render(m_names)).collect::<Vec<_>>());
            let g = check_generation(s, &gens, *degree)?;
            report.set("rows", &g.rows);
            verdict_report(&mut report, g.verdict);
            invariance_notes(&mut report, &loaded);
        }
        Command::Laplace { signature, degree } => {
            let g = laplace_generation_check(s, signature, *degree)?;
            report.set("generator", laplacian_symbol(s.r(), signature).render(m_names));
            report.set("rows", &g.rows);
            verdict_report(&mut report, g.verdict);
            invariance_notes(&mut report, &loaded);
            report.note(LAPLACE_NOTE);
        }
    }
    Ok(report.finish(cli.json))
}

fn lambda_imod_field(report: &mut Report, s: &crate::lie::CosetSetup, degree: usize) {
    let v = match lambda_imod_offender(s, degree) {
        None => "holds".to_string(),
        Some((d, i)) => format!("fails at degree {d}, basis element {i}"),
    };
    report.set("lambda(I_mod) in D_mod", v);
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Presets => "presets",
        Command::Check => "check",
        Command::Normalize { .. } => "normalize",
        Command::Symmetrize { .. } => "symmetrize",
        Command::Project { .. } => "project",
        Command::Invariants { .. } => "invariants",
        Command::Reductive => "reductive",
        Command::Decompose { .. } => "decompose",
        Command::Dmod { .. } => "dmod",
        Command::Equality { .. } => "equality",
        Command::Commutativity { .. } => "commutativity",
        Command::Generation { .. } => "generation",
        Command::Laplace { .. } => "laplace",
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
