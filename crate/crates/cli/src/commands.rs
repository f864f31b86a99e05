//! Command bodies. Each returns the text for standard output and an exit
//! code; `main` only parses flags and prints.

use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use snarkdom::graph::{vertex_label, weight_histogram};
use snarkdom::{
    build_flower_snark, certificate, feasible_range, formula_value, Candidate, Error, ExportFormat,
    SolveResult, Solver, SolverOptions, Variant, VertexSet,
};

use crate::lp::render_lp;
use crate::report::build_report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const THREADS_ENV: &str = "SNARKDOM_THREADS";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn with_code(code: i32, stdout: String, stderr: impl Into<String>) -> Self {
        Self {
            code,
            stdout,
            stderr: stderr.into(),
        }
    }

    fn usage(err: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {err}"),
        }
    }
}

/// Library errors are all about the request (domain, range, kind), so they
/// map to the usage exit code.
fn from_error(err: Error) -> Outcome {
    Outcome::usage(err)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

fn labels(s: &VertexSet) -> Vec<String> {
    s.iter().map(vertex_label).collect()
}

/// Labels for a set witness, `{ones, twos}` for a guard function.
pub fn witness_json(c: &Candidate) -> Value {
    match c {
        Candidate::Set(s) => json!(labels(s)),
        Candidate::Guards(f) => json!({
            "ones": labels(&f.level_set(1)),
            "twos": labels(&f.level_set(2)),
        }),
    }
}

/// Worker count: the flag wins, then the environment variable.
pub fn resolve_threads(flag: Option<usize>) -> Result<Option<usize>, String> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&t| t > 0)
            .map(Some)
            .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got {v:?}")),
        _ => Ok(None),
    }
}

pub fn gen(n: usize, format: ExportFormat) -> Outcome {
    match build_flower_snark(n) {
        Ok(g) => Outcome::ok(g.export(format)),
        Err(e) => from_error(e),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveFlags {
    pub deterministic: bool,
    pub long_running: bool,
    pub prefilter: bool,
    pub threads: Option<usize>,
    pub pretty: bool,
}

impl Default for SolveFlags {
    fn default() -> Self {
        Self {
            deterministic: false,
            long_running: false,
            prefilter: true,
            threads: None,
            pretty: false,
        }
    }
}

impl SolveFlags {
    fn options(&self) -> SolverOptions {
        SolverOptions {
            prefilter: self.prefilter,
            threads: self.threads,
            long_running: self.long_running,
        }
    }
}

pub fn solve_json(r: &SolveResult, deterministic: bool) -> Value {
    json!({
        "variant": r.variant,
        "n": r.n,
        "optimum": r.optimum,
        "witness": witness_json(&r.witness),
        "proof_bound": r.proof_bound,
        "candidates_examined": r.candidates_examined,
        "elapsed_ms": if deterministic { 0 } else { r.elapsed.as_millis() as u64 },
    })
}

pub fn solve(n: usize, variant: Variant, flags: SolveFlags) -> Outcome {
    let g = match build_flower_snark(n) {
        Ok(g) => g,
        Err(e) => return from_error(e),
    };
    let result = Solver::new(&g, flags.options()).and_then(|s| s.solve(variant));
    let r = match result {
        Ok(r) => r,
        Err(e) => return from_error(e),
    };
    let body = solve_json(&r, flags.deterministic);
    let stdout = if flags.pretty {
        let w = &body["witness"];
        format!(
            "variant      {}\nn            {}\noptimum      {}\nproof_bound  {}\nexamined     {}\nelapsed_ms   {}\nwitness      {}\n",
            r.variant,
            r.n,
            r.optimum,
            r.proof_bound,
            r.candidates_examined,
            body["elapsed_ms"],
            w
        )
    } else {
        to_json(&body)
    };
    if r.verify(&g) {
        Outcome::ok(stdout)
    } else {
        Outcome::with_code(
            EXIT_MISMATCH,
            stdout,
            "error: self-check failed: the witness does not validate",
        )
    }
}

pub fn certify(n: usize, variant: Variant, pretty: bool) -> Outcome {
    let (g, cert, formula) = match build_flower_snark(n)
        .and_then(|g| Ok((certificate(variant, n)?, formula_value(variant, n)?, g)))
    {
        Ok((c, f, g)) => (g, c, f),
        Err(e) => return from_error(e),
    };
    let valid = cert.is_valid(&g);
    let size = cert.size();
    let body = json!({
        "variant": variant,
        "n": n,
        "size": size,
        "formula": formula,
        "valid": valid,
        "copies": cert.copies(),
    });
    let stdout = if pretty {
        let copies: Vec<String> = cert
            .copies()
            .iter()
            .map(|c| format!("{{{}}}", c.join("")))
            .collect();
        format!(
            "variant  {variant}\nn        {n}\nsize     {size}\nformula  {formula}\nvalid    {valid}\ncopies   {}\n",
            copies.join(" ")
        )
    } else {
        to_json(&body)
    };
    if valid && size == formula {
        Outcome::ok(stdout)
    } else {
        Outcome::with_code(
            EXIT_MISMATCH,
            stdout,
            format!(
                "error: certificate check failed (valid={valid}, size={size}, formula={formula})"
            ),
        )
    }
}

pub fn formulas(n_max: usize, with_solver: bool, flags: SolveFlags) -> Outcome {
    if n_max < 3 {
        return from_error(Error::OutOfDomain(n_max));
    }
    let report = match build_report(n_max, with_solver, flags.options()) {
        Ok(r) => r,
        Err(e) => return from_error(e),
    };
    let mut report = report;
    if flags.deterministic {
        report.elapsed_ms = 0;
    }
    let stdout = if flags.pretty {
        report.to_table()
    } else {
        to_json(&report)
    };
    if report.all_agree() {
        Outcome::ok(stdout)
    } else {
        let bad = report.rows.iter().filter(|r| !r.agree).count();
        Outcome::with_code(
            EXIT_MISMATCH,
            stdout,
            format!("error: {bad} row(s) disagree"),
        )
    }
}

pub fn export_lp(n: usize, variant: Variant, path: &Path) -> Outcome {
    let g = match build_flower_snark(n) {
        Ok(g) => g,
        Err(e) => return from_error(e),
    };
    let Some(text) = render_lp(&g, variant) else {
        return Outcome::usage(format!(
            "{variant} has no covering formulation; LP export supports domination, independent, two_domination and total"
        ));
    };
    match std::fs::write(path, text) {
        Ok(()) => Outcome::with_code(EXIT_OK, String::new(), format!("wrote {}", path.display())),
        Err(e) => Outcome::usage(format!("cannot write {}: {e}", path.display())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternRow {
    pub set: Vec<String>,
    pub copy_weights: Vec<u8>,
    pub histogram: [usize; 5],
}

pub fn patterns(
    n: usize,
    variant: Variant,
    size: usize,
    limit: Option<usize>,
    flags: SolveFlags,
) -> Outcome {
    if variant.is_guard_variant() {
        return from_error(Error::KindMismatch {
            variant,
            expected: "vertex set",
        });
    }
    let range = feasible_range(variant, flags.long_running);
    if !range.contains(&n) {
        return from_error(Error::Capacity {
            variant,
            n,
            min: *range.start(),
            max: *range.end(),
            hint: "",
        });
    }
    let g = match build_flower_snark(n) {
        Ok(g) => g,
        Err(e) => return from_error(e),
    };
    let sets = match Solver::new(&g, flags.options())
        .and_then(|s| s.enumerate_valid_sets(variant, size, limit))
    {
        Ok(s) => s,
        Err(e) => return from_error(e),
    };
    let rows: Vec<PatternRow> = sets
        .iter()
        .map(|s| {
            let copy_weights = g.copy_weights(s);
            PatternRow {
                set: labels(s),
                histogram: weight_histogram(&copy_weights),
                copy_weights,
            }
        })
        .collect();
    let stdout = if flags.pretty {
        let mut out = String::new();
        for r in &rows {
            let w: String = r
                .copy_weights
                .iter()
                .map(|d| char::from(b'0' + d))
                .collect();
            out.push_str(&format!("{w}  {:?}  {}\n", r.histogram, r.set.join(" ")));
        }
        out.push_str(&format!("{} set(s)\n", rows.len()));
        out
    } else {
        to_json(&rows)
    };
    Outcome::ok(stdout)
}
