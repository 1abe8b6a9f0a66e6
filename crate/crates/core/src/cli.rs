//! The `qdiff` command line: argument parsing, command dispatch and output.

use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::covariant::{
    curvature, curvature_basis_failure, cyclic_product_minus_one, gauge_transform, multi_curvature,
    symbolic_cyclic_connection, symbolic_pair_n2, Connection,
};
use crate::deformation::{canonical_deltas, commutator_weights, extract_projector, unit_weights};
use crate::error::{Error, Result};
use crate::graded_matrix::{Differential, GradedMatrix};
use crate::grassmann::curvature_report;
use crate::parse::parse_form;
use crate::random;
use crate::report::{Check, Report};
use crate::scalars::{q_binomial_row, CycScalar, Mode, Ring, VarPoly};
use crate::verify::{shifted_convention_counterexample, verify, VerifyParams};

#[derive(Parser, Debug)]
#[command(name = "qdiff", version, about = "Exact Z_N-graded q-differential calculus")]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Report elapsed_ms as 0 so output is byte-stable.
    #[arg(long, global = true)]
    pub stable: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the randomized identity suites.
    Verify {
        /// A single order, or an inclusive range such as 2-8 or 2..=8.
        #[arg(long, default_value = "3")]
        n: NRange,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of coordinates for form checks.
        #[arg(long, default_value_t = 2)]
        d: u32,
    },
    /// Curvature of a connection in the matrix or form realization.
    Curvature {
        #[arg(long, value_enum, default_value_t = Realization::Matrix)]
        realization: Realization,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        d: u32,
        /// Matrix realization only: `cyclic` (symbolic entries) or `random`.
        #[arg(long, value_enum, default_value_t = ConnectionSpec::Cyclic)]
        connection: ConnectionSpec,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Parse a form expression and print its normal form.
    Normalize {
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[arg(long, default_value_t = 3)]
        d: u32,
        expression: String,
    },
    /// Exact ε-expansion of a weighted cyclic combination of deformed differentials.
    Deform {
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// `sum`, `commutator`, or a comma-separated list of scalars such as `1,q,q^2`.
        #[arg(long, default_value = "commutator")]
        weights: String,
        /// Degree of the matrix acted on; all degrees when omitted.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Table of Gaussian binomials.
    Binomials {
        #[arg(long, default_value_t = 4)]
        n_max: u32,
        #[arg(long, default_value = "generic")]
        mode: ModeArg,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Realization {
    Matrix,
    Grassmann,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConnectionSpec {
    Cyclic,
    Random,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NRange(pub Vec<usize>);

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("invalid order '{t}'"));
        let (lo, hi) = match s.split_once("..=").or_else(|| s.split_once('-')) {
            Some((a, b)) => (num(a)?, num(b)?),
            None => {
                let v = num(s)?;
                (v, v)
            }
        };
        if lo < 2 || hi < lo {
            return Err(format!("order range '{s}' must satisfy 2 <= lo <= hi"));
        }
        Ok(NRange((lo..=hi).collect()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModeArg(pub Mode);

impl FromStr for ModeArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "generic" {
            return Ok(ModeArg(Mode::Generic));
        }
        let n = s
            .strip_prefix("root:")
            .and_then(|t| t.parse::<u32>().ok())
            .ok_or_else(|| format!("mode '{s}' is neither 'generic' nor 'root:N'"))?;
        if n < 2 {
            return Err("root:N needs N >= 2".into());
        }
        Ok(ModeArg(Mode::root(n)))
    }
}

/// What the binary prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code: 2 }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => Outcome {
            stdout: if cli.json { report.to_json() + "\n" } else { report.to_string() + "\n" },
            stderr: String::new(),
            code: if report.passed() { 0 } else { 1 },
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: 2,
        },
    }
}

pub fn execute(cli: &Cli) -> Result<Report> {
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Verify { n, trials, seed, d } => run_verify(n, *trials, *seed, *d),
        Command::Curvature {
            realization,
            n,
            d,
            connection,
            seed,
        } => match realization {
            Realization::Matrix => matrix_curvature(*n, *connection, *seed),
            Realization::Grassmann => grassmann_curvature(*n as u32, *d),
        }?,
        Command::Normalize { n, d, expression } => normalize(*n, *d, expression)?,
        Command::Deform { n, weights, degree } => deform(*n, weights, *degree)?,
        Command::Binomials { n_max, mode } => binomials(*n_max, mode.0),
    };
    report.elapsed_ms = if cli.stable { 0 } else { start.elapsed().as_millis() as u64 };
    Ok(report)
}

fn n_value(ns: &[usize]) -> Value {
    match ns {
        [n] => json!(n),
        _ => json!(ns),
    }
}

fn run_verify(ns: &NRange, trials: usize, seed: u64, dim: u32) -> Report {
    let mut report = Report::new("verify", n_value(&ns.0), Some(seed));
    for &n in &ns.0 {
        report.checks.extend(verify(&VerifyParams { n, dim, trials, seed }));
    }
    let shifted = shifted_convention_counterexample()
        .map(|(n, k)| format!("recurrence fails at n = {n}, k = {k}"))
        .unwrap_or_else(|| "recurrence holds".into());
    report.result = Some(json!({
        "q_integer_convention": "[k]_q = 1 + q + ... + q^(k-1)",
        "shifted_convention": shifted,
    }));
    report
}

fn matrix_curvature(n: usize, spec: ConnectionSpec, seed: u64) -> Result<Report> {
    if n < 2 {
        return Err(Error::UnsupportedN(n as u32));
    }
    let mut report = Report::new("curvature", json!(n), Some(seed));
    let mut result = serde_json::Map::new();
    match spec {
        ConnectionSpec::Cyclic => {
            let conn = symbolic_cyclic_connection(n);
            let curv = curvature(&conn);
            let expected = cyclic_product_minus_one(n);
            report.checks.push(proportional_check("proportional_to_identity", &curv.omega));
            report.checks.push(Check::from_search(
                "scalar_part_is_product_minus_one",
                (curv.scalar_part.as_ref() != Some(&expected)).then(|| format!("Omega = {}", curv.omega)),
            ));
            report.checks.push(Check::from_search(
                "reduction_on_basis",
                curvature_basis_failure(&conn, &curv).map(|(i, j)| format!("E_{i}{j}")),
            ));
            result.insert("connection".into(), json!(conn.matrix().render()));
            result.insert("omega".into(), json!(curv.omega.render()));
            result.insert("scalar_part".into(), json!(curv.scalar_part.map(|s| s.to_string())));
            if n == 2 {
                let (checks, table) = multi_curvature_table(seed);
                report.checks.extend(checks);
                result.insert("multi_curvature".into(), table);
            }
        }
        ConnectionSpec::Random => {
            let mut r = random::sub_rng(seed, "curvature");
            let conn = Connection::new(random::homogeneous(&mut r, n, 1), Differential::Q)?;
            let curv = curvature(&conn);
            report.checks.push(proportional_check("proportional_to_identity", &curv.omega));
            report.checks.push(Check::from_search(
                "reduction_on_basis",
                curvature_basis_failure(&conn, &curv).map(|(i, j)| format!("E_{i}{j}")),
            ));
            result.insert("connection".into(), json!(conn.matrix().render()));
            result.insert("omega".into(), json!(curv.omega.render()));
            result.insert("scalar_part".into(), json!(curv.scalar_part.map(|s| s.to_string())));
        }
    }
    report.result = Some(Value::Object(result));
    Ok(report)
}

fn proportional_check<R: Ring>(name: &str, omega: &GradedMatrix<R>) -> Check {
    Check::from_search(name, omega.scalar_part().is_none().then(|| format!("Omega = {omega}")))
}

/// Reference N = 2 values for the symbolic pair `A_k = [[0, a_k], [b_k, 0]]`.
fn reference_n2(idx: [usize; 2]) -> VarPoly {
    let mode = Mode::root(2);
    let v = |s: &str| VarPoly::var(mode, s);
    match idx {
        [1, 1] => v("a1").minus(&v("b2")),
        [2, 2] => v("a2").plus(&v("b2")),
        _ => v("a1")
            .plus(&v("a2"))
            .plus(&v("b1"))
            .minus(&v("b2"))
            .plus(&v("a1").times(&v("b2")))
            .plus(&v("a2").times(&v("b1"))),
    }
}

fn multi_curvature_table(seed: u64) -> (Vec<Check>, Value) {
    let conns = symbolic_pair_n2();
    let mut r = random::sub_rng(seed, "gauge");
    let gauges: Vec<GradedMatrix> = (0..3).map(|_| random::invertible_diagonal(&mut r, 2)).collect();
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    for idx in [[1, 1], [2, 2], [1, 2], [2, 1]] {
        let label = format!("Omega_{}{}", idx[0], idx[1]);
        let curv = multi_curvature(&conns, &idx).expect("two slots");
        checks.push(proportional_check(&format!("{label}/proportional_to_identity"), &curv.omega));
        let invariant = gauges.iter().find_map(|u| {
            let moved: Vec<_> = conns.iter().map(|c| gauge_transform(c, u).expect("invertible")).collect();
            let other = multi_curvature(&moved, &idx).expect("two slots").scalar_part;
            (other != curv.scalar_part).then(|| format!("U = {u}"))
        });
        checks.push(Check::from_search(format!("{label}/gauge_invariant"), invariant));
        let expected = reference_n2(idx);
        rows.push(json!({
            "entry": label,
            "computed": curv.scalar_part.as_ref().map(|s| s.to_string()),
            "reference": expected.to_string(),
            "agrees": curv.scalar_part.as_ref() == Some(&expected),
        }));
    }
    (checks, Value::Array(rows))
}

fn grassmann_curvature(n: u32, dim: u32) -> Result<Report> {
    let rep = curvature_report(n, dim)?;
    let mut report = Report::new("curvature", json!(n), None);
    report.checks.push(Check::from_search(
        "blocks_exhaust_omega",
        (!rep.exhausted).then(|| "Omega has monomials outside the listed blocks".to_string()),
    ));
    for b in &rep.blocks {
        let witness = (!b.literal_match).then(|| {
            format!(
                "'{}' does not reproduce block {}; full match: {}; linear match: {}",
                b.pattern,
                b.block,
                b.full_match.as_deref().unwrap_or("none"),
                b.linear_match.as_deref().unwrap_or("none"),
            )
        });
        report.checks.push(Check::from_search(format!("block {}", b.block), witness));
    }
    report.result = Some(serde_json::to_value(&rep).expect("report serializes"));
    Ok(report)
}

fn normalize(n: u32, dim: u32, text: &str) -> Result<Report> {
    let form = parse_form(text, n, dim)?;
    let mut report = Report::new("normalize", json!(n), None);
    report.result = Some(json!({ "input": text, "normal_form": form.to_string() }));
    Ok(report)
}

fn parse_weights(n: usize, spec: &str) -> Result<Vec<CycScalar>> {
    match spec {
        "sum" => Ok(unit_weights(n)),
        "commutator" => Ok(commutator_weights(n)),
        list => list
            .split(',')
            .map(|w| {
                let f = parse_form(w, n as u32, 1)?;
                let constant = f.terms().iter().all(|(m, c)| m.is_unit() && c.is_constant());
                if !constant {
                    return Err(Error::Parse {
                        line: 1,
                        column: 1,
                        message: format!("weight '{w}' is not a scalar"),
                    });
                }
                Ok(f.terms().values().next().map(|c| c.constant_part()).unwrap_or_else(|| CycScalar::zero(Mode::root(n as u32))))
            })
            .collect(),
    }
}

fn deform(n: usize, weights: &str, degree: Option<usize>) -> Result<Report> {
    if n < 2 {
        return Err(Error::UnsupportedN(n as u32));
    }
    let w = parse_weights(n, weights)?;
    if w.len() != n {
        return Err(Error::WrongCount { expected: n, got: w.len() });
    }
    let mut report = Report::new("deform", json!(n), None);
    let degrees: Vec<usize> = match degree {
        Some(b) if b < n => vec![b],
        Some(b) => return Err(Error::IndexOutOfRange { index: b, max: n - 1 }),
        None => (0..n).collect(),
    };
    let mut rows = Vec::new();
    for b in degrees {
        match extract_projector(n, &w, b) {
            Err(Error::ZeroCombination) => {
                rows.push(json!({ "degree": b, "expansion": [], "vanishes": true }));
            }
            Err(e) => return Err(e),
            Ok(ex) => {
                let prefix = format!("degree={b}");
                report.checks.push(flag(&format!("{prefix}/projectors_idempotent"), ex.idempotent));
                report.checks.push(flag(&format!("{prefix}/projectors_orthogonal"), ex.orthogonal));
                report.checks.push(flag(&format!("{prefix}/projectors_complete"), ex.complete));
                let mut row = serde_json::to_value(&ex).expect("extraction serializes");
                row["vanishes"] = json!(false);
                row["expansion"] = Value::Array(
                    ex.expansion
                        .iter()
                        .map(|(k, op)| json!({ "eps_power": k, "operator": op.to_string() }))
                        .collect(),
                );
                rows.push(row);
            }
        }
    }
    report.result = Some(json!({
        "deltas": canonical_deltas(n).iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "weights": w.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "degrees": rows,
    }));
    Ok(report)
}

fn flag(name: &str, ok: bool) -> Check {
    Check::from_search(name, (!ok).then(|| "property fails for the extracted family".to_string()))
}

fn binomials(n_max: u32, mode: Mode) -> Report {
    let order = mode.order();
    let mut report = Report::new("binomials", json!(order), None);
    let rows: Vec<Vec<String>> = (0..=n_max)
        .map(|n| q_binomial_row(n, mode).iter().map(|c| c.to_string()).collect())
        .collect();
    if let Some(m) = order.filter(|&m| m <= n_max) {
        let row = q_binomial_row(m, mode);
        let bad = (1..m as usize).find(|&k| !row[k].is_zero());
        report.checks.push(Check::from_search(
            format!("[{m} k]_q = 0 for 0 < k < {m}"),
            bad.map(|k| format!("[{m} {k}]_q = {}", row[k])),
        ));
    }
    report.result = Some(json!({ "mode": mode.to_string(), "rows": rows }));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("qdiff").chain(args.iter().copied()))
    }

    #[test]
    fn n_range() {
        assert_eq!("3".parse::<NRange>().unwrap().0, vec![3]);
        assert_eq!("2-4".parse::<NRange>().unwrap().0, vec![2, 3, 4]);
        assert_eq!("2..=3".parse::<NRange>().unwrap().0, vec![2, 3]);
        assert!("1".parse::<NRange>().is_err());
        assert!("5-3".parse::<NRange>().is_err());
    }

    #[test]
    fn normalize_examples() {
        let out = run_args(&["normalize", "--n", "3", "d(x1)*d(x1)*d(x1)"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("normal_form: 0"), "{}", out.stdout);
        let out = run_args(&["--json", "normalize", "--n", "3", "d(x1)*d^2(x2)"]);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["result"]["normal_form"], "q*d^2(x2)*d(x1)");
    }

    #[test]
    fn usage_and_parse_errors() {
        assert_eq!(run_args(&["verify", "--n", "x"]).code, 2);
        assert_eq!(run_args(&["frobnicate"]).code, 2);
        let out = run_args(&["normalize", "--n", "3", "--d", "2", "d(x5)"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("1:3"), "{}", out.stderr);
        assert_eq!(run_args(&["--help"]).code, 0);
    }

    #[test]
    fn binomial_table() {
        let out = run_args(&["--json", "binomials", "--n-max", "4", "--mode", "root:4"]);
        assert_eq!(out.code, 0);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["result"]["rows"][4], json!(["1", "0", "0", "0", "1"]));
        assert_eq!(v["checks"][0]["status"], "pass");
        let out = run_args(&["--json", "binomials", "--n-max", "4"]);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["result"]["rows"][4][2], "1 + q + 2*q^2 + q^3 + q^4");
    }

    #[test]
    fn deform_weights() {
        assert_eq!(parse_weights(3, "1,q,q^2").unwrap(), commutator_weights(3));
        assert!(parse_weights(3, "1,x1,q").is_err());
        let out = run_args(&["--json", "deform", "--n", "2", "--weights", "sum"]);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["result"]["degrees"][0]["vanishes"], true);
        let out = run_args(&["--json", "deform", "--n", "3", "--degree", "1"]);
        assert_eq!(out.code, 0);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["result"]["degrees"][0]["leading_order"], 2);
    }
}
