//! The `uddpir` command line: argument parsing, the five subcommands, and
//! report assembly.
//!
//! Exit codes: 0 when every verdict passes, 1 when a verdict fails or a search
//! finds nothing within its bound, 2 on input errors. `--json` prints the
//! report document, the default `--text` prints the same numbers line by line.
//!
//! The ILP model dump (`ilp --dump-model`) is an objective line followed by one
//! line per hyperplane constraint, variables named `n_` plus the digit label of
//! their column vector. For q = 2 and demand 3,2:
//!
//! ```text
//! minimize n_10 + n_01 + n_11
//! n_10 + n_11 >= 3
//! n_10 + n_01 >= 3
//! n_01 + n_11 >= 2
//! ```
//!
//! `UDDPIR_THREADS` sets the size of the worker pool (0 or unset: one per core).

pub mod matrix_file;
pub mod report;

use std::ffi::OsString;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::{prime_power, FieldSpec, Matrix};
use crate::bounds::{ceil_u64, check_demand_inequalities, column_counts, fractional_bound, griesmer_sum};
use crate::codes::{separation_of_matrix, LinearCode};
use crate::error::Error;
use crate::ilp::IlpModel;
use crate::pir::{pir_level, verify_t_pir, DemandVector, PirCertificate, Verdict, MAX_COLUMNS};
use crate::search::{concatenation_baseline, shortest_udd_pir, shortest_uep_code, SearchStatus};

use matrix_file::{format_modulus, parse_modulus, ParseError};
use report::{error_kind, Bounds, Certificate, ErrorInfo, HyperplaneViolation, Ilp, Report, Search, SymbolWitness};

/// `analyze` also solves ILP(T) up to this many column vectors.
const ANALYZE_MAX_SPACE: u64 = 64;
const ILP_MAX_SPACE: u64 = 256;
const SEARCH_MAX_SPACE: u64 = 64;
const SEARCH_MAX_LENGTH: usize = 12;

#[derive(Parser, Debug)]
#[command(
    name = "uddpir",
    version,
    about = "Analyze, bound, and search for unequal-data-demand PIR codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full report on a generator matrix, optionally against a demand vector.
    Analyze(AnalyzeArgs),
    /// Check a demand vector against a matrix and print the recovery sets.
    Certify(CertifyArgs),
    /// Solve the column-multiplicity integer program for a demand vector.
    Ilp(IlpArgs),
    /// Griesmer sum and its fractional relaxation.
    Bound(BoundArgs),
    /// Exhaustive search for the shortest code meeting a demand vector.
    Search(SearchArgs),
}

#[derive(Args, Debug, Clone, Copy)]
struct Format {
    /// Print the JSON report.
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Print the text report (default).
    #[arg(long)]
    text: bool,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    /// Matrix file.
    matrix: PathBuf,
    /// Demands t1,...,tk, largest first.
    #[arg(long, value_delimiter = ',')]
    demand: Option<Vec<u64>>,
    /// Data position (1-based) served by each demand entry.
    #[arg(long, value_delimiter = ',', requires = "demand")]
    permute: Option<Vec<usize>>,
    #[command(flatten)]
    format: Format,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    matrix: PathBuf,
    #[arg(long, value_delimiter = ',', required = true)]
    demand: Vec<u64>,
    #[arg(long, value_delimiter = ',')]
    permute: Option<Vec<usize>>,
    #[command(flatten)]
    format: Format,
}

#[derive(Args, Debug)]
struct FieldArgs {
    /// Field order.
    #[arg(long)]
    q: u32,
    /// Modulus digits, highest degree first (built-in default for small q).
    #[arg(long)]
    modulus: Option<String>,
}

#[derive(Args, Debug)]
struct IlpArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Must equal the demand length when given.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    demand: Vec<u64>,
    /// Write the realized matrix file here.
    #[arg(long)]
    emit_matrix: Option<PathBuf>,
    /// Include the model text in the report.
    #[arg(long)]
    dump_model: bool,
    #[command(flatten)]
    format: Format,
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, value_delimiter = ',', required = true)]
    demand: Vec<u64>,
    #[command(flatten)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Pir,
    Uep,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, value_delimiter = ',', required = true)]
    demand: Vec<u64>,
    #[arg(long)]
    nmax: usize,
    #[arg(long, value_enum, default_value = "pir")]
    mode: Mode,
    /// Write the witness matrix file here instead of printing it.
    #[arg(long, alias = "emit")]
    out: Option<PathBuf>,
    #[command(flatten)]
    format: Format,
}

/// What the process should print and return.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

enum Failure {
    Lib(Error),
    Parse(String, ParseError),
    Usage(&'static str, String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn info(&self) -> ErrorInfo {
        let (kind, message, pos) = match self {
            Failure::Lib(e) => (error_kind(e), e.to_string(), None),
            Failure::Parse(_, p) => ("parse", p.message.clone(), Some((p.line, p.column))),
            Failure::Usage(kind, m) => (*kind, m.clone(), None),
            Failure::Io(m) => ("io", m.clone(), None),
        };
        ErrorInfo {
            kind: kind.to_string(),
            message,
            line: pos.map(|p| p.0),
            column: pos.map(|p| p.1),
        }
    }

    fn diagnostic(&self) -> String {
        match self {
            Failure::Parse(path, p) => format!("{path}:{p}"),
            Failure::Lib(e) => e.to_string(),
            Failure::Usage(_, m) | Failure::Io(m) => m.clone(),
        }
    }
}

/// Sizes the global worker pool from `UDDPIR_THREADS`.
pub fn configure_threads() -> Result<(), String> {
    let threads = match std::env::var("UDDPIR_THREADS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| format!("UDDPIR_THREADS must be a nonnegative integer, got `{v}`"))?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: 2,
                }
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: 0,
                }
            };
        }
    };

    let (name, format) = match &cli.command {
        Command::Analyze(a) => ("analyze", a.format),
        Command::Certify(a) => ("certify", a.format),
        Command::Ilp(a) => ("ilp", a.format),
        Command::Bound(a) => ("bound", a.format),
        Command::Search(a) => ("search", a.format),
    };
    let mut report = Report::new(name);
    let mut stderr = String::new();
    let result = match &cli.command {
        Command::Analyze(a) => analyze(&mut report, &a.matrix, a.demand.as_deref(), a.permute.as_deref(), false),
        Command::Certify(a) => analyze(&mut report, &a.matrix, Some(&a.demand), a.permute.as_deref(), true),
        Command::Ilp(a) => ilp(&mut report, a),
        Command::Bound(a) => bound(&mut report, a),
        Command::Search(a) => search(&mut report, a, &mut stderr),
    };
    let code = match result {
        Ok(code) => code,
        Err(f) => {
            stderr.push_str(&format!("uddpir: {}\n", f.diagnostic()));
            report.error = Some(f.info());
            2
        }
    };
    let stdout = if format.json {
        report.to_json()
    } else {
        report.to_text()
    };
    Outcome { stdout, stderr, code }
}

fn verdict_code(r: &Report) -> i32 {
    if r.all_pass() {
        0
    } else {
        1
    }
}

/// Writes via a sibling temporary file and a rename.
fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let io_err = |e: io::Error| Failure::Io(format!("{}: {e}", path.display()));
    let name = path
        .file_name()
        .ok_or_else(|| Failure::Io(format!("{}: not a file path", path.display())))?;
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let tmp = dir.join(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    fs::write(&tmp, contents).map_err(io_err)?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        io_err(e)
    })
}

fn field_from_flags(a: &FieldArgs) -> Result<FieldSpec, Failure> {
    let (p, m) = prime_power(a.q).ok_or(Error::NotPrimePower(a.q))?;
    let coeffs = match &a.modulus {
        Some(d) => Some(
            parse_modulus(d)
                .ok_or_else(|| Failure::Usage("malformed_modulus", format!("modulus `{d}` is not a digit string")))?,
        ),
        None => None,
    };
    Ok(FieldSpec::new(p, m, coeffs.as_deref())?)
}

fn demand_vector(values: &[u64], k: Option<usize>) -> Result<DemandVector, Failure> {
    if values.is_empty() {
        return Err(Failure::Usage("empty_demand", "demand vector is empty".into()));
    }
    if let Some(k) = k {
        if values.len() != k {
            return Err(Error::LengthMismatch {
                left: values.len(),
                right: k,
            }
            .into());
        }
    }
    Ok(DemandVector::new(values.to_vec())?)
}

/// 0-based row order from a 1-based permutation (identity when absent).
fn row_order(permute: Option<&[usize]>, k: usize) -> Result<Vec<usize>, Failure> {
    let Some(p) = permute else {
        return Ok((0..k).collect());
    };
    let mut seen = vec![false; k];
    let valid = p.len() == k
        && p.iter().all(|&i| {
            let ok = (1..=k).contains(&i) && !seen[i - 1];
            if ok {
                seen[i - 1] = true;
            }
            ok
        });
    if !valid {
        return Err(Failure::Usage(
            "invalid_permutation",
            format!("--permute must list each of 1..{k} exactly once"),
        ));
    }
    Ok(p.iter().map(|i| i - 1).collect())
}

fn space(q: u32, k: usize) -> Option<u64> {
    (q as u64).checked_pow(u32::try_from(k).ok()?)
}

fn echo_matrix(r: &mut Report, g: &Matrix) {
    let f = g.field();
    r.input.q = Some(f.q());
    r.input.modulus = (!f.is_prime_field()).then(|| format_modulus(f.modulus()));
    r.input.k = Some(g.rows());
    r.input.n = Some(g.cols());
    r.input.rows = Some(g.row_values());
}

fn echo_field(r: &mut Report, f: &FieldSpec) {
    r.input.q = Some(f.q());
    r.input.modulus = (!f.is_prime_field()).then(|| format_modulus(f.modulus()));
}

fn certificate_report(cert: &PirCertificate, t: &DemandVector, order: &[usize]) -> Certificate {
    let (failing_symbol, failing_maximum) = match cert.verdict {
        Verdict::Satisfied => (None, None),
        Verdict::Refuted { symbol, maximum } => (Some(order[symbol] + 1), Some(maximum)),
    };
    let symbols = cert
        .witnesses
        .iter()
        .enumerate()
        .map(|(i, sets)| SymbolWitness {
            symbol: order[i] + 1,
            demand: t.values()[i],
            recovery_sets: sets
                .iter()
                .map(|s| s.positions.iter().map(|p| p + 1).collect())
                .collect(),
        })
        .collect();
    Certificate {
        satisfied: cert.is_satisfied(),
        failing_symbol,
        failing_maximum,
        symbols,
    }
}

/// Verdicts of a matrix `g` (rows already in demand order) against `t`:
/// the T-PIR certificate when `certify`, then separation, the hyperplane
/// inequalities, the Griesmer floor, and the ILP optimum when it is small
/// enough to solve.
fn assess(r: &mut Report, g: &Matrix, t: &DemandVector, order: &[usize], certify: bool) -> Result<(), Failure> {
    let f = g.field();
    let n = g.cols() as u64;
    if certify {
        let cert = verify_t_pir(g, t)?;
        r.certificate = Some(certificate_report(&cert, t, order));
        r.verdict("t_pir", cert.is_satisfied());
    }
    r.verdict("separation", separation_of_matrix(g).meets(t.values()));
    let violations = check_demand_inequalities(&column_counts(g), t)?;
    r.verdict("hyperplanes", violations.is_empty());
    r.hyperplane_violations = Some(
        violations
            .iter()
            .map(|v| HyperplaneViolation {
                normal: v.point.label(),
                outside: v.outside,
                required: v.required,
            })
            .collect(),
    );
    let griesmer = griesmer_sum(t, f.q());
    r.verdict("griesmer", n >= griesmer);
    let mu = match space(f.q(), t.len()) {
        Some(s) if s <= ANALYZE_MAX_SPACE => Some(IlpModel::new(t, f)?.solve().objective),
        _ => None,
    };
    if let Some(mu) = mu {
        r.verdict("mu", n >= mu);
    }
    r.bounds = Some(Bounds {
        griesmer_sum: griesmer,
        fractional: fractional_bound(t, f.q()).to_string(),
        mu,
    });
    Ok(())
}

fn analyze(
    r: &mut Report,
    path: &Path,
    demand: Option<&[u64]>,
    permute: Option<&[usize]>,
    certify_only: bool,
) -> Result<i32, Failure> {
    let shown = path.display().to_string();
    r.input.path = Some(shown.clone());
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{shown}: {e}")))?;
    let g = matrix_file::parse(&text).map_err(|e| Failure::Parse(shown, e))?;
    echo_matrix(r, &g);
    let k = g.rows();
    let demand = demand.map(|d| demand_vector(d, Some(k))).transpose()?;
    let order = row_order(permute, k)?;

    let rank = g.rank();
    r.rank = Some(rank);
    g.require_full_rank()?;
    if g.cols() > MAX_COLUMNS {
        return Err(Error::TooManyColumns { limit: MAX_COLUMNS }.into());
    }
    if !certify_only {
        let code = LinearCode::new(g.clone())?;
        r.min_distance = Some(code.min_distance());
        r.separation_vector = Some(code.separation_vector().0);
    }
    r.pir_level = Some(pir_level(&g)?);

    let Some(t) = demand else {
        return Ok(0);
    };
    r.demand = Some(t.values().to_vec());
    r.permutation = Some(order.iter().map(|i| i + 1).collect());
    let gp = g.permute_rows(&order)?;
    if certify_only {
        let cert = verify_t_pir(&gp, &t)?;
        r.certificate = Some(certificate_report(&cert, &t, &order));
        r.verdict("t_pir", cert.is_satisfied());
    } else {
        assess(r, &gp, &t, &order, true)?;
    }
    Ok(verdict_code(r))
}

fn ilp(r: &mut Report, a: &IlpArgs) -> Result<i32, Failure> {
    let f = field_from_flags(&a.field)?;
    echo_field(r, &f);
    let t = demand_vector(&a.demand, a.k)?;
    r.input.k = Some(t.len());
    r.demand = Some(t.values().to_vec());
    let s = space(f.q(), t.len()).filter(|&s| s <= ILP_MAX_SPACE);
    if s.is_none() {
        return Err(Error::ScaleExceeded {
            what: format!("q^k above {ILP_MAX_SPACE}"),
        }
        .into());
    }
    let model = IlpModel::new(&t, &f)?;
    let sol = model.solve();
    let values = sol.values();
    let griesmer = griesmer_sum(&t, f.q());
    let fractional = fractional_bound(&t, f.q());
    r.verdict("griesmer", sol.objective >= griesmer);
    r.verdict("fractional", griesmer >= ceil_u64(&fractional));
    r.bounds = Some(Bounds {
        griesmer_sum: griesmer,
        fractional: fractional.to_string(),
        mu: Some(sol.objective),
    });
    let assignment = model
        .variables()
        .iter()
        .zip(&values)
        .filter(|(_, &c)| c > 0)
        .map(|(v, c)| format!("{}:{c}", f.vector_label(v)))
        .collect();
    let mut matrix_path = None;
    if let Some(path) = &a.emit_matrix {
        let g = model.solution_to_matrix(&sol)?;
        write_atomic(path, &matrix_file::write(&g))?;
        matrix_path = Some(path.display().to_string());
    }
    r.ilp = Some(Ilp {
        mu: sol.objective,
        optimal: sol.optimal,
        variables: model.variables().len(),
        constraints: model.constraints().len(),
        assignment,
        nodes: sol.nodes,
        model: a.dump_model.then(|| model.dump()),
        matrix_path,
    });
    Ok(verdict_code(r))
}

fn bound(r: &mut Report, a: &BoundArgs) -> Result<i32, Failure> {
    let f = field_from_flags(&a.field)?;
    echo_field(r, &f);
    let t = demand_vector(&a.demand, None)?;
    r.input.k = Some(t.len());
    r.demand = Some(t.values().to_vec());
    let griesmer = griesmer_sum(&t, f.q());
    let fractional = fractional_bound(&t, f.q());
    r.verdict("fractional", griesmer >= ceil_u64(&fractional));
    r.bounds = Some(Bounds {
        griesmer_sum: griesmer,
        fractional: fractional.to_string(),
        mu: None,
    });
    Ok(verdict_code(r))
}

fn search(r: &mut Report, a: &SearchArgs, stderr: &mut String) -> Result<i32, Failure> {
    let f = field_from_flags(&a.field)?;
    echo_field(r, &f);
    let t = demand_vector(&a.demand, None)?;
    let k = t.len();
    r.input.k = Some(k);
    r.input.mode = Some(mode_name(a.mode).to_string());
    r.input.nmax = Some(a.nmax);
    r.demand = Some(t.values().to_vec());

    let floor = griesmer_sum(&t, f.q());
    if (a.nmax as u64) < floor {
        return Err(Error::BoundBelowFloor { n_max: a.nmax, floor }.into());
    }
    let fits = space(f.q(), k).is_some_and(|s| s <= SEARCH_MAX_SPACE) && a.nmax <= SEARCH_MAX_LENGTH;
    if !fits {
        return Err(Error::ScaleExceeded {
            what: format!("searches stop at q^k = {SEARCH_MAX_SPACE} and nmax = {SEARCH_MAX_LENGTH}"),
        }
        .into());
    }
    let result = match a.mode {
        Mode::Pir => shortest_udd_pir(&t, &f, a.nmax)?,
        Mode::Uep => shortest_uep_code(&t, &f, a.nmax)?,
    };
    let (baseline, _) = concatenation_baseline(&t, &f)?;
    let mut summary = Search {
        mode: mode_name(a.mode).to_string(),
        status: match result.status {
            SearchStatus::Found => "found",
            SearchStatus::NoneWithinBound => "none_within_bound",
        }
        .to_string(),
        length: result.length,
        floor,
        baseline: baseline as u64,
        examined: result.examined,
        witness: None,
        witness_path: None,
    };

    let Some(w) = result.witness else {
        r.search = Some(summary);
        stderr.push_str(&format!("uddpir: none <= {}\n", a.nmax));
        return Ok(1);
    };
    let text = matrix_file::write(&w);
    if w.has_full_row_rank() {
        r.pir_level = Some(pir_level(&w)?);
    }
    r.separation_vector = Some(separation_of_matrix(&w).0);
    let identity: Vec<usize> = (0..k).collect();
    assess(r, &w, &t, &identity, a.mode == Mode::Pir)?;
    if let Some(path) = &a.out {
        write_atomic(path, &text)?;
        summary.witness_path = Some(path.display().to_string());
    }
    summary.witness = Some(text);
    r.search = Some(summary);
    Ok(verdict_code(r))
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Pir => "pir",
        Mode::Uep => "uep",
    }
}
