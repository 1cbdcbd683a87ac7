//! File formats and command dispatch for the `btk` binary.
//!
//! Symbol files are UTF-8 JSON:
//!
//! ```json
//! {"n": 1, "entries": [[{"num": [[1, 0], [0, 0], [2, 0]], "den": [[1, 0]], "zshift": -1}]]}
//! ```
//!
//! Each entry is `num(z) · z^zshift / den(z)` with ascending coefficients given
//! as `[re, im]` pairs.  Instead of (or besides) `entries` a file may carry
//! `plus` and `minus` grids in the same format, holding the analytic `Φ₊` and
//! `Φ_−` of `Φ = Φ_−* + Φ₊`.  When both forms are present they must agree on 𝕋.
//!
//! Scalar inner specs are `{"constant": [re, im], "zeros": [{"alpha": [re, im], "mult": k}]}`.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::acceptance;
use crate::analysis::{self, blaschke_to_json, potapov_to_json, Settings};
use crate::hardy_ops::{self, matrix_to_json};
use crate::matrix_inner;
use crate::ratmat::RatMat;
use crate::scalar_inner::{self, BlaschkeProduct};
use crate::symbol::{self, LaurentRational, MatrixSymbol, Side};
use crate::{c64, BtkError, Result, C64};

/// Agreement required between `entries` and explicit parts of one file.
const PARTS_AGREEMENT: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(name = "btk", version, about = "Block Toeplitz toolkit for rational matrix symbols")]
pub struct Cli {
    /// Truncation order N (blocks 0..=N); defaults to a rule based on the symbol degrees.
    #[arg(long, global = true)]
    pub truncation: Option<usize>,
    /// Relative tolerance for PSD, rank and residual tests.
    #[arg(long, global = true, env = "BTK_TOL", default_value_t = 1e-8)]
    pub tol: f64,
    /// Boundary samples for sup norms.
    #[arg(long, global = true, default_value_t = 1024)]
    pub samples: usize,
    /// Seed for the randomized self-test suites.
    #[arg(long, global = true, default_value_t = acceptance::Config::default().seed)]
    pub seed: u64,
    /// Compact single-line JSON on stdout; for `selftest`, JSON instead of text lines.
    #[arg(long, global = true)]
    pub json: bool,
    /// Suppress the human summary on stderr.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PartArg {
    Plus,
    Minus,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coprime factorization of one part of a symbol.
    Factorize {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
        #[arg(long, value_enum, default_value_t = PartArg::Plus)]
        part: PartArg,
    },
    /// Hyponormality of T_Φ with its interpolation certificate.
    Hyponormal { file: PathBuf },
    /// Joint hyponormality of (T_Φ, T_Ψ).
    Pair { file_a: PathBuf, file_b: PathBuf },
    /// Classify the completion [[T_{b̄_α}, T_φ], [T_ψ, T_{b̄_β}]] from two 1×1 symbol files.
    Completion {
        /// α as `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// β as `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        file_phi: PathBuf,
        file_psi: PathBuf,
    },
    /// Ranks of the pair commutator, the single commutator and I − K(M)*K(M).
    Rank { file_a: PathBuf, file_b: PathBuf },
    /// Solve the Hermite-Fejér problem for C(Φ).
    HermiteFejer { file: PathBuf },
    /// Compose a symbol with a finite Blaschke product ω; writes the result as a symbol file.
    Compose { file: PathBuf, omega: PathBuf },
    /// Coprimeness of two scalar inner specs, or of an analytic symbol file and a scalar inner spec.
    Coprime { spec1: PathBuf, spec2: PathBuf },
    /// Q(M) on the model space of θ for an analytic symbol Q.
    Model { theta: PathBuf, poly: PathBuf },
    /// Run the acceptance suite.
    Selftest {
        /// Print the criteria and exit.
        #[arg(long)]
        list: bool,
        /// Run only this criterion.
        #[arg(long)]
        only: Option<usize>,
    },
}

/// Parameters shared by all commands.
#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub truncation: Option<usize>,
    pub tol: f64,
    pub samples: usize,
    pub seed: u64,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(n) = self.truncation {
            if n < 8 {
                return Err(BtkError::InvalidInput(format!("truncation {n} is below 8")));
            }
        }
        if !(self.tol > 0.0 && self.tol < 1e-2) {
            return Err(BtkError::InvalidInput(format!("tolerance {} outside (0, 1e-2)", self.tol)));
        }
        if self.samples < 16 {
            return Err(BtkError::InvalidInput(format!("samples {} is below 16", self.samples)));
        }
        Ok(())
    }

    fn settings(&self) -> Settings {
        Settings { tol: self.tol, samples: self.samples }
    }

    fn truncation_for(&self, syms: &[&MatrixSymbol]) -> usize {
        self.truncation.unwrap_or_else(|| syms.iter().map(|s| hardy_ops::default_truncation(s)).max().unwrap_or(32))
    }
}

// ---------------------------------------------------------------------------
// Symbol files

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymbolFile {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<Vec<LaurentRational>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plus: Option<Vec<Vec<LaurentRational>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minus: Option<Vec<Vec<LaurentRational>>>,
}

fn grid_to_ratmat(n: usize, grid: &[Vec<LaurentRational>], what: &str) -> Result<RatMat> {
    if grid.len() != n || grid.iter().any(|row| row.len() != n) {
        return Err(BtkError::InvalidInput(format!("{what} must be a {n}×{n} array")));
    }
    let cells = grid.iter().map(|row| row.iter().map(|e| e.to_ratmat()).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    Ok(RatMat::from_entries(&cells))
}

impl SymbolFile {
    pub fn to_symbol(&self) -> Result<MatrixSymbol> {
        if self.n == 0 {
            return Err(BtkError::InvalidInput("n must be positive".into()));
        }
        let from_entries = match &self.entries {
            Some(e) => Some(symbol::split(e)?),
            None => None,
        };
        if let Some(s) = &from_entries {
            if s.n != self.n {
                return Err(BtkError::InvalidInput(format!("entries are {}×{} but n = {}", s.n, s.n, self.n)));
            }
        }
        let from_parts = match (&self.plus, &self.minus) {
            (Some(p), Some(m)) => Some(MatrixSymbol::from_parts(grid_to_ratmat(self.n, p, "plus")?, grid_to_ratmat(self.n, m, "minus")?)?),
            (None, None) => None,
            _ => return Err(BtkError::InvalidInput("plus and minus must be given together".into())),
        };
        match (from_entries, from_parts) {
            (Some(a), Some(b)) => {
                let d = a.to_ratmat().dist(&b.to_ratmat(), symbol::CHECK_SAMPLES);
                let scale = a.sup_norm(symbol::CHECK_SAMPLES).max(1.0);
                if d > PARTS_AGREEMENT * scale {
                    return Err(BtkError::InvalidInput(format!("entries and explicit parts differ by {d:.2e} on the circle")));
                }
                Ok(b)
            }
            (Some(a), None) => Ok(a),
            (None, Some(b)) => Ok(b),
            (None, None) => Err(BtkError::InvalidInput("symbol file needs entries or plus/minus".into())),
        }
    }

    pub fn from_symbol(phi: &MatrixSymbol) -> SymbolFile {
        SymbolFile {
            n: phi.n,
            entries: Some(ratmat_grid(&phi.to_ratmat())),
            plus: Some(ratmat_grid(&phi.plus)),
            minus: Some(ratmat_grid(&phi.minus)),
        }
    }
}

fn ratmat_grid(f: &RatMat) -> Vec<Vec<LaurentRational>> {
    (0..f.rows)
        .map(|i| {
            (0..f.cols)
                .map(|j| {
                    let e = f.entry(i, j);
                    let num: Vec<C64> = e.num.iter().map(|c| c[(0, 0)]).collect();
                    LaurentRational::new(num, e.den_poly().c, e.shift)
                })
                .collect()
        })
        .collect()
}

pub fn parse_symbol(text: &str) -> Result<MatrixSymbol> {
    let f: SymbolFile = serde_json::from_str(text).map_err(|e| BtkError::InvalidInput(format!("symbol file: {e}")))?;
    f.to_symbol()
}

pub fn read_symbol(path: &Path) -> Result<MatrixSymbol> {
    parse_symbol(&read_text(path)?)
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| BtkError::InvalidInput(format!("{}: {e}", path.display())))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZeroSpec {
    pub alpha: C64,
    #[serde(default = "one")]
    pub mult: usize,
}

fn one() -> usize {
    1
}

fn unit_constant() -> C64 {
    c64(1.0, 0.0)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlaschkeSpec {
    #[serde(default = "unit_constant")]
    pub constant: C64,
    #[serde(default)]
    pub zeros: Vec<ZeroSpec>,
}

impl BlaschkeSpec {
    pub fn to_blaschke(&self) -> Result<BlaschkeProduct> {
        if (self.constant.norm() - 1.0).abs() > 1e-12 {
            return Err(BtkError::InvalidInput("Blaschke constant must be unimodular".into()));
        }
        let zeros: Vec<(C64, usize)> = self.zeros.iter().map(|z| (z.alpha, z.mult)).collect();
        BlaschkeProduct::new(self.constant, &zeros)
    }
}

pub fn parse_blaschke(text: &str) -> Result<BlaschkeProduct> {
    let s: BlaschkeSpec = serde_json::from_str(text).map_err(|e| BtkError::InvalidInput(format!("inner spec: {e}")))?;
    s.to_blaschke()
}

/// `re,im` or `re`.
pub fn parse_complex(s: &str) -> Result<C64> {
    let bad = || BtkError::InvalidInput(format!("cannot parse complex number {s:?}"));
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|_| bad());
    match parts.as_slice() {
        [re] => Ok(c64(num(re)?, 0.0)),
        [re, im] => Ok(c64(num(re)?, num(im)?)),
        _ => Err(bad()),
    }
}

// ---------------------------------------------------------------------------
// Commands

/// What a command hands back: JSON for stdout, a summary for stderr, the exit code.
pub struct Report {
    pub json: Value,
    pub summary: String,
    pub code: i32,
}

impl Report {
    fn ok(json: Value, summary: impl Into<String>) -> Self {
        Report { json, summary: summary.into(), code: 0 }
    }
}

fn verdict_of(v: &Value) -> String {
    v.get("verdict").and_then(Value::as_str).unwrap_or("").to_string()
}

pub fn cmd_factorize(file: &Path, side: SideArg, part: PartArg) -> Result<Report> {
    let phi = read_symbol(file)?;
    let f = match part {
        PartArg::Plus => &phi.plus,
        PartArg::Minus => &phi.minus,
    };
    let fac = match side {
        SideArg::Right => symbol::dss_right(f)?,
        SideArg::Left => symbol::dss_left(f)?,
    };
    let side_s = match fac.side {
        Side::Left => "left",
        Side::Right => "right",
    };
    let det = fac.inner.det();
    let json = json!({
        "verdict": "certified",
        "certificates": {
            "side": side_s,
            "inner": potapov_to_json(&fac.inner),
            "det": blaschke_to_json(&det),
            "scalar_form": fac.scalar_form.as_ref().map(|(t, _)| blaschke_to_json(t)),
            "coprime": true,
        },
        "residuals": {"reconstruction": fac.reconstruction_error},
        "ranks": {"degree": fac.degree()},
        "parameters": {"part": format!("{part:?}").to_lowercase()},
    });
    Ok(Report::ok(json, format!("{side_s} factorization: inner degree {}, reconstruction error {:.2e}", fac.degree(), fac.reconstruction_error)))
}

pub fn cmd_hyponormal(file: &Path, cfg: &RunConfig) -> Result<Report> {
    let phi = read_symbol(file)?;
    let n = cfg.truncation_for(&[&phi]);
    let v = analysis::hyponormal(&phi, n, &cfg.settings())?;
    let mut json = v.to_json();
    let abr = analysis::abrahamse_check(&phi, n, &cfg.settings())?;
    json["certificates"]["abrahamse"] = abr.to_json();
    let summary = format!("{} (min eigenvalue {:.3e}, N = {n})", verdict_of(&json), v.min_eigenvalue);
    Ok(Report::ok(json, summary))
}

pub fn cmd_pair(a: &Path, b: &Path, cfg: &RunConfig) -> Result<Report> {
    let (phi, psi) = (read_symbol(a)?, read_symbol(b)?);
    let n = cfg.truncation_for(&[&phi, &psi]);
    let v = analysis::pair_analyze(&phi, &psi, n, &cfg.settings())?;
    let mut json = v.to_json();
    json["hyponormal"] = json!(v.hyponormal);
    json["lambda"] = v.lambda.as_ref().map(matrix_to_json).unwrap_or(Value::Null);
    let summary = format!("pair {} (min eigenvalue {:.3e}, N = {n})", verdict_of(&json), v.min_eigenvalue);
    Ok(Report::ok(json, summary))
}

fn scalar_entry(path: &Path) -> Result<RatMat> {
    let s = read_symbol(path)?;
    if s.n != 1 {
        return Err(BtkError::InvalidInput(format!("{}: completion entries must be 1×1", path.display())));
    }
    Ok(s.to_ratmat())
}

pub fn cmd_completion(alpha: &str, beta: &str, fphi: &Path, fpsi: &Path, cfg: &RunConfig) -> Result<Report> {
    let (alpha, beta) = (parse_complex(alpha)?, parse_complex(beta)?);
    let (phi_e, psi_e) = (scalar_entry(fphi)?, scalar_entry(fpsi)?);
    let sym = analysis::completion_symbol(alpha, beta, &phi_e, &psi_e)?;
    let n = cfg.truncation_for(&[&sym]);
    let v = analysis::completion_classify(alpha, beta, &phi_e, &psi_e, n, &cfg.settings())?;
    let json = v.to_json();
    let summary = format!("{:?}: {}", v.class, v.reason);
    Ok(Report::ok(json, summary))
}

pub fn cmd_rank(a: &Path, b: &Path, cfg: &RunConfig) -> Result<Report> {
    let (phi, psi) = (read_symbol(a)?, read_symbol(b)?);
    let n = cfg.truncation_for(&[&phi, &psi]);
    let rep = analysis::rank_formula(&phi, &psi, n, &cfg.settings())?;
    let mut json = rep.to_json();
    json["parameters"] = json!({"truncation": n, "tol": cfg.tol});
    let summary = format!("ranks: pair {}, single {}, I − K*K {}", rep.rank_pair, rep.rank_single, rep.rank_ikk);
    Ok(Report::ok(json, summary))
}

pub fn cmd_hermite_fejer(file: &Path, cfg: &RunConfig) -> Result<Report> {
    let phi = read_symbol(file)?;
    let c = analysis::solve_c_phi(&phi, &cfg.settings())?;
    let json = json!({
        "verdict": if c.contractive_exists { "contractive solution exists" } else { "no contractive solution" },
        "certificates": c.to_json(),
        "residuals": {"interpolation": c.interpolation_residual, "membership": c.membership_residual},
        "ranks": Value::Null,
        "parameters": {"tol": cfg.tol, "samples": cfg.samples},
    });
    let summary = format!("‖K(M)‖ = {:.6}, residuals {:.2e} / {:.2e}", c.hf_norm, c.interpolation_residual, c.membership_residual);
    Ok(Report::ok(json, summary))
}

pub fn cmd_compose(file: &Path, omega: &Path) -> Result<Report> {
    let phi = read_symbol(file)?;
    let om = parse_blaschke(&read_text(omega)?)?;
    let out = phi.compose(&om)?;
    let written = serde_json::to_value(SymbolFile::from_symbol(&out)).map_err(|e| BtkError::Internal(e.to_string()))?;
    let json = json!({
        "verdict": "composed",
        "certificates": {"omega": blaschke_to_json(&om)},
        "residuals": Value::Null,
        "ranks": Value::Null,
        "parameters": Value::Null,
        "symbol": written,
    });
    Ok(Report::ok(json, format!("composed with a Blaschke product of degree {}", om.degree())))
}

enum InnerArg {
    Scalar(BlaschkeProduct),
    Symbol(MatrixSymbol),
}

fn read_inner_arg(path: &Path) -> Result<InnerArg> {
    let text = read_text(path)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| BtkError::InvalidInput(format!("{}: {e}", path.display())))?;
    if v.get("n").is_some() {
        Ok(InnerArg::Symbol(parse_symbol(&text)?))
    } else {
        Ok(InnerArg::Scalar(parse_blaschke(&text)?))
    }
}

pub fn cmd_coprime(s1: &Path, s2: &Path) -> Result<Report> {
    let (a, b) = (read_inner_arg(s1)?, read_inner_arg(s2)?);
    let (coprime, extra) = match (&a, &b) {
        (InnerArg::Scalar(x), InnerArg::Scalar(y)) => (
            scalar_inner::coprime_blaschke(x, y),
            json!({"gcd": blaschke_to_json(&scalar_inner::gcd_blaschke(x, y)), "lcm": blaschke_to_json(&scalar_inner::lcm_blaschke(x, y))}),
        ),
        (InnerArg::Symbol(f), InnerArg::Scalar(t)) | (InnerArg::Scalar(t), InnerArg::Symbol(f)) => {
            if f.minus.sup_norm(64) > 0.0 {
                return Err(BtkError::InvalidInput("the matrix argument must be analytic".into()));
            }
            (matrix_inner::coprime_with_scalar(&f.plus, t)?, json!({"theta": blaschke_to_json(t)}))
        }
        (InnerArg::Symbol(_), InnerArg::Symbol(_)) => {
            return Err(BtkError::InvalidInput("at least one argument must be a scalar inner spec".into()));
        }
    };
    let json = json!({
        "verdict": if coprime { "coprime" } else { "not coprime" },
        "certificates": extra,
        "residuals": Value::Null,
        "ranks": Value::Null,
        "parameters": Value::Null,
    });
    Ok(Report::ok(json, if coprime { "coprime" } else { "not coprime" }))
}

pub fn cmd_model(theta: &Path, poly: &Path) -> Result<Report> {
    let th = parse_blaschke(&read_text(theta)?)?;
    let q = read_symbol(poly)?;
    if q.minus.sup_norm(64) > 0.0 {
        return Err(BtkError::InvalidInput("Q must be analytic".into()));
    }
    let m = hardy_ops::m_matrix(&th);
    let qm = hardy_ops::q_of_m(&q, &m)?;
    let qq = qm.adjoint() * &qm;
    let qsq = MatrixSymbol::from_ratmat(&q.to_ratmat().star().mul(&q.to_ratmat()))?;
    let qsq_m = hardy_ops::q_of_m(&qsq, &m)?;
    let json = json!({
        "verdict": "computed",
        "certificates": {
            "m": matrix_to_json(&m),
            "q_of_m": matrix_to_json(&qm),
            "q_of_m_star_q_of_m": matrix_to_json(&qq),
            "qstar_q_of_m": matrix_to_json(&qsq_m),
        },
        "residuals": Value::Null,
        "ranks": Value::Null,
        "parameters": {"dim": qm.nrows()},
    });
    Ok(Report::ok(json, format!("Q(M) is {}×{}", qm.nrows(), qm.ncols())))
}

pub fn cmd_selftest(list: bool, only: Option<usize>, cfg: &RunConfig, as_json: bool) -> Result<Report> {
    if list {
        let items: Vec<Value> = acceptance::CRITERIA.iter().map(|&(id, name)| json!({"id": id, "name": name})).collect();
        let text = acceptance::CRITERIA.iter().map(|&(id, name)| format!("{id:>2} {name}")).collect::<Vec<_>>().join("\n");
        return Ok(Report { json: if as_json { Value::Array(items) } else { Value::String(text) }, summary: String::new(), code: 0 });
    }
    let acfg = acceptance::Config { tol: cfg.tol, seed: cfg.seed, samples: cfg.samples };
    let results = match only {
        Some(id) if acceptance::criterion_name(id).is_none() => return Err(BtkError::InvalidInput(format!("no criterion {id}"))),
        Some(id) => vec![acceptance::run_criterion(id, &acfg)],
        None => acceptance::run_all(&acfg),
    };
    let failed: Vec<&str> = results.iter().filter(|r| !r.pass).map(|r| r.name).collect();
    let json = if as_json {
        json!({"pass": failed.is_empty(), "seed": cfg.seed, "tol": cfg.tol, "results": results.iter().map(|r| r.to_json()).collect::<Vec<_>>()})
    } else {
        Value::String(results.iter().map(|r| r.line()).collect::<Vec<_>>().join("\n"))
    };
    let summary = if failed.is_empty() { format!("{} criteria passed", results.len()) } else { format!("failed: {}", failed.join(", ")) };
    Ok(Report { json, summary, code: if failed.is_empty() { 0 } else { 3 } })
}

pub fn dispatch(cli: &Cli) -> Result<Report> {
    let cfg = RunConfig { truncation: cli.truncation, tol: cli.tol, samples: cli.samples, seed: cli.seed };
    cfg.validate()?;
    match &cli.command {
        Command::Factorize { file, side, part } => cmd_factorize(file, *side, *part),
        Command::Hyponormal { file } => cmd_hyponormal(file, &cfg),
        Command::Pair { file_a, file_b } => cmd_pair(file_a, file_b, &cfg),
        Command::Completion { alpha, beta, file_phi, file_psi } => cmd_completion(alpha, beta, file_phi, file_psi, &cfg),
        Command::Rank { file_a, file_b } => cmd_rank(file_a, file_b, &cfg),
        Command::HermiteFejer { file } => cmd_hermite_fejer(file, &cfg),
        Command::Compose { file, omega } => cmd_compose(file, omega),
        Command::Coprime { spec1, spec2 } => cmd_coprime(spec1, spec2),
        Command::Model { theta, poly } => cmd_model(theta, poly),
        Command::Selftest { list, only } => cmd_selftest(*list, *only, &cfg, cli.json),
    }
}

/// Parse arguments, run, print, and return the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli) {
        Ok(rep) => {
            match &rep.json {
                Value::String(s) => println!("{s}"),
                v if cli.json => println!("{v}"),
                v => println!("{}", serde_json::to_string_pretty(v).unwrap_or_default()),
            }
            if !cli.quiet && !rep.summary.is_empty() {
                eprintln!("{}", rep.summary);
            }
            rep.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::ratmat::{blaschke_factor, monomial};
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let s = parse_symbol(r#"{"n": 1, "entries": [[{"num": [[1,0],[0,0],[2,0]], "den": [[1,0]], "zshift": -1}]]}"#).unwrap();
        let z = c64(0.3, 0.2);
        assert!((s.plus.eval_scalar(z) - 2.0 * z).norm() < 1e-14);
        assert!((s.minus.eval_scalar(z) - z).norm() < 1e-14);
        assert!(parse_symbol(r#"{"n": 2, "entries": [[{"num": [[1,0]], "den": [[1,0]], "zshift": 0}]]}"#).is_err());
        assert!(parse_symbol(r#"{"n": 1, "entries": [[{"num": [[1,0]], "den": [[-1,0],[1,0]], "zshift": 0}]]}"#).is_err());
        assert!(parse_symbol("not json").is_err());
        let b = parse_blaschke(r#"{"zeros": [{"alpha": [0.5, 0], "mult": 2}]}"#).unwrap();
        assert_eq!(b.degree(), 2);
        assert!(parse_blaschke(r#"{"constant": [2, 0], "zeros": []}"#).is_err());
        assert_eq!(parse_complex("0.3,-0.2").unwrap(), c64(0.3, -0.2));
        assert_eq!(parse_complex("-1").unwrap(), c64(-1.0, 0.0));
        assert!(parse_complex("a,b").is_err());
    }

    #[test]
    fn parts_must_agree_with_entries() {
        let good = r#"{"n": 1,
            "entries": [[{"num": [[1,0],[0,0],[2,0]], "den": [[1,0]], "zshift": -1}]],
            "plus": [[{"num": [[0,0],[2,0]], "den": [[1,0]], "zshift": 0}]],
            "minus": [[{"num": [[0,0],[1,0]], "den": [[1,0]], "zshift": 0}]]}"#;
        assert!(parse_symbol(good).is_ok());
        let bad = good.replace("[[0,0],[2,0]]", "[[0,0],[3,0]]");
        assert!(parse_symbol(&bad).is_err());
        let lone = r#"{"n": 1, "plus": [[{"num": [[1,0]], "den": [[1,0]], "zshift": 0}]]}"#;
        assert!(parse_symbol(lone).is_err());
    }

    fn cplx() -> impl Strategy<Value = C64> {
        (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| c64(a, b))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        /// A written symbol file re-parses to the same function on 𝕋.
        #[test]
        fn symbol_file_round_trip(c in proptest::collection::vec(cplx(), 8), a in 0.0f64..0.8, t in 0.0f64..6.3) {
            let alpha = C64::from_polar(a, t);
            let e00 = monomial(-2).scale(c[0]).add(&blaschke_factor(alpha).scale(c[1]));
            let e01 = RatMat::scalar(&Poly::new(vec![c[2], c[3]]), &Poly::new(vec![c64(1.0, 0.0), -alpha.conj()]), 0).unwrap();
            let e10 = blaschke_factor(alpha).star().scale(c[4]).add(&RatMat::scalar_const(c[5]));
            let e11 = monomial(3).scale(c[6]).add(&monomial(-1).scale(c[7]));
            let phi = MatrixSymbol::from_ratmat(&RatMat::from_entries(&[vec![e00, e01], vec![e10, e11]])).unwrap();
            let text = serde_json::to_string(&SymbolFile::from_symbol(&phi)).unwrap();
            let back = parse_symbol(&text).unwrap();
            let d = (0..256).map(|j| {
                let z = crate::ratmat::circle_point(j, 256);
                crate::linalg::norm2(&(phi.eval(z) - back.eval(z)))
            }).fold(0.0, f64::max);
            prop_assert!(d < 1e-10, "round-trip distance {d:e}");
        }
    }
}
