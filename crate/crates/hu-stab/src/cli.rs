//! Command-line front end.
//!
//! Seven subcommands over matrix files: `pinv`, `stability`, `witness`,
//! `geninv`, `perturb`, `sweep`, `selftest`. Every run emits one JSON report
//! under the `hu-stab/1` schema (pretty by default, compact with `--json`).
//! The exit status is 0 exactly when no error occurred and every asserted
//! equivalence held.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geninv::{check_axioms, geninv_orthogonal, geninv_random, GenInverse};
use crate::io::{self, FileFormat};
use crate::mat::{Mat, Tolerances};
use crate::perturb::{self, analyze, make_perturbation, special_cases, SweepRow, Verdict};
use crate::pinv::{pinv_adjoint_form, pinv_oracle, pinv_projector_form, Method};
use crate::report::{Envelope, InputInfo, JsonReal, MatrixJson};
use crate::selftest::{self, Counts};
use crate::stability::{witness_sweep, witness_with_pinv};
use crate::subspace::{contains, null_space};

#[derive(Parser, Debug)]
#[command(
    name = "hu-stab",
    version,
    about = "Generalized inverses, Moore-Penrose inverses and Hyers-Ulam stability constants of dense complex matrices, with perturbation analysis"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Relative singular-value cutoff for rank decisions
    #[arg(long, global = true)]
    tol_rank: Option<f64>,

    /// Base absolute tolerance for matrix equality checks
    #[arg(long, global = true)]
    tol_eq: Option<f64>,

    /// Seed for all randomized constructions
    #[arg(long, global = true, env = "HU_STAB_SEED")]
    seed: Option<u64>,

    /// Matrix file format; default is inferred from the extension
    /// (.mtx/.mm read as MatrixMarket, anything else as CSV)
    #[arg(long, global = true, value_enum)]
    format: Option<FileFormat>,

    /// Write the report to this path instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Emit compact single-line JSON
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Moore-Penrose inverse of a matrix, by closed form or SVD oracle
    Pinv {
        input: PathBuf,
        /// Which route computes the result; the closed forms start from a
        /// seeded random oblique generalized inverse
        #[arg(long, value_enum, default_value_t = MethodArg::Oracle)]
        method: MethodArg,
    },
    /// Reduced minimum modulus, stability constant and witness sweep
    Stability {
        input: PathBuf,
        /// Number of sampled directions for the witness sweep
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Stability witness x0 = (I - T†T)x for a given vector x
    Witness {
        input: PathBuf,
        /// Vector file (single column or single row)
        x: PathBuf,
    },
    /// Generalized inverse from seeded random (or orthogonal) complements
    Geninv {
        input: PathBuf,
        /// Use the orthogonal complements (yields the Moore-Penrose inverse)
        #[arg(long)]
        orthogonal: bool,
    },
    /// Perturbation analysis of T-bar = T + delta
    Perturb {
        input: PathBuf,
        delta: PathBuf,
        /// Base the analysis on the orthogonal generalized inverse
        #[arg(long)]
        orthogonal: bool,
    },
    /// Continuity sweep along a direction over decreasing scales
    Sweep {
        input: PathBuf,
        direction: PathBuf,
        /// Comma-separated positive scales, strictly decreasing
        #[arg(long, value_delimiter = ',', required = true)]
        scales: Vec<f64>,
        /// Base the sweep on the orthogonal generalized inverse
        #[arg(long)]
        orthogonal: bool,
    },
    /// Run the seeded randomized property suite
    Selftest {
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Oracle,
    ProjectorForm,
    AdjointForm,
}

pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("hu-stab: {e}");
            2
        }
    }
}

struct Ctx {
    tol: Tolerances,
    seed: u64,
    format: Option<FileFormat>,
    out: Option<PathBuf>,
    compact: bool,
}

impl Ctx {
    fn load(&self, path: &Path) -> Result<(Mat, InputInfo)> {
        let format = self.format.unwrap_or_else(|| io::detect_format(path));
        let m = io::read_matrix(path, format)?;
        let digest = io::file_digest(path)?;
        let info = InputInfo::new(path, digest, &m);
        Ok((m, info))
    }

    fn emit<T: Serialize>(&self, envelope: &Envelope<T>) -> Result<()> {
        let text = envelope.to_json(self.compact);
        match &self.out {
            Some(path) => std::fs::write(path, text)?,
            None => print!("{text}"),
        }
        Ok(())
    }
}

fn execute(cli: Cli) -> Result<i32> {
    let mut tol = Tolerances::default();
    if let Some(r) = cli.tol_rank {
        tol.rank_rel = r;
    }
    if let Some(e) = cli.tol_eq {
        tol.eq_abs = e;
    }
    tol.validate()?;
    let ctx = Ctx {
        tol,
        seed: cli.seed.unwrap_or(0),
        format: cli.format,
        out: cli.out,
        compact: cli.json,
    };
    match cli.command {
        Command::Pinv { input, method } => cmd_pinv(&ctx, &input, method),
        Command::Stability { input, samples } => cmd_stability(&ctx, &input, samples),
        Command::Witness { input, x } => cmd_witness(&ctx, &input, &x),
        Command::Geninv { input, orthogonal } => cmd_geninv(&ctx, &input, orthogonal),
        Command::Perturb {
            input,
            delta,
            orthogonal,
        } => cmd_perturb(&ctx, &input, &delta, orthogonal),
        Command::Sweep {
            input,
            direction,
            scales,
            orthogonal,
        } => cmd_sweep(&ctx, &input, &direction, &scales, orthogonal),
        Command::Selftest { inject_fault } => cmd_selftest(&ctx, inject_fault),
    }
}

fn base_geninv(ctx: &Ctx, t: &Mat, orthogonal: bool) -> Result<GenInverse> {
    if orthogonal {
        geninv_orthogonal(t, &ctx.tol)
    } else {
        geninv_random(t, ctx.seed, &ctx.tol)
    }
}

#[derive(Serialize)]
struct PinvBody {
    method: Method,
    t_dagger: MatrixJson,
    penrose_residuals: [f64; 4],
    /// Spectral-norm distance to the SVD oracle result.
    oracle_delta: f64,
}

fn cmd_pinv(ctx: &Ctx, input: &Path, method: MethodArg) -> Result<i32> {
    let (t, info) = ctx.load(input)?;
    let oracle = pinv_oracle(&t, &ctx.tol)?;
    let mp = match method {
        MethodArg::Oracle => oracle.clone(),
        MethodArg::ProjectorForm => {
            pinv_projector_form(&geninv_random(&t, ctx.seed, &ctx.tol)?, &ctx.tol)?
        }
        MethodArg::AdjointForm => {
            pinv_adjoint_form(&geninv_random(&t, ctx.seed, &ctx.tol)?, &ctx.tol)?
        }
    };
    let body = PinvBody {
        method: mp.method,
        t_dagger: MatrixJson::from(&mp.t_dagger),
        penrose_residuals: mp.residuals,
        oracle_delta: (&mp.t_dagger - &oracle.t_dagger).spectral_norm()?,
    };
    ctx.emit(&Envelope::new("pinv", ctx.seed, ctx.tol, vec![info], body))?;
    Ok(0)
}

#[derive(Serialize)]
struct StabilityBody {
    gamma: JsonReal,
    k_t: f64,
    /// k_t · gamma, the identity that pins the stability constant;
    /// "undefined" for the zero operator.
    product: JsonReal,
    witness_samples: usize,
    max_witness_ratio: f64,
    t_dagger: MatrixJson,
}

fn cmd_stability(ctx: &Ctx, input: &Path, samples: usize) -> Result<i32> {
    let (t, info) = ctx.load(input)?;
    let mut rng = crate::rng::stream(ctx.seed, 0x57ab);
    let rep = witness_sweep(&t, samples, &mut rng, &ctx.tol)?;
    let product = if rep.gamma.is_finite() {
        JsonReal::from(rep.k_t * rep.gamma)
    } else {
        JsonReal::Undefined
    };
    let body = StabilityBody {
        gamma: JsonReal::from(rep.gamma),
        k_t: rep.k_t,
        product,
        witness_samples: samples,
        max_witness_ratio: rep.max_witness_ratio,
        t_dagger: MatrixJson::from(&rep.t_dagger),
    };
    ctx.emit(&Envelope::new("stability", ctx.seed, ctx.tol, vec![info], body))?;
    Ok(0)
}

#[derive(Serialize)]
struct WitnessBody {
    k_t: f64,
    ratio: f64,
    ratio_within_constant: bool,
    x0_in_null_space: bool,
    x0: MatrixJson,
}

fn cmd_witness(ctx: &Ctx, input: &Path, x_path: &Path) -> Result<i32> {
    let (t, info) = ctx.load(input)?;
    let (x_raw, x_info) = ctx.load(x_path)?;
    let x = as_column_vector(&x_raw, t.cols())?;
    let rep = crate::stability::stability_constant(&t, &ctx.tol)?;
    let (x0, ratio) = witness_with_pinv(&t, &rep.t_dagger, &x);
    let ns = null_space(&t, &ctx.tol)?;
    let body = WitnessBody {
        k_t: rep.k_t,
        ratio,
        ratio_within_constant: ratio <= rep.k_t + ctx.tol.eq_abs,
        x0_in_null_space: contains(&ns, &x0, &ctx.tol),
        x0: MatrixJson::from(&x0),
    };
    ctx.emit(&Envelope::new(
        "witness",
        ctx.seed,
        ctx.tol,
        vec![info, x_info],
        body,
    ))?;
    Ok(0)
}

fn as_column_vector(m: &Mat, expected_len: usize) -> Result<Mat> {
    let v = if m.cols() == 1 {
        m.clone()
    } else if m.rows() == 1 {
        Mat::new(m.cols(), 1, m.entries().to_vec())?
    } else {
        return Err(Error::Shape(format!(
            "expected a vector, got a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    };
    if v.rows() != expected_len {
        return Err(Error::Shape(format!(
            "vector length {} does not match operator domain {}",
            v.rows(),
            expected_len
        )));
    }
    Ok(v)
}

#[derive(Serialize)]
struct GeninvBody {
    orthogonal: bool,
    t_plus: MatrixJson,
    axiom_residuals: [f64; 3],
    axioms_pass: bool,
    domain_complement_dim: usize,
    codomain_complement_dim: usize,
    /// Obliqueness of the projector onto N(T) along the domain complement.
    projector_norm_p: f64,
    /// Obliqueness of the projector onto R(T) along the codomain complement.
    projector_norm_q: f64,
}

fn cmd_geninv(ctx: &Ctx, input: &Path, orthogonal: bool) -> Result<i32> {
    let (t, info) = ctx.load(input)?;
    let g = base_geninv(ctx, &t, orthogonal)?;
    let (residuals, pass) = check_axioms(&t, &g.t_plus, &ctx.tol)?;
    let body = GeninvBody {
        orthogonal,
        t_plus: MatrixJson::from(&g.t_plus),
        axiom_residuals: residuals,
        axioms_pass: pass,
        domain_complement_dim: g.domain_complement().dim(),
        codomain_complement_dim: g.codomain_complement().dim(),
        projector_norm_p: g.p.norm()?,
        projector_norm_q: g.q.norm()?,
    };
    ctx.emit(&Envelope::new("geninv", ctx.seed, ctx.tol, vec![info], body))?;
    Ok(if pass { 0 } else { 1 })
}

#[derive(Serialize)]
struct SpecialCaseBody {
    case: perturb::SpecialCase,
    null_preserving: bool,
    range_preserving: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    null_space_kept: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    range_space_kept: Option<bool>,
}

#[derive(Serialize)]
struct PerturbBody {
    /// Gate value a·‖T⁺‖ + b·‖TT⁺‖; the analysis requires it below 1.
    gate: f64,
    gate_passed: bool,
    a: f64,
    b: f64,
    orthogonal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    conditions: Option<perturb::Conditions>,
    #[serde(skip_serializing_if = "Option::is_none")]
    equivalence_held: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k_t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k_t_bar: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pinv_delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lipschitz_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lipschitz_holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    special_case: Option<SpecialCaseBody>,
    /// Closed-form perturbed pseudoinverse; absent when the conditions fail.
    #[serde(skip_serializing_if = "Option::is_none")]
    t_bar_dagger: Option<MatrixJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

fn cmd_perturb(ctx: &Ctx, input: &Path, delta: &Path, orthogonal: bool) -> Result<i32> {
    let (t, info) = ctx.load(input)?;
    let (dt, dt_info) = ctx.load(delta)?;
    let g = base_geninv(ctx, &t, orthogonal)?;
    let inputs = vec![info, dt_info];

    let p = match make_perturbation(&t, &dt, &g, &ctx.tol) {
        Ok(p) => p,
        Err(Error::GateFailed { gate }) => {
            let body = PerturbBody {
                gate,
                gate_passed: false,
                a: dt.spectral_norm()?,
                b: 0.0,
                orthogonal,
                conditions: None,
                equivalence_held: None,
                k_t: None,
                k_t_bar: None,
                pinv_delta: None,
                lipschitz_bound: None,
                lipschitz_holds: None,
                special_case: None,
                t_bar_dagger: None,
                note: Some("smallness gate failed; perturbation analysis not applicable".into()),
            };
            ctx.emit(&Envelope::new("perturb", ctx.seed, ctx.tol, inputs, body))?;
            return Ok(0);
        }
        Err(e) => return Err(e),
    };

    let rep = analyze(&p, &ctx.tol)?;
    let sc = special_cases(&p, &ctx.tol)?;
    let note = if rep.t_bar_dagger.is_none() {
        Some("perturbed pseudoinverse not produced by formula: conditions failed".into())
    } else {
        None
    };
    let body = PerturbBody {
        gate: p.gate,
        gate_passed: true,
        a: p.a,
        b: p.b,
        orthogonal,
        equivalence_held: Some(rep.equivalence_held),
        conditions: Some(rep.conditions),
        k_t: Some(rep.k_t),
        k_t_bar: Some(rep.k_t_bar),
        pinv_delta: Some(rep.pinv_delta),
        lipschitz_bound: Some(rep.lipschitz_bound),
        lipschitz_holds: Some(rep.lipschitz_holds),
        special_case: Some(SpecialCaseBody {
            case: sc.case,
            null_preserving: sc.null_preserving,
            range_preserving: sc.range_preserving,
            null_space_kept: sc.null_space_kept,
            range_space_kept: sc.range_space_kept,
        }),
        t_bar_dagger: rep.t_bar_dagger.as_ref().map(MatrixJson::from),
        note,
    };
    let equivalence_held = rep.equivalence_held;
    ctx.emit(&Envelope::new("perturb", ctx.seed, ctx.tol, inputs, body))?;
    Ok(if equivalence_held { 0 } else { 1 })
}

#[derive(Serialize)]
struct SweepBody {
    orthogonal: bool,
    k_t: f64,
    scales: Vec<f64>,
    rows: Vec<SweepRow>,
    verdict: Verdict,
}

fn cmd_sweep(
    ctx: &Ctx,
    input: &Path,
    direction: &Path,
    scales: &[f64],
    orthogonal: bool,
) -> Result<i32> {
    let (t, info) = ctx.load(input)?;
    let (dir, dir_info) = ctx.load(direction)?;
    let g = base_geninv(ctx, &t, orthogonal)?;
    let table = perturb::continuity_sweep(&t, &dir, scales, &g, &ctx.tol)?;
    let body = SweepBody {
        orthogonal,
        k_t: table.k_t,
        scales: scales.to_vec(),
        rows: table.rows,
        verdict: table.verdict,
    };
    ctx.emit(&Envelope::new(
        "sweep",
        ctx.seed,
        ctx.tol,
        vec![info, dir_info],
        body,
    ))?;
    Ok(0)
}

fn cmd_selftest(ctx: &Ctx, inject_fault: bool) -> Result<i32> {
    let counts = Counts::default();
    let report = selftest::run(ctx.seed, &ctx.tol, &counts, inject_fault)?;
    let all_passed = report.all_passed;
    ctx.emit(&Envelope::new("selftest", ctx.seed, ctx.tol, vec![], report))?;
    Ok(if all_passed { 0 } else { 1 })
}
