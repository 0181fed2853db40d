//! The `ratiolab` command line.
//!
//! Exit codes: 0 success, 1 usage, 2 undefined ratio for the given roots,
//! 3 a checked claim failed, 4 I/O failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use ratiolab_core::cubic::{classify_configuration, CubicError};
use ratiolab_core::inellipse::{ratio_angles, steiner_inellipse};
use ratiolab_core::ratio::SQRT_3;
use ratiolab_core::region::{sweep_w_grid, trace_boundary, SampleRecord};
use ratiolab_core::sampling::DEFAULT_SEED;
use ratiolab_core::theorem::{
    extremal_family_im, run_suite, sharpness_probe_re, ImSign, Suite, TheoremError, VerifyConfig,
    DEFAULT_SCAN_STEPS,
};
use ratiolab_core::{
    assess_admissibility, identity_residual, normalize, order_roots, ratios_direct, ratios_via_w,
    ComplexValue, OrderedCubic, ToleranceConfig,
};
use serde_json::{json, Value};

use crate::dataset::{write_dataset, Format};
use crate::json::{complex, ellipse, monte_carlo, number, report, to_line};
use crate::literal::parse_complex;
use crate::parallel::Parallel;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_UNDEFINED: i32 = 2;
pub const EXIT_CLAIM_FAILED: i32 = 3;
pub const EXIT_IO: i32 = 4;

const LITERAL_HELP: &str = "\
Complex literals: an optional sign and a decimal real part, optionally followed by a
signed decimal imaginary part ending in 'i'; or a signed decimal ending in 'i'.
No spaces. Examples: -1, 0.5, 2i, -4-1i, 1.7320508i, 0.5+2e-3i.

Exit codes: 0 success, 1 usage, 2 undefined ratio, 3 claim failure, 4 I/O failure.";

#[derive(Parser, Debug)]
#[command(name = "ratiolab", version, about = "Complex ratio vectors of cubic polynomials", after_help = LITERAL_HELP)]
pub struct Cli {
    #[command(flatten)]
    tol: TolArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct TolArgs {
    /// Equality tolerance, relative to the configuration diameter for lengths
    #[arg(long, global = true, default_value_t = 1e-9)]
    eq_tol: f64,
    /// Distance within which w counts as on the excluded set or its boundary
    #[arg(long, global = true, default_value_t = 1e-9)]
    boundary_tol: f64,
    /// Tolerance for ratio identities and equalities
    #[arg(long, global = true, default_value_t = 1e-10)]
    identity_tol: f64,
}

#[derive(Args, Debug)]
struct Roots {
    #[arg(allow_hyphen_values = true, value_name = "W1")]
    w1: String,
    #[arg(allow_hyphen_values = true, value_name = "W2")]
    w2: String,
    #[arg(allow_hyphen_values = true, value_name = "W3")]
    w3: String,
}

#[derive(Args, Debug)]
struct Output {
    /// Write the dataset here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Csv,
    Jsonl,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Jsonl => Format::Jsonl,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ratio vector of the cubic with the given roots
    Compute(Roots),
    /// Run numerical checks of the bounds, extremal families and equivalences
    Verify {
        /// One of all, L1, L2, T1, T2, T3, T4, T5, HYP
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, env = "RATIOLAB_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Grid points per sign in the lemma scans
        #[arg(long, default_value_t = DEFAULT_SCAN_STEPS)]
        steps: usize,
        /// Write the report stream here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Grid of f and g values over the w-plane
    Sweep {
        /// Real range as MIN,MAX
        #[arg(long, allow_hyphen_values = true, default_value = "-3,3", value_parser = parse_range)]
        re_range: (f64, f64),
        /// Imaginary range as MIN,MAX
        #[arg(long, allow_hyphen_values = true, default_value = "-3,3", value_parser = parse_range)]
        im_range: (f64, f64),
        /// Grid points per axis
        #[arg(long, default_value_t = 101)]
        resolution: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Ratios along the boundary w = it, for both signs of t
    Boundary {
        #[arg(long, default_value_t = SQRT_3)]
        tmin: f64,
        #[arg(long, default_value_t = 1000.0)]
        tmax: f64,
        /// Points per sign of t
        #[arg(long, default_value_t = 10_000)]
        steps: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Midpoint inellipse of the root triangle, fitted independently
    Ellipse(Roots),
    /// Extremal families
    #[command(subcommand)]
    Probe(Probe),
}

#[derive(Subcommand, Debug)]
enum Probe {
    /// Family whose Re σ1 tends to 2/3 (t → ∞) or 0 (t → −∞)
    ReSharpness {
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
    },
    /// Family attaining Im σ1 = ±1/3: roots C ± i·z0 and C + 2·z0
    ImExtremal {
        #[arg(long, allow_hyphen_values = true, default_value = "1-4i")]
        z0: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        offset: String,
        #[arg(long, value_enum, default_value_t = SignArg::Plus)]
        sign: SignArg,
    },
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected MIN,MAX, got {s:?}"))?;
    let a: f64 = a.trim().parse().map_err(|_| format!("bad number {a:?}"))?;
    let b: f64 = b.trim().parse().map_err(|_| format!("bad number {b:?}"))?;
    if !(a.is_finite() && b.is_finite() && a <= b) {
        return Err(format!("range must be finite with MIN ≤ MAX, got {s:?}"));
    }
    Ok((a, b))
}

/// Failure of a command, mapped to an exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Undefined(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Undefined(_) => EXIT_UNDEFINED,
            Failure::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Undefined(m) | Failure::Io(m) => m,
        }
    }
}

fn io_failure(path: Option<&Path>) -> impl Fn(io::Error) -> Failure + '_ {
    move |e| match path {
        Some(p) => Failure::Io(format!("I/O failure on {}: {e}", p.display())),
        None => Failure::Io(format!("I/O failure on standard output: {e}")),
    }
}

/// Parses arguments and runs the command; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == EXIT_OK { stdout } else { stderr };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(cli, stdout, stderr) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message());
            f.code()
        }
    }
}

fn execute(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Failure> {
    let tol = ToleranceConfig::new(cli.tol.eq_tol, cli.tol.boundary_tol, cli.tol.identity_tol)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    match cli.command {
        Command::Compute(roots) => compute(&roots, &tol, stdout),
        Command::Verify {
            suite,
            samples,
            seed,
            steps,
            out,
        } => verify(&suite, samples, seed, steps, out.as_deref(), &tol, stdout),
        Command::Sweep {
            re_range,
            im_range,
            resolution,
            output,
        } => {
            let records = sweep_w_grid(re_range, im_range, resolution, &tol)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            emit(&records, &output, stdout, stderr)
        }
        Command::Boundary {
            tmin,
            tmax,
            steps,
            output,
        } => {
            let records =
                trace_boundary(tmin, tmax, steps, &tol).map_err(|e| Failure::Usage(e.to_string()))?;
            emit(&records, &output, stdout, stderr)
        }
        Command::Ellipse(roots) => ellipse_cmd(&roots, &tol, stdout),
        Command::Probe(p) => probe(p, &tol, stdout),
    }
}

fn parse_roots(r: &Roots) -> Result<[ComplexValue; 3], Failure> {
    let p = |s: &str| parse_complex(s).map_err(|e| Failure::Usage(e.to_string()));
    Ok([p(&r.w1)?, p(&r.w2)?, p(&r.w3)?])
}

fn ordered(r: &Roots, tol: &ToleranceConfig) -> Result<OrderedCubic, Failure> {
    let [a, b, c] = parse_roots(r)?;
    order_roots(a, b, c, tol).map_err(|e: CubicError| Failure::Undefined(format!("undefined ratio: {e}")))
}

fn print_line(stdout: &mut dyn Write, v: &Value) -> Result<(), Failure> {
    writeln!(stdout, "{}", to_line(v)).map_err(io_failure(None))
}

fn compute(roots: &Roots, tol: &ToleranceConfig, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let cub = ordered(roots, tol)?;
    let direct = ratios_direct(&cub);
    let n = normalize(&cub);
    let adm = assess_admissibility(n.w2n, n.w3n, tol);
    let closed = ratios_via_w(&n, &adm).ok();
    let v = json!({
        "roots": cub.roots().iter().map(|z| complex(*z)).collect::<Vec<_>>(),
        "critical_points": [complex(cub.z1), complex(cub.z2)],
        "coincident": cub.coincident,
        "sigma1": complex(direct.sigma1),
        "sigma2": complex(direct.sigma2),
        "w": complex(n.w),
        "classification": classify_configuration(&cub, tol).as_str(),
        "identity_residual": number(identity_residual(&direct)),
        "closed_form": closed.map(|r| json!({
            "path": r.path.as_str(),
            "sigma1": complex(r.sigma1),
            "sigma2": complex(r.sigma2),
            "difference": number((r.sigma1 - direct.sigma1).abs().max((r.sigma2 - direct.sigma2).abs())),
        })),
    });
    print_line(stdout, &v)?;
    Ok(EXIT_OK)
}

fn verify(
    suite: &str,
    samples: u64,
    seed: u64,
    steps: usize,
    out: Option<&Path>,
    tol: &ToleranceConfig,
    stdout: &mut dyn Write,
) -> Result<i32, Failure> {
    let suite: Suite = suite.parse().map_err(|e: ratiolab_core::theorem::UnknownSuite| Failure::Usage(e.to_string()))?;
    if steps < ratiolab_core::theorem::MIN_SCAN_STEPS {
        return Err(Failure::Usage(TheoremError::BadRange.to_string()));
    }
    let mut cfg = VerifyConfig::new(samples, seed, *tol);
    cfg.scan_steps = steps;
    let outcome = run_suite(suite, &cfg, &Parallel);

    let mut lines: Vec<Value> = outcome.reports.iter().map(report).collect();
    if let Some(stats) = &outcome.monte_carlo {
        lines.push(monte_carlo(stats));
    }
    let failed = outcome.reports.iter().filter(|r| !r.passed).count();
    lines.push(json!({
        "summary": {
            "reports": outcome.reports.len(),
            "failed": failed,
            "failed_claims": outcome.reports.iter().filter(|r| !r.passed)
                .map(|r| format!("{}/{}", r.claim.as_str(), r.check)).collect::<Vec<_>>(),
            "seed": seed,
            "samples": samples,
        }
    }));

    let write_all = |w: &mut dyn Write| -> io::Result<()> {
        for l in &lines {
            writeln!(w, "{}", to_line(l))?;
        }
        w.flush()
    };
    match out {
        Some(path) => {
            let file = File::create(path).map_err(io_failure(Some(path)))?;
            write_all(&mut BufWriter::new(file)).map_err(io_failure(Some(path)))?;
            print_line(stdout, lines.last().expect("summary line"))?;
        }
        None => write_all(stdout).map_err(io_failure(None))?,
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_CLAIM_FAILED })
}

fn emit(
    records: &[SampleRecord],
    output: &Output,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    let format = Format::from(output.format);
    let rows = match &output.out {
        Some(path) => {
            let file = File::create(path).map_err(io_failure(Some(path)))?;
            write_dataset(records, file, format).map_err(io_failure(Some(path)))?
        }
        None => write_dataset(records, &mut *stdout, format).map_err(io_failure(None))?,
    };
    let summary = json!({
        "rows": rows,
        "excluded": records.iter().filter(|r| r.sigma1.is_none()).count(),
        "unreachable": records.iter().filter(|r| !r.reachable).count(),
        "bounds_violations": records.iter().filter(|r| r.bounds_ok == Some(false)).count(),
    });
    let sink: &mut dyn Write = if output.out.is_some() { stdout } else { stderr };
    writeln!(sink, "{}", to_line(&summary)).map_err(io_failure(None))?;
    Ok(EXIT_OK)
}

fn ellipse_cmd(roots: &Roots, tol: &ToleranceConfig, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let cub = ordered(roots, tol)?;
    let e = steiner_inellipse(&cub, tol).map_err(|e| Failure::Undefined(e.to_string()))?;
    let d = cub.diameter();
    let focal_error = (e.focus1 - cub.z1).abs().max((e.focus2 - cub.z2).abs()) / d;
    let r = ratios_direct(&cub);
    let (t1, t2) = ratio_angles(&cub);
    let v = json!({
        "ellipse": ellipse(&e),
        "critical_points": [complex(cub.z1), complex(cub.z2)],
        "focal_error_relative": number(focal_error),
        "theta1": number(t1),
        "theta2": number(t2),
        "arg_sigma1": number(r.sigma1.arg()),
        "arg_sigma2": number(r.sigma2.arg()),
    });
    print_line(stdout, &v)?;
    Ok(EXIT_OK)
}

fn probe(p: Probe, tol: &ToleranceConfig, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let (cub, r, head) = match p {
        Probe::ReSharpness { t } => {
            let (cub, r) = sharpness_probe_re(t, tol).map_err(|e| Failure::Usage(e.to_string()))?;
            (cub, r, json!({ "family": "re-sharpness", "t": number(t) }))
        }
        Probe::ImExtremal { z0, offset, sign } => {
            let z = parse_complex(&z0).map_err(|e| Failure::Usage(e.to_string()))?;
            let c = parse_complex(&offset).map_err(|e| Failure::Usage(e.to_string()))?;
            let s = match sign {
                SignArg::Plus => ImSign::Plus,
                SignArg::Minus => ImSign::Minus,
            };
            let (cub, r) = extremal_family_im(z, c, s, tol).map_err(|e| Failure::Usage(e.to_string()))?;
            (cub, r, json!({ "family": "im-extremal", "z0": complex(z), "offset": complex(c) }))
        }
    };
    let mut v = head;
    let obj = v.as_object_mut().expect("object");
    obj.insert("roots".into(), cub.roots().iter().map(|z| complex(*z)).collect());
    obj.insert("sigma1".into(), complex(r.sigma1));
    obj.insert("sigma2".into(), complex(r.sigma2));
    obj.insert("re_sigma1".into(), number(r.sigma1.re));
    obj.insert("im_sigma1".into(), number(r.sigma1.im));
    print_line(stdout, &v)?;
    Ok(EXIT_OK)
}
