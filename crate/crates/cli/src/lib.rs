//! `mahler` command-line front end.
//!
//! Exit codes: 0 on success, 1 when a check fails, 2 on bad input or usage.

pub mod svg;

use std::f64::consts::PI;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use mahler_core::approximation::{continuity_experiment, SampledBody};
use mahler_core::corpus::{corpus_verify, CorpusConfig};
use mahler_core::io::{
    certificate_to_json, exact_polygon_to_json, parse_certificate, parse_polygon, polygon_to_json,
};
use mahler_core::reduction::{
    f_geometric_crosscheck, lemma33_chain_check, lemma33_formulas, theta_range, ChordFrame,
    Reducer, Tolerances, CHAIN_TOL, CROSSCHECK_TOL,
};
use mahler_core::scalar::{format_rational, format_sig12};
use mahler_core::support::DEFAULT_HAUSDORFF_GRID;
use mahler_core::{
    hausdorff_support_metric, polar, volume_product, AnyPolygon, Error, Rational, SymPolygon, Vec2,
};

use crate::svg::{render_svg, SvgOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Bounds enforced by `verify`.
const LOWER_TOL: f64 = 1e-6;
const UPPER_TOL: f64 = 1e-6;
/// `f'` must stay below this on the `lemma33` grid.
const F_PRIME_TOL: f64 = 1e-12;

#[derive(Parser, Debug)]
#[command(
    name = "mahler",
    version,
    about = "Polar duals and volume products of symmetric polygons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the polar polygon as JSON.
    Polar {
        input: PathBuf,
        /// Compute in exact rational arithmetic.
        #[arg(long)]
        exact: bool,
    },
    /// Print the area, the polar area and their product.
    Vp {
        input: PathBuf,
        #[arg(long)]
        exact: bool,
    },
    /// Reduce to a parallelogram and print the product sequence.
    Reduce {
        input: PathBuf,
        /// Directory for certificate.json and one polygon per step.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Also write an SVG per step (needs --trace).
        #[arg(long, requires = "trace")]
        svg: bool,
    },
    /// Check a random corpus, or a saved certificate with --certificate.
    Verify {
        #[arg(long, default_value_t = 1000)]
        count: usize,
        /// Vertex pairs per polygon (2n vertices before the hull).
        #[arg(long, default_value_t = 5)]
        pairs: usize,
        /// Draw the pair count uniformly from PAIRS..=MAX_PAIRS.
        #[arg(long)]
        max_pairs: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.1)]
        jitter: f64,
        #[arg(long, conflicts_with_all = ["count", "pairs", "max_pairs", "seed", "jitter"])]
        certificate: Option<PathBuf>,
    },
    /// Tabulate inscribed approximations of a body.
    Approx {
        /// disk, square, ellipse:A:B or pball:P (P may be inf).
        #[arg(long)]
        body: String,
        /// Comma-separated, increasing even sample counts.
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hausdorff distance between two polygons.
    Hausdorff {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = DEFAULT_HAUSDORFF_GRID)]
        grid: usize,
    },
    /// Tabulate the deletion-step closed forms against the geometry.
    Lemma33 {
        #[arg(long)]
        x0: f64,
        #[arg(long, default_value_t = 100)]
        grid: usize,
        /// Base polygon; defaults to the rectangle with corners (±x0, ±y0).
        #[arg(long)]
        polygon: Option<PathBuf>,
    },
    /// Draw a polygon with the unit circle.
    Render {
        input: PathBuf,
        output: PathBuf,
        #[arg(long)]
        polar: bool,
    },
}

/// An error together with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub error: anyhow::Error,
}

impl Failure {
    fn input(error: impl Into<anyhow::Error>) -> Self {
        Self {
            code: EXIT_INPUT,
            error: error.into(),
        }
    }

    fn check(error: impl Into<anyhow::Error>) -> Self {
        Self {
            code: EXIT_CHECK,
            error: error.into(),
        }
    }
}

/// Core errors split into bad input (2) and failed checks (1).
impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TooFewVertices(_)
            | Error::NotSymmetric(_)
            | Error::NotConvex(_)
            | Error::CollinearVertices(_)
            | Error::SingularMap(_)
            | Error::DomainError(_)
            | Error::DegenerateChord { .. }
            | Error::PreconditionViolated(_)
            | Error::Parse(_) => Failure::input(e),
            _ => Failure::check(e),
        }
    }
}

type CmdResult = Result<(), Failure>;

/// Parses `argv` (including the program name), runs the command and
/// returns its exit status. Output goes to `out`, diagnostics to `err`.
pub fn run_command<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {:#}", f.error);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Polar { input, exact } => cmd_polar(&input, exact, out),
        Command::Vp { input, exact } => cmd_vp(&input, exact, out),
        Command::Reduce { input, trace, svg } => cmd_reduce(&input, trace.as_deref(), svg, out),
        Command::Verify {
            certificate: Some(path),
            ..
        } => cmd_verify_certificate(&path, out),
        Command::Verify {
            count,
            pairs,
            max_pairs,
            seed,
            jitter,
            certificate: None,
        } => {
            let config = CorpusConfig {
                count,
                min_pairs: pairs,
                max_pairs: max_pairs.unwrap_or(pairs),
                seed,
                radius_jitter: jitter,
            };
            cmd_verify(&config, out)
        }
        Command::Approx { body, m, out: csv } => cmd_approx(&body, &m, csv.as_deref(), out),
        Command::Hausdorff { a, b, grid } => cmd_hausdorff(&a, &b, grid, out),
        Command::Lemma33 { x0, grid, polygon } => cmd_lemma33(x0, grid, polygon.as_deref(), out),
        Command::Render {
            input,
            output,
            polar,
        } => cmd_render(&input, &output, polar),
    }
}

fn emit(out: &mut dyn Write, text: impl std::fmt::Display) -> CmdResult {
    writeln!(out, "{text}").map_err(Failure::input)
}

fn read_polygon(path: &Path) -> Result<AnyPolygon, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::input)?;
    parse_polygon(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(Failure::input)
}

fn read_exact(path: &Path, exact: bool) -> Result<Option<SymPolygon<Rational>>, Failure> {
    Ok(match read_polygon(path)? {
        AnyPolygon::Exact(p) => Some(p),
        AnyPolygon::Float(p) if exact => Some(p.to_exact()?),
        AnyPolygon::Float(_) => None,
    })
}

fn write_file(path: &Path, contents: &str) -> CmdResult {
    fs::write(path, contents)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(Failure::input)
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn cmd_polar(input: &Path, exact: bool, out: &mut dyn Write) -> CmdResult {
    match read_exact(input, exact)? {
        Some(p) => emit(out, pretty(&exact_polygon_to_json(&polar(&p)?))),
        None => {
            let p = read_polygon(input)?.to_f64();
            emit(out, pretty(&polygon_to_json(&polar(&p)?)))
        }
    }
}

fn cmd_vp(input: &Path, exact: bool, out: &mut dyn Write) -> CmdResult {
    match read_exact(input, exact)? {
        Some(p) => {
            let r = volume_product(&p)?;
            emit(
                out,
                format!(
                    "V={} V*={} P={}",
                    format_rational(&r.v),
                    format_rational(&r.v_star),
                    format_rational(&r.product)
                ),
            )
        }
        None => {
            let r = volume_product(&read_polygon(input)?.to_f64())?;
            emit(
                out,
                format!(
                    "V={} V*={} P={}",
                    format_sig12(r.v),
                    format_sig12(r.v_star),
                    format_sig12(r.product)
                ),
            )
        }
    }
}

fn cmd_reduce(input: &Path, trace: Option<&Path>, svg: bool, out: &mut dyn Write) -> CmdResult {
    let p = read_polygon(input)?.to_f64();
    let tol = Tolerances::from_env();
    let cert = Reducer::new(tol).reduce_to_parallelogram(&p)?;
    if let Some(dir) = trace {
        fs::create_dir_all(dir)
            .with_context(|| format!("creating {}", dir.display()))
            .map_err(Failure::input)?;
        write_file(
            &dir.join("certificate.json"),
            &pretty(&certificate_to_json(&cert)),
        )?;
        for (k, frame) in cert.replay()?.iter().enumerate() {
            write_file(
                &dir.join(format!("frame_{k:03}.json")),
                &pretty(&polygon_to_json(frame)),
            )?;
            if svg {
                write_file(
                    &dir.join(format!("frame_{k:03}.svg")),
                    &render_svg(
                        frame,
                        &SvgOptions {
                            eps_circle: tol.circle,
                            ..SvgOptions::default()
                        },
                    ),
                )?;
            }
        }
    }
    let seq: Vec<String> = cert
        .product_sequence()
        .into_iter()
        .map(format_sig12)
        .collect();
    emit(out, format!("products: {}", seq.join(" ")))?;
    emit(
        out,
        format!(
            "steps: {} deletions: {}",
            cert.steps.len(),
            cert.deletion_count()
        ),
    )?;
    cert.verify(&tol)?;
    emit(out, "certificate: ok")
}

fn cmd_verify_certificate(path: &Path, out: &mut dyn Write) -> CmdResult {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::input)?;
    let cert = parse_certificate(&text)?;
    let check = cert.verify(&Tolerances::from_env())?;
    // the recorded steps must also reproduce the recorded final polygon
    let frames = cert.replay()?;
    if !frames
        .last()
        .is_some_and(|f| f.approx_eq(&cert.final_polygon))
    {
        return Err(Failure::check(anyhow!(
            "replaying the steps does not reach the recorded final polygon"
        )));
    }
    emit(
        out,
        format!(
            "certificate: ok input={} final={} deletions={}",
            format_sig12(check.input_product),
            format_sig12(check.final_product),
            check.deletions
        ),
    )
}

fn cmd_verify(config: &CorpusConfig, out: &mut dyn Write) -> CmdResult {
    if config.count == 0 {
        return Err(Failure::input(anyhow!("--count must be at least 1")));
    }
    config.validate()?;
    let s = corpus_verify(config, Some(Tolerances::from_env()));
    let json = serde_json::to_value(&s).expect("summary serializes");
    emit(out, pretty(&json))?;
    if let Some(f) = s.failures.first() {
        return Err(Failure::check(anyhow!(
            "{} failures, first at polygon {}: {}",
            s.failures.len(),
            f.index,
            f.error
        )));
    }
    if s.min_product < 8.0 - LOWER_TOL {
        return Err(Failure::check(anyhow!(
            "product {} below 8 at polygon {}",
            s.min_product,
            s.argmin
        )));
    }
    if s.max_product > PI * PI + UPPER_TOL {
        return Err(Failure::check(anyhow!(
            "product {} above π²",
            s.max_product
        )));
    }
    Ok(())
}

fn cmd_approx(body: &str, m: &[usize], csv: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    let body: SampledBody = body.parse()?;
    let table = continuity_experiment(&body, m)?;
    let text = table.to_csv();
    match csv {
        Some(path) => {
            write_file(path, &text)?;
            for r in &table.rows {
                emit(
                    out,
                    format!("m={} product={}", r.m, format_sig12(r.product)),
                )?;
            }
            Ok(())
        }
        None => write!(out, "{text}").map_err(Failure::input),
    }
}

fn cmd_hausdorff(a: &Path, b: &Path, grid: usize, out: &mut dyn Write) -> CmdResult {
    let p = read_polygon(a)?.to_f64();
    let q = read_polygon(b)?.to_f64();
    let d = hausdorff_support_metric(&p, &q, grid)?;
    emit(out, format_sig12(d))
}

fn cmd_lemma33(x0: f64, grid: usize, polygon: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    if !(x0 > 0.0 && x0 < 1.0) {
        return Err(Failure::input(anyhow!("--x0 must lie in (0, 1)")));
    }
    if grid < 2 {
        return Err(Failure::input(anyhow!("--grid must be at least 2")));
    }
    let y0 = (1.0 - x0 * x0).sqrt();
    let base = match polygon {
        Some(path) => read_polygon(path)?.to_f64(),
        None => SymPolygon::new(vec![
            Vec2::new(x0, y0),
            Vec2::new(-x0, y0),
            Vec2::new(-x0, -y0),
            Vec2::new(x0, -y0),
        ])?,
    };
    let frame = ChordFrame::locate(&base, x0, y0, Tolerances::from_env().circle)?;
    let vp = volume_product(&base)?;
    let (lo, hi) = theta_range(x0, y0);
    emit(out, "theta,f,f_prime,g,geometric,discrepancy")?;
    let mut worst_prime = f64::NEG_INFINITY;
    for k in 0..grid {
        let theta = lo + (hi - lo) * k as f64 / (grid - 1) as f64;
        let rec = lemma33_formulas(x0, y0, vp.v, vp.v_star, theta)?;
        let cross = f_geometric_crosscheck(&base, &frame, theta)?;
        worst_prime = worst_prime.max(rec.f_prime);
        emit(
            out,
            format!(
                "{},{},{},{},{},{}",
                format_sig12(theta),
                format_sig12(rec.f),
                format_sig12(rec.f_prime),
                format_sig12(rec.g_of_t),
                format_sig12(cross.geometric),
                format_sig12(cross.discrepancy)
            ),
        )?;
    }
    let chain = lemma33_chain_check(x0, y0, &base)?;
    emit(
        out,
        format!(
            "# max f' = {}, worst chain margin = {} (tolerances {F_PRIME_TOL:e}, {CHAIN_TOL:e}, crosscheck {CROSSCHECK_TOL:e})",
            format_sig12(worst_prime),
            format_sig12(chain.worst())
        ),
    )?;
    if worst_prime > F_PRIME_TOL {
        return Err(Failure::check(anyhow!("f' reaches {worst_prime:e}")));
    }
    Ok(())
}

fn cmd_render(input: &Path, output: &Path, polar: bool) -> CmdResult {
    let p = read_polygon(input)?.to_f64();
    let options = SvgOptions {
        show_polar: polar,
        eps_circle: Tolerances::from_env().circle,
        ..SvgOptions::default()
    };
    write_file(output, &render_svg(&p, &options))
}
