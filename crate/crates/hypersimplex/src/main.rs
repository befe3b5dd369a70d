//! Command-line front-end: constant tables, verification suites, skeleton
//! distance reports, the disphenoid census, and SVG figures.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex;

use hypersimplex::figure::{
    config_hyperplanes_svg, disphenoid_maximizers_svg, incentred_model_svg, HyperplanePairCase,
};
use hypersimplex::simplex::{incenter_inradius, regular_simplex, Simplex, SimplexJson};
use hypersimplex::skeleton::{
    delta_n_m, dist_to_face, disphenoid_maximizer_census, enumerate_local_maximizers,
    max_inradius_constant, mu_edge_constant, mu_edge_limit, Face, OptimizerOptions,
};
use hypersimplex::verify::run_suite;

#[derive(Parser)]
#[command(name = "hypersimplex", version, about = "Simplices in compactified hyperbolic space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FigureKind {
    ConfigHyperplanes,
    IncentredModel,
    DisphenoidMaximizers,
}

#[derive(Clone, Copy, ValueEnum)]
enum PairCase {
    Intersecting,
    Asymptotic,
    Ultraparallel,
}

#[derive(Subcommand)]
enum Command {
    /// Print the extremal constants per dimension with computed residuals.
    Constants {
        /// Dimension range A..B (inclusive).
        #[arg(long, default_value = "2..10")]
        n: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run a named property suite.
    Verify {
        /// One of: gram, inradius, icl, skeleton, disphenoid, hull-bound.
        suite: String,
        #[arg(long, default_value = "2..4")]
        n: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Skeleton distance report for a simplex read from JSON.
    Delta {
        #[arg(long)]
        simplex: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        restarts: Option<usize>,
        /// Also run the subset-driven local maximizer enumeration.
        #[arg(long)]
        enumerate: bool,
    },
    /// Count the (local, global) edge-distance maximizers of a disphenoid.
    Census {
        /// Complex parameter as RE,IM.
        #[arg(long)]
        z: String,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Emit a deterministic SVG figure.
    Figure {
        kind: FigureKind,
        /// Hyperplane pair case for config-hyperplanes.
        #[arg(long, value_enum)]
        case: Option<PairCase>,
        /// Disphenoid parameter RE,IM for disphenoid-maximizers.
        #[arg(long)]
        z: Option<String>,
        /// Regular-family parameter for incentred-model (default: ideal).
        #[arg(long)]
        c: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
}

/// 15 significant digits, '.' decimal separator.
fn sig15(v: f64) -> String {
    format!("{v:.14e}")
}

fn parse_range(text: &str) -> Result<(usize, usize), String> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| format!("range must look like A..B, got '{text}'"))?;
    let lo: usize = a.trim().parse().map_err(|_| format!("bad range start '{a}'"))?;
    let hi: usize = b.trim().parse().map_err(|_| format!("bad range end '{b}'"))?;
    if lo < 2 || hi > 64 || lo > hi {
        return Err(format!("range {lo}..{hi} must lie within 2..64"));
    }
    Ok((lo, hi))
}

fn parse_complex(text: &str) -> Result<Complex<f64>, String> {
    let (re, im) = text
        .split_once(',')
        .ok_or_else(|| format!("complex parameter must look like RE,IM, got '{text}'"))?;
    let re: f64 = re.trim().parse().map_err(|_| format!("bad real part '{re}'"))?;
    let im: f64 = im.trim().parse().map_err(|_| format!("bad imaginary part '{im}'"))?;
    Ok(Complex::new(re, im))
}

fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("HYPERSIMPLEX_SEED")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(0)
}

const USAGE_ERROR: u8 = 2;
const FAILURE: u8 = 1;

fn usage(msg: &str) -> u8 {
    eprintln!("error: {msg}");
    USAGE_ERROR
}

fn failure(msg: &str) -> u8 {
    eprintln!("error: {msg}");
    FAILURE
}

fn cmd_constants(range: &str, format: Format) -> u8 {
    let (lo, hi) = match parse_range(range) {
        Ok(r) => r,
        Err(e) => return usage(&e),
    };
    let mut rows = Vec::new();
    for n in lo..=hi {
        let s = match regular_simplex(n, 1.0 / (n as f64 - 1.0)) {
            Ok(s) => s,
            Err(e) => return failure(&format!("regular simplex n={n}: {e}")),
        };
        let ins = incenter_inradius(&s);
        let face = Face::new(&s, vec![0, 1]).expect("edge of a total simplex");
        let mu_computed = dist_to_face(&ins.incenter, &face).value;
        let inradius_ref = max_inradius_constant(n);
        let mu_ref = mu_edge_constant(n);
        rows.push((
            n,
            inradius_ref,
            mu_ref,
            ins.inradius,
            mu_computed,
            (ins.inradius - inradius_ref).abs(),
            (mu_computed - mu_ref).abs(),
        ));
    }
    let gap = mu_edge_limit() - mu_edge_constant(hi);
    match format {
        Format::Csv => {
            println!(
                "n,inradius_constant,mu_1_constant,computed_inradius,computed_mu_1,inradius_residual,mu_1_residual"
            );
            for (n, a, b, c, d, e, f) in &rows {
                println!(
                    "{n},{},{},{},{},{},{}",
                    sig15(*a),
                    sig15(*b),
                    sig15(*c),
                    sig15(*d),
                    sig15(*e),
                    sig15(*f)
                );
            }
            println!("inf,,{},,,,{}", sig15(mu_edge_limit()), sig15(gap));
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|(n, a, b, c, d, e, f)| {
                    serde_json::json!({
                        "n": n,
                        "inradius_constant": a,
                        "mu_1_constant": b,
                        "computed_inradius": c,
                        "computed_mu_1": d,
                        "inradius_residual": e,
                        "mu_1_residual": f,
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "rows": rows,
                "mu_1_limit": mu_edge_limit(),
                "gap_at_max_n": gap,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
    0
}

fn cmd_verify(suite: &str, range: &str, seed: Option<u64>, samples: usize) -> u8 {
    let (lo, hi) = match parse_range(range) {
        Ok(r) => r,
        Err(e) => return usage(&e),
    };
    let seed = resolve_seed(seed);
    let report = match run_suite(suite, lo, hi, seed, samples) {
        Ok(r) => r,
        Err(e) => return usage(&e.to_string()),
    };
    for c in &report.checks {
        println!(
            "{} {} (worst residual {})",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            sig15(c.worst_residual)
        );
        if !c.passed {
            eprintln!(
                "{}",
                serde_json::to_string(&c).expect("serializable check result")
            );
        }
    }
    if report.passed() {
        0
    } else {
        FAILURE
    }
}

fn cmd_delta(
    path: &PathBuf,
    m: usize,
    seed: Option<u64>,
    restarts: Option<usize>,
    enumerate: bool,
) -> u8 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return failure(&format!("reading {}: {e}", path.display())),
    };
    let doc: SimplexJson = match serde_json::from_str(&text) {
        Ok(d) => d,
        Err(e) => return usage(&format!("parsing simplex JSON: {e}")),
    };
    let simplex = match Simplex::from_json(&doc) {
        Ok(s) => s,
        Err(e) => return usage(&format!("building simplex: {e}")),
    };
    if m < 1 || m >= simplex.dim() {
        return usage(&format!("m = {m} must satisfy 1 <= m < n = {}", simplex.dim()));
    }
    let opts = OptimizerOptions {
        seed: resolve_seed(seed),
        restarts,
        ..Default::default()
    };
    let report = if enumerate {
        enumerate_local_maximizers(&simplex, m, &opts)
    } else {
        delta_n_m(&simplex, m, &opts)
    };
    match report {
        Ok(r) => {
            println!("{}", serde_json::to_string_pretty(&r).expect("serializable report"));
            0
        }
        Err(e) => failure(&e.to_string()),
    }
}

fn cmd_census(z: &str, seed: Option<u64>) -> u8 {
    let z = match parse_complex(z) {
        Ok(z) => z,
        Err(e) => return usage(&e),
    };
    let opts = OptimizerOptions {
        seed: resolve_seed(seed),
        restarts: Some(48),
        ..Default::default()
    };
    match disphenoid_maximizer_census(z, &opts) {
        Ok((local, global)) => {
            let doc = serde_json::json!({
                "z": [z.re, z.im],
                "local": local,
                "global": global,
            });
            println!("{}", serde_json::to_string(&doc).expect("serializable"));
            0
        }
        Err(e) => usage(&e.to_string()),
    }
}

fn cmd_figure(
    kind: FigureKind,
    case: Option<PairCase>,
    z: Option<String>,
    c: Option<f64>,
    out: &PathBuf,
) -> u8 {
    let svg = match kind {
        FigureKind::ConfigHyperplanes => {
            let case = match case {
                Some(PairCase::Intersecting) => HyperplanePairCase::Intersecting,
                Some(PairCase::Asymptotic) => HyperplanePairCase::Asymptotic,
                Some(PairCase::Ultraparallel) => HyperplanePairCase::Ultraparallel,
                None => return usage("config-hyperplanes needs --case"),
            };
            config_hyperplanes_svg(case)
        }
        FigureKind::IncentredModel => incentred_model_svg(c.unwrap_or(1.0)),
        FigureKind::DisphenoidMaximizers => {
            let z = match z {
                Some(text) => match parse_complex(&text) {
                    Ok(z) => z,
                    Err(e) => return usage(&e),
                },
                None => return usage("disphenoid-maximizers needs --z RE,IM"),
            };
            disphenoid_maximizers_svg(z)
        }
    };
    match svg {
        Ok(svg) => match std::fs::write(out, svg) {
            Ok(()) => 0,
            Err(e) => failure(&format!("writing {}: {e}", out.display())),
        },
        Err(e) => usage(&e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Constants { n, format } => cmd_constants(&n, format),
        Command::Verify { suite, n, seed, samples } => cmd_verify(&suite, &n, seed, samples),
        Command::Delta { simplex, m, seed, restarts, enumerate } => {
            cmd_delta(&simplex, m, seed, restarts, enumerate)
        }
        Command::Census { z, seed } => cmd_census(&z, seed),
        Command::Figure { kind, case, z, c, out } => cmd_figure(kind, case, z, c, &out),
    };
    ExitCode::from(code)
}
