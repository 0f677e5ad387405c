//! Thin command-line wrapper: interpolate a black box from an expression or
//! `.poly` file, run the verification suites, or emit benchmark tables.
//!
//! Exit codes: 0 success, 1 property failure, 2 parse/config error,
//! 3 violated bounds, 4 ring too small.

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;

use sparse_interp::report::{Algorithm, InterpolationReport};
use sparse_interp::suites::{self, Scope};
use sparse_interp::univar::Backend;
use sparse_interp::{
    gen, interpolate_base, interpolate_mod, parse_expr, parse_poly_file, BlackBox, Error, Ring,
};

#[derive(Parser)]
#[command(
    name = "interp",
    about = "Deterministic sparse multivariate polynomial interpolation from black-box oracles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recover a polynomial from an expression or .poly file.
    Interpolate(InterpolateArgs),
    /// Run seeded instance families and print a CSV of probe statistics.
    Bench(BenchArgs),
    /// Run the randomized property suites.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct InterpolateArgs {
    /// Algorithm: base (fixed prime, varying base) or modulus (varying prime).
    #[arg(long = "alg", default_value = "base")]
    algorithm: Algorithm,
    /// Univariate backend: lagrange or bot.
    #[arg(long, default_value = "lagrange")]
    backend: Backend,
    /// Coefficient ring: zz or fq:<q>. Defaults to $INTERP_RING, then zz.
    #[arg(long)]
    ring: Option<String>,
    /// Number of variables (required with --expr; checked against --file).
    #[arg(short = 'n', long)]
    arity: Option<usize>,
    /// Term bound T >= #f.
    #[arg(short = 'T', long)]
    term_bound: u64,
    /// Degree bound D > deg f.
    #[arg(short = 'D', long)]
    degree_bound: u64,
    /// Inline expression in x1..xn.
    #[arg(long, conflicts_with = "file")]
    expr: Option<String>,
    /// Path to a .poly file.
    #[arg(long)]
    file: Option<std::path::PathBuf>,
    /// Output format.
    #[arg(long, default_value = "text")]
    format: Format,
    /// Measure and include wall time (breaks byte-for-byte determinism).
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format `{other}`; use text, json, or csv")),
        }
    }
}

#[derive(Args)]
struct BenchArgs {
    /// Generator seed, recorded in the CSV header.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long = "alg", default_value = "base")]
    algorithm: Algorithm,
    #[arg(long, default_value = "bot")]
    backend: Backend,
    /// Ring: zz, fq:<q>, or fq:auto (smallest admissible per instance).
    #[arg(long)]
    ring: Option<String>,
    /// Comma-separated variable counts.
    #[arg(long = "n-list", default_value = "2")]
    n_list: String,
    /// Comma-separated term counts.
    #[arg(long = "t-list", default_value = "1,2,4")]
    t_list: String,
    /// Comma-separated degree bounds.
    #[arg(long = "d-list", default_value = "3")]
    d_list: String,
    /// Instances per (n, t, D) cell.
    #[arg(long, default_value_t = 1)]
    count: u64,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    scope: Scope,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Instances per suite; 0 is a vacuous pass.
    #[arg(long, default_value_t = 100)]
    count: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Interpolate(args) => cmd_interpolate(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let (kind, code) = classify(&e);
            eprintln!("{{\"error\":\"{kind}\",\"message\":\"{}\"}}", escape(&e.to_string()));
            code
        }
    }
}

fn classify(e: &Error) -> (&'static str, ExitCode) {
    match e {
        Error::Parse { .. } | Error::UnknownVariable { .. } | Error::NotPrime(_) => {
            ("parse_error", ExitCode::from(2))
        }
        Error::ArityMismatch { .. } | Error::RingMismatch(..) => {
            ("config_error", ExitCode::from(2))
        }
        Error::BoundsViolated(_) | Error::BackendFailure(_) => {
            ("bounds_violated", ExitCode::from(3))
        }
        Error::RingTooSmall { .. } => ("ring_too_small", ExitCode::from(4)),
        Error::SingularSystem(_) | Error::PreconditionViolated(_) => {
            ("internal_error", ExitCode::from(1))
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn parse_ring(spec: Option<&str>) -> Result<Ring, Error> {
    let from_env = std::env::var("INTERP_RING").ok();
    let spec = match (spec, from_env.as_deref()) {
        (Some(s), _) => s.to_string(),
        (None, Some(s)) => s.to_string(),
        (None, None) => "zz".to_string(),
    };
    if spec == "zz" {
        return Ok(Ring::integers());
    }
    if let Some(q) = spec.strip_prefix("fq:") {
        let q: num_bigint::BigInt = q.parse().map_err(|_| Error::Parse {
            offset: 0,
            message: format!("bad modulus in ring spec `{spec}`"),
        })?;
        return Ring::prime_field(q);
    }
    Err(Error::Parse {
        offset: 0,
        message: format!("bad ring spec `{spec}`; use zz or fq:<q>"),
    })
}

fn cmd_interpolate(args: InterpolateArgs) -> Result<ExitCode, Error> {
    let (bb, arity) = match (&args.expr, &args.file) {
        (Some(text), None) => {
            let arity = args.arity.ok_or_else(|| Error::Parse {
                offset: 0,
                message: "--expr requires -n <arity>".into(),
            })?;
            let ring = parse_ring(args.ring.as_deref())?;
            let tree = parse_expr(text, arity, &ring)?;
            (tree.to_blackbox(), arity)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
                offset: 0,
                message: format!("cannot read {}: {e}", path.display()),
            })?;
            let file = parse_poly_file(&text)?;
            if let Some(n) = args.arity {
                if n != file.arity {
                    return Err(Error::ArityMismatch {
                        expected: file.arity,
                        got: n,
                    });
                }
            }
            if let Some(ring_spec) = args.ring.as_deref() {
                let ring = parse_ring(Some(ring_spec))?;
                if ring != file.ring {
                    return Err(Error::RingMismatch(ring.to_string(), file.ring.to_string()));
                }
            }
            (file.to_blackbox(), file.arity)
        }
        _ => {
            return Err(Error::Parse {
                offset: 0,
                message: "exactly one of --expr or --file is required".into(),
            })
        }
    };

    let started = Instant::now();
    let mut report = run_driver(&bb, args.algorithm, arity, args.term_bound, args.degree_bound, args.backend)?;
    if args.timing {
        report.wall_ms = Some(started.elapsed().as_secs_f64() * 1e3);
    }

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match args.format {
        Format::Text => {
            writeln!(out, "{}", report.poly).expect("stdout");
            writeln!(out, "{}", report.summary()).expect("stdout");
            for round in &report.rounds {
                writeln!(
                    out,
                    "  round {}: alpha={} selected={} (p={}) candidates={} accepted={}",
                    round.round,
                    round.alpha,
                    round.selected_index,
                    round.selected_prime,
                    round.candidates,
                    round.accepted
                )
                .expect("stdout");
            }
        }
        Format::Json => {
            writeln!(out, "{}", report.to_json()).expect("stdout");
        }
        Format::Csv => {
            writeln!(out, "n,T,D,ring,algorithm,probes,univariate_count,rounds,ms,poly")
                .expect("stdout");
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},\"{}\"",
                report.arity,
                report.term_bound,
                report.degree_bound,
                report.ring,
                report.algorithm,
                report.probes,
                report.univariate_interpolations,
                report.rounds.len(),
                report.wall_ms.map(|t| format!("{t:.3}")).unwrap_or_default(),
                report.poly
            )
            .expect("stdout");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_driver(
    bb: &BlackBox,
    algorithm: Algorithm,
    arity: usize,
    term_bound: u64,
    degree_bound: u64,
    backend: Backend,
) -> Result<InterpolationReport, Error> {
    match algorithm {
        Algorithm::Base => interpolate_base(bb, arity, term_bound, degree_bound, backend),
        Algorithm::Modulus => interpolate_mod(bb, arity, term_bound, degree_bound, backend),
    }
}

fn parse_list(text: &str, what: &str) -> Result<Vec<u64>, Error> {
    text.split(',')
        .map(|part| {
            part.trim().parse::<u64>().map_err(|_| Error::Parse {
                offset: 0,
                message: format!("bad {what} list entry `{part}`"),
            })
        })
        .collect()
}

fn cmd_bench(args: BenchArgs) -> Result<ExitCode, Error> {
    let n_list = parse_list(&args.n_list, "n")?;
    let t_list = parse_list(&args.t_list, "t")?;
    let d_list = parse_list(&args.d_list, "D")?;
    let ring_spec = args
        .ring
        .clone()
        .or_else(|| std::env::var("INTERP_RING").ok())
        .unwrap_or_else(|| "zz".to_string());

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(args.seed);
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "# seed: {}", args.seed).expect("stdout");
    writeln!(out, "n,T,D,ring,algorithm,probes,univariate_count,rounds,ms").expect("stdout");
    for &n in &n_list {
        for &t in &t_list {
            for &d in &d_list {
                for _ in 0..args.count {
                    let arity = usize::try_from(n).expect("fits usize");
                    if arity == 0 || d == 0 {
                        return Err(Error::Parse {
                            offset: 0,
                            message: "n and D entries must be positive".into(),
                        });
                    }
                    let terms = gen::monomials_below(arity, d).min(t);
                    let ring = match ring_spec.as_str() {
                        "fq:auto" => Ring::prime_field(suites::smallest_admissible_prime(
                            arity, terms, d,
                        ))?,
                        other => parse_ring(Some(other))?,
                    };
                    let f = gen::random_sparse(&mut rng, &ring, arity, terms, d);
                    let bb = BlackBox::from_sparse(f);
                    let started = Instant::now();
                    let report = run_driver(&bb, args.algorithm, arity, terms, d, args.backend)?;
                    let ms = started.elapsed().as_secs_f64() * 1e3;
                    writeln!(
                        out,
                        "{},{},{},{},{},{},{},{},{ms:.3}",
                        arity,
                        terms,
                        d,
                        report.ring,
                        report.algorithm,
                        report.probes,
                        report.univariate_interpolations,
                        report.rounds.len()
                    )
                    .expect("stdout");
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    if args.count == 0 {
        eprintln!("warning: --count 0 runs nothing; vacuous pass");
        println!("verify: PASS (vacuous)");
        return Ok(ExitCode::SUCCESS);
    }
    let mut failed = false;
    if matches!(args.scope, Scope::Lemmas | Scope::All) {
        match suites::run_lemma_suite(args.seed, args.count) {
            Ok(()) => println!("lemma suite: PASS ({} instances)", args.count),
            Err(cex) => {
                eprintln!("{cex}");
                println!("lemma suite: FAIL");
                failed = true;
            }
        }
    }
    if matches!(args.scope, Scope::Roundtrip | Scope::All) {
        match suites::run_roundtrip_suite(args.seed, args.count) {
            Ok(()) => println!("roundtrip suite: PASS ({} instances)", args.count),
            Err(cex) => {
                eprintln!("{cex}");
                println!("roundtrip suite: FAIL");
                failed = true;
            }
        }
    }
    Ok(if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}
