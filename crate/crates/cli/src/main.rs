//! `bsdft` command-line front end.
//!
//! Exit codes: 0 ok, 1 usage or validation error, 2 solver failure,
//! 3 verification failure.

mod io;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use bsdft::classic::{
    counted_node_limit, is_monotone_convergent, limit_convergence, CONVERGENCE_NOISE_FLOOR,
};
use bsdft::multivariate::DEFAULT_SIZE_CAP;
use bsdft::spectral::node_bracket;
use bsdft::{
    build_kernel, build_kernel_mv, classic_kernel, classic_nodes, enumerate_partitions,
    run_verification, solve_spectrum, BoundaryParams, ClassicKind, Error, UnitaryKernel,
    VerifyConfig, DEFAULT_TOL,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use io::{fmt_num, index_header, matrix_csv, parse_vector, write_vector};

#[derive(Parser, Debug)]
#[command(
    name = "bsdft",
    version,
    about = "Bernstein-Szegő discrete Fourier transforms"
)]
struct Cli {
    /// Worker threads for kernel assembly (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Grid order m (the grid is {0, …, m}).
    #[arg(long)]
    m: usize,

    /// Boundary parameters `p-,q-,p+,q+` with -1 < p <= q < 1 on each side.
    /// Drawn at random from --seed when omitted.
    #[arg(long, allow_hyphen_values = true)]
    params: Option<String>,

    /// Root-finder tolerance.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,

    /// Seed for randomly drawn parameters and test vectors.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct MultiArgs {
    /// Number of particles n (partitions with at most n parts).
    #[arg(long, default_value_t = 1)]
    n: usize,

    /// Largest lattice size the multivariate kernel may reach.
    #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
    cap: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectral points, H, eigenvalues and analytic brackets as CSV.
    Spectrum {
        #[command(flatten)]
        common: Common,
    },
    /// Dense univariate kernel as CSV, rows indexed by l̂.
    Kernel {
        #[command(flatten)]
        common: Common,
    },
    /// Dense multivariate kernel as CSV with partition-label header.
    MultiKernel {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        multi: MultiArgs,
    },
    /// Apply the forward or inverse transform to a vector file.
    Transform {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        multi: MultiArgs,
        #[arg(long, value_enum, default_value_t = Direction::Forward)]
        direction: Direction,
        /// Input vector file.
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Run the self-consistency checks and print a pass/fail table.
    Verify {
        #[arg(long, default_value_t = 6)]
        m: usize,
        #[command(flatten)]
        multi: MultiArgs,
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Shift the first spectral point before assembly (sensitivity control).
        #[arg(long, hide = true, allow_hyphen_values = true)]
        corrupt_xi: Option<f64>,
    },
    /// Closed-form classic kernel, nodes and limit convergence of the generic family.
    Classic {
        /// One of dct-1 … dct-8, dst-1 … dst-8.
        kind: String,
        #[arg(long)]
        m: usize,
        /// Decreasing ε values for the limit-convergence sequence.
        #[arg(long, value_delimiter = ',', default_values_t = [1e-2, 1e-3, 1e-4])]
        eps: Vec<f64>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Direction {
    Forward,
    Inverse,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Solver(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SolverFailure { .. } => Failure::Solver(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Solver(_) => 2,
            Failure::Verification(_) => 3,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(msg) => eprintln!("error: {msg}"),
                Failure::Solver(msg) => eprintln!("solver failure: {msg}"),
                Failure::Verification(msg) => eprintln!("verification failed: {msg}"),
            }
            ExitCode::from(f.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(Failure::Usage("--threads must be >= 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::Spectrum { common } => cmd_spectrum(&common),
        Command::Kernel { common } => cmd_kernel(&common),
        Command::MultiKernel { common, multi } => cmd_multi_kernel(&common, &multi),
        Command::Transform {
            common,
            multi,
            direction,
            input,
        } => cmd_transform(&common, &multi, direction, &input),
        Command::Verify {
            m,
            multi,
            params,
            tol,
            seed,
            out,
            corrupt_xi,
        } => {
            let cfg = VerifyConfig {
                m,
                n: multi.n,
                params: resolve_params(params.as_deref(), seed)?,
                tol,
                seed,
                cap: multi.cap,
                corrupt_xi,
            };
            cmd_verify(&cfg, out.as_ref())
        }
        Command::Classic {
            kind,
            m,
            eps,
            tol,
            out,
        } => cmd_classic(&kind, m, &eps, tol, out.as_ref()),
    }
}

fn resolve_params(text: Option<&str>, seed: u64) -> Result<BoundaryParams, Failure> {
    match text {
        Some(s) => Ok(s.parse()?),
        None => Ok(BoundaryParams::sample(&mut ChaCha8Rng::seed_from_u64(seed))),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_spectrum(c: &Common) -> Result<(), Failure> {
    let params = resolve_params(c.params.as_deref(), c.seed)?;
    let spec = solve_spectrum(c.m, &params, c.tol)?;
    let mut out = String::from("l_hat,xi,H,eigenvalue,bracket_lo,bracket_hi\n");
    for (l_hat, (&xi, &h)) in spec.xi().iter().zip(spec.h()).enumerate() {
        let (lo, hi) = node_bracket(c.m, &params, l_hat);
        let _ = writeln!(
            out,
            "{l_hat},{},{},{},{},{}",
            fmt_num(xi),
            fmt_num(h),
            fmt_num(2.0 * xi.cos()),
            fmt_num(lo),
            fmt_num(hi)
        );
    }
    emit(&out, c.out.as_ref())
}

fn cmd_kernel(c: &Common) -> Result<(), Failure> {
    let params = resolve_params(c.params.as_deref(), c.seed)?;
    let k = build_kernel(c.m, &params, c.tol)?;
    emit(
        &matrix_csv(k.matrix(), &index_header(k.dim())),
        c.out.as_ref(),
    )
}

fn cmd_multi_kernel(c: &Common, multi: &MultiArgs) -> Result<(), Failure> {
    let params = resolve_params(c.params.as_deref(), c.seed)?;
    let mv = build_kernel_mv(c.m, multi.n, &params, c.tol, multi.cap)?;
    emit(
        &matrix_csv(mv.matrix(), &mv.partitions().labels()),
        c.out.as_ref(),
    )
}

fn cmd_transform(
    c: &Common,
    multi: &MultiArgs,
    direction: Direction,
    input: &PathBuf,
) -> Result<(), Failure> {
    let params = resolve_params(c.params.as_deref(), c.seed)?;
    let text = std::fs::read_to_string(input)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", input.display())))?;

    let (result, complex, partitions) = if multi.n == 1 {
        let file = parse_vector(&text, None).map_err(Failure::Usage)?;
        let k = build_kernel(c.m, &params, c.tol)?;
        let f = |v: &[Complex64]| match direction {
            Direction::Forward => k.forward_complex(v),
            Direction::Inverse => k.inverse_complex(v),
        };
        (f(&file.values)?, file.complex, None)
    } else {
        let parts = enumerate_partitions(c.m, multi.n, multi.cap)?;
        let file = parse_vector(&text, Some(&parts)).map_err(Failure::Usage)?;
        let mv = build_kernel_mv(c.m, multi.n, &params, c.tol, multi.cap)?;
        let f = |v: &[Complex64]| match direction {
            Direction::Forward => mv.forward_complex(v),
            Direction::Inverse => mv.inverse_complex(v),
        };
        (f(&file.values)?, file.complex, Some(parts))
    };
    emit(
        &write_vector(&result, complex, partitions.as_ref()),
        c.out.as_ref(),
    )
}

fn cmd_verify(cfg: &VerifyConfig, out: Option<&PathBuf>) -> Result<(), Failure> {
    let report = run_verification(cfg)?;
    let header = format!(
        "# m={} n={} params={} seed={}\n",
        cfg.m, cfg.n, cfg.params, cfg.seed
    );
    emit(&format!("{header}{report}"), out)?;
    if report.passed() {
        Ok(())
    } else {
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.name.as_str())
            .collect();
        Err(Failure::Verification(failed.join(", ")))
    }
}

fn cmd_classic(
    kind: &str,
    m: usize,
    eps: &[f64],
    tol: f64,
    out: Option<&PathBuf>,
) -> Result<(), Failure> {
    let kind: ClassicKind = kind.parse()?;
    let kernel = classic_kernel(kind, m)?;
    let errors = limit_convergence(kind, m, eps, tol)?;

    let mut text = format!("# kernel {kind} m={m}\n");
    text.push_str(&matrix_csv(&kernel, &index_header(kernel.dim())));
    text.push_str("# nodes\nl_hat,xi,counted_limit\n");
    for l_hat in 0..=m {
        let _ = writeln!(
            text,
            "{l_hat},{},{}",
            fmt_num(classic_nodes(kind, m, l_hat)?),
            fmt_num(counted_node_limit(kind, m, l_hat))
        );
    }
    text.push_str("# convergence\neps,error\n");
    for (e, err) in eps.iter().zip(&errors) {
        let _ = writeln!(text, "{},{}", fmt_num(*e), fmt_num(*err));
    }
    let _ = writeln!(
        text,
        "# monotone={}",
        is_monotone_convergent(&errors, CONVERGENCE_NOISE_FLOOR)
    );
    emit(&text, out)
}
