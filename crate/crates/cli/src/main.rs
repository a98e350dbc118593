//! `spinsqueeze`: squeezing curves, figure datasets, short-time analysis
//! and self-verification from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 bad input, 3 formula
//! used outside its size range, 4 I/O failure.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use spin_squeeze::analytic::{
    linear_grid, sample, xi_pi4_general, QuadratureAngle, SqueezingCurve, SqueezingModel,
};
use spin_squeeze::figures::figure;
use spin_squeeze::short_time::{aggregate, optimal_orientation, PairCouplingSet};
use spin_squeeze::verify::{self, VerifyLevel};
use spin_squeeze::{
    make_dimerized, make_uniform, sample_random, CouplingChain, DimerSpec, Error,
    RandomChainSpec,
};

/// Default output directory for `figures` when `--out-dir` is absent.
const OUT_DIR_VAR: &str = "SPINSQUEEZE_OUT_DIR";

#[derive(Parser)]
#[command(name = "spinsqueeze", version, about = "Spin squeezing in Ising-coupled spin rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample xi^2(t) of one ring and write `chi_t,xi2` CSV.
    Curve(CurveArgs),
    /// Write the datasets of figures 1-3 as CSV files.
    Figures {
        /// Figures to write (1, 2, 3); all three when omitted.
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        which: Vec<u8>,
        /// Output directory [default: $SPINSQUEEZE_OUT_DIR, else `.`]
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Analyze the short-time noise of a pairwise Hamiltonian read from JSON.
    Shorttime {
        /// Pair-coupling file: {"n": N, "terms": [{"k", "l", "m": 3x3}]}
        file: PathBuf,
    },
    /// Check closed forms against the exact simulation.
    Verify {
        #[arg(long, value_enum, default_value_t = Level::Fast)]
        level: Level,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Fast,
    Full,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Formula {
    /// Pick the expression valid for the ring size.
    Auto,
    /// Insist on the general ring formula (N >= 5).
    General,
}

#[derive(clap::Args)]
#[command(group(ArgGroup::new("chain").required(true).args(["uniform", "dimerized", "random", "couplings"])))]
struct CurveArgs {
    /// Uniform ring; large-N form unless --n is given.
    #[arg(long)]
    uniform: bool,
    /// Bonds alternating chi(1+delta), chi(1-delta); large-N form unless --n.
    #[arg(long)]
    dimerized: bool,
    /// Bonds chi with probability p; disorder average unless --n.
    #[arg(long)]
    random: bool,
    /// Explicit comma-separated couplings chi_1,...,chi_N.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    couplings: Option<Vec<f64>>,

    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    chi: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    delta: f64,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    tmin: f64,
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    tmax: f64,
    #[arg(long, default_value_t = 301)]
    points: usize,
    /// Quadrature angle in radians [default: pi/4]
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    #[arg(long, value_enum, default_value_t = Formula::Auto)]
    formula: Formula,
    /// Output file [default: stdout]
    #[arg(long, short)]
    output: Option<PathBuf>,
}

enum Failure {
    Verification,
    Input(String),
    Regime(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification => 1,
            Failure::Input(_) => 2,
            Failure::Regime(_) => 3,
            Failure::Io(_) => 4,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnsupportedSize { .. } => Failure::Regime(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Curve(args) => cmd_curve(&args),
        Command::Figures { which, out_dir } => cmd_figures(&which, out_dir),
        Command::Shorttime { file } => cmd_shorttime(&file),
        Command::Verify { level, seed } => cmd_verify(level, seed),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Verification => eprintln!("error: verification failed"),
                Failure::Input(msg) | Failure::Regime(msg) | Failure::Io(msg) => {
                    eprintln!("error: {msg}")
                }
            }
            ExitCode::from(failure.code())
        }
    }
}

impl CurveArgs {
    fn validate(&self) -> Result<(), Failure> {
        let numbers = [self.chi, self.delta, self.p, self.tmin, self.tmax];
        if numbers.iter().chain(self.theta.iter()).any(|x| !x.is_finite()) {
            return Err(Failure::Input("numeric arguments must be finite".into()));
        }
        if !(self.tmin < self.tmax) {
            return Err(Failure::Input(format!("need tmin < tmax, got {} and {}", self.tmin, self.tmax)));
        }
        if self.points < 2 {
            return Err(Failure::Input(format!("need at least 2 points, got {}", self.points)));
        }
        Ok(())
    }

    /// Ring to use, when a finite ring was asked for.
    fn chain(&self) -> Result<Option<CouplingChain>, Failure> {
        if let Some(c) = &self.couplings {
            return Ok(Some(CouplingChain::new(c.clone())?));
        }
        let Some(n) = self.n else { return Ok(None) };
        let chain = if self.uniform {
            make_uniform(n, self.chi)?
        } else if self.dimerized {
            if n % 2 != 0 {
                return Err(Failure::Input(format!("dimerized ring needs even --n, got {n}")));
            }
            make_dimerized(&DimerSpec { pair_count: n / 2, chi: self.chi, delta: self.delta })?
        } else {
            sample_random(&RandomChainSpec { n, chi: self.chi, p: self.p, seed: self.seed })?
        };
        Ok(Some(chain))
    }

    fn model(&self) -> Result<SqueezingModel, Failure> {
        let theta = self.theta.map(QuadratureAngle::new).unwrap_or_default();
        match self.chain()? {
            Some(chain) => {
                if self.formula == Formula::General {
                    // surfaces the size error for N < 5
                    xi_pi4_general(&chain, 0.0)?;
                }
                Ok(SqueezingModel::for_chain(chain, theta))
            }
            None => {
                if self.formula == Formula::General || !theta.is_pi_4() {
                    return Err(Failure::Input(
                        "--formula general and --theta need a finite ring (--n)".into(),
                    ));
                }
                let chi = self.chi;
                Ok(if self.uniform {
                    SqueezingModel::Uniform { chi }
                } else if self.dimerized {
                    SqueezingModel::Dimerized { chi, delta: self.delta }
                } else {
                    if !(0.0..=1.0).contains(&self.p) {
                        return Err(Error::InvalidProbability(self.p).into());
                    }
                    SqueezingModel::Diluted { chi, p: self.p }
                })
            }
        }
    }

    /// Scale of the `chi_t` column: `--chi`, or 1 for explicit couplings
    /// and `--chi 0`.
    fn time_scale(&self) -> f64 {
        if self.couplings.is_some() || self.chi == 0.0 {
            1.0
        } else {
            self.chi
        }
    }
}

fn write_output(curve: &SqueezingCurve, scale: f64, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => {
            let mut file = io::BufWriter::new(fs::File::create(path).map_err(|e| io_failure(path, e))?);
            curve.write_csv(scale, &mut file).and_then(|_| file.flush()).map_err(|e| io_failure(path, e))
        }
        None => {
            let stdout = io::stdout();
            curve
                .write_csv(scale, &mut stdout.lock())
                .map_err(|e| Failure::Io(format!("stdout: {e}")))
        }
    }
}

fn cmd_curve(args: &CurveArgs) -> Result<(), Failure> {
    args.validate()?;
    let model = args.model()?;
    let curve = sample(&model, &linear_grid(args.tmin, args.tmax, args.points))?;
    write_output(&curve, args.time_scale(), args.output.as_deref())
}

fn cmd_figures(which: &[u8], out_dir: Option<PathBuf>) -> Result<(), Failure> {
    let dir = out_dir
        .or_else(|| std::env::var_os(OUT_DIR_VAR).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir).map_err(|e| io_failure(&dir, e))?;
    let which = if which.is_empty() { &[1, 2, 3][..] } else { which };
    for &w in which {
        for fc in figure(w)? {
            let path = dir.join(fc.file_name());
            fs::write(&path, fc.to_csv()).map_err(|e| io_failure(&path, e))?;
            println!("{}", path.display());
        }
    }
    Ok(())
}

fn cmd_shorttime(file: &Path) -> Result<(), Failure> {
    let text = fs::read_to_string(file).map_err(|e| io_failure(file, e))?;
    let ps = PairCouplingSet::from_json(&text)?;
    let ac = aggregate(&ps);
    let best = optimal_orientation(&ac);
    let ev = ac.eigenvalues();
    let o = best.orientation;
    let axis = o.mean_spin_axis();

    let mut out = String::from("M (symmetrized) =\n");
    for row in &ac.matrix {
        out += &format!("  [{:>12.6} {:>12.6} {:>12.6}]\n", row[0], row[1], row[2]);
    }
    out += &format!("eigenvalues (descending): {} {} {}\n", ev[0], ev[1], ev[2]);
    out += &format!(
        "optimal orientation (Z-Y-Z, radians): alpha = {} beta = {} gamma = {}\n",
        o.alpha, o.beta, o.gamma
    );
    out += &format!("mean spin axis: ({}, {}, {})\n", axis[0], axis[1], axis[2]);
    out += &format!("optimal rate: {}\n", best.rate);
    out += if best.squeezes() {
        "squeezing possible\n"
    } else {
        "no squeezing possible\n"
    };
    print!("{out}");
    Ok(())
}

fn cmd_verify(level: Level, seed: u64) -> Result<(), Failure> {
    let level = match level {
        Level::Fast => VerifyLevel::Fast,
        Level::Full => VerifyLevel::Full,
    };
    let reports = verify::run(level, seed)?;
    for r in &reports {
        println!("{r}");
    }
    if reports.iter().all(|r| r.passed) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
