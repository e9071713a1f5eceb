use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use relbell::bell::fmt_sig17;
use relbell::observables::chsh_case1_closed;
use relbell::scan::{chsh_csv, depends_on_angle, wigner_csv};
use relbell::{
    bell_decompose, bell_state, boost_two_particle, chsh, chsh_scan, chsh_universal, maximize_chsh, run_suite,
    wigner_angle, wigner_scan, BellLabel, BoostSpec, ChshSettings, FourMomentum, OptimizerConfig, ScanConfig,
    TwoQubitState, Vec3, Vectors,
};

/// Wigner rotations and CHSH values for boosted spin-½ pairs.
#[derive(Debug, Parser)]
#[command(name = "relbell", version)]
struct Cli {
    /// Master seed for randomized commands.
    #[arg(long, global = true, env = "RELBELL_SEED", default_value_t = 42)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Wigner angle over a β grid, one block per E/m.
    WignerScan {
        #[command(flatten)]
        grid: Grid,
        #[arg(long, value_delimiter = ',', default_values_t = [10.0, 100.0, 1000.0])]
        e_over_m: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// CHSH value over a β grid.
    ChshScan {
        #[arg(long, default_value_t = 0.0)]
        beta_min: f64,
        #[arg(long, default_value_t = 1.0)]
        beta_max: f64,
        #[arg(long, default_value_t = 101)]
        steps: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [10.0])]
        e_over_m: Vec<f64>,
        #[arg(long, default_value = "10")]
        state: BellLabel,
        /// case1, case2, matched or optimal.
        #[arg(long, default_value = "case2")]
        vectors: Vectors,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized invariant suite; exit 1 on any failure.
    Verify {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Numerically maximize the CHSH value at one β.
    Optimize {
        #[arg(long, default_value = "10")]
        state: BellLabel,
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
        #[arg(long, default_value_t = 10.0)]
        e_over_m: f64,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 2000)]
        max_iter: usize,
    },
    /// Single-point computations.
    #[command(subcommand)]
    Eval(Eval),
}

#[derive(Debug, Args)]
struct Grid {
    #[arg(long, default_value_t = 0.0)]
    beta_min: f64,
    #[arg(long, default_value_t = 0.99)]
    beta_max: f64,
    #[arg(long, default_value_t = 100)]
    steps: usize,
}

#[derive(Debug, Args)]
struct Point {
    #[arg(long)]
    beta: f64,
    #[arg(long, default_value_t = 10.0)]
    e_over_m: f64,
}

#[derive(Debug, Subcommand)]
enum Eval {
    /// Wigner angle for momentum ⟂ boost.
    Wigner {
        #[command(flatten)]
        point: Point,
    },
    /// CHSH value of one boosted Bell state.
    Chsh {
        #[command(flatten)]
        point: Point,
        #[arg(long, default_value = "10")]
        state: BellLabel,
        #[arg(long, default_value = "matched")]
        vectors: Vectors,
    },
    /// Boosted amplitudes and Bell-basis coefficients.
    State {
        #[command(flatten)]
        point: Point,
        #[arg(long, default_value = "00")]
        state: BellLabel,
    },
}

/// The invariant suite reported failures; exit 1.
#[derive(Debug)]
struct VerifyFailed;

impl std::fmt::Display for VerifyFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("verification failed")
    }
}

impl std::error::Error for VerifyFailed {}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            std::io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn boosted(label: BellLabel, beta: f64, e_over_m: f64) -> Result<TwoQubitState> {
    let p = FourMomentum::from_energy_ratio(Vec3::Z, e_over_m, 1.0)?;
    let b = BoostSpec::from_beta(Vec3::X, beta)?;
    Ok(boost_two_particle(&bell_state(label, &p)?, &b))
}

fn fixed_settings(label: BellLabel, vectors: Vectors) -> Option<ChshSettings> {
    match vectors {
        Vectors::Case1 => Some(ChshSettings::case1()),
        Vectors::Case2 => Some(ChshSettings::case2()),
        Vectors::Matched => Some(ChshSettings::matched(label)),
        Vectors::Optimal => None,
    }
}

fn fmt_dir(v: Vec3) -> String {
    format!("{},{},{}", fmt_sig17(v.x), fmt_sig17(v.y), fmt_sig17(v.z))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::WignerScan { grid, e_over_m, out } => {
            let cfg = ScanConfig {
                beta_min: grid.beta_min,
                beta_max: grid.beta_max,
                steps: grid.steps,
                e_over_m,
                seed: cli.seed,
            };
            emit(&wigner_csv(&wigner_scan(&cfg)?), out.as_deref())
        }
        Command::ChshScan {
            beta_min,
            beta_max,
            steps,
            e_over_m,
            state,
            vectors,
            out,
        } => {
            let cfg = ScanConfig {
                beta_min,
                beta_max,
                steps,
                e_over_m,
                seed: cli.seed,
            };
            emit(&chsh_csv(&chsh_scan(&cfg, state, vectors)?), out.as_deref())
        }
        Command::Verify { samples } => {
            if samples == 0 {
                bail!("samples must be at least 1");
            }
            let report = run_suite(cli.seed, samples);
            println!("{report}");
            if report.all_passed() {
                Ok(())
            } else {
                Err(VerifyFailed.into())
            }
        }
        Command::Optimize {
            state,
            beta,
            e_over_m,
            restarts,
            tol,
            max_iter,
        } => {
            let s = boosted(state, beta, e_over_m)?;
            let cfg = OptimizerConfig {
                restarts,
                max_iter,
                tol,
                seed: cli.seed,
            };
            let r = maximize_chsh(&s, beta, &Vec3::X, &cfg)?;
            let baseline = chsh(&s, &ChshSettings::matched(state), beta, &Vec3::X)?;
            println!("state={state}");
            println!("beta={}", fmt_sig17(beta));
            println!("e_over_m={}", fmt_sig17(e_over_m));
            println!("seed={}", cli.seed);
            println!("value={}", fmt_sig17(r.value));
            println!("iterations={}", r.iterations);
            println!("restarts_used={}", r.restarts_used);
            println!("converged={}", r.converged);
            println!("a={}", fmt_dir(r.settings.a.vector()));
            println!("a_prime={}", fmt_dir(r.settings.a_prime.vector()));
            println!("b={}", fmt_dir(r.settings.b.vector()));
            println!("b_prime={}", fmt_dir(r.settings.b_prime.vector()));
            println!("baseline={}", fmt_sig17(baseline));
            println!("gain={}", fmt_sig17(r.value - baseline));
            if !r.converged {
                eprintln!("warning: simplex did not shrink below tol={tol:e} within {max_iter} iterations");
            }
            Ok(())
        }
        Command::Eval(Eval::Wigner { point }) => {
            println!("omega_rad={}", fmt_sig17(wigner_angle(point.beta, point.e_over_m)?));
            Ok(())
        }
        Command::Eval(Eval::Chsh { point, state, vectors }) => {
            let s = boosted(state, point.beta, point.e_over_m)?;
            let value = match fixed_settings(state, vectors) {
                Some(c) => chsh(&s, &c, point.beta, &Vec3::X)?,
                None => {
                    let cfg = OptimizerConfig {
                        seed: cli.seed,
                        ..OptimizerConfig::default()
                    };
                    maximize_chsh(&s, point.beta, &Vec3::X, &cfg)?.value
                }
            };
            println!("chsh={}", fmt_sig17(value));
            println!("universal={}", fmt_sig17(chsh_universal(point.beta)?));
            if depends_on_angle(state) {
                let omega = wigner_angle(point.beta, point.e_over_m)?;
                println!("omega_rad={}", fmt_sig17(omega));
                println!("rotated_closed={}", fmt_sig17(chsh_case1_closed(point.beta, omega)?));
            }
            Ok(())
        }
        Command::Eval(Eval::State { point, state }) => {
            let s = boosted(state, point.beta, point.e_over_m)?;
            print!("{}", s.dump());
            let d = bell_decompose(&s);
            for label in BellLabel::ALL {
                let c = d.get(label);
                println!("bell_{label} {} {}", fmt_sig17(c.re), fmt_sig17(c.im));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<VerifyFailed>() => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
