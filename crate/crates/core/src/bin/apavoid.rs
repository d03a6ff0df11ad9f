//! Command-line front end. Exit codes: 0 success, 1 verification or
//! certificate failure, 2 usage or input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};

use apavoid::cnf::parse_dimacs;
use apavoid::coloring::verify;
use apavoid::dratcheck::{check, parse_drat, CheckConfig};
use apavoid::enumerate::{enumerate_all, read_solutions, write_solutions, DEFAULT_GUARD};
use apavoid::pipeline::{cyclic_sweep, prime_sweep, table1_report, write_manifest, SweepConfig};
use apavoid::solver::{solve, solve_external, SolveStatus, SolverConfig};
use apavoid::symmetry::orbits;
use apavoid::{Error, Mode, Modulus, Word};

#[derive(Parser)]
#[command(
    name = "apavoid",
    version,
    about = "4-AP-free 2-colorings of Z/MZ with certified SAT sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a word against every window; prints OK or the first failure.
    Verify {
        #[arg(long)]
        modulus: usize,
        #[arg(long)]
        word: String,
        /// Test all p(p-1) windows of a prime modulus instead of only the
        /// non-degenerate ones.
        #[arg(long)]
        strong: bool,
    },
    /// List every valid word of length M.
    Enumerate {
        #[arg(long)]
        modulus: usize,
        #[arg(long, default_value = "strong")]
        mode: Mode,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: usize,
    },
    /// Orbit summary (JSON) of a word list under the dihedral group.
    Orbits {
        #[arg(long)]
        solutions: PathBuf,
        /// Also identify words related by exchanging the two colors.
        #[arg(long)]
        with_swap: bool,
    },
    /// Decide a DIMACS formula; prints an `s` line and `v` lines.
    Solve {
        #[arg(long)]
        cnf: PathBuf,
        /// Write a DRAT proof here if the formula is unsatisfiable.
        #[arg(long)]
        proof: Option<PathBuf>,
        /// External solver command, invoked as `CMD <cnf> [<proof>]`.
        #[arg(long)]
        external: Option<String>,
        #[arg(long, default_value_t = 600)]
        timeout: u64,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Replay a textual DRAT proof against a formula.
    CheckProof {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        proof: PathBuf,
        #[arg(long)]
        strict_delete: bool,
        #[arg(long)]
        rat: bool,
    },
    /// Classify primes 5 <= p <= MAX under the strong encoding.
    SweepPrimes {
        #[arg(long, default_value_t = 97)]
        max: usize,
        /// Shorthand for --max 997.
        #[arg(long, conflicts_with = "max")]
        full: bool,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        external: Option<String>,
        #[arg(long, default_value_t = 600)]
        timeout: u64,
    },
    /// Run the cyclic encoding for START <= M <= END.
    SweepCyclic {
        #[arg(long, default_value_t = 13)]
        start: usize,
        #[arg(long, default_value_t = 34)]
        end: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        external: Option<String>,
        #[arg(long, default_value_t = 600)]
        timeout: u64,
    },
    /// Rebuild the prime classification table, with word lists and orbits.
    Table1 {
        #[arg(long)]
        out: PathBuf,
    },
    /// Write artifact_manifest.json for a directory.
    Manifest {
        #[arg(long)]
        dir: PathBuf,
    },
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })
}

fn sweep_config(jobs: usize, external: Option<String>, timeout: u64) -> SweepConfig {
    SweepConfig {
        solver: SolverConfig {
            timeout: Some(Duration::from_secs(timeout)),
            ..SolverConfig::default()
        },
        jobs,
        external,
        ..SweepConfig::default()
    }
}

fn run(cmd: Command) -> Result<ExitCode, Error> {
    match cmd {
        Command::Verify {
            modulus,
            word,
            strong,
        } => {
            let m = Modulus::new(modulus)?;
            let w: Word = word.trim().to_uppercase().parse()?;
            let mode = if strong {
                Mode::StrongPrime
            } else {
                Mode::Cyclic
            };
            let report = verify(mode, m, &w)?;
            println!("{report}");
            Ok(if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Enumerate {
            modulus,
            mode,
            out,
            guard,
        } => {
            let res = enumerate_all(Modulus::new(modulus)?, mode, guard)?;
            write_solutions(&out, &res.solutions)?;
            println!(
                "{} solutions for M={modulus} ({mode}) -> {}",
                res.count(),
                out.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Orbits {
            solutions,
            with_swap,
        } => {
            let words = read_solutions(&solutions)?;
            print!("{}", orbits(&words, with_swap)?.to_json());
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve {
            cnf,
            proof,
            external,
            timeout,
            seed,
        } => {
            let f = parse_dimacs(&read(&cnf)?)?;
            let config = SolverConfig {
                proof: proof.is_some(),
                timeout: Some(Duration::from_secs(timeout)),
                seed,
                ..SolverConfig::default()
            };
            let out = match &external {
                Some(c) => solve_external(&f, c, &config),
                None => solve(&f, &config),
            };
            if let (Some(path), Some(p)) = (&proof, &out.proof) {
                fs::write(path, p.to_text()).map_err(|e| Error::Io {
                    path: path.clone(),
                    source: e,
                })?;
            }
            if let Some(reason) = &out.reason {
                println!("c {reason}");
            }
            print!("{}", out.to_solver_output(f.num_vars));
            Ok(match out.status {
                SolveStatus::Unknown => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            })
        }
        Command::CheckProof {
            cnf,
            proof,
            strict_delete,
            rat,
        } => {
            let f = parse_dimacs(&read(&cnf)?)?;
            let p = parse_drat(&read(&proof)?)?;
            let config = CheckConfig {
                rat,
                strict_delete,
                max_propagations: None,
            };
            match check(&f, &p, &config) {
                Ok(verdict) => {
                    print!("{}", verdict.transcript());
                    Ok(if verdict.verified {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    })
                }
                Err(e) => {
                    println!("c {e}\ns NOT VERIFIED");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::SweepPrimes {
            max,
            full,
            out,
            jobs,
            external,
            timeout,
        } => {
            let max = if full { 997 } else { max };
            let report = prime_sweep(max, &out, &sweep_config(jobs, external, timeout))?;
            print!("{report}");
            Ok(ExitCode::SUCCESS)
        }
        Command::SweepCyclic {
            start,
            end,
            out,
            jobs,
            external,
            timeout,
        } => {
            let report = cyclic_sweep(start, end, &out, &sweep_config(jobs, external, timeout))?;
            print!("{report}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Table1 { out } => {
            print!("{}", table1_report(&out)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Manifest { dir } => {
            let m = write_manifest(&dir)?;
            println!(
                "{} files -> {}",
                m.entries.len(),
                dir.join(apavoid::pipeline::MANIFEST_FILE).display()
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e @ Error::Certificate(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
