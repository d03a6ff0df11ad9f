//! Runs an external DIMACS solver as a subprocess.
//!
//! Protocol: `<command...> <cnf-file> [<proof-file>]`. The status is taken
//! from the first `s ` line on stdout and the model from `v ` lines. A
//! proof file, if the solver wrote one, is parsed and attached.

use std::fs;
use std::io::Read;
use std::process::{Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use super::{SolveOutcome, SolveStatus, SolverConfig, Stats};
use crate::cnf::{decode_model, to_dimacs, CnfFormula, Model, ModelSyntax};
use crate::dratcheck::parse_drat;

/// Status from the first `s ` line; `Unknown` if there is none.
pub fn parse_status(stdout: &str) -> SolveStatus {
    for line in stdout.lines() {
        if let Some(rest) = line.strip_prefix("s ") {
            if rest.contains("UNSATISFIABLE") {
                return SolveStatus::Unsat;
            }
            if rest.contains("SATISFIABLE") {
                return SolveStatus::Sat;
            }
            return SolveStatus::Unknown;
        }
    }
    SolveStatus::Unknown
}

fn unknown(reason: String, output: Option<String>, started: Instant) -> SolveOutcome {
    SolveOutcome {
        status: SolveStatus::Unknown,
        model: None,
        proof: None,
        stats: Stats {
            wall_time: started.elapsed(),
            ..Stats::default()
        },
        reason: Some(reason),
        solver_output: output,
    }
}

/// Solves `f` with `solver_command` (whitespace-separated program and
/// leading arguments). Any failure maps to `Unknown`, never to a wrong answer.
pub fn solve_external(f: &CnfFormula, solver_command: &str, config: &SolverConfig) -> SolveOutcome {
    let started = Instant::now();
    let mut parts = solver_command.split_whitespace();
    let Some(program) = parts.next() else {
        return unknown("empty solver command".into(), None, started);
    };

    let dir = match tempfile::tempdir() {
        Ok(d) => d,
        Err(e) => return unknown(format!("cannot create temp dir: {e}"), None, started),
    };
    let cnf_path = dir.path().join("formula.cnf");
    let proof_path = dir.path().join("proof.drat");
    if let Err(e) = fs::write(&cnf_path, to_dimacs(f)) {
        return unknown(
            format!("cannot write {}: {e}", cnf_path.display()),
            None,
            started,
        );
    }

    let mut cmd = Command::new(program);
    cmd.args(parts).arg(&cnf_path);
    if config.proof {
        cmd.arg(&proof_path);
    }
    let mut child = match cmd
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
    {
        Ok(c) => c,
        Err(e) => return unknown(format!("failed to spawn {program:?}: {e}"), None, started),
    };

    let mut stdout = child.stdout.take().expect("piped stdout");
    let mut stderr = child.stderr.take().expect("piped stderr");
    let out_reader = thread::spawn(move || {
        let mut s = String::new();
        let _ = stdout.read_to_string(&mut s);
        s
    });
    let err_reader = thread::spawn(move || {
        let mut s = String::new();
        let _ = stderr.read_to_string(&mut s);
        s
    });

    let mut timed_out = false;
    loop {
        match child.try_wait() {
            Ok(Some(_)) => break,
            Ok(None) => {}
            Err(e) => {
                let _ = child.kill();
                return unknown(format!("wait failed: {e}"), None, started);
            }
        }
        if config.timeout.is_some_and(|t| started.elapsed() >= t) {
            let _ = child.kill();
            let _ = child.wait();
            timed_out = true;
            break;
        }
        thread::sleep(Duration::from_millis(5));
    }
    if timed_out {
        // Grandchildren of the killed process may still hold the pipes open;
        // leave the reader threads detached rather than wait for them.
        return unknown("timeout".into(), None, started);
    }
    let output = out_reader.join().unwrap_or_default();
    let errors = err_reader.join().unwrap_or_default();
    let captured = if errors.is_empty() {
        output.clone()
    } else {
        format!("{output}\n[stderr]\n{errors}")
    };

    let stats = Stats {
        wall_time: started.elapsed(),
        ..Stats::default()
    };
    match parse_status(&output) {
        SolveStatus::Sat => {
            let Some(partial) = decode_model(&output, ModelSyntax::Strict) else {
                return unknown(
                    "SAT reported without a model".into(),
                    Some(captured),
                    started,
                );
            };
            let model = Model::from_literals((1..=f.num_vars).map(|v| {
                let d = v as i64;
                if partial.value(v) == Some(true) {
                    d
                } else {
                    -d
                }
            }));
            if !model.satisfies(f) {
                return unknown(
                    "reported model does not satisfy the formula".into(),
                    Some(captured),
                    started,
                );
            }
            SolveOutcome {
                status: SolveStatus::Sat,
                model: Some(model),
                proof: None,
                stats,
                reason: None,
                solver_output: Some(output),
            }
        }
        SolveStatus::Unsat => {
            let mut reason = None;
            let proof = if config.proof {
                match fs::read_to_string(&proof_path) {
                    Ok(text) if !text.is_empty() => match parse_drat(&text) {
                        Ok(p) => Some(p),
                        Err(e) => {
                            reason = Some(format!("unparsable proof file: {e}"));
                            None
                        }
                    },
                    _ => {
                        reason = Some("solver wrote no proof".into());
                        None
                    }
                }
            } else {
                None
            };
            SolveOutcome {
                status: SolveStatus::Unsat,
                model: None,
                proof,
                stats,
                reason,
                solver_output: Some(output),
            }
        }
        SolveStatus::Unknown => unknown("no parsable status line".into(), Some(captured), started),
    }
}
