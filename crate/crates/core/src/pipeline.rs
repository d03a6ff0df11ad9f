//! Sweeps over many moduli with per-instance artifacts, summary tables and a
//! SHA-256 manifest.
//!
//! Every file written here is a pure function of the inputs: no timings,
//! hostnames or dates end up on disk, so two identical runs produce
//! byte-identical directories. Timings live only in the in-memory report.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cnf::{cnf_file_name, decode_model, encode, model_to_word, to_dimacs, ModelSyntax};
use crate::coloring::{
    mono_progressions_with_step, periodic_extension, verify, verify_strong, Mode, Word,
};
use crate::dratcheck::{check, CheckConfig};
use crate::enumerate::{enumerate_all, solutions_file_name, write_solutions, DEFAULT_GUARD};
use crate::error::{Error, Result};
use crate::modular::{primes_in_range, Modulus};
use crate::solver::{solve, solve_external, SolveOutcome, SolveStatus, SolverConfig};
use crate::symmetry::orbits;

pub const MANIFEST_FILE: &str = "artifact_manifest.json";
pub const CYCLIC_CSV: &str = "wc42_results.csv";
pub const CYCLIC_TSV: &str = "wc42_results.tsv";
pub const PRIME_CSV: &str = "primes_results.csv";
pub const PRIME_TSV: &str = "primes_results.tsv";
pub const TABLE1_FILE: &str = "table1.txt";

/// Proof column value for an UNSAT answer whose proof was checked.
pub const PROOF_OK: &str = "DRAT ok";
/// Proof column value for an UNSAT answer that came without a proof.
pub const PROOF_MISSING: &str = "no proof";

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub solver: SolverConfig,
    pub check: CheckConfig,
    /// Worker threads; instances are independent jobs.
    pub jobs: usize,
    /// External solver command; the embedded solver is used when `None`.
    pub external: Option<String>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            solver: SolverConfig::default(),
            check: CheckConfig::default(),
            jobs: 1,
            external: None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Timings {
    pub solve: Duration,
    pub check: Option<Duration>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepEntry {
    pub modulus: usize,
    pub mode: Mode,
    pub status: SolveStatus,
    /// Verified witness; present iff `Sat`.
    pub witness: Option<Word>,
    /// `Some(true)` when an UNSAT proof was checked, `None` without a proof.
    pub proof_verified: Option<bool>,
    pub timings: Timings,
    /// Reason for `Unknown`, or why an UNSAT answer carries no proof.
    pub note: Option<String>,
}

impl SweepEntry {
    fn proof_column(&self) -> &'static str {
        match (self.status, self.proof_verified) {
            (SolveStatus::Unsat, Some(true)) => PROOF_OK,
            (SolveStatus::Unsat, _) => PROOF_MISSING,
            _ => "",
        }
    }

    fn witness_column(&self) -> String {
        self.witness
            .as_ref()
            .map(Word::to_string)
            .unwrap_or_default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub mode: Mode,
    /// Ascending by modulus.
    pub entries: Vec<SweepEntry>,
    pub conclusion: Option<String>,
}

impl SweepReport {
    pub fn moduli_with(&self, status: SolveStatus) -> Vec<usize> {
        self.entries
            .iter()
            .filter(|e| e.status == status)
            .map(|e| e.modulus)
            .collect()
    }

    pub fn entry(&self, modulus: usize) -> Option<&SweepEntry> {
        self.entries.iter().find(|e| e.modulus == modulus)
    }

    /// Summary table with header `M,Status,Witness,Proof`; a field is quoted
    /// only when it contains a comma.
    pub fn to_csv(&self) -> String {
        let quote = |s: &str| {
            if s.contains(',') {
                format!("\"{s}\"")
            } else {
                s.to_string()
            }
        };
        let mut out = format!("{},Status,Witness,Proof\n", self.key_column());
        for e in &self.entries {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                e.modulus,
                e.status,
                quote(&e.witness_column()),
                quote(e.proof_column())
            );
        }
        out
    }

    pub fn to_tsv(&self) -> String {
        let mut out = format!("{}\tStatus\tWitness\tProof\n", self.key_column());
        for e in &self.entries {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}",
                e.modulus,
                e.status,
                e.witness_column(),
                e.proof_column()
            );
        }
        out
    }

    fn key_column(&self) -> &'static str {
        match self.mode {
            Mode::StrongPrime => "p",
            Mode::Cyclic => "M",
        }
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}\tStatus\tWitness/Note\tProof\tTime",
            self.key_column()
        )?;
        for e in &self.entries {
            let note = match (&e.witness, &e.note) {
                (Some(w), _) => w.to_string(),
                (None, Some(n)) => n.clone(),
                (None, None) => String::new(),
            };
            let time = e.timings.solve + e.timings.check.unwrap_or_default();
            writeln!(
                f,
                "{}\t{}\t{}\t{}\t{:.1?}",
                e.modulus,
                e.status,
                note,
                e.proof_column(),
                time
            )?;
        }
        if let Some(c) = &self.conclusion {
            writeln!(f, "\n{c}")?;
        }
        Ok(())
    }
}

/// The W_c(4,2) statement, derived from the entries: it needs a witness at
/// M=33 and a checked refutation at M=34.
pub fn derive_conclusion(entries: &[SweepEntry]) -> Option<String> {
    let sat_33 = entries
        .iter()
        .any(|e| e.modulus == 33 && e.status == SolveStatus::Sat && e.witness.is_some());
    let unsat_34 = entries.iter().any(|e| {
        e.modulus == 34 && e.status == SolveStatus::Unsat && e.proof_verified == Some(true)
    });
    (sat_33 && unsat_34)
        .then(|| "Summary: SAT at M=33 and UNSAT at M=34 -> W_c(4,2)=34.".to_string())
}

struct ArtifactNames {
    cnf: String,
    solver_out: String,
    witness: String,
    proof: String,
    transcript: String,
}

impl ArtifactNames {
    fn new(modulus: usize, mode: Mode) -> Self {
        match mode {
            Mode::StrongPrime => ArtifactNames {
                cnf: cnf_file_name(modulus, mode),
                solver_out: format!("solver_p{modulus}.out"),
                witness: format!("witness_p{modulus}.txt"),
                proof: format!("avoid_p{modulus}.drat"),
                transcript: format!("avoid_p{modulus}.drat.check.txt"),
            },
            Mode::Cyclic => ArtifactNames {
                cnf: cnf_file_name(modulus, mode),
                solver_out: format!("model_M{modulus}.txt"),
                witness: format!("witness_M{modulus}.txt"),
                proof: format!("proof_M{modulus}.drat"),
                transcript: format!("proof_M{modulus}.drat.check.txt"),
            },
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Encodes, solves and certifies one instance, writing its artifacts.
fn run_instance(
    modulus: usize,
    mode: Mode,
    outdir: &Path,
    config: &SweepConfig,
) -> Result<SweepEntry> {
    let m = Modulus::new(modulus)?;
    let names = ArtifactNames::new(modulus, mode);
    let f = encode(m, mode)?;
    write_file(&outdir.join(&names.cnf), &to_dimacs(&f))?;

    let started = Instant::now();
    let outcome: SolveOutcome = match &config.external {
        Some(cmd) => solve_external(&f, cmd, &config.solver),
        None => solve(&f, &config.solver),
    };
    let mut entry = SweepEntry {
        modulus,
        mode,
        status: outcome.status,
        witness: None,
        proof_verified: None,
        timings: Timings {
            solve: started.elapsed(),
            check: None,
        },
        note: outcome.reason.clone(),
    };

    match outcome.status {
        SolveStatus::Sat => {
            // The witness is read back from the saved solver output, the same
            // way an external tool would consume it.
            let output = match &outcome.solver_output {
                Some(raw) => raw.clone(),
                None => outcome.to_solver_output(f.num_vars),
            };
            write_file(&outdir.join(&names.solver_out), &output)?;
            let model = decode_model(&output, ModelSyntax::Strict).ok_or_else(|| {
                Error::Certificate(format!("{mode} M={modulus}: no model in solver output"))
            })?;
            let word = model_to_word(m, &model);
            let report = verify(mode, m, &word)?;
            if !report.ok {
                return Err(Error::Certificate(format!(
                    "{mode} M={modulus}: witness {word} fails verification: {report}"
                )));
            }
            write_file(&outdir.join(&names.witness), &format!("{word}\n"))?;
            entry.witness = Some(word);
        }
        SolveStatus::Unsat => {
            if let Some(proof) = &outcome.proof {
                write_file(&outdir.join(&names.proof), &proof.to_text())?;
                let t = Instant::now();
                let verdict = check(&f, proof, &config.check).map_err(|e| {
                    Error::Certificate(format!("{mode} M={modulus}: proof check incomplete: {e}"))
                })?;
                entry.timings.check = Some(t.elapsed());
                write_file(&outdir.join(&names.transcript), &verdict.transcript())?;
                if !verdict.verified {
                    return Err(Error::Certificate(format!(
                        "{mode} M={modulus}: proof rejected\n{}",
                        verdict.transcript()
                    )));
                }
                entry.proof_verified = Some(true);
            } else if entry.note.is_none() {
                entry.note = Some(PROOF_MISSING.to_string());
            }
        }
        SolveStatus::Unknown => {}
    }
    Ok(entry)
}

fn run_sweep(
    moduli: Vec<usize>,
    mode: Mode,
    outdir: &Path,
    config: &SweepConfig,
) -> Result<SweepReport> {
    fs::create_dir_all(outdir).map_err(|e| Error::io(outdir, e))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()
        .map_err(|e| Error::Precondition(format!("cannot start worker pool: {e}")))?;
    // Results come back in input order, so the first error reported is the
    // one with the smallest modulus regardless of scheduling.
    let results: Vec<Result<SweepEntry>> = pool.install(|| {
        moduli
            .par_iter()
            .map(|&n| run_instance(n, mode, outdir, config))
            .collect()
    });
    let entries = results.into_iter().collect::<Result<Vec<_>>>()?;

    let conclusion = match mode {
        Mode::Cyclic => derive_conclusion(&entries),
        Mode::StrongPrime => None,
    };
    let report = SweepReport {
        mode,
        entries,
        conclusion,
    };
    let (csv, tsv) = match mode {
        Mode::StrongPrime => (PRIME_CSV, PRIME_TSV),
        Mode::Cyclic => (CYCLIC_CSV, CYCLIC_TSV),
    };
    write_file(&outdir.join(csv), &report.to_csv())?;
    write_file(&outdir.join(tsv), &report.to_tsv())?;
    write_manifest(outdir)?;
    Ok(report)
}

/// Classifies every prime `5 <= p <= max_p` under the strong encoding.
pub fn prime_sweep(max_p: usize, outdir: &Path, config: &SweepConfig) -> Result<SweepReport> {
    run_sweep(primes_in_range(5, max_p), Mode::StrongPrime, outdir, config)
}

/// Runs the cyclic (non-degenerate) encoding for every `start <= M <= end`.
pub fn cyclic_sweep(
    start: usize,
    end: usize,
    outdir: &Path,
    config: &SweepConfig,
) -> Result<SweepReport> {
    if start < 2 || start > end {
        return Err(Error::Precondition(format!(
            "cyclic sweep needs 2 <= start <= end, got {start}..{end}"
        )));
    }
    run_sweep((start..=end).collect(), Mode::Cyclic, outdir, config)
}

/// Minimal period of a valid strong witness for prime `p`, which is always
/// `p` itself.
///
/// Besides returning `p`, this checks the two facts behind it: the witness
/// repeats with no shorter cyclic period, and any coloring of period
/// `q < p` has a monochromatic 4-AP of step `q`.
pub fn classify_minimal_period(p: usize, witness: &Word) -> Result<usize> {
    let m = Modulus::prime(p)?;
    let report = verify_strong(m, witness)?;
    if !report.ok {
        return Err(Error::Precondition(format!(
            "{witness} is not a valid witness for p={p}: {report}"
        )));
    }
    let colors = witness.colors();
    for q in 1..p {
        if (0..p).all(|i| colors[i] == colors[(i + q) % p]) {
            return Err(Error::Certificate(format!(
                "{witness} has cyclic period {q} < {p}"
            )));
        }
        let block = Word::new(colors[..q].to_vec());
        let ext = periodic_extension(&block, 4 * q);
        if mono_progressions_with_step(&ext, q) == 0 {
            return Err(Error::Certificate(format!(
                "period-{q} extension of {block} avoids step-{q} progressions"
            )));
        }
    }
    Ok(p)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    /// Path relative to the manifest's directory, `/`-separated.
    pub filename: String,
    pub byte_length: u64,
    pub sha256: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}

fn collect_files(root: &Path, dir: &Path, out: &mut Vec<PathBuf>) -> Result<()> {
    let rd = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    for item in rd {
        let item = item.map_err(|e| Error::io(dir, e))?;
        let path = item.path();
        let ft = item.file_type().map_err(|e| Error::io(&path, e))?;
        if ft.is_dir() {
            collect_files(root, &path, out)?;
        } else if ft.is_file() {
            out.push(path.strip_prefix(root).expect("under root").to_path_buf());
        }
    }
    Ok(())
}

/// Hashes every file below `outdir` (sorted by relative path, the manifest
/// itself excluded) without writing anything.
pub fn compute_manifest(outdir: &Path) -> Result<Manifest> {
    let mut files = Vec::new();
    collect_files(outdir, outdir, &mut files)?;
    let mut entries: Vec<ManifestEntry> = files
        .into_iter()
        .map(|rel| {
            let name = rel
                .components()
                .map(|c| c.as_os_str().to_string_lossy())
                .collect::<Vec<_>>()
                .join("/");
            (name, rel)
        })
        .filter(|(name, _)| name != MANIFEST_FILE)
        .map(|(filename, rel)| {
            let path = outdir.join(rel);
            let bytes = fs::read(&path).map_err(|e| Error::io(&path, e))?;
            Ok(ManifestEntry {
                filename,
                byte_length: bytes.len() as u64,
                sha256: hex::encode(Sha256::digest(&bytes)),
            })
        })
        .collect::<Result<_>>()?;
    entries.sort_by(|a, b| a.filename.cmp(&b.filename));
    Ok(Manifest { entries })
}

/// Computes the manifest of `outdir` and writes it to
/// `artifact_manifest.json` there.
pub fn write_manifest(outdir: &Path) -> Result<Manifest> {
    let manifest = compute_manifest(outdir)?;
    write_file(&outdir.join(MANIFEST_FILE), &manifest.to_json())?;
    Ok(manifest)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Row {
    /// First and last prime covered; equal except for the collapsed tail.
    pub primes: (usize, usize),
    pub exists: Option<bool>,
    pub solutions: Option<usize>,
    pub orbits: Option<usize>,
    pub orbits_with_swap: Option<usize>,
}

impl Table1Row {
    fn label(&self) -> String {
        if self.primes.0 == self.primes.1 {
            self.primes.0.to_string()
        } else {
            format!("{}-{} (primes)", self.primes.0, self.primes.1)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1 {
    pub rows: Vec<Table1Row>,
    /// Missing or inconsistent inputs.
    pub gaps: Vec<String>,
}

impl Table1 {
    pub fn row(&self, p: usize) -> Option<&Table1Row> {
        self.rows
            .iter()
            .find(|r| r.primes.0 <= p && p <= r.primes.1)
    }
}

impl fmt::Display for Table1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dash = |v: Option<usize>| v.map_or("--".to_string(), |n| n.to_string());
        writeln!(
            f,
            "p\tExists?\t#solutions\t#orbits D_p\t#orbits D_p x <tau>"
        )?;
        for r in &self.rows {
            let exists = match r.exists {
                Some(true) => "Y",
                Some(false) => "N",
                None => "?",
            };
            writeln!(
                f,
                "{}\t{}\t{}\t{}\t{}",
                r.label(),
                exists,
                dash(r.solutions),
                dash(r.orbits),
                dash(r.orbits_with_swap)
            )?;
        }
        for g in &self.gaps {
            writeln!(f, "gap: {g}")?;
        }
        Ok(())
    }
}

/// Statuses from a prime sweep summary (`primes_results.csv`).
fn read_prime_statuses(path: &Path) -> Result<Option<BTreeMap<usize, String>>> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(Error::io(path, e)),
    };
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate().skip(1) {
        let mut fields = line.split(',');
        let (Some(p), Some(status)) = (fields.next(), fields.next()) else {
            return Err(Error::parse(i + 1, "expected p,Status,..."));
        };
        let p = p
            .parse()
            .map_err(|_| Error::parse(i + 1, format!("bad prime {p:?}")))?;
        out.insert(p, status.to_string());
    }
    Ok(Some(out))
}

/// Largest prime enumerated exhaustively for the table.
pub const TABLE1_ENUM_MAX: usize = 23;

/// Rebuilds the prime classification table in `outdir`.
///
/// Primes up to 23 are enumerated exhaustively; for the SAT ones the word
/// lists and orbit summaries are written next to the table. Larger primes
/// are read from a prime sweep summary in the same directory and collapsed
/// into one row when they agree. Disagreements and missing inputs are
/// listed as gaps rather than hidden.
pub fn table1_report(outdir: &Path) -> Result<Table1> {
    fs::create_dir_all(outdir).map_err(|e| Error::io(outdir, e))?;
    let sweep = read_prime_statuses(&outdir.join(PRIME_CSV))?;
    let mut rows = Vec::new();
    let mut gaps = Vec::new();

    for p in primes_in_range(5, TABLE1_ENUM_MAX) {
        let m = Modulus::prime(p)?;
        let res = enumerate_all(m, Mode::StrongPrime, DEFAULT_GUARD)?;
        let exists = res.count() > 0;
        if let Some(status) = sweep.as_ref().and_then(|s| s.get(&p)) {
            let agrees = match status.as_str() {
                "SAT" => exists,
                "UNSAT" => !exists,
                _ => false,
            };
            if !agrees {
                gaps.push(format!(
                    "p={p}: sweep status {status} vs {} enumerated solutions",
                    res.count()
                ));
            }
        }
        let mut row = Table1Row {
            primes: (p, p),
            exists: Some(exists),
            solutions: None,
            orbits: None,
            orbits_with_swap: None,
        };
        if exists {
            let plain = orbits(&res.solutions, false)?;
            let swap = orbits(&res.solutions, true)?;
            write_solutions(&outdir.join(solutions_file_name(p)), &res.solutions)?;
            let json = serde_json::json!({ "p": p, "dihedral": plain, "dihedral_swap": swap });
            let mut text = serde_json::to_string_pretty(&json).expect("summary serializes");
            text.push('\n');
            write_file(&outdir.join(format!("orbit_summary_p{p}.json")), &text)?;
            row.solutions = Some(res.count());
            row.orbits = Some(plain.num_orbits);
            row.orbits_with_swap = Some(swap.num_orbits);
        }
        rows.push(row);
    }

    match &sweep {
        None => gaps.push(format!(
            "no {PRIME_CSV} in {}; primes above {TABLE1_ENUM_MAX} not covered",
            outdir.display()
        )),
        Some(statuses) => {
            let tail: Vec<(usize, &String)> = statuses
                .iter()
                .filter(|(&p, _)| p > TABLE1_ENUM_MAX)
                .map(|(&p, s)| (p, s))
                .collect();
            let all_unsat = tail.iter().all(|(_, s)| s.as_str() == "UNSAT");
            match (tail.first(), tail.last()) {
                (Some(&(lo, _)), Some(&(hi, _))) if all_unsat => rows.push(Table1Row {
                    primes: (lo, hi),
                    exists: Some(false),
                    solutions: None,
                    orbits: None,
                    orbits_with_swap: None,
                }),
                (Some(_), Some(_)) => {
                    for (p, s) in tail {
                        let exists = match s.as_str() {
                            "SAT" => Some(true),
                            "UNSAT" => Some(false),
                            _ => {
                                gaps.push(format!("p={p}: sweep status {s}"));
                                None
                            }
                        };
                        if exists == Some(true) {
                            gaps.push(format!(
                                "p={p}: SAT beyond enumeration range, counts unknown"
                            ));
                        }
                        rows.push(Table1Row {
                            primes: (p, p),
                            exists,
                            solutions: None,
                            orbits: None,
                            orbits_with_swap: None,
                        });
                    }
                }
                _ => gaps.push(format!(
                    "{PRIME_CSV} lists no primes above {TABLE1_ENUM_MAX}"
                )),
            }
        }
    }

    let table = Table1 { rows, gaps };
    write_file(&outdir.join(TABLE1_FILE), &table.to_string())?;
    Ok(table)
}
