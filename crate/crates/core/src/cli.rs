//! Command-line front end. Exit codes: 0 success, 1 input error, 2 degree
//! cap breach, 3 bound violation, 4 internal consistency failure.

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::ext_tor::{ext, tor};
use crate::harness::{sweep, verify_bounds, ExtRegTable, SweepConfig, Variant};
use crate::problem::{parse_problem, NamedModule, ProblemFile};
use crate::rees::{rho_upper, IdealData};
use crate::regularity::{betti_over_q, regularity};
use crate::resolution::{betti_table, resolve_over_a};
use crate::selfcheck::selfcheck;
use crate::trigraded::{bound_constants, component_bound, component_twists, max_twist_bound_check};
use crate::trigraded::{TrigradedFreeData, TrigradedRingSpec};

pub const EXIT_VIOLATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "cireg", version, about = "Regularity of Ext and Tor over graded complete intersections")]
pub struct Cli {
    /// Worker threads; defaults to RAYON_NUM_THREADS or the core count.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal Betti table of a module as `i,j,beta` CSV.
    Resolve(ResolveArgs),
    /// Regularity of a module.
    Reg(ModuleArgs),
    /// Regularity and presentation of `Ext^i(M, N)`.
    Ext(HomologyArgs),
    /// Regularity and presentation of `Tor_i(M, N)`.
    Tor(HomologyArgs),
    /// Certified upper bound for the reduction number degree of `I` on `N`.
    Rho(RhoArgs),
    /// Regularity grid over `(i, n)`.
    Sweep(SweepArgs),
    /// Bound constants and violations for a sweep table.
    Verify(VerifyArgs),
    /// Twist bounds for trigraded free data given as JSON.
    TrigradedBound(TrigradedArgs),
    /// Seeded randomized consistency checks.
    Selfcheck(SelfcheckArgs),
}

#[derive(Debug, Args)]
pub struct ModuleArgs {
    pub problem: PathBuf,
    #[arg(long, default_value = "M")]
    pub module: String,
}

#[derive(Debug, Args)]
pub struct ResolveArgs {
    #[command(flatten)]
    pub input: ModuleArgs,
    /// Resolve over `A` up to the problem's homological cap instead of
    /// giving the minimal resolution over `Q`.
    #[arg(long)]
    pub over_a: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HomologyArgs {
    pub problem: PathBuf,
    #[arg(long, default_value = "M")]
    pub m: String,
    #[arg(long, default_value = "N")]
    pub n: String,
    #[arg(long)]
    pub index: usize,
    /// Writes the homology as a `module` line.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RhoArgs {
    pub problem: PathBuf,
    #[arg(long, default_value = "I")]
    pub ideal: String,
    #[arg(long, default_value = "N")]
    pub module: String,
    /// Largest exponent tried in `I^{n+1} N = J I^n N`.
    #[arg(long, default_value_t = 4)]
    pub nmax: usize,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    pub problem: PathBuf,
    #[arg(long, default_value = "M")]
    pub m: String,
    #[arg(long, default_value = "N")]
    pub n: String,
    #[arg(long, default_value = "I")]
    pub ideal: String,
    #[arg(long)]
    pub imax: Option<usize>,
    #[arg(long)]
    pub nmax: Option<usize>,
    #[arg(long = "variant", value_delimiter = ',', default_value = "power")]
    pub variants: Vec<Variant>,
    /// Records this value instead of computing the reduction bound.
    #[arg(long)]
    pub rho: Option<i64>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// A table written by `sweep --json`.
    pub table: PathBuf,
    /// Defaults to the table's recorded value.
    #[arg(long)]
    pub rho: Option<i64>,
    /// Defaults to the table's recorded value.
    #[arg(long)]
    pub f: Option<i64>,
    /// Claimed constants as `variant:parity=e`, e.g. `power:1=0`.
    #[arg(long = "claim-e", value_parser = parse_claim)]
    pub claims: Vec<((Variant, u8), i64)>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TrigradedArgs {
    /// JSON object `{"spec": {"d", "h", "g"}, "data": {"levels"}}`.
    pub input: PathBuf,
    #[arg(long, default_value_t = 10)]
    pub imax: i64,
    #[arg(long, default_value_t = 10)]
    pub nmax: i64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SelfcheckArgs {
    #[arg(long, default_value_t = crate::random::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub count: usize,
}

#[derive(Deserialize)]
struct TrigradedInput {
    spec: TrigradedRingSpec,
    data: TrigradedFreeData,
}

#[derive(Serialize)]
struct TrigradedCell {
    i: i64,
    n: i64,
    bound: i64,
    max_shifted_twist: Option<i64>,
    ok: bool,
}

fn parse_claim(s: &str) -> std::result::Result<((Variant, u8), i64), String> {
    let (key, e) = s.split_once('=').ok_or("expected variant:parity=e")?;
    let (v, p) = key.split_once(':').ok_or("expected variant:parity=e")?;
    let variant: Variant = v.parse().map_err(|e: Error| e.to_string())?;
    let parity: u8 = p.parse().map_err(|_| format!("bad parity {p:?}"))?;
    if parity > 1 {
        return Err(format!("parity must be 0 or 1, got {parity}"));
    }
    let e: i64 = e.parse().map_err(|_| format!("bad constant {e:?}"))?;
    Ok(((variant, parity), e))
}

fn load(path: &Path) -> Result<ProblemFile> {
    parse_problem(&std::fs::read_to_string(path)?)
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).map_err(|e| Error::Io(e.to_string()))?;
    Ok(())
}

fn emit(out: Option<&Path>, contents: &str) -> Result<()> {
    match out {
        Some(p) => write_atomic(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

/// Runs one command and returns its exit code; errors map through
/// [`Error::exit_code`].
pub fn run(cli: Cli) -> Result<i32> {
    if let Some(t) = cli.threads {
        // Fails only if the pool already exists, in which case it is kept.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match cli.command {
        Command::Resolve(a) => {
            let p = load(&a.input.problem)?;
            let m = p.module(&a.input.module)?;
            let table = if a.over_a {
                betti_table(&resolve_over_a(p.ring(), &m, p.run.cap)?)
            } else {
                betti_over_q(p.ring(), &m)?
            };
            emit(a.out.as_deref(), &table.to_csv())?;
        }
        Command::Reg(a) => {
            let p = load(&a.problem)?;
            println!("{}", regularity(p.ring(), &p.module(&a.module)?)?);
        }
        Command::Ext(a) => homology_command(&a, false)?,
        Command::Tor(a) => homology_command(&a, true)?,
        Command::Rho(a) => {
            let p = load(&a.problem)?;
            let ideal = p.ideal(&a.ideal)?;
            let n = p.module(&a.module)?;
            let b = rho_upper(p.ring(), &ideal, &n, &p.candidate_ideals()?, a.nmax)?;
            let gens: Vec<String> = b.witness.generators().iter().map(|g| g.to_string()).collect();
            let report = json!({
                "rho_upper": b.value,
                "witness": gens,
                "witness_exponent": b.witness_exponent,
                "truncated": b.truncated,
            });
            println!("{}", serde_json::to_string_pretty(&report).expect("plain JSON"));
        }
        Command::Sweep(a) => {
            let p = load(&a.problem)?;
            let t = sweep_command(&p, &a)?;
            if a.csv.is_none() && a.json.is_none() {
                print!("{}", t.to_csv()?);
            }
            if let Some(c) = &a.csv {
                write_atomic(c, &t.to_csv()?)?;
            }
            if let Some(j) = &a.json {
                write_atomic(j, &t.to_json())?;
            }
        }
        Command::Verify(a) => {
            let t = ExtRegTable::from_json(&std::fs::read_to_string(&a.table)?)?;
            let rho = a
                .rho
                .or(t.metadata.rho_upper)
                .ok_or_else(|| Error::Precondition("no reduction bound given or recorded".into()))?;
            let f = a
                .f
                .or(t.metadata.f)
                .ok_or_else(|| Error::Precondition("no f given or recorded".into()))?;
            let claims: BTreeMap<(Variant, u8), i64> = a.claims.into_iter().collect();
            let report = verify_bounds(&t, rho, f, &claims);
            let text = serde_json::to_string_pretty(&report).expect("plain JSON") + "\n";
            emit(a.out.as_deref(), &text)?;
            if !report.is_sound() {
                return Ok(EXIT_VIOLATION);
            }
        }
        Command::TrigradedBound(a) => {
            let input: TrigradedInput = serde_json::from_str(&std::fs::read_to_string(&a.input)?)
                .map_err(|e| Error::Semantic {
                    line: e.line(),
                    message: e.to_string(),
                })?;
            let (spec, data) = (input.spec, input.data);
            let k = bound_constants(&spec, &data)?;
            let mut cells = Vec::new();
            let mut all_ok = true;
            for i in 0..=a.imax {
                for n in 0..=a.nmax {
                    let shifted = (0..data.levels.len())
                        .filter_map(|l| component_twists(&spec, &data, l, i, n).into_iter().max().map(|m| m - l as i64))
                        .max();
                    let bound = component_bound(&spec, &k, i, n);
                    let ok = (0..data.levels.len()).all(|l| max_twist_bound_check(&spec, &data, l, i, n))
                        && shifted.is_none_or(|m| m <= bound);
                    all_ok &= ok;
                    cells.push(TrigradedCell {
                        i,
                        n,
                        bound,
                        max_shifted_twist: shifted,
                        ok,
                    });
                }
            }
            let report = json!({ "c": k.c, "e": k.e, "g1": spec.g1(), "h1": spec.h1(), "cells": cells });
            emit(a.out.as_deref(), &(serde_json::to_string_pretty(&report).expect("plain JSON") + "\n"))?;
            if !all_ok {
                return Ok(EXIT_VIOLATION);
            }
        }
        Command::Selfcheck(a) => {
            let r = selfcheck(a.seed, a.count)?;
            println!("{}", serde_json::to_string_pretty(&r).expect("plain JSON"));
            if !r.passed() {
                return Ok(EXIT_VIOLATION);
            }
        }
    }
    Ok(0)
}

fn homology_command(a: &HomologyArgs, is_tor: bool) -> Result<()> {
    let p = load(&a.problem)?;
    let (m, n) = (p.module(&a.m)?, p.module(&a.n)?);
    let h = if is_tor {
        tor(p.ring(), &m, &n, a.index)?
    } else {
        ext(p.ring(), &m, &n, a.index)?
    };
    let reg = regularity(p.ring(), h.presentation())?;
    let name = format!("{}{}", if is_tor { "Tor" } else { "Ext" }, a.index);
    let line = NamedModule::from_presentation(&name, h.presentation()).to_line() + "\n";
    println!("{reg}");
    match &a.out {
        Some(path) => write_atomic(path, &line),
        None => {
            print!("{line}");
            Ok(())
        }
    }
}

fn sweep_command(p: &ProblemFile, a: &SweepArgs) -> Result<ExtRegTable> {
    let (m, n) = (p.module(&a.m)?, p.module(&a.n)?);
    let ideal: IdealData = p.ideal(&a.ideal)?;
    let rho = match a.rho {
        Some(r) => Some(r),
        None => Some(rho_upper(p.ring(), &ideal, &n, &p.candidate_ideals()?, p.run.nmax.max(2))?.value),
    };
    let cfg = SweepConfig {
        imax: a.imax.unwrap_or(p.run.imax),
        nmax: a.nmax.unwrap_or(p.run.nmax),
        variants: a.variants.clone(),
        rho_upper: rho,
    };
    sweep(p.ring(), &m, &n, &ideal, &cfg)
}

/// Parses the process arguments, runs, and returns the exit code.
pub fn main_exit_code() -> i32 {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
