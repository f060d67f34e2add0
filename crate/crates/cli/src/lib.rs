//! Reproducible sweeps over the cluster chain, written as CSV or JSON with a
//! metadata sidecar, plus an exact-diagonalization cross-check.

pub mod error;
pub mod sweep;
pub mod table;
pub mod tasks;
pub mod verify;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use clusterchain::entanglement::Remainder;

pub use error::CliError;
pub use table::{Cell, Format, Table};
pub use tasks::Grid;

pub const THREADS_ENV: &str = "CLUSTERCHAIN_THREADS";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSweep(pub Vec<usize>);

#[derive(Debug, Clone, PartialEq)]
pub struct FloatList(pub Vec<f64>);

fn int_sweep(s: &str) -> Result<IntSweep, String> {
    sweep::parse_int_sweep(s).map(IntSweep)
}

fn float_list(s: &str) -> Result<FloatList, String> {
    let v = sweep::parse_float_list(s)?;
    if v.iter().any(|&h| h < 0.0) {
        return Err("field values must be >= 0".into());
    }
    Ok(FloatList(v))
}

fn l_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or("expected lo:hi")?;
    let a = a
        .trim()
        .parse::<usize>()
        .map_err(|_| format!("bad lower bound '{a}'"))?;
    let b = b
        .trim()
        .parse::<usize>()
        .map_err(|_| format!("bad upper bound '{b}'"))?;
    if a > b {
        return Err(format!("range {a}:{b} runs backwards"));
    }
    Ok((a, b))
}

fn coupling(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(j) if j.is_finite() && j != 0.0 => Ok(j),
        _ => Err(format!("'{s}' is not a finite nonzero coupling")),
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "clusterchain",
    version,
    about = "Exact sweeps over the periodic generalized cluster chain"
)]
pub struct Cli {
    #[command(subcommand)]
    pub task: Task,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// System sizes: `a:b`, `odd:a:b`, `even:a:b` or comma lists.
    #[arg(long = "n", value_parser = int_sweep)]
    pub n: Option<IntSweep>,
    /// Interaction ranges, same grammar as `--n`.
    #[arg(long = "m", value_parser = int_sweep)]
    pub m: Option<IntSweep>,
    /// Transverse fields, comma separated.
    #[arg(long = "h", value_parser = float_list)]
    pub h: Option<FloatList>,
    /// Coupling J.
    #[arg(long = "j", default_value = "1", value_parser = coupling)]
    pub j: f64,
    /// Output file. Without it the table goes to stdout and no sidecar is written.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Worker threads; `CLUSTERCHAIN_THREADS` takes precedence.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub parallelism: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RemainderArg {
    Back,
    Front,
}

impl From<RemainderArg> for Remainder {
    fn from(r: RemainderArg) -> Self {
        match r {
            RemainderArg::Back => Remainder::Back,
            RemainderArg::Front => Remainder::Front,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Task {
    /// Block entropies S_l of the ground state.
    EntropyProfile {
        #[command(flatten)]
        common: Common,
        /// Inclusive block lengths `lo:hi`; defaults to `m:N/2`.
        #[arg(long, value_parser = l_range)]
        l_range: Option<(usize, usize)>,
    },
    /// Conditional mutual information on 3- and/or 4-arc ring partitions.
    CmiSweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "3,4", value_parser = int_sweep)]
        parts: IntSweep,
        /// Which arcs absorb the remainder when N is not divisible.
        #[arg(long, value_enum, default_value = "back")]
        remainder: RemainderArg,
    },
    /// Lowest many-body levels relative to the ground energy.
    Spectrum {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 10)]
        k: usize,
    },
    /// Ground-state degeneracy.
    Degeneracy {
        #[command(flatten)]
        common: Common,
    },
    /// Half-chain entropies and a logarithmic fit per m; the field defaults to J.
    CriticalScaling {
        #[command(flatten)]
        common: Common,
    },
    /// Free-fermion results against exact diagonalization.
    Verify {
        #[command(flatten)]
        common: Common,
    },
}

impl Task {
    pub fn name(&self) -> &'static str {
        match self {
            Task::EntropyProfile { .. } => "entropy-profile",
            Task::CmiSweep { .. } => "cmi-sweep",
            Task::Spectrum { .. } => "spectrum",
            Task::Degeneracy { .. } => "degeneracy",
            Task::CriticalScaling { .. } => "critical-scaling",
            Task::Verify { .. } => "verify",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Task::EntropyProfile { common, .. }
            | Task::CmiSweep { common, .. }
            | Task::Spectrum { common, .. }
            | Task::Degeneracy { common }
            | Task::CriticalScaling { common }
            | Task::Verify { common } => common,
        }
    }
}

/// Thread count: the environment variable wins over the flag; default 1.
pub fn resolve_parallelism(flag: Option<u32>) -> Result<usize, CliError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(CliError::Usage(format!(
                "{THREADS_ENV}='{v}' is not a positive integer"
            ))),
        },
        Err(_) => Ok(flag.map_or(1, |p| p as usize)),
    }
}

fn grid_for(task: &Task) -> Result<Grid, CliError> {
    let c = task.common();
    let verify = matches!(task, Task::Verify { .. });
    let required = |v: &Option<IntSweep>, flag: &str, default: &str| match v {
        Some(s) => Ok(s.0.clone()),
        None if verify => Ok(sweep::parse_int_sweep(default).expect("valid default")),
        None => Err(CliError::Usage(format!("{} requires --{flag}", task.name()))),
    };
    let h = match (&c.h, task) {
        (Some(h), _) => h.0.clone(),
        (None, Task::Verify { .. }) => vec![0.0, 0.5, 1.0, 1.5],
        (None, Task::CriticalScaling { .. }) => vec![c.j.abs()],
        (None, _) => vec![0.0],
    };
    Ok(Grid {
        n: required(&c.n, "n", "6:12")?,
        m: required(&c.m, "m", "1:4")?,
        h,
        j: c.j,
    })
}

fn meta(task: &Task, grid: &Grid, columns: &[&str], rows: usize) -> Value {
    let c = task.common();
    let mut parameters = grid.describe();
    match task {
        Task::EntropyProfile { l_range, .. } => {
            parameters["l_range"] = match l_range {
                Some((a, b)) => json!([a, b]),
                None => json!("m:N/2"),
            };
        }
        Task::CmiSweep { parts, remainder, .. } => {
            parameters["parts"] = json!(parts.0);
            parameters["remainder"] = json!(match remainder {
                RemainderArg::Back => "last arcs absorb N mod parts",
                RemainderArg::Front => "first arcs absorb N mod parts",
            });
        }
        Task::Spectrum { k, .. } => parameters["k"] = json!(k),
        _ => {}
    }
    json!({
        "task": task.name(),
        "artifact": { "name": "clusterchain", "version": env!("CARGO_PKG_VERSION") },
        "format": c.format.name(),
        "columns": columns,
        "rows": rows,
        "parameters": parameters,
        "tolerances": {
            "degeneracy_tol": "1e-8 * max(|J|, h) * N",
            "entropy_clip": 1e-9,
            "zero_mode": clusterchain::freefermion::ZERO_MODE_TOL,
        },
        "conventions": {
            "hamiltonian": "H = J sum_j X_j Z_{j+1}...Z_{j+m-1} X_{j+m} - h sum_j Z_j, periodic",
            "entropy_units": "bits",
            "sites": "0-based; blocks and partitions start at site 0",
            "representative": "PLUS-sector state on energy ties; among degenerate single modes the self-conjugate one is occupied",
            "half_block": "l = (N-1)/2 for odd N, l = N/2 for even N",
            "float_format": "17 significant digits, LF line endings",
        },
    })
}

fn emit(out: Option<&Path>, format: Format, table: &Table, meta: &Value) -> Result<(), CliError> {
    let body = table.render(format);
    match out {
        Some(path) => {
            table::write_file(path, &body)?;
            table::write_json(&table::sidecar_path(path, ".meta.json"), meta)?;
        }
        None => print!("{body}"),
    }
    Ok(())
}

/// Runs one task to completion, writing its outputs.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let task = &cli.task;
    let common = task.common();
    let grid = grid_for(task)?;
    let threads = resolve_parallelism(common.parallelism)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {threads} worker threads: {e}")))?;
    let out = common.out.as_deref();

    pool.install(|| match task {
        Task::EntropyProfile { l_range, .. } => {
            let t = tasks::entropy_profile(&grid, *l_range)?;
            emit(out, common.format, &t, &meta(task, &grid, &t.columns, t.rows.len()))
        }
        Task::CmiSweep { parts, remainder, .. } => {
            if let Some(k) = parts.0.iter().find(|&&k| k != 3 && k != 4) {
                return Err(CliError::Usage(format!("--parts must be 3 or 4, got {k}")));
            }
            let t = tasks::cmi_sweep(&grid, &parts.0, (*remainder).into())?;
            emit(out, common.format, &t, &meta(task, &grid, &t.columns, t.rows.len()))
        }
        Task::Spectrum { k, .. } => {
            let t = tasks::spectrum(&grid, *k)?;
            emit(out, common.format, &t, &meta(task, &grid, &t.columns, t.rows.len()))
        }
        Task::Degeneracy { .. } => {
            let t = tasks::degeneracy(&grid)?;
            emit(out, common.format, &t, &meta(task, &grid, &t.columns, t.rows.len()))
        }
        Task::CriticalScaling { .. } => {
            let (t, fit) = tasks::critical_scaling(&grid)?;
            let m = meta(task, &grid, &t.columns, t.rows.len());
            emit(out, common.format, &t, &m)?;
            match out {
                Some(path) => table::write_json(&table::sidecar_path(path, ".fit.json"), &fit)?,
                None => println!("{}", serde_json::to_string_pretty(&fit).expect("serializable")),
            }
            Ok(())
        }
        Task::Verify { .. } => {
            let report = verify::verify(&grid)?;
            if let Some(path) = out {
                let t = &report.table;
                let mut m = meta(task, &grid, &t.columns, t.rows.len());
                m["tolerances"]["energy"] = json!(verify::ENERGY_TOL);
                m["tolerances"]["entropy"] = json!(verify::ENTROPY_TOL);
                m["failures"] = json!(report.failures);
                emit(Some(path), common.format, t, &m)?;
            }
            println!("{}", report.summary());
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::Mismatch(format!(
                    "{} checks out of tolerance",
                    report.failures.len()
                )))
            }
        }
    })
}
