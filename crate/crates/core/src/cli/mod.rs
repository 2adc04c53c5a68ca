//! Batch driver: `sweep` evaluates outage over a rate or SNR grid and writes
//! CSV; `params` echoes inputs and derived channel quantities.
//!
//! Exit codes: 0 success, 2 configuration error, 3 when some rows carry the
//! error sentinel.

mod config;
mod sweep;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::channel::PointingSource;
use crate::exec::Executor;
use crate::outage::{diversity_order_cc, diversity_order_type1};

pub use config::{
    parse, resolve, Method, Resolved, RunConfig, SweepSpec, SweepVariable,
};
pub use sweep::{execute, SweepOutcome, SweepRow, CSV_HEADER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_PARTIAL: i32 = 3;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config: {0}")]
    Io(String),
    #[error("malformed config: {0}")]
    Parse(String),
    #[error("invalid config: {0}")]
    Invalid(String),
}

#[derive(Debug, Parser)]
#[command(name = "thz-harq", version, about = "Outage analysis of HARQ-aided THz links")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate outage over the configured sweep and write CSV.
    Sweep(CommonArgs),
    /// Print inputs and derived parameters.
    Params(CommonArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long, value_name = "PATH")]
    pub config: PathBuf,
    /// Output file (standard output when omitted).
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Worker threads (0 = one per core).
    #[arg(long, value_name = "N")]
    pub threads: Option<usize>,
    /// Overrides the Monte-Carlo seed.
    #[arg(long, value_name = "U64")]
    pub seed: Option<u64>,
}

/// Reads and resolves a configuration, applying a seed override.
pub fn load(path: &Path, seed: Option<u64>) -> Result<Resolved, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError::Io(format!("{}: {e}", path.display())))?;
    let mut raw = parse(&text)?;
    if let Some(s) = seed {
        raw.montecarlo.seed = s;
    }
    resolve(raw)
}

pub fn run_sweep(path: &Path, seed: Option<u64>, exec: Executor) -> Result<SweepOutcome, ConfigError> {
    let r = load(path, seed)?;
    execute(&r, exec).map_err(|e| ConfigError::Invalid(e.to_string()))
}

pub fn print_params(path: &Path) -> Result<String, ConfigError> {
    Ok(params_text(&load(path, None)?))
}

fn opt(v: Option<f64>) -> String {
    v.map_or("-".to_string(), |x| x.to_string())
}

pub fn params_text(r: &Resolved) -> String {
    let mut s = String::new();
    let l = &r.link;
    let raw = &r.raw;
    let fp = &r.fading;
    let p = &r.pointing;
    let _ = writeln!(s, "[link]");
    let _ = writeln!(s, "frequency_hz = {}", l.frequency_hz);
    let _ = writeln!(s, "distance_m = {}", l.distance_m);
    let _ = writeln!(s, "tx_gain_db = {}", raw.link.tx_gain_db);
    let _ = writeln!(s, "rx_gain_db = {}", raw.link.rx_gain_db);
    let _ = writeln!(s, "kappa_per_m = {}", l.kappa_per_m);
    let _ = writeln!(s, "temperature_k = {}", l.temperature_k);
    let _ = writeln!(s, "humidity = {}", l.humidity);
    let _ = writeln!(s, "pressure_pa = {}", l.pressure_pa);
    let _ = writeln!(s, "[fading]");
    let _ = writeln!(s, "alpha = {}", fp.alpha);
    let _ = writeln!(s, "mu = {}", fp.mu);
    let _ = writeln!(s, "h_f_hat = {}", fp.h_f_hat);
    let _ = writeln!(s, "[pointing]");
    let pin = &raw.pointing;
    let _ = writeln!(s, "w_d1 = {}", opt(pin.w_d1));
    let _ = writeln!(s, "r1 = {}", opt(pin.r1));
    let _ = writeln!(s, "sigma_s = {}", opt(pin.sigma_s));
    let _ = writeln!(s, "w_e = {}", opt(pin.w_e));
    let _ = writeln!(s, "s0 = {}", opt(pin.s0));
    let _ = writeln!(s, "phi = {}", opt(pin.phi));
    let _ = writeln!(s, "[harq]");
    let _ = writeln!(s, "rounds = {}", r.rounds);
    let _ = writeln!(s, "rate = {}", opt(raw.harq.rate));
    let _ = writeln!(s, "snr_db = {}", opt(raw.harq.snr_db));
    if let Some(sw) = &r.sweep {
        let _ = writeln!(s, "[sweep]");
        let _ = writeln!(s, "variable = {}", sw.variable.label());
        let _ = writeln!(s, "start = {}", sw.start);
        let _ = writeln!(s, "stop = {}", sw.stop);
        let _ = writeln!(s, "step = {}", sw.step);
        let m: Vec<_> = sw.methods.iter().map(|m| m.label()).collect();
        let sc: Vec<_> = sw.schemes.iter().map(|x| x.label()).collect();
        let _ = writeln!(s, "methods = {}", m.join(","));
        let _ = writeln!(s, "schemes = {}", sc.join(","));
    }
    let _ = writeln!(s, "[montecarlo]");
    let _ = writeln!(s, "trials = {}", r.mc.trials);
    let _ = writeln!(s, "seed = {}", r.mc.seed);
    let _ = writeln!(s, "streams = {}", r.mc.streams);
    let _ = writeln!(s, "confidence = {}", r.mc.confidence);
    let _ = writeln!(s, "[derived]");
    let _ = writeln!(s, "h_l = {}", r.h_l);
    let _ = writeln!(s, "zeta = {}", opt(p.zeta));
    let _ = writeln!(s, "s0 = {}", p.s0);
    let _ = writeln!(s, "w_e = {}", opt(p.w_e));
    let _ = writeln!(s, "phi = {}", p.phi);
    let source = match p.source {
        PointingSource::Geometry => "geometry",
        PointingSource::Direct { s0_defaulted: true } => "direct (s0 defaulted to erf(1)^2)",
        PointingSource::Direct { s0_defaulted: false } => "direct",
    };
    let _ = writeln!(s, "pointing_source = {source}");
    if let Some(note) = &r.pointing_note {
        let _ = writeln!(s, "note = {note}");
    }
    let regime = if fp.regime().sign() > 0 {
        "alpha*mu - phi > 0 (pointing-limited)"
    } else {
        "alpha*mu - phi < 0 (fading-limited)"
    };
    let _ = writeln!(s, "regime = {regime}");
    let _ = writeln!(s, "diversity_order_type1 = {}", diversity_order_type1(fp, r.rounds));
    let _ = writeln!(s, "diversity_order_cc = {}", diversity_order_cc(fp, r.rounds));
    s
}

fn configure_threads(threads: Option<usize>) -> Executor {
    match threads {
        Some(1) => Executor::Sequential,
        #[cfg(feature = "parallel")]
        Some(n) => {
            // A second initialisation (e.g. repeated in-process runs) keeps
            // the existing pool.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            Executor::Parallel
        }
        _ => Executor::default(),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| e.to_string())
        }
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let (args, is_sweep) = match &cli.command {
        Command::Sweep(a) => (a, true),
        Command::Params(a) => (a, false),
    };
    let exec = configure_threads(args.threads);
    let resolved = match load(&args.config, args.seed) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CONFIG;
        }
    };
    let (text, code) = if is_sweep {
        match execute(&resolved, exec) {
            Ok(o) => {
                let code = if o.failures > 0 {
                    eprintln!("warning: {} row(s) failed numerically", o.failures);
                    EXIT_PARTIAL
                } else {
                    EXIT_OK
                };
                (o.csv, code)
            }
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_CONFIG;
            }
        }
    } else {
        (params_text(&resolved), EXIT_OK)
    };
    match emit(&text, args.out.as_deref()) {
        Ok(()) => code,
        Err(e) => {
            eprintln!("error: cannot write output: {e}");
            EXIT_IO
        }
    }
}
