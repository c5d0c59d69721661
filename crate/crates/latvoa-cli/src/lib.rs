//! Command-line front end: config loading, element parsing, subcommands and JSON reports.

pub mod config;
pub mod expr;
pub mod pool;
pub mod suites;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use latvoa::bilform::{calibrate_upto, form, Check};
use latvoa::fock::{FockVector, Space};
use latvoa::modvoa::{Epsilon, PModule};
use latvoa::vertex::Vertex;
use latvoa::zhu::{circle, reduce_a1, reduce_b, reduce_p, star};
use latvoa::{fmt_q, q, qr, Q};
use num::ToPrimitive;
use serde_json::{json, Value};
use thiserror::Error;

use crate::config::Loaded;
use crate::expr::{parse_element, ParseError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("CONFIG_ERROR: {0}")]
    Config(String),
    #[error("USAGE_ERROR: {0}")]
    Usage(String),
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Lib(latvoa::Error),
}

impl CliError {
    pub fn lib(e: latvoa::Error) -> Self {
        CliError::Lib(e)
    }

    fn diagnostic(&self) -> Value {
        match self {
            CliError::Config(m) => json!({"kind": "CONFIG_ERROR", "message": m}),
            CliError::Usage(m) => json!({"kind": "USAGE_ERROR", "message": m}),
            CliError::Parse(p) => json!({"kind": p.kind(), "position": p.position(), "message": p.to_string()}),
            CliError::Lib(e) => {
                let text = e.to_string();
                let kind = text.split(':').next().unwrap_or("ERROR").to_string();
                json!({"kind": kind, "message": text})
            }
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "latvoa", about = "Exact computations in lattice vertex operator algebras")]
pub struct Cli {
    /// JSON configuration document.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Weight cutoff for verification suites.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub cutoff: Option<i64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for suites.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Target {
    Vb,
    Va1,
    Vp,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum EpsArg {
    #[value(name = "0")]
    Zero,
    Half,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// a_n b
    Mode {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        n: i64,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Res_z Y(a,z) b (1+z)^p / z^q
    Residue {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        p: u32,
        #[arg(allow_hyphen_values = true)]
        q: i64,
    },
    Circle {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    Star {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Normal form of the class of A in a Zhu algebra.
    Reduce {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Graded dimensions of V_M.
    Character {
        #[arg(long)]
        monoid: String,
        #[arg(long)]
        upto: i64,
    },
    /// The invariant bilinear form (U|V).
    Form {
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// a_n w in a V_P-module L^(ε,λ).
    ModuleAct {
        #[arg(long, value_enum)]
        epsilon: EpsArg,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        n: i64,
        #[arg(allow_hyphen_values = true)]
        w: String,
    },
    /// Runs a verification suite.
    Verify { suite: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Mode { .. } => "mode",
            Command::Residue { .. } => "residue",
            Command::Circle { .. } => "circle",
            Command::Star { .. } => "star",
            Command::Reduce { .. } => "reduce",
            Command::Character { .. } => "character",
            Command::Form { .. } => "form",
            Command::ModuleAct { .. } => "module-act",
            Command::Verify { .. } => "verify",
        }
    }
}

enum Outcome {
    Result(Value),
    Checks(Vec<Check>),
}

fn parse(text: &str, space: &Space) -> Result<FockVector, CliError> {
    Ok(parse_element(text, space)?)
}

fn plain(space: &Space) -> Space {
    Space { lambda: None, ..space.clone() }
}

fn execute(cli: &Cli, cfg: &Loaded) -> Result<(Value, Outcome), CliError> {
    let sp = &cfg.space;
    let lib = CliError::lib;
    Ok(match &cli.command {
        Command::Mode { a, n, b } => {
            let vx = Vertex::new(plain(sp));
            let r = vx.state_mode(&parse(a, sp)?, *n, &parse(b, sp)?).map_err(lib)?;
            (json!({"a": a, "n": n, "b": b}), Outcome::Result(json!(sp.format(&r))))
        }
        Command::Residue { a, b, p, q } => {
            let vx = Vertex::new(plain(sp));
            let r = vx.weighted_residue(&parse(a, sp)?, &parse(b, sp)?, *p, *q).map_err(lib)?;
            (json!({"a": a, "b": b, "p": p, "q": q}), Outcome::Result(json!(sp.format(&r))))
        }
        Command::Circle { a, b } | Command::Star { a, b } => {
            let vx = Vertex::new(plain(sp));
            let (u, v) = (parse(a, sp)?, parse(b, sp)?);
            let r = if matches!(cli.command, Command::Circle { .. }) { circle(&vx, &u, &v) } else { star(&vx, &u, &v) }.map_err(lib)?;
            (json!({"a": a, "b": b}), Outcome::Result(json!(sp.format(&r))))
        }
        Command::Reduce { target, a } => {
            let u = parse(a, sp)?;
            let nf = match target {
                Target::Vb => {
                    let n = cfg.rank_one_n().ok_or_else(|| CliError::Config("target vb needs a rank-one even lattice".into()))?;
                    reduce_b(&u, n as u32)
                }
                Target::Va1 => {
                    if cfg.rank_one_n() != Some(1) {
                        return Err(CliError::Config("target va1 needs the lattice Zα with (α|α) = 2".into()));
                    }
                    reduce_a1(&u)
                }
                Target::Vp => {
                    if !cfg.is_a2() {
                        return Err(CliError::Config("target vp needs the A2 lattice".into()));
                    }
                    reduce_p(&u)
                }
            }
            .map_err(lib)?;
            let t = match target {
                Target::Vb => "vb",
                Target::Va1 => "va1",
                Target::Vp => "vp",
            };
            (json!({"target": t, "a": a}), Outcome::Result(json!(nf.to_string())))
        }
        Command::Character { monoid, upto } => {
            let m = cfg.monoid(monoid)?;
            let half = cfg.config.gram.iter().enumerate().any(|(i, r)| r[i] % 2 != 0);
            let step = if half { qr(1, 2) } else { q(1) };
            let mut w = q(0);
            let mut rows = Vec::new();
            while w <= q(*upto) {
                let d = sp.graded_dim(&m, &w).map_err(lib)?;
                rows.push(json!({"weight": fmt_q(&w), "dim": d}));
                w += &step;
            }
            (json!({"monoid": monoid, "upto": upto}), Outcome::Result(Value::Array(rows)))
        }
        Command::Form { u, v } => {
            let vx = Vertex::new(plain(sp));
            let (x, y) = (parse(u, sp)?, parse(v, sp)?);
            let top = x.terms.keys().chain(y.terms.keys()).map(|t| sp.weight(t)).max().unwrap_or_else(|| q(0));
            let max_w = top.ceil().to_integer().to_i64().unwrap_or(0).max(0);
            let ctx = calibrate_upto(&vx, max_w).map_err(lib)?;
            let f = form(&vx, &ctx, &x, &y).map_err(lib)?;
            (json!({"u": u, "v": v}), Outcome::Result(json!(fmt_q(&f))))
        }
        Command::ModuleAct { epsilon, a, n, w } => {
            if !cfg.is_a2() {
                return Err(CliError::Config("module-act needs the A2 lattice".into()));
            }
            let eps = match epsilon {
                EpsArg::Zero => Epsilon::Zero,
                EpsArg::Half => Epsilon::HalfAlpha,
            };
            let spec = match &sp.lambda {
                None => return Err(CliError::Config("module-act needs a lambda block".into())),
                Some(l) if l.pairings[0] != Q::from_integer(0.into()) => return Err(CliError::Config("module-act needs (λ|α) = 0".into())),
                Some(l) => latvoa::modvoa::PModuleSpec { epsilon: eps, pairing_beta_lambda: l.pairings[1].clone(), lambda_norm: l.norm.clone() },
            };
            let m = PModule::new(spec).map_err(lib)?;
            let r = m.mode(&parse(a, &plain(sp))?, *n, &parse(w, sp)?).map_err(lib)?;
            let e = match epsilon {
                EpsArg::Zero => "0",
                EpsArg::Half => "half",
            };
            (json!({"epsilon": e, "a": a, "n": n, "w": w}), Outcome::Result(json!(sp.format(&r))))
        }
        Command::Verify { suite } => {
            let opt = suites::Options { cutoff: cli.cutoff, seed: cli.seed, jobs: cli.jobs };
            let checks = suites::run(suite, cfg, &opt)?;
            (json!({"suite": suite, "cutoff": cli.cutoff, "seed": cli.seed}), Outcome::Checks(checks))
        }
    })
}

/// Runs one invocation; returns the exit code and the JSON report.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let start = Instant::now();
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) {
                return (0, e.to_string());
            }
            let report = json!({"command": Value::Null, "error": {"kind": "USAGE_ERROR", "message": e.to_string()}});
            return (2, pretty(&report));
        }
    };
    let command = cli.command.name();
    let fail = |digest: Value, err: CliError| {
        let report = json!({"command": command, "config_digest": digest, "error": err.diagnostic(), "elapsed_ms": elapsed(start)});
        (2, pretty(&report))
    };
    let Some(path) = &cli.config else {
        return fail(Value::Null, CliError::Config("--config is required".into()));
    };
    let cfg = match Loaded::from_path(path) {
        Ok(c) => c,
        Err(e) => return fail(Value::Null, e),
    };
    let (inputs, outcome) = match execute(&cli, &cfg) {
        Ok(r) => r,
        Err(e) => return fail(json!(cfg.digest), e),
    };
    let mut report = json!({"command": command, "config_digest": cfg.digest, "inputs": inputs});
    let code = match outcome {
        Outcome::Result(v) => {
            report["result"] = v;
            0
        }
        Outcome::Checks(cs) => {
            let ok = cs.iter().all(|c| c.pass);
            report["checks"] = cs.iter().map(|c| json!({"name": c.name, "pass": c.pass, "witness": c.witness})).collect();
            i32::from(!ok)
        }
    };
    report["elapsed_ms"] = json!(elapsed(start));
    (code, pretty(&report))
}

fn elapsed(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}
