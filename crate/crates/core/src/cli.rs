//! The `qcovers` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failure, 3 budget
//! exceeded. Reports go to the given writer (stdout in the binary), logs to
//! stderr.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::acceptance::{self, Suite};
use crate::covers::{homology_report, DEFAULT_MAX_DEGREE};
use crate::cyclotomic::default_embedding_index;
use crate::hquot::{find_psi_n, image_bfs, reduce_rep, DEFAULT_BFS_CAP};
use crate::pantsrep::{pants_rep, schottky_certificate, GroupWord};
use crate::projmat::{all_embeddings, proj_order, spectral_certificate, Order};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "qcovers",
    version,
    about = "Quantum representations of the pair of pants, finite quotients and simple-loop homology"
)]
pub struct RunConfig {
    /// Odd prime p >= 5.
    #[arg(long, global = true, default_value_t = 7)]
    pub p: u32,
    /// Embedding index j (ζ ↦ e^{2πij/p}); defaults to the root nearest e^{iπ/6}.
    #[arg(long, global = true)]
    pub j: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for randomised suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Element budget for finite-image closure.
    #[arg(long, global = true, env = "QCOVERS_BFS_CAP", default_value_t = DEFAULT_BFS_CAP)]
    pub bfs_cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact trace and determinant of ρ(w).
    Trace {
        #[arg(long)]
        word: String,
    },
    /// Projective order of ρ(w), with a spectral witness when infinite.
    Order {
        #[arg(long)]
        word: String,
    },
    /// Finite image G_k modulo h^{k+1}.
    Image {
        #[arg(long)]
        k: u32,
    },
    /// Simple-loop homology of the level-k cover.
    Cover {
        #[arg(long, required_unless_present = "auto_n", conflicts_with = "auto_n")]
        k: Option<u32>,
        /// Use the level N from the ψ search.
        #[arg(long = "auto-n")]
        auto_n: bool,
        /// Largest cover degree to build.
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: usize,
    },
    /// Ping-pong certificate for a free subgroup.
    Schottky,
    /// Run the acceptance suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::Fast)]
        suite: Suite,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter(_) | Error::MalformedWord { .. } => EXIT_USAGE,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_VERIFICATION,
    }
}

struct Outcome {
    body: Map<String, Value>,
    meta: Map<String, Value>,
    ok: bool,
}

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other);
            m
        }
    }
}

fn execute(cfg: &RunConfig) -> Result<Outcome> {
    let j = cfg.j.unwrap_or_else(|| default_embedding_index(cfg.p));
    let rep = pants_rep(cfg.p, j)?;
    let mut meta = Map::new();
    meta.insert("p".into(), json!(cfg.p));
    meta.insert("j".into(), json!(j));
    meta.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    let mut ok = true;
    let body = match &cfg.command {
        Command::Trace { word } => {
            let w = GroupWord::parse(word)?;
            let m = rep.eval_word(&w);
            let cert = spectral_certificate(&m, j)?;
            let tr = m.trace();
            let z = tr.embed(j)?;
            json!({
                "word": w,
                "trace": tr,
                "trace_text": tr.to_string(),
                "det": m.det().to_string(),
                "trace_embedded": [z.re, z.im],
                "abs_trace": cert.abs_trace,
            })
        }
        Command::Order { word } => {
            let w = GroupWord::parse(word)?;
            let m = rep.eval_word(&w);
            let order = proj_order(&m);
            let mut out = json!({ "word": w, "order": order });
            if order == Order::Infinite {
                let cert = spectral_certificate(&m, j)?;
                out["witness"] =
                    json!({"j": j, "abs_trace": cert.abs_trace, "margin": cert.margin});
            } else {
                let max_margin = all_embeddings(cfg.p)
                    .map(|e| spectral_certificate(&m, e).map(|c| c.margin))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .fold(0.0f64, f64::max);
                out["max_margin"] = json!(max_margin);
            }
            out
        }
        Command::Image { k } => {
            meta.insert("k".into(), json!(k));
            let img = image_bfs(&reduce_rep(&rep, *k)?, cfg.bfs_cap)?;
            serde_json::to_value(&img).expect("serialisable")
        }
        Command::Cover {
            k,
            auto_n,
            max_degree,
        } => {
            let psi = find_psi_n(&rep)?;
            let k = if *auto_n {
                psi.n
            } else {
                k.expect("clap enforces --k or --auto-n")
            };
            meta.insert("k".into(), json!(k));
            meta.insert("N".into(), json!(psi.n));
            meta.insert("e".into(), json!(psi.e));
            let cap = (*max_degree).min(cfg.bfs_cap);
            let r = homology_report(&rep, k, &psi, cap)?;
            if k == psi.n {
                ok = r.proper && r.bound_satisfied && r.psi_witness_excluded == Some(true);
            }
            serde_json::to_value(&r).expect("serialisable")
        }
        Command::Schottky => {
            let cert = schottky_certificate(&rep, 6, 20, 1000)?;
            serde_json::to_value(&cert).expect("serialisable")
        }
        Command::Verify { suite } => {
            if cfg.p != 7 {
                log::warn!("the acceptance suite always runs at p = 7");
            }
            let r = acceptance::run(*suite, cfg.seed)?;
            ok = r.all_passed;
            serde_json::to_value(&r).expect("serialisable")
        }
    };
    Ok(Outcome {
        body: object(body),
        meta,
        ok,
    })
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(x, indent + 1, out);
                    }
                    Value::Array(a) if a.iter().any(|y| y.is_object()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for y in a {
                            out.push_str(&format!("{pad}  -\n"));
                            render_text(y, indent + 2, out);
                        }
                    }
                    _ => out.push_str(&format!("{pad}{k}: {x}\n")),
                }
            }
        }
        other => out.push_str(&format!("{pad}{other}\n")),
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// the report to `out`. Returns the process exit code.
pub fn run<I, T, W>(args: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let (value, code) = match execute(&cfg) {
        Ok(o) => {
            let mut top = Map::new();
            top.insert("schema".into(), json!(1));
            top.insert("meta".into(), Value::Object(o.meta));
            top.extend(o.body);
            (
                Value::Object(top),
                if o.ok { EXIT_OK } else { EXIT_VERIFICATION },
            )
        }
        Err(e) => {
            log::error!("{e}");
            let code = exit_code(&e);
            (
                json!({"schema": 1, "error": e.to_string(), "exit_code": code}),
                code,
            )
        }
    };
    let text = match cfg.format {
        Format::Json => serde_json::to_string_pretty(&value).expect("serialisable") + "\n",
        Format::Text => {
            let mut s = String::new();
            render_text(&value, 0, &mut s);
            s
        }
    };
    let _ = out.write_all(text.as_bytes());
    code
}
