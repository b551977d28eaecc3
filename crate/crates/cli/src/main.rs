use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rigidity_core::session::{run_session_str, CapsSpec, SessionReport, TheoremChoice};
use rigidity_core::suite::paper_suite;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "rigidity", version, about = "Graded module computations over quotient rings")]
struct Cli {
    #[command(flatten)]
    caps: CapFlags,
    /// Emit the machine-readable report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Default)]
struct CapFlags {
    /// Maximum resolution length.
    #[arg(long, global = true, value_name = "N")]
    cap_resolution: Option<usize>,
    /// Maximum number of S-pairs per Gröbner basis.
    #[arg(long, global = true, value_name = "N")]
    cap_pairs: Option<usize>,
    /// Number of Tor modules checked for vanishing.
    #[arg(long, global = true, value_name = "N")]
    tor_window: Option<usize>,
}

/// Where the ring and named modules come from.
#[derive(Args)]
struct Source {
    /// Session file supplying the ring and named modules.
    #[arg(long, short = 's')]
    session: Option<PathBuf>,
    /// Coefficient field, `QQ` or `ZZ/p`.
    #[arg(long, default_value = "QQ")]
    field: String,
    /// Comma-separated variable names.
    #[arg(long, value_delimiter = ',')]
    vars: Vec<String>,
    /// Generators of the defining ideal.
    #[arg(long, value_delimiter = ',')]
    ideal: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a session file.
    Run { session: PathBuf },
    /// Recompute the fixture claims and compare them with expected values.
    PaperSuite,
    /// Minimal free resolution of a module.
    Resolve {
        #[command(flatten)]
        src: Source,
        module: String,
        #[arg(long)]
        length: Option<usize>,
    },
    /// Tor modules of a pair.
    Tor(PairArgs),
    /// Ext modules of a pair.
    Ext(PairArgs),
    /// Reflexivity and torsion-freeness checks.
    Check {
        #[command(subcommand)]
        what: CheckKind,
    },
    /// Minimal-prime graph of the ring.
    HhGraph {
        #[command(flatten)]
        src: Source,
    },
    /// Check a theorem's hypotheses and conclusions on a pair.
    Verify {
        /// thm1.1, thm1.2, thm3.1, cor4.6 or the role names.
        theorem: String,
        #[command(flatten)]
        src: Source,
        left: String,
        right: String,
        /// Depth parameter for the Tor-vanishing statements.
        #[arg(long)]
        n: Option<usize>,
        /// Justification for rigidity: `hypersurface`, `power:K` or free text.
        #[arg(long)]
        rigidity: Option<String>,
    },
    /// Search a catalog for Tor-rigidity violations.
    RigiditySearch {
        #[command(flatten)]
        src: Source,
        /// Catalog modules; defaults to the built-in cyclic catalog.
        catalog: Vec<String>,
        #[arg(long)]
        window: Option<usize>,
    },
}

#[derive(Args)]
struct PairArgs {
    #[command(flatten)]
    src: Source,
    left: String,
    right: String,
    #[arg(long, default_value_t = 1)]
    from: usize,
    #[arg(long)]
    to: Option<usize>,
}

#[derive(Subcommand)]
enum CheckKind {
    Reflexive {
        #[command(flatten)]
        src: Source,
        module: String,
    },
    Torsionless {
        #[command(flatten)]
        src: Source,
        module: String,
    },
    Ntf {
        n: usize,
        #[command(flatten)]
        src: Source,
        module: String,
    },
}

fn env_caps() -> CapsSpec {
    let read = |k: &str| std::env::var(k).ok().and_then(|v| v.trim().parse().ok());
    CapsSpec {
        resolution_len: read("RIGIDITY_CAP_RESOLUTION"),
        max_pairs: read("RIGIDITY_CAP_PAIRS"),
        tor_window: read("RIGIDITY_TOR_WINDOW"),
    }
}

impl CapFlags {
    fn spec(&self) -> CapsSpec {
        CapsSpec { resolution_len: self.cap_resolution, max_pairs: self.cap_pairs, tor_window: self.tor_window }
    }
}

/// A one-task session over the source ring. Module arguments name session
/// modules when present; otherwise `k` is the residue field, `R` the free
/// module of rank one and anything else a list of generators `J` for `R/J`.
struct AdHoc {
    doc: Value,
}

impl AdHoc {
    fn new(src: &Source) -> Result<Self, String> {
        let doc = match &src.session {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))?;
                let mut v: Value = serde_json::from_str(&text).map_err(|e| format!("invalid session: {e}"))?;
                v["tasks"] = json!([]);
                if v.get("modules").is_none() {
                    v["modules"] = json!([]);
                }
                v
            }
            None => json!({
                "schema": 1,
                "ring": { "field": src.field, "vars": src.vars, "ideal": src.ideal },
                "modules": [],
                "tasks": [],
            }),
        };
        Ok(AdHoc { doc })
    }

    fn module(&mut self, arg: &str) -> String {
        let known = self.doc["modules"].as_array().is_some_and(|ms| ms.iter().any(|m| m["name"] == arg));
        if known {
            return arg.to_string();
        }
        let name = format!("arg{}", self.doc["modules"].as_array().map_or(0, Vec::len));
        let expr = match arg.trim() {
            "k" => json!({ "name": name, "residue_field": true }),
            "R" => json!({ "name": name, "free": [0] }),
            gens => json!({ "name": name, "cyclic": gens.split(',').map(str::trim).collect::<Vec<_>>() }),
        };
        self.doc["modules"].as_array_mut().unwrap().push(expr);
        name
    }

    fn run(mut self, task: Value, flags: &CapsSpec) -> SessionReport {
        self.doc["tasks"] = json!([task]);
        run_session_str(&self.doc.to_string(), &env_caps(), flags)
    }
}

fn rigidity_arg(s: &str) -> Value {
    match s {
        "hypersurface" => json!({ "class": "hypersurface_finite_pd_or_length" }),
        _ => match s.strip_prefix("power:").and_then(|p| p.parse::<u32>().ok()) {
            Some(power) => json!({ "class": "maximal_ideal_power", "power": power }),
            None => json!({ "class": "other", "reason": s }),
        },
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn out(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit(report: &SessionReport, as_json: bool) -> ExitCode {
    if as_json {
        out(&format!("{}\n", serde_json::to_string_pretty(report).expect("report serializes")));
    } else {
        out(&report.to_text());
    }
    if let (true, Some(e)) = (as_json, &report.error) {
        eprintln!("error: {e}");
    }
    ExitCode::from(report.exit_code as u8)
}

fn adhoc(src: &Source, flags: &CapsSpec, as_json: bool, build: impl FnOnce(&mut AdHoc) -> Value) -> ExitCode {
    let mut a = match AdHoc::new(src) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let task = build(&mut a);
    emit(&a.run(task, flags), as_json)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if std::env::var("RIGIDITY_FAULT").is_ok_and(|v| v == "transpose-degree-sign") {
        rigidity_core::fault::set_transpose_degree_sign(true);
    }
    let flags = cli.caps.spec();
    let json = cli.json;
    match &cli.cmd {
        Command::Run { session } => {
            let text = match std::fs::read_to_string(session) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", session.display());
                    return ExitCode::from(2);
                }
            };
            emit(&run_session_str(&text, &env_caps(), &flags), json)
        }
        Command::PaperSuite => {
            let caps = env_caps().merged(&flags).to_caps();
            let report = paper_suite(&caps);
            if json {
                out(&format!("{}\n", serde_json::to_string_pretty(&report).expect("report serializes")));
            } else {
                out(&report.to_text());
            }
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                if let Some(id) = &report.first_failure {
                    eprintln!("first failing claim: {id}");
                }
                ExitCode::from(1)
            }
        }
        Command::Resolve { src, module, length } => adhoc(src, &flags, json, |a| {
            json!({ "op": "resolve", "module": a.module(module), "length": length })
        }),
        Command::Tor(p) | Command::Ext(p) => {
            let op = if matches!(cli.cmd, Command::Tor(_)) { "tor" } else { "ext" };
            adhoc(&p.src, &flags, json, |a| {
                json!({ "op": op, "left": a.module(&p.left), "right": a.module(&p.right), "from": p.from, "to": p.to.unwrap_or(p.from) })
            })
        }
        Command::Check { what } => match what {
            CheckKind::Reflexive { src, module } => {
                adhoc(src, &flags, json, |a| json!({ "op": "reflexive", "module": a.module(module) }))
            }
            CheckKind::Torsionless { src, module } => {
                adhoc(src, &flags, json, |a| json!({ "op": "torsionless", "module": a.module(module) }))
            }
            CheckKind::Ntf { n, src, module } => {
                adhoc(src, &flags, json, |a| json!({ "op": "ntf", "module": a.module(module), "n": n }))
            }
        },
        Command::HhGraph { src } => adhoc(src, &flags, json, |_| json!({ "op": "hh_graph" })),
        Command::Verify { theorem, src, left, right, n, rigidity } => {
            let Some(choice) = TheoremChoice::parse(theorem) else {
                eprintln!("error: unknown theorem {theorem:?}; use thm1.1, thm1.2, thm3.1 or cor4.6");
                return ExitCode::from(2);
            };
            adhoc(src, &flags, json, |a| {
                json!({
                    "op": "verify",
                    "theorem": choice,
                    "left": a.module(left),
                    "right": a.module(right),
                    "n": n,
                    "rigidity": rigidity.as_deref().map(rigidity_arg),
                })
            })
        }
        Command::RigiditySearch { src, catalog, window } => adhoc(src, &flags, json, |a| {
            let names: Option<Vec<String>> = (!catalog.is_empty()).then(|| catalog.iter().map(|c| a.module(c)).collect());
            json!({ "op": "rigidity_search", "catalog": names, "window": window })
        }),
    }
}
