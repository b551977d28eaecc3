//! JSON session files: a ring, named module expressions and a task list,
//! executed into a deterministic report.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::{self, depth, depth_formula_check, is_torsion, pd, FreeResolution};
use crate::hilbert::hilbert_series;
use crate::matrix::Matrix;
use crate::module::{find_isomorphism, LocalRank, PresentedModule};
use crate::monomial::MonomialOrder;
use crate::parse::parse_poly;
use crate::poly::PolyRing;
use crate::ring::{PrimeHints, QuotientRing, RIdeal};
use crate::serre::{
    default_catalog, graph_rank, hh_graph, is_reflexive, n_torsion_free, rigidity_search, verify_local_pd_reflexivity,
    verify_second_rigidity, verify_serre_on_both, verify_tor_vanishing, GraphRank, RigidityAssertion, TheoremId,
    TheoremReport, Verdict,
};
use crate::Caps;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionFile {
    pub schema: u32,
    pub ring: RingSpec,
    #[serde(default)]
    pub caps: CapsSpec,
    #[serde(default)]
    pub modules: Vec<NamedModule>,
    #[serde(default)]
    pub tasks: Vec<Task>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    #[serde(default = "default_field")]
    pub field: String,
    pub vars: Vec<String>,
    #[serde(default)]
    pub ideal: Vec<String>,
    /// Irreducible factors of a principal defining ideal's generator.
    #[serde(default)]
    pub factors: Option<Vec<String>>,
    /// Candidate minimal primes, verified before use.
    #[serde(default)]
    pub minimal_primes: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub height_one: Vec<Vec<String>>,
    #[serde(default)]
    pub height_one_complete: bool,
}

fn default_field() -> String {
    "QQ".into()
}

/// Caps given in the session; unset fields keep the caller's defaults.
#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CapsSpec {
    pub resolution_len: Option<usize>,
    pub max_pairs: Option<usize>,
    pub tor_window: Option<usize>,
}

impl CapsSpec {
    /// Fields of `over` win.
    pub fn merged(&self, over: &CapsSpec) -> CapsSpec {
        CapsSpec {
            resolution_len: over.resolution_len.or(self.resolution_len),
            max_pairs: over.max_pairs.or(self.max_pairs),
            tor_window: over.tor_window.or(self.tor_window),
        }
    }

    /// Every field filled, unset ones from `Caps::default()`.
    pub fn resolved(&self) -> CapsSpec {
        let c = self.to_caps();
        CapsSpec { resolution_len: Some(c.resolution_len), max_pairs: Some(c.max_pairs), tor_window: Some(c.tor_window) }
    }

    pub fn to_caps(&self) -> Caps {
        let mut c = Caps::default();
        if let Some(v) = self.resolution_len {
            c.resolution_len = v;
        }
        if let Some(v) = self.max_pairs {
            c.max_pairs = v;
        }
        if let Some(v) = self.tor_window {
            c.tor_window = v;
        }
        c
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct NamedModule {
    pub name: String,
    #[serde(flatten)]
    pub expr: ModuleExpr,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleExpr {
    /// `R/J` for the listed generators of `J`.
    Cyclic(Vec<String>),
    Free(Vec<i64>),
    ResidueField(bool),
    /// Cokernel of a matrix given row-major with generator degrees.
    Coker { gen_degs: Vec<i64>, rows: Vec<Vec<String>> },
    Transpose(String),
    Dual(String),
    Tensor(String, String),
    Syzygy { of: String, n: usize },
    Pushforward(String),
    Minimize(String),
    Twist { of: String, by: i64 },
}

impl ModuleExpr {
    fn deps(&self) -> Vec<&str> {
        match self {
            ModuleExpr::Cyclic(_) | ModuleExpr::Free(_) | ModuleExpr::ResidueField(_) | ModuleExpr::Coker { .. } => vec![],
            ModuleExpr::Transpose(a) | ModuleExpr::Dual(a) | ModuleExpr::Pushforward(a) | ModuleExpr::Minimize(a) => vec![a],
            ModuleExpr::Tensor(a, b) => vec![a, b],
            ModuleExpr::Syzygy { of, .. } | ModuleExpr::Twist { of, .. } => vec![of],
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremChoice {
    #[serde(alias = "thm1.1")]
    SecondRigidity,
    #[serde(alias = "thm1.2")]
    LocalPdReflexivity,
    #[serde(alias = "thm3.1")]
    TorVanishing,
    #[serde(alias = "cor4.6")]
    SerreOnBoth,
}

impl TheoremChoice {
    pub fn parse(s: &str) -> Option<Self> {
        serde_json::from_value(Value::String(s.into())).ok()
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct Task {
    #[serde(flatten)]
    pub kind: TaskKind,
    /// Expected value of the task's verdict; a mismatch fails the run.
    #[serde(default)]
    pub expect: Option<Value>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum TaskKind {
    Presentation { module: String },
    Reflexive { module: String },
    Torsionless { module: String },
    Ntf { module: String, n: usize },
    Resolve { module: String, length: Option<usize> },
    Pd { module: String },
    Depth { module: String },
    Tor { left: String, right: String, from: Option<usize>, to: Option<usize> },
    Ext { left: String, right: String, from: Option<usize>, to: Option<usize> },
    IsTorsion { module: String },
    Hilbert { module: String },
    DepthFormula { left: String, right: String },
    HhGraph,
    GraphRank { module: String },
    LocalRank { module: String, prime: Vec<String> },
    Fitting { module: String, index: usize },
    Isomorphic { left: String, right: String },
    Verify { theorem: TheoremChoice, left: String, right: String, n: Option<usize>, rigidity: Option<RigidityAssertion> },
    RigiditySearch { catalog: Option<Vec<String>>, window: Option<usize> },
}

impl TaskKind {
    fn op(&self) -> &'static str {
        match self {
            TaskKind::Presentation { .. } => "presentation",
            TaskKind::Reflexive { .. } => "reflexive",
            TaskKind::Torsionless { .. } => "torsionless",
            TaskKind::Ntf { .. } => "ntf",
            TaskKind::Resolve { .. } => "resolve",
            TaskKind::Pd { .. } => "pd",
            TaskKind::Depth { .. } => "depth",
            TaskKind::Tor { .. } => "tor",
            TaskKind::Ext { .. } => "ext",
            TaskKind::IsTorsion { .. } => "is_torsion",
            TaskKind::Hilbert { .. } => "hilbert",
            TaskKind::DepthFormula { .. } => "depth_formula",
            TaskKind::HhGraph => "hh_graph",
            TaskKind::GraphRank { .. } => "graph_rank",
            TaskKind::LocalRank { .. } => "local_rank",
            TaskKind::Fitting { .. } => "fitting",
            TaskKind::Isomorphic { .. } => "isomorphic",
            TaskKind::Verify { .. } => "verify",
            TaskKind::RigiditySearch { .. } => "rigidity_search",
        }
    }

    fn modules(&self) -> Vec<&str> {
        match self {
            TaskKind::Presentation { module }
            | TaskKind::Reflexive { module }
            | TaskKind::Torsionless { module }
            | TaskKind::Ntf { module, .. }
            | TaskKind::Resolve { module, .. }
            | TaskKind::Pd { module }
            | TaskKind::Depth { module }
            | TaskKind::IsTorsion { module }
            | TaskKind::Hilbert { module }
            | TaskKind::GraphRank { module }
            | TaskKind::LocalRank { module, .. }
            | TaskKind::Fitting { module, .. } => vec![module],
            TaskKind::Tor { left, right, .. }
            | TaskKind::Ext { left, right, .. }
            | TaskKind::DepthFormula { left, right }
            | TaskKind::Isomorphic { left, right }
            | TaskKind::Verify { left, right, .. } => vec![left, right],
            TaskKind::HhGraph => vec![],
            TaskKind::RigiditySearch { catalog, .. } => catalog.iter().flatten().map(String::as_str).collect(),
        }
    }
}

/// How a task or the whole run ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Ok,
    VerificationFailed,
    CapExceeded,
    InputError,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Ok => 0,
            Outcome::VerificationFailed => 1,
            Outcome::InputError => 2,
            Outcome::CapExceeded => 3,
        }
    }

    /// Classification of an error raised while executing.
    pub fn of_error(e: &Error) -> Outcome {
        match e {
            Error::CapExceeded(_) | Error::Cancelled => Outcome::CapExceeded,
            Error::Internal(_) | Error::CandidateVerification(_) | Error::MissingRecords => Outcome::VerificationFailed,
            _ => Outcome::InputError,
        }
    }

    /// Severity order for the run: input error, then caps, then failures.
    fn rank(self) -> u8 {
        match self {
            Outcome::Ok => 0,
            Outcome::VerificationFailed => 1,
            Outcome::CapExceeded => 2,
            Outcome::InputError => 3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationView {
    pub gen_degs: Vec<i64>,
    pub rows: Vec<Vec<String>>,
}

impl PresentationView {
    pub fn of(m: &PresentedModule) -> Self {
        PresentationView { gen_degs: m.gen_degs().to_vec(), rows: m.presentation().to_strings() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleView {
    pub name: String,
    /// Minimized presentation.
    pub presentation: PresentationView,
}

#[derive(Clone, Debug, Serialize)]
pub struct TaskReport {
    pub index: usize,
    pub op: String,
    pub outcome: Outcome,
    pub verdict: Value,
    pub detail: Value,
    pub text: String,
    pub expect: Option<Value>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SessionReport {
    pub schema: u32,
    pub tool: String,
    pub ring: Option<String>,
    pub caps: CapsSpec,
    pub modules: Vec<ModuleView>,
    pub tasks: Vec<TaskReport>,
    /// Conventions that affected this run.
    pub notes: Vec<String>,
    pub outcome: Outcome,
    pub exit_code: i32,
    pub error: Option<String>,
}

impl SessionReport {
    fn failed(caps: CapsSpec, outcome: Outcome, message: String) -> Self {
        SessionReport {
            schema: SCHEMA,
            tool: crate::tool_version(),
            ring: None,
            caps,
            modules: Vec::new(),
            tasks: Vec::new(),
            notes: Vec::new(),
            outcome,
            exit_code: outcome.exit_code(),
            error: Some(message),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(r) = &self.ring {
            out.push_str(&format!("ring: {r}\n"));
        }
        for m in &self.modules {
            out.push_str(&format!("module {}: {} generators, {} relations\n", m.name, m.presentation.gen_degs.len(), m.presentation.rows.first().map_or(0, |r| r.len())));
        }
        for t in &self.tasks {
            out.push_str(&format!("[{}] #{} {}: {}\n", outcome_tag(t.outcome), t.index, t.op, t.text));
            if let Some(e) = &t.error {
                out.push_str(&format!("    error: {e}\n"));
            }
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error: {e}\n"));
        }
        out.push_str(&format!("outcome: {:?} (exit {})\n", self.outcome, self.exit_code));
        out
    }
}

fn outcome_tag(o: Outcome) -> &'static str {
    match o {
        Outcome::Ok => "ok",
        Outcome::VerificationFailed => "FAILED",
        Outcome::CapExceeded => "CAP",
        Outcome::InputError => "INPUT",
    }
}

pub fn parse_field(s: &str) -> Result<Field> {
    let t = s.trim();
    if matches!(t, "QQ" | "Q" | "ℚ") {
        return Ok(Field::Rationals);
    }
    let p = t
        .strip_prefix("ZZ/")
        .or_else(|| t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')))
        .or_else(|| t.strip_prefix("F_"))
        .ok_or_else(|| Error::InvalidField(format!("unknown field {t:?}; use QQ or ZZ/p")))?;
    let p: u64 = p.parse().map_err(|_| Error::InvalidField(format!("bad characteristic in {t:?}")))?;
    Field::prime(p)
}

pub fn build_ring(spec: &RingSpec, caps: Caps) -> Result<QuotientRing> {
    let field = parse_field(&spec.field)?;
    let poly = PolyRing::from_names(field, spec.vars.clone(), MonomialOrder::Grevlex)?;
    let parse_all = |v: &[String]| v.iter().map(|s| parse_poly(s, &poly)).collect::<Result<Vec<_>>>();
    let gens = parse_all(&spec.ideal)?;
    let hints = PrimeHints {
        factors: spec.factors.as_deref().map(parse_all).transpose()?,
        candidates: spec.minimal_primes.as_ref().map(|c| c.iter().map(|g| parse_all(g)).collect::<Result<Vec<_>>>()).transpose()?,
        height_one: spec.height_one.iter().map(|g| parse_all(g)).collect::<Result<Vec<_>>>()?,
        height_one_complete: spec.height_one_complete,
    };
    QuotientRing::new(&poly, gens, caps, hints)
}

fn build_modules(ring: &QuotientRing, defs: &[NamedModule]) -> Result<Vec<(String, PresentedModule)>> {
    let mut index: HashMap<&str, usize> = HashMap::new();
    for (i, d) in defs.iter().enumerate() {
        if index.insert(&d.name, i).is_some() {
            return Err(Error::Input(format!("module name {:?} is defined twice", d.name)));
        }
    }
    for d in defs {
        for dep in d.expr.deps() {
            if !index.contains_key(dep) {
                return Err(Error::Input(format!("module {:?} refers to undefined module {dep:?}", d.name)));
            }
        }
    }
    // depth-first evaluation with cycle detection
    fn eval(
        i: usize,
        ring: &QuotientRing,
        defs: &[NamedModule],
        index: &HashMap<&str, usize>,
        state: &mut Vec<u8>,
        built: &mut Vec<Option<PresentedModule>>,
    ) -> Result<()> {
        match state[i] {
            2 => return Ok(()),
            1 => return Err(Error::Input(format!("module expressions form a cycle through {:?}", defs[i].name))),
            _ => {}
        }
        state[i] = 1;
        for dep in defs[i].expr.deps() {
            eval(index[dep], ring, defs, index, state, built)?;
        }
        let get = |n: &str| built[index[n]].clone().unwrap();
        let m = match &defs[i].expr {
            ModuleExpr::Cyclic(gens) => {
                let g: Vec<&str> = gens.iter().map(String::as_str).collect();
                PresentedModule::cyclic(ring, &RIdeal::parse(ring, &g)?)?
            }
            ModuleExpr::Free(degs) => PresentedModule::free(ring, degs),
            ModuleExpr::ResidueField(_) => PresentedModule::residue_field(ring),
            ModuleExpr::Coker { gen_degs, rows } => PresentedModule::from_strings(ring, gen_degs, rows)?,
            ModuleExpr::Transpose(a) => get(a).transpose()?,
            ModuleExpr::Dual(a) => get(a).dual()?,
            ModuleExpr::Tensor(a, b) => get(a).tensor(&get(b))?,
            ModuleExpr::Syzygy { of, n } => get(of).syzygy(*n)?,
            ModuleExpr::Pushforward(a) => get(a).pushforward()?.module,
            ModuleExpr::Minimize(a) => get(a).minimize()?,
            ModuleExpr::Twist { of, by } => get(of).twist(*by),
        };
        built[i] = Some(m);
        state[i] = 2;
        Ok(())
    }
    let mut state = vec![0u8; defs.len()];
    let mut built = vec![None; defs.len()];
    for i in 0..defs.len() {
        eval(i, ring, defs, &index, &mut state, &mut built)?;
    }
    Ok(defs.iter().zip(built).map(|(d, m)| (d.name.clone(), m.unwrap())).collect())
}

/// Parses and runs a session document. `overrides` take precedence over
/// the session's own caps, which take precedence over `defaults`.
pub fn run_session_str(text: &str, defaults: &CapsSpec, overrides: &CapsSpec) -> SessionReport {
    let session: SessionFile = match serde_json::from_str(text) {
        Ok(s) => s,
        Err(e) => return SessionReport::failed(defaults.merged(overrides).resolved(), Outcome::InputError, format!("invalid session: {e}")),
    };
    let caps_spec = defaults.merged(&session.caps).merged(overrides).resolved();
    if session.schema != SCHEMA {
        return SessionReport::failed(caps_spec, Outcome::InputError, format!("unsupported schema {}; expected {SCHEMA}", session.schema));
    }
    let ring = match build_ring(&session.ring, caps_spec.to_caps()) {
        Ok(r) => r,
        Err(e) => return SessionReport::failed(caps_spec, Outcome::of_error(&e).max_by_rank(Outcome::InputError), e.to_string()),
    };
    let names: Vec<&str> = session.modules.iter().map(|m| m.name.as_str()).collect();
    for (i, t) in session.tasks.iter().enumerate() {
        if let Some(bad) = t.kind.modules().into_iter().find(|m| !names.contains(m)) {
            return SessionReport::failed(caps_spec, Outcome::InputError, format!("task {i} refers to undefined module {bad:?}"));
        }
    }
    let modules = match build_modules(&ring, &session.modules) {
        Ok(m) => m,
        Err(e) => {
            let mut r = SessionReport::failed(caps_spec, Outcome::of_error(&e), e.to_string());
            r.ring = Some(ring.to_string());
            return r;
        }
    };
    let table: BTreeMap<&str, &PresentedModule> = modules.iter().map(|(n, m)| (n.as_str(), m)).collect();
    let tasks: Vec<TaskReport> = session
        .tasks
        .par_iter()
        .enumerate()
        .map(|(i, t)| run_task(i, t, &ring, &table))
        .collect();
    let views = modules
        .iter()
        .map(|(n, m)| {
            let min = m.minimize().unwrap_or_else(|_| m.clone());
            ModuleView { name: n.clone(), presentation: PresentationView::of(&min) }
        })
        .collect();
    let outcome = tasks.iter().map(|t| t.outcome).max_by_key(|o| o.rank()).unwrap_or(Outcome::Ok);
    let notes = session_notes(&ring, &session.modules, &table);
    SessionReport {
        schema: SCHEMA,
        tool: crate::tool_version(),
        ring: Some(ring.to_string()),
        caps: caps_spec,
        modules: views,
        tasks,
        notes,
        outcome,
        exit_code: outcome.exit_code(),
        error: None,
    }
}

const NOT_REDUCED: &str = "ring is not reduced: rank and torsion refer to minimal primes, associated primes are not computed";

fn session_notes(ring: &QuotientRing, defs: &[NamedModule], table: &BTreeMap<&str, &PresentedModule>) -> Vec<String> {
    let mut notes = Vec::new();
    if matches!(ring.is_reduced(), Ok(false)) {
        notes.push(NOT_REDUCED.to_string());
    }
    for d in defs {
        if let ModuleExpr::Transpose(a) = &d.expr {
            let free = table[a.as_str()].minimize().is_ok_and(|m| m.ngens() > 0 && m.is_free());
            if free {
                notes.push(format!("{}: the transpose of the free module {a} is taken to be zero", d.name));
            }
        }
    }
    notes
}

impl Outcome {
    fn max_by_rank(self, other: Outcome) -> Outcome {
        if other.rank() > self.rank() {
            other
        } else {
            self
        }
    }
}

/// Verdict, detail, human text and whether the verdict itself signals a
/// failed verification.
pub struct TaskOutput {
    pub verdict: Value,
    pub detail: Value,
    pub text: String,
    pub failed: bool,
}

fn out(verdict: Value, detail: Value, text: String) -> TaskOutput {
    TaskOutput { verdict, detail, text, failed: false }
}

fn run_task(index: usize, task: &Task, ring: &QuotientRing, table: &BTreeMap<&str, &PresentedModule>) -> TaskReport {
    let op = task.kind.op().to_string();
    match execute(&task.kind, ring, table) {
        Ok(o) => {
            let mismatch = task.expect.as_ref().is_some_and(|e| *e != o.verdict);
            let outcome = if o.failed || mismatch { Outcome::VerificationFailed } else { Outcome::Ok };
            let error = mismatch.then(|| format!("expected {}, computed {}", task.expect.as_ref().unwrap(), o.verdict));
            TaskReport { index, op, outcome, verdict: o.verdict, detail: o.detail, text: o.text, expect: task.expect.clone(), error }
        }
        Err(e) => TaskReport {
            index,
            op,
            outcome: Outcome::of_error(&e),
            verdict: Value::Null,
            detail: Value::Null,
            text: "not computed".into(),
            expect: task.expect.clone(),
            error: Some(e.to_string()),
        },
    }
}

fn theorem_report(rep: TheoremReport) -> TaskOutput {
    let failed = rep.verdict == Verdict::CounterexampleCandidate;
    let text = format!(
        "{:?}: {:?}{}",
        rep.theorem,
        rep.verdict,
        if rep.applicable { String::new() } else { format!(" (hypotheses not met: {:?})", rep.failed_hypotheses().iter().map(|h| &h.id).collect::<Vec<_>>()) }
    );
    TaskOutput { verdict: json!(rep.verdict), detail: json!(rep), text, failed }
}

/// Executes one task against built modules.
pub fn execute(kind: &TaskKind, ring: &QuotientRing, table: &BTreeMap<&str, &PresentedModule>) -> Result<TaskOutput> {
    let get = |n: &str| -> Result<&PresentedModule> {
        table.get(n).copied().ok_or_else(|| Error::Input(format!("undefined module {n:?}")))
    };
    let caps = ring.caps();
    Ok(match kind {
        TaskKind::Presentation { module } => {
            let m = get(module)?.minimize()?;
            let v = PresentationView::of(&m);
            out(json!(v), json!({ "hilbert": hilbert_series(&m)?.to_string() }), format!("{module} = {m}"))
        }
        TaskKind::Reflexive { module } => {
            let v = is_reflexive(get(module)?)?;
            out(json!(v.reflexive), json!(v), format!("{module} reflexive: {}", v.reflexive))
        }
        TaskKind::Torsionless { module } => {
            let v = is_reflexive(get(module)?)?;
            out(json!(v.torsionless), json!(v), format!("{module} torsionless: {}", v.torsionless))
        }
        TaskKind::Ntf { module, n } => {
            let t = n_torsion_free(get(module)?, *n)?;
            out(json!(t.holds()), json!(t), format!("{module} {n}-torsion-free: {} (Ext zero {:?})", t.holds(), t.ext_zero))
        }
        TaskKind::Resolve { module, length } => {
            let res = FreeResolution::compute(get(module)?, length.unwrap_or(caps.resolution_len))?;
            let per = res.detect_periodicity()?;
            let diffs: Vec<Value> = res
                .differentials()
                .iter()
                .map(|d| json!({ "source_degs": d.col_degs(), "target_degs": d.row_degs(), "rows": d.to_strings() }))
                .collect();
            out(
                json!(res.betti()),
                json!({ "complete": res.is_complete(), "minimal": res.is_minimal(), "d_squared_zero": res.check_d_squared(), "periodicity": per, "differentials": diffs }),
                format!("{module}: Betti {:?}{}", res.betti(), if res.is_complete() { ", complete" } else { ", truncated" }),
            )
        }
        TaskKind::Pd { module } => {
            let p = pd(get(module)?, caps.resolution_len)?;
            out(json!(p), Value::Null, format!("pd {module} = {p:?}"))
        }
        TaskKind::Depth { module } => {
            let d = depth(get(module)?)?;
            out(json!(d.to_string()), Value::Null, format!("depth {module} = {d}"))
        }
        TaskKind::Tor { left, right, from, to } | TaskKind::Ext { left, right, from, to } => {
            let (m, n) = (get(left)?, get(right)?);
            let lo = from.unwrap_or(1);
            let hi = to.unwrap_or(lo);
            let is_tor = matches!(kind, TaskKind::Tor { .. });
            let mut zero = Vec::new();
            let mut detail = Vec::new();
            for i in lo..=hi {
                let h = if is_tor { homology::tor(m, n, i)? } else { homology::ext(m, n, i)? };
                zero.push(h.is_zero);
                detail.push(json!({ "index": i, "is_zero": h.is_zero, "hilbert": h.hilbert.to_string(), "presentation": PresentationView::of(&h.module) }));
            }
            let name = if is_tor { "Tor" } else { "Ext" };
            out(json!(zero), json!(detail), format!("{name}_i({left}, {right}) zero for i = {lo}..{hi}: {zero:?}"))
        }
        TaskKind::IsTorsion { module } => {
            let t = is_torsion(get(module)?)?;
            let caveat = if ring.is_reduced()? { "" } else { " (with respect to minimal primes)" };
            out(json!(t), Value::Null, format!("{module} torsion: {t}{caveat}"))
        }
        TaskKind::Hilbert { module } => {
            let h = hilbert_series(get(module)?)?;
            out(json!(h.to_string()), json!(h), format!("H({module}) = {h}"))
        }
        TaskKind::DepthFormula { left, right } => {
            let r = depth_formula_check(get(left)?, get(right)?, caps.tor_window)?;
            out(json!(r.holds), json!(r), format!("depth formula for ({left}, {right}): {:?}", r.holds))
        }
        TaskKind::HhGraph => {
            let g = hh_graph(ring)?;
            let connected = g.is_connected();
            out(
                json!(connected),
                json!({ "vertices": g.vertex_labels(), "edges": g.edges, "pair_heights": g.pair_heights }),
                format!("vertices {:?}, {} edges, connected: {connected}", g.vertex_labels(), g.edges.len()),
            )
        }
        TaskKind::GraphRank { module } => {
            let g = hh_graph(ring)?;
            let r = graph_rank(get(module)?, &g)?;
            let (verdict, failed) = match &r {
                GraphRank::Rank { rank, .. } => (json!(rank), false),
                GraphRank::NoRank { .. } => (json!("no_rank"), false),
                GraphRank::Unknown { .. } => (json!("unknown"), false),
                GraphRank::Inconsistent { .. } => (json!("inconsistent"), true),
            };
            TaskOutput { text: format!("graph rank of {module}: {verdict}"), verdict, detail: json!(r), failed }
        }
        TaskKind::LocalRank { module, prime } => {
            let g: Vec<&str> = prime.iter().map(String::as_str).collect();
            let p = RIdeal::parse(ring, &g)?;
            let (verdict, text) = match get(module)?.localized_rank(&p)? {
                LocalRank::Free { rank, witness } => (json!({ "free": rank }), format!("free of rank {rank} at {p} (witness {witness})")),
                LocalRank::NotFree { rank, .. } => (json!({ "not_free": rank }), format!("not free at {p} (Fitting index {rank})")),
            };
            out(verdict, json!({ "prime": p.to_string(), "prime_flag": p.prime_flag() }), text)
        }
        TaskKind::Fitting { module, index } => {
            let f = get(module)?.fitting_ideal(*index)?;
            let gens: Vec<String> = f.gens().iter().map(|g| g.to_string()).collect();
            out(json!(gens), Value::Null, format!("Fitt_{index}({module}) = ({})", gens.join(", ")))
        }
        TaskKind::Isomorphic { left, right } => {
            let iso = find_isomorphism(get(left)?, get(right)?)?;
            let detail = iso.as_ref().map_or(Value::Null, |i| json!({ "shift": i.shift, "rows": i.map.matrix().to_strings() }));
            out(json!(iso.is_some()), detail, format!("{left} ≅ {right}: {}", if iso.is_some() { "explicit isomorphism" } else { "none found" }))
        }
        TaskKind::Verify { theorem, left, right, n, rigidity } => {
            let (m, nn) = (get(left)?, get(right)?);
            let depth_n = n.unwrap_or(2);
            let rig = rigidity.clone().unwrap_or(RigidityAssertion::None);
            theorem_report(match theorem {
                TheoremChoice::SecondRigidity => verify_second_rigidity(m, nn)?,
                TheoremChoice::LocalPdReflexivity => verify_local_pd_reflexivity(m, nn)?,
                TheoremChoice::TorVanishing => verify_tor_vanishing(m, nn, depth_n, &rig)?,
                TheoremChoice::SerreOnBoth => verify_serre_on_both(m, nn, depth_n, &rig)?,
            })
        }
        TaskKind::RigiditySearch { catalog, window } => {
            let (names, mods): (Vec<String>, Vec<PresentedModule>) = match catalog {
                Some(c) => c.iter().map(|n| Ok((n.clone(), get(n)?.clone()))).collect::<Result<Vec<_>>>()?.into_iter().unzip(),
                None => default_catalog(ring)?.into_iter().unzip(),
            };
            let found = rigidity_search(ring, &mods, window.unwrap_or(3))?;
            let pairs: Vec<Value> = found
                .iter()
                .map(|v| json!({ "first": names[v.first], "second": names[v.second], "kind": v.kind, "tor_zero": v.tor_zero }))
                .collect();
            out(json!(pairs.len()), json!(pairs), format!("{} violations over {} catalog modules", found.len(), names.len()))
        }
    })
}

/// Module names a theorem id accepts on the command line.
pub fn theorem_id(choice: &TheoremChoice) -> TheoremId {
    match choice {
        TheoremChoice::SecondRigidity => TheoremId::SecondRigidity,
        TheoremChoice::LocalPdReflexivity => TheoremId::LocalPdReflexivity,
        TheoremChoice::TorVanishing => TheoremId::TorVanishing,
        TheoremChoice::SerreOnBoth => TheoremId::SerreOnBoth,
    }
}

/// Convenience for building presentation matrices in callers.
pub fn matrix_from_strings(ring: &QuotientRing, gen_degs: &[i64], rows: &[Vec<String>]) -> Result<Matrix> {
    Ok(PresentedModule::from_strings(ring, gen_degs, rows)?.presentation().clone())
}
