//! The built-in battery of claims about the fixture rings, each checked by
//! an independent computation.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::fixtures::{fix_a, fix_b, fix_c, literal_b, tensor_complex};
use crate::homology::{depth_formula_check, homology_at, is_torsion, pd, tor, tor_vanishing, Depth, FreeResolution, Pd, VanishingCertificate};
use crate::matrix::Matrix;
use crate::module::{find_isomorphism, LocalRank, PresentedModule};
use crate::ring::{QuotientRing, RIdeal};
use crate::serre::{
    default_catalog, graph_rank, hh_graph, is_reflexive, n_torsion_free, rigidity_search, verify_local_pd_reflexivity,
    verify_second_rigidity, verify_serre_on_both, verify_tor_vanishing, GraphRank, RigidityAssertion, Status, Verdict,
    ViolationKind,
};
use crate::Caps;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct ClaimResult {
    pub id: String,
    pub claim: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub tool: String,
    pub claims: Vec<ClaimResult>,
    pub passed: usize,
    pub total: usize,
    pub first_failure: Option<String>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }

    /// Side-by-side table of expected and computed values.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            out.push_str(&format!("[{}] {}: {}\n", if c.pass { "PASS" } else { "FAIL" }, c.id, c.claim));
            out.push_str(&format!("    expected: {}\n    computed: {}\n", c.expected, c.computed));
        }
        out.push_str(&format!("{}/{} claims verified\n", self.passed, self.total));
        if let Some(f) = &self.first_failure {
            out.push_str(&format!("first failing claim: {f}\n"));
        }
        out
    }
}

type Check = fn(&Caps) -> Result<(String, bool)>;

struct ClaimDef {
    id: &'static str,
    claim: &'static str,
    expected: &'static str,
    check: Check,
}

const CLAIMS: &[ClaimDef] = &[
    ClaimDef {
        id: "complex-composes",
        claim: "the three matrices of the tensor complex compose to zero over R_A",
        expected: "B∘A = 0 and C∘B = 0 with entry (2,3) of B equal to yw",
        check: complex_composes,
    },
    ClaimDef {
        id: "complex-exact",
        claim: "the complex R^4 → R^3 → R^3 → R^4 is exact at both inner spots",
        expected: "homology zero at both spots",
        check: complex_exact,
    },
    ClaimDef {
        id: "tensor-is-second-syzygy",
        claim: "M_A ⊗ N_A is the second syzygy of coker C",
        expected: "explicit isomorphism",
        check: tensor_is_second_syzygy,
    },
    ClaimDef { id: "m-not-reflexive", claim: "M_A = Tr(R_A/(y,z,w)) is not reflexive", expected: "torsionless, not reflexive", check: m_not_reflexive },
    ClaimDef { id: "n-and-tensor-reflexive", claim: "N_A and M_A ⊗ N_A are reflexive", expected: "both reflexive", check: n_and_tensor_reflexive },
    ClaimDef { id: "pd-m", claim: "M_A has finite projective dimension", expected: "pd M_A = 1", check: pd_m },
    ClaimDef {
        id: "tor-vanishing",
        claim: "Tor_i(M_A, N_A) = 0 for i >= 1",
        expected: "zero for i = 1..6 with a 2-periodicity certificate",
        check: tor_vanishes,
    },
    ClaimDef {
        id: "n-periodic-resolution",
        claim: "N_A has the periodic resolution by x and y and is not free at (x, y)",
        expected: "Betti numbers all 1, differentials x, y alternating, periodic by step 2; not free at (x, y)",
        check: n_periodic,
    },
    ClaimDef { id: "node-tensor", claim: "M_B ⊗ N_B ≅ M_B", expected: "explicit isomorphism", check: node_tensor },
    ClaimDef {
        id: "node-tor",
        claim: "Tor_1(M_B, N_B) ≠ 0 while every Tor_i(M_B, N_B) is torsion, and N_B is not torsion-free",
        expected: "Tor_1 nonzero; Tor_1..4 torsion; N_B not 1-torsion-free",
        check: node_tor,
    },
    ClaimDef {
        id: "node-not-rigid",
        claim: "M_B is not Tor-rigid",
        expected: "a catalog pair with Tor_1(M_B, -) = 0 ≠ Tor_2(M_B, -)",
        check: node_not_rigid,
    },
    ClaimDef {
        id: "depth-formula",
        claim: "the depth formula holds for (M_A, N_A)",
        expected: "depth M_A = 2, depth N_A = 3, depth R_A = 3, depth M_A ⊗ N_A = 2",
        check: depth_formula,
    },
    ClaimDef {
        id: "hh-graph",
        claim: "the Hochster-Huneke graph is connected for R_A and not for R_C; rank propagates on R_A",
        expected: "R_A connected (height 1 edge), R_C disconnected (height 2) with depth 1; rank M_A = 2; N_A ranks 1 and 0",
        check: hh_graphs,
    },
    ClaimDef {
        id: "pipelines",
        claim: "the theorem pipelines agree with the known behaviour of the fixtures",
        expected: "second rigidity consistent; local pd fails at (x, y) for both reflexivity results; M_B rigidity refuted; no counterexample candidate",
        check: pipelines,
    },
];

/// Runs every claim; failures and errors are recorded, never propagated.
pub fn paper_suite(caps: &Caps) -> SuiteReport {
    let claims: Vec<ClaimResult> = CLAIMS
        .par_iter()
        .map(|s| {
            let (computed, pass) = match (s.check)(caps) {
                Ok(r) => r,
                Err(e) => (format!("error: {e}"), false),
            };
            ClaimResult { id: s.id.into(), claim: s.claim.into(), expected: s.expected.into(), computed, pass }
        })
        .collect();
    let passed = claims.iter().filter(|c| c.pass).count();
    let first_failure = claims.iter().find(|c| !c.pass).map(|c| c.id.clone());
    SuiteReport { schema: SCHEMA, tool: crate::tool_version(), total: claims.len(), claims, passed, first_failure }
}

pub fn composes_to_zero(ring: &QuotientRing, left: &Matrix, right: &Matrix) -> Result<bool> {
    let c = left.compose(right)?;
    Ok(c.cols().iter().all(|v| v.coords().iter().all(|p| ring.reduce(p).is_zero())))
}

fn complex_composes(caps: &Caps) -> Result<(String, bool)> {
    let fa = fix_a(caps)?;
    let t = tensor_complex(&fa.ring)?;
    let ba = composes_to_zero(&fa.ring, &t.b, &t.a)?;
    let cb = composes_to_zero(&fa.ring, &t.c, &t.b)?;
    let lit = literal_b(&fa.ring)?;
    let lit_ba = composes_to_zero(&fa.ring, &lit, &t.a)?;
    let lit_cb = composes_to_zero(&fa.ring, &t.c, &lit)?;
    Ok((format!("B∘A = 0: {ba}, C∘B = 0: {cb}; with entry yz instead: B∘A = 0: {lit_ba}, C∘B = 0: {lit_cb}"), ba && cb))
}

fn complex_exact(caps: &Caps) -> Result<(String, bool)> {
    let fa = fix_a(caps)?;
    let t = tensor_complex(&fa.ring)?;
    let h1 = homology_at(&fa.ring, &t.a, &t.b)?;
    let h2 = homology_at(&fa.ring, &t.b, &t.c)?;
    Ok((format!("homology at first R^3 zero: {}, at second R^3 zero: {}", h1.is_zero, h2.is_zero), h1.is_zero && h2.is_zero))
}

fn tensor_is_second_syzygy(caps: &Caps) -> Result<(String, bool)> {
    let fa = fix_a(caps)?;
    let t = tensor_complex(&fa.ring)?;
    let tensor = fa.m.tensor(&fa.n)?.minimize()?;
    let omega = PresentedModule::coker(&fa.ring, t.c.clone())?.syzygy(2)?;
    let coker_a = PresentedModule::coker(&fa.ring, t.a.clone())?;
    let to_omega = find_isomorphism(&tensor, &omega)?;
    let to_coker = find_isomorphism(&tensor, &coker_a)?;
    let computed = format!(
        "M⊗N minimal presentation {}x{}; isomorphism onto Ω²(coker C): {}; onto coker A: {}",
        tensor.ngens(),
        tensor.nrels(),
        to_omega.as_ref().map_or("none found".into(), |i| format!("found, shift {}", i.shift)),
        to_coker.as_ref().map_or("none found".into(), |i| format!("found, shift {}", i.shift)),
    );
    Ok((computed, to_omega.is_some() && to_coker.is_some()))
}

fn m_not_reflexive(caps: &Caps) -> Result<(String, bool)> {
    let fa = fix_a(caps)?;
    let v = is_reflexive(&fa.m)?;
    Ok((format!("torsionless: {}, reflexive: {}", v.torsionless, v.reflexive), v.torsionless && !v.reflexive))
}

fn n_and_tensor_reflexive(caps: &Caps) -> Result<(String, bool)> {
    let fa = fix_a(caps)?;
    let n = is_reflexive(&fa.n)?.reflexive;
    let t = is_reflexive(&fa.m.tensor(&fa.n)?)?.reflexive;
    let tf = n_torsion_free(&fa.m.tensor(&fa.n)?, 2)?;
    Ok((format!("N_A reflexive: {n}, M_A⊗N_A reflexive: {t}, 2-torsion-free: {:?}", tf.ext_zero), n && t && tf.holds()))
}

fn pd_m(caps: &Caps) -> Result<(String, bool)> {
    let fa = fix_a(caps)?;
    let p = pd(&fa.m, caps.resolution_len)?;
    Ok((format!("{p:?}"), p == Pd::Finite(1)))
}

fn tor_vanishes(caps: &Caps) -> Result<(String, bool)> {
    let fa = fix_a(caps)?;
    let tv = tor_vanishing(&fa.m, &fa.n, 6)?;
    let periodic = tv.certificates.iter().any(|c| matches!(c, VanishingCertificate::Periodic { .. }));
    Ok((
        format!("zero for i = 1..6: {:?}; certificates: {:?}", tv.zero, tv.certificates),
        tv.window_vanishes() && periodic && tv.all_vanish(),
    ))
}

fn n_periodic(caps: &Caps) -> Result<(String, bool)> {
    let fa = fix_a(caps)?;
    let res = FreeResolution::compute(&fa.n, 6)?;
    let entries: Vec<String> = res.differentials().iter().map(|d| d.entry(0, 0).monic().to_string()).collect();
    let alternating = entries.iter().enumerate().all(|(i, e)| e == if i % 2 == 0 { "x" } else { "y" });
    let per = res.detect_periodicity()?;
    let q = RIdeal::parse(&fa.ring, &["x", "y"])?;
    let local = fa.n.localized_rank(&q)?;
    let not_free = matches!(local, LocalRank::NotFree { .. });
    let pass = res.betti() == vec![1; 7] && alternating && per.as_ref().is_some_and(|p| p.from <= 2) && not_free;
    Ok((
        format!(
            "Betti {:?}; differentials {:?}; periodic from {:?}; at (x, y): {}",
            res.betti(),
            entries,
            per.map(|p| p.from),
            if not_free { "not free" } else { "free" }
        ),
        pass,
    ))
}

fn node_tensor(caps: &Caps) -> Result<(String, bool)> {
    let fb = fix_b(caps)?;
    let t = fb.m.tensor(&fb.n)?.minimize()?;
    let iso = find_isomorphism(&t, &fb.m)?;
    Ok((iso.as_ref().map_or("no isomorphism found".into(), |i| format!("isomorphism found, shift {}", i.shift)), iso.is_some()))
}

fn node_tor(caps: &Caps) -> Result<(String, bool)> {
    let fb = fix_b(caps)?;
    let t1 = tor(&fb.m, &fb.n, 1)?;
    let mut torsion = Vec::new();
    for i in 1..=4 {
        torsion.push(is_torsion(&tor(&fb.m, &fb.n, i)?.module)?);
    }
    let tf = n_torsion_free(&fb.n, 1)?;
    Ok((
        format!("Tor_1 zero: {}, Hilbert series {}; torsion for i = 1..4: {torsion:?}; N_B 1-torsion-free: {}", t1.is_zero, t1.hilbert, tf.holds()),
        !t1.is_zero && torsion.iter().all(|&t| t) && !tf.holds(),
    ))
}

fn node_not_rigid(caps: &Caps) -> Result<(String, bool)> {
    let fb = fix_b(caps)?;
    let catalog = default_catalog(&fb.ring)?;
    let names: Vec<String> = catalog.iter().map(|c| c.0.clone()).collect();
    let modules: Vec<PresentedModule> = catalog.into_iter().map(|c| c.1).collect();
    let found = rigidity_search(&fb.ring, &modules, 3)?;
    let first = names.iter().position(|n| n == "R/(x)");
    let witness = found.iter().find(|v| Some(v.first) == first && v.kind == ViolationKind::NotRigid);
    Ok((
        match witness {
            Some(w) => format!("Tor over R/(x) ⊗ {}: zero pattern {:?}", names[w.second], w.tor_zero),
            None => "no witness".into(),
        },
        witness.is_some(),
    ))
}

fn depth_formula(caps: &Caps) -> Result<(String, bool)> {
    let fa = fix_a(caps)?;
    let r = depth_formula_check(&fa.m, &fa.n, 6)?;
    let want = [Depth::Finite(2), Depth::Finite(3), Depth::Finite(3), Depth::Finite(2)];
    let got = [r.depth_m, r.depth_n, r.depth_r, r.depth_tensor];
    Ok((
        format!("depths {} {} {} {}; formula holds: {:?}", got[0], got[1], got[2], got[3], r.holds),
        got == want && r.holds == Some(true),
    ))
}

fn hh_graphs(caps: &Caps) -> Result<(String, bool)> {
    let fa = fix_a(caps)?;
    let ga = hh_graph(&fa.ring)?;
    let rc = fix_c(caps)?;
    let gc = hh_graph(&rc)?;
    let depth_c = rc.ring_depth()?;
    let rank_m = graph_rank(&fa.m, &ga)?;
    let rank_n = graph_rank(&fa.n, &ga)?;
    let n_ranks = match &rank_n {
        GraphRank::NoRank { vertices, .. } => Some(vertices.iter().map(|v| v.rank()).collect::<Vec<_>>()),
        _ => None,
    };
    let pass = ga.is_connected()
        && ga.edges.len() == 1
        && ga.edges[0].height == 1
        && !gc.is_connected()
        && gc.pair_heights == [(0, 1, 2)]
        && depth_c == 1
        && matches!(rank_m, GraphRank::Rank { rank: 2, .. })
        && n_ranks == Some(vec![Some(1), Some(0)]);
    Ok((
        format!(
            "R_A connected: {} with edge heights {:?}; R_C connected: {} with pair heights {:?}, depth {depth_c}; rank M_A: {}; N_A vertex ranks: {:?}",
            ga.is_connected(),
            ga.edges.iter().map(|e| e.height).collect::<Vec<_>>(),
            gc.is_connected(),
            gc.pair_heights,
            match rank_m {
                GraphRank::Rank { rank, .. } => rank.to_string(),
                _ => "none".into(),
            },
            n_ranks
        ),
        pass,
    ))
}

fn pipelines(caps: &Caps) -> Result<(String, bool)> {
    let fa = fix_a(caps)?;
    let fb = fix_b(caps)?;
    let second = verify_second_rigidity(&fa.m, &fa.n)?;
    let local = verify_local_pd_reflexivity(&fa.m, &fa.n)?;
    let serre = verify_serre_on_both(&fa.m, &fa.n, 2, &RigidityAssertion::HypersurfaceFinitePdOrLength)?;
    let node = verify_tor_vanishing(&fb.m, &fb.n, 1, &RigidityAssertion::None)?;
    let failed_at = |h: Option<&crate::serre::LedgerEntry>| h.is_some_and(|h| h.status == Status::Failed && h.certificate.contains("(x, y)"));
    let reports = [&second, &local, &serre, &node];
    let no_candidate = reports.iter().all(|r| r.verdict != Verdict::CounterexampleCandidate);
    let pass = second.verdict == Verdict::Consistent
        && failed_at(local.hypothesis("(ii)"))
        && failed_at(serre.hypothesis("(iv)"))
        && node.hypothesis("rigidity").is_some_and(|h| h.status == Status::Failed)
        && no_candidate;
    Ok((
        format!(
            "second rigidity: {:?}; local pd reflexivity failed hypotheses {:?}; serre on both failed hypotheses {:?}; node pair failed hypotheses {:?}",
            second.verdict,
            local.failed_hypotheses().iter().map(|h| h.id.as_str()).collect::<Vec<_>>(),
            serre.failed_hypotheses().iter().map(|h| h.id.as_str()).collect::<Vec<_>>(),
            node.failed_hypotheses().iter().map(|h| h.id.as_str()).collect::<Vec<_>>(),
        ),
        pass,
    ))
}
