use rigidity_core::fixtures::{fix_a, fix_b, fix_c};
use rigidity_core::module::PresentedModule;
use rigidity_core::serre::{
    default_catalog, graph_rank, hh_graph, is_reflexive, n_torsion_free, rigidity_search, verify_local_pd_reflexivity,
    verify_second_rigidity, verify_serre_on_both, verify_tor_vanishing, GraphRank, RigidityAssertion, Status, TheoremReport,
    Verdict, ViolationKind,
};
use rigidity_core::parse::parse_poly;
use rigidity_core::{make_ring, Caps, Field, MonomialOrder, PolyRing, PrimeHints, QuotientRing, RIdeal};

fn cyclic(r: &QuotientRing, gens: &[&str]) -> PresentedModule {
    PresentedModule::cyclic(r, &RIdeal::parse(r, gens).unwrap()).unwrap()
}

fn failed(rep: &TheoremReport) -> Vec<&str> {
    rep.failed_hypotheses().iter().map(|h| h.id.as_str()).collect()
}

#[test]
fn torsion_free_levels() {
    let caps = Caps::default();
    let fa = fix_a(&caps).unwrap();
    let t = fa.m.tensor(&fa.n).unwrap();
    assert_eq!(n_torsion_free(&t, 2).unwrap().ext_zero, [true, true]);
    assert_eq!(n_torsion_free(&fa.m, 2).unwrap().ext_zero, [true, false]);
    assert!(n_torsion_free(&PresentedModule::free(&fa.ring, &[0, 0]), 4).unwrap().holds());
    let fb = fix_b(&caps).unwrap();
    assert_eq!(n_torsion_free(&fb.n, 1).unwrap().first_failure(), Some(1));
}

#[test]
fn reflexivity_verdicts() {
    let caps = Caps::default();
    let fa = fix_a(&caps).unwrap();
    assert!(is_reflexive(&fa.n).unwrap().reflexive);
    let m = is_reflexive(&fa.m).unwrap();
    assert!(m.torsionless && !m.reflexive);
    assert!(m.biduality_kernel_zero && !m.biduality_cokernel_zero);
    assert!(is_reflexive(&PresentedModule::free(&fa.ring, &[0])).unwrap().reflexive);
}

#[test]
fn graphs() {
    let caps = Caps::default();
    let ga = hh_graph(&fix_a(&caps).unwrap().ring).unwrap();
    assert_eq!(ga.vertex_labels(), ["(x)", "(y)"]);
    assert!(ga.is_connected());
    assert_eq!(ga.edges.len(), 1);
    assert_eq!(ga.edges[0].height, 1);
    let gc = hh_graph(&fix_c(&caps).unwrap()).unwrap();
    assert_eq!(gc.vertex_labels(), ["(x, y)", "(u, v)"]);
    assert!(!gc.is_connected());
    assert_eq!(gc.pair_heights, [(0, 1, 2)]);
    let s = PolyRing::new(Field::Rationals, &["x", "y", "z"], MonomialOrder::Grevlex).unwrap();
    let cone = vec![parse_poly("x^2 - y*z", &s).unwrap()];
    let hints = PrimeHints { factors: Some(cone.clone()), ..PrimeHints::default() };
    let domain = QuotientRing::new(&s, cone, caps.clone(), hints).unwrap();
    let gd = hh_graph(&domain).unwrap();
    assert_eq!(gd.vertices.len(), 1);
    assert!(gd.is_connected());
}

#[test]
fn ranks_on_the_graph() {
    let caps = Caps::default();
    let fa = fix_a(&caps).unwrap();
    let g = hh_graph(&fa.ring).unwrap();
    assert!(matches!(graph_rank(&fa.m, &g).unwrap(), GraphRank::Rank { rank: 2, .. }));
    match graph_rank(&fa.n, &g).unwrap() {
        GraphRank::NoRank { vertices, .. } => {
            assert_eq!(vertices.iter().map(|v| v.rank()).collect::<Vec<_>>(), [Some(1), Some(0)]);
        }
        other => panic!("expected no rank, got {other:?}"),
    }
    let free = PresentedModule::free(&fa.ring, &[0, 1, 1]);
    assert!(matches!(graph_rank(&free, &g).unwrap(), GraphRank::Rank { rank: 3, .. }));
}

#[test]
fn second_rigidity_pipeline() {
    let caps = Caps::default();
    let fa = fix_a(&caps).unwrap();
    let rep = verify_second_rigidity(&fa.m, &fa.n).unwrap();
    assert_eq!(rep.verdict, Verdict::Consistent);
    assert!(rep.hypotheses.iter().all(|h| h.status == Status::Verified));
    assert!(rep.conclusions.iter().all(|h| h.status == Status::Verified));

    let fb = fix_b(&caps).unwrap();
    let rb = verify_second_rigidity(&fb.m, &fb.n).unwrap();
    assert_eq!(failed(&rb), ["rank"]);
    assert_eq!(rb.verdict, Verdict::Inconclusive);

    let free = PresentedModule::free(&fa.ring, &[0]);
    assert_eq!(verify_second_rigidity(&free, &fa.n).unwrap().verdict, Verdict::Consistent);
}

#[test]
fn local_pd_pipeline() {
    let caps = Caps::default();
    let fa = fix_a(&caps).unwrap();
    let rep = verify_local_pd_reflexivity(&fa.m, &fa.n).unwrap();
    let ii = rep.hypothesis("(ii)").unwrap();
    assert_eq!(ii.status, Status::Failed);
    assert!(ii.certificate.contains("(x, y)"));
    assert!(!rep.applicable);

    let ny = cyclic(&fa.ring, &["y"]);
    let r2 = verify_local_pd_reflexivity(&fa.n, &ny).unwrap();
    assert_eq!(r2.hypothesis("(i)").unwrap().status, Status::Failed);

    let free = PresentedModule::free(&fa.ring, &[0]);
    assert_eq!(verify_local_pd_reflexivity(&free, &free).unwrap().verdict, Verdict::Consistent);
}

#[test]
fn tor_vanishing_pipeline() {
    let caps = Caps::default();
    let fa = fix_a(&caps).unwrap();
    let rep = verify_tor_vanishing(&fa.m, &fa.n, 2, &RigidityAssertion::HypersurfaceFinitePdOrLength).unwrap();
    assert_eq!(rep.verdict, Verdict::Consistent);
    assert_eq!(rep.hypothesis("rigidity").unwrap().status, Status::Asserted);

    let fb = fix_b(&caps).unwrap();
    let rb = verify_tor_vanishing(&fb.m, &fb.n, 1, &RigidityAssertion::None).unwrap();
    assert_eq!(rb.hypothesis("rigidity").unwrap().status, Status::Failed);
    assert_eq!(rb.conclusion("tor-vanishing").unwrap().status, Status::Failed);
    assert_eq!(rb.conclusion("n-depth").unwrap().status, Status::Failed);
    assert_ne!(rb.verdict, Verdict::CounterexampleCandidate);

    let free = PresentedModule::free(&fa.ring, &[0]);
    let rf = verify_tor_vanishing(&free, &fa.n, 3, &RigidityAssertion::None).unwrap();
    assert_eq!(rf.verdict, Verdict::Consistent);
}

#[test]
fn serre_on_both_pipeline() {
    let caps = Caps::default();
    let fa = fix_a(&caps).unwrap();
    let asserted = RigidityAssertion::HypersurfaceFinitePdOrLength;
    let rep = verify_serre_on_both(&fa.m, &fa.n, 2, &asserted).unwrap();
    assert_eq!(failed(&rep), ["(iv)"]);
    assert!(rep.hypothesis("(iv)").unwrap().certificate.contains("(x, y)"));

    // M_A is torsionless but not reflexive, so against a free module only n = 1 applies
    let free = PresentedModule::free(&fa.ring, &[0, 0]);
    assert_eq!(verify_serre_on_both(&fa.m, &free, 1, &asserted).unwrap().verdict, Verdict::Consistent);
    assert_eq!(failed(&verify_serre_on_both(&fa.m, &free, 2, &asserted).unwrap()), ["(iii)"]);

    let c = fix_c(&caps).unwrap();
    let mc = cyclic(&c, &["x", "y"]);
    let rc = verify_serre_on_both(&mc, &mc, 1, &RigidityAssertion::None).unwrap();
    assert_eq!(rc.hypothesis("s2").unwrap().status, Status::Failed);
    assert!(!rc.applicable);
}

#[test]
fn rigidity_searches() {
    let caps = Caps::default();
    let fb = fix_b(&caps).unwrap();
    let (names, mods): (Vec<String>, Vec<PresentedModule>) = default_catalog(&fb.ring).unwrap().into_iter().unzip();
    for want in ["R/(x)", "R/(y)", "R/(x^2)", "R/(y^2)", "k"] {
        assert!(names.iter().any(|n| n == want), "{want} missing from {names:?}");
    }
    let found = rigidity_search(&fb.ring, &mods, 3).unwrap();
    let mb = names.iter().position(|n| n == "R/(x)").unwrap();
    let w = found.iter().find(|v| v.first == mb && v.kind == ViolationKind::NotRigid).expect("a witness for R/(x)");
    assert!(w.tor_zero[0] && !w.tor_zero[1]);

    let regular = make_ring(Field::Rationals, &["x", "y"], &[]).unwrap();
    let (_, cat): (Vec<String>, Vec<PresentedModule>) = default_catalog(&regular).unwrap().into_iter().unzip();
    assert!(rigidity_search(&regular, &cat, 3).unwrap().is_empty());
    let frees = vec![PresentedModule::free(&fb.ring, &[0]), PresentedModule::free(&fb.ring, &[1, 2])];
    assert!(rigidity_search(&fb.ring, &frees, 3).unwrap().is_empty());
}
