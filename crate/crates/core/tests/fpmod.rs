mod common;

use common::{build, homogeneous};
use proptest::prelude::*;
use rigidity_core::fixtures::{fix_a, fix_b, tensor_complex};
use rigidity_core::groebner::Ideal;
use rigidity_core::hilbert::hilbert_series;
use rigidity_core::module::{find_isomorphism, LocalRank, ModuleMap, PresentedModule};
use rigidity_core::{Caps, Error, Matrix, QuotientRing, RIdeal};

fn cyclic(r: &QuotientRing, gens: &[&str]) -> PresentedModule {
    PresentedModule::cyclic(r, &RIdeal::parse(r, gens).unwrap()).unwrap()
}

fn same_ideal(a: &Ideal, b: &Ideal) -> bool {
    let caps = Caps::default();
    a.is_subset(b, &caps).unwrap() && b.is_subset(a, &caps).unwrap()
}

fn ambient(r: &QuotientRing, gens: &[&str]) -> Ideal {
    RIdeal::parse(r, gens).unwrap().ambient()
}

#[test]
fn cyclic_modules() {
    let caps = Caps::default();
    let fa = fix_a(&caps).unwrap();
    assert_eq!((fa.n.ngens(), fa.n.nrels()), (1, 1));
    assert_eq!(fa.n.presentation().entry(0, 0).to_string(), "x");
    assert!(cyclic(&fa.ring, &["0"]).is_free());
    let fb = fix_b(&caps).unwrap();
    assert_eq!(fb.n.presentation().entry(0, 0).to_string(), "x^2");
}

#[test]
fn kernels() {
    let caps = Caps::default();
    let r = fix_a(&caps).unwrap().ring;
    let x = r.parse("x").unwrap();
    let mat = Matrix::from_rows(r.poly_ring(), vec![0], &[vec![x]]).unwrap();
    let src = PresentedModule::free(&r, &[1]);
    let tgt = PresentedModule::free(&r, &[0]);
    let (k, incl) = ModuleMap::new(&src, &tgt, mat).unwrap().kernel().unwrap();
    // (0 : x) = (y) in R_A, a copy of R/(x) generated in degree 2
    let k = k.minimize().unwrap();
    assert_eq!(k.ngens(), 1);
    assert_eq!(k.gen_degs(), &[2]);
    assert!(find_isomorphism(&k, &cyclic(&r, &["x"])).unwrap().is_some());
    assert!(incl.is_injective().unwrap());

    let id = ModuleMap::identity(&cyclic(&r, &["y", "z"]));
    assert!(id.kernel().unwrap().0.is_zero().unwrap());
    let free = PresentedModule::free(&r, &[0]);
    let (all, _) = ModuleMap::zero(&free, &PresentedModule::zero(&r)).kernel().unwrap();
    assert!(find_isomorphism(&all, &free).unwrap().is_some());
}

#[test]
fn tensor_products() {
    let caps = Caps::default();
    let fa = fix_a(&caps).unwrap();
    let t = fa.m.tensor(&fa.n).unwrap().minimize().unwrap();
    assert_eq!((t.ngens(), t.nrels()), (3, 4));
    let a = PresentedModule::coker(&fa.ring, tensor_complex(&fa.ring).unwrap().a).unwrap();
    assert!(find_isomorphism(&t, &a).unwrap().is_some());

    let r = PresentedModule::free(&fa.ring, &[0]);
    let mr = fa.m.tensor(&r).unwrap().minimize().unwrap();
    assert_eq!(hilbert_series(&mr).unwrap(), hilbert_series(&fa.m).unwrap());
    assert!(find_isomorphism(&mr, &fa.m).unwrap().is_some());

    let fb = fix_b(&caps).unwrap();
    let tb = fb.m.tensor(&fb.n).unwrap().minimize().unwrap();
    assert!(find_isomorphism(&tb, &fb.m).unwrap().is_some());
}

#[test]
fn duals() {
    let caps = Caps::default();
    let fa = fix_a(&caps).unwrap();
    let r = &fa.ring;
    let free = PresentedModule::free(r, &[0, 0]);
    assert!(find_isomorphism(&free.dual().unwrap(), &free).unwrap().is_some());
    // Hom(R/(x), R) = (0 : x) = (y), a shifted copy of R/(x)
    let d = fa.n.dual().unwrap().minimize().unwrap();
    assert_eq!(d.ngens(), 1);
    let hs = hilbert_series(&d).unwrap();
    let shift = d.gen_degs()[0];
    assert_eq!(hs, hilbert_series(&fa.n).unwrap().shifted(shift));
    assert!(find_isomorphism(&d, &fa.n).unwrap().is_some());
    assert!(PresentedModule::zero(r).dual().unwrap().is_zero().unwrap());
}

#[test]
fn transposes() {
    let caps = Caps::default();
    let fa = fix_a(&caps).unwrap();
    let m = fa.m.minimize().unwrap();
    assert_eq!((m.ngens(), m.nrels()), (3, 1));
    let col: Vec<String> = m.presentation().col(0).coords().iter().map(|p| p.to_string()).collect();
    assert_eq!(col, ["y", "z", "w"]);
    assert!(PresentedModule::free(&fa.ring, &[0, 1]).transpose().unwrap().is_zero().unwrap());

    // Tr Tr M_A agrees with R/p up to free summands
    let back = fa.m.transpose().unwrap();
    let rp = PresentedModule::cyclic(&fa.ring, &fa.prime).unwrap();
    let diff = hilbert_series(&back).unwrap().sub(&hilbert_series(&rp).unwrap());
    let hr = hilbert_series(&PresentedModule::free(&fa.ring, &[0])).unwrap();
    assert!(diff.is_multiple_of(&hr));
    assert!(find_isomorphism(&back, &rp).unwrap().is_some());
}

#[test]
fn pushforwards() {
    let caps = Caps::default();
    let fa = fix_a(&caps).unwrap();
    let pr = PresentedModule::free(&fa.ring, &[0]).pushforward().unwrap();
    assert!(pr.module.is_zero().unwrap());
    assert_eq!(pr.rank, 1);
    let pn = fa.n.pushforward().unwrap();
    assert!(pn.ext1_vanishes);
    assert!(pn.embedding.is_injective().unwrap());
    let fb = fix_b(&caps).unwrap();
    assert!(matches!(fb.n.pushforward(), Err(Error::NotTorsionless(_))));
}

#[test]
fn syzygies() {
    let caps = Caps::default();
    let fa = fix_a(&caps).unwrap();
    let omega = fa.n.syzygy(1).unwrap();
    assert_eq!(omega.ngens(), 1);
    assert!(find_isomorphism(&omega, &cyclic(&fa.ring, &["y"])).unwrap().is_some());
    assert!(PresentedModule::free(&fa.ring, &[0, 0]).syzygy(2).unwrap().is_zero().unwrap());
    let s0 = fa.m.syzygy(0).unwrap();
    assert_eq!(s0.presentation().to_strings(), fa.m.minimize().unwrap().presentation().to_strings());
}

#[test]
fn minimization() {
    let caps = Caps::default();
    let fa = fix_a(&caps).unwrap();
    let r = &fa.ring;
    let rows = |v: &[&[&str]]| v.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect::<Vec<Vec<String>>>();
    let unit = PresentedModule::from_strings(r, &[0], &rows(&[&["1"]])).unwrap();
    assert!(unit.minimize().unwrap().is_zero().unwrap());
    let block = PresentedModule::from_strings(r, &[0, 1], &rows(&[&["1", "0"], &["0", "x"]])).unwrap();
    let mb = block.minimize().unwrap();
    assert_eq!((mb.ngens(), mb.nrels()), (1, 1));
    assert!(find_isomorphism(&mb, &cyclic(r, &["x"])).unwrap().is_some());
    let c = tensor_complex(r).unwrap().c;
    let cm = PresentedModule::coker(r, c).unwrap();
    assert!(cm.is_minimal());
    assert_eq!(cm.minimize().unwrap().ngens(), 4);
}

#[test]
fn biduality_maps() {
    let caps = Caps::default();
    let fa = fix_a(&caps).unwrap();
    let free = PresentedModule::free(&fa.ring, &[0, 2]).biduality().unwrap();
    assert!(free.is_reflexive().unwrap());
    let bm = fa.m.biduality().unwrap();
    assert!(bm.kernel.is_zero().unwrap());
    assert!(!bm.cokernel.is_zero().unwrap());
    let fb = fix_b(&caps).unwrap();
    assert!(!fb.n.biduality().unwrap().kernel.is_zero().unwrap());
}

#[test]
fn fitting_ideals() {
    let caps = Caps::default();
    let fa = fix_a(&caps).unwrap();
    let r = &fa.ring;
    assert!(same_ideal(&cyclic(r, &["x", "z^2"]).fitting_ideal(0).unwrap(), &ambient(r, &["x", "z^2"])));
    let zero = ambient(r, &["0"]);
    assert!(same_ideal(&fa.m.fitting_ideal(0).unwrap(), &zero));
    assert!(same_ideal(&fa.m.fitting_ideal(1).unwrap(), &zero));
    assert!(same_ideal(&fa.m.fitting_ideal(2).unwrap(), &ambient(r, &["y", "z", "w"])));
    assert!(same_ideal(&fa.m.fitting_ideal(3).unwrap(), &ambient(r, &["1"])));
}

#[test]
fn local_ranks() {
    let caps = Caps::default();
    let fa = fix_a(&caps).unwrap();
    let r = &fa.ring;
    let at = |m: &PresentedModule, p: &[&str]| m.localized_rank(&RIdeal::parse(r, p).unwrap()).unwrap();
    assert!(matches!(at(&fa.n, &["x"]), LocalRank::Free { rank: 1, .. }));
    assert!(matches!(at(&fa.n, &["y"]), LocalRank::Free { rank: 0, .. }));
    assert!(matches!(at(&fa.n, &["x", "y"]), LocalRank::NotFree { .. }));
    let free = PresentedModule::free(r, &[0, 0, 1]);
    assert!(matches!(at(&free, &["x", "z"]), LocalRank::Free { rank: 3, .. }));
    let fb = fix_b(&caps).unwrap();
    let mb = RIdeal::parse(&fb.ring, &["x", "y"]).unwrap();
    assert!(matches!(fb.n.localized_rank(&mb).unwrap(), LocalRank::NotFree { .. }));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Over `ℚ[x,y,z]/(xy)`: `M ⊗ R ≅ M`, Hilbert series of tensor
    /// products are symmetric and minimization keeps the Hilbert series.
    #[test]
    fn tensor_and_minimize_invariants(a in prop::collection::vec((1u32..=2).prop_flat_map(|d| homogeneous(3, d)), 1..=2),
                                      b in prop::collection::vec((1u32..=2).prop_flat_map(|d| homogeneous(3, d)), 1..=2)) {
        let r = rigidity_core::make_ring(rigidity_core::Field::Rationals, &["x", "y", "z"], &["x*y"]).unwrap();
        let ga: Vec<_> = a.iter().map(|t| build(r.poly_ring(), t)).filter(|p| !p.is_zero()).collect();
        let gb: Vec<_> = b.iter().map(|t| build(r.poly_ring(), t)).filter(|p| !p.is_zero()).collect();
        let ma = PresentedModule::cyclic(&r, &RIdeal::new(&r, ga)).unwrap();
        let mb = PresentedModule::cyclic(&r, &RIdeal::new(&r, gb)).unwrap();
        prop_assume!(!ma.is_zero().unwrap() && !mb.is_zero().unwrap());
        let free = PresentedModule::free(&r, &[0]);
        prop_assert!(find_isomorphism(&ma.tensor(&free).unwrap().minimize().unwrap(), &ma.minimize().unwrap()).unwrap().is_some());
        let ab = hilbert_series(&ma.tensor(&mb).unwrap()).unwrap();
        let ba = hilbert_series(&mb.tensor(&ma).unwrap()).unwrap();
        prop_assert_eq!(&ab, &ba);
        prop_assert_eq!(hilbert_series(&ma.tensor(&mb).unwrap().minimize().unwrap()).unwrap(), ab);
    }
}
