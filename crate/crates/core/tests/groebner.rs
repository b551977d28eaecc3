mod common;

use std::sync::Arc;

use common::{build, coords, divide, exps_of_degree, homogeneous, ideal_piece, member, s_poly, Span};
use proptest::prelude::*;
use rigidity_core::groebner::{relative_syzygies, FreeVector, Ideal};
use rigidity_core::parse::parse_poly;
use rigidity_core::{Caps, Field, Monomial, MonomialOrder, Poly, PolyRing};

fn ring(vars: &[&str], order: MonomialOrder) -> Arc<PolyRing> {
    PolyRing::new(Field::Rationals, vars, order).unwrap()
}

fn polys(r: &Arc<PolyRing>, s: &[&str]) -> Vec<Poly> {
    s.iter().map(|t| parse_poly(t, r).unwrap()).collect()
}

fn ideal(r: &Arc<PolyRing>, s: &[&str]) -> Ideal {
    Ideal::new(r, polys(r, s)).unwrap()
}

#[test]
fn buchberger_examples() {
    let caps = Caps::default();
    let r = ring(&["x", "y"], MonomialOrder::Grevlex);
    assert_eq!(ideal(&r, &["x", "y"]).groebner(&caps).unwrap().polys(), polys(&r, &["x", "y"]));
    assert_eq!(ideal(&r, &["x*y"]).groebner(&caps).unwrap().polys(), polys(&r, &["x*y"]));

    // x^2 = y and x^3 = z give z^2 = x^6 = y^3.
    let l = ring(&["x", "y", "z"], MonomialOrder::Lex);
    let gb = ideal(&l, &["x^2 - y", "x^3 - z"]).groebner(&caps).unwrap().polys();
    let cubic = parse_poly("y^3 - z^2", &l).unwrap();
    assert!(gb.iter().any(|g| *g == cubic || *g == cubic.neg()), "{gb:?}");
}

#[test]
fn normal_form_examples() {
    let caps = Caps::default();
    let r = ring(&["x", "y", "z"], MonomialOrder::Grevlex);
    let i = ideal(&r, &["x*y"]);
    assert_eq!(i.normal_form(&parse_poly("x^2*y + z", &r).unwrap(), &caps).unwrap(), parse_poly("z", &r).unwrap());
    let g = parse_poly("x*y*z - 3*x^2*y", &r).unwrap();
    assert!(i.normal_form(&g, &caps).unwrap().is_zero());
}

#[test]
fn koszul_and_unit_syzygies() {
    let caps = Caps::default();
    let r = ring(&["x", "y"], MonomialOrder::Grevlex);
    let cols: Vec<FreeVector> = polys(&r, &["x", "y"]).iter().map(FreeVector::from_poly).collect();
    let syz = relative_syzygies(&r, &[0], &cols, &[1, 1], &[], &caps).unwrap();
    assert_eq!(syz.len(), 1);
    let c = syz[0].coords();
    let (y, x) = (parse_poly("y", &r).unwrap(), parse_poly("x", &r).unwrap());
    assert!(c == vec![y.clone(), x.neg()] || c == vec![y.neg(), x]);

    let one = vec![FreeVector::from_poly(&Poly::one(&r))];
    assert!(relative_syzygies(&r, &[0], &one, &[0], &[], &caps).unwrap().is_empty());
}

/// Syzygies of `(y, z, w)` over `ℚ[x,y,z,w]/(xy)`, checked degree by degree
/// against the kernel of the multiplication map on graded pieces.
#[test]
fn syzygies_over_the_hypersurface_match_linear_algebra() {
    let caps = Caps::default();
    let r = ring(&["x", "y", "z", "w"], MonomialOrder::Grevlex);
    let gens = polys(&r, &["y", "z", "w"]);
    let xy = polys(&r, &["x*y"]);
    let cols: Vec<FreeVector> = gens.iter().map(FreeVector::from_poly).collect();
    let extra: Vec<FreeVector> = xy.iter().map(FreeVector::from_poly).collect();
    let syz = relative_syzygies(&r, &[0], &cols, &[1, 1, 1], &extra, &caps).unwrap();

    let x_e1 = [parse_poly("x", &r).unwrap(), Poly::zero(&r), Poly::zero(&r)];
    let one = r.field.one();
    for t in 1..=3u32 {
        let low = exps_of_degree(4, t - 1);
        // oracle: kernel dimension of (S_{t-1})^3 → (S/(xy))_t
        let (basis, i_t) = ideal_piece(&r, &xy, t);
        let mut image = Span::new();
        for e in i_t_rows(&r, &xy, t) {
            image.insert(e);
        }
        for g in &gens {
            for m in &low {
                image.insert(coords(&g.mul_term(&Monomial::new(m.clone()), &one), &basis));
            }
        }
        let kernel_dim = 3 * low.len() - (image.rank() - i_t.rank());

        // computed: span of monomial multiples of the returned syzygies in degree t
        let mut spanned = Span::new();
        for s in &syz {
            let c = s.coords();
            let d = c.iter().find_map(|p| p.degree()).unwrap() + 1;
            if d > t {
                continue;
            }
            for m in exps_of_degree(4, t - d) {
                let m = Monomial::new(m);
                let v: Vec<_> = c.iter().flat_map(|p| coords(&p.mul_term(&m, &one), &low)).collect();
                spanned.insert(v);
            }
        }
        assert_eq!(spanned.rank(), kernel_dim, "degree {t}");
        if t == 2 {
            let v: Vec<_> = x_e1.iter().flat_map(|p| coords(p, &low)).collect();
            assert!(spanned.contains(v), "(x, 0, 0) is a syzygy");
        }
    }
    for s in &syz {
        let combo = s.coords().iter().zip(&gens).fold(Poly::zero(&r), |acc, (a, g)| acc.add(&a.mul(g)));
        assert!(member(&r, &xy, &combo));
    }
}

fn i_t_rows(r: &Arc<PolyRing>, gens: &[Poly], t: u32) -> Vec<Vec<num_rational::BigRational>> {
    let basis = exps_of_degree(r.nvars(), t);
    let mut out = Vec::new();
    for g in gens {
        let dg = g.degree().unwrap();
        if dg <= t {
            for m in exps_of_degree(r.nvars(), t - dg) {
                out.push(coords(&g.mul_term(&Monomial::new(m), &r.field.one()), &basis));
            }
        }
    }
    out
}

#[test]
fn ideal_quotient_examples() {
    let caps = Caps::default();
    let r = ring(&["x", "y", "z", "w"], MonomialOrder::Grevlex);
    let x = parse_poly("x", &r).unwrap();
    let q = ideal(&r, &["x*y"]).quotient(&x, &caps).unwrap();
    assert!(q.is_subset(&ideal(&r, &["y"]), &caps).unwrap() && ideal(&r, &["y"]).is_subset(&q, &caps).unwrap());
    let i = ideal(&r, &["x*y", "z^2"]);
    let same = i.quotient(&Poly::one(&r), &caps).unwrap();
    assert!(same.is_subset(&i, &caps).unwrap() && i.is_subset(&same, &caps).unwrap());
    let q2 = ideal(&r, &["x^2"]).quotient(&x, &caps).unwrap();
    assert_eq!(q2.groebner(&caps).unwrap().polys(), vec![x]);
}

#[test]
fn krull_dimension_examples() {
    let caps = Caps::default();
    let r = ring(&["x", "y", "z", "w"], MonomialOrder::Grevlex);
    assert_eq!(ideal(&r, &["x*y"]).krull_dimension(&caps).unwrap(), 3);
    assert_eq!(Ideal::zero(&r).krull_dimension(&caps).unwrap(), 4);
    let c = ring(&["x", "y", "u", "v"], MonomialOrder::Grevlex);
    assert_eq!(ideal(&c, &["x*u", "x*v", "y*u", "y*v"]).krull_dimension(&caps).unwrap(), 2);
}

#[test]
fn radical_membership_examples() {
    let caps = Caps::default();
    let r = ring(&["x", "y", "z", "u"], MonomialOrder::Grevlex);
    let p = |s| parse_poly(s, &r).unwrap();
    assert!(ideal(&r, &["x^2"]).radical_contains(&p("x"), &caps).unwrap());
    assert!(!ideal(&r, &["x*y"]).radical_contains(&p("z"), &caps).unwrap());
    assert!(ideal(&r, &["x^2*u^3"]).radical_contains(&p("x*u"), &caps).unwrap());
}

#[derive(Debug, Clone)]
struct Instance {
    nvars: usize,
    gens: Vec<Vec<(Vec<u16>, i64)>>,
    target_deg: u32,
    multipliers: Vec<Vec<(Vec<u16>, i64)>>,
    noise: Option<Vec<(Vec<u16>, i64)>>,
}

/// Homogeneous ideals in at most three variables and degree at most four,
/// with a target built from the generators plus optional noise.
fn instance() -> impl Strategy<Value = Instance> {
    (1usize..=3, prop::collection::vec(1u32..=3, 1..=3), 0u32..=1).prop_flat_map(|(n, degs, extra)| {
        let target_deg = degs.iter().copied().max().unwrap() + extra;
        let gens: Vec<_> = degs.iter().map(|&d| homogeneous(n, d)).collect();
        let mults: Vec<_> = degs.iter().map(|&d| homogeneous(n, target_deg - d)).collect();
        (Just(n), gens, Just(target_deg), mults, prop::option::of(homogeneous(n, target_deg)))
            .prop_map(|(nvars, gens, target_deg, multipliers, noise)| Instance { nvars, gens, target_deg, multipliers, noise })
    })
}

fn names(n: usize) -> Vec<&'static str> {
    ["x", "y", "z"][..n].to_vec()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn membership_agrees_with_graded_linear_algebra(inst in instance()) {
        let r = ring(&names(inst.nvars), MonomialOrder::Grevlex);
        let gens: Vec<Poly> = inst.gens.iter().map(|g| build(&r, g)).filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let mut f = Poly::zero(&r);
        for (g, m) in inst.gens.iter().zip(&inst.multipliers) {
            f = f.add(&build(&r, g).mul(&build(&r, m)));
        }
        if let Some(noise) = &inst.noise {
            f = f.add(&build(&r, noise));
        }
        prop_assert!(f.is_zero() || f.degree() == Some(inst.target_deg));
        let i = Ideal::new(&r, gens.clone()).unwrap();
        prop_assert_eq!(i.contains(&f, &Caps::default()).unwrap(), member(&r, &gens, &f));
    }

    #[test]
    fn buchberger_criterion_rechecked(inst in instance(), lex in any::<bool>()) {
        let order = if lex { MonomialOrder::Lex } else { MonomialOrder::Grevlex };
        let r = ring(&names(inst.nvars), order);
        let gens: Vec<Poly> = inst.gens.iter().map(|g| build(&r, g)).filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let gb = Ideal::new(&r, gens.clone()).unwrap().groebner(&Caps::default()).unwrap().polys();
        for (a, f) in gb.iter().enumerate() {
            for g in &gb[a + 1..] {
                prop_assert!(divide(&s_poly(f, g), &gb).is_zero());
            }
        }
        // same ideal: generators reduce to zero, basis elements lie in the span
        for g in &gens {
            prop_assert!(divide(g, &gb).is_zero());
        }
        for b in &gb {
            prop_assert!(member(&r, &gens, b));
        }
    }

    #[test]
    fn normal_form_is_idempotent(inst in instance()) {
        let caps = Caps::default();
        let r = ring(&names(inst.nvars), MonomialOrder::Grevlex);
        let gens: Vec<Poly> = inst.gens.iter().map(|g| build(&r, g)).filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let i = Ideal::new(&r, gens).unwrap();
        let f = inst.noise.as_ref().map(|n| build(&r, n)).unwrap_or_else(|| Poly::zero(&r));
        let once = i.normal_form(&f, &caps).unwrap();
        prop_assert_eq!(i.normal_form(&once, &caps).unwrap(), once.clone());
        prop_assert!(i.contains(&f.sub(&once), &caps).unwrap());
    }
}
