//! Standard-graded quotient rings `R = S/I`, ideals of `R`, minimal primes
//! and heights.

use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::Ideal;
use crate::matrix::Matrix;
use crate::monomial::MonomialOrder;
use crate::parse::parse_poly;
use crate::poly::{Poly, PolyRing};

/// Optional data enabling minimal-prime computation for non-monomial ideals.
#[derive(Clone, Debug, Default)]
pub struct PrimeHints {
    /// Irreducible factors of the generator of a principal defining ideal.
    pub factors: Option<Vec<Poly>>,
    /// Candidate minimal primes, as generator lists in the ambient ring.
    pub candidates: Option<Vec<Vec<Poly>>>,
    /// Height-one primes supplied for hypothesis checks.
    pub height_one: Vec<Vec<Poly>>,
    /// The caller certifies that `height_one` lists every relevant prime.
    pub height_one_complete: bool,
}

/// Tri-state primality (plus a refutation) attached to ideals of `R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeFlag {
    Verified,
    Asserted,
    Unknown,
    NotPrime,
}

struct RingInner {
    poly: Arc<PolyRing>,
    ideal: Ideal,
    gb: Vec<Poly>,
    caps: Caps,
    dim: usize,
    hypersurface: bool,
    hints: PrimeHints,
    primes: OnceLock<std::result::Result<Vec<(Vec<Poly>, PrimeFlag)>, Error>>,
    /// Differentials of the minimal resolution of the residue field, and
    /// whether it is complete.
    residue: Mutex<Option<(Vec<Matrix>, bool)>>,
}

/// `R = S/I` with `I` homogeneous and proper. Cheap to clone.
#[derive(Clone)]
pub struct QuotientRing(Arc<RingInner>);

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuotientRing({self})")
    }
}

impl fmt::Display for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.0.gb.iter().map(|p| p.to_string()).collect();
        write!(f, "{}[{}]", self.0.poly.field, self.0.poly.vars.join(","))?;
        if !g.is_empty() {
            write!(f, "/({})", g.join(", "))?;
        }
        Ok(())
    }
}

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.poly == other.0.poly && self.0.gb == other.0.gb)
    }
}

impl Eq for QuotientRing {}

/// Convenience constructor from text: `make_ring(QQ, ["x","y"], ["x*y"])`.
pub fn make_ring(field: Field, vars: &[&str], ideal: &[&str]) -> Result<QuotientRing> {
    let poly = PolyRing::new(field, vars, MonomialOrder::Grevlex)?;
    let gens = ideal.iter().map(|s| parse_poly(s, &poly)).collect::<Result<Vec<_>>>()?;
    QuotientRing::new(&poly, gens, Caps::default(), PrimeHints::default())
}

impl QuotientRing {
    pub fn new(poly: &Arc<PolyRing>, gens: Vec<Poly>, caps: Caps, hints: PrimeHints) -> Result<Self> {
        for g in &gens {
            if !g.is_homogeneous() {
                return Err(Error::Inhomogeneous(format!("defining ideal generator {g}")));
            }
        }
        let ideal = Ideal::new(poly, gens)?;
        if ideal.is_unit(&caps)? {
            return Err(Error::UnitIdeal);
        }
        let gb = ideal.groebner(&caps)?.polys();
        let dim = ideal.krull_dimension(&caps)?;
        let hypersurface = gb.len() == 1;
        Ok(QuotientRing(Arc::new(RingInner {
            poly: poly.clone(),
            ideal,
            gb,
            caps,
            dim,
            hypersurface,
            hints,
            primes: OnceLock::new(),
            residue: Mutex::new(None),
        })))
    }

    /// The same ring with different caps (caches are not shared).
    pub fn with_caps(&self, caps: Caps) -> Result<Self> {
        QuotientRing::new(&self.0.poly, self.0.gb.clone(), caps, self.0.hints.clone())
    }

    pub fn poly_ring(&self) -> &Arc<PolyRing> {
        &self.0.poly
    }

    pub fn field(&self) -> Field {
        self.0.poly.field
    }

    pub fn nvars(&self) -> usize {
        self.0.poly.nvars()
    }

    pub fn caps(&self) -> &Caps {
        &self.0.caps
    }

    pub fn hints(&self) -> &PrimeHints {
        &self.0.hints
    }

    /// The defining ideal `I` of the ambient ring.
    pub fn ideal(&self) -> &Ideal {
        &self.0.ideal
    }

    /// Reduced Groebner basis of `I`.
    pub fn ideal_gb(&self) -> &[Poly] {
        &self.0.gb
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn is_hypersurface(&self) -> bool {
        self.0.hypersurface
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.0.gb.is_empty()
    }

    pub fn parse(&self, text: &str) -> Result<Poly> {
        parse_poly(text, &self.0.poly)
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(&self.0.poly, i)
    }

    /// Normal form modulo `I`: the canonical representative of a ring element.
    pub fn reduce(&self, f: &Poly) -> Poly {
        if self.0.gb.is_empty() {
            return f.clone();
        }
        self.0.ideal.normal_form(f, &self.0.caps).expect("defining ideal basis is cached")
    }

    pub(crate) fn residue_cache(&self) -> &Mutex<Option<(Vec<Matrix>, bool)>> {
        &self.0.residue
    }

    /// Ambient ideal `J + I`.
    pub fn ambient(&self, gens: &[Poly]) -> Ideal {
        let mut g = gens.to_vec();
        g.extend(self.0.gb.iter().cloned());
        Ideal::new(&self.0.poly, g).unwrap()
    }

    /// Minimal primes of `R` (as ideals of `R`, lifted generators kept).
    ///
    /// Supported classes: monomial `I` (vertex covers of the supports);
    /// principal `I` with supplied irreducible factors; supplied candidates,
    /// which are verified to be exactly the minimal primes.
    pub fn minimal_primes(&self) -> Result<Vec<RIdeal>> {
        let raw = self.0.primes.get_or_init(|| self.compute_minimal_primes());
        match raw {
            Ok(list) => Ok(list
                .iter()
                .map(|(g, flag)| RIdeal::with_flag(self, g.clone(), *flag))
                .collect()),
            Err(e) => Err(e.clone()),
        }
    }

    fn compute_minimal_primes(&self) -> Result<Vec<(Vec<Poly>, PrimeFlag)>> {
        let caps = &self.0.caps;
        let poly = &self.0.poly;
        if self.0.gb.iter().all(|g| g.len() == 1) {
            let edges: Vec<u64> = self
                .0
                .gb
                .iter()
                .map(|g| g.lead_monomial().unwrap().support().fold(0, |a, i| a | (1 << i)))
                .collect();
            return Ok(minimal_vertex_covers(&edges)
                .into_iter()
                .map(|mask| {
                    let vars: Vec<Poly> =
                        (0..poly.nvars()).filter(|i| mask >> i & 1 == 1).map(|i| Poly::var(poly, i)).collect();
                    (vars, PrimeFlag::Verified)
                })
                .collect());
        }
        if let (true, Some(factors)) = (self.0.hypersurface, &self.0.hints.factors) {
            let f = &self.0.gb[0];
            let prod = factors.iter().fold(Poly::one(poly), |a, b| a.mul(b));
            if prod.monic() != f.monic() {
                return Err(Error::CandidateVerification(format!(
                    "product of supplied factors {prod} is not a scalar multiple of {f}"
                )));
            }
            let mut seen: Vec<Poly> = Vec::new();
            let mut out = Vec::new();
            for g in factors {
                if g.is_constant() {
                    continue;
                }
                let m = g.monic();
                if seen.contains(&m) {
                    continue;
                }
                seen.push(m.clone());
                let flag = decide_prime(&Ideal::new(poly, vec![m.clone()])?, caps)?;
                let flag = if flag == PrimeFlag::Unknown { PrimeFlag::Asserted } else { flag };
                if flag == PrimeFlag::NotPrime {
                    return Err(Error::CandidateVerification(format!("factor {m} is not prime")));
                }
                out.push((vec![m], flag));
            }
            return Ok(out);
        }
        if let Some(cands) = &self.0.hints.candidates {
            return self.verify_candidates(cands);
        }
        Err(Error::UnsupportedIdeal(format!(
            "defining ideal ({}) is not monomial and no factors or candidates were supplied",
            self.0.gb.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
        )))
    }

    fn verify_candidates(&self, cands: &[Vec<Poly>]) -> Result<Vec<(Vec<Poly>, PrimeFlag)>> {
        let caps = &self.0.caps;
        let poly = &self.0.poly;
        let ideals: Vec<Ideal> = cands.iter().map(|c| self.ambient(c)).collect();
        let mut out = Vec::new();
        for (k, c) in ideals.iter().enumerate() {
            if c.is_unit(caps)? {
                return Err(Error::CandidateVerification(format!("candidate {k} is the unit ideal")));
            }
            if let Some(g) = self.0.gb.iter().find(|g| !c.contains(g, caps).unwrap_or(false)) {
                return Err(Error::CandidateVerification(format!(
                    "candidate {k} does not contain the defining generator {g}"
                )));
            }
            let flag = decide_prime(c, caps)?;
            if flag == PrimeFlag::NotPrime {
                return Err(Error::CandidateVerification(format!("candidate {k} is not prime")));
            }
            let flag = if flag == PrimeFlag::Unknown { PrimeFlag::Asserted } else { flag };
            out.push((cands[k].clone(), flag));
        }
        for (a, ca) in ideals.iter().enumerate() {
            for (b, cb) in ideals.iter().enumerate() {
                if a != b && ca.is_subset(cb, caps)? {
                    return Err(Error::CandidateVerification(format!(
                        "candidate {a} is contained in candidate {b}"
                    )));
                }
            }
        }
        // the product of the candidates lies in the radical of I
        let mut prod = Ideal::new(poly, vec![Poly::one(poly)])?;
        for c in &ideals {
            prod = prod.product(c);
        }
        for g in prod.gens() {
            if !self.0.ideal.radical_contains(g, caps)? {
                return Err(Error::CandidateVerification(format!(
                    "product generator {g} is not in the radical of the defining ideal"
                )));
            }
        }
        Ok(out)
    }

    /// `dim R - dim R/J`. Requires equal dimension of all minimal primes;
    /// hypersurfaces and polynomial rings are Cohen-Macaulay and pass the
    /// guard without computing primes.
    pub fn height(&self, j: &RIdeal) -> Result<usize> {
        let caps = &self.0.caps;
        let amb = j.ambient();
        if amb.is_unit(caps)? {
            return Err(Error::UnitIdeal);
        }
        if !(self.0.hypersurface || self.0.gb.is_empty()) {
            let primes = self.minimal_primes()?;
            let dims = primes
                .iter()
                .map(|p| p.ambient().krull_dimension(caps))
                .collect::<Result<Vec<_>>>()?;
            if dims.iter().any(|&d| d != dims[0]) {
                return Err(Error::NotEquidimensional(format!(
                    "minimal primes have dimensions {dims:?}"
                )));
            }
        }
        Ok(self.0.dim - amb.krull_dimension(caps)?)
    }

    /// Depth of `R` as a module over itself.
    pub fn ring_depth(&self) -> Result<usize> {
        let r = crate::module::PresentedModule::free(self, &[0]);
        match crate::homology::depth(&r)? {
            crate::homology::Depth::Finite(d) => Ok(d),
            crate::homology::Depth::Infinity => Err(Error::Internal("R is the zero ring".into())),
        }
    }

    /// `depth R = dim R`; a sufficient certificate for Serre's (S2).
    pub fn is_cohen_macaulay(&self) -> Result<bool> {
        if self.0.hypersurface || self.0.gb.is_empty() {
            return Ok(true);
        }
        Ok(self.ring_depth()? == self.0.dim)
    }

    /// `I` is radical: the minimal primes intersect back to `I`.
    pub fn is_reduced(&self) -> Result<bool> {
        let caps = &self.0.caps;
        let mut primes = self.minimal_primes()?.into_iter().map(|p| p.ambient());
        let Some(first) = primes.next() else { return Ok(true) };
        let meet = primes.try_fold(first, |acc, p| acc.intersect(&p, caps))?;
        meet.is_subset(&self.0.ideal, caps)
    }

    /// The irrelevant maximal ideal.
    pub fn maximal_ideal(&self) -> RIdeal {
        let vars = (0..self.nvars()).map(|i| self.var(i)).collect();
        RIdeal::with_flag(self, vars, PrimeFlag::Verified)
    }

    /// Height-one primes supplied with the ring.
    pub fn supplied_height_one(&self) -> Vec<RIdeal> {
        self.0.hints.height_one.iter().map(|g| RIdeal::new(self, g.clone())).collect()
    }
}

/// Decides primality for monomial and linear ideals; `Unknown` otherwise.
fn decide_prime(amb: &Ideal, caps: &Caps) -> Result<PrimeFlag> {
    let gb = amb.groebner(caps)?;
    if gb.is_whole() {
        return Ok(PrimeFlag::NotPrime);
    }
    let polys = gb.polys();
    if polys.iter().all(|p| p.len() == 1) {
        return Ok(if polys.iter().all(|p| p.degree() == Some(1)) {
            PrimeFlag::Verified
        } else {
            PrimeFlag::NotPrime
        });
    }
    if polys.iter().all(|p| p.degree() == Some(1) && p.is_homogeneous()) {
        return Ok(PrimeFlag::Verified);
    }
    Ok(PrimeFlag::Unknown)
}

/// Minimal sets of variables meeting every support mask.
pub(crate) fn minimal_vertex_covers(edges: &[u64]) -> Vec<u64> {
    fn rec(edges: &[u64], chosen: u64, out: &mut Vec<u64>) {
        match edges.iter().find(|&&e| e & chosen == 0) {
            None => out.push(chosen),
            Some(&e) => {
                for v in 0..64 {
                    if e >> v & 1 == 1 {
                        rec(edges, chosen | 1 << v, out);
                    }
                }
            }
        }
    }
    let mut all = Vec::new();
    rec(edges, 0, &mut all);
    all.sort_by_key(|m| (m.count_ones(), *m));
    all.dedup();
    let mut minimal: Vec<u64> = Vec::new();
    for m in all {
        if !minimal.iter().any(|&k| k & m == k) {
            minimal.push(m);
        }
    }
    minimal.sort();
    minimal
}

/// An ideal of `R`, with generators reduced modulo `I`.
#[derive(Clone, Debug)]
pub struct RIdeal {
    ring: QuotientRing,
    gens: Vec<Poly>,
    prime: PrimeFlag,
}

impl RIdeal {
    /// Primality is decided when the ideal is monomial or linear.
    pub fn new(ring: &QuotientRing, gens: Vec<Poly>) -> Self {
        let mut id = Self::with_flag(ring, gens, PrimeFlag::Unknown);
        id.prime = decide_prime(&id.ambient(), ring.caps()).unwrap_or(PrimeFlag::Unknown);
        id
    }

    /// Marks a non-decidable ideal as prime on the caller's authority.
    pub fn asserted_prime(ring: &QuotientRing, gens: Vec<Poly>) -> Self {
        let mut id = Self::new(ring, gens);
        if id.prime == PrimeFlag::Unknown {
            id.prime = PrimeFlag::Asserted;
        }
        id
    }

    pub(crate) fn with_flag(ring: &QuotientRing, gens: Vec<Poly>, prime: PrimeFlag) -> Self {
        let gens = gens.iter().map(|g| ring.reduce(g)).filter(|g| !g.is_zero()).collect();
        RIdeal { ring: ring.clone(), gens, prime }
    }

    pub fn parse(ring: &QuotientRing, gens: &[&str]) -> Result<Self> {
        Ok(Self::new(ring, gens.iter().map(|g| ring.parse(g)).collect::<Result<Vec<_>>>()?))
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn prime_flag(&self) -> PrimeFlag {
        self.prime
    }

    /// The preimage `J + I` in the ambient ring.
    pub fn ambient(&self) -> Ideal {
        self.ring.ambient(&self.gens)
    }

    pub fn is_proper(&self) -> Result<bool> {
        Ok(!self.ambient().is_unit(self.ring.caps())?)
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        self.ambient().contains(f, self.ring.caps())
    }

    pub fn is_subset(&self, other: &RIdeal) -> Result<bool> {
        self.ambient().is_subset(&other.ambient(), self.ring.caps())
    }

    pub fn sum(&self, other: &RIdeal) -> RIdeal {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        RIdeal::new(&self.ring, g)
    }
}

impl fmt::Display for RIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "(0)");
        }
        let g: Vec<String> = self.gens.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", g.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(ps: &[RIdeal]) -> Vec<String> {
        ps.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn hypersurface_flag_and_dimension() {
        let ra = make_ring(Field::Rationals, &["x", "y", "z", "w"], &["x*y"]).unwrap();
        assert!(ra.is_hypersurface());
        assert_eq!(ra.dim(), 3);
        let rc = make_ring(Field::Rationals, &["x", "y", "u", "v"], &["x*u", "x*v", "y*u", "y*v"]).unwrap();
        assert!(!rc.is_hypersurface());
        assert_eq!(rc.dim(), 2);
        let k = make_ring(Field::Rationals, &["x"], &["x"]).unwrap();
        assert_eq!(k.dim(), 0);
    }

    #[test]
    fn constructor_rejects_bad_ideals() {
        assert!(matches!(
            make_ring(Field::Rationals, &["x", "y"], &["x + y^2"]),
            Err(Error::Inhomogeneous(_))
        ));
        assert_eq!(make_ring(Field::Rationals, &["x"], &["1"]).unwrap_err(), Error::UnitIdeal);
    }

    #[test]
    fn monomial_minimal_primes() {
        let ra = make_ring(Field::Rationals, &["x", "y", "z", "w"], &["x*y"]).unwrap();
        assert_eq!(names(&ra.minimal_primes().unwrap()), ["(x)", "(y)"]);
        let rc = make_ring(Field::Rationals, &["x", "y", "u", "v"], &["x*u", "x*v", "y*u", "y*v"]).unwrap();
        assert_eq!(names(&rc.minimal_primes().unwrap()), ["(x, y)", "(u, v)"]);
        let k = make_ring(Field::Rationals, &["x"], &["x"]).unwrap();
        let p = k.minimal_primes().unwrap();
        assert_eq!(p.len(), 1);
        assert!(p[0].gens().is_empty());
        assert!(p[0].contains(&k.var(0)).unwrap());
    }

    #[test]
    fn heights() {
        let ra = make_ring(Field::Rationals, &["x", "y", "z", "w"], &["x*y"]).unwrap();
        assert_eq!(ra.height(&RIdeal::parse(&ra, &["x", "y"]).unwrap()).unwrap(), 1);
        assert_eq!(ra.height(&RIdeal::parse(&ra, &["x"]).unwrap()).unwrap(), 0);
        let rc = make_ring(Field::Rationals, &["x", "y", "u", "v"], &["x*u", "x*v", "y*u", "y*v"]).unwrap();
        assert_eq!(rc.height(&RIdeal::parse(&rc, &["x", "y", "u", "v"]).unwrap()).unwrap(), 2);
        assert_eq!(rc.height(&RIdeal::parse(&rc, &["1"]).unwrap()).unwrap_err(), Error::UnitIdeal);
    }

    #[test]
    fn non_equidimensional_ring_is_refused() {
        let r = make_ring(Field::Rationals, &["x", "y", "z"], &["x*y", "x*z"]).unwrap();
        let e = r.height(&RIdeal::parse(&r, &["x"]).unwrap()).unwrap_err();
        assert!(matches!(e, Error::NotEquidimensional(_)));
    }

    #[test]
    fn factor_hints_give_primes() {
        let poly = PolyRing::new(Field::Rationals, &["x", "y"], MonomialOrder::Grevlex).unwrap();
        let f = parse_poly("x^2 - y^2", &poly).unwrap();
        let hints = PrimeHints {
            factors: Some(vec![parse_poly("x - y", &poly).unwrap(), parse_poly("x + y", &poly).unwrap()]),
            ..Default::default()
        };
        let r = QuotientRing::new(&poly, vec![f.clone()], Caps::default(), hints).unwrap();
        let p = r.minimal_primes().unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.iter().all(|q| q.prime_flag() == PrimeFlag::Verified));
        let bad = PrimeHints { factors: Some(vec![parse_poly("x - y", &poly).unwrap()]), ..Default::default() };
        let r = QuotientRing::new(&poly, vec![f], Caps::default(), bad).unwrap();
        assert!(matches!(r.minimal_primes(), Err(Error::CandidateVerification(_))));
    }

    #[test]
    fn candidate_verification() {
        let poly = PolyRing::new(Field::Rationals, &["x", "y", "z"], MonomialOrder::Grevlex).unwrap();
        let p = |s: &str| parse_poly(s, &poly).unwrap();
        let gens = vec![p("x^2 - y^2"), p("x*z - y*z")];
        let good = PrimeHints { candidates: Some(vec![vec![p("x - y")], vec![p("x + y"), p("z")]]), ..Default::default() };
        let r = QuotientRing::new(&poly, gens.clone(), Caps::default(), good).unwrap();
        assert_eq!(r.minimal_primes().unwrap().len(), 2);
        let missing = PrimeHints { candidates: Some(vec![vec![p("x - y")]]), ..Default::default() };
        let r = QuotientRing::new(&poly, gens.clone(), Caps::default(), missing).unwrap();
        assert!(matches!(r.minimal_primes(), Err(Error::CandidateVerification(_))));
        let r = QuotientRing::new(&poly, gens, Caps::default(), PrimeHints::default()).unwrap();
        assert!(matches!(r.minimal_primes(), Err(Error::UnsupportedIdeal(_))));
    }

    #[test]
    fn vertex_covers() {
        assert_eq!(minimal_vertex_covers(&[0b11]), vec![0b01, 0b10]);
        assert_eq!(minimal_vertex_covers(&[]), vec![0]);
        assert_eq!(minimal_vertex_covers(&[0b011, 0b110]), vec![0b010, 0b101]);
    }
}
