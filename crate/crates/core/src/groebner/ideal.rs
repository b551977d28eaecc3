use std::sync::{Arc, OnceLock};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Poly, PolyRing};

use super::{relative_syzygies, FreeVector, GroebnerBasis};

/// An ideal of a polynomial ring with a lazily computed Groebner basis.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Poly>,
    gb: Arc<OnceLock<GroebnerBasis>>,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Poly>) -> Result<Self> {
        for g in &gens {
            if **g.ring() != **ring {
                return Err(Error::SignatureMismatch);
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), gens, gb: Arc::new(OnceLock::new()) })
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Ideal { ring: ring.clone(), gens: Vec::new(), gb: Arc::new(OnceLock::new()) }
    }

    /// The ideal generated by the variables with the given indices.
    pub fn of_vars(ring: &Arc<PolyRing>, vars: &[usize]) -> Self {
        Ideal::new(ring, vars.iter().map(|&i| Poly::var(ring, i)).collect()).unwrap()
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Poly::is_homogeneous)
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.len() == 1)
    }

    pub fn groebner(&self, caps: &Caps) -> Result<&GroebnerBasis> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = if self.gens.is_empty() {
            GroebnerBasis::compute_graded(&self.ring, 1, &[], &[0], caps)?
        } else {
            let v: Vec<FreeVector> = self.gens.iter().map(FreeVector::from_poly).collect();
            GroebnerBasis::compute_graded(&self.ring, 1, &v, &[0], caps)?
        };
        Ok(self.gb.get_or_init(|| gb))
    }

    pub fn contains(&self, f: &Poly, caps: &Caps) -> Result<bool> {
        self.groebner(caps)?.contains_poly(f)
    }

    pub fn normal_form(&self, f: &Poly, caps: &Caps) -> Result<Poly> {
        self.groebner(caps)?.normal_form_poly(f)
    }

    pub fn is_unit(&self, caps: &Caps) -> Result<bool> {
        Ok(self.groebner(caps)?.is_whole())
    }

    /// `self ⊆ other`, by normal forms of generators.
    pub fn is_subset(&self, other: &Ideal, caps: &Caps) -> Result<bool> {
        for g in &self.gens {
            if !other.contains(g, caps)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, g).unwrap()
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.mul(b));
            }
        }
        Ideal::new(&self.ring, g).unwrap()
    }

    /// `(I : f) = { g : g f ∈ I }`, from the syzygies of `(gens of I, f)`.
    pub fn quotient(&self, f: &Poly, caps: &Caps) -> Result<Ideal> {
        if f.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if self.gens.is_empty() {
            return Ok(Ideal::zero(&self.ring));
        }
        let col = FreeVector::from_poly(f);
        let extra: Vec<FreeVector> = self.gens.iter().map(FreeVector::from_poly).collect();
        let homogeneous = f.is_homogeneous() && self.is_homogeneous();
        let deg = if homogeneous { f.degree().unwrap() as i64 } else { 0 };
        let syz = relative_syzygies(&self.ring, &[0], &[col], &[deg], &extra, caps)?;
        let mut gens: Vec<Poly> = syz.into_iter().map(|v| v.coord(0)).collect();
        // the relative syzygies of a single column form an ideal basis
        gens.retain(|g| !g.is_zero());
        Ideal::new(&self.ring, gens)
    }

    /// `(I : J) = ∩ (I : g)` over generators of `J`.
    pub fn quotient_ideal(&self, j: &Ideal, caps: &Caps) -> Result<Ideal> {
        let mut acc: Option<Ideal> = None;
        for g in &j.gens {
            let q = self.quotient(g, caps)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q, caps)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::new(&self.ring, vec![Poly::one(&self.ring)]).unwrap()))
    }

    /// `I ∩ J` as the relative syzygies `{a : a·1 ∈ I + ...}` trick:
    /// `(I ∩ J) = { a : a ∈ I, a ∈ J }` computed from syzygies of `[1; 1]`
    /// against `I e_1 + J e_2`.
    pub fn intersect(&self, other: &Ideal, caps: &Caps) -> Result<Ideal> {
        if self.gens.is_empty() || other.gens.is_empty() {
            return Ok(Ideal::zero(&self.ring));
        }
        let one = Poly::one(&self.ring);
        let col = FreeVector::from_coords(&self.ring, &[one.clone(), one])?;
        let mut extra = Vec::new();
        for g in &self.gens {
            extra.push(FreeVector::unit(g, 0, 2));
        }
        for g in &other.gens {
            extra.push(FreeVector::unit(g, 1, 2));
        }
        let syz = relative_syzygies(&self.ring, &[0, 0], &[col], &[0], &extra, caps)?;
        Ideal::new(&self.ring, syz.into_iter().map(|v| v.coord(0)).collect())
    }

    /// Leading monomials of the reduced Groebner basis.
    pub fn leading_monomials(&self, caps: &Caps) -> Result<Vec<Monomial>> {
        Ok(self.groebner(caps)?.elements().iter().map(|e| e.lead().unwrap().mono.clone()).collect())
    }

    /// Dimension of `S/I`: the largest set of variables containing the
    /// support of no leading monomial.
    pub fn krull_dimension(&self, caps: &Caps) -> Result<usize> {
        if self.is_unit(caps)? {
            return Err(Error::UnitIdeal);
        }
        let lms = self.leading_monomials(caps)?;
        let n = self.ring.nvars();
        let masks: Vec<u64> = lms
            .iter()
            .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
            .collect();
        Ok(max_independent_set(n, &masks))
    }

    /// `f ∈ √I`, decided by `1 ∈ I + (1 - t f)` in `S[t]`.
    pub fn radical_contains(&self, f: &Poly, caps: &Caps) -> Result<bool> {
        if **f.ring() != *self.ring {
            return Err(Error::SignatureMismatch);
        }
        if f.is_zero() {
            return Ok(true);
        }
        let mut vars = vec!["__t".to_string()];
        vars.extend(self.ring.vars.iter().cloned());
        let ext = PolyRing::from_names(self.ring.field, vars, MonomialOrder::Grevlex)?;
        let t = Poly::var(&ext, 0);
        let mut gens: Vec<Poly> = self.gens.iter().map(|g| g.extend_vars(&ext, 0)).collect();
        gens.push(Poly::one(&ext).sub(&t.mul(&f.extend_vars(&ext, 0))));
        Ideal::new(&ext, gens)?.is_unit(caps)
    }

    /// Applies a permutation of variables to the generators.
    pub fn permute_vars(&self, perm: &[usize]) -> Ideal {
        Ideal::new(&self.ring, self.gens.iter().map(|g| g.permute_vars(perm)).collect()).unwrap()
    }
}

/// Size of a largest variable subset hitting none of the supports.
pub(crate) fn max_independent_set(n: usize, masks: &[u64]) -> usize {
    fn rec(i: usize, n: usize, chosen: u64, size: usize, masks: &[u64], best: &mut usize) {
        if size + (n - i) <= *best {
            return;
        }
        if i == n {
            *best = size;
            return;
        }
        let with = chosen | (1 << i);
        if !masks.iter().any(|&m| m & with == m) {
            rec(i + 1, n, with, size + 1, masks, best);
        }
        rec(i + 1, n, chosen, size, masks, best);
    }
    let mut best = 0;
    if masks.contains(&0) {
        return 0;
    }
    rec(0, n, 0, 0, masks, &mut best);
    best
}
