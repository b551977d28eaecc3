use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Poly, PolyRing};

/// One term `c * m * e_pos` of a free-module element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub pos: usize,
    pub mono: Monomial,
    pub coeff: Coeff,
}

/// Position-over-term: lower positions rank higher, then the monomial order.
pub(crate) fn term_cmp(order: MonomialOrder, a: &Term, b: &Term) -> Ordering {
    b.pos.cmp(&a.pos).then_with(|| order.cmp(&a.mono, &b.mono))
}

/// `a + c * m * b` for canonical term lists.
pub(crate) fn merge_scaled(
    order: MonomialOrder,
    a: &[Term],
    b: &[Term],
    c: &Coeff,
    m: Option<&Monomial>,
) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bi = b.iter().map(|t| Term {
        pos: t.pos,
        mono: match m {
            Some(m) => t.mono.mul(m),
            None => t.mono.clone(),
        },
        coeff: t.coeff.mul(c),
    });
    let mut pending = bi.next();
    loop {
        match (a.get(i), pending.take()) {
            (None, None) => break,
            (Some(x), None) => {
                out.push(x.clone());
                i += 1;
            }
            (None, Some(y)) => {
                out.push(y);
                pending = bi.next();
            }
            (Some(x), Some(y)) => match term_cmp(order, x, &y) {
                Ordering::Greater => {
                    out.push(x.clone());
                    i += 1;
                    pending = Some(y);
                }
                Ordering::Less => {
                    out.push(y);
                    pending = bi.next();
                }
                Ordering::Equal => {
                    let s = x.coeff.add(&y.coeff);
                    if !s.is_zero() {
                        out.push(Term { pos: x.pos, mono: y.mono, coeff: s });
                    }
                    i += 1;
                    pending = bi.next();
                }
            },
        }
    }
    out
}

/// An element of the free module `S^rank` over a polynomial ring `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeVector {
    ring: Arc<PolyRing>,
    rank: usize,
    terms: Vec<Term>,
}

impl FreeVector {
    pub fn zero(ring: &Arc<PolyRing>, rank: usize) -> Self {
        FreeVector { ring: ring.clone(), rank, terms: Vec::new() }
    }

    pub fn from_coords(ring: &Arc<PolyRing>, coords: &[Poly]) -> Result<Self> {
        let mut terms = Vec::new();
        for (pos, p) in coords.iter().enumerate() {
            if **p.ring() != **ring {
                return Err(Error::SignatureMismatch);
            }
            terms.extend(p.terms().iter().map(|(m, c)| Term { pos, mono: m.clone(), coeff: c.clone() }));
        }
        Ok(FreeVector { ring: ring.clone(), rank: coords.len(), terms })
    }

    pub fn from_poly(p: &Poly) -> Self {
        Self::from_coords(p.ring(), std::slice::from_ref(p)).unwrap()
    }

    /// `p * e_pos`.
    pub fn unit(p: &Poly, pos: usize, rank: usize) -> Self {
        let terms = p
            .terms()
            .iter()
            .map(|(m, c)| Term { pos, mono: m.clone(), coeff: c.clone() })
            .collect();
        FreeVector { ring: p.ring().clone(), rank, terms }
    }

    pub(crate) fn from_terms(ring: &Arc<PolyRing>, rank: usize, terms: Vec<Term>) -> Self {
        FreeVector { ring: ring.clone(), rank, terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn coord(&self, i: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.pos == i)
            .map(|t| (t.mono.clone(), t.coeff.clone()))
            .collect();
        Poly::from_sorted(&self.ring, terms)
    }

    pub fn coords(&self) -> Vec<Poly> {
        let mut buckets: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); self.rank];
        for t in &self.terms {
            buckets[t.pos].push((t.mono.clone(), t.coeff.clone()));
        }
        buckets.into_iter().map(|b| Poly::from_sorted(&self.ring, b)).collect()
    }

    /// Degree under the given component degrees: max of `deg(m) + comp[pos]`.
    pub fn degree(&self, comp: &[i64]) -> Option<i64> {
        self.terms.iter().map(|t| t.mono.degree() as i64 + comp[t.pos]).max()
    }

    pub fn is_homogeneous(&self, comp: &[i64]) -> bool {
        match self.terms.first() {
            None => true,
            Some(t0) => {
                let d = t0.mono.degree() as i64 + comp[t0.pos];
                self.terms.iter().all(|t| t.mono.degree() as i64 + comp[t.pos] == d)
            }
        }
    }

    fn check(&self, other: &FreeVector) -> Result<()> {
        if *self.ring != *other.ring {
            return Err(Error::SignatureMismatch);
        }
        if self.rank != other.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: other.rank });
        }
        Ok(())
    }

    pub fn add(&self, other: &FreeVector) -> FreeVector {
        self.add_scaled(other, &self.ring.field.one(), None)
    }

    pub fn sub(&self, other: &FreeVector) -> FreeVector {
        self.add_scaled(other, &self.ring.field.one().neg(), None)
    }

    pub fn checked_add(&self, other: &FreeVector) -> Result<FreeVector> {
        self.check(other)?;
        Ok(self.add(other))
    }

    pub fn add_scaled(&self, other: &FreeVector, c: &Coeff, m: Option<&Monomial>) -> FreeVector {
        debug_assert_eq!(self.rank, other.rank);
        let terms = merge_scaled(self.ring.order, &self.terms, &other.terms, c, m);
        FreeVector { ring: self.ring.clone(), rank: self.rank, terms }
    }

    pub fn scale(&self, c: &Coeff) -> FreeVector {
        if c.is_zero() {
            return FreeVector::zero(&self.ring, self.rank);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term { pos: t.pos, mono: t.mono.clone(), coeff: t.coeff.mul(c) })
            .collect();
        FreeVector { ring: self.ring.clone(), rank: self.rank, terms }
    }

    pub fn mul_poly(&self, p: &Poly) -> FreeVector {
        let mut acc = FreeVector::zero(&self.ring, self.rank);
        for (m, c) in p.terms() {
            acc = acc.add_scaled(self, c, Some(m));
        }
        acc
    }

    pub fn monic(&self) -> FreeVector {
        match self.terms.first() {
            Some(t) if !t.coeff.is_one() => self.scale(&t.coeff.inv().unwrap()),
            _ => self.clone(),
        }
    }

    /// Keeps coordinates `range`, renumbered from zero.
    pub fn project(&self, range: std::ops::Range<usize>) -> FreeVector {
        let terms = self
            .terms
            .iter()
            .filter(|t| range.contains(&t.pos))
            .map(|t| Term { pos: t.pos - range.start, mono: t.mono.clone(), coeff: t.coeff.clone() })
            .collect();
        FreeVector { ring: self.ring.clone(), rank: range.len(), terms }
    }

    /// Places this vector at coordinates `offset..offset+rank` of `S^new_rank`.
    pub fn embed(&self, offset: usize, new_rank: usize) -> FreeVector {
        let terms = self
            .terms
            .iter()
            .map(|t| Term { pos: t.pos + offset, mono: t.mono.clone(), coeff: t.coeff.clone() })
            .collect();
        FreeVector { ring: self.ring.clone(), rank: new_rank, terms }
    }

    /// Concatenation `(self, other)` in `S^(r1 + r2)`.
    pub fn concat(&self, other: &FreeVector) -> FreeVector {
        let n = self.rank + other.rank;
        let mut terms = self.embed(0, n).terms;
        terms.extend(other.embed(self.rank, n).terms);
        FreeVector { ring: self.ring.clone(), rank: n, terms }
    }
}

impl fmt::Display for FreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords().iter().map(|p| p.to_string()).collect();
        write!(f, "({})", c.join(", "))
    }
}
