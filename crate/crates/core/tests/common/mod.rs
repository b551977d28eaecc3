//! Test-side oracles built on plain linear algebra over ℚ, independent of
//! the Gröbner engine.
#![allow(dead_code)]

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rigidity_core::{Coeff, Monomial, Poly, PolyRing};

pub fn exps_of_degree(n: usize, d: u32) -> Vec<Vec<u16>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in exps_of_degree(n - 1, d - first) {
            rest.insert(0, first as u16);
            out.push(rest);
        }
    }
    out
}

pub fn rational(c: &Coeff) -> BigRational {
    match c {
        Coeff::Q(r) => r.clone(),
        Coeff::P(v, _) => BigRational::from_integer((*v).into()),
    }
}

/// Row echelon span with unit pivots.
pub struct Span {
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl Span {
    pub fn new() -> Self {
        Span { rows: Vec::new() }
    }

    fn reduce(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        for (p, r) in &self.rows {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (x, y) in v.iter_mut().zip(r) {
                    *x -= &c * y;
                }
            }
        }
        v
    }

    pub fn insert(&mut self, v: Vec<BigRational>) -> bool {
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = BigRational::one() / &v[p];
        self.rows.push((p, v.into_iter().map(|x| x * &inv).collect()));
        true
    }

    pub fn contains(&self, v: Vec<BigRational>) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Coordinates of the degree-`d` part of `f` in the monomial basis `basis`.
pub fn coords(f: &Poly, basis: &[Vec<u16>]) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); basis.len()];
    for (m, c) in f.terms() {
        if let Some(i) = basis.iter().position(|b| b.as_slice() == m.exps()) {
            v[i] = rational(c);
        }
    }
    v
}

/// Span of the degree-`d` component of the ideal generated by homogeneous
/// `gens`, as multiples `m·g` with `m` a monomial.
pub fn ideal_piece(ring: &Arc<PolyRing>, gens: &[Poly], d: u32) -> (Vec<Vec<u16>>, Span) {
    let n = ring.nvars();
    let basis = exps_of_degree(n, d);
    let mut span = Span::new();
    for g in gens {
        let Some(dg) = g.degree() else { continue };
        if dg > d {
            continue;
        }
        for e in exps_of_degree(n, d - dg) {
            let m = Monomial::new(e);
            span.insert(coords(&g.mul_term(&m, &ring.field.one()), &basis));
        }
    }
    (basis, span)
}

/// Membership of a homogeneous `f` in the ideal of homogeneous `gens`.
pub fn member(ring: &Arc<PolyRing>, gens: &[Poly], f: &Poly) -> bool {
    match f.degree() {
        None => true,
        Some(d) => {
            let (basis, span) = ideal_piece(ring, gens, d);
            span.contains(coords(f, &basis))
        }
    }
}

/// `dim_k (S/J)_d` for homogeneous `J`.
pub fn hilbert_function(ring: &Arc<PolyRing>, gens: &[Poly], d: u32) -> i64 {
    let (basis, span) = ideal_piece(ring, gens, d);
    basis.len() as i64 - span.rank() as i64
}

/// Remainder of multivariate division by `divisors`, written directly
/// against the ring order.
pub fn divide(f: &Poly, divisors: &[Poly]) -> Poly {
    let ring = f.ring().clone();
    let mut p = f.clone();
    let mut r = Poly::zero(&ring);
    while let Some((m, c)) = p.lead().cloned() {
        let hit = divisors.iter().find_map(|g| {
            let (gm, gc) = g.lead()?;
            let q: Option<Vec<u16>> = m.exps().iter().zip(gm.exps()).map(|(a, b)| a.checked_sub(*b)).collect();
            q.map(|q| (g, Monomial::new(q), c.div(gc).unwrap()))
        });
        match hit {
            Some((g, q, k)) => p = p.sub(&g.mul_term(&q, &k)),
            None => {
                let t = Poly::monomial(&ring, m, c);
                r = r.add(&t);
                p = p.sub(&t);
            }
        }
    }
    r
}

pub fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let (fm, fc) = f.lead().unwrap();
    let (gm, gc) = g.lead().unwrap();
    let lcm: Vec<u16> = fm.exps().iter().zip(gm.exps()).map(|(a, b)| *a.max(b)).collect();
    let uf: Vec<u16> = lcm.iter().zip(fm.exps()).map(|(a, b)| a - b).collect();
    let ug: Vec<u16> = lcm.iter().zip(gm.exps()).map(|(a, b)| a - b).collect();
    f.mul_term(&Monomial::new(uf), &fc.inv().unwrap()).sub(&g.mul_term(&Monomial::new(ug), &gc.inv().unwrap()))
}

/// Random homogeneous polynomial of degree `d` in `n` variables with small
/// integer coefficients; may be zero.
pub fn homogeneous(n: usize, d: u32) -> impl Strategy<Value = Vec<(Vec<u16>, i64)>> {
    let basis = exps_of_degree(n, d);
    let len = basis.len();
    prop::collection::vec((0..len, -3i64..=3), 1..=4).prop_map(move |ts| ts.into_iter().map(|(i, c)| (basis[i].clone(), c)).collect())
}

pub fn build(ring: &Arc<PolyRing>, terms: &[(Vec<u16>, i64)]) -> Poly {
    Poly::from_terms(ring, terms.iter().map(|(e, c)| (Monomial::new(e.iter().copied()), ring.field.from_i64(*c))).collect())
}
