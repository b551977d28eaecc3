//! Polynomial rings over exact fields and their elements.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Coeff, Field};
use crate::monomial::{Monomial, MonomialOrder};

/// Ring signature: coefficient field, variable names and monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    pub field: Field,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
}

impl PolyRing {
    pub fn new(field: Field, vars: &[&str], order: MonomialOrder) -> Result<Arc<Self>> {
        Self::from_names(field, vars.iter().map(|s| s.to_string()).collect(), order)
    }

    pub fn from_names(field: Field, vars: Vec<String>, order: MonomialOrder) -> Result<Arc<Self>> {
        for (i, v) in vars.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::Input(format!("invalid variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Input(format!("duplicate variable `{v}`")));
            }
        }
        if vars.len() > 64 {
            return Err(Error::Input("at most 64 variables are supported".into()));
        }
        Ok(Arc::new(PolyRing { field, vars, order }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables and field under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<Self> {
        Arc::new(PolyRing { field: self.field, vars: self.vars.clone(), order })
    }
}

/// A polynomial in canonical form: terms strictly descending in the ring's
/// order, no zero coefficients.
#[derive(Clone, Debug)]
pub struct Poly {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, Coeff)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.terms == other.terms
    }
}
impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl Poly {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Poly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Coeff) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn from_i64(ring: &Arc<PolyRing>, v: i64) -> Self {
        Self::constant(ring, ring.field.from_i64(v))
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i), ring.field.one())
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        Poly { ring: ring.clone(), terms: vec![(m, c)] }
    }

    /// Canonicalizes an arbitrary term list.
    pub fn from_terms(ring: &Arc<PolyRing>, mut terms: Vec<(Monomial, Coeff)>) -> Self {
        let order = ring.order;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = last.1.add(&c),
                _ => {
                    if out.last().is_some_and(|l| l.1.is_zero()) {
                        out.pop();
                    }
                    out.push((m, c));
                }
            }
        }
        if out.last().is_some_and(|l| l.1.is_zero()) {
            out.pop();
        }
        Poly { ring: ring.clone(), terms: out }
    }

    /// Trusted constructor for term lists already in canonical form.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing>, terms: Vec<(Monomial, Coeff)>) -> Self {
        Poly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    pub fn lead(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn constant_term(&self) -> Coeff {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => self.ring.field.zero(),
        }
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::SignatureMismatch)
        }
    }

    pub fn arith(&self, other: &Poly, op: ArithOp) -> Result<Poly> {
        self.check(other)?;
        Ok(match op {
            ArithOp::Add => self.add(other),
            ArithOp::Sub => self.sub(other),
            ArithOp::Mul => self.mul(other),
        })
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.add_scaled(other, &self.ring.field.one(), None)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add_scaled(other, &self.ring.field.one().neg(), None)
    }

    /// `self + c * m * other` by a single merge pass.
    pub fn add_scaled(&self, other: &Poly, c: &Coeff, m: Option<&Monomial>) -> Poly {
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(bm, bc)| {
            (match m {
                Some(m) => bm.mul(m),
                None => bm.clone(),
            }, bc.mul(c))
        }).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let x = a.next().unwrap();
                        let y = b.next().unwrap();
                        let s = x.1.add(&y.1);
                        if !s.is_zero() {
                            out.push((x.0.clone(), s));
                        }
                    }
                },
            }
        }
        out.retain(|t| !t.1.is_zero());
        Poly { ring: self.ring.clone(), terms: out }
    }

    pub fn neg(&self) -> Poly {
        self.scale(&self.ring.field.one().neg())
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d.mul(c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        // multiplication by a monomial preserves the order
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(n, d)| (n.mul(m), d.mul(c))).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Poly::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = acc.add_scaled(big, c, Some(m));
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Re-expresses the polynomial in another ring with the same variables
    /// (for example under a different order).
    pub fn to_ring(&self, ring: &Arc<PolyRing>) -> Result<Poly> {
        if ring.vars != self.ring.vars || ring.field != self.ring.field {
            return Err(Error::SignatureMismatch);
        }
        Ok(Poly::from_terms(ring, self.terms.clone()))
    }

    /// Embeds into a ring with one extra variable inserted at index `at`.
    pub fn extend_vars(&self, ring: &Arc<PolyRing>, at: usize) -> Poly {
        Poly::from_terms(ring, self.terms.iter().map(|(m, c)| (m.extended(at), c.clone())).collect())
    }

    /// Applies a permutation of variables: variable `i` becomes `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Poly {
        let n = self.ring.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u16; n];
                for (i, &x) in m.exps().iter().enumerate() {
                    e[perm[i]] = x;
                }
                (Monomial::new(e), c.clone())
            })
            .collect();
        Poly::from_terms(&self.ring, terms)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.ring.vars[i].clone()
                    } else {
                        format!("{}^{}", self.ring.vars[i], e)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn ring(field: Field, vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(field, vars, MonomialOrder::Grevlex).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = ring(Field::Rationals, &["x", "y"]);
        let a = parse_poly("x+y", &r).unwrap();
        let b = parse_poly("x-y", &r).unwrap();
        assert_eq!(a.arith(&b, ArithOp::Mul).unwrap(), parse_poly("x^2-y^2", &r).unwrap());
        assert_eq!(a.arith(&Poly::zero(&r), ArithOp::Add).unwrap(), a);
    }

    #[test]
    fn frobenius_in_char_three() {
        let r = ring(Field::prime(3).unwrap(), &["x"]);
        let a = parse_poly("x+1", &r).unwrap();
        assert_eq!(a.pow(3), parse_poly("x^3+1", &r).unwrap());
    }

    #[test]
    fn signature_mismatch_is_reported() {
        let r1 = ring(Field::Rationals, &["x"]);
        let r2 = ring(Field::Rationals, &["y"]);
        let e = Poly::var(&r1, 0).arith(&Poly::var(&r2, 0), ArithOp::Add);
        assert_eq!(e, Err(Error::SignatureMismatch));
    }

    #[test]
    fn zero_has_no_degree() {
        let r = ring(Field::Rationals, &["x"]);
        assert_eq!(Poly::zero(&r).degree(), None);
        assert_eq!(Poly::one(&r).degree(), Some(0));
    }
}
