//! Hilbert series of graded modules, written over `(1 - t)^n`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::FreeResolution;
use crate::module::PresentedModule;
use crate::ring::{PrimeHints, QuotientRing};

/// `numerator(t) / (1 - t)^nvars` with a Laurent polynomial numerator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    numerator: BTreeMap<i64, i64>,
    nvars: usize,
}

impl HilbertSeries {
    pub fn zero(nvars: usize) -> Self {
        HilbertSeries { numerator: BTreeMap::new(), nvars }
    }

    pub fn from_numerator(coeffs: impl IntoIterator<Item = (i64, i64)>, nvars: usize) -> Self {
        let mut h = Self::zero(nvars);
        for (d, c) in coeffs {
            h.add_term(d, c);
        }
        h
    }

    fn add_term(&mut self, d: i64, c: i64) {
        let e = self.numerator.entry(d).or_insert(0);
        *e += c;
        if *e == 0 {
            self.numerator.remove(&d);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Nonzero numerator coefficients by exponent.
    pub fn numerator(&self) -> &BTreeMap<i64, i64> {
        &self.numerator
    }

    pub fn add(&self, other: &HilbertSeries) -> HilbertSeries {
        let mut h = self.clone();
        for (&d, &c) in &other.numerator {
            h.add_term(d, c);
        }
        h
    }

    pub fn sub(&self, other: &HilbertSeries) -> HilbertSeries {
        self.add(&other.scaled(-1))
    }

    pub fn scaled(&self, k: i64) -> HilbertSeries {
        HilbertSeries::from_numerator(self.numerator.iter().map(|(&d, &c)| (d, c * k)), self.nvars)
    }

    /// Multiplication by `t^s`.
    pub fn shifted(&self, s: i64) -> HilbertSeries {
        HilbertSeries::from_numerator(self.numerator.iter().map(|(&d, &c)| (d + s, c)), self.nvars)
    }

    /// Dimension of the degree-`d` component.
    pub fn coefficient(&self, d: i64) -> i64 {
        let n = self.nvars as i64;
        if n == 0 {
            return self.numerator.get(&d).copied().unwrap_or(0);
        }
        self.numerator
            .iter()
            .filter(|(&e, _)| e <= d)
            .map(|(&e, &c)| c * binomial(d - e + n - 1, n - 1))
            .sum()
    }

    /// Whether `self` is a `Z[t, 1/t]`-multiple of `other` (same denominator).
    pub fn is_multiple_of(&self, other: &HilbertSeries) -> bool {
        if other.is_zero() {
            return self.is_zero();
        }
        let mut rem = self.numerator.clone();
        let (&lo, &lc) = other.numerator.iter().next().unwrap();
        let hi = *other.numerator.keys().next_back().unwrap();
        let top = self.numerator.keys().next_back().copied().unwrap_or(lo);
        while let Some((&d, &c)) = rem.iter().next() {
            if d - lo > top - hi || c % lc != 0 {
                return false;
            }
            let q = c / lc;
            for (&e, &oc) in &other.numerator {
                let k = d - lo + e;
                let v = rem.entry(k).or_insert(0);
                *v -= q * oc;
                if *v == 0 {
                    rem.remove(&k);
                }
            }
            if rem.keys().next().is_some_and(|&k| k < d) {
                return false;
            }
        }
        true
    }
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, (&d, &c)) in self.numerator.iter().enumerate() {
            let mag = c.unsigned_abs();
            let sign = if c < 0 { "-" } else if i > 0 { "+" } else { "" };
            let body = match (d, mag) {
                (0, m) => m.to_string(),
                (1, 1) => "t".into(),
                (1, m) => format!("{m}*t"),
                (e, 1) => format!("t^{e}"),
                (e, m) => format!("{m}*t^{e}"),
            };
            parts.push(if i == 0 { format!("{sign}{body}") } else { format!("{sign} {body}") });
        }
        write!(f, "({})/(1-t)^{}", parts.join(" "), self.nvars)
    }
}

/// Hilbert series from a minimal free resolution over the ambient
/// polynomial ring, which is finite by the syzygy theorem.
pub fn hilbert_series(m: &PresentedModule) -> Result<HilbertSeries> {
    let ring = m.ring();
    let n = ring.nvars();
    if m.ngens() == 0 {
        return Ok(HilbertSeries::zero(n));
    }
    let ambient = QuotientRing::new(ring.poly_ring(), Vec::new(), ring.caps().clone(), PrimeHints::default())?;
    let cols = m.relation_vectors();
    let col_degs = cols.iter().map(|c| c.degree(m.gen_degs()).unwrap()).collect();
    let pres = crate::matrix::Matrix::new(ring.poly_ring(), m.gen_degs().to_vec(), cols, col_degs)?;
    let over_s = PresentedModule::coker(&ambient, pres)?;
    let res = FreeResolution::compute(&over_s, n + 1)?;
    if !res.is_complete() {
        return Err(Error::Internal("resolution over the polynomial ring did not terminate".into()));
    }
    let mut h = HilbertSeries::zero(n);
    for i in 0..=res.length() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for &d in res.shifts(i) {
            h.add_term(d, sign);
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficients_of_polynomial_ring() {
        let h = HilbertSeries::from_numerator([(0, 1)], 3);
        assert_eq!((0..4).map(|d| h.coefficient(d)).collect::<Vec<_>>(), [1, 3, 6, 10]);
        assert_eq!(h.coefficient(-1), 0);
    }

    #[test]
    fn divisibility() {
        let r = HilbertSeries::from_numerator([(0, 1), (2, -1)], 4);
        let two = HilbertSeries::from_numerator([(0, 1), (1, 1), (2, -1), (3, -1)], 4);
        assert!(two.is_multiple_of(&r));
        let not = HilbertSeries::from_numerator([(0, 1), (1, 1)], 4);
        assert!(!not.is_multiple_of(&r));
        assert_eq!(r.to_string(), "(1 - t^2)/(1-t)^4");
    }
}
