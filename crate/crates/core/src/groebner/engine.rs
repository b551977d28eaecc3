//! Buchberger's algorithm on term lists, shared by ideals and submodules.
//!
//! Pairs and inputs are consumed in ascending sugar degree. For homogeneous
//! input this means the partial basis is complete up to degree `d` whenever
//! an input of degree `d` is examined, so an input that does not reduce to
//! zero is a minimal generator of the submodule.

use std::collections::{BTreeSet, HashSet};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::monomial::MonomialOrder;

use super::vector::{merge_scaled, Term};

struct Elem {
    terms: Vec<Term>,
    sugar: i64,
}

pub(crate) struct GbOutput {
    /// Reduced basis, monic, sorted by descending leading term.
    pub basis: Vec<Vec<Term>>,
    /// Indices of non-background inputs that were minimal generators.
    pub minimal_inputs: Vec<usize>,
}

pub(crate) struct Engine<'a> {
    pub order: MonomialOrder,
    pub comp_degs: &'a [i64],
    pub caps: &'a Caps,
    /// Only sound for ideals (a single component).
    pub product_criterion: bool,
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl Engine<'_> {
    fn degree(&self, v: &[Term]) -> i64 {
        v.iter().map(|t| t.mono.degree() as i64 + self.comp_degs[t.pos]).max().unwrap_or(i64::MIN)
    }

    fn find_divisor(&self, t: &Term, basis: &[&[Term]]) -> Option<usize> {
        basis.iter().position(|g| {
            let l = &g[0];
            l.pos == t.pos && l.mono.divides(&t.mono)
        })
    }

    /// Full reduction of `v` by `basis`.
    pub fn reduce(&self, v: Vec<Term>, basis: &[&[Term]]) -> Vec<Term> {
        let mut p = v;
        let mut start = 0;
        let mut rem: Vec<Term> = Vec::new();
        while start < p.len() {
            match self.find_divisor(&p[start], basis) {
                Some(gi) => {
                    let g = basis[gi];
                    let t = &p[start];
                    let q = g[0].mono.quotient_of(&t.mono).unwrap();
                    let c = t.coeff.div(&g[0].coeff).unwrap().neg();
                    p = merge_scaled(self.order, &p[start + 1..], &g[1..], &c, Some(&q));
                    start = 0;
                }
                None => {
                    rem.push(p[start].clone());
                    start += 1;
                }
            }
        }
        rem
    }

    fn monic(v: Vec<Term>) -> Vec<Term> {
        match v.first() {
            Some(t) if !t.coeff.is_one() => {
                let inv = t.coeff.inv().unwrap();
                v.into_iter()
                    .map(|t| Term { pos: t.pos, mono: t.mono, coeff: t.coeff.mul(&inv) })
                    .collect()
            }
            _ => v,
        }
    }

    fn s_vector(&self, f: &[Term], g: &[Term]) -> Vec<Term> {
        let lcm = f[0].mono.lcm(&g[0].mono);
        let qf = f[0].mono.quotient_of(&lcm).unwrap();
        let qg = g[0].mono.quotient_of(&lcm).unwrap();
        let cf = f[0].coeff.inv().unwrap();
        let cg = g[0].coeff.inv().unwrap().neg();
        let a = merge_scaled(self.order, &[], &f[1..], &cf, Some(&qf));
        merge_scaled(self.order, &a, &g[1..], &cg, Some(&qg))
    }

    pub fn run(&self, inputs: Vec<Vec<Term>>, background: usize) -> Result<GbOutput> {
        let mut g: Vec<Elem> = Vec::new();
        let mut pairs: BTreeSet<(i64, usize, usize)> = BTreeSet::new();
        let mut pending: HashSet<(usize, usize)> = HashSet::new();
        let mut queue: Vec<(i64, usize)> = inputs
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_empty())
            .map(|(k, v)| (self.degree(v), k))
            .collect();
        queue.sort();
        let mut inputs: Vec<Option<Vec<Term>>> = inputs.into_iter().map(Some).collect();
        let mut next = 0;
        let mut minimal = Vec::new();
        let mut npairs = 0usize;

        loop {
            let pair_deg = pairs.iter().next().map(|p| p.0);
            let input_deg = queue.get(next).map(|q| q.0);
            let take_pair = match (pair_deg, input_deg) {
                (None, None) => break,
                (Some(pd), Some(id)) => pd <= id,
                (Some(_), None) => true,
                (None, Some(_)) => false,
            };
            let (candidate, sugar, input_idx) = if take_pair {
                let (s, j, i) = pairs.pop_first().unwrap();
                pending.remove(&(i, j));
                npairs += 1;
                if npairs > self.caps.max_pairs {
                    return Err(Error::CapExceeded(format!(
                        "more than {} S-pairs",
                        self.caps.max_pairs
                    )));
                }
                if s > self.caps.max_degree as i64 {
                    return Err(Error::CapExceeded(format!(
                        "S-pair degree {s} above {}",
                        self.caps.max_degree
                    )));
                }
                self.caps.check()?;
                let lcm = g[i].terms[0].mono.lcm(&g[j].terms[0].mono);
                let pos = g[i].terms[0].pos;
                let chain = (0..g.len()).any(|k| {
                    k != i
                        && k != j
                        && g[k].terms[0].pos == pos
                        && g[k].terms[0].mono.divides(&lcm)
                        && !pending.contains(&ordered(i, k))
                        && !pending.contains(&ordered(j, k))
                });
                if chain {
                    continue;
                }
                (self.s_vector(&g[i].terms, &g[j].terms), s, None)
            } else {
                let (d, k) = queue[next];
                next += 1;
                (inputs[k].take().unwrap(), d, Some(k))
            };
            let basis: Vec<&[Term]> = g.iter().map(|e| e.terms.as_slice()).collect();
            let h = self.reduce(candidate, &basis);
            if h.is_empty() {
                continue;
            }
            if let Some(k) = input_idx {
                if k >= background {
                    minimal.push(k);
                }
            }
            let h = Self::monic(h);
            let idx = g.len();
            for (i, e) in g.iter().enumerate() {
                if e.terms[0].pos != h[0].pos {
                    continue;
                }
                if self.product_criterion && e.terms[0].mono.gcd_is_one(&h[0].mono) {
                    continue;
                }
                let lcm = e.terms[0].mono.lcm(&h[0].mono);
                let d = lcm.degree() as i64;
                let s = (e.sugar + d - e.terms[0].mono.degree() as i64)
                    .max(sugar + d - h[0].mono.degree() as i64);
                pairs.insert((s, idx, i));
                pending.insert((i, idx));
            }
            g.push(Elem { terms: h, sugar });
        }

        // drop elements with divisible leading terms, then tail-reduce
        let keep: Vec<usize> = (0..g.len())
            .filter(|&i| {
                !(0..g.len()).any(|k| {
                    k != i
                        && g[k].terms[0].pos == g[i].terms[0].pos
                        && g[k].terms[0].mono.divides(&g[i].terms[0].mono)
                })
            })
            .collect();
        let mut basis = Vec::with_capacity(keep.len());
        for &i in &keep {
            let others: Vec<&[Term]> =
                keep.iter().filter(|&&k| k != i).map(|&k| g[k].terms.as_slice()).collect();
            let r = self.reduce(g[i].terms.clone(), &others);
            basis.push(Self::monic(r));
        }
        basis.sort_by(|a, b| super::vector::term_cmp(self.order, &b[0], &a[0]));
        Ok(GbOutput { basis, minimal_inputs: minimal })
    }

    /// Post-hoc check that every S-vector reduces to zero.
    pub fn verify(&self, basis: &[Vec<Term>]) -> bool {
        let refs: Vec<&[Term]> = basis.iter().map(|v| v.as_slice()).collect();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                if basis[i][0].pos != basis[j][0].pos {
                    continue;
                }
                let s = self.s_vector(&basis[i], &basis[j]);
                if !self.reduce(s, &refs).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}
