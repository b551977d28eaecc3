//! Groebner bases of ideals and of submodules of free modules, normal forms,
//! syzygies and derived ideal operations.
//!
//! Module elements use the position-over-term extension of the ring order.
//! Syzygies are read off from an augmented basis: each generator `v_j` is
//! extended by the unit vector `e_j` in extra trailing coordinates, and the
//! basis elements whose original part vanishes span the syzygy module.

mod engine;
pub mod ideal;
mod vector;

use std::sync::Arc;

pub use ideal::Ideal;
pub use vector::{FreeVector, Term};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};
use engine::Engine;

/// Reduced Groebner basis of a submodule of `S^rank`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    rank: usize,
    comp_degs: Vec<i64>,
    elems: Vec<FreeVector>,
    records: Option<Records>,
}

/// Division records: how basis elements and syzygies arise from the
/// original generators.
#[derive(Clone, Debug)]
struct Records {
    ngens: usize,
    /// Row `i` expresses `elems[i]` in the original generators.
    reps: Vec<FreeVector>,
    syzygies: Vec<FreeVector>,
}

fn check_gens(gens: &[FreeVector]) -> Result<(Arc<PolyRing>, usize)> {
    let first = gens
        .first()
        .ok_or_else(|| Error::Input("empty generator list".into()))?;
    for g in gens {
        if **g.ring() != **first.ring() {
            return Err(Error::SignatureMismatch);
        }
        if g.rank() != first.rank() {
            return Err(Error::RankMismatch { expected: first.rank(), found: g.rank() });
        }
    }
    Ok((first.ring().clone(), first.rank()))
}

impl GroebnerBasis {
    /// Reduced Groebner basis of the submodule generated by `gens`.
    pub fn compute(gens: &[FreeVector], caps: &Caps) -> Result<Self> {
        let (ring, rank) = check_gens(gens)?;
        Self::compute_graded(&ring, rank, gens, &vec![0; rank], caps)
    }

    /// As [`compute`](Self::compute) with explicit component degrees, which
    /// drive the pair-selection order.
    pub fn compute_graded(
        ring: &Arc<PolyRing>,
        rank: usize,
        gens: &[FreeVector],
        comp_degs: &[i64],
        caps: &Caps,
    ) -> Result<Self> {
        let engine = Engine {
            order: ring.order,
            comp_degs,
            caps,
            product_criterion: rank == 1,
        };
        let out = engine.run(gens.iter().map(|g| g.clone().into_terms()).collect(), 0)?;
        let elems = out
            .basis
            .into_iter()
            .map(|t| FreeVector::from_terms(ring, rank, t))
            .collect();
        Ok(GroebnerBasis { ring: ring.clone(), rank, comp_degs: comp_degs.to_vec(), elems, records: None })
    }

    /// Basis of the submodule generated by `gens` together with division
    /// records, enabling [`syzygy_matrix`](Self::syzygy_matrix).
    pub fn with_records(gens: &[FreeVector], comp_degs: &[i64], caps: &Caps) -> Result<Self> {
        let (ring, rank) = check_gens(gens)?;
        let k = gens.len();
        let mut degs = comp_degs.to_vec();
        for g in gens {
            degs.push(g.degree(comp_degs).unwrap_or(0));
        }
        let aug: Vec<FreeVector> = gens
            .iter()
            .enumerate()
            .map(|(j, g)| {
                let e = FreeVector::unit(&Poly::one(&ring), j, k);
                g.concat(&e)
            })
            .collect();
        let full = Self::compute_graded(&ring, rank + k, &aug, &degs, caps)?;
        let mut elems = Vec::new();
        let mut reps = Vec::new();
        let mut syzygies = Vec::new();
        for v in full.elems {
            let real = v.project(0..rank);
            let track = v.project(rank..rank + k);
            if real.is_zero() {
                syzygies.push(track);
            } else {
                elems.push(real);
                reps.push(track);
            }
        }
        // the real parts form a Groebner basis; drop redundant leading terms
        let reduced: Vec<bool> = (0..elems.len())
            .map(|i| {
                let li = elems[i].lead().unwrap();
                !elems.iter().enumerate().any(|(j, e)| {
                    let lj = e.lead().unwrap();
                    j != i && lj.pos == li.pos && lj.mono.divides(&li.mono) && (lj.mono != li.mono || j < i)
                })
            })
            .collect();
        let mut kept_e = Vec::new();
        let mut kept_r = Vec::new();
        for ((e, r), keep) in elems.into_iter().zip(reps).zip(reduced) {
            if keep {
                let inv = e.lead().unwrap().coeff.inv()?;
                kept_e.push(e.scale(&inv));
                kept_r.push(r.scale(&inv));
            }
        }
        Ok(GroebnerBasis {
            ring,
            rank,
            comp_degs: comp_degs.to_vec(),
            elems: kept_e,
            records: Some(Records { ngens: k, reps: kept_r, syzygies }),
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn elements(&self) -> &[FreeVector] {
        &self.elems
    }

    pub fn polys(&self) -> Vec<Poly> {
        self.elems.iter().map(|e| e.coord(0)).collect()
    }

    /// True when the basis contains a unit vector `e_i` for every `i`
    /// (for ideals: `1` lies in the ideal).
    pub fn is_whole(&self) -> bool {
        (0..self.rank).all(|i| {
            self.elems.iter().any(|e| e.lead().is_some_and(|t| t.pos == i && t.mono.is_one()))
        })
    }

    fn engine<'a>(&'a self, caps: &'a Caps) -> Engine<'a> {
        Engine { order: self.ring.order, comp_degs: &self.comp_degs, caps, product_criterion: false }
    }

    pub fn normal_form(&self, v: &FreeVector) -> Result<FreeVector> {
        if **v.ring() != *self.ring {
            return Err(Error::SignatureMismatch);
        }
        if v.rank() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: v.rank() });
        }
        let caps = Caps::default();
        let refs: Vec<&[Term]> = self.elems.iter().map(|e| e.terms()).collect();
        let r = self.engine(&caps).reduce(v.terms().to_vec(), &refs);
        Ok(FreeVector::from_terms(&self.ring, self.rank, r))
    }

    pub fn normal_form_poly(&self, p: &Poly) -> Result<Poly> {
        Ok(self.normal_form(&FreeVector::from_poly(p))?.coord(0))
    }

    pub fn contains(&self, v: &FreeVector) -> Result<bool> {
        Ok(self.normal_form(v)?.is_zero())
    }

    pub fn contains_poly(&self, p: &Poly) -> Result<bool> {
        Ok(self.normal_form_poly(p)?.is_zero())
    }

    /// Re-checks Buchberger's criterion on the stored basis.
    pub fn verify(&self) -> bool {
        let caps = Caps::default();
        let terms: Vec<Vec<Term>> = self.elems.iter().map(|e| e.terms().to_vec()).collect();
        self.engine(&caps).verify(&terms)
    }

    /// Generators of the syzygy module of the original generators, as
    /// vectors in `S^k`.
    pub fn syzygy_matrix(&self, original_gens: &[FreeVector]) -> Result<Vec<FreeVector>> {
        let rec = self.records.as_ref().ok_or(Error::MissingRecords)?;
        if rec.ngens != original_gens.len() {
            return Err(Error::MissingRecords);
        }
        Ok(rec.syzygies.clone())
    }

    /// Expression of each basis element in the original generators.
    pub fn representations(&self) -> Result<&[FreeVector]> {
        Ok(&self.records.as_ref().ok_or(Error::MissingRecords)?.reps)
    }
}

/// Indices into `gens` of a minimal generating set of the submodule
/// `<background> + <gens>` modulo `<background>`. All inputs must be
/// homogeneous for `comp_degs`.
pub fn minimal_generators(
    ring: &Arc<PolyRing>,
    comp_degs: &[i64],
    background: &[FreeVector],
    gens: &[FreeVector],
    caps: &Caps,
) -> Result<Vec<usize>> {
    for g in background.iter().chain(gens) {
        if !g.is_homogeneous(comp_degs) {
            return Err(Error::Inhomogeneous(format!("generator {g}")));
        }
    }
    let engine = Engine { order: ring.order, comp_degs, caps, product_criterion: false };
    let inputs = background.iter().chain(gens).map(|g| g.terms().to_vec()).collect();
    let out = engine.run(inputs, background.len())?;
    let mut idx: Vec<usize> = out.minimal_inputs.into_iter().map(|k| k - background.len()).collect();
    idx.sort();
    Ok(idx)
}

/// Generators of `{ x in S^a : sum x_j cols_j lies in <extra> }`, where
/// `cols` and `extra` live in `S^b` with component degrees `row_degs`.
/// `col_degs` are the degrees of the columns.
pub fn relative_syzygies(
    ring: &Arc<PolyRing>,
    row_degs: &[i64],
    cols: &[FreeVector],
    col_degs: &[i64],
    extra: &[FreeVector],
    caps: &Caps,
) -> Result<Vec<FreeVector>> {
    let b = row_degs.len();
    let a = cols.len();
    let n = b + a;
    let mut degs = row_degs.to_vec();
    degs.extend_from_slice(col_degs);
    let one = Poly::one(ring);
    let mut inputs: Vec<Vec<Term>> = Vec::with_capacity(a + extra.len());
    for (j, c) in cols.iter().enumerate() {
        inputs.push(c.concat(&FreeVector::unit(&one, j, a)).into_terms());
    }
    for e in extra {
        inputs.push(e.embed(0, n).into_terms());
    }
    let engine = Engine { order: ring.order, comp_degs: &degs, caps, product_criterion: false };
    let out = engine.run(inputs, 0)?;
    Ok(out
        .basis
        .into_iter()
        .filter(|t| t[0].pos >= b)
        .map(|t| FreeVector::from_terms(ring, n, t).project(b..n))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::monomial::MonomialOrder;
    use crate::parse::parse_poly;

    fn ring(vars: &[&str], order: MonomialOrder) -> Arc<PolyRing> {
        PolyRing::new(Field::Rationals, vars, order).unwrap()
    }

    fn vecs(r: &Arc<PolyRing>, ps: &[&str]) -> Vec<FreeVector> {
        ps.iter().map(|s| FreeVector::from_poly(&parse_poly(s, r).unwrap())).collect()
    }

    #[test]
    fn variables_are_already_a_basis() {
        let r = ring(&["x", "y"], MonomialOrder::Grevlex);
        let gb = GroebnerBasis::compute(&vecs(&r, &["x", "y"]), &Caps::default()).unwrap();
        assert_eq!(gb.polys(), vec![parse_poly("x", &r).unwrap(), parse_poly("y", &r).unwrap()]);
        assert!(gb.verify());
    }

    #[test]
    fn twisted_cubic_relation_under_lex() {
        let r = ring(&["x", "y", "z"], MonomialOrder::Lex);
        let gb = GroebnerBasis::compute(&vecs(&r, &["x^2 - y", "x^3 - z"]), &Caps::default()).unwrap();
        let target = parse_poly("y^3 - z^2", &r).unwrap();
        assert!(gb.polys().iter().any(|p| *p == target || *p == target.neg()));
        assert!(gb.verify());
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let r = ring(&["x", "y"], MonomialOrder::Grevlex);
        let gb = GroebnerBasis::compute(&vecs(&r, &["x*y"]), &Caps::default()).unwrap();
        assert_eq!(gb.polys(), vec![parse_poly("x*y", &r).unwrap()]);
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(&["x", "y", "z"], MonomialOrder::Grevlex);
        let gb = GroebnerBasis::compute(&vecs(&r, &["x*y"]), &Caps::default()).unwrap();
        let nf = gb.normal_form_poly(&parse_poly("x^2*y + z", &r).unwrap()).unwrap();
        assert_eq!(nf, parse_poly("z", &r).unwrap());
        assert!(gb.contains_poly(&parse_poly("x*y*z - 3*x^2*y", &r).unwrap()).unwrap());
        assert_eq!(gb.normal_form_poly(&nf).unwrap(), nf);
    }

    #[test]
    fn koszul_syzygy_of_two_variables() {
        let r = ring(&["x", "y"], MonomialOrder::Grevlex);
        let gens = vecs(&r, &["x", "y"]);
        let gb = GroebnerBasis::with_records(&gens, &[0], &Caps::default()).unwrap();
        let syz = gb.syzygy_matrix(&gens).unwrap();
        assert_eq!(syz.len(), 1);
        let c = syz[0].coords();
        let check = c[0].mul(&gens[0].coord(0)).add(&c[1].mul(&gens[1].coord(0)));
        assert!(check.is_zero());
        assert_eq!(c[0].degree(), Some(1));
    }

    #[test]
    fn unit_generator_has_no_syzygies() {
        let r = ring(&["x"], MonomialOrder::Grevlex);
        let gens = vecs(&r, &["1"]);
        let gb = GroebnerBasis::with_records(&gens, &[0], &Caps::default()).unwrap();
        assert!(gb.syzygy_matrix(&gens).unwrap().is_empty());
        assert!(gb.is_whole());
    }

    #[test]
    fn records_are_required_for_syzygies() {
        let r = ring(&["x"], MonomialOrder::Grevlex);
        let gens = vecs(&r, &["x"]);
        let gb = GroebnerBasis::compute(&gens, &Caps::default()).unwrap();
        assert_eq!(gb.syzygy_matrix(&gens).unwrap_err(), Error::MissingRecords);
    }

    #[test]
    fn mixed_ranks_rejected() {
        let r = ring(&["x"], MonomialOrder::Grevlex);
        let x = parse_poly("x", &r).unwrap();
        let gens = vec![FreeVector::from_poly(&x), FreeVector::from_coords(&r, &[x.clone(), x]).unwrap()];
        assert!(matches!(GroebnerBasis::compute(&gens, &Caps::default()), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn pair_cap_is_a_distinct_error() {
        let r = ring(&["x", "y", "z"], MonomialOrder::Lex);
        let mut caps = Caps::default();
        caps.max_pairs = 1;
        let e = GroebnerBasis::compute(&vecs(&r, &["x^2 - y", "x^3 - z", "y*z - x"]), &caps).unwrap_err();
        assert!(e.is_cap());
    }

    #[test]
    fn cancellation_token_stops_computation() {
        use std::sync::atomic::AtomicBool;
        let r = ring(&["x", "y", "z"], MonomialOrder::Lex);
        let token = Arc::new(AtomicBool::new(true));
        let caps = Caps::default().with_cancel_token(token);
        let e = GroebnerBasis::compute(&vecs(&r, &["x^2 - y", "x^3 - z"]), &caps).unwrap_err();
        assert_eq!(e, Error::Cancelled);
    }

    #[test]
    fn minimal_generators_drop_redundant_inputs() {
        let r = ring(&["x", "y"], MonomialOrder::Grevlex);
        let gens = vecs(&r, &["x*y", "x", "x^2 + x*y", "y"]);
        let idx = minimal_generators(&r, &[0], &[], &gens, &Caps::default()).unwrap();
        assert_eq!(idx, vec![1, 3]);
        let bg = vecs(&r, &["x"]);
        let idx = minimal_generators(&r, &[0], &bg, &gens, &Caps::default()).unwrap();
        assert_eq!(idx, vec![3]);
    }
}
