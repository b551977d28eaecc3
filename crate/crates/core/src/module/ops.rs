//! Constructions on presented modules: tensor products, duals, transposes,
//! syzygies, pushforwards, the biduality map, Fitting ideals, local ranks
//! and isomorphism search.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ideal_vectors, subquotient, ModuleMap, PresentedModule};
use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::groebner::{relative_syzygies, FreeVector, Ideal};
use crate::homology;
use crate::linalg::DenseMatrix;
use crate::matrix::Matrix;
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::ring::RIdeal;

/// The natural map `M → M**` with its kernel and cokernel.
#[derive(Clone, Debug)]
pub struct Biduality {
    /// `M → F` where `F` is the free module containing `M**`.
    pub map: ModuleMap,
    pub double_dual: PresentedModule,
    pub double_dual_inclusion: ModuleMap,
    pub kernel: PresentedModule,
    pub cokernel: PresentedModule,
}

impl Biduality {
    pub fn is_torsionless(&self) -> Result<bool> {
        self.kernel.is_zero()
    }

    pub fn is_reflexive(&self) -> Result<bool> {
        Ok(self.kernel.is_zero()? && self.cokernel.is_zero()?)
    }
}

/// `0 → N → R^s → N₁ → 0` built from minimal generators of `N*`.
#[derive(Clone, Debug)]
pub struct Pushforward {
    pub module: PresentedModule,
    pub rank: usize,
    /// The evaluation map `N → R^s`.
    pub embedding: ModuleMap,
    /// `Ext¹(N₁, R) = 0`, re-checked on the output.
    pub ext1_vanishes: bool,
}

/// Free rank of a localization, with the certificate behind the verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalRank {
    /// Free of rank `rank`; `witness` is an element outside the prime that
    /// kills `Fitt_{rank-1}` (or lies in `Fitt_0` when `rank = 0`).
    Free { rank: usize, witness: Poly },
    /// `Fitt_{rank}` is the first Fitting ideal not inside the prime, but
    /// every generator of the annihilator of `Fitt_{rank-1}` lies in it.
    NotFree { rank: usize, annihilator: Vec<Poly> },
}

/// An explicit isomorphism `M ≅ N(shift)`.
#[derive(Clone, Debug)]
pub struct Isomorphism {
    pub shift: i64,
    pub map: ModuleMap,
}

fn free_of(m: &PresentedModule, degs: &[i64]) -> PresentedModule {
    PresentedModule::free(m.ring(), degs)
}

/// Determinant by cofactor expansion, memoized on column subsets.
fn determinant(rows: &[Vec<Poly>], zero: &Poly) -> Poly {
    fn rec(rows: &[Vec<Poly>], r: usize, mask: u64, memo: &mut HashMap<(usize, u64), Poly>, zero: &Poly) -> Poly {
        if r == rows.len() {
            return zero.add(&Poly::one(zero.ring()));
        }
        if let Some(v) = memo.get(&(r, mask)) {
            return v.clone();
        }
        let mut acc = zero.clone();
        let mut sign = true;
        for (c, e) in rows[r].iter().enumerate() {
            if mask >> c & 1 == 1 {
                continue;
            }
            if !e.is_zero() {
                let sub = rec(rows, r + 1, mask | 1 << c, memo, zero);
                let t = e.mul(&sub);
                acc = if sign { acc.add(&t) } else { acc.sub(&t) };
            }
            sign = !sign;
        }
        memo.insert((r, mask), acc.clone());
        acc
    }
    rec(rows, 0, 0, &mut HashMap::new(), zero)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

const MAX_MINORS: u128 = 200_000;

impl PresentedModule {
    /// `M ⊗ N` presented by `[P_M ⊗ 1 | 1 ⊗ P_N]`; generator `(i, k)` has
    /// index `i * N.ngens() + k`.
    pub fn tensor(&self, other: &PresentedModule) -> Result<PresentedModule> {
        if self.ring() != other.ring() {
            return Err(Error::SignatureMismatch);
        }
        let a = self.presentation().tensor_identity(other.gen_degs());
        let b = other.presentation().identity_tensor(self.gen_degs());
        let p = a.hcat(&b)?;
        PresentedModule::coker(self.ring(), p)
    }

    /// `Hom(M, R)` together with its generators as vectors of `F₀*`.
    pub fn dual_with_generators(&self) -> Result<(PresentedModule, Matrix)> {
        let pt = self.presentation().transpose();
        let src = free_of(self, pt.col_degs());
        let tgt = free_of(self, pt.row_degs());
        let (m, incl) = ModuleMap::new_unchecked(&src, &tgt, pt).kernel()?;
        Ok((m, incl.matrix().clone()))
    }

    /// `M* = Hom(M, R)`.
    pub fn dual(&self) -> Result<PresentedModule> {
        Ok(self.dual_with_generators()?.0)
    }

    /// `Tr M = coker(P*)` of a minimal presentation, minimized. The
    /// transpose of a free module is the zero module.
    pub fn transpose(&self) -> Result<PresentedModule> {
        let m = self.minimize()?;
        if m.ngens() == 0 || m.nrels() == 0 {
            return Ok(PresentedModule::zero(self.ring()));
        }
        let mut pt = m.presentation().transpose();
        if crate::fault::transpose_degree_sign() {
            let neg = |d: &[i64]| d.iter().map(|x| -x).collect::<Vec<_>>();
            pt = Matrix::new(self.ring().poly_ring(), neg(pt.row_degs()), pt.cols().to_vec(), neg(pt.col_degs()))?;
        }
        PresentedModule::coker(self.ring(), pt)?.minimize()
    }

    /// `n`-th syzygy module in a minimal resolution; `Ω⁰M` is `M` minimized.
    pub fn syzygy(&self, n: usize) -> Result<PresentedModule> {
        let mut m = self.minimize()?;
        for _ in 0..n {
            if m.ngens() == 0 {
                break;
            }
            let rels = ideal_vectors(m.ring(), m.ngens());
            m = subquotient(m.ring(), m.gen_degs(), m.presentation().cols().to_vec(), &rels)?.0.minimize()?;
        }
        Ok(m)
    }

    /// The map `M → M**` with kernel and cokernel.
    pub fn biduality(&self) -> Result<Biduality> {
        let (dual, k) = self.dual_with_generators()?;
        let (double_dual, l) = dual.dual_with_generators()?;
        let theta = k.transpose();
        let f = free_of(self, theta.row_degs());
        let map = ModuleMap::new_unchecked(self, &f, theta.clone());
        let (kernel, _) = map.kernel()?;
        let mut rels = theta.cols().to_vec();
        rels.extend(ideal_vectors(self.ring(), f.ngens()));
        let (cokernel, _) = subquotient(self.ring(), f.gen_degs(), l.cols().to_vec(), &rels)?;
        let double_dual_inclusion = ModuleMap::new_unchecked(&double_dual, &f, l);
        Ok(Biduality { map, double_dual, double_dual_inclusion, kernel, cokernel })
    }

    /// Torsionless check by `Ext¹(Tr M, R) = 0`.
    pub fn is_torsionless(&self) -> Result<bool> {
        let tr = self.transpose()?;
        homology::ext_is_zero(&tr, &PresentedModule::free(self.ring(), &[0]), 1)
    }

    /// The pushforward of a torsionless module.
    pub fn pushforward(&self) -> Result<Pushforward> {
        let n = self.minimize()?;
        let tr = n.transpose()?;
        let r = PresentedModule::free(self.ring(), &[0]);
        let ext = homology::ext(&tr, &r, 1)?;
        if !ext.is_zero {
            return Err(Error::NotTorsionless(format!(
                "Ext^1(Tr N, R) is nonzero: {}",
                ext.module
            )));
        }
        let (dual, k) = n.dual_with_generators()?;
        let u = k.transpose();
        let free = free_of(self, u.row_degs());
        let embedding = ModuleMap::new_unchecked(&n, &free, u);
        let module = embedding.cokernel()?.minimize()?;
        let ext1_vanishes = homology::ext_is_zero(&module, &r, 1)?;
        Ok(Pushforward { module, rank: dual.ngens(), embedding, ext1_vanishes })
    }

    /// `Fitt_i(M)` as an ideal of the ambient ring containing `I`.
    pub fn fitting_ideal(&self, i: usize) -> Result<Ideal> {
        let ring = self.ring();
        let m = self.minimize()?;
        let g = m.ngens();
        if i >= g {
            return Ok(ring.ambient(&[Poly::one(ring.poly_ring())]));
        }
        let k = g - i;
        if k > m.nrels() {
            return Ok(ring.ambient(&[]));
        }
        if binomial(g, k) * binomial(m.nrels(), k) > MAX_MINORS {
            return Err(Error::CapExceeded(format!("more than {MAX_MINORS} minors for Fitt_{i}")));
        }
        let rows = m.presentation().rows();
        let zero = Poly::zero(ring.poly_ring());
        let mut minors: Vec<Poly> = Vec::new();
        for rs in combinations(g, k) {
            for cs in combinations(m.nrels(), k) {
                ring.caps().check()?;
                let sub: Vec<Vec<Poly>> = rs.iter().map(|&r| cs.iter().map(|&c| rows[r][c].clone()).collect()).collect();
                let d = ring.reduce(&determinant(&sub, &zero));
                if !d.is_zero() {
                    let d = d.monic();
                    if !minors.contains(&d) {
                        minors.push(d);
                    }
                }
            }
        }
        Ok(ring.ambient(&minors))
    }

    /// Annihilator as an ambient ideal containing `I`.
    pub fn annihilator(&self) -> Result<Ideal> {
        let ring = self.ring();
        let poly = ring.poly_ring();
        let m = self.minimize()?;
        let rels = m.relation_vectors();
        let one = Poly::one(poly);
        let mut acc: Option<Ideal> = None;
        for i in 0..m.ngens() {
            let col = FreeVector::unit(&one, i, m.ngens());
            let syz = relative_syzygies(poly, m.gen_degs(), &[col], &[m.gen_degs()[i]], &rels, ring.caps())?;
            let q = Ideal::new(poly, syz.into_iter().map(|v| v.coord(0)).collect())?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q, ring.caps())?,
            });
        }
        Ok(acc.unwrap_or_else(|| ring.ambient(&[one])))
    }

    /// Free rank of `M_p`, decided by Fitting ideals: `M_p` is free of rank
    /// `r` iff `Fitt_r ⊄ p` and some `c ∉ p` annihilates `Fitt_{r-1}`.
    pub fn localized_rank(&self, p: &RIdeal) -> Result<LocalRank> {
        let ring = self.ring();
        let caps = ring.caps();
        if !p.is_proper()? {
            return Err(Error::UnitIdeal);
        }
        let pa = p.ambient();
        let outside = |ideal: &Ideal| -> Result<Option<Poly>> {
            for g in ideal.gens() {
                if !pa.contains(g, caps)? {
                    return Ok(Some(g.clone()));
                }
            }
            Ok(None)
        };
        let m = self.minimize()?;
        let g = m.ngens();
        let mut r = 0;
        let witness = loop {
            let f = m.fitting_ideal(r)?;
            if let Some(w) = outside(&f)? {
                break w;
            }
            r += 1;
            if r > g {
                return Err(Error::Internal("Fitt_g is contained in a proper ideal".into()));
            }
        };
        if r == 0 {
            return Ok(LocalRank::Free { rank: 0, witness });
        }
        let below = m.fitting_ideal(r - 1)?;
        let minors: Vec<Poly> = below.gens().iter().filter(|f| !ring.reduce(f).is_zero()).cloned().collect();
        let ann = if minors.is_empty() {
            Ideal::new(ring.poly_ring(), vec![Poly::one(ring.poly_ring())])?
        } else {
            ring.ideal().quotient_ideal(&Ideal::new(ring.poly_ring(), minors)?, caps)?
        };
        match outside(&ann)? {
            Some(c) => Ok(LocalRank::Free { rank: r, witness: c }),
            None => Ok(LocalRank::NotFree { rank: r, annihilator: ann.gens().to_vec() }),
        }
    }
}

/// Standard monomials of degree `d` modulo `I`.
fn standard_monomials(m: &PresentedModule, d: i64) -> Vec<Monomial> {
    if d < 0 {
        return Vec::new();
    }
    let ring = m.ring();
    let leads: Vec<&Monomial> = ring.ideal_gb().iter().map(|p| p.lead_monomial().unwrap()).collect();
    Monomial::all_of_degree(ring.nvars(), d as u32)
        .into_iter()
        .filter(|mono| !leads.iter().any(|l| l.divides(mono)))
        .collect()
}

/// Searches for an explicit isomorphism `M ≅ N(shift)` between minimal
/// presentations. Solves for degree-0 maps by linear algebra, then tests
/// seeded random members for bijectivity. `None` means no isomorphism was
/// found, which is a proof of non-isomorphism only when the generator
/// degrees disagree.
pub fn find_isomorphism(m: &PresentedModule, n: &PresentedModule) -> Result<Option<Isomorphism>> {
    if m.ring() != n.ring() {
        return Err(Error::SignatureMismatch);
    }
    let m = m.minimize()?;
    let n = n.minimize()?;
    if m.ngens() != n.ngens() {
        return Ok(None);
    }
    if m.ngens() == 0 {
        let map = ModuleMap::zero(&m, &n);
        return Ok(Some(Isomorphism { shift: 0, map }));
    }
    let shift = n.gen_degs().iter().min().unwrap() - m.gen_degs().iter().min().unwrap();
    let n = n.twist(shift);
    let mut a: Vec<i64> = m.gen_degs().to_vec();
    let mut b: Vec<i64> = n.gen_degs().to_vec();
    a.sort();
    b.sort();
    if a != b {
        return Ok(None);
    }
    let ring = m.ring();
    let poly = ring.poly_ring();
    let field = ring.field();
    let h = n.ngens();
    // unknown entries: coefficient of a standard monomial in U[k][i]
    let mut unknowns: Vec<(usize, usize, Monomial)> = Vec::new();
    for (i, &ai) in m.gen_degs().iter().enumerate() {
        for (k, &bk) in n.gen_degs().iter().enumerate() {
            for mono in standard_monomials(&m, ai - bk) {
                unknowns.push((k, i, mono));
            }
        }
    }
    if unknowns.is_empty() {
        return Ok(None);
    }
    let one = field.one();
    let mut row_index: HashMap<(usize, usize, Monomial), usize> = HashMap::new();
    let mut columns: Vec<Vec<(usize, Coeff)>> = Vec::new();
    for (k, i, mono) in &unknowns {
        let mut col = Vec::new();
        for (j, rel) in m.presentation().cols().iter().enumerate() {
            let e = rel.coord(*i);
            if e.is_zero() {
                continue;
            }
            let w = FreeVector::unit(&e.mul_term(mono, &one), *k, h);
            let nf = n.reduce(&w)?;
            for t in nf.terms() {
                let key = (j, t.pos, t.mono.clone());
                let len = row_index.len();
                let r = *row_index.entry(key).or_insert(len);
                col.push((r, t.coeff.clone()));
            }
        }
        columns.push(col);
    }
    let mut sys = DenseMatrix::zeros(field, row_index.len(), unknowns.len());
    for (u, col) in columns.iter().enumerate() {
        for (r, c) in col {
            sys.set(*r, u, sys.get(*r, u).add(c));
        }
    }
    let basis = sys.nullspace();
    if basis.is_empty() {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x150_4a11);
    for _ in 0..24 {
        let weights: Vec<Coeff> = basis.iter().map(|_| field.from_i64(rng.gen_range(-7..=7))).collect();
        let mut entries = vec![vec![Poly::zero(poly); m.ngens()]; h];
        for (b, w) in basis.iter().zip(&weights) {
            for (u, c) in b.iter().enumerate() {
                if c.is_zero() || w.is_zero() {
                    continue;
                }
                let (k, i, mono) = &unknowns[u];
                entries[*k][*i] = entries[*k][*i].add(&Poly::monomial(poly, mono.clone(), c.mul(w)));
            }
        }
        let cols: Vec<FreeVector> = (0..m.ngens())
            .map(|i| FreeVector::from_coords(poly, &entries.iter().map(|r| r[i].clone()).collect::<Vec<_>>()).unwrap())
            .collect();
        let mat = Matrix::new(poly, n.gen_degs().to_vec(), cols, m.gen_degs().to_vec())?;
        let map = ModuleMap::new(&m, &n, mat)?;
        if map.is_surjective()? && map.is_injective()? {
            return Ok(Some(Isomorphism { shift, map }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::ring::{make_ring, QuotientRing};

    fn ra() -> QuotientRing {
        make_ring(Field::Rationals, &["x", "y", "z", "w"], &["x*y"]).unwrap()
    }

    fn cyc(r: &QuotientRing, g: &[&str]) -> PresentedModule {
        PresentedModule::cyclic(r, &RIdeal::parse(r, g).unwrap()).unwrap()
    }

    #[test]
    fn transpose_of_residue_of_prime() {
        let r = ra();
        let m = cyc(&r, &["y", "z", "w"]).transpose().unwrap();
        assert_eq!(m.ngens(), 3);
        assert_eq!(m.nrels(), 1);
        let col: Vec<String> = m.presentation().col(0).coords().iter().map(|p| p.to_string()).collect();
        assert_eq!(col, ["y", "z", "w"]);
        assert!(PresentedModule::free(&r, &[0, 1]).transpose().unwrap().is_zero().unwrap());
    }

    #[test]
    fn tensor_of_fixture_modules() {
        let r = ra();
        let m = cyc(&r, &["y", "z", "w"]).transpose().unwrap();
        let n = cyc(&r, &["x"]);
        let t = m.tensor(&n).unwrap().minimize().unwrap();
        assert_eq!(t.ngens(), 3);
        assert_eq!(t.nrels(), 4);
    }

    #[test]
    fn dual_examples() {
        let r = ra();
        let f = PresentedModule::free(&r, &[0, 2]);
        let d = f.dual().unwrap();
        assert!(d.is_free());
        assert_eq!(d.gen_degs(), &[0, -2]);
        let (d, k) = cyc(&r, &["x"]).dual_with_generators().unwrap();
        assert_eq!(d.ngens(), 1);
        assert_eq!(k.entry(0, 0), r.parse("y").unwrap());
        assert!(PresentedModule::zero(&r).dual().unwrap().is_zero().unwrap());
    }

    #[test]
    fn syzygy_of_residue_ring() {
        let r = ra();
        let n = cyc(&r, &["x"]);
        let s = n.syzygy(1).unwrap();
        assert_eq!(s.ngens(), 1);
        assert_eq!(s.gen_degs(), &[1]);
        assert_eq!(s.presentation().entry(0, 0), r.parse("y").unwrap());
        assert!(PresentedModule::free(&r, &[0]).syzygy(2).unwrap().is_zero().unwrap());
    }

    #[test]
    fn fitting_ideals() {
        let r = ra();
        let caps = r.caps().clone();
        let m = cyc(&r, &["y", "z", "w"]).transpose().unwrap();
        let zero = r.ambient(&[]);
        let f0 = m.fitting_ideal(0).unwrap();
        assert!(f0.is_subset(&zero, &caps).unwrap());
        assert!(m.fitting_ideal(1).unwrap().is_subset(&zero, &caps).unwrap());
        let f2 = m.fitting_ideal(2).unwrap();
        let p = r.ambient(&[r.parse("y").unwrap(), r.parse("z").unwrap(), r.parse("w").unwrap()]);
        assert!(f2.is_subset(&p, &caps).unwrap() && p.is_subset(&f2, &caps).unwrap());
        assert!(m.fitting_ideal(3).unwrap().is_unit(&caps).unwrap());
    }

    #[test]
    fn local_ranks_of_residue_ring() {
        let r = ra();
        let n = cyc(&r, &["x"]);
        let at = |g: &[&str]| n.localized_rank(&RIdeal::parse(&r, g).unwrap()).unwrap();
        assert!(matches!(at(&["x"]), LocalRank::Free { rank: 1, .. }));
        assert!(matches!(at(&["y"]), LocalRank::Free { rank: 0, .. }));
        assert!(matches!(at(&["x", "y"]), LocalRank::NotFree { rank: 1, .. }));
        let f = PresentedModule::free(&r, &[0, 0]);
        assert!(matches!(
            f.localized_rank(&RIdeal::parse(&r, &["x"]).unwrap()).unwrap(),
            LocalRank::Free { rank: 2, .. }
        ));
    }

    #[test]
    fn isomorphism_search() {
        let r = ra();
        let n = cyc(&r, &["x"]);
        let s = n.syzygy(2).unwrap();
        let iso = find_isomorphism(&s, &n).unwrap().unwrap();
        assert_eq!(iso.shift, -2);
        assert!(find_isomorphism(&cyc(&r, &["x"]), &cyc(&r, &["y"])).unwrap().is_none());
    }

    #[test]
    fn determinant_of_small_matrices() {
        let r = ra();
        let p = |s: &str| r.parse(s).unwrap();
        let z = Poly::zero(r.poly_ring());
        let d = determinant(&[vec![p("x"), p("y")], vec![p("z"), p("w")]], &z);
        assert_eq!(d, p("x*w - y*z"));
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(binomial(5, 2), 10);
    }
}
