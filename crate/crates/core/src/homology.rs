//! Minimal graded free resolutions, Tor, Ext, projective dimension, depth
//! and torsion.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::groebner::{relative_syzygies, FreeVector, GroebnerBasis};
use crate::hilbert::{hilbert_series, HilbertSeries};
use crate::linalg::DenseMatrix;
use crate::matrix::Matrix;
use crate::module::{ideal_vectors, minimal_columns, subquotient, PresentedModule};
use crate::poly::Poly;
use crate::ring::QuotientRing;

/// Minimal generators of the kernel of `d` over `R`, as columns.
fn kernel_columns(ring: &QuotientRing, d: &Matrix) -> Result<(Vec<FreeVector>, Vec<i64>)> {
    if d.ncols() == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let k = relative_syzygies(
        ring.poly_ring(),
        d.row_degs(),
        d.cols(),
        d.col_degs(),
        &ideal_vectors(ring, d.nrows()),
        ring.caps(),
    )?;
    minimal_columns(ring, d.col_degs(), k)
}

/// `d_{k+2} V = U d_k` with `U`, `V` invertible scalar matrices: the
/// cokernels of `d_k` and `d_{k+2}` agree up to a twist, so the resolution
/// repeats with period two from index `k` on.
#[derive(Clone, Debug, Serialize)]
pub struct Periodicity {
    /// Smallest `k` with `d_{k+2} ≅ d_k`.
    pub from: usize,
    /// Internal degree shift between `F_{k-1}` and `F_{k+1}`.
    pub shift: i64,
}

/// A minimal graded free resolution `… → F_1 → F_0 → M → 0`, possibly
/// truncated.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    module: PresentedModule,
    diffs: Vec<Matrix>,
    complete: bool,
    pending: Option<Matrix>,
}

impl FreeResolution {
    /// Resolution up to length `min(pd M, max_len)`. Completion is decided
    /// exactly: a resolution of length `max_len` is marked complete only if
    /// the last kernel is zero.
    pub fn compute(m: &PresentedModule, max_len: usize) -> Result<Self> {
        let module = m.minimize()?;
        let mut r = FreeResolution { module, diffs: Vec::new(), complete: false, pending: None };
        if r.module.nrels() == 0 {
            r.complete = true;
        } else {
            r.pending = Some(r.module.presentation().clone());
        }
        r.extend_to(max_len)?;
        Ok(r)
    }

    /// Extends the resolution in place to length `len` (append-only).
    pub fn extend_to(&mut self, len: usize) -> Result<()> {
        let ring = self.module.ring().clone();
        while !self.complete && self.diffs.len() < len {
            let d = self.pending.take().unwrap();
            ring.caps().check()?;
            let (cols, degs) = kernel_columns(&ring, &d)?;
            if cols.is_empty() {
                self.complete = true;
            } else {
                self.pending = Some(Matrix::new(ring.poly_ring(), d.col_degs().to_vec(), cols, degs)?);
            }
            self.diffs.push(d);
        }
        Ok(())
    }

    pub fn module(&self) -> &PresentedModule {
        &self.module
    }

    pub fn length(&self) -> usize {
        self.diffs.len()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// `d_i : F_i → F_{i-1}` for `1 ≤ i ≤ length`.
    pub fn differential(&self, i: usize) -> &Matrix {
        &self.diffs[i - 1]
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.diffs
    }

    /// Generator degrees of `F_i`; empty beyond a complete resolution.
    pub fn shifts(&self, i: usize) -> &[i64] {
        if i == 0 {
            self.module.gen_degs()
        } else if i <= self.diffs.len() {
            self.diffs[i - 1].col_degs()
        } else {
            &[]
        }
    }

    pub fn betti(&self) -> Vec<usize> {
        (0..=self.diffs.len()).map(|i| self.shifts(i).len()).collect()
    }

    /// No nonzero scalar entries in any differential.
    pub fn is_minimal(&self) -> bool {
        self.diffs.iter().all(|d| d.cols().iter().all(|c| c.terms().iter().all(|t| !t.mono.is_one())))
    }

    /// `d_i ∘ d_{i+1} ≡ 0 mod I`, checked exactly.
    pub fn check_d_squared(&self) -> bool {
        let ring = self.module.ring();
        self.diffs.windows(2).all(|w| match w[0].compose(&w[1]) {
            Ok(c) => c.cols().iter().all(|v| v.coords().iter().all(|p| ring.reduce(p).is_zero())),
            Err(_) => false,
        })
    }

    /// The first differential is the minimal presentation of the module.
    pub fn check_exactness_at_zero(&self) -> Result<bool> {
        match self.diffs.first() {
            None => Ok(self.module.is_free()),
            Some(d) => Ok(d == self.module.presentation()),
        }
    }

    /// Projective dimension, if the resolution is complete.
    pub fn pd(&self) -> Option<usize> {
        self.complete.then_some(self.diffs.len())
    }

    /// Looks for the smallest `k ≥ 1` with `d_{k+2}` isomorphic to `d_k`
    /// via invertible scalar changes of basis.
    pub fn detect_periodicity(&self) -> Result<Option<Periodicity>> {
        for k in 1..=self.diffs.len().saturating_sub(2) {
            if let Some(p) = self.periodic_at(k)? {
                return Ok(Some(p));
            }
        }
        Ok(None)
    }

    fn periodic_at(&self, k: usize) -> Result<Option<Periodicity>> {
        let ring = self.module.ring();
        let field = ring.field();
        let (dk, dk2) = (self.differential(k), self.differential(k + 2));
        if dk.nrows() != dk2.nrows() || dk.ncols() != dk2.ncols() || dk.ncols() == 0 {
            return Ok(None);
        }
        let shift = dk2.row_degs().iter().min().unwrap() - dk.row_degs().iter().min().unwrap();
        let sorted = |v: &[i64], s: i64| {
            let mut v: Vec<i64> = v.iter().map(|d| d + s).collect();
            v.sort();
            v
        };
        if sorted(dk.row_degs(), shift) != sorted(dk2.row_degs(), 0)
            || sorted(dk.col_degs(), shift) != sorted(dk2.col_degs(), 0)
        {
            return Ok(None);
        }
        let (rows, cols) = (dk.nrows(), dk.ncols());
        // unknowns: U[a][c] (rows x rows) then V[c][b] (cols x cols), degree 0 only
        let mut unknowns: Vec<(bool, usize, usize)> = Vec::new();
        for a in 0..rows {
            for c in 0..rows {
                if dk2.row_degs()[a] == dk.row_degs()[c] + shift {
                    unknowns.push((true, a, c));
                }
            }
        }
        for c in 0..cols {
            for b in 0..cols {
                if dk2.col_degs()[c] == dk.col_degs()[b] + shift {
                    unknowns.push((false, c, b));
                }
            }
        }
        let e2 = dk2.rows();
        let e0 = dk.rows();
        let mut index = std::collections::HashMap::new();
        let mut entries: Vec<Vec<(usize, Coeff)>> = Vec::new();
        for &(is_u, p, q) in &unknowns {
            let mut col = Vec::new();
            let mut push = |a: usize, b: usize, f: &Poly, neg: bool| {
                let f = ring.reduce(f);
                for (m, c) in f.terms() {
                    let len = index.len();
                    let r = *index.entry((a, b, m.clone())).or_insert(len);
                    col.push((r, if neg { c.neg() } else { c.clone() }));
                }
            };
            if is_u {
                // U[p][q] contributes -U[p][q] d_k[q][b] at (p, b)
                for b in 0..cols {
                    push(p, b, &e0[q][b], true);
                }
            } else {
                // V[p][q] contributes d_{k+2}[a][p] V[p][q] at (a, q)
                for a in 0..rows {
                    push(a, q, &e2[a][p], false);
                }
            }
            entries.push(col);
        }
        let mut sys = DenseMatrix::zeros(field, index.len(), unknowns.len());
        for (u, col) in entries.iter().enumerate() {
            for (r, c) in col {
                sys.set(*r, u, sys.get(*r, u).add(c));
            }
        }
        let basis = sys.nullspace();
        if basis.is_empty() {
            return Ok(None);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x9e41_0d1c + k as u64);
        for _ in 0..16 {
            let w: Vec<Coeff> = basis.iter().map(|_| field.from_i64(rng.gen_range(-9..=9))).collect();
            let mut u = DenseMatrix::zeros(field, rows, rows);
            let mut v = DenseMatrix::zeros(field, cols, cols);
            for (b, wb) in basis.iter().zip(&w) {
                for (idx, c) in b.iter().enumerate() {
                    let (is_u, p, q) = unknowns[idx];
                    let m = if is_u { &mut u } else { &mut v };
                    let val = m.get(p, q).add(&c.mul(wb));
                    m.set(p, q, val);
                }
            }
            if u.rank() == rows && v.rank() == cols {
                return Ok(Some(Periodicity { from: k, shift }));
            }
        }
        Ok(None)
    }
}

/// Projective dimension, or `AboveCap` when the minimal resolution
/// persists to the cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Pd {
    Finite(usize),
    AboveCap(usize),
}

pub fn pd(m: &PresentedModule, cap: usize) -> Result<Pd> {
    let r = FreeResolution::compute(m, cap)?;
    Ok(match r.pd() {
        Some(p) => Pd::Finite(p),
        None => Pd::AboveCap(cap),
    })
}

/// A Tor or Ext module with its certified vanishing verdict.
#[derive(Clone, Debug)]
pub struct HomologyReport {
    pub index: usize,
    pub module: PresentedModule,
    pub is_zero: bool,
    pub hilbert: HilbertSeries,
}

/// One spot `C_{i+1} → C_i → C_{i-1}` of a complex of presented modules
/// `C_j = S^{n_j} / rels_j`.
struct Spot<'a> {
    ring: &'a QuotientRing,
    degs: &'a [i64],
    rels: Vec<FreeVector>,
    /// Outgoing map and the relations of its target.
    out: Option<(&'a Matrix, Vec<FreeVector>)>,
    /// Incoming map.
    inc: Option<&'a Matrix>,
}

impl Spot<'_> {
    fn cycles(&self) -> Result<Vec<FreeVector>> {
        let poly = self.ring.poly_ring();
        match &self.out {
            Some((d, tgt_rels)) if d.nrows() > 0 => {
                relative_syzygies(poly, d.row_degs(), d.cols(), self.degs, tgt_rels, self.ring.caps())
            }
            _ => {
                let one = Poly::one(poly);
                Ok((0..self.degs.len()).map(|i| FreeVector::unit(&one, i, self.degs.len())).collect())
            }
        }
    }

    fn boundaries(&self) -> Vec<FreeVector> {
        let mut r = self.rels.clone();
        if let Some(d) = self.inc {
            r.extend(d.cols().iter().cloned());
        }
        r
    }

    fn is_zero(&self) -> Result<bool> {
        if self.degs.is_empty() {
            return Ok(true);
        }
        let z = self.cycles()?;
        let b = self.boundaries();
        if b.is_empty() {
            return Ok(z.iter().all(|v| v.is_zero()));
        }
        let gb = GroebnerBasis::compute_graded(self.ring.poly_ring(), self.degs.len(), &b, self.degs, self.ring.caps())?;
        for v in &z {
            if !gb.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn module(&self) -> Result<PresentedModule> {
        if self.degs.is_empty() {
            return Ok(PresentedModule::zero(self.ring));
        }
        let z = self.cycles()?;
        subquotient(self.ring, self.degs, z, &self.boundaries())?.0.minimize()
    }
}

fn report(index: usize, spot: &Spot) -> Result<HomologyReport> {
    let module = spot.module()?;
    let is_zero = module.is_zero()?;
    let hilbert = hilbert_series(&module)?;
    Ok(HomologyReport { index, module, is_zero, hilbert })
}

/// Homology at the middle of `F --inc--> G --out--> H` for free modules.
pub fn homology_at(ring: &QuotientRing, inc: &Matrix, out: &Matrix) -> Result<HomologyReport> {
    if inc.row_degs() != out.col_degs() {
        return Err(Error::BadMap("maps do not compose: degrees of the middle module differ".into()));
    }
    let spot = Spot {
        ring,
        degs: out.col_degs(),
        rels: ideal_vectors(ring, out.ncols()),
        out: Some((out, ideal_vectors(ring, out.nrows()))),
        inc: Some(inc),
    };
    report(0, &spot)
}

/// Data for `F_• ⊗ N`: degrees and relations of `F_i ⊗ N`.
fn tensor_term(res: &FreeResolution, n: &PresentedModule, i: usize) -> (Vec<i64>, Vec<FreeVector>) {
    let s = res.shifts(i);
    let degs: Vec<i64> = s.iter().flat_map(|a| n.gen_degs().iter().map(move |b| a + b)).collect();
    let mut rels = n.presentation().identity_tensor(s).cols().to_vec();
    rels.extend(ideal_vectors(n.ring(), degs.len()));
    (degs, rels)
}

/// Data for `Hom(F_•, N)`: degrees and relations of `Hom(F_i, N)`.
fn hom_term(res: &FreeResolution, n: &PresentedModule, i: usize) -> (Vec<i64>, Vec<FreeVector>) {
    let s: Vec<i64> = res.shifts(i).iter().map(|d| -d).collect();
    let degs: Vec<i64> = s.iter().flat_map(|a| n.gen_degs().iter().map(move |b| a + b)).collect();
    let mut rels = n.presentation().identity_tensor(&s).cols().to_vec();
    rels.extend(ideal_vectors(n.ring(), degs.len()));
    (degs, rels)
}

fn with_tor_spot<T>(res: &FreeResolution, n: &PresentedModule, i: usize, f: impl FnOnce(&Spot) -> Result<T>) -> Result<T> {
    let ring = n.ring();
    let (degs, rels) = tensor_term(res, n, i);
    let out_m = (i >= 1 && i <= res.length()).then(|| res.differential(i).tensor_identity(n.gen_degs()));
    let inc_m = (i < res.length()).then(|| res.differential(i + 1).tensor_identity(n.gen_degs()));
    let out = out_m.as_ref().map(|d| (d, tensor_term(res, n, i - 1).1));
    let spot = Spot { ring, degs: &degs, rels, out, inc: inc_m.as_ref() };
    f(&spot)
}

fn with_ext_spot<T>(res: &FreeResolution, n: &PresentedModule, i: usize, f: impl FnOnce(&Spot) -> Result<T>) -> Result<T> {
    let ring = n.ring();
    let (degs, rels) = hom_term(res, n, i);
    let out_m = (i < res.length()).then(|| res.differential(i + 1).transpose().tensor_identity(n.gen_degs()));
    let inc_m = (i >= 1 && i <= res.length()).then(|| res.differential(i).transpose().tensor_identity(n.gen_degs()));
    let out = out_m.as_ref().map(|d| (d, hom_term(res, n, i + 1).1));
    let spot = Spot { ring, degs: &degs, rels, out, inc: inc_m.as_ref() };
    f(&spot)
}

fn check_same_ring(m: &PresentedModule, n: &PresentedModule) -> Result<()> {
    if m.ring() != n.ring() {
        return Err(Error::SignatureMismatch);
    }
    Ok(())
}

fn resolution_for(m: &PresentedModule, len: usize) -> Result<FreeResolution> {
    if len > m.ring().caps().resolution_len + 1 {
        return Err(Error::CapExceeded(format!(
            "resolution of length {len} requested, cap is {}",
            m.ring().caps().resolution_len
        )));
    }
    FreeResolution::compute(m, len)
}

/// `Tor_i(M, N) = H_i(F_•(M) ⊗ N)`.
pub fn tor(m: &PresentedModule, n: &PresentedModule, i: usize) -> Result<HomologyReport> {
    check_same_ring(m, n)?;
    let res = resolution_for(m, i + 1)?;
    tor_from(&res, n, i)
}

/// Tor from an existing resolution of the first argument.
pub fn tor_from(res: &FreeResolution, n: &PresentedModule, i: usize) -> Result<HomologyReport> {
    with_tor_spot(res, n, i, |s| report(i, s))
}

pub fn tor_is_zero_from(res: &FreeResolution, n: &PresentedModule, i: usize) -> Result<bool> {
    with_tor_spot(res, n, i, |s| s.is_zero())
}

/// `Ext^i(M, N) = H^i(Hom(F_•(M), N))`.
pub fn ext(m: &PresentedModule, n: &PresentedModule, i: usize) -> Result<HomologyReport> {
    check_same_ring(m, n)?;
    let res = resolution_for(m, i + 1)?;
    with_ext_spot(&res, n, i, |s| report(i, s))
}

pub fn ext_is_zero(m: &PresentedModule, n: &PresentedModule, i: usize) -> Result<bool> {
    check_same_ring(m, n)?;
    let res = resolution_for(m, i + 1)?;
    ext_is_zero_from(&res, n, i)
}

pub fn ext_is_zero_from(res: &FreeResolution, n: &PresentedModule, i: usize) -> Result<bool> {
    with_ext_spot(res, n, i, |s| s.is_zero())
}

/// How vanishing beyond the checked window is justified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VanishingCertificate {
    /// The named argument has finite projective dimension `pd`, so Tor
    /// vanishes above it.
    FiniteResolution { side: String, pd: usize },
    /// The named argument has a resolution of period two from `from`.
    Periodic { side: String, from: usize },
}

/// Tor vanishing over `1..=window` with any available certificates.
#[derive(Clone, Debug, Serialize)]
pub struct TorVanishing {
    /// `zero[i-1]` is the verdict for `Tor_i`.
    pub zero: Vec<bool>,
    pub certificates: Vec<VanishingCertificate>,
}

impl TorVanishing {
    pub fn window_vanishes(&self) -> bool {
        self.zero.iter().all(|&z| z)
    }

    /// Vanishing for every `i ≥ 1`, justified by a certificate covering the
    /// indices beyond the window.
    pub fn all_vanish(&self) -> bool {
        self.window_vanishes()
            && self.certificates.iter().any(|c| match c {
                VanishingCertificate::FiniteResolution { pd, .. } => *pd <= self.zero.len(),
                VanishingCertificate::Periodic { from, .. } => *from < self.zero.len(),
            })
    }

    /// First index with nonzero Tor.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.zero.iter().position(|z| !z).map(|i| i + 1)
    }
}

fn certificate(res: &FreeResolution, side: &str) -> Result<Option<VanishingCertificate>> {
    if let Some(p) = res.pd() {
        return Ok(Some(VanishingCertificate::FiniteResolution { side: side.into(), pd: p }));
    }
    Ok(res
        .detect_periodicity()?
        .map(|p| VanishingCertificate::Periodic { side: side.into(), from: p.from }))
}

/// Checks `Tor_i(M, N) = 0` for `i = 1..=window` and collects certificates
/// from the resolutions of both arguments.
pub fn tor_vanishing(m: &PresentedModule, n: &PresentedModule, window: usize) -> Result<TorVanishing> {
    check_same_ring(m, n)?;
    let rm = resolution_for(m, window + 1)?;
    let rn = resolution_for(n, window + 1)?;
    let mut zero = Vec::with_capacity(window);
    for i in 1..=window {
        zero.push(tor_is_zero_from(&rm, n, i)?);
    }
    let certificates = [certificate(&rm, "first")?, certificate(&rn, "second")?].into_iter().flatten().collect();
    Ok(TorVanishing { zero, certificates })
}

/// Depth of a module; the zero module has infinite depth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Depth {
    Finite(usize),
    Infinity,
}

impl std::fmt::Display for Depth {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Depth::Finite(d) => write!(f, "{d}"),
            Depth::Infinity => write!(f, "inf"),
        }
    }
}

/// Resolution of the residue field of length at least `len`, cached on the
/// ring.
pub fn residue_resolution(ring: &QuotientRing, len: usize) -> Result<FreeResolution> {
    // the cache holds the differentials, followed by the next one to be
    // appended when the resolution is incomplete
    let mut guard = ring.residue_cache().lock().unwrap();
    let mut r = match guard.as_ref() {
        Some((stored, complete)) => {
            let mut diffs = stored.clone();
            let pending = if *complete { None } else { diffs.pop() };
            let module = PresentedModule::residue_field(ring).minimize()?;
            FreeResolution { module, diffs, complete: *complete, pending }
        }
        None => FreeResolution::compute(&PresentedModule::residue_field(ring), 0)?,
    };
    if r.complete || r.length() >= len {
        return Ok(r);
    }
    if len > ring.caps().resolution_len + 1 {
        return Err(Error::CapExceeded(format!(
            "resolution of the residue field to length {len} exceeds the cap {}",
            ring.caps().resolution_len
        )));
    }
    r.extend_to(len)?;
    let mut stored = r.diffs.clone();
    stored.extend(r.pending.clone());
    *guard = Some((stored, r.complete));
    Ok(r)
}

/// `min { i : Ext^i(k, M) ≠ 0 }`, searched up to `dim R`.
pub fn depth(m: &PresentedModule) -> Result<Depth> {
    let m = m.minimize()?;
    if m.is_zero()? {
        return Ok(Depth::Infinity);
    }
    let ring = m.ring();
    for i in 0..=ring.dim() {
        let res = residue_resolution(ring, i + 1)?;
        if !ext_is_zero_from(&res, &m, i)? {
            return Ok(Depth::Finite(i));
        }
    }
    Err(Error::Internal("no nonvanishing Ext(k, M) up to dim R".into()))
}

/// `T_p = 0` for every minimal prime `p`, certified by `Fitt_0(T) ⊄ p`
/// (or the annihilator when there are too many minors).
pub fn is_torsion(t: &PresentedModule) -> Result<bool> {
    let ring = t.ring();
    let primes = ring.minimal_primes()?;
    let t = t.minimize()?;
    if t.ngens() == 0 {
        return Ok(true);
    }
    let f0 = match t.fitting_ideal(0) {
        Ok(f) => f,
        Err(Error::CapExceeded(_)) => t.annihilator()?,
        Err(e) => return Err(e),
    };
    for p in &primes {
        if f0.is_subset(&p.ambient(), ring.caps())? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Depth formula check under Tor vanishing.
#[derive(Clone, Debug, Serialize)]
pub struct DepthFormulaReport {
    pub depth_m: Depth,
    pub depth_n: Depth,
    pub depth_r: Depth,
    pub depth_tensor: Depth,
    /// `None` when the Tor-vanishing precondition is not certified.
    pub holds: Option<bool>,
    pub tor: TorVanishing,
}

pub fn depth_formula_check(m: &PresentedModule, n: &PresentedModule, tor_cap: usize) -> Result<DepthFormulaReport> {
    let tor = tor_vanishing(m, n, tor_cap)?;
    let ring = m.ring();
    let depth_m = depth(m)?;
    let depth_n = depth(n)?;
    let depth_r = depth(&PresentedModule::free(ring, &[0]))?;
    let depth_tensor = depth(&m.tensor(n)?)?;
    let holds = tor.window_vanishes().then(|| match (depth_m, depth_n, depth_r, depth_tensor) {
        (Depth::Finite(a), Depth::Finite(b), Depth::Finite(c), Depth::Finite(d)) => a + b == c + d,
        _ => depth_m == Depth::Infinity || depth_n == Depth::Infinity,
    });
    Ok(DepthFormulaReport { depth_m, depth_n, depth_r, depth_tensor, holds, tor })
}
