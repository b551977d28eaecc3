//! Finitely presented graded modules over a quotient ring and maps between
//! them.
//!
//! A module `M = coker(P)` over `R = S/I` is handled as the `S`-module
//! `S^g / (im P + I·S^g)`, so every computation reduces to submodules of free
//! `S`-modules.

mod ops;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{minimal_generators, relative_syzygies, FreeVector, GroebnerBasis};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::ring::{QuotientRing, RIdeal};

pub use ops::{find_isomorphism, Biduality, Isomorphism, LocalRank, Pushforward};

/// `coker(P)` with `P` homogeneous: rows are generators, columns relations.
#[derive(Clone)]
pub struct PresentedModule {
    ring: QuotientRing,
    pres: Matrix,
    rel_gb: Arc<OnceLock<GroebnerBasis>>,
}

impl fmt::Debug for PresentedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PresentedModule(degs {:?}, {} relations)", self.gen_degs(), self.nrels())
    }
}

impl fmt::Display for PresentedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ngens() == 0 {
            return write!(f, "0");
        }
        write!(f, "coker on generators of degrees {:?}", self.gen_degs())?;
        for r in self.pres.to_strings() {
            write!(f, "\n  [{}]", r.join(", "))?;
        }
        Ok(())
    }
}

/// Vectors `f·e_i` for every basis element `f` of `I` and every coordinate.
pub(crate) fn ideal_vectors(ring: &QuotientRing, rank: usize) -> Vec<FreeVector> {
    let mut out = Vec::with_capacity(rank * ring.ideal_gb().len());
    for i in 0..rank {
        for f in ring.ideal_gb() {
            out.push(FreeVector::unit(f, i, rank));
        }
    }
    out
}

/// Entrywise normal form modulo `I`.
pub(crate) fn reduce_vector(ring: &QuotientRing, v: &FreeVector) -> FreeVector {
    if ring.is_polynomial_ring() {
        return v.clone();
    }
    let c: Vec<Poly> = v.coords().iter().map(|p| ring.reduce(p)).collect();
    FreeVector::from_coords(ring.poly_ring(), &c).unwrap()
}

/// Homogeneous vectors of `S^b` with the given component degrees, reduced
/// mod `I`, zero ones dropped, then pruned to a minimal generating set of
/// their span in `R^b`. Returns the kept vectors and their degrees.
pub(crate) fn minimal_columns(
    ring: &QuotientRing,
    row_degs: &[i64],
    vecs: Vec<FreeVector>,
) -> Result<(Vec<FreeVector>, Vec<i64>)> {
    let vecs: Vec<FreeVector> = vecs
        .iter()
        .map(|v| reduce_vector(ring, v))
        .filter(|v| !v.is_zero())
        .collect();
    if vecs.is_empty() {
        return Ok((Vec::new(), Vec::new()));
    }
    let bg = ideal_vectors(ring, row_degs.len());
    let idx = minimal_generators(ring.poly_ring(), row_degs, &bg, &vecs, ring.caps())?;
    let kept: Vec<FreeVector> = idx.into_iter().map(|i| vecs[i].clone()).collect();
    let degs = kept.iter().map(|v| v.degree(row_degs).unwrap()).collect();
    Ok((kept, degs))
}

/// The submodule of `S^b / rels` generated by `gens`, presented over `R`,
/// together with the matrix of its (minimal) generators in `S^b`.
/// `rels` must contain `I·S^b`.
pub(crate) fn subquotient(
    ring: &QuotientRing,
    row_degs: &[i64],
    gens: Vec<FreeVector>,
    rels: &[FreeVector],
) -> Result<(PresentedModule, Matrix)> {
    let poly = ring.poly_ring();
    let gens: Vec<FreeVector> = gens.iter().map(|v| reduce_vector(ring, v)).filter(|v| !v.is_zero()).collect();
    for g in &gens {
        if !g.is_homogeneous(row_degs) {
            return Err(Error::Inhomogeneous(format!("generator {g}")));
        }
    }
    let idx = if gens.is_empty() {
        Vec::new()
    } else {
        minimal_generators(poly, row_degs, rels, &gens, ring.caps())?
    };
    let kept: Vec<FreeVector> = idx.into_iter().map(|i| gens[i].clone()).collect();
    let degs: Vec<i64> = kept.iter().map(|v| v.degree(row_degs).unwrap()).collect();
    let incl = Matrix::new(poly, row_degs.to_vec(), kept.clone(), degs.clone())?;
    if kept.is_empty() {
        return Ok((PresentedModule::zero(ring), incl));
    }
    let syz = relative_syzygies(poly, row_degs, &kept, &degs, rels, ring.caps())?;
    let (cols, col_degs) = minimal_columns(ring, &degs, syz)?;
    let pres = Matrix::new(poly, degs, cols, col_degs)?;
    Ok((PresentedModule::from_matrix_unchecked(ring, pres), incl))
}

impl PresentedModule {
    pub(crate) fn from_matrix_unchecked(ring: &QuotientRing, pres: Matrix) -> Self {
        PresentedModule { ring: ring.clone(), pres, rel_gb: Arc::new(OnceLock::new()) }
    }

    /// `coker(P)`; the matrix must be homogeneous for its degrees.
    pub fn coker(ring: &QuotientRing, pres: Matrix) -> Result<Self> {
        if **pres.ring() != **ring.poly_ring() {
            return Err(Error::SignatureMismatch);
        }
        if !pres.is_homogeneous() {
            return Err(Error::Inhomogeneous("presentation matrix".into()));
        }
        let pres = pres.map_cols(|c| reduce_vector(ring, c));
        Ok(Self::from_matrix_unchecked(ring, pres))
    }

    /// Presentation from row-major polynomial strings and generator degrees;
    /// relation degrees are inferred.
    pub fn from_strings(ring: &QuotientRing, gen_degs: &[i64], rows: &[Vec<String>]) -> Result<Self> {
        let rows: Vec<Vec<Poly>> = rows
            .iter()
            .map(|r| r.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let m = Matrix::from_rows(ring.poly_ring(), gen_degs.to_vec(), &rows)?;
        Self::coker(ring, m)
    }

    /// Free module `⊕ R(-d)`.
    pub fn free(ring: &QuotientRing, degs: &[i64]) -> Self {
        Self::from_matrix_unchecked(ring, Matrix::zero_cols(ring.poly_ring(), degs.to_vec()))
    }

    pub fn zero(ring: &QuotientRing) -> Self {
        Self::free(ring, &[])
    }

    /// `R/J` with one generator in degree 0.
    pub fn cyclic(ring: &QuotientRing, j: &RIdeal) -> Result<Self> {
        if j.ring() != ring {
            return Err(Error::SignatureMismatch);
        }
        let poly = ring.poly_ring();
        let mut cols = Vec::new();
        let mut degs = Vec::new();
        for g in j.gens() {
            if !g.is_homogeneous() {
                return Err(Error::Inhomogeneous(format!("ideal generator {g}")));
            }
            cols.push(FreeVector::from_poly(g));
            degs.push(g.degree().unwrap() as i64);
        }
        Ok(Self::from_matrix_unchecked(ring, Matrix::new(poly, vec![0], cols, degs)?))
    }

    /// The residue field `R/m`.
    pub fn residue_field(ring: &QuotientRing) -> Self {
        Self::cyclic(ring, &ring.maximal_ideal()).unwrap()
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn presentation(&self) -> &Matrix {
        &self.pres
    }

    pub fn gen_degs(&self) -> &[i64] {
        self.pres.row_degs()
    }

    pub fn rel_degs(&self) -> &[i64] {
        self.pres.col_degs()
    }

    pub fn ngens(&self) -> usize {
        self.pres.nrows()
    }

    pub fn nrels(&self) -> usize {
        self.pres.ncols()
    }

    pub fn is_free(&self) -> bool {
        self.nrels() == 0
    }

    /// Twist `M(s)`: generator degrees drop by `s`.
    pub fn twist(&self, s: i64) -> Self {
        Self::from_matrix_unchecked(&self.ring, self.pres.shifted(-s))
    }

    /// Relation vectors in `S^g`: columns of `P` and `I·S^g`.
    pub(crate) fn relation_vectors(&self) -> Vec<FreeVector> {
        let mut v: Vec<FreeVector> = self.pres.cols().to_vec();
        v.extend(ideal_vectors(&self.ring, self.ngens()));
        v
    }

    pub(crate) fn relations_gb(&self) -> Result<&GroebnerBasis> {
        if let Some(gb) = self.rel_gb.get() {
            return Ok(gb);
        }
        let gb = GroebnerBasis::compute_graded(
            self.ring.poly_ring(),
            self.ngens(),
            &self.relation_vectors(),
            self.gen_degs(),
            self.ring.caps(),
        )?;
        Ok(self.rel_gb.get_or_init(|| gb))
    }

    /// Canonical representative of an element of `S^g` modulo the relations.
    pub fn reduce(&self, v: &FreeVector) -> Result<FreeVector> {
        self.relations_gb()?.normal_form(v)
    }

    /// Membership of `v` in the relation submodule, i.e. `v = 0` in `M`.
    pub fn is_zero_element(&self, v: &FreeVector) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    /// Certified by every generator reducing to zero modulo the relations.
    pub fn is_zero(&self) -> Result<bool> {
        if self.ngens() == 0 {
            return Ok(true);
        }
        if self.nrels() == 0 {
            return Ok(false);
        }
        let one = Poly::one(self.ring.poly_ring());
        for i in 0..self.ngens() {
            if !self.is_zero_element(&FreeVector::unit(&one, i, self.ngens()))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Minimal presentation: no nonzero scalar entries, redundant relations
    /// removed. Idempotent.
    pub fn minimize(&self) -> Result<Self> {
        Ok(self.minimize_tracked()?.0)
    }

    /// As [`minimize`](Self::minimize), also returning the isomorphisms
    /// `self → minimized` and `minimized → self` as generator matrices.
    pub fn minimize_tracked(&self) -> Result<(Self, Matrix, Matrix)> {
        let ring = &self.ring;
        let poly = ring.poly_ring();
        let g = self.ngens();
        let degs = self.gen_degs().to_vec();
        let one = Poly::one(poly);
        let mut cols: Vec<FreeVector> = self.pres.cols().iter().map(|c| reduce_vector(ring, c)).collect();
        let mut express: Vec<FreeVector> = (0..g).map(|i| FreeVector::unit(&one, i, g)).collect();
        let mut alive = vec![true; g];
        loop {
            let pivot = cols.iter().enumerate().find_map(|(j, c)| {
                c.terms().iter().find(|t| t.mono.is_one()).map(|t| (j, t.pos, t.coeff.clone()))
            });
            let Some((j, i, c)) = pivot else { break };
            let v = cols.remove(j);
            let inv = c.inv()?;
            let eliminate = |w: &FreeVector| -> FreeVector {
                let a = w.coord(i);
                if a.is_zero() {
                    return w.clone();
                }
                w.sub(&v.mul_poly(&a.scale(&inv)))
            };
            cols = cols.iter().map(|w| reduce_vector(ring, &eliminate(w))).collect();
            express = express.iter().map(|w| reduce_vector(ring, &eliminate(w))).collect();
            alive[i] = false;
        }
        let live: Vec<usize> = (0..g).filter(|&i| alive[i]).collect();
        let new_degs: Vec<i64> = live.iter().map(|&i| degs[i]).collect();
        let pick = |w: &FreeVector| -> FreeVector {
            let c = w.coords();
            FreeVector::from_coords(poly, &live.iter().map(|&i| c[i].clone()).collect::<Vec<_>>()).unwrap()
        };
        let cols: Vec<FreeVector> = cols.iter().map(pick).collect();
        let (cols, col_degs) = minimal_columns(ring, &new_degs, cols)?;
        let pres = Matrix::new(poly, new_degs.clone(), cols, col_degs)?;
        let to_new = Matrix::new(poly, new_degs.clone(), express.iter().map(pick).collect(), degs.clone())?;
        let from_new = Matrix::new(
            poly,
            degs,
            live.iter().map(|&i| FreeVector::unit(&one, i, g)).collect(),
            new_degs,
        )?;
        Ok((Self::from_matrix_unchecked(ring, pres), to_new, from_new))
    }

    /// Whether the presentation has no nonzero scalar entries.
    pub fn is_minimal(&self) -> bool {
        self.pres.cols().iter().all(|c| c.terms().iter().all(|t| !t.mono.is_one()))
    }

    /// Entry degrees agree with generator and relation degrees.
    pub fn is_degree_consistent(&self) -> bool {
        self.pres.is_homogeneous()
    }
}

/// A degree-preserving map given by a matrix from source generators to
/// target generators.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    source: PresentedModule,
    target: PresentedModule,
    matrix: Matrix,
}

impl ModuleMap {
    /// Checks degrees and that relations of the source map into relations of
    /// the target.
    pub fn new(source: &PresentedModule, target: &PresentedModule, matrix: Matrix) -> Result<Self> {
        if source.ring != target.ring {
            return Err(Error::SignatureMismatch);
        }
        if matrix.row_degs() != target.gen_degs() || matrix.col_degs() != source.gen_degs() {
            return Err(Error::BadMap("matrix degrees do not match the generator degrees".into()));
        }
        if !matrix.is_homogeneous() {
            return Err(Error::Inhomogeneous("map matrix".into()));
        }
        let map = Self::new_unchecked(source, target, matrix);
        for (j, rel) in source.pres.cols().iter().enumerate() {
            if !target.is_zero_element(&map.matrix.apply(rel))? {
                return Err(Error::BadMap(format!("relation {j} of the source does not map to zero")));
            }
        }
        Ok(map)
    }

    pub(crate) fn new_unchecked(source: &PresentedModule, target: &PresentedModule, matrix: Matrix) -> Self {
        ModuleMap { source: source.clone(), target: target.clone(), matrix }
    }

    pub fn identity(m: &PresentedModule) -> Self {
        Self::new_unchecked(m, m, Matrix::identity(m.ring.poly_ring(), m.gen_degs()))
    }

    pub fn zero(source: &PresentedModule, target: &PresentedModule) -> Self {
        let poly = source.ring.poly_ring();
        let cols = (0..source.ngens()).map(|_| FreeVector::zero(poly, target.ngens())).collect();
        let m = Matrix::new(poly, target.gen_degs().to_vec(), cols, source.gen_degs().to_vec()).unwrap();
        Self::new_unchecked(source, target, m)
    }

    pub fn source(&self) -> &PresentedModule {
        &self.source
    }

    pub fn target(&self) -> &PresentedModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ModuleMap) -> Result<ModuleMap> {
        let m = other.matrix.compose(&self.matrix)?;
        Ok(Self::new_unchecked(&self.source, &other.target, m))
    }

    /// The kernel with its inclusion into the source.
    pub fn kernel(&self) -> Result<(PresentedModule, ModuleMap)> {
        let ring = &self.source.ring;
        let k = relative_syzygies(
            ring.poly_ring(),
            self.target.gen_degs(),
            self.matrix.cols(),
            self.source.gen_degs(),
            &self.target.relation_vectors(),
            ring.caps(),
        )?;
        let (module, incl) = subquotient(ring, self.source.gen_degs(), k, &self.source.relation_vectors())?;
        let map = Self::new_unchecked(&module, &self.source, incl);
        Ok((module, map))
    }

    /// `target / image`, on the target's generators.
    pub fn cokernel(&self) -> Result<PresentedModule> {
        let p = self.target.pres.hcat(&self.matrix)?;
        Ok(PresentedModule::from_matrix_unchecked(&self.target.ring, p.map_cols(|c| reduce_vector(&self.target.ring, c))))
    }

    /// The image as a submodule of the target.
    pub fn image(&self) -> Result<PresentedModule> {
        let ring = &self.target.ring;
        Ok(subquotient(ring, self.target.gen_degs(), self.matrix.cols().to_vec(), &self.target.relation_vectors())?.0)
    }

    pub fn is_surjective(&self) -> Result<bool> {
        self.cokernel()?.is_zero()
    }

    pub fn is_injective(&self) -> Result<bool> {
        self.kernel()?.0.is_zero()
    }

    /// Whether this is the zero map.
    pub fn is_zero(&self) -> Result<bool> {
        for c in self.matrix.cols() {
            if !self.target.is_zero_element(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::ring::make_ring;

    fn ra() -> QuotientRing {
        make_ring(Field::Rationals, &["x", "y", "z", "w"], &["x*y"]).unwrap()
    }

    fn rows(r: &[&[&str]]) -> Vec<Vec<String>> {
        r.iter().map(|row| row.iter().map(|s| s.to_string()).collect()).collect()
    }

    #[test]
    fn cyclic_module_shape() {
        let r = ra();
        let n = PresentedModule::cyclic(&r, &RIdeal::parse(&r, &["x"]).unwrap()).unwrap();
        assert_eq!(n.ngens(), 1);
        assert_eq!(n.nrels(), 1);
        assert_eq!(n.rel_degs(), &[1]);
        let f = PresentedModule::cyclic(&r, &RIdeal::parse(&r, &["0"]).unwrap()).unwrap();
        assert!(f.is_free());
    }

    #[test]
    fn kernel_of_multiplication_by_x() {
        let r = ra();
        let free = PresentedModule::free(&r, &[0]);
        let target = PresentedModule::free(&r, &[-1]);
        let m = Matrix::from_rows(r.poly_ring(), vec![-1], &[vec![r.parse("x").unwrap()]]).unwrap();
        let map = ModuleMap::new(&free, &target, m).unwrap();
        let (k, incl) = map.kernel().unwrap();
        assert_eq!(k.ngens(), 1);
        assert_eq!(incl.matrix().entry(0, 0), r.parse("y").unwrap());
        assert_eq!(k.gen_degs(), &[1]);
        let (k, _) = ModuleMap::identity(&free).kernel().unwrap();
        assert!(k.is_zero().unwrap());
        let (k, _) = ModuleMap::zero(&free, &PresentedModule::zero(&r)).kernel().unwrap();
        assert_eq!(k.ngens(), 1);
        assert!(k.is_free());
    }

    #[test]
    fn minimize_examples() {
        let r = ra();
        let unit = PresentedModule::from_strings(&r, &[0], &rows(&[&["1"]])).unwrap();
        assert_eq!(unit.minimize().unwrap().ngens(), 0);
        let d = PresentedModule::from_strings(&r, &[0, 0], &rows(&[&["1", "0"], &["0", "x"]])).unwrap();
        let m = d.minimize().unwrap();
        assert_eq!(m.ngens(), 1);
        assert_eq!(m.presentation().entry(0, 0), r.parse("x").unwrap());
        let again = m.minimize().unwrap();
        assert_eq!(again.presentation(), m.presentation());
    }

    #[test]
    fn minimize_tracks_generators() {
        let r = ra();
        let p = PresentedModule::from_strings(&r, &[0, 1], &rows(&[&["z", "x^2"], &["1", "w"]])).unwrap();
        let (m, to_new, from_new) = p.minimize_tracked().unwrap();
        assert_eq!(m.ngens(), 1);
        let fwd = ModuleMap::new(&p, &m, to_new).unwrap();
        let back = ModuleMap::new(&m, &p, from_new).unwrap();
        assert!(fwd.is_surjective().unwrap() && fwd.is_injective().unwrap());
        assert!(back.is_surjective().unwrap() && back.is_injective().unwrap());
    }

    #[test]
    fn ill_defined_map_rejected() {
        let r = ra();
        let n = PresentedModule::cyclic(&r, &RIdeal::parse(&r, &["x"]).unwrap()).unwrap();
        let free = PresentedModule::free(&r, &[0]);
        let m = Matrix::identity(r.poly_ring(), &[0]);
        assert!(matches!(ModuleMap::new(&n, &free, m), Err(Error::BadMap(_))));
    }
}
