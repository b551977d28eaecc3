//! Graded matrices: homogeneous maps between graded free modules.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::FreeVector;
use crate::poly::{Poly, PolyRing};

/// A map `⊕ S(-col_degs[j]) → ⊕ S(-row_degs[i])`, stored by columns.
/// Entry `(i, j)` is homogeneous of degree `col_degs[j] - row_degs[i]` or zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ring: Arc<PolyRing>,
    row_degs: Vec<i64>,
    col_degs: Vec<i64>,
    cols: Vec<FreeVector>,
}

impl Matrix {
    pub fn new(
        ring: &Arc<PolyRing>,
        row_degs: Vec<i64>,
        cols: Vec<FreeVector>,
        col_degs: Vec<i64>,
    ) -> Result<Self> {
        if cols.len() != col_degs.len() {
            return Err(Error::LengthMismatch(cols.len(), col_degs.len()));
        }
        for c in &cols {
            if c.rank() != row_degs.len() {
                return Err(Error::RankMismatch { expected: row_degs.len(), found: c.rank() });
            }
        }
        Ok(Matrix { ring: ring.clone(), row_degs, col_degs, cols })
    }

    /// Builds from row-major entries, inferring column degrees from the
    /// entries (columns of zeros get degree equal to the lowest row degree).
    pub fn from_rows(ring: &Arc<PolyRing>, row_degs: Vec<i64>, rows: &[Vec<Poly>]) -> Result<Self> {
        if rows.len() != row_degs.len() {
            return Err(Error::LengthMismatch(rows.len(), row_degs.len()));
        }
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut cols = Vec::with_capacity(ncols);
        let mut col_degs = Vec::with_capacity(ncols);
        for j in 0..ncols {
            let mut coords = Vec::with_capacity(rows.len());
            let mut deg: Option<i64> = None;
            for (i, row) in rows.iter().enumerate() {
                if row.len() != ncols {
                    return Err(Error::Input("ragged matrix rows".into()));
                }
                let e = &row[j];
                if !e.is_homogeneous() {
                    return Err(Error::Inhomogeneous(format!("matrix entry ({i},{j}) = {e}")));
                }
                if let Some(d) = e.degree() {
                    let cd = d as i64 + row_degs[i];
                    match deg {
                        None => deg = Some(cd),
                        Some(x) if x != cd => {
                            return Err(Error::Inhomogeneous(format!(
                                "column {j} mixes degrees {x} and {cd}"
                            )))
                        }
                        _ => {}
                    }
                }
                coords.push(e.clone());
            }
            cols.push(FreeVector::from_coords(ring, &coords)?);
            col_degs.push(deg.unwrap_or_else(|| row_degs.iter().copied().min().unwrap_or(0)));
        }
        Matrix::new(ring, row_degs, cols, col_degs)
    }

    pub fn identity(ring: &Arc<PolyRing>, degs: &[i64]) -> Self {
        let one = Poly::one(ring);
        let n = degs.len();
        let cols = (0..n).map(|i| FreeVector::unit(&one, i, n)).collect();
        Matrix { ring: ring.clone(), row_degs: degs.to_vec(), col_degs: degs.to_vec(), cols }
    }

    pub fn zero_cols(ring: &Arc<PolyRing>, row_degs: Vec<i64>) -> Self {
        Matrix { ring: ring.clone(), row_degs, col_degs: Vec::new(), cols: Vec::new() }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.row_degs.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn row_degs(&self) -> &[i64] {
        &self.row_degs
    }

    pub fn col_degs(&self) -> &[i64] {
        &self.col_degs
    }

    pub fn cols(&self) -> &[FreeVector] {
        &self.cols
    }

    pub fn col(&self, j: usize) -> &FreeVector {
        &self.cols[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> Poly {
        self.cols[j].coord(i)
    }

    /// Row-major entries.
    pub fn rows(&self) -> Vec<Vec<Poly>> {
        let cc: Vec<Vec<Poly>> = self.cols.iter().map(|c| c.coords()).collect();
        (0..self.nrows()).map(|i| cc.iter().map(|c| c[i].clone()).collect()).collect()
    }

    /// Checks the grading invariant on every entry.
    pub fn is_homogeneous(&self) -> bool {
        self.cols.iter().zip(&self.col_degs).all(|(c, &d)| {
            c.terms().iter().all(|t| t.mono.degree() as i64 + self.row_degs[t.pos] == d)
        })
    }

    pub fn transpose(&self) -> Matrix {
        let rows = self.rows();
        let n = self.ncols();
        let cols = rows
            .iter()
            .map(|r| FreeVector::from_coords(&self.ring, r).unwrap())
            .collect();
        Matrix {
            ring: self.ring.clone(),
            row_degs: self.col_degs.iter().map(|d| -d).collect(),
            col_degs: self.row_degs.iter().map(|d| -d).collect(),
            cols: if n == 0 {
                (0..self.nrows()).map(|_| FreeVector::zero(&self.ring, 0)).collect()
            } else {
                cols
            },
        }
    }

    /// The image of a vector `v` of the source under this map.
    pub fn apply(&self, v: &FreeVector) -> FreeVector {
        let mut acc = FreeVector::zero(&self.ring, self.nrows());
        for (j, p) in v.coords().iter().enumerate() {
            if !p.is_zero() {
                acc = acc.add(&self.cols[j].mul_poly(p));
            }
        }
        acc
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &Matrix) -> Result<Matrix> {
        if other.nrows() != self.ncols() {
            return Err(Error::LengthMismatch(self.ncols(), other.nrows()));
        }
        let cols = other.cols.iter().map(|c| self.apply(c)).collect();
        Matrix::new(&self.ring, self.row_degs.clone(), cols, other.col_degs.clone())
    }

    /// Horizontal concatenation `[self | other]` (same target).
    pub fn hcat(&self, other: &Matrix) -> Result<Matrix> {
        if self.row_degs != other.row_degs {
            return Err(Error::BadMap("hcat of matrices with different targets".into()));
        }
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        let mut degs = self.col_degs.clone();
        degs.extend_from_slice(&other.col_degs);
        Matrix::new(&self.ring, self.row_degs.clone(), cols, degs)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let n = self.nrows() + other.nrows();
        let mut cols: Vec<FreeVector> = self.cols.iter().map(|c| c.embed(0, n)).collect();
        cols.extend(other.cols.iter().map(|c| c.embed(self.nrows(), n)));
        let mut rd = self.row_degs.clone();
        rd.extend_from_slice(&other.row_degs);
        let mut cd = self.col_degs.clone();
        cd.extend_from_slice(&other.col_degs);
        Matrix { ring: self.ring.clone(), row_degs: rd, col_degs: cd, cols }
    }

    /// `self ⊗ id` on a free module with degrees `degs`: index `(i, k)` maps
    /// to `i * degs.len() + k`, degrees add.
    pub fn tensor_identity(&self, degs: &[i64]) -> Matrix {
        let h = degs.len();
        let n = self.nrows() * h;
        let row_degs = self.row_degs.iter().flat_map(|r| degs.iter().map(move |d| r + d)).collect();
        let mut cols = Vec::new();
        let mut col_degs = Vec::new();
        for (j, c) in self.cols.iter().enumerate() {
            for (k, d) in degs.iter().enumerate() {
                let coords = c.coords();
                let mut v = vec![Poly::zero(&self.ring); n];
                for (i, p) in coords.into_iter().enumerate() {
                    v[i * h + k] = p;
                }
                cols.push(FreeVector::from_coords(&self.ring, &v).unwrap());
                col_degs.push(self.col_degs[j] + d);
            }
        }
        Matrix { ring: self.ring.clone(), row_degs, col_degs, cols }
    }

    /// `id ⊗ self` on a free module with degrees `degs`, same indexing as
    /// [`tensor_identity`](Self::tensor_identity).
    pub fn identity_tensor(&self, degs: &[i64]) -> Matrix {
        let h = self.nrows();
        let n = degs.len() * h;
        let row_degs = degs.iter().flat_map(|d| self.row_degs.iter().map(move |r| r + d)).collect();
        let mut cols = Vec::new();
        let mut col_degs = Vec::new();
        for (i, d) in degs.iter().enumerate() {
            for (l, c) in self.cols.iter().enumerate() {
                cols.push(c.embed(i * h, n));
                col_degs.push(self.col_degs[l] + d);
            }
        }
        Matrix { ring: self.ring.clone(), row_degs, col_degs, cols }
    }

    /// Keeps the listed columns.
    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            row_degs: self.row_degs.clone(),
            col_degs: idx.iter().map(|&j| self.col_degs[j]).collect(),
            cols: idx.iter().map(|&j| self.cols[j].clone()).collect(),
        }
    }

    pub fn map_cols(&self, f: impl Fn(&FreeVector) -> FreeVector) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            row_degs: self.row_degs.clone(),
            col_degs: self.col_degs.clone(),
            cols: self.cols.iter().map(f).collect(),
        }
    }

    /// Shifts all degrees by `s` (a twist).
    pub fn shifted(&self, s: i64) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            row_degs: self.row_degs.iter().map(|d| d + s).collect(),
            col_degs: self.col_degs.iter().map(|d| d + s).collect(),
            cols: self.cols.clone(),
        }
    }

    /// Row-major entries as strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.rows().iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.to_strings() {
            writeln!(f, "[{}]", r.join(", "))?;
        }
        Ok(())
    }
}
