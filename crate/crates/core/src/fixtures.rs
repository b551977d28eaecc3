//! The fixture rings and modules used by the verification suite.

use crate::error::Result;
use crate::field::Field;
use crate::matrix::Matrix;
use crate::module::PresentedModule;
use crate::ring::{make_ring, QuotientRing, RIdeal};
use crate::Caps;

/// `ℚ[x,y,z,w]/(xy)` with `M = Tr(R/(y,z,w))` and `N = R/(x)`.
#[derive(Clone, Debug)]
pub struct FixA {
    pub ring: QuotientRing,
    pub prime: RIdeal,
    pub m: PresentedModule,
    pub n: PresentedModule,
}

/// `ℚ[x,y]/(xy)` with `M = R/(x)` and `N = R/(x²)`.
#[derive(Clone, Debug)]
pub struct FixB {
    pub ring: QuotientRing,
    pub m: PresentedModule,
    pub n: PresentedModule,
}

fn cyclic(r: &QuotientRing, gens: &[&str]) -> Result<PresentedModule> {
    PresentedModule::cyclic(r, &RIdeal::parse(r, gens)?)
}

pub fn fix_a(caps: &Caps) -> Result<FixA> {
    let ring = make_ring(Field::Rationals, &["x", "y", "z", "w"], &["x*y"])?.with_caps(caps.clone())?;
    let prime = RIdeal::parse(&ring, &["y", "z", "w"])?;
    let m = PresentedModule::cyclic(&ring, &prime)?.transpose()?;
    let n = cyclic(&ring, &["x"])?;
    Ok(FixA { ring, prime, m, n })
}

pub fn fix_b(caps: &Caps) -> Result<FixB> {
    let ring = make_ring(Field::Rationals, &["x", "y"], &["x*y"])?.with_caps(caps.clone())?;
    let m = cyclic(&ring, &["x"])?;
    let n = cyclic(&ring, &["x^2"])?;
    Ok(FixB { ring, m, n })
}

/// Two coordinate planes in 4-space meeting at the origin.
pub fn fix_c(caps: &Caps) -> Result<QuotientRing> {
    make_ring(Field::Rationals, &["x", "y", "u", "v"], &["x*u", "x*v", "y*u", "y*v"])?.with_caps(caps.clone())
}

/// The complex `R^4 --A--> R^3 --B--> R^3 --C--> R^4` over the first
/// fixture ring, with `coker A ≅ M ⊗ N`.
#[derive(Clone, Debug)]
pub struct TensorComplex {
    pub a: Matrix,
    pub b: Matrix,
    pub c: Matrix,
}

fn matrix(ring: &QuotientRing, row_deg: i64, rows: &[&[&str]]) -> Result<Matrix> {
    let polys = rows
        .iter()
        .map(|r| r.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(ring.poly_ring(), vec![row_deg; rows.len()], &polys)
}

/// The middle matrix with the `(2,3)` entry `yw`; `literal_b` keeps the
/// printed `yz`, which does not compose to zero with either neighbour.
pub fn tensor_complex(ring: &QuotientRing) -> Result<TensorComplex> {
    Ok(TensorComplex {
        a: matrix(ring, -1, &[&["x", "0", "0", "w"], &["0", "x", "0", "y"], &["0", "0", "x", "z"]])?,
        b: matrix(ring, -3, &[&["0", "y*z", "-y^2"], &["-y*z", "0", "y*w"], &["y^2", "-y*w", "0"]])?,
        c: matrix(ring, -4, &[&["x", "0", "0"], &["0", "x", "0"], &["0", "0", "x"], &["w", "y", "z"]])?,
    })
}

pub fn literal_b(ring: &QuotientRing) -> Result<Matrix> {
    matrix(ring, -3, &[&["0", "y*z", "-y^2"], &["-y*z", "0", "y*z"], &["y^2", "-y*w", "0"]])
}
