//! Serre-type conditions, reflexivity, the Hochster–Huneke graph, and
//! verification pipelines for the rigidity results.

mod graph;
mod search;
mod verify;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{ext_is_zero_from, FreeResolution};
use crate::module::PresentedModule;

pub use graph::{graph_rank, hh_graph, Edge, GraphRank, HHGraph, VertexRank};
pub use search::{default_catalog, rigidity_search, RigidityViolation, ViolationKind};
pub use verify::{
    verify_local_pd_reflexivity, verify_second_rigidity, verify_serre_on_both, verify_tor_vanishing,
    LedgerEntry, RigidityAssertion, Status, TheoremId, TheoremReport, Verdict,
};

/// How an `n`-torsion-free verdict may be read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Interpretation {
    /// Over a hypersurface every module has finite Gorenstein dimension,
    /// so the Ext verdicts decide the depth condition.
    SerreCondition,
    ExtCriterionOnly,
}

/// `Ext^i(Tr M, R) = 0` for `i = 1..=n`.
#[derive(Clone, Debug, Serialize)]
pub struct TorsionFreeReport {
    /// `ext_zero[i-1]` is the verdict for `Ext^i(Tr M, R)`.
    pub ext_zero: Vec<bool>,
    pub interpretation: Interpretation,
}

impl TorsionFreeReport {
    pub fn holds(&self) -> bool {
        self.ext_zero.iter().all(|&z| z)
    }

    /// First `i` with `Ext^i(Tr M, R) ≠ 0`.
    pub fn first_failure(&self) -> Option<usize> {
        self.ext_zero.iter().position(|z| !z).map(|i| i + 1)
    }
}

/// The `n`-torsion-free test through the transpose.
pub fn n_torsion_free(m: &PresentedModule, n: usize) -> Result<TorsionFreeReport> {
    if n == 0 {
        return Err(Error::Input("n-torsion-free needs n >= 1".into()));
    }
    let ring = m.ring();
    let interpretation =
        if ring.is_hypersurface() || ring.is_polynomial_ring() { Interpretation::SerreCondition } else { Interpretation::ExtCriterionOnly };
    let tr = m.transpose()?;
    if tr.ngens() == 0 {
        return Ok(TorsionFreeReport { ext_zero: vec![true; n], interpretation });
    }
    if n + 1 > ring.caps().resolution_len + 1 {
        return Err(Error::CapExceeded(format!("n = {n} needs a resolution longer than the cap")));
    }
    let res = FreeResolution::compute(&tr, n + 1)?;
    let r = PresentedModule::free(ring, &[0]);
    let ext_zero = (1..=n).map(|i| ext_is_zero_from(&res, &r, i)).collect::<Result<Vec<_>>>()?;
    Ok(TorsionFreeReport { ext_zero, interpretation })
}

/// Reflexivity decided twice: by the biduality map and by the Ext
/// criterion with `n = 2`.
#[derive(Clone, Debug, Serialize)]
pub struct ReflexiveVerdict {
    pub reflexive: bool,
    pub torsionless: bool,
    pub biduality_kernel_zero: bool,
    pub biduality_cokernel_zero: bool,
    pub ext_zero: Vec<bool>,
}

pub fn is_reflexive(m: &PresentedModule) -> Result<ReflexiveVerdict> {
    let b = m.biduality()?;
    let kernel_zero = b.kernel.is_zero()?;
    let cokernel_zero = b.cokernel.is_zero()?;
    let ext = n_torsion_free(m, 2)?;
    let by_map = kernel_zero && cokernel_zero;
    if by_map != ext.holds() || kernel_zero != ext.ext_zero[0] {
        return Err(Error::Internal(format!(
            "biduality (kernel zero {kernel_zero}, cokernel zero {cokernel_zero}) disagrees with Ext(Tr M, R) verdicts {:?}",
            ext.ext_zero
        )));
    }
    Ok(ReflexiveVerdict {
        reflexive: by_map,
        torsionless: kernel_zero,
        biduality_kernel_zero: kernel_zero,
        biduality_cokernel_zero: cokernel_zero,
        ext_zero: ext.ext_zero,
    })
}
