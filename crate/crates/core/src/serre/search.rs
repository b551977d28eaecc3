use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{tor_is_zero_from, FreeResolution};
use crate::module::PresentedModule;
use crate::ring::{QuotientRing, RIdeal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// `Tor_1 = 0` but `Tor_2 ≠ 0`: the first module is not Tor-rigid.
    NotRigid,
    /// `Tor_1 = Tor_2 = 0` but `Tor_3 ≠ 0`: not 2-Tor-rigid.
    NotTwoRigid,
}

/// A pair `(catalog[first], catalog[second])` witnessing a failure of
/// rigidity of the first module.
#[derive(Clone, Debug, Serialize)]
pub struct RigidityViolation {
    pub first: usize,
    pub second: usize,
    pub kind: ViolationKind,
    /// `tor_zero[i-1]` is the verdict for `Tor_i` over the window.
    pub tor_zero: Vec<bool>,
}

/// Cyclic modules `R/(v)`, `R/(v^2)` for each variable, and `k`.
pub fn default_catalog(ring: &QuotientRing) -> Result<Vec<(String, PresentedModule)>> {
    let mut out = Vec::new();
    for i in 0..ring.nvars() {
        let v = ring.var(i);
        for g in [v.clone(), v.mul(&v)] {
            let j = RIdeal::new(ring, vec![g.clone()]);
            if j.gens().is_empty() {
                continue;
            }
            out.push((format!("R/({g})"), PresentedModule::cyclic(ring, &j)?));
        }
    }
    out.push(("k".to_string(), PresentedModule::residue_field(ring)));
    Ok(out)
}

/// Exhaustive Tor table over ordered pairs of the catalog for
/// `i = 1..=window`, returning every rigidity violation.
pub fn rigidity_search(ring: &QuotientRing, catalog: &[PresentedModule], window: usize) -> Result<Vec<RigidityViolation>> {
    if window < 2 {
        return Err(Error::Input("rigidity search needs a window of at least 2".into()));
    }
    if catalog.iter().any(|m| m.ring() != ring) {
        return Err(Error::SignatureMismatch);
    }
    let resolutions = catalog
        .par_iter()
        .map(|m| FreeResolution::compute(m, window + 1))
        .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> =
        (0..catalog.len()).flat_map(|a| (0..catalog.len()).map(move |b| (a, b))).collect();
    let found = pairs
        .par_iter()
        .map(|&(a, b)| -> Result<Option<RigidityViolation>> {
            let mut tor_zero = Vec::with_capacity(window);
            for i in 1..=window {
                tor_zero.push(tor_is_zero_from(&resolutions[a], &catalog[b], i)?);
            }
            let kind = if tor_zero[0] && !tor_zero[1] {
                Some(ViolationKind::NotRigid)
            } else if window >= 3 && tor_zero[0] && tor_zero[1] && !tor_zero[2] {
                Some(ViolationKind::NotTwoRigid)
            } else {
                None
            };
            Ok(kind.map(|kind| RigidityViolation { first: a, second: b, kind, tor_zero }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(found.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::ring::make_ring;

    #[test]
    fn node_catalog_has_a_witness() {
        let r = make_ring(Field::Rationals, &["x", "y"], &["x*y"]).unwrap();
        let cat: Vec<_> = default_catalog(&r).unwrap().into_iter().map(|c| c.1).collect();
        assert_eq!(cat.len(), 5);
        let v = rigidity_search(&r, &cat, 3).unwrap();
        assert!(v.iter().any(|w| w.first == 0 && w.second == 2 && w.kind == ViolationKind::NotRigid));
        assert!(v.iter().all(|w| w.kind == ViolationKind::NotRigid));
    }

    #[test]
    fn regular_ring_has_none() {
        let r = make_ring(Field::Rationals, &["x", "y"], &[]).unwrap();
        let cat: Vec<_> = default_catalog(&r).unwrap().into_iter().map(|c| c.1).collect();
        assert!(rigidity_search(&r, &cat, 3).unwrap().is_empty());
        let frees = vec![PresentedModule::free(&r, &[0]), PresentedModule::free(&r, &[1, 2])];
        assert!(rigidity_search(&r, &frees, 3).unwrap().is_empty());
    }
}
