//! Nullifier variances and the van Loock–Furusawa full-inseparability test
//! for the square cluster with modes `A, B, C, D` (A–B and C–D diagonal).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::symplectic::CovarianceMatrix;

/// Inseparability requires every pair sum below this (vacuum units).
pub const INSEPARABILITY_BOUND: f64 = 4.0;

pub const NULLIFIER_NAMES: [&str; 4] = ["pA-xC-xD", "pB-xC-xD", "pC-xA-xB", "pD-xA-xB"];

/// `(p-mode, neighbour, neighbour)` for each nullifier.
const NULLIFIERS: [(usize, usize, usize); 4] = [(0, 2, 3), (1, 2, 3), (2, 0, 1), (3, 0, 1)];

/// Nullifier pairs summed by the four inequalities.
const VLF_PAIRS: [(usize, usize); 4] = [(0, 2), (0, 3), (1, 2), (1, 3)];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NullifierVariances {
    pub variances: [f64; 4],
    /// Relative to the three-term shot-noise level.
    pub db: [f64; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Inseparability {
    pub combos: [f64; 4],
    pub fully_inseparable: bool,
}

fn check_four_modes(cm: &CovarianceMatrix) -> Result<()> {
    if cm.n_modes() != 4 {
        return Err(Error::Arity(format!(
            "square-cluster diagnostics need 4 modes, got {}",
            cm.n_modes()
        )));
    }
    Ok(())
}

pub fn nullifier_variances(cm: &CovarianceMatrix) -> Result<NullifierVariances> {
    check_four_modes(cm)?;
    let mut variances = [0.0; 4];
    for (slot, &(p_mode, n1, n2)) in variances.iter_mut().zip(&NULLIFIERS) {
        let mut v = [0.0; 8];
        v[2 * p_mode + 1] = 1.0;
        v[2 * n1] = -1.0;
        v[2 * n2] = -1.0;
        *slot = cm.quadratic_form(&v);
    }
    let db = variances.map(|v| 10.0 * (v / 3.0).log10());
    Ok(NullifierVariances { variances, db })
}

pub fn vlf_inseparability(cm: &CovarianceMatrix) -> Result<Inseparability> {
    let nullifiers = nullifier_variances(cm)?;
    let combos = VLF_PAIRS.map(|(i, j)| nullifiers.variances[i] + nullifiers.variances[j]);
    Ok(Inseparability {
        fully_inseparable: combos.iter().all(|&c| c < INSEPARABILITY_BOUND),
        combos,
    })
}
