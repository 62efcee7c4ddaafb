//! Gaussian steerability of one group of modes by another, the search for
//! critical channel transmissions, and the monogamy and cluster diagnostics
//! built on it.

mod monogamy;
mod nullifiers;

pub use monogamy::{
    audit_monogamy, audit_monogamy_labeled, audit_monogamy_unrestricted, enumerate_instances,
    enumerate_multimode_steered, enumerate_outside_specification, MonogamyParties, MonogamyReport,
    RelationType, Term,
};
pub use nullifiers::{
    nullifier_variances, vlf_inseparability, Inseparability, NullifierVariances,
    INSEPARABILITY_BOUND, NULLIFIER_NAMES,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::labels::{default_labels, format_partition};
use crate::states::{apply_loss, square_cluster, LossChannel};
use crate::symplectic::{
    schur_complement, symplectic_eigenvalues, CovarianceMatrix, ModePartition,
};

/// Symplectic eigenvalues of the Schur complement count toward the
/// quantifier only below `1 − EIGENVALUE_CUTOFF`.
pub const EIGENVALUE_CUTOFF: f64 = 1e-10;

/// `G > STEERING_THRESHOLD` is the single "steering exists" predicate.
pub const STEERING_THRESHOLD: f64 = 1e-9;

/// Lower end of the transmission scan.
pub const ETA_SCAN_MIN: f64 = 1e-4;
/// Number of points in the scan preceding bisection.
pub const ETA_SCAN_POINTS: usize = 101;
/// Bisection stops once the bracket is this narrow.
pub const CRITICAL_ETA_TOLERANCE: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SteeringReport {
    pub partition: ModePartition,
    pub value: f64,
    pub contributing_eigenvalues: Vec<f64>,
    pub direction_label: String,
}

impl SteeringReport {
    pub fn steers(&self) -> bool {
        self.value > STEERING_THRESHOLD
    }
}

/// Steerability of the steered party by the steering party under Gaussian
/// measurements: `max{0, −Σ ln ν̄_j}` over the symplectic eigenvalues
/// `ν̄_j < 1` of the Schur complement of the steering block. Modes outside
/// the partition are traced out.
pub fn gaussian_steering(cm: &CovarianceMatrix, part: &ModePartition) -> Result<SteeringReport> {
    gaussian_steering_labeled(cm, part, &default_labels(cm.n_modes()))
}

pub fn gaussian_steering_labeled(
    cm: &CovarianceMatrix,
    part: &ModePartition,
    labels: &[String],
) -> Result<SteeringReport> {
    let conditional = schur_complement(cm, part)?;
    let contributing: Vec<f64> = symplectic_eigenvalues(&conditional)?
        .into_iter()
        .filter(|&nu| nu < 1.0 - EIGENVALUE_CUTOFF)
        .collect();
    let value = contributing.iter().map(|nu| -nu.ln()).sum::<f64>().max(0.0);
    Ok(SteeringReport {
        partition: part.clone(),
        value,
        contributing_eigenvalues: contributing,
        direction_label: format_partition(labels, part),
    })
}

/// Just the steering value.
pub fn steering_value(cm: &CovarianceMatrix, part: &ModePartition) -> Result<f64> {
    let conditional = schur_complement(cm, part)?;
    Ok(symplectic_eigenvalues(&conditional)?
        .into_iter()
        .filter(|&nu| nu < 1.0 - EIGENVALUE_CUTOFF)
        .map(|nu| -nu.ln())
        .sum::<f64>()
        .max(0.0))
}

/// Square cluster with loss `eta` on `lossy_mode`.
pub fn lossy_cluster(r: f64, lossy_mode: usize, eta: f64) -> Result<CovarianceMatrix> {
    apply_loss(&square_cluster(r)?, &LossChannel::new(lossy_mode, eta)?)
}

/// Outcome of a critical-transmission search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "eta", rename_all = "snake_case")]
pub enum Crossing {
    /// Steering switches on or off at this transmission.
    Threshold(f64),
    /// No steering anywhere on the scanned range.
    NeverSteers,
    /// Steering everywhere on the scanned range.
    AlwaysSteers,
}

impl Crossing {
    pub fn eta(&self) -> Option<f64> {
        match self {
            Crossing::Threshold(eta) => Some(*eta),
            _ => None,
        }
    }
}

/// Transmission on `lossy_mode` at which steering across `part` of the
/// square cluster with squeezing `r` appears or disappears.
pub fn critical_eta(r: f64, part: &ModePartition, lossy_mode: usize) -> Result<Crossing> {
    let n_modes = square_cluster(r)?.n_modes();
    part.check_range(n_modes)?;
    if lossy_mode >= n_modes {
        return Err(Error::domain(format!(
            "lossy mode {lossy_mode} out of range"
        )));
    }
    critical_eta_by(|eta| steering_value(&lossy_cluster(r, lossy_mode, eta)?, part))
}

/// Critical point of an arbitrary steering curve `G(η)` on `[1e-4, 1]`.
///
/// The curve is scanned on a uniform grid first; more than one change of
/// the steering predicate is an error rather than being silently resolved.
pub fn critical_eta_by<F>(mut g: F) -> Result<Crossing>
where
    F: FnMut(f64) -> Result<f64>,
{
    let step = (1.0 - ETA_SCAN_MIN) / (ETA_SCAN_POINTS - 1) as f64;
    let grid: Vec<f64> = (0..ETA_SCAN_POINTS)
        .map(|i| {
            if i + 1 == ETA_SCAN_POINTS {
                1.0
            } else {
                ETA_SCAN_MIN + step * i as f64
            }
        })
        .collect();
    let mut flags = Vec::with_capacity(grid.len());
    for &eta in &grid {
        flags.push(g(eta)? > STEERING_THRESHOLD);
    }
    let brackets: Vec<(f64, f64)> = flags
        .windows(2)
        .zip(grid.windows(2))
        .filter(|(f, _)| f[0] != f[1])
        .map(|(_, e)| (e[0], e[1]))
        .collect();
    match brackets.as_slice() {
        [] if flags[0] => Ok(Crossing::AlwaysSteers),
        [] => Ok(Crossing::NeverSteers),
        [(lo, hi)] => {
            let (mut lo, mut hi) = (*lo, *hi);
            let low_flag = flags[grid.iter().position(|&e| e == lo).unwrap()];
            while hi - lo > CRITICAL_ETA_TOLERANCE {
                let mid = 0.5 * (lo + hi);
                if (g(mid)? > STEERING_THRESHOLD) == low_flag {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Ok(Crossing::Threshold(0.5 * (lo + hi)))
        }
        _ => Err(Error::MultiCrossing {
            intervals: brackets,
        }),
    }
}
