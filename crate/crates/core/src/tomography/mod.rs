//! Covariance-matrix tomography from homodyne variance measurements.
//!
//! Four modes are probed with 32 variance measurements: every single
//! quadrature, `x_i − x_j` and `p_i − p_j` for each pair, and `x_i + p_j`,
//! `p_i + x_j` for each pair `i < j`. Cross covariances follow from
//!
//! ```text
//! Cov(ξi, ξj) =  ½ [Δ²(ξi + ξj) − Δ²ξi − Δ²ξj]
//! Cov(ξi, ξj) = −½ [Δ²(ξi − ξj) − Δ²ξi − Δ²ξj]
//! ```
//!
//! and same-mode `x`–`p` covariances are set to zero. Means are assumed zero.

mod combo;
mod csv_io;

pub use combo::{Combo, Quadrature, QuadratureTerm};
pub use csv_io::{read_records, write_records};

use std::collections::HashMap;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::symplectic::{is_physical, symplectic_eigenvalues, CovarianceMatrix};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_170_315;

/// Samples per independently seeded block in sampled mode.
const SAMPLE_BLOCK: usize = 16_384;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleCount {
    Exact,
    Samples(u64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasurementRecord {
    pub combo: Combo,
    pub variance: f64,
    pub sample_count: SampleCount,
}

impl MeasurementRecord {
    pub fn new(combo: Combo, variance: f64, sample_count: SampleCount) -> Result<Self> {
        if !variance.is_finite() || variance < 0.0 {
            return Err(Error::domain(format!(
                "variance of {combo} must be finite and non-negative, got {variance}"
            )));
        }
        Ok(MeasurementRecord {
            combo,
            variance,
            sample_count,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimulationMode {
    Exact,
    Sampled { n: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReconstructionSource {
    Exact,
    Sampled { seed: Option<u64>, n: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionResult {
    pub cm: CovarianceMatrix,
    /// Minimum symplectic eigenvalue of the reconstruction.
    pub residual_physicality: f64,
    pub source: ReconstructionSource,
    /// Largest disagreement between the sum and difference estimates of
    /// the same covariance, when both were measured.
    pub identity_discrepancy: Option<f64>,
}

/// The 32 measurement combinations for a four-mode state.
pub fn measurement_plan(n_modes: usize) -> Result<Vec<Combo>> {
    if n_modes != 4 {
        return Err(Error::UnsupportedModeCount(n_modes));
    }
    use Quadrature::{P, X};
    let mut plan = Vec::with_capacity(32);
    for m in 0..n_modes {
        plan.push(Combo::single(m, X));
        plan.push(Combo::single(m, P));
    }
    let pairs: Vec<(usize, usize)> = (0..n_modes)
        .flat_map(|i| (i + 1..n_modes).map(move |j| (i, j)))
        .collect();
    for &(i, j) in &pairs {
        plan.push(Combo::pair((i, X), (j, X), -1));
    }
    for &(i, j) in &pairs {
        plan.push(Combo::pair((i, P), (j, P), -1));
    }
    for &(i, j) in &pairs {
        plan.push(Combo::pair((i, X), (j, P), 1));
    }
    for &(i, j) in &pairs {
        plan.push(Combo::pair((i, P), (j, X), 1));
    }
    Ok(plan)
}

/// Variances of each combination, either exact (`vᵀσv`) or estimated from
/// zero-mean Gaussian samples with covariance `σ`.
pub fn simulate_variances(
    cm: &CovarianceMatrix,
    plan: &[Combo],
    mode: SimulationMode,
) -> Result<Vec<MeasurementRecord>> {
    let physicality = is_physical(cm)?;
    if !physicality.physical {
        return Err(Error::domain(format!(
            "cannot simulate measurements on a non-physical state (min symplectic eigenvalue {})",
            physicality.min_symplectic_eigenvalue
        )));
    }
    let vectors = plan
        .iter()
        .map(|c| c.coefficients(cm.n_modes()))
        .collect::<Result<Vec<_>>>()?;

    match mode {
        SimulationMode::Exact => plan
            .iter()
            .zip(&vectors)
            .map(|(c, v)| {
                MeasurementRecord::new(c.clone(), cm.quadratic_form(v), SampleCount::Exact)
            })
            .collect(),
        SimulationMode::Sampled { n, seed } => {
            let variances = sampled_second_moments(cm, &vectors, n, seed)?;
            plan.iter()
                .zip(variances)
                .map(|(c, v)| MeasurementRecord::new(c.clone(), v, SampleCount::Samples(n)))
                .collect()
        }
    }
}

/// A factor `L` with `L Lᵀ = σ`.
fn covariance_factor(cm: &CovarianceMatrix) -> DMatrix<f64> {
    if let Some(chol) = cm.matrix().clone().cholesky() {
        return chol.l();
    }
    let eig = cm.matrix().clone().symmetric_eigen();
    let roots = eig.eigenvalues.map(|l| l.max(0.0).sqrt());
    &eig.eigenvectors * DMatrix::from_diagonal(&roots)
}

fn sampled_second_moments(
    cm: &CovarianceMatrix,
    vectors: &[Vec<f64>],
    n: u64,
    seed: u64,
) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::domain("sampled mode needs at least one sample"));
    }
    let dim = cm.dim();
    let factor = covariance_factor(cm);
    // vᵀ(Lz) = (Lᵀv)·z
    let weights: Vec<Vec<f64>> = vectors
        .iter()
        .map(|v| {
            (0..dim)
                .map(|k| (0..dim).map(|i| factor[(i, k)] * v[i]).sum())
                .collect()
        })
        .collect();

    let n_blocks = (n as usize).div_ceil(SAMPLE_BLOCK);
    let partials: Vec<Vec<f64>> = (0..n_blocks)
        .into_par_iter()
        .map(|block| {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            rng.set_stream(block as u64);
            let start = block * SAMPLE_BLOCK;
            let count = SAMPLE_BLOCK.min(n as usize - start);
            let mut sums = vec![0.0; weights.len()];
            let mut z = vec![0.0; dim];
            for _ in 0..count {
                for zi in z.iter_mut() {
                    *zi = StandardNormal.sample(&mut rng);
                }
                for (sum, w) in sums.iter_mut().zip(&weights) {
                    let y: f64 = w.iter().zip(&z).map(|(a, b)| a * b).sum();
                    *sum += y * y;
                }
            }
            sums
        })
        .collect();

    let mut totals = vec![0.0; weights.len()];
    for sums in &partials {
        for (t, s) in totals.iter_mut().zip(sums) {
            *t += s;
        }
    }
    Ok(totals.into_iter().map(|t| t / n as f64).collect())
}

/// Rebuilds the covariance matrix from variance records.
pub fn reconstruct(records: &[MeasurementRecord]) -> Result<ReconstructionResult> {
    if records.is_empty() {
        return Err(Error::IncompletePlan(
            "all measurements (no records given)".into(),
        ));
    }
    let n_modes = records
        .iter()
        .flat_map(|r| r.combo.terms().iter().map(|t| t.mode))
        .max()
        .map_or(0, |m| m + 1);
    let dim = 2 * n_modes;

    let mut by_key: HashMap<Combo, f64> = HashMap::new();
    for r in records {
        by_key.insert(r.combo.canonical(), r.variance);
    }

    let quad = |idx: usize| {
        (
            idx / 2,
            if idx.is_multiple_of(2) {
                Quadrature::X
            } else {
                Quadrature::P
            },
        )
    };
    let mut singles = vec![0.0; dim];
    for (idx, slot) in singles.iter_mut().enumerate() {
        let (m, q) = quad(idx);
        let key = Combo::single(m, q);
        *slot = *by_key
            .get(&key)
            .ok_or_else(|| Error::IncompletePlan(key.to_string()))?;
    }

    let mut data = DMatrix::zeros(dim, dim);
    let mut discrepancy: Option<f64> = None;
    for i in 0..dim {
        data[(i, i)] = singles[i];
        for j in (i + 1)..dim {
            let (mi, qi) = quad(i);
            let (mj, qj) = quad(j);
            if mi == mj {
                continue;
            }
            let plus = Combo::pair((mi, qi), (mj, qj), 1);
            let minus = Combo::pair((mi, qi), (mj, qj), -1);
            let from_plus = by_key
                .get(&plus.canonical())
                .map(|v| 0.5 * (v - singles[i] - singles[j]));
            let from_minus = by_key
                .get(&minus.canonical())
                .map(|v| -0.5 * (v - singles[i] - singles[j]));
            let cov = match (from_plus, from_minus) {
                (Some(a), Some(b)) => {
                    let gap = (a - b).abs();
                    discrepancy = Some(discrepancy.map_or(gap, |d: f64| d.max(gap)));
                    0.5 * (a + b)
                }
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (None, None) => {
                    // Name the combination the standard plan uses.
                    let expected = if qi == qj { minus } else { plus };
                    return Err(Error::IncompletePlan(expected.to_string()));
                }
            };
            data[(i, j)] = cov;
            data[(j, i)] = cov;
        }
    }

    let cm = CovarianceMatrix::new(data)?;
    let residual_physicality = symplectic_eigenvalues(&cm)?
        .into_iter()
        .fold(f64::INFINITY, f64::min);

    let sampled = records.iter().find_map(|r| match r.sample_count {
        SampleCount::Samples(n) => Some(n),
        SampleCount::Exact => None,
    });
    let source = match sampled {
        Some(n) => ReconstructionSource::Sampled { seed: None, n },
        None => ReconstructionSource::Exact,
    };
    Ok(ReconstructionResult {
        cm,
        residual_physicality,
        source,
        identity_discrepancy: discrepancy,
    })
}

/// Simulates the standard plan on `cm` and reconstructs from it.
pub fn simulate_and_reconstruct(
    cm: &CovarianceMatrix,
    mode: SimulationMode,
) -> Result<(Vec<MeasurementRecord>, ReconstructionResult)> {
    let plan = measurement_plan(cm.n_modes())?;
    let records = simulate_variances(cm, &plan, mode)?;
    let mut result = reconstruct(&records)?;
    if let SimulationMode::Sampled { n, seed } = mode {
        result.source = ReconstructionSource::Sampled {
            seed: Some(seed),
            n,
        };
    }
    Ok((records, result))
}

/// `‖a − b‖_F / ‖b‖_F`.
pub fn relative_frobenius_error(estimate: &CovarianceMatrix, truth: &CovarianceMatrix) -> f64 {
    (estimate.matrix() - truth.matrix()).norm() / truth.matrix().norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{apply_loss, square_cluster, LossChannel, DEFAULT_SQUEEZING};

    fn cluster(eta: f64) -> CovarianceMatrix {
        apply_loss(
            &square_cluster(DEFAULT_SQUEEZING).unwrap(),
            &LossChannel::new(0, eta).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn plan_has_32_entries() {
        let plan = measurement_plan(4).unwrap();
        assert_eq!(plan.len(), 32);
        let names: Vec<String> = plan.iter().map(|c| c.to_string()).collect();
        assert!(names.contains(&"pC+xD".to_string()));
        assert!(names.contains(&"xA-xB".to_string()));
        for single in ["xA", "pA", "xB", "pB", "xC", "pC", "xD", "pD"] {
            assert!(names.contains(&single.to_string()), "{single}");
        }
        let mut unique = names.clone();
        unique.sort();
        unique.dedup();
        assert_eq!(unique.len(), 32);
    }

    #[test]
    fn plan_rejects_other_mode_counts() {
        assert!(matches!(
            measurement_plan(3),
            Err(Error::UnsupportedModeCount(3))
        ));
    }

    #[test]
    fn vacuum_difference_variance() {
        let plan = vec!["xA-xB".parse::<Combo>().unwrap()];
        let rec =
            simulate_variances(&CovarianceMatrix::vacuum(4), &plan, SimulationMode::Exact).unwrap();
        assert_eq!(rec[0].variance, 2.0);
        assert_eq!(rec[0].sample_count, SampleCount::Exact);
    }

    #[test]
    fn cluster_nullifier_through_simulation() {
        let plan = vec!["pA-xC-xD".parse::<Combo>().unwrap()];
        let rec = simulate_variances(&cluster(1.0), &plan, SimulationMode::Exact).unwrap();
        assert!((rec[0].variance - 1.504_728_207_198_166_7).abs() < 1e-12);
    }

    #[test]
    fn exact_roundtrip() {
        let truth = cluster(0.8);
        let (_, result) = simulate_and_reconstruct(&truth, SimulationMode::Exact).unwrap();
        assert!(result.cm.max_abs_diff(&truth) < 1e-12);
        assert_eq!(result.source, ReconstructionSource::Exact);
        assert!(result.residual_physicality >= 1.0 - 1e-9);
        assert!(result.identity_discrepancy.is_none());
    }

    #[test]
    fn sum_and_difference_estimates_agree_exactly() {
        let truth = cluster(0.6);
        let mut plan = measurement_plan(4).unwrap();
        plan.push("xA+xB".parse().unwrap());
        plan.push("pB-xD".parse().unwrap());
        let records = simulate_variances(&truth, &plan, SimulationMode::Exact).unwrap();
        let result = reconstruct(&records).unwrap();
        assert!(result.identity_discrepancy.unwrap() < 1e-12);
        assert!(result.cm.max_abs_diff(&truth) < 1e-12);
    }

    #[test]
    fn missing_combo_is_named() {
        let truth = cluster(1.0);
        let mut records =
            simulate_variances(&truth, &measurement_plan(4).unwrap(), SimulationMode::Exact)
                .unwrap();
        records.retain(|r| r.combo.to_string() != "pB+xD");
        match reconstruct(&records) {
            Err(Error::IncompletePlan(name)) => assert_eq!(name, "pB+xD"),
            other => panic!("expected incomplete plan, got {other:?}"),
        }
    }

    #[test]
    fn non_physical_state_rejected() {
        let bad = CovarianceMatrix::new(DMatrix::identity(8, 8) * 0.5).unwrap();
        let plan = measurement_plan(4).unwrap();
        assert!(matches!(
            simulate_variances(&bad, &plan, SimulationMode::Exact),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn sampling_is_reproducible_and_seed_dependent() {
        let truth = cluster(0.8);
        let plan = measurement_plan(4).unwrap();
        let a = simulate_variances(
            &truth,
            &plan,
            SimulationMode::Sampled { n: 40_000, seed: 7 },
        )
        .unwrap();
        let b = simulate_variances(
            &truth,
            &plan,
            SimulationMode::Sampled { n: 40_000, seed: 7 },
        )
        .unwrap();
        let c = simulate_variances(
            &truth,
            &plan,
            SimulationMode::Sampled { n: 40_000, seed: 8 },
        )
        .unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn sampling_is_independent_of_thread_count() {
        let truth = cluster(0.8);
        let plan = measurement_plan(4).unwrap();
        let mode = SimulationMode::Sampled { n: 50_000, seed: 3 };
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let four = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap();
        let a = one.install(|| simulate_variances(&truth, &plan, mode).unwrap());
        let b = four.install(|| simulate_variances(&truth, &plan, mode).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn zero_samples_rejected() {
        let plan = measurement_plan(4).unwrap();
        let mode = SimulationMode::Sampled { n: 0, seed: 1 };
        assert!(simulate_variances(&cluster(1.0), &plan, mode).is_err());
    }
}
