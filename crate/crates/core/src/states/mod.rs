//! Constructors for Gaussian states, linear-optics transforms and the lossy
//! channel.

mod cluster;

pub use cluster::{
    cluster_network_unitary, square_cluster, square_cluster_with, verify_network_decomposition,
    NetworkCheck, CLUSTER_INPUT_QUADRATURES, DEFAULT_SQUEEZING, DEFAULT_TRANSMITTANCES,
};

use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symplectic::{CovarianceMatrix, SymplecticTransform};

/// Tolerance on `‖U†U − I‖_max` for mode-mixing matrices.
pub const UNITARITY_TOLERANCE: f64 = 1e-10;

/// Which quadrature carries the reduced noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SqueezedQuadrature {
    /// `x` variance `e^{-2r}`.
    Amplitude,
    /// `p` variance `e^{-2r}`.
    Phase,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SqueezedInputSpec {
    pub r: f64,
    pub squeezed_quadrature: SqueezedQuadrature,
}

impl SqueezedInputSpec {
    pub fn new(r: f64, squeezed_quadrature: SqueezedQuadrature) -> Result<Self> {
        check_squeezing(r)?;
        Ok(SqueezedInputSpec {
            r,
            squeezed_quadrature,
        })
    }
}

pub(crate) fn check_squeezing(r: f64) -> Result<()> {
    if !r.is_finite() || r < 0.0 {
        return Err(Error::domain(format!(
            "squeezing parameter must be finite and non-negative, got {r}"
        )));
    }
    Ok(())
}

/// Single-mode squeezed vacuum.
pub fn squeezed_vacuum(spec: SqueezedInputSpec) -> Result<CovarianceMatrix> {
    check_squeezing(spec.r)?;
    let big = (2.0 * spec.r).exp();
    let small = (-2.0 * spec.r).exp();
    let (vx, vp) = match spec.squeezed_quadrature {
        SqueezedQuadrature::Amplitude => (small, big),
        SqueezedQuadrature::Phase => (big, small),
    };
    CovarianceMatrix::from_row_slice(1, &[vx, 0.0, 0.0, vp])
}

/// Direct sum of uncorrelated states.
pub fn tensor(states: &[CovarianceMatrix]) -> Result<CovarianceMatrix> {
    if states.is_empty() {
        return Err(Error::domain("tensor product of an empty list"));
    }
    let dim: usize = states.iter().map(CovarianceMatrix::dim).sum();
    let mut out = DMatrix::zeros(dim, dim);
    let mut offset = 0;
    for s in states {
        out.view_mut((offset, offset), (s.dim(), s.dim()))
            .copy_from(s.matrix());
        offset += s.dim();
    }
    CovarianceMatrix::new(out)
}

/// Lifts a mode transformation `a' = U a` to quadratures. The `2 × 2` block
/// coupling output mode `j` to input mode `k` is
/// `[[Re U_jk, −Im U_jk], [Im U_jk, Re U_jk]]`.
pub fn unitary_to_symplectic(u: &DMatrix<Complex<f64>>) -> Result<SymplecticTransform> {
    let n = u.nrows();
    if n == 0 || u.ncols() != n {
        return Err(Error::domain(
            "mode transformation must be a nonempty square matrix",
        ));
    }
    let defect = unitarity_defect(u);
    if defect.is_nan() || defect > UNITARITY_TOLERANCE {
        return Err(Error::domain(format!(
            "matrix is not unitary: max |U†U - I| = {defect:e}"
        )));
    }
    let mut s = DMatrix::zeros(2 * n, 2 * n);
    for j in 0..n {
        for k in 0..n {
            let z = u[(j, k)];
            s[(2 * j, 2 * k)] = z.re;
            s[(2 * j, 2 * k + 1)] = -z.im;
            s[(2 * j + 1, 2 * k)] = z.im;
            s[(2 * j + 1, 2 * k + 1)] = z.re;
        }
    }
    SymplecticTransform::new(s)
}

pub fn unitarity_defect(u: &DMatrix<Complex<f64>>) -> f64 {
    let n = u.nrows();
    let gram = u.adjoint() * u;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((gram[(i, j)] - Complex::new(target, 0.0)).norm());
        }
    }
    worst
}

fn check_mode(n: usize, k: usize) -> Result<()> {
    if k >= n {
        return Err(Error::domain(format!(
            "mode index {k} out of range for {n} modes"
        )));
    }
    Ok(())
}

/// Mode-level matrix of a beam splitter between modes `k` and `l`:
/// `(kk) = √(1−T)`, `(kl) = (lk) = √T`, `(ll) = −√(1−T)`.
pub fn beamsplitter_modes(n: usize, k: usize, l: usize, t: f64) -> Result<DMatrix<Complex<f64>>> {
    check_mode(n, k)?;
    check_mode(n, l)?;
    if k == l {
        return Err(Error::domain("beam splitter needs two distinct modes"));
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::domain(format!(
            "transmittance must lie in [0, 1], got {t}"
        )));
    }
    let mut m = DMatrix::identity(n, n);
    let reflect = (1.0 - t).sqrt();
    let transmit = t.sqrt();
    m[(k, k)] = Complex::new(reflect, 0.0);
    m[(k, l)] = Complex::new(transmit, 0.0);
    m[(l, k)] = Complex::new(transmit, 0.0);
    m[(l, l)] = Complex::new(-reflect, 0.0);
    Ok(m)
}

pub fn beamsplitter(n: usize, k: usize, l: usize, t: f64) -> Result<SymplecticTransform> {
    unitary_to_symplectic(&beamsplitter_modes(n, k, l, t)?)
}

/// Mode-level phase shift `a_k → e^{iθ} a_k`.
pub fn phase_rotation_modes(n: usize, k: usize, theta: f64) -> Result<DMatrix<Complex<f64>>> {
    check_mode(n, k)?;
    let mut m = DMatrix::identity(n, n);
    m[(k, k)] = Complex::from_polar(1.0, theta);
    Ok(m)
}

/// Rotation by `theta` in the `(x_k, p_k)` plane. `θ = π/2` maps `a_k → i a_k`;
/// `θ = π` maps `a_k → −a_k`.
pub fn phase_rotation(n: usize, k: usize, theta: f64) -> Result<SymplecticTransform> {
    check_mode(n, k)?;
    let mut s = DMatrix::identity(2 * n, 2 * n);
    let (sin, cos) = theta.sin_cos();
    s[(2 * k, 2 * k)] = cos;
    s[(2 * k, 2 * k + 1)] = -sin;
    s[(2 * k + 1, 2 * k)] = sin;
    s[(2 * k + 1, 2 * k + 1)] = cos;
    SymplecticTransform::new(s)
}

/// Pure loss on one mode: `a' = √η a + √(1−η) v` with `v` in vacuum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossChannel {
    pub mode: usize,
    pub eta: f64,
}

impl LossChannel {
    pub fn new(mode: usize, eta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::domain(format!(
                "transmission efficiency must lie in [0, 1], got {eta}"
            )));
        }
        Ok(LossChannel { mode, eta })
    }

    /// The `X` of `σ ↦ X σ Xᵀ + Y`.
    pub fn x_matrix(&self, n_modes: usize) -> DMatrix<f64> {
        let mut x = DMatrix::identity(2 * n_modes, 2 * n_modes);
        let s = self.eta.sqrt();
        x[(2 * self.mode, 2 * self.mode)] = s;
        x[(2 * self.mode + 1, 2 * self.mode + 1)] = s;
        x
    }

    /// The `Y` of `σ ↦ X σ Xᵀ + Y`.
    pub fn y_matrix(&self, n_modes: usize) -> DMatrix<f64> {
        let mut y = DMatrix::zeros(2 * n_modes, 2 * n_modes);
        y[(2 * self.mode, 2 * self.mode)] = 1.0 - self.eta;
        y[(2 * self.mode + 1, 2 * self.mode + 1)] = 1.0 - self.eta;
        y
    }
}

pub fn apply_loss(cm: &CovarianceMatrix, channel: &LossChannel) -> Result<CovarianceMatrix> {
    let channel = LossChannel::new(channel.mode, channel.eta)?;
    check_mode(cm.n_modes(), channel.mode)?;
    let n = cm.n_modes();
    let x = channel.x_matrix(n);
    CovarianceMatrix::new(&x * cm.matrix() * x.transpose() + channel.y_matrix(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{symplectic_defect, symplectic_eigenvalues};
    use std::f64::consts::PI;

    #[test]
    fn unsqueezed_input_is_vacuum() {
        for q in [SqueezedQuadrature::Amplitude, SqueezedQuadrature::Phase] {
            let cm = squeezed_vacuum(SqueezedInputSpec {
                r: 0.0,
                squeezed_quadrature: q,
            })
            .unwrap();
            assert_eq!(cm, CovarianceMatrix::vacuum(1));
        }
    }

    #[test]
    fn amplitude_squeezed_at_default_r() {
        let cm =
            squeezed_vacuum(SqueezedInputSpec::new(0.345, SqueezedQuadrature::Amplitude).unwrap())
                .unwrap();
        // e^{-0.69}, e^{0.69}
        assert!((cm.matrix()[(0, 0)] - 0.501_576_069_066_055_6).abs() < 1e-12);
        assert!((cm.matrix()[(1, 1)] - 1.993_715_533_243_082_3).abs() < 1e-12);
    }

    #[test]
    fn squeezed_states_are_pure() {
        let cm = squeezed_vacuum(SqueezedInputSpec::new(1.3, SqueezedQuadrature::Phase).unwrap())
            .unwrap();
        let nu = symplectic_eigenvalues(&cm).unwrap();
        assert!((nu[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn negative_squeezing_rejected() {
        assert!(SqueezedInputSpec::new(-0.1, SqueezedQuadrature::Phase).is_err());
        let bad = SqueezedInputSpec {
            r: -0.1,
            squeezed_quadrature: SqueezedQuadrature::Phase,
        };
        assert!(squeezed_vacuum(bad).is_err());
    }

    #[test]
    fn tensor_shapes() {
        let v = CovarianceMatrix::vacuum(1);
        assert_eq!(
            tensor(&[v.clone(), v.clone()]).unwrap(),
            CovarianceMatrix::vacuum(2)
        );
        let x = squeezed_vacuum(SqueezedInputSpec::new(0.2, SqueezedQuadrature::Phase).unwrap())
            .unwrap();
        assert_eq!(tensor(std::slice::from_ref(&x)).unwrap(), x);
        assert!(tensor(&[]).is_err());
    }

    #[test]
    fn full_transmission_splitter_swaps() {
        let s = beamsplitter(2, 0, 1, 1.0).unwrap();
        let m = s.matrix();
        for q in 0..2 {
            assert_eq!(m[(q, q)], 0.0);
            assert_eq!(m[(q, 2 + q)], 1.0);
            assert_eq!(m[(2 + q, q)], 1.0);
            assert_eq!(m[(2 + q, 2 + q)], 0.0);
        }
    }

    #[test]
    fn splitter_rejects_bad_arguments() {
        assert!(beamsplitter(2, 0, 1, 1.5).is_err());
        assert!(beamsplitter(2, 0, 1, -0.1).is_err());
        assert!(beamsplitter(2, 1, 1, 0.5).is_err());
        assert!(beamsplitter(2, 0, 2, 0.5).is_err());
    }

    #[test]
    fn balanced_splitter_makes_two_mode_squeezing() {
        // x-squeezed ⊗ p-squeezed through a 50:50 splitter has
        // A = B = cosh(2r) I and C = ±sinh(2r) Z.
        let r: f64 = 0.4;
        let inputs = tensor(&[
            squeezed_vacuum(SqueezedInputSpec::new(r, SqueezedQuadrature::Amplitude).unwrap())
                .unwrap(),
            squeezed_vacuum(SqueezedInputSpec::new(r, SqueezedQuadrature::Phase).unwrap()).unwrap(),
        ])
        .unwrap();
        let out = beamsplitter(2, 0, 1, 0.5).unwrap().apply(&inputs).unwrap();
        let m = out.matrix();
        let (c, s) = ((2.0 * r).cosh(), (2.0 * r).sinh());
        assert!((m[(0, 0)] - c).abs() < 1e-12);
        assert!((m[(1, 1)] - c).abs() < 1e-12);
        assert!((m[(0, 2)].abs() - s).abs() < 1e-12);
        assert!((m[(1, 3)].abs() - s).abs() < 1e-12);
        assert!((m[(0, 2)] + m[(1, 3)]).abs() < 1e-12, "C block must be ∝ Z");
        assert!(m[(0, 3)].abs() < 1e-12 && m[(1, 2)].abs() < 1e-12);
    }

    #[test]
    fn rotations() {
        assert_eq!(
            phase_rotation(2, 1, 0.0).unwrap(),
            SymplecticTransform::identity(2)
        );
        let pi = phase_rotation(1, 0, PI).unwrap();
        let twice = pi.compose(&pi);
        assert!((twice.matrix() - DMatrix::identity(2, 2)).amax() < 1e-15);

        let r: f64 = 0.3;
        let sq =
            CovarianceMatrix::from_row_slice(1, &[(2.0 * r).exp(), 0.0, 0.0, (-2.0 * r).exp()])
                .unwrap();
        let turned = phase_rotation(1, 0, PI / 2.0).unwrap().apply(&sq).unwrap();
        assert!((turned.matrix()[(0, 0)] - (-2.0 * r).exp()).abs() < 1e-12);
        assert!((turned.matrix()[(1, 1)] - (2.0 * r).exp()).abs() < 1e-12);
    }

    #[test]
    fn rotation_matches_lifted_phase() {
        let direct = phase_rotation(3, 1, 0.7).unwrap();
        let lifted = unitary_to_symplectic(&phase_rotation_modes(3, 1, 0.7).unwrap()).unwrap();
        assert!((direct.matrix() - lifted.matrix()).amax() < 1e-15);
    }

    #[test]
    fn lift_of_identity_and_i() {
        let id = unitary_to_symplectic(&DMatrix::identity(3, 3)).unwrap();
        assert_eq!(id, SymplecticTransform::identity(3));
        let i = DMatrix::from_element(1, 1, Complex::new(0.0, 1.0));
        let f = unitary_to_symplectic(&i).unwrap();
        assert_eq!(
            f.matrix(),
            &DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0])
        );
    }

    #[test]
    fn lift_rejects_non_unitary() {
        let m = DMatrix::from_element(1, 1, Complex::new(1.1, 0.0));
        match unitary_to_symplectic(&m) {
            Err(Error::Domain(msg)) => assert!(msg.contains("not unitary")),
            other => panic!("expected domain error, got {other:?}"),
        }
    }

    #[test]
    fn random_splitters_are_symplectic() {
        for i in 0..20 {
            let t = (i as f64 + 0.5) / 20.0;
            let s = beamsplitter(3, 0, 2, t).unwrap();
            assert!(symplectic_defect(s.matrix()) < 1e-14);
        }
    }

    #[test]
    fn loss_endpoints() {
        let cm = crate::states::square_cluster(0.345).unwrap();
        let same = apply_loss(&cm, &LossChannel::new(0, 1.0).unwrap()).unwrap();
        assert_eq!(same, cm);

        let gone = apply_loss(&cm, &LossChannel::new(0, 0.0).unwrap()).unwrap();
        assert_eq!(
            gone.restrict(&[1, 2, 3]).unwrap(),
            cm.restrict(&[1, 2, 3]).unwrap()
        );
        assert_eq!(gone.restrict(&[0]).unwrap(), CovarianceMatrix::vacuum(1));
        for k in 1..4 {
            assert_eq!(gone.block(0, k), [[0.0; 2]; 2]);
        }
    }

    #[test]
    fn loss_rejects_bad_eta_and_mode() {
        assert!(LossChannel::new(0, 1.01).is_err());
        assert!(LossChannel::new(0, f64::NAN).is_err());
        let cm = CovarianceMatrix::vacuum(2);
        assert!(apply_loss(&cm, &LossChannel { mode: 2, eta: 0.5 }).is_err());
        assert!(apply_loss(&cm, &LossChannel { mode: 0, eta: -0.5 }).is_err());
    }
}
