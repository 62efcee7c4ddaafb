//! The four-mode square cluster state and its beam-splitter network.

use std::f64::consts::PI;

use nalgebra::{Complex, DMatrix};

use super::{
    beamsplitter, check_squeezing, phase_rotation, squeezed_vacuum, tensor, unitary_to_symplectic,
    SqueezedInputSpec, SqueezedQuadrature,
};
use crate::error::Result;
use crate::symplectic::{CovarianceMatrix, SymplecticTransform};

/// Squeezing parameter of the reference experiment.
pub const DEFAULT_SQUEEZING: f64 = 0.345;

/// `(T1, T2, T3)` of the three beam splitters.
pub const DEFAULT_TRANSMITTANCES: (f64, f64, f64) = (0.2, 0.5, 0.5);

/// Inputs 1 and 4 are phase-squeezed, 2 and 3 amplitude-squeezed.
pub const CLUSTER_INPUT_QUADRATURES: [SqueezedQuadrature; 4] = [
    SqueezedQuadrature::Phase,
    SqueezedQuadrature::Amplitude,
    SqueezedQuadrature::Amplitude,
    SqueezedQuadrature::Phase,
];

/// Mode transformation of the network; rows are the outputs A, B, C, D.
pub fn cluster_network_unitary() -> DMatrix<Complex<f64>> {
    let h = (0.5f64).sqrt();
    let t = (0.4f64).sqrt();
    let s = (0.1f64).sqrt();
    let re = |v: f64| Complex::new(v, 0.0);
    let im = |v: f64| Complex::new(0.0, v);
    let zero = re(0.0);
    DMatrix::from_row_slice(
        4,
        4,
        &[
            re(-h),
            re(-t),
            im(-s),
            zero, //
            re(h),
            re(-t),
            im(-s),
            zero, //
            zero,
            im(s),
            re(t),
            re(-h), //
            zero,
            im(s),
            re(t),
            re(h),
        ],
    )
}

/// Square cluster state from four equally squeezed inputs.
pub fn square_cluster(r: f64) -> Result<CovarianceMatrix> {
    square_cluster_with([r; 4])
}

/// Square cluster state with a separate squeezing parameter per input.
pub fn square_cluster_with(r: [f64; 4]) -> Result<CovarianceMatrix> {
    let inputs = r
        .iter()
        .zip(CLUSTER_INPUT_QUADRATURES)
        .map(|(&ri, q)| squeezed_vacuum(SqueezedInputSpec::new(ri, q)?))
        .collect::<Result<Vec<_>>>()?;
    for ri in r {
        check_squeezing(ri)?;
    }
    let network = unitary_to_symplectic(&cluster_network_unitary())?;
    network.apply(&tensor(&inputs)?)
}

/// Result of composing the elementary optics and comparing with the
/// network matrix.
#[derive(Debug, Clone)]
pub struct NetworkCheck {
    pub composed: SymplecticTransform,
    pub direct: SymplecticTransform,
    pub max_deviation: f64,
}

/// Composes `F4 F3 I1(−1) B34(T3) F4 B12(T2) B23(T1) F3` (rightmost acts
/// first) and reports its largest entrywise deviation from the lifted
/// network matrix.
pub fn verify_network_decomposition(t1: f64, t2: f64, t3: f64) -> Result<NetworkCheck> {
    let n = 4;
    let f = |k: usize| phase_rotation(n, k, PI / 2.0);
    let flip = |k: usize| phase_rotation(n, k, PI);
    let chain = [
        f(3)?,
        f(2)?,
        flip(0)?,
        beamsplitter(n, 2, 3, t3)?,
        f(3)?,
        beamsplitter(n, 0, 1, t2)?,
        beamsplitter(n, 1, 2, t1)?,
        f(2)?,
    ];
    let composed = chain
        .iter()
        .fold(SymplecticTransform::identity(n), |acc, s| acc.compose(s));
    let direct = unitary_to_symplectic(&cluster_network_unitary())?;
    let max_deviation = (composed.matrix() - direct.matrix()).amax();
    Ok(NetworkCheck {
        composed,
        direct,
        max_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::unitarity_defect;
    use crate::symplectic::symplectic_eigenvalues;

    /// Expands each output quadrature in the input vacuum quadratures
    /// directly from the output-mode expressions and the squeezed inputs,
    /// without going through the symplectic lift.
    fn brute_force_cluster(r: f64) -> DMatrix<f64> {
        // a_k = (g_x x_k + i g_p p_k) / 2 with vacuum quadratures x_k, p_k
        let gains = [
            ((r).exp(), (-r).exp()),
            ((-r).exp(), (r).exp()),
            ((-r).exp(), (r).exp()),
            ((r).exp(), (-r).exp()),
        ];
        let u = cluster_network_unitary();
        // row: output quadrature, column: input vacuum quadrature (x1,p1,...)
        let mut coeff = DMatrix::<f64>::zeros(8, 8);
        for j in 0..4 {
            for k in 0..4 {
                let z = u[(j, k)];
                let (gx, gp) = gains[k];
                // x_out = a + a†  -> 2 Re(z a_k) = Re z gx x_k - Im z gp p_k
                coeff[(2 * j, 2 * k)] += z.re * gx;
                coeff[(2 * j, 2 * k + 1)] -= z.im * gp;
                // p_out = (a - a†)/i -> 2 Im(z a_k) = Im z gx x_k + Re z gp p_k
                coeff[(2 * j + 1, 2 * k)] += z.im * gx;
                coeff[(2 * j + 1, 2 * k + 1)] += z.re * gp;
            }
        }
        &coeff * coeff.transpose()
    }

    #[test]
    fn network_matrix_is_unitary() {
        assert!(unitarity_defect(&cluster_network_unitary()) < 1e-15);
    }

    #[test]
    fn matches_brute_force_expansion() {
        for r in [0.0, 0.1, 0.345, 1.0] {
            let cm = square_cluster(r).unwrap();
            let expected = brute_force_cluster(r);
            assert!((cm.matrix() - expected).amax() < 1e-12, "r = {r}");
        }
    }

    #[test]
    fn mode_a_block_at_default_squeezing() {
        // Var(x_A) = ½ e^{2r} + ⅖ e^{-2r} + ⅒ e^{2r}, Var(p_A) = ½ e^{-2r} + ⅖ e^{2r} + ⅒ e^{-2r}
        let r = DEFAULT_SQUEEZING;
        let (up, down) = ((2.0 * r).exp(), (-2.0 * r).exp());
        let a = square_cluster(r).unwrap().restrict(&[0]).unwrap();
        assert!((a.matrix()[(0, 0)] - (0.6 * up + 0.4 * down)).abs() < 1e-12);
        assert!((a.matrix()[(1, 1)] - (0.4 * up + 0.6 * down)).abs() < 1e-12);
        let det = a.matrix().determinant();
        assert!(det >= 1.0);
    }

    #[test]
    fn no_squeezing_gives_vacuum() {
        let cm = square_cluster(0.0).unwrap();
        assert!((cm.matrix() - DMatrix::<f64>::identity(8, 8)).amax() < 1e-15);
    }

    #[test]
    fn cluster_is_pure() {
        for r in [0.0, 0.1, 0.345, 1.0] {
            let nu = symplectic_eigenvalues(&square_cluster(r).unwrap()).unwrap();
            assert!(nu.iter().all(|v| (v - 1.0).abs() < 1e-9), "r = {r}: {nu:?}");
        }
    }

    #[test]
    fn unequal_squeezing_constructor() {
        let cm = square_cluster_with([0.2, 0.3, 0.4, 0.5]).unwrap();
        let nu = symplectic_eigenvalues(&cm).unwrap();
        assert!(nu.iter().all(|v| (v - 1.0).abs() < 1e-9));
        assert!(square_cluster_with([0.2, -0.3, 0.4, 0.5]).is_err());
        assert!(square_cluster(-1.0).is_err());
    }

    #[test]
    fn decomposition_reproduces_network_matrix() {
        let (t1, t2, t3) = DEFAULT_TRANSMITTANCES;
        let check = verify_network_decomposition(t1, t2, t3).unwrap();
        eprintln!("network decomposition deviation: {:e}", check.max_deviation);
        assert!(check.max_deviation < 1e-12);
    }

    #[test]
    fn decomposition_is_sensitive_to_transmittance() {
        let check = verify_network_decomposition(0.3, 0.5, 0.5).unwrap();
        assert!(check.max_deviation > 1e-3);
    }
}
