//! Covariance matrices, the symplectic form and the linear-algebra kernels
//! everything else is built on.
//!
//! Quadratures are ordered interleaved, `(x1, p1, x2, p2, ...)`, and
//! normalized so that the vacuum has unit variance in every quadrature.

mod document;

pub use document::{CovarianceDocument, INTERLEAVED_ORDERING};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Minimum symplectic eigenvalue (minus this slack) a physical state may have.
pub const PHYSICALITY_TOLERANCE: f64 = 1e-9;
/// Smallest eigenvalue of a steering block that still counts as invertible.
pub const SINGULAR_BLOCK_CUTOFF: f64 = 1e-10;
/// Relative tolerance when pairing the `±iν` eigenvalues of `Ω·σ`.
pub const PAIRING_TOLERANCE: f64 = 1e-9;
/// Largest allowed `‖S Ω Sᵀ − Ω‖_max` for a symplectic transform.
pub const SYMPLECTIC_TOLERANCE: f64 = 1e-10;

/// Real symmetric `2n × 2n` matrix of quadrature covariances.
///
/// Physicality is not enforced here: Schur complements share this type
/// and may violate the uncertainty principle.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    n_modes: usize,
    data: DMatrix<f64>,
}

impl CovarianceMatrix {
    /// Builds a covariance matrix, symmetrizing the input.
    pub fn new(data: DMatrix<f64>) -> Result<Self> {
        let (rows, cols) = data.shape();
        if rows != cols {
            return Err(Error::domain(format!(
                "covariance matrix must be square, got {rows}x{cols}"
            )));
        }
        if rows == 0 || rows % 2 != 0 {
            return Err(Error::domain(format!(
                "covariance matrix dimension must be a positive even number, got {rows}"
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("covariance matrix has non-finite entries"));
        }
        let data = (&data + data.transpose()) * 0.5;
        Ok(CovarianceMatrix {
            n_modes: rows / 2,
            data,
        })
    }

    /// Vacuum state on `n_modes` modes (the identity).
    pub fn vacuum(n_modes: usize) -> Self {
        assert!(n_modes > 0, "vacuum needs at least one mode");
        CovarianceMatrix {
            n_modes,
            data: DMatrix::identity(2 * n_modes, 2 * n_modes),
        }
    }

    /// Builds from row-major entries.
    pub fn from_row_slice(n_modes: usize, entries: &[f64]) -> Result<Self> {
        let dim = 2 * n_modes;
        if entries.len() != dim * dim {
            return Err(Error::domain(format!(
                "expected {} entries for {n_modes} modes, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Self::new(DMatrix::from_row_slice(dim, dim, entries))
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn dim(&self) -> usize {
        2 * self.n_modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.data
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.data
    }

    /// Row-major copy of the entries.
    pub fn to_row_major(&self) -> Vec<f64> {
        let dim = self.dim();
        let mut out = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                out.push(self.data[(i, j)]);
            }
        }
        out
    }

    /// Variance `vᵀσv` of the quadrature combination with coefficients `v`.
    pub fn quadratic_form(&self, v: &[f64]) -> f64 {
        assert_eq!(v.len(), self.dim(), "coefficient vector has wrong length");
        let mut acc = 0.0;
        for (i, vi) in v.iter().enumerate() {
            if *vi == 0.0 {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                acc += vi * self.data[(i, j)] * vj;
            }
        }
        acc
    }

    /// The `2 × 2` block coupling modes `j` and `k`.
    pub fn block(&self, j: usize, k: usize) -> [[f64; 2]; 2] {
        let d = &self.data;
        [
            [d[(2 * j, 2 * k)], d[(2 * j, 2 * k + 1)]],
            [d[(2 * j + 1, 2 * k)], d[(2 * j + 1, 2 * k + 1)]],
        ]
    }

    /// Principal submatrix on the given modes, kept in the order given.
    pub fn restrict(&self, modes: &[usize]) -> Result<CovarianceMatrix> {
        if modes.is_empty() {
            return Err(Error::domain("cannot restrict to an empty mode set"));
        }
        if let Some(&bad) = modes.iter().find(|&&m| m >= self.n_modes) {
            return Err(Error::domain(format!(
                "mode index {bad} out of range for a {}-mode state",
                self.n_modes
            )));
        }
        let rows = quadrature_indices(modes);
        let sub = DMatrix::from_fn(rows.len(), rows.len(), |i, j| self.data[(rows[i], rows[j])]);
        Ok(CovarianceMatrix {
            n_modes: modes.len(),
            data: sub,
        })
    }

    /// Matrix in block ordering `(x1, x2, ..., p1, p2, ...)`.
    pub fn to_block_ordering(&self) -> DMatrix<f64> {
        let perm = interleaved_to_block(self.n_modes);
        DMatrix::from_fn(self.dim(), self.dim(), |i, j| self.data[(perm[i], perm[j])])
    }

    /// Inverse of [`CovarianceMatrix::to_block_ordering`].
    pub fn from_block_ordering(block: DMatrix<f64>) -> Result<Self> {
        let dim = block.nrows();
        if !dim.is_multiple_of(2) || block.ncols() != dim {
            return Err(Error::domain(
                "block-ordered matrix must be square with even dimension",
            ));
        }
        let perm = interleaved_to_block(dim / 2);
        let mut data = DMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                data[(perm[i], perm[j])] = block[(i, j)];
            }
        }
        Self::new(data)
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &CovarianceMatrix) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// `perm[i]` is the interleaved index of block-ordered position `i`.
fn interleaved_to_block(n_modes: usize) -> Vec<usize> {
    (0..n_modes)
        .map(|k| 2 * k)
        .chain((0..n_modes).map(|k| 2 * k + 1))
        .collect()
}

pub(crate) fn quadrature_indices(modes: &[usize]) -> Vec<usize> {
    modes.iter().flat_map(|&m| [2 * m, 2 * m + 1]).collect()
}

/// The symplectic form `Ω = ⊕ [[0, 1], [-1, 0]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm {
    n_modes: usize,
    matrix: DMatrix<f64>,
}

impl SymplecticForm {
    pub fn new(n_modes: usize) -> Self {
        let mut matrix = DMatrix::zeros(2 * n_modes, 2 * n_modes);
        for k in 0..n_modes {
            matrix[(2 * k, 2 * k + 1)] = 1.0;
            matrix[(2 * k + 1, 2 * k)] = -1.0;
        }
        SymplecticForm { n_modes, matrix }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }
}

/// `‖S Ω Sᵀ − Ω‖_max` for a square matrix of even dimension.
pub fn symplectic_defect(s: &DMatrix<f64>) -> f64 {
    let omega = SymplecticForm::new(s.nrows() / 2);
    let diff = s * omega.matrix() * s.transpose() - omega.matrix();
    diff.amax()
}

/// A Gaussian unitary acting on quadratures: `σ ↦ S σ Sᵀ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticTransform {
    n_modes: usize,
    matrix: DMatrix<f64>,
}

impl SymplecticTransform {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        let (rows, cols) = matrix.shape();
        if rows != cols || rows == 0 || rows % 2 != 0 {
            return Err(Error::domain(format!(
                "symplectic matrix must be square with positive even dimension, got {rows}x{cols}"
            )));
        }
        if matrix.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("symplectic matrix has non-finite entries"));
        }
        let defect = symplectic_defect(&matrix);
        if defect > SYMPLECTIC_TOLERANCE {
            return Err(Error::domain(format!(
                "matrix is not symplectic: max |S Ω Sᵀ - Ω| = {defect:e}"
            )));
        }
        Ok(SymplecticTransform {
            n_modes: rows / 2,
            matrix,
        })
    }

    pub fn identity(n_modes: usize) -> Self {
        SymplecticTransform {
            n_modes,
            matrix: DMatrix::identity(2 * n_modes, 2 * n_modes),
        }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// `self · other`, i.e. `other` acts first.
    pub fn compose(&self, other: &SymplecticTransform) -> SymplecticTransform {
        assert_eq!(self.n_modes, other.n_modes, "mode count mismatch");
        SymplecticTransform {
            n_modes: self.n_modes,
            matrix: &self.matrix * &other.matrix,
        }
    }

    pub fn apply(&self, cm: &CovarianceMatrix) -> Result<CovarianceMatrix> {
        if cm.n_modes() != self.n_modes {
            return Err(Error::domain(format!(
                "transform acts on {} modes but the state has {}",
                self.n_modes,
                cm.n_modes()
            )));
        }
        CovarianceMatrix::new(&self.matrix * cm.matrix() * self.matrix.transpose())
    }
}

/// Ordered pair of disjoint, nonempty mode sets: who steers and who is steered.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModePartition {
    steering: Vec<usize>,
    steered: Vec<usize>,
}

impl ModePartition {
    pub fn new(steering: Vec<usize>, steered: Vec<usize>) -> Result<Self> {
        if steering.is_empty() || steered.is_empty() {
            return Err(Error::Arity(
                "both parties of a partition must be nonempty".into(),
            ));
        }
        let mut seen = std::collections::BTreeSet::new();
        for &m in steering.iter().chain(&steered) {
            if !seen.insert(m) {
                return Err(Error::Arity(format!(
                    "mode {m} appears more than once in the partition"
                )));
            }
        }
        Ok(ModePartition { steering, steered })
    }

    pub fn steering(&self) -> &[usize] {
        &self.steering
    }

    pub fn steered(&self) -> &[usize] {
        &self.steered
    }

    /// The partition with the roles swapped.
    pub fn reversed(&self) -> ModePartition {
        ModePartition {
            steering: self.steered.clone(),
            steered: self.steering.clone(),
        }
    }

    /// Steering modes followed by steered modes.
    pub fn modes(&self) -> Vec<usize> {
        self.steering.iter().chain(&self.steered).copied().collect()
    }

    pub fn check_range(&self, n_modes: usize) -> Result<()> {
        match self.modes().into_iter().find(|&m| m >= n_modes) {
            Some(bad) => Err(Error::domain(format!(
                "mode index {bad} out of range for a {n_modes}-mode state"
            ))),
            None => Ok(()),
        }
    }
}

/// Schur complement `B − Cᵀ A⁻¹ C` of the steering block `A`, expressed on
/// the steered modes. Modes outside the partition are ignored.
pub fn schur_complement(cm: &CovarianceMatrix, part: &ModePartition) -> Result<CovarianceMatrix> {
    part.check_range(cm.n_modes())?;
    let a_idx = quadrature_indices(part.steering());
    let b_idx = quadrature_indices(part.steered());
    let d = cm.matrix();
    let a = DMatrix::from_fn(a_idx.len(), a_idx.len(), |i, j| d[(a_idx[i], a_idx[j])]);
    let b = DMatrix::from_fn(b_idx.len(), b_idx.len(), |i, j| d[(b_idx[i], b_idx[j])]);
    let c = DMatrix::from_fn(a_idx.len(), b_idx.len(), |i, j| d[(a_idx[i], b_idx[j])]);

    let min_eigenvalue = a.clone().symmetric_eigenvalues().min();
    if min_eigenvalue.is_nan() || min_eigenvalue <= SINGULAR_BLOCK_CUTOFF {
        return Err(Error::SingularBlock { min_eigenvalue });
    }
    let chol = a
        .cholesky()
        .ok_or(Error::SingularBlock { min_eigenvalue })?;
    let solved = chol.solve(&c);
    CovarianceMatrix::new(b - c.transpose() * solved)
}

/// Symplectic eigenvalues of `cm`, ascending.
pub fn symplectic_eigenvalues(cm: &CovarianceMatrix) -> Result<Vec<f64>> {
    symplectic_spectrum(cm.matrix())
}

/// Moduli of the `±iν` eigenvalue pairs of `Ω·m` for a symmetric `m`,
/// ascending. The input is symmetrized first.
pub fn symplectic_spectrum(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    let dim = m.nrows();
    if dim == 0 || !dim.is_multiple_of(2) || m.ncols() != dim {
        return Err(Error::domain(
            "symplectic spectrum needs a square matrix of even dimension",
        ));
    }
    if m.iter().any(|v| !v.is_finite()) {
        return Err(Error::domain("matrix has non-finite entries"));
    }
    let sym = (m + m.transpose()) * 0.5;
    let omega = SymplecticForm::new(dim / 2);
    let product = omega.matrix() * sym;
    let mut moduli: Vec<f64> = product
        .complex_eigenvalues()
        .iter()
        .map(|z| z.norm())
        .collect();
    moduli.sort_by(f64::total_cmp);

    let mut out = Vec::with_capacity(dim / 2);
    for pair in moduli.chunks_exact(2) {
        let (first, second) = (pair[0], pair[1]);
        let scale = first.abs().max(second.abs()).max(1.0);
        if (second - first).abs() > PAIRING_TOLERANCE * scale {
            return Err(Error::PairingMismatch { first, second });
        }
        out.push(0.5 * (first + second));
    }
    Ok(out)
}

/// Outcome of an uncertainty-principle check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Physicality {
    pub physical: bool,
    pub min_symplectic_eigenvalue: f64,
}

pub fn is_physical(cm: &CovarianceMatrix) -> Result<Physicality> {
    let spectrum = symplectic_eigenvalues(cm)?;
    let min = spectrum.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(Physicality {
        physical: min >= 1.0 - PHYSICALITY_TOLERANCE,
        min_symplectic_eigenvalue: min,
    })
}
