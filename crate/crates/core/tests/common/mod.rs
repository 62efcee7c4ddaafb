//! Test support: a deliberately naive reference implementation of the
//! steering quantifier and generators of random physical states. Nothing
//! here goes through nalgebra or the library's linear algebra.

#![allow(dead_code, clippy::needless_range_loop)]

use rand::Rng;

pub type Mat = Vec<Vec<f64>>;

pub fn zeros(n: usize) -> Mat {
    vec![vec![0.0; n]; n]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    m
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    let mut out = vec![vec![0.0; m]; n];
    for i in 0..n {
        for j in 0..m {
            out[i][j] = (0..k).map(|l| a[i][l] * b[l][j]).sum();
        }
    }
    out
}

pub fn transpose(a: &Mat) -> Mat {
    let (n, m) = (a.len(), a[0].len());
    (0..m).map(|j| (0..n).map(|i| a[i][j]).collect()).collect()
}

/// `S σ Sᵀ`.
pub fn congruence(s: &Mat, sigma: &Mat) -> Mat {
    matmul(&matmul(s, sigma), &transpose(s))
}

pub fn omega(n_modes: usize) -> Mat {
    let mut w = zeros(2 * n_modes);
    for k in 0..n_modes {
        w[2 * k][2 * k + 1] = 1.0;
        w[2 * k + 1][2 * k] = -1.0;
    }
    w
}

/// Gauss-Jordan inversion with partial pivoting.
pub fn invert(a: &Mat) -> Mat {
    let n = a.len();
    let mut aug: Mat = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| aug[x][col].abs().total_cmp(&aug[y][col].abs()))
            .unwrap();
        aug.swap(col, pivot);
        let p = aug[col][col];
        assert!(p.abs() > 1e-300, "singular matrix");
        for v in aug[col].iter_mut() {
            *v /= p;
        }
        for row in 0..n {
            if row != col {
                let f = aug[row][col];
                if f != 0.0 {
                    for j in 0..2 * n {
                        aug[row][j] -= f * aug[col][j];
                    }
                }
            }
        }
    }
    aug.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Cyclic Jacobi eigen-decomposition of a symmetric matrix. Returns the
/// eigenvalues and the matrix whose columns are the eigenvectors.
pub fn jacobi_eigen(a: &Mat) -> (Vec<f64>, Mat) {
    let n = a.len();
    let mut a = a.clone();
    let mut v = identity(n);
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        let scale: f64 = (0..n).map(|i| a[i][i] * a[i][i]).sum::<f64>().max(1e-300);
        if off <= 1e-30 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vkp, vkq) = (row[p], row[q]);
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    ((0..n).map(|i| a[i][i]).collect(), v)
}

pub fn sqrt_psd(a: &Mat) -> Mat {
    let (vals, vecs) = jacobi_eigen(a);
    let n = a.len();
    let mut d = zeros(n);
    for i in 0..n {
        d[i][i] = vals[i].max(0.0).sqrt();
    }
    matmul(&matmul(&vecs, &d), &transpose(&vecs))
}

/// Symplectic eigenvalues, ascending: `ν²` are the (doubly degenerate)
/// eigenvalues of `σ^{1/2} Ωᵀ σ Ω σ^{1/2}`.
pub fn symplectic_eigenvalues(sigma: &Mat) -> Vec<f64> {
    let n_modes = sigma.len() / 2;
    let w = omega(n_modes);
    let root = sqrt_psd(sigma);
    let inner = matmul(&matmul(&transpose(&w), sigma), &w);
    let m = matmul(&matmul(&root, &inner), &root);
    let (mut vals, _) = jacobi_eigen(&m);
    vals.sort_by(f64::total_cmp);
    vals.iter().step_by(2).map(|v| v.max(0.0).sqrt()).collect()
}

fn indices(modes: &[usize]) -> Vec<usize> {
    modes.iter().flat_map(|&m| [2 * m, 2 * m + 1]).collect()
}

fn sub(sigma: &Mat, rows: &[usize], cols: &[usize]) -> Mat {
    rows.iter()
        .map(|&i| cols.iter().map(|&j| sigma[i][j]).collect())
        .collect()
}

/// `max(0, −Σ ln ν)` over `ν < 1` of `B − Cᵀ A⁻¹ C`.
pub fn steering(sigma: &Mat, steering: &[usize], steered: &[usize]) -> f64 {
    let (ia, ib) = (indices(steering), indices(steered));
    let a = sub(sigma, &ia, &ia);
    let b = sub(sigma, &ib, &ib);
    let c = sub(sigma, &ia, &ib);
    let correction = matmul(&matmul(&transpose(&c), &invert(&a)), &c);
    let schur: Mat = b
        .iter()
        .zip(&correction)
        .map(|(br, cr)| br.iter().zip(cr).map(|(x, y)| x - y).collect())
        .collect();
    let schur = symmetrize(&schur);
    symplectic_eigenvalues(&schur)
        .into_iter()
        .filter(|&nu| nu < 1.0)
        .map(|nu| -nu.ln())
        .sum::<f64>()
        .max(0.0)
}

pub fn symmetrize(a: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| 0.5 * (a[i][j] + a[j][i])).collect())
        .collect()
}

pub fn tmsv(r: f64) -> Mat {
    let (c, s) = ((2.0 * r).cosh(), (2.0 * r).sinh());
    vec![
        vec![c, 0.0, s, 0.0],
        vec![0.0, c, 0.0, -s],
        vec![s, 0.0, c, 0.0],
        vec![0.0, -s, 0.0, c],
    ]
}

/// Rotation by `theta` on one mode of `n_modes`.
pub fn rotation(n_modes: usize, mode: usize, theta: f64) -> Mat {
    let mut s = identity(2 * n_modes);
    let (c, sn) = (theta.cos(), theta.sin());
    let k = 2 * mode;
    s[k][k] = c;
    s[k][k + 1] = sn;
    s[k + 1][k] = -sn;
    s[k + 1][k + 1] = c;
    s
}

/// Single-mode squeezer `diag(e^{-s}, e^{s})`.
pub fn squeezer(n_modes: usize, mode: usize, s: f64) -> Mat {
    let mut m = identity(2 * n_modes);
    m[2 * mode][2 * mode] = (-s).exp();
    m[2 * mode + 1][2 * mode + 1] = s.exp();
    m
}

/// Real beam splitter mixing two modes with angle `theta`.
pub fn mixer(n_modes: usize, j: usize, k: usize, theta: f64) -> Mat {
    let mut m = identity(2 * n_modes);
    let (c, s) = (theta.cos(), theta.sin());
    for q in 0..2 {
        let (a, b) = (2 * j + q, 2 * k + q);
        m[a][a] = c;
        m[a][b] = s;
        m[b][a] = -s;
        m[b][b] = c;
    }
    m
}

/// Random passive (photon-number preserving) symplectic.
pub fn random_passive<R: Rng>(rng: &mut R, n_modes: usize) -> Mat {
    let mut s = identity(2 * n_modes);
    for _ in 0..3 * n_modes {
        let m = rng.random_range(0..n_modes);
        s = matmul(
            &rotation(n_modes, m, rng.random_range(0.0..std::f64::consts::TAU)),
            &s,
        );
        if n_modes > 1 {
            let j = rng.random_range(0..n_modes);
            let k = (j + rng.random_range(1..n_modes)) % n_modes;
            s = matmul(
                &mixer(n_modes, j, k, rng.random_range(0.0..std::f64::consts::TAU)),
                &s,
            );
        }
    }
    s
}

/// Random symplectic built as passive · squeezers · passive.
pub fn random_symplectic<R: Rng>(rng: &mut R, n_modes: usize, max_squeeze: f64) -> Mat {
    let mut z = identity(2 * n_modes);
    for m in 0..n_modes {
        z = matmul(
            &squeezer(n_modes, m, rng.random_range(-max_squeeze..max_squeeze)),
            &z,
        );
    }
    matmul(
        &matmul(&random_passive(rng, n_modes), &z),
        &random_passive(rng, n_modes),
    )
}

/// `S (⊕ ν_k I₂) Sᵀ` with thermal `ν_k ∈ [1, 3)`, so physical by construction.
pub fn random_physical<R: Rng>(rng: &mut R, n_modes: usize) -> Mat {
    let mut d = zeros(2 * n_modes);
    for k in 0..n_modes {
        let nu = if rng.random_bool(0.3) {
            1.0
        } else {
            rng.random_range(1.0..3.0)
        };
        d[2 * k][2 * k] = nu;
        d[2 * k + 1][2 * k + 1] = nu;
    }
    symmetrize(&congruence(&random_symplectic(rng, n_modes, 1.0), &d))
}

/// Random single-mode symplectic on each mode.
pub fn random_local<R: Rng>(rng: &mut R, n_modes: usize) -> Mat {
    let mut s = identity(2 * n_modes);
    for m in 0..n_modes {
        let local = matmul(
            &rotation(n_modes, m, rng.random_range(0.0..std::f64::consts::TAU)),
            &matmul(
                &squeezer(n_modes, m, rng.random_range(-1.0..1.0)),
                &rotation(n_modes, m, rng.random_range(0.0..std::f64::consts::TAU)),
            ),
        );
        s = matmul(&local, &s);
    }
    s
}

/// Random disjoint nonempty steering and steered parties.
pub fn random_partition<R: Rng>(rng: &mut R, n_modes: usize) -> (Vec<usize>, Vec<usize>) {
    loop {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for m in 0..n_modes {
            match rng.random_range(0..3) {
                0 => a.push(m),
                1 => b.push(m),
                _ => {}
            }
        }
        if !a.is_empty() && !b.is_empty() {
            return (a, b);
        }
    }
}

pub fn to_cm(m: &Mat) -> cvsteer::CovarianceMatrix {
    let flat: Vec<f64> = m.iter().flatten().copied().collect();
    cvsteer::CovarianceMatrix::from_row_slice(m.len() / 2, &flat).unwrap()
}

pub fn from_cm(cm: &cvsteer::CovarianceMatrix) -> Mat {
    let flat = cm.to_row_major();
    flat.chunks(cm.dim()).map(<[f64]>::to_vec).collect()
}

/// All ordered pairs of disjoint nonempty parties.
pub fn ordered_partitions(n_modes: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for code in 0..3usize.pow(n_modes as u32) {
        let (mut a, mut b, mut c) = (Vec::new(), Vec::new(), code);
        for m in 0..n_modes {
            match c % 3 {
                0 => a.push(m),
                1 => b.push(m),
                _ => {}
            }
            c /= 3;
        }
        if !a.is_empty() && !b.is_empty() {
            out.push((a, b));
        }
    }
    out
}
