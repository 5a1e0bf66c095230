//! Random matrices, vectors and subspace data for sweeps and self-tests.
//!
//! Matrices with a prescribed rank are synthesized as `U · diag(σ) · V*` with
//! random unitary factors and singular values in [0.5, 2], so rank decisions
//! in the generated instances are never borderline.

use rand::Rng as _;
use std::f64::consts::TAU;

use crate::error::Result;
use crate::mat::{orthonormalize_columns, C64, Mat, Tolerances};
use crate::projector::orthogonal_projector;
use crate::rng::Rng;
use crate::subspace::{null_space, orthogonal_complement, range_space};

/// Standard complex Gaussian (Box–Muller; real and imaginary parts N(0, 1/2)).
pub fn gaussian_c64(rng: &mut Rng) -> C64 {
    let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let v: f64 = rng.gen_range(0.0..TAU);
    let r = (-u.ln()).sqrt();
    C64::new(r * v.cos(), r * v.sin())
}

/// Uniform sample from the closed unit disc.
pub fn unit_disc(rng: &mut Rng) -> C64 {
    let r = rng.gen_range(0.0..=1.0_f64).sqrt();
    let theta = rng.gen_range(0.0..TAU);
    C64::new(r * theta.cos(), r * theta.sin())
}

pub fn gaussian_mat(rows: usize, cols: usize, rng: &mut Rng) -> Mat {
    Mat::from_fn(rows, cols, |_, _| gaussian_c64(rng))
}

/// Haar-ish random unitary: orthonormalized complex Gaussian.
pub fn random_unitary(n: usize, rng: &mut Rng) -> Mat {
    loop {
        let q = orthonormalize_columns(&gaussian_mat(n, n, rng), 1e-10);
        if q.cols() == n {
            return q;
        }
        // A Gaussian matrix is singular with probability zero; retry anyway.
    }
}

/// Random matrix with exactly the given rank and singular values in [0.5, 2].
pub fn matrix_with_rank(rows: usize, cols: usize, rank: usize, rng: &mut Rng) -> Mat {
    assert!(rank <= rows.min(cols));
    let u = random_unitary(rows, rng);
    let v = random_unitary(cols, rng);
    let mut sigma = Mat::zeros(rows, cols);
    for i in 0..rank {
        sigma[(i, i)] = C64::new(rng.gen_range(0.5..2.0), 0.0);
    }
    &(&u * &sigma) * &v.adjoint()
}

/// Random unit vector in ℂ^n (n×1).
pub fn unit_vector(n: usize, rng: &mut Rng) -> Mat {
    loop {
        let v = gaussian_mat(n, 1, rng);
        let norm = v.frobenius_norm();
        if norm > 1e-6 {
            return v.scale_re(1.0 / norm);
        }
    }
}

/// Random shape within the sweep envelope (rows ≤ 16, cols ≤ 12).
pub fn random_shape(rng: &mut Rng) -> (usize, usize) {
    (rng.gen_range(1..=16), rng.gen_range(1..=12))
}

/// Random rank for a shape, cycling through full / deficient / zero profiles.
pub fn random_rank_profile(rows: usize, cols: usize, profile: usize, rng: &mut Rng) -> usize {
    let k = rows.min(cols);
    match profile % 3 {
        0 => k,
        1 => {
            if k > 1 {
                rng.gen_range(1..k)
            } else {
                k
            }
        }
        _ => 0,
    }
}

/// Perturbation direction with range inside R(T): `T·M + P_{R(T)}·G` with
/// small random factors. Under the smallness gate this preserves the rank.
pub fn range_preserving_direction(t: &Mat, rng: &mut Rng, tol: &Tolerances) -> Result<Mat> {
    let (m, n) = t.shape();
    let mixing = gaussian_mat(n, n, rng).scale_re(0.3);
    let p_range = orthogonal_projector(&range_space(t, tol)?).matrix;
    let extra = &p_range * &gaussian_mat(m, n, rng).scale_re(0.3);
    Ok(&(t * &mixing) + &extra)
}

/// Perturbation direction vanishing on N(T): `G · P_{N(T)^⊥}`. Under the
/// smallness gate the perturbed operator keeps the same null space.
pub fn null_preserving_direction(t: &Mat, rng: &mut Rng, tol: &Tolerances) -> Result<Mat> {
    let (m, n) = t.shape();
    let p_co_null = orthogonal_projector(&orthogonal_complement(&null_space(t, tol)?)).matrix;
    Ok(&gaussian_mat(m, n, rng) * &p_co_null)
}

/// Rank-one direction `u v*` with `u ∈ R(T)^⊥` and `v ∈ N(T)`: any positive
/// multiple strictly increases the rank. `None` when T has full rank and no
/// jump is possible.
pub fn rank_jumping_direction(t: &Mat, rng: &mut Rng, tol: &Tolerances) -> Result<Option<Mat>> {
    let range_co = orthogonal_complement(&range_space(t, tol)?);
    let null = null_space(t, tol)?;
    if range_co.dim() == 0 || null.dim() == 0 {
        return Ok(None);
    }
    let u = {
        let coeffs = gaussian_mat(range_co.dim(), 1, rng);
        let raw = range_co.basis() * &coeffs;
        let norm = raw.frobenius_norm();
        raw.scale_re(1.0 / norm)
    };
    let v = {
        let coeffs = gaussian_mat(null.dim(), 1, rng);
        let raw = null.basis() * &coeffs;
        let norm = raw.frobenius_norm();
        raw.scale_re(1.0 / norm)
    };
    Ok(Some(&u * &v.adjoint()))
}

/// Scale a direction so that `‖δT‖ · t_plus_norm = target < 1`. Directions of
/// negligible norm (and the zero-operator case) are returned unscaled.
pub fn scale_to_gate(direction: &Mat, t_plus_norm: f64, target: f64) -> Result<Mat> {
    debug_assert!(target < 1.0);
    let norm = direction.spectral_norm()?;
    if norm <= 1e-14 || t_plus_norm == 0.0 {
        return Ok(direction.clone());
    }
    Ok(direction.scale_re(target / (norm * t_plus_norm)))
}
