//! Dense complex matrices and the factorization machinery built on them.
//!
//! `Mat` is the sole operator representation in this crate: a row-major dense
//! matrix over ℂ (`Complex64`). Real inputs are embedded with zero imaginary
//! parts; the adjoint is always the conjugate transpose. The singular value
//! decomposition is computed by a one-sided Jacobi iteration, which at the
//! intended scale (≤ 64×64) is both fast and accurate to a few ulps even for
//! rank-deficient inputs. Everything downstream — rank decisions, spectral
//! norms, inversions with condition control — is derived from it.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

/// Numerical policy knobs shared by every operation.
///
/// `rank_rel` is the relative singular-value cutoff (a singular value counts
/// toward the rank when it exceeds `rank_rel · σ_max · max(rows, cols)`),
/// `eq_abs` the base absolute tolerance for matrix equality (scaled by
/// `max(1, operand norm)` at use sites), and `cond_max` the largest condition
/// estimate accepted by [`Mat::solve_inverse`].
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Tolerances {
    pub rank_rel: f64,
    pub eq_abs: f64,
    pub cond_max: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rank_rel: 1e-10,
            eq_abs: 1e-8,
            cond_max: 1e12,
        }
    }
}

impl Tolerances {
    /// Equality tolerance scaled for operands of the given norm.
    pub fn eq_scaled(&self, operand_norm: f64) -> f64 {
        self.eq_abs * operand_norm.max(1.0)
    }

    /// Check the invariants (all strictly positive, `rank_rel < 1`).
    pub fn validate(&self) -> Result<()> {
        let ok = self.rank_rel > 0.0
            && self.rank_rel < 1.0
            && self.eq_abs > 0.0
            && self.cond_max > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "invalid tolerances: rank_rel={} eq_abs={} cond_max={}",
                self.rank_rel, self.eq_abs, self.cond_max
            )))
        }
    }
}

/// Dense complex matrix, row-major.
///
/// Zero-sized dimensions are permitted so that the trivial subspace can carry
/// an (empty) basis matrix; file I/O and the CLI only ever produce matrices
/// with positive dimensions.
#[derive(Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    entries: Vec<C64>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:.4}{:+.4}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Mat {
    /// Build a matrix from row-major entries, validating the size and that
    /// every entry is finite.
    pub fn new(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        if !entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::Parse("non-finite matrix entry".into()));
        }
        Ok(Mat { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            entries: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Mat { rows, cols, entries }
    }

    /// Matrix from real row-major data.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        let entries = data.iter().map(|&x| C64::new(x, 0.0)).collect();
        Mat::new(rows, cols, entries)
    }

    /// Square diagonal matrix from complex diagonal entries.
    pub fn diag(d: &[C64]) -> Self {
        let n = d.len();
        Mat::from_fn(n, n, |i, j| if i == j { d[i] } else { C64::new(0.0, 0.0) })
    }

    /// Square diagonal matrix from real diagonal entries.
    pub fn diag_real(d: &[f64]) -> Self {
        let dc: Vec<C64> = d.iter().map(|&x| C64::new(x, 0.0)).collect();
        Mat::diag(&dc)
    }

    /// Column vector (n×1) from complex entries.
    pub fn col_vec(v: &[C64]) -> Self {
        Mat {
            rows: v.len(),
            cols: 1,
            entries: v.to_vec(),
        }
    }

    /// Column vector (n×1) from real entries.
    pub fn col_vec_real(v: &[f64]) -> Self {
        Mat::col_vec(&v.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    /// Conjugate transpose. `adjoint(adjoint(a)) == a` exactly.
    pub fn adjoint(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: C64) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_re(&self, s: f64) -> Mat {
        self.scale(C64::new(s, 0.0))
    }

    /// Extract column `j` as an n×1 matrix.
    pub fn column(&self, j: usize) -> Mat {
        Mat::from_fn(self.rows, 1, |i, _| self[(i, j)])
    }

    /// Horizontal concatenation. All parts must have the same row count;
    /// zero-column parts are allowed.
    pub fn hstack(parts: &[&Mat]) -> Mat {
        let rows = parts.first().map(|m| m.rows).unwrap_or(0);
        assert!(parts.iter().all(|m| m.rows == rows), "hstack: row mismatch");
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zeros(rows, cols);
        let mut off = 0;
        for part in parts {
            for i in 0..rows {
                for j in 0..part.cols {
                    out[(i, off + j)] = part[(i, j)];
                }
            }
            off += part.cols;
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Frobenius-norm comparison against an absolute tolerance.
    pub fn approx_eq(&self, other: &Mat, tol: f64) -> bool {
        self.shape() == other.shape() && (self - other).frobenius_norm() <= tol
    }

    /// Largest singular value (operator norm).
    pub fn spectral_norm(&self) -> Result<f64> {
        Ok(self.svd()?.singular_values.first().copied().unwrap_or(0.0))
    }

    /// Number of singular values above `rank_rel · σ_max · max(rows, cols)`.
    pub fn rank_tol(&self, tol: &Tolerances) -> Result<usize> {
        Ok(self.svd()?.rank(tol))
    }

    /// Inverse of a square matrix through the SVD, refused when the condition
    /// estimate σ_max/σ_min exceeds `tol.cond_max`.
    pub fn solve_inverse(&self, tol: &Tolerances) -> Result<Mat> {
        assert!(self.is_square(), "solve_inverse: matrix must be square");
        let n = self.rows;
        if n == 0 {
            return Ok(Mat::zeros(0, 0));
        }
        let svd = self.svd()?;
        let smax = svd.singular_values[0];
        let smin = svd.singular_values[n - 1];
        let cond = if smin > 0.0 { smax / smin } else { f64::INFINITY };
        if !cond.is_finite() || cond > tol.cond_max {
            return Err(Error::Singular {
                cond,
                limit: tol.cond_max,
            });
        }
        let inv_sigma: Vec<f64> = svd.singular_values.iter().map(|&s| 1.0 / s).collect();
        Ok(&(&svd.vstar.adjoint() * &Mat::diag_real(&inv_sigma)) * &svd.u.adjoint())
    }

    /// Full singular value decomposition `A = U Σ V*` with unitary `U` (m×m)
    /// and `V*` (n×n), singular values sorted non-increasing.
    pub fn svd(&self) -> Result<Svd> {
        svd_full(self)
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl std::ops::Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        assert_eq!(self.shape(), rhs.shape(), "add: shape mismatch");
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl std::ops::Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        assert_eq!(self.shape(), rhs.shape(), "sub: shape mismatch");
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl std::ops::Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        assert_eq!(
            self.cols, rhs.rows,
            "mul: {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl std::ops::Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        self.scale_re(-1.0)
    }
}

/// Result of [`Mat::svd`]: `u · diag(singular_values) · vstar` reconstructs
/// the input; `u` and `vstar` are square unitary, the singular values are
/// non-negative and sorted non-increasing (length `min(rows, cols)`).
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: Mat,
    pub singular_values: Vec<f64>,
    pub vstar: Mat,
}

impl Svd {
    pub fn rows(&self) -> usize {
        self.u.rows()
    }

    pub fn cols(&self) -> usize {
        self.vstar.cols()
    }

    /// Rank under the relative cutoff `rank_rel · σ_max · max(rows, cols)`.
    pub fn rank(&self, tol: &Tolerances) -> usize {
        let smax = self.singular_values.first().copied().unwrap_or(0.0);
        let cutoff = tol.rank_rel * smax * self.rows().max(self.cols()) as f64;
        self.singular_values.iter().filter(|&&s| s > cutoff).count()
    }

    /// Rebuild `u · Σ · vstar`.
    pub fn reconstruct(&self) -> Mat {
        let (m, n) = (self.rows(), self.cols());
        let mut sigma = Mat::zeros(m, n);
        for (i, &s) in self.singular_values.iter().enumerate() {
            sigma[(i, i)] = C64::new(s, 0.0);
        }
        &(&self.u * &sigma) * &self.vstar
    }

    /// Moore–Penrose inverse `V Σ⁺ U*` with the rank cutoff applied.
    pub fn pseudoinverse(&self, tol: &Tolerances) -> Mat {
        let (m, n) = (self.rows(), self.cols());
        let r = self.rank(tol);
        let mut sigma_plus = Mat::zeros(n, m);
        for i in 0..r {
            sigma_plus[(i, i)] = C64::new(1.0 / self.singular_values[i], 0.0);
        }
        &(&self.vstar.adjoint() * &sigma_plus) * &self.u.adjoint()
    }
}

const MAX_JACOBI_SWEEPS: usize = 64;

/// One-sided Jacobi SVD for a tall matrix (rows ≥ cols). Returns the rotated
/// columns (whose norms are the singular values) and the accumulated right
/// factor `V` (n×n unitary).
fn jacobi_one_sided(a: &Mat) -> Result<(Vec<Vec<C64>>, Mat)> {
    let (m, n) = a.shape();
    let mut cols: Vec<Vec<C64>> = (0..n)
        .map(|j| (0..m).map(|i| a[(i, j)]).collect())
        .collect();
    let mut v = Mat::identity(n);

    let mut converged = n < 2;
    for _sweep in 0..MAX_JACOBI_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = C64::new(0.0, 0.0);
                for i in 0..m {
                    alpha += cols[p][i].norm_sqr();
                    beta += cols[q][i].norm_sqr();
                    gamma += cols[p][i].conj() * cols[q][i];
                }
                let g = gamma.norm();
                if alpha == 0.0 || beta == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // Unitary 2x2 that diagonalizes the Gram matrix [[α, γ], [γ̄, β]]:
                // a phase on column p makes the cross term real, then a real
                // Jacobi rotation annihilates it.
                let w = gamma / g;
                let tau = (beta - alpha) / (2.0 * g);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let ap = cols[p][i];
                    let aq = cols[q][i];
                    cols[p][i] = w * ap * c - aq * s;
                    cols[q][i] = w * ap * s + aq * c;
                }
                for i in 0..n {
                    let vp = v[(i, p)];
                    let vq = v[(i, q)];
                    v[(i, p)] = w * vp * c - vq * s;
                    v[(i, q)] = w * vp * s + vq * c;
                }
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::NonConvergence);
    }
    Ok((cols, v))
}

/// Full SVD of a tall matrix (rows ≥ cols): sorts, normalizes, and completes
/// `U` to a square unitary.
fn svd_tall(a: &Mat) -> Result<Svd> {
    let (m, n) = a.shape();
    debug_assert!(m >= n);
    let (cols, v) = jacobi_one_sided(a)?;

    let mut norms: Vec<f64> = cols
        .iter()
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap());
    let sigma_max = order.first().map(|&i| norms[i]).unwrap_or(0.0);

    // Columns whose norm is meaningfully above underflow noise keep their
    // rotated direction; the rest are replaced by basis completion.
    let direction_floor = sigma_max * 1e-150;
    let mut u = Mat::zeros(m, m);
    let mut kept = Vec::new();
    let mut pending = Vec::new();
    for (slot, &src) in order.iter().enumerate() {
        if norms[src] > direction_floor && norms[src] > 0.0 {
            for i in 0..m {
                u[(i, slot)] = cols[src][i] / norms[src];
            }
            kept.push(slot);
        } else {
            norms[src] = 0.0;
            pending.push(slot);
        }
    }
    let kept_basis = Mat::from_fn(m, kept.len(), |i, j| u[(i, kept[j])]);
    let extension = complete_orthonormal(&kept_basis);
    // Fill the zero-σ slots first, then the m−n extra columns of a full U.
    let mut ext_col = 0;
    for slot in pending {
        for i in 0..m {
            u[(i, slot)] = extension[(i, ext_col)];
        }
        ext_col += 1;
    }
    for slot in n..m {
        for i in 0..m {
            u[(i, slot)] = extension[(i, ext_col)];
        }
        ext_col += 1;
    }

    let singular_values: Vec<f64> = order.iter().map(|&i| norms[i]).collect();
    let vstar = Mat::from_fn(n, n, |i, j| v[(j, order[i])].conj());
    Ok(Svd {
        u,
        singular_values,
        vstar,
    })
}

fn svd_full(a: &Mat) -> Result<Svd> {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return Ok(Svd {
            u: Mat::identity(m),
            singular_values: vec![],
            vstar: Mat::identity(n),
        });
    }
    if m >= n {
        svd_tall(a)
    } else {
        // A = (A*)* : run the tall path on the adjoint and swap factors.
        let svd = svd_tall(&a.adjoint())?;
        Ok(Svd {
            u: svd.vstar.adjoint(),
            singular_values: svd.singular_values,
            vstar: svd.u.adjoint(),
        })
    }
}

/// Extend `basis` (orthonormal columns in ℂ^n) to a full orthonormal basis,
/// returning the n−k new columns. Candidates are drawn from the canonical
/// basis with max-residual pivoting and twice-through modified Gram–Schmidt.
pub(crate) fn complete_orthonormal(basis: &Mat) -> Mat {
    let n = basis.rows();
    let k = basis.cols();
    let mut chosen: Vec<Vec<C64>> = (0..k)
        .map(|j| (0..n).map(|i| basis[(i, j)]).collect())
        .collect();
    let mut out = Mat::zeros(n, n - k);
    for step in 0..(n - k) {
        let mut best: Option<(f64, Vec<C64>)> = None;
        for cand in 0..n {
            let mut v: Vec<C64> = (0..n)
                .map(|i| {
                    if i == cand {
                        C64::new(1.0, 0.0)
                    } else {
                        C64::new(0.0, 0.0)
                    }
                })
                .collect();
            for _pass in 0..2 {
                for col in &chosen {
                    let proj: C64 = col.iter().zip(&v).map(|(c, x)| c.conj() * x).sum();
                    for i in 0..n {
                        v[i] -= proj * col[i];
                    }
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if best.as_ref().map(|(b, _)| norm > *b).unwrap_or(true) {
                best = Some((norm, v));
            }
        }
        let (norm, v) = best.expect("ambient dimension exhausted");
        debug_assert!(norm > 1e-8, "basis completion lost orthogonality");
        let unit: Vec<C64> = v.iter().map(|z| z / norm).collect();
        for i in 0..n {
            out[(i, step)] = unit[i];
        }
        chosen.push(unit);
    }
    out
}

/// Orthonormalize the columns of `a` by modified Gram–Schmidt with
/// reorthogonalization, dropping columns whose residual falls below
/// `drop_tol` relative to the largest column norm. Returns the resulting
/// orthonormal columns.
pub(crate) fn orthonormalize_columns(a: &Mat, drop_tol: f64) -> Mat {
    let (m, n) = a.shape();
    let scale = (0..n)
        .map(|j| {
            (0..m)
                .map(|i| a[(i, j)].norm_sqr())
                .sum::<f64>()
                .sqrt()
        })
        .fold(0.0_f64, f64::max);
    let mut kept: Vec<Vec<C64>> = Vec::new();
    for j in 0..n {
        let mut v: Vec<C64> = (0..m).map(|i| a[(i, j)]).collect();
        for _pass in 0..2 {
            for col in &kept {
                let proj: C64 = col.iter().zip(&v).map(|(c, x)| c.conj() * x).sum();
                for i in 0..m {
                    v[i] -= proj * col[i];
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > drop_tol * scale.max(1.0) {
            kept.push(v.iter().map(|z| z / norm).collect());
        }
    }
    Mat::from_fn(m, kept.len(), |i, j| kept[j][i])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// Independent singular-value oracle for 2×2 matrices: σ² are the
    /// eigenvalues of A*A, from the closed-form quadratic.
    fn singular_values_2x2(a: &Mat) -> (f64, f64) {
        let g = &a.adjoint() * a;
        let tr = g[(0, 0)].re + g[(1, 1)].re;
        let det = (g[(0, 0)] * g[(1, 1)] - g[(0, 1)] * g[(1, 0)]).re;
        let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
        let l1 = 0.5 * (tr + disc);
        let l2 = 0.5 * (tr - disc).max(0.0);
        (l1.sqrt(), l2.sqrt())
    }

    #[test]
    fn adjoint_identity_and_conjugation() {
        assert_eq!(Mat::identity(3).adjoint(), Mat::identity(3));
        let a = Mat::new(1, 1, vec![c(0.0, 1.0)]).unwrap();
        assert_eq!(a.adjoint()[(0, 0)], c(0.0, -1.0));
        let b = Mat::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        let bt = b.adjoint();
        assert_eq!(bt[(0, 1)], c(3.0, 0.0));
        assert_eq!(bt[(1, 0)], c(2.0, 0.0));
    }

    #[test]
    fn adjoint_is_involution() {
        let a = Mat::from_fn(3, 5, |i, j| c(i as f64 + 0.5, j as f64 - 1.0));
        assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn svd_diagonal() {
        let a = Mat::diag_real(&[3.0, 2.0, 0.0]);
        let svd = a.svd().unwrap();
        assert!((svd.singular_values[0] - 3.0).abs() < 1e-14);
        assert!((svd.singular_values[1] - 2.0).abs() < 1e-14);
        assert!(svd.singular_values[2].abs() < 1e-14);
        assert!(svd.reconstruct().approx_eq(&a, 1e-13));
    }

    #[test]
    fn svd_zero_matrix() {
        let a = Mat::zeros(2, 2);
        let svd = a.svd().unwrap();
        assert_eq!(svd.singular_values, vec![0.0, 0.0]);
        // u and vstar must still be unitary
        assert!((&svd.u.adjoint() * &svd.u).approx_eq(&Mat::identity(2), 1e-14));
        assert!((&svd.vstar * &svd.vstar.adjoint()).approx_eq(&Mat::identity(2), 1e-14));
    }

    #[test]
    fn svd_permutation_self_consistent() {
        let a = Mat::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let svd = a.svd().unwrap();
        assert!((svd.singular_values[0] - 1.0).abs() < 1e-14);
        assert!((svd.singular_values[1] - 1.0).abs() < 1e-14);
        assert!(svd.reconstruct().approx_eq(&a, 1e-13));
    }

    #[test]
    fn svd_matches_2x2_oracle() {
        let samples = [
            Mat::from_real(2, 2, &[1.0, 1.0, 1.0, 1.0]).unwrap(),
            Mat::new(2, 2, vec![c(1.0, 2.0), c(-0.5, 0.3), c(0.0, -1.0), c(2.0, 0.0)]).unwrap(),
            Mat::new(2, 2, vec![c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)]).unwrap(),
        ];
        for a in &samples {
            let (s1, s2) = singular_values_2x2(a);
            let svd = a.svd().unwrap();
            assert!((svd.singular_values[0] - s1).abs() <= 1e-12 * s1.max(1.0));
            assert!((svd.singular_values[1] - s2).abs() <= 1e-12 * s1.max(1.0));
        }
    }

    #[test]
    fn rank_cutoff() {
        let tol = Tolerances::default();
        assert_eq!(Mat::identity(4).rank_tol(&tol).unwrap(), 4);
        let tiny = Mat::diag_real(&[1.0, 1e-300]);
        let t12 = Tolerances {
            rank_rel: 1e-12,
            ..tol
        };
        assert_eq!(tiny.rank_tol(&t12).unwrap(), 1);
        let ones = Mat::from_real(2, 2, &[1.0, 1.0, 1.0, 1.0]).unwrap();
        assert_eq!(ones.rank_tol(&tol).unwrap(), 1);
        assert_eq!(Mat::zeros(3, 2).rank_tol(&tol).unwrap(), 0);
    }

    #[test]
    fn spectral_norm_examples() {
        assert!((Mat::identity(5).spectral_norm().unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(Mat::zeros(3, 3).spectral_norm().unwrap(), 0.0);
        let a = Mat::diag_real(&[3.0, 4.0]);
        assert!((a.spectral_norm().unwrap() - 4.0).abs() < 1e-14);
    }

    #[test]
    fn solve_inverse_examples() {
        let tol = Tolerances::default();
        let inv = Mat::identity(3).solve_inverse(&tol).unwrap();
        assert!(inv.approx_eq(&Mat::identity(3), 1e-13));

        let d = Mat::diag_real(&[2.0, 4.0]);
        let dinv = d.solve_inverse(&tol).unwrap();
        assert!(dinv.approx_eq(&Mat::diag_real(&[0.5, 0.25]), 1e-13));

        // I plus a strictly nilpotent part: Neumann series terminates.
        let a = Mat::from_real(2, 2, &[1.0, 0.5, 0.0, 1.0]).unwrap();
        let ainv = a.solve_inverse(&tol).unwrap();
        assert!(ainv.approx_eq(
            &Mat::from_real(2, 2, &[1.0, -0.5, 0.0, 1.0]).unwrap(),
            1e-13
        ));
        assert!((&a * &ainv).approx_eq(&Mat::identity(2), 1e-13));
        assert!((&ainv * &a).approx_eq(&Mat::identity(2), 1e-13));
    }

    #[test]
    fn solve_inverse_rejects_singular() {
        let tol = Tolerances::default();
        let s = Mat::from_real(2, 2, &[1.0, 1.0, 1.0, 1.0]).unwrap();
        match s.solve_inverse(&tol) {
            Err(Error::Singular { .. }) => {}
            other => panic!("expected Singular, got {other:?}"),
        }
    }

    #[test]
    fn complete_orthonormal_spans_complement() {
        let b = Mat::from_fn(3, 1, |i, _| {
            if i == 0 {
                c(1.0 / 2f64.sqrt(), 0.0)
            } else if i == 1 {
                c(0.0, 1.0 / 2f64.sqrt())
            } else {
                c(0.0, 0.0)
            }
        });
        let ext = complete_orthonormal(&b);
        assert_eq!(ext.shape(), (3, 2));
        let full = Mat::hstack(&[&b, &ext]);
        assert!((&full.adjoint() * &full).approx_eq(&Mat::identity(3), 1e-13));
    }

    #[test]
    fn svd_rectangular_factors_unitary() {
        let a = Mat::from_fn(5, 3, |i, j| c((i * 3 + j) as f64 * 0.3 - 1.0, (i + j) as f64 * 0.1));
        let svd = a.svd().unwrap();
        assert_eq!(svd.u.shape(), (5, 5));
        assert_eq!(svd.vstar.shape(), (3, 3));
        assert!((&svd.u.adjoint() * &svd.u).approx_eq(&Mat::identity(5), 1e-13));
        assert!((&svd.vstar * &svd.vstar.adjoint()).approx_eq(&Mat::identity(3), 1e-13));
        assert!(svd.reconstruct().approx_eq(&a, 1e-12));

        let wide = a.adjoint();
        let svd_w = wide.svd().unwrap();
        assert_eq!(svd_w.u.shape(), (3, 3));
        assert_eq!(svd_w.vstar.shape(), (5, 5));
        assert!(svd_w.reconstruct().approx_eq(&wide, 1e-12));
    }

    #[test]
    fn pseudoinverse_of_diag() {
        let tol = Tolerances::default();
        let a = Mat::diag_real(&[2.0, 1.0, 0.0]);
        let p = a.svd().unwrap().pseudoinverse(&tol);
        assert!(p.approx_eq(&Mat::diag_real(&[0.5, 1.0, 0.0]), 1e-13));
    }
}
