//! Subspaces of ℂ^n represented by orthonormal bases.
//!
//! Null spaces, ranges, complements (orthogonal and deliberately oblique),
//! membership and equality tests. A subspace is always stored with an
//! orthonormal basis even when it plays the role of a non-orthogonal
//! complement: the obliqueness lives in the projector built from a pair of
//! subspaces, not in the basis itself.

use crate::error::{Error, Result};
use crate::mat::{complete_orthonormal, orthonormalize_columns, Mat, Tolerances};
use crate::rng;
use crate::sampling::unit_disc;

/// A linear subspace of ℂ^ambient_dim with an orthonormal basis as columns.
/// The trivial subspace carries a basis with zero columns.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Mat,
}

impl Subspace {
    /// Wrap a matrix whose columns are already orthonormal.
    pub fn from_orthonormal(basis: Mat) -> Result<Self> {
        let k = basis.cols();
        let gram = &basis.adjoint() * &basis;
        if !gram.approx_eq(&Mat::identity(k), 1e-10 * (k.max(1) as f64)) {
            return Err(Error::Shape("basis columns are not orthonormal".into()));
        }
        if k > basis.rows() {
            return Err(Error::Shape("more basis vectors than ambient dimension".into()));
        }
        Ok(Subspace {
            ambient_dim: basis.rows(),
            basis,
        })
    }

    /// Subspace spanned by the columns of an arbitrary matrix.
    pub fn spanned_by(m: &Mat, tol: &Tolerances) -> Result<Self> {
        range_space(m, tol)
    }

    pub fn trivial(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Mat::zeros(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Mat::identity(ambient_dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    /// Orthogonal projection of a vector onto the subspace.
    pub fn project(&self, v: &Mat) -> Mat {
        &self.basis * &(&self.basis.adjoint() * v)
    }
}

/// Orthonormal basis of {x : Tx = 0}; dimension is cols(T) − rank(T).
pub fn null_space(t: &Mat, tol: &Tolerances) -> Result<Subspace> {
    let svd = t.svd()?;
    Ok(null_space_from_svd(&svd, tol))
}

/// Orthonormal basis of the column space; dimension is rank(T).
pub fn range_space(t: &Mat, tol: &Tolerances) -> Result<Subspace> {
    let svd = t.svd()?;
    Ok(range_space_from_svd(&svd, tol))
}

pub(crate) fn null_space_from_svd(svd: &crate::mat::Svd, tol: &Tolerances) -> Subspace {
    let n = svd.cols();
    let r = svd.rank(tol);
    let v = svd.vstar.adjoint();
    let basis = Mat::from_fn(n, n - r, |i, j| v[(i, r + j)]);
    Subspace {
        ambient_dim: n,
        basis,
    }
}

pub(crate) fn range_space_from_svd(svd: &crate::mat::Svd, tol: &Tolerances) -> Subspace {
    let m = svd.rows();
    let r = svd.rank(tol);
    let basis = Mat::from_fn(m, r, |i, j| svd.u[(i, j)]);
    Subspace {
        ambient_dim: m,
        basis,
    }
}

/// Orthogonal complement, via completion of the basis to a unitary.
pub fn orthogonal_complement(s: &Subspace) -> Subspace {
    Subspace {
        ambient_dim: s.ambient_dim,
        basis: complete_orthonormal(&s.basis),
    }
}

/// A random complement of `s`: generically *not* orthogonal to `s`, but always
/// a direct-sum partner. Construction: take the orthogonal complement's basis
/// and mix in a bounded random combination (unit-disc entries scaled by 0.5)
/// of vectors from `s`, then re-orthonormalize. Deterministic per seed.
pub fn random_complement(s: &Subspace, seed: u64) -> Subspace {
    let n = s.ambient_dim;
    let k = s.dim();
    if k == n {
        return Subspace::trivial(n);
    }
    if k == 0 {
        return Subspace::full(n);
    }
    let mut rng = rng::seeded(seed);
    let w = complete_orthonormal(s.basis());
    let mix = Mat::from_fn(k, n - k, |_, _| unit_disc(&mut rng).scale(0.5));
    let raw = &w + &(s.basis() * &mix);
    let basis = orthonormalize_columns(&raw, 1e-12);
    debug_assert_eq!(basis.cols(), n - k);
    Subspace {
        ambient_dim: n,
        basis,
    }
}

/// True iff a ∩ b = {0}, decided by the rank of the concatenated bases.
pub fn intersection_is_trivial(a: &Subspace, b: &Subspace, tol: &Tolerances) -> Result<bool> {
    assert_eq!(a.ambient_dim, b.ambient_dim, "ambient dimension mismatch");
    let want = a.dim() + b.dim();
    if want > a.ambient_dim {
        return Ok(false);
    }
    let stacked = Mat::hstack(&[a.basis(), b.basis()]);
    Ok(stacked.rank_tol(tol)? == want)
}

/// True iff the subspaces coincide: equal dimensions and each basis vector of
/// one keeps its norm when projected onto the other.
pub fn subspace_equal(a: &Subspace, b: &Subspace, tol: &Tolerances) -> bool {
    assert_eq!(a.ambient_dim, b.ambient_dim, "ambient dimension mismatch");
    if a.dim() != b.dim() {
        return false;
    }
    let residual = |from: &Subspace, to: &Subspace| -> f64 {
        let proj = to.project(from.basis());
        (&proj - from.basis()).frobenius_norm()
    };
    residual(a, b) <= tol.eq_abs && residual(b, a) <= tol.eq_abs
}

/// Membership test: ‖v − P_s v‖ ≤ eq_abs · max(1, ‖v‖).
pub fn contains(s: &Subspace, v: &Mat, tol: &Tolerances) -> bool {
    assert_eq!(v.rows(), s.ambient_dim, "vector not in ambient space");
    assert_eq!(v.cols(), 1, "expected a column vector");
    let r = &s.project(v) - v;
    r.frobenius_norm() <= tol.eq_scaled(v.frobenius_norm())
}
