//! Projectors onto a subspace along a complement.
//!
//! An oblique projector is fully determined by its range and null space; it is
//! built here by inverting the concatenated basis once. The central identity
//! of the module converts any (not necessarily self-adjoint) projector `P`
//! onto `M` into the orthogonal projector onto the same subspace:
//!
//! ```text
//! P_M^⊥ = P P* [I − (P − P*)²]⁻¹ = [I − (P − P*)²]⁻¹ P P*
//! ```
//!
//! The bracket is Hermitian positive definite (its eigenvalues are ≥ 1), so
//! the inversion is well behaved until the obliqueness ‖P‖ becomes extreme.

use crate::error::{Error, Result};
use crate::mat::{Mat, Tolerances};
use crate::subspace::{intersection_is_trivial, orthogonal_complement, Subspace};

/// An idempotent matrix together with the decomposition that induced it:
/// `matrix` maps the ambient space onto `onto` along `along`.
#[derive(Clone, Debug)]
pub struct Projector {
    pub matrix: Mat,
    pub onto: Subspace,
    pub along: Subspace,
}

impl Projector {
    /// Obliqueness measure ‖P‖; equals 1 for nonzero orthogonal projectors.
    pub fn norm(&self) -> Result<f64> {
        self.matrix.spectral_norm()
    }
}

/// Projector onto `onto` along `along`, for a complementary pair.
pub fn oblique_projector(
    onto: &Subspace,
    along: &Subspace,
    tol: &Tolerances,
) -> Result<Projector> {
    let n = onto.ambient_dim();
    if along.ambient_dim() != n {
        return Err(Error::NotComplementary(
            "subspaces live in different ambient spaces".into(),
        ));
    }
    if onto.dim() + along.dim() != n || !intersection_is_trivial(onto, along, tol)? {
        return Err(Error::NotComplementary(format!(
            "dims {} + {} in ambient {}",
            onto.dim(),
            along.dim(),
            n
        )));
    }
    let k = onto.dim();
    let stacked = Mat::hstack(&[onto.basis(), along.basis()]);
    let inv = stacked.solve_inverse(tol)?;
    let selector = Mat::hstack(&[onto.basis(), &Mat::zeros(n, n - k)]);
    let matrix = &selector * &inv;
    debug_assert!({
        let idem = (&(&matrix * &matrix) - &matrix).frobenius_norm();
        idem <= tol.eq_scaled(matrix.frobenius_norm())
    });
    Ok(Projector {
        matrix,
        onto: onto.clone(),
        along: along.clone(),
    })
}

/// Orthogonal projector onto the subspace, built directly from the basis as
/// `B B*`.
pub fn orthogonal_projector(s: &Subspace) -> Projector {
    Projector {
        matrix: s.basis() * &s.basis().adjoint(),
        onto: s.clone(),
        along: orthogonal_complement(s),
    }
}

/// Replace an oblique projector by the orthogonal projector with the same
/// range, computed as `P P* [I − (P − P*)²]⁻¹`.
pub fn orthogonalize(p: &Projector, tol: &Tolerances) -> Result<Projector> {
    let matrix = orthogonalize_matrix(&p.matrix, tol)?;
    Ok(Projector {
        matrix,
        onto: p.onto.clone(),
        along: orthogonal_complement(&p.onto),
    })
}

pub(crate) fn orthogonalize_matrix(p: &Mat, tol: &Tolerances) -> Result<Mat> {
    let n = p.rows();
    let d = p - &p.adjoint();
    let bracket = &Mat::identity(n) - &(&d * &d);
    let inv = bracket.solve_inverse(tol)?;
    Ok(&(p * &p.adjoint()) * &inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;
    use crate::subspace::{random_complement, range_space, subspace_equal, Subspace};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn span_e2() -> Subspace {
        Subspace::from_orthonormal(Mat::from_real(2, 1, &[0.0, 1.0]).unwrap()).unwrap()
    }

    fn span_diag() -> Subspace {
        let s = 1.0 / 2f64.sqrt();
        Subspace::from_orthonormal(Mat::from_real(2, 1, &[s, s]).unwrap()).unwrap()
    }

    #[test]
    fn oblique_orthogonal_case() {
        let e1 = Subspace::from_orthonormal(Mat::from_real(2, 1, &[1.0, 0.0]).unwrap()).unwrap();
        let p = oblique_projector(&e1, &span_e2(), &tol()).unwrap();
        assert!(p.matrix.approx_eq(&Mat::diag_real(&[1.0, 0.0]), 1e-12));
    }

    #[test]
    fn oblique_full_and_trivial() {
        let full = Subspace::full(3);
        let trivial = Subspace::trivial(3);
        let p = oblique_projector(&full, &trivial, &tol()).unwrap();
        assert!(p.matrix.approx_eq(&Mat::identity(3), 1e-12));
        let q = oblique_projector(&trivial, &full, &tol()).unwrap();
        assert!(q.matrix.approx_eq(&Mat::zeros(3, 3), 1e-12));
    }

    #[test]
    fn oblique_hand_example() {
        // Onto span{e2} along span{(1,1)}: P(1,1) = 0, P(0,1) = (0,1).
        let p = oblique_projector(&span_e2(), &span_diag(), &tol()).unwrap();
        let expect = Mat::from_real(2, 2, &[0.0, 0.0, -1.0, 1.0]).unwrap();
        assert!(p.matrix.approx_eq(&expect, 1e-12));
        let idem = &(&p.matrix * &p.matrix) - &p.matrix;
        assert!(idem.frobenius_norm() <= 1e-12);
    }

    #[test]
    fn oblique_rejects_non_complementary() {
        let e2 = span_e2();
        match oblique_projector(&e2, &e2, &tol()) {
            Err(Error::NotComplementary(_)) => {}
            other => panic!("expected NotComplementary, got {other:?}"),
        }
    }

    #[test]
    fn orthogonal_projector_examples() {
        let e1 = Subspace::from_orthonormal(Mat::from_real(2, 1, &[1.0, 0.0]).unwrap()).unwrap();
        assert!(orthogonal_projector(&e1)
            .matrix
            .approx_eq(&Mat::diag_real(&[1.0, 0.0]), 1e-14));

        let trivial = Subspace::trivial(2);
        assert!(orthogonal_projector(&trivial)
            .matrix
            .approx_eq(&Mat::zeros(2, 2), 1e-14));

        let diag = span_diag();
        let half = Mat::from_real(2, 2, &[0.5, 0.5, 0.5, 0.5]).unwrap();
        assert!(orthogonal_projector(&diag).matrix.approx_eq(&half, 1e-14));
    }

    #[test]
    fn orthogonalize_hand_example() {
        let p = oblique_projector(&span_e2(), &span_diag(), &tol()).unwrap();
        let q = orthogonalize(&p, &tol()).unwrap();
        assert!(q.matrix.approx_eq(&Mat::diag_real(&[0.0, 1.0]), 1e-12));
        // cross-check against the basis-built orthogonal projector
        assert!(q
            .matrix
            .approx_eq(&orthogonal_projector(&span_e2()).matrix, 1e-12));
    }

    #[test]
    fn orthogonalize_fixed_point_on_self_adjoint() {
        let diag = span_diag();
        let p = orthogonal_projector(&diag);
        let q = orthogonalize(&p, &tol()).unwrap();
        assert!(q.matrix.approx_eq(&p.matrix, 1e-12));

        let id = Projector {
            matrix: Mat::identity(3),
            onto: Subspace::full(3),
            along: Subspace::trivial(3),
        };
        assert!(orthogonalize(&id, &tol())
            .unwrap()
            .matrix
            .approx_eq(&Mat::identity(3), 1e-12));
    }

    #[test]
    fn orthogonalize_matches_basis_built_on_random_pairs() {
        let mut rng = crate::rng::seeded(23);
        for seed in 0..30u64 {
            let m = sampling::gaussian_mat(6, 3, &mut rng);
            let s = range_space(&m, &tol()).unwrap();
            let c = random_complement(&s, seed);
            let p = oblique_projector(&s, &c, &tol()).unwrap();
            let q = orthogonalize(&p, &tol()).unwrap();
            assert!(q
                .matrix
                .approx_eq(&orthogonal_projector(&s).matrix, 1e-9));
            assert!(subspace_equal(&q.onto, &s, &tol()));
            // self-adjoint and idempotent
            assert!((&q.matrix - &q.matrix.adjoint()).frobenius_norm() <= 1e-9);
            assert!((&(&q.matrix * &q.matrix) - &q.matrix).frobenius_norm() <= 1e-9);
        }
    }

    #[test]
    fn both_forms_and_commutation() {
        let mut rng = crate::rng::seeded(29);
        for seed in 0..20u64 {
            let m = sampling::gaussian_mat(5, 2, &mut rng);
            let s = range_space(&m, &tol()).unwrap();
            let c = random_complement(&s, seed);
            let p = oblique_projector(&s, &c, &tol()).unwrap().matrix;
            let n = p.rows();
            let d = &p - &p.adjoint();
            let bracket = &Mat::identity(n) - &(&d * &d);
            let inv = bracket.solve_inverse(&tol()).unwrap();
            let pp = &p * &p.adjoint();
            let left = &pp * &inv;
            let right = &inv * &pp;
            assert!(left.approx_eq(&right, 1e-10));
            // the commutation identity behind the formula
            let comm = &(&pp * &bracket) - &(&bracket * &pp);
            assert!(comm.frobenius_norm() <= 1e-10);
        }
    }
}
