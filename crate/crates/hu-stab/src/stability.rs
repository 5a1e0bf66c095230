//! Hyers–Ulam stability of linear operators.
//!
//! An operator `T` is Hyers–Ulam stable when every ε-approximate solution of
//! `Tx = y` lies within `K·ε` of an exact solution; the best constant is
//!
//! ```text
//! K_T = ‖T†‖ = γ(T)⁻¹,
//! ```
//!
//! where γ(T) — the reduced minimum modulus — is the infimum of ‖Tx‖ over
//! unit vectors orthogonal to the null space, i.e. the smallest nonzero
//! singular value. The witness map `x ↦ x₀ = (I − T†T)x` lands in N(T) and
//! realizes the constant: ‖x − x₀‖ ≤ K_T‖Tx‖, with equality approached along
//! the right singular vector of the smallest nonzero singular value.
//!
//! Conventions for the zero operator, where the infimum ranges over an empty
//! set: γ = +∞, K = 0, T† = 0.

use crate::error::{Error, Result};
use crate::mat::{Mat, Svd, Tolerances};
use crate::rng::Rng;
use crate::sampling::unit_vector;

/// Everything Hyers–Ulam about one operator: γ(T), K_T = ‖T†‖, the
/// pseudoinverse behind them, and (optionally) the outcome of a witness sweep.
#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub gamma: f64,
    pub k_t: f64,
    pub t_dagger: Mat,
    pub witness_checked: bool,
    pub max_witness_ratio: f64,
}

/// Smallest singular value above the rank cutoff; +∞ for the zero operator.
pub fn reduced_min_modulus(t: &Mat, tol: &Tolerances) -> Result<f64> {
    let svd = t.svd()?;
    Ok(gamma_from_svd(&svd, tol))
}

fn gamma_from_svd(svd: &Svd, tol: &Tolerances) -> f64 {
    let r = svd.rank(tol);
    if r == 0 {
        f64::INFINITY
    } else {
        svd.singular_values[r - 1]
    }
}

/// γ(T), K_T and T† from a single factorization, so the rank decision is made
/// once and shared by all three quantities.
pub fn stability_constant(t: &Mat, tol: &Tolerances) -> Result<StabilityReport> {
    let svd = t.svd()?;
    let gamma = gamma_from_svd(&svd, tol);
    let t_dagger = svd.pseudoinverse(tol);
    let k_t = t_dagger.spectral_norm()?;
    Ok(StabilityReport {
        gamma,
        k_t,
        t_dagger,
        witness_checked: false,
        max_witness_ratio: 0.0,
    })
}

/// Witness for one vector: `x₀ = (I − T†T)x ∈ N(T)` and the attained ratio
/// ‖x − x₀‖ / ‖Tx‖ (defined as 0 when Tx = 0). The ratio never exceeds K_T.
pub fn stability_witness(t: &Mat, x: &Mat, tol: &Tolerances) -> Result<(Mat, f64)> {
    let report = stability_constant(t, tol)?;
    Ok(witness_with_pinv(t, &report.t_dagger, x))
}

pub(crate) fn witness_with_pinv(t: &Mat, t_dagger: &Mat, x: &Mat) -> (Mat, f64) {
    assert_eq!(x.cols(), 1, "expected a column vector");
    assert_eq!(x.rows(), t.cols(), "vector not in the domain space");
    let tdt_x = t_dagger * &(t * x);
    let x0 = x - &tdt_x;
    let tx_norm = (t * x).frobenius_norm();
    let ratio = if tx_norm == 0.0 {
        0.0
    } else {
        tdt_x.frobenius_norm() / tx_norm
    };
    (x0, ratio)
}

/// Max witness ratio over a sample of directions. The sample mixes isotropic
/// random vectors with the right singular vector of the smallest nonzero
/// singular value (and jitters of it), where the supremum is attained.
pub fn witness_sweep(t: &Mat, samples: usize, rng: &mut Rng, tol: &Tolerances) -> Result<StabilityReport> {
    let mut report = stability_constant(t, tol)?;
    let svd = t.svd()?;
    let r = svd.rank(tol);
    let n = t.cols();
    let mut max_ratio: f64 = 0.0;
    let v = svd.vstar.adjoint();
    let extremal = if r > 0 {
        Some(Mat::from_fn(n, 1, |i, _| v[(i, r - 1)]))
    } else {
        None
    };
    for k in 0..samples {
        let x = match (&extremal, k % 4) {
            (Some(e), 0) => e.clone(),
            (Some(e), 1) => {
                let jitter = unit_vector(n, rng).scale_re(1e-3);
                let x = e + &jitter;
                let norm = x.frobenius_norm();
                x.scale_re(1.0 / norm)
            }
            _ => unit_vector(n, rng),
        };
        let (x0, ratio) = witness_with_pinv(t, &report.t_dagger, &x);
        debug_assert!({
            let nx0 = (t * &x0).frobenius_norm();
            nx0 <= tol.eq_scaled(1.0) * 10.0 || nx0 <= tol.eq_scaled((t.spectral_norm()?).max(1.0))
        });
        max_ratio = max_ratio.max(ratio);
    }
    report.witness_checked = true;
    report.max_witness_ratio = max_ratio;
    Ok(report)
}

/// Exact solution near an approximate one: given `y ∈ R(T)` and `x` with
/// `‖Tx − y‖ ≤ ε`, returns `x₀ = x − T†(Tx − y)`, which satisfies `Tx₀ = y`
/// and `‖x − x₀‖ ≤ K_T·ε`. Violated hypotheses yield `Infeasible`.
pub fn epsilon_approximate_solve(
    t: &Mat,
    y: &Mat,
    x: &Mat,
    eps: f64,
    tol: &Tolerances,
) -> Result<Mat> {
    assert_eq!(y.cols(), 1, "expected a column vector y");
    assert_eq!(x.cols(), 1, "expected a column vector x");
    if y.rows() != t.rows() || x.rows() != t.cols() {
        return Err(Error::Shape("vector dimensions do not match operator".into()));
    }
    if eps <= 0.0 {
        return Err(Error::Infeasible("ε must be positive".into()));
    }
    let range = crate::subspace::range_space(t, tol)?;
    if !crate::subspace::contains(&range, y, tol) {
        return Err(Error::Infeasible("y is not in the range of T".into()));
    }
    let residual = &(t * x) - y;
    let res_norm = residual.frobenius_norm();
    if res_norm > eps {
        return Err(Error::Infeasible(format!(
            "‖Tx − y‖ = {res_norm:.3e} exceeds ε = {eps:.3e}"
        )));
    }
    let t_dagger = t.svd()?.pseudoinverse(tol);
    Ok(x - &(&t_dagger * &residual))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;
    use crate::subspace::{contains, null_space};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn gamma_examples() {
        assert!((reduced_min_modulus(&Mat::identity(3), &tol()).unwrap() - 1.0).abs() < 1e-14);
        let d = Mat::diag_real(&[3.0, 2.0, 0.0]);
        assert!((reduced_min_modulus(&d, &tol()).unwrap() - 2.0).abs() < 1e-14);
        assert!(reduced_min_modulus(&Mat::zeros(2, 2), &tol())
            .unwrap()
            .is_infinite());
    }

    #[test]
    fn gamma_brute_force_cross_check() {
        // minimize ‖Tx‖ over random unit x orthogonal to the null space
        let t = Mat::diag_real(&[3.0, 2.0, 0.0]);
        let mut rng = crate::rng::seeded(71);
        let mut min_norm = f64::INFINITY;
        for _ in 0..10_000 {
            let mut x = sampling::unit_vector(3, &mut rng);
            // project onto N(T)^⊥ = span{e1, e2} and renormalize
            x[(2, 0)] = crate::mat::C64::new(0.0, 0.0);
            let norm = x.frobenius_norm();
            if norm < 1e-3 {
                continue;
            }
            let x = x.scale_re(1.0 / norm);
            min_norm = min_norm.min((&t * &x).frobenius_norm());
        }
        let gamma = reduced_min_modulus(&t, &tol()).unwrap();
        assert!(min_norm >= gamma - 1e-12);
        assert!(min_norm <= gamma + 2e-2, "sampled min {min_norm} far from γ {gamma}");
    }

    #[test]
    fn constant_examples() {
        let r = stability_constant(&Mat::identity(4), &tol()).unwrap();
        assert!((r.gamma - 1.0).abs() < 1e-14);
        assert!((r.k_t - 1.0).abs() < 1e-14);

        let d = stability_constant(&Mat::diag_real(&[3.0, 2.0, 0.0]), &tol()).unwrap();
        assert!((d.gamma - 2.0).abs() < 1e-14);
        assert!((d.k_t - 0.5).abs() < 1e-14);
        assert!((d.k_t * d.gamma - 1.0).abs() <= 1e-12);

        let z = stability_constant(&Mat::zeros(3, 2), &tol()).unwrap();
        assert!(z.gamma.is_infinite());
        assert_eq!(z.k_t, 0.0);
        assert_eq!(z.t_dagger.shape(), (2, 3));
    }

    #[test]
    fn k_gamma_identity_random() {
        let mut rng = crate::rng::seeded(73);
        for profile in 0..15 {
            let (m, n) = sampling::random_shape(&mut rng);
            let r = sampling::random_rank_profile(m, n, profile, &mut rng);
            let t = sampling::matrix_with_rank(m, n, r, &mut rng);
            let rep = stability_constant(&t, &tol()).unwrap();
            if r == 0 {
                assert!(rep.gamma.is_infinite());
                assert_eq!(rep.k_t, 0.0);
            } else {
                assert!((rep.k_t * rep.gamma - 1.0).abs() <= 1e-8);
            }
        }
    }

    #[test]
    fn witness_hand_examples() {
        // x in the null space: x0 = x, ratio 0
        let t = Mat::diag_real(&[2.0, 0.0]);
        let x_null = Mat::from_real(2, 1, &[0.0, 3.0]).unwrap();
        let (x0, ratio) = stability_witness(&t, &x_null, &tol()).unwrap();
        assert!(x0.approx_eq(&x_null, 1e-12));
        assert_eq!(ratio, 0.0);

        // T = diag(2,0), x = (1,1): x0 = (0,1), ratio 1/2 = K_T
        let x = Mat::from_real(2, 1, &[1.0, 1.0]).unwrap();
        let (x0, ratio) = stability_witness(&t, &x, &tol()).unwrap();
        assert!(x0.approx_eq(&Mat::from_real(2, 1, &[0.0, 1.0]).unwrap(), 1e-12));
        assert!((ratio - 0.5).abs() < 1e-12);

        // identity: x0 = 0, ratio 1
        let (x0, ratio) = stability_witness(&Mat::identity(2), &x, &tol()).unwrap();
        assert!(x0.frobenius_norm() <= 1e-12);
        assert!((ratio - 1.0).abs() < 1e-12);
    }

    #[test]
    fn witness_lands_in_null_space_and_attains() {
        let mut rng = crate::rng::seeded(79);
        for profile in [0usize, 1, 1, 1] {
            let (m, n) = sampling::random_shape(&mut rng);
            let r = sampling::random_rank_profile(m, n, profile, &mut rng);
            let t = sampling::matrix_with_rank(m, n, r, &mut rng);
            let ns = null_space(&t, &tol()).unwrap();
            let rep = witness_sweep(&t, 200, &mut rng, &tol()).unwrap();
            let td = &rep.t_dagger;
            for _ in 0..20 {
                let x = sampling::unit_vector(n, &mut rng);
                let (x0, ratio) = witness_with_pinv(&t, td, &x);
                assert!(contains(&ns, &x0, &tol()));
                assert!(ratio <= rep.k_t + 1e-8);
            }
            if r > 0 {
                assert!(rep.max_witness_ratio >= rep.k_t * (1.0 - 1e-3));
                assert!(rep.max_witness_ratio <= rep.k_t + 1e-8);
            }
        }
    }

    #[test]
    fn appending_zero_row_changes_nothing() {
        let mut rng = crate::rng::seeded(83);
        let t = sampling::matrix_with_rank(4, 4, 2, &mut rng);
        let padded = Mat::from_fn(5, 4, |i, j| {
            if i < 4 {
                t[(i, j)]
            } else {
                crate::mat::C64::new(0.0, 0.0)
            }
        });
        let a = stability_constant(&t, &tol()).unwrap();
        let b = stability_constant(&padded, &tol()).unwrap();
        assert!((a.gamma - b.gamma).abs() <= 1e-10);
        assert!((a.k_t - b.k_t).abs() <= 1e-10);
    }

    #[test]
    fn epsilon_solve_hand_example() {
        let t = Mat::diag_real(&[2.0, 0.0]);
        let y = Mat::from_real(2, 1, &[2.0, 0.0]).unwrap();
        let x = Mat::from_real(2, 1, &[1.4, 0.0]).unwrap();
        let x0 = epsilon_approximate_solve(&t, &y, &x, 0.8, &tol()).unwrap();
        assert!(x0.approx_eq(&Mat::from_real(2, 1, &[1.0, 0.0]).unwrap(), 1e-12));
        assert!((&t * &x0).approx_eq(&y, 1e-12));
        let dist = (&x - &x0).frobenius_norm();
        assert!(dist <= 0.5 * 0.8 + 1e-12);

        // exact data: x0 = x
        let y_exact = &t * &x;
        let x0 = epsilon_approximate_solve(&t, &y_exact, &x, 1e-6, &tol()).unwrap();
        assert!(x0.approx_eq(&x, 1e-10));
    }

    #[test]
    fn epsilon_solve_infeasible_cases() {
        let t = Mat::diag_real(&[2.0, 0.0]);
        // y outside the range
        let y_bad = Mat::from_real(2, 1, &[0.0, 1.0]).unwrap();
        let x = Mat::from_real(2, 1, &[1.0, 0.0]).unwrap();
        match epsilon_approximate_solve(&t, &y_bad, &x, 0.5, &tol()) {
            Err(Error::Infeasible(_)) => {}
            other => panic!("expected Infeasible, got {other:?}"),
        }
        // residual exceeds epsilon
        let y = Mat::from_real(2, 1, &[2.0, 0.0]).unwrap();
        let x_far = Mat::from_real(2, 1, &[5.0, 0.0]).unwrap();
        match epsilon_approximate_solve(&t, &y, &x_far, 0.1, &tol()) {
            Err(Error::Infeasible(_)) => {}
            other => panic!("expected Infeasible, got {other:?}"),
        }
    }
}
