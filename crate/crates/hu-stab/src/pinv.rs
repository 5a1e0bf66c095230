//! The Moore–Penrose inverse, three ways.
//!
//! Two closed-form routes start from an arbitrary (possibly oblique)
//! generalized inverse `T⁺`:
//!
//! * the *projector form* corrects the oblique inverse with orthogonal
//!   projectors, `T† = [I − P_{N(T)}^⊥] T⁺ P_{R(T)}^⊥`;
//! * the *adjoint form* is fully algebraic in `T⁺` and conjugate transposes,
//!
//!   ```text
//!   T† = {I − [T⁺T − (T⁺T)*]²}⁻¹ (T⁺T)* T⁺ (TT⁺)* {I − [TT⁺ − (TT⁺)*]²}⁻¹.
//!   ```
//!
//! The third route is an independent SVD oracle, `T† = V Σ⁺ U*`. All three
//! must agree: that cross-check is the main correctness argument for the
//! perturbation machinery, which reuses the adjoint form.

use serde::Serialize;

use crate::error::Result;
use crate::geninv::GenInverse;
use crate::mat::{Mat, Tolerances};
use crate::projector::orthogonal_projector;

/// Which route produced a Moore–Penrose inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ProjectorForm,
    AdjointForm,
    SvdOracle,
}

/// A matrix together with its Moore–Penrose inverse and the four
/// characterizing residuals ‖TT†T−T‖, ‖T†TT†−T†‖, ‖(TT†)*−TT†‖, ‖(T†T)*−T†T‖.
#[derive(Clone, Debug)]
pub struct MoorePenrose {
    pub t: Mat,
    pub t_dagger: Mat,
    pub method: Method,
    pub residuals: [f64; 4],
}

impl MoorePenrose {
    /// True when all four residuals are below the scaled equality tolerance.
    pub fn is_valid(&self, tol: &Tolerances) -> Result<bool> {
        let scale = tol.eq_scaled(
            self.t
                .spectral_norm()?
                .max(self.t_dagger.spectral_norm()?),
        );
        Ok(self.residuals.iter().all(|&r| r <= scale))
    }
}

/// The four Penrose residuals for a candidate pair.
pub fn penrose_residuals(t: &Mat, td: &Mat) -> Result<[f64; 4]> {
    let ttd = t * td;
    let tdt = td * t;
    Ok([
        (&(&ttd * t) - t).spectral_norm()?,
        (&(&tdt * td) - td).spectral_norm()?,
        (&ttd.adjoint() - &ttd).spectral_norm()?,
        (&tdt.adjoint() - &tdt).spectral_norm()?,
    ])
}

fn assemble(t: &Mat, t_dagger: Mat, method: Method) -> Result<MoorePenrose> {
    let residuals = penrose_residuals(t, &t_dagger)?;
    Ok(MoorePenrose {
        t: t.clone(),
        t_dagger,
        method,
        residuals,
    })
}

/// Independent SVD route: `T† = V Σ⁺ U*` with the rank cutoff applied.
pub fn pinv_oracle(t: &Mat, tol: &Tolerances) -> Result<MoorePenrose> {
    let td = t.svd()?.pseudoinverse(tol);
    assemble(t, td, Method::SvdOracle)
}

/// Projector form: `T† = [I − P_{N(T)}^⊥] T⁺ P_{R(T)}^⊥`, with the orthogonal
/// projectors built from the null-space and range bases carried by `g`.
pub fn pinv_projector_form(g: &GenInverse, tol: &Tolerances) -> Result<MoorePenrose> {
    let n = g.t.cols();
    let p_null = orthogonal_projector(&g.p.onto).matrix;
    let p_range = orthogonal_projector(&g.q.onto).matrix;
    let td = &(&(&Mat::identity(n) - &p_null) * &g.t_plus) * &p_range;
    let mp = assemble(&g.t, td, Method::ProjectorForm)?;
    debug_assert!(mp.is_valid(tol)?);
    Ok(mp)
}

/// Adjoint form applied to a (T, S) pair; also the engine behind the
/// closed-form perturbed pseudoinverse, which evaluates it at (T̄, B).
pub(crate) fn adjoint_form_core(t: &Mat, s: &Mat, tol: &Tolerances) -> Result<Mat> {
    let st = s * t;
    let ts = t * s;
    let left = &bracket_inverse(&st, tol)? * &st.adjoint();
    let right = &ts.adjoint() * &bracket_inverse(&ts, tol)?;
    Ok(&(&left * s) * &right)
}

/// `{I − (M − M*)²}⁻¹`; the bracket is Hermitian with eigenvalues ≥ 1.
fn bracket_inverse(m: &Mat, tol: &Tolerances) -> Result<Mat> {
    let d = m - &m.adjoint();
    let bracket = &Mat::identity(m.rows()) - &(&d * &d);
    bracket.solve_inverse(tol)
}

/// Adjoint form: fully algebraic expression in T, T⁺ and their adjoints.
pub fn pinv_adjoint_form(g: &GenInverse, tol: &Tolerances) -> Result<MoorePenrose> {
    let td = adjoint_form_core(&g.t, &g.t_plus, tol)?;
    let mp = assemble(&g.t, td, Method::AdjointForm)?;
    debug_assert!(mp.is_valid(tol)?);
    Ok(mp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geninv::{geninv_from_complements, geninv_orthogonal, geninv_random};
    use crate::sampling;
    use crate::subspace::Subspace;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn oracle_examples() {
        let id = pinv_oracle(&Mat::identity(3), &tol()).unwrap();
        assert!(id.t_dagger.approx_eq(&Mat::identity(3), 1e-13));
        assert!(id.is_valid(&tol()).unwrap());

        let z = pinv_oracle(&Mat::zeros(2, 3), &tol()).unwrap();
        assert_eq!(z.t_dagger.shape(), (3, 2));
        assert!(z.t_dagger.frobenius_norm() == 0.0);

        let d = pinv_oracle(&Mat::diag_real(&[2.0, 1.0, 0.0]), &tol()).unwrap();
        assert!(d.t_dagger.approx_eq(&Mat::diag_real(&[0.5, 1.0, 0.0]), 1e-13));
    }

    fn hand_geninv() -> GenInverse {
        // T = diag(1,0) with T⁺ = [[1,0],[1,0]] from the oblique complements.
        let t = Mat::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let s = 1.0 / 2f64.sqrt();
        let n_c = Subspace::from_orthonormal(Mat::from_real(2, 1, &[s, s]).unwrap()).unwrap();
        let r_c = Subspace::from_orthonormal(Mat::from_real(2, 1, &[0.0, 1.0]).unwrap()).unwrap();
        geninv_from_complements(&t, &n_c, &r_c, &tol()).unwrap()
    }

    #[test]
    fn projector_form_hand_example() {
        let g = hand_geninv();
        let mp = pinv_projector_form(&g, &tol()).unwrap();
        assert!(mp.t_dagger.approx_eq(&Mat::diag_real(&[1.0, 0.0]), 1e-12));
        let oracle = pinv_oracle(&g.t, &tol()).unwrap();
        assert!(mp.t_dagger.approx_eq(&oracle.t_dagger, 1e-10));
    }

    #[test]
    fn adjoint_form_hand_example() {
        // Brackets: I − (T⁺T − (T⁺T)*)² = 2I on the left, I on the right;
        // (T⁺T)* T⁺ = [[2,0],[0,0]]; the product collapses to diag(1,0).
        let g = hand_geninv();
        let mp = pinv_adjoint_form(&g, &tol()).unwrap();
        assert!(mp.t_dagger.approx_eq(&Mat::diag_real(&[1.0, 0.0]), 1e-12));
    }

    #[test]
    fn identity_collapses_both_forms() {
        let g = geninv_orthogonal(&Mat::identity(2), &tol()).unwrap();
        for mp in [
            pinv_projector_form(&g, &tol()).unwrap(),
            pinv_adjoint_form(&g, &tol()).unwrap(),
        ] {
            assert!(mp.t_dagger.approx_eq(&Mat::identity(2), 1e-12));
        }
    }

    #[test]
    fn already_orthogonal_is_fixed_point() {
        let mut rng = crate::rng::seeded(53);
        let t = sampling::matrix_with_rank(5, 4, 2, &mut rng);
        let g = geninv_orthogonal(&t, &tol()).unwrap();
        let mp21 = pinv_projector_form(&g, &tol()).unwrap();
        let mp23 = pinv_adjoint_form(&g, &tol()).unwrap();
        assert!(mp21.t_dagger.approx_eq(&g.t_plus, 1e-10));
        assert!(mp23.t_dagger.approx_eq(&g.t_plus, 1e-10));
    }

    #[test]
    fn three_way_agreement_random() {
        let mut rng = crate::rng::seeded(59);
        for case in 0..20 {
            let (m, n) = sampling::random_shape(&mut rng);
            let r = sampling::random_rank_profile(m, n, case, &mut rng);
            let t = sampling::matrix_with_rank(m, n, r, &mut rng);
            let g = geninv_random(&t, 1000 + case as u64, &tol()).unwrap();
            let oracle = pinv_oracle(&t, &tol()).unwrap();
            let a = pinv_projector_form(&g, &tol()).unwrap();
            let b = pinv_adjoint_form(&g, &tol()).unwrap();
            let slack = 1e-8 * (1.0 + oracle.t_dagger.spectral_norm().unwrap());
            assert!((&a.t_dagger - &oracle.t_dagger).spectral_norm().unwrap() <= slack);
            assert!((&b.t_dagger - &oracle.t_dagger).spectral_norm().unwrap() <= slack);
            assert!((&a.t_dagger - &b.t_dagger).spectral_norm().unwrap() <= slack);
        }
    }

    #[test]
    fn pinv_of_pinv_recovers() {
        let mut rng = crate::rng::seeded(61);
        let t = sampling::matrix_with_rank(6, 4, 3, &mut rng);
        let td = pinv_oracle(&t, &tol()).unwrap().t_dagger;
        let back = pinv_oracle(&td, &tol()).unwrap().t_dagger;
        assert!(back.approx_eq(&t, 1e-10));
    }

    #[test]
    fn uniqueness_across_complements() {
        let mut rng = crate::rng::seeded(67);
        let t = sampling::matrix_with_rank(5, 5, 3, &mut rng);
        let g1 = geninv_random(&t, 7, &tol()).unwrap();
        let g2 = geninv_random(&t, 8, &tol()).unwrap();
        let d1 = pinv_adjoint_form(&g1, &tol()).unwrap().t_dagger;
        let d2 = pinv_adjoint_form(&g2, &tol()).unwrap().t_dagger;
        assert!((&d1 - &d2).spectral_norm().unwrap() <= 1e-9);
    }
}
