//! Generalized inverses induced by a choice of complements.
//!
//! Given complements `n_c` of the null space in the domain and `r_c` of the
//! range in the codomain, there is a unique operator `S` with
//!
//! ```text
//! TST = T,   STS = S,   ST = I − P,   TS = Q,
//! ```
//!
//! where `P` projects onto N(T) along `n_c` and `Q` projects onto R(T) along
//! `r_c`. `S` is materialized column by column: each codomain basis vector is
//! pushed through `Q`, expressed in the range basis, and pulled back through
//! the restriction of `T` to `n_c`. Different complements give genuinely
//! different generalized inverses of the same operator; the orthogonal choice
//! reproduces the Moore–Penrose inverse.

use crate::error::{Error, Result};
use crate::mat::{Mat, Tolerances};
use crate::projector::{oblique_projector, Projector};
use crate::subspace::{
    intersection_is_trivial, null_space_from_svd, orthogonal_complement, random_complement,
    range_space_from_svd, Subspace,
};

/// A certified pair (T, T⁺) with the complements that induced T⁺.
#[derive(Clone, Debug)]
pub struct GenInverse {
    pub t: Mat,
    pub t_plus: Mat,
    /// Projector onto N(T) along the chosen domain complement.
    pub p: Projector,
    /// Projector onto R(T) along the chosen codomain complement.
    pub q: Projector,
    /// Residuals ‖TST − T‖, ‖STS − S‖, ‖(ST)² − ST‖ measured at construction.
    pub axiom_residuals: [f64; 3],
}

impl GenInverse {
    /// The domain complement that carries R(T⁺).
    pub fn domain_complement(&self) -> &Subspace {
        &self.p.along
    }

    /// The codomain complement that carries N(T⁺).
    pub fn codomain_complement(&self) -> &Subspace {
        &self.q.along
    }
}

/// Residuals of the generalized-inverse axioms for a candidate pair (t, s):
/// ‖TST − T‖, ‖STS − S‖, ‖(ST)² − ST‖, plus the verdict that all of them are
/// below the scaled equality tolerance.
pub fn check_axioms(t: &Mat, s: &Mat, tol: &Tolerances) -> Result<([f64; 3], bool)> {
    if s.shape() != (t.cols(), t.rows()) {
        return Err(Error::Shape(format!(
            "candidate inverse is {}x{}, expected {}x{}",
            s.rows(),
            s.cols(),
            t.cols(),
            t.rows()
        )));
    }
    let ts = t * s;
    let st = s * t;
    let r1 = (&(&ts * t) - t).spectral_norm()?;
    let r2 = (&(&st * s) - s).spectral_norm()?;
    let r3 = (&(&st * &st) - &st).spectral_norm()?;
    let scale = tol.eq_scaled(t.spectral_norm()?.max(s.spectral_norm()?));
    Ok(([r1, r2, r3], r1 <= scale && r2 <= scale && r3 <= scale))
}

/// Build the generalized inverse of `t` induced by the complements `n_c`
/// (of N(T) in the domain) and `r_c` (of R(T) in the codomain).
pub fn geninv_from_complements(
    t: &Mat,
    n_c: &Subspace,
    r_c: &Subspace,
    tol: &Tolerances,
) -> Result<GenInverse> {
    let (m, n) = t.shape();
    let svd = t.svd()?;
    let null = null_space_from_svd(&svd, tol);
    let range = range_space_from_svd(&svd, tol);
    let rank = range.dim();

    if n_c.ambient_dim() != n || n_c.dim() != rank || !intersection_is_trivial(&null, n_c, tol)? {
        return Err(Error::NotComplementary(format!(
            "domain complement of dim {} does not complement a null space of dim {} in ℂ^{}",
            n_c.dim(),
            null.dim(),
            n
        )));
    }
    if r_c.ambient_dim() != m
        || r_c.dim() != m - rank
        || !intersection_is_trivial(&range, r_c, tol)?
    {
        return Err(Error::NotComplementary(format!(
            "codomain complement of dim {} does not complement a range of dim {} in ℂ^{}",
            r_c.dim(),
            rank,
            m
        )));
    }

    let p = oblique_projector(&null, n_c, tol)?;
    let q = oblique_projector(&range, r_c, tol)?;

    // Restriction of T to the domain complement, in the bases (n_c, range).
    let restricted = &range.basis().adjoint() * &(t * n_c.basis());
    let restricted_inv = restricted.solve_inverse(tol)?;

    // Column by column: e_j -> Q e_j -> coefficients in the range basis ->
    // pull back through the restricted operator -> coordinates in n_c.
    let mut t_plus = Mat::zeros(n, m);
    for j in 0..m {
        let qe = q.matrix.column(j);
        let coeffs = &range.basis().adjoint() * &qe;
        let pulled = &restricted_inv * &coeffs;
        let col = n_c.basis() * &pulled;
        for i in 0..n {
            t_plus[(i, j)] = col[(i, 0)];
        }
    }

    let (axiom_residuals, _) = check_axioms(t, &t_plus, tol)?;
    Ok(GenInverse {
        t: t.clone(),
        t_plus,
        p,
        q,
        axiom_residuals,
    })
}

/// Generalized inverse from the orthogonal complements; this is the
/// Moore–Penrose inverse itself.
pub fn geninv_orthogonal(t: &Mat, tol: &Tolerances) -> Result<GenInverse> {
    let svd = t.svd()?;
    let null = null_space_from_svd(&svd, tol);
    let range = range_space_from_svd(&svd, tol);
    geninv_from_complements(
        t,
        &orthogonal_complement(&null),
        &orthogonal_complement(&range),
        tol,
    )
}

/// Generalized inverse from seeded random oblique complements. Deterministic
/// per seed; distinct seeds generically give distinct inverses.
pub fn geninv_random(t: &Mat, seed: u64, tol: &Tolerances) -> Result<GenInverse> {
    let svd = t.svd()?;
    let null = null_space_from_svd(&svd, tol);
    let range = range_space_from_svd(&svd, tol);
    let n_c = random_complement(&null, seed);
    let r_c = random_complement(&range, seed.wrapping_add(0x9e3779b97f4a7c15));
    geninv_from_complements(t, &n_c, &r_c, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::C64;
    use crate::sampling;
    use crate::subspace::{null_space, range_space, subspace_equal};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn identity_has_identity_inverse() {
        let t = Mat::identity(3);
        let g = geninv_from_complements(&t, &Subspace::full(3), &Subspace::trivial(3), &tol())
            .unwrap();
        assert!(g.t_plus.approx_eq(&Mat::identity(3), 1e-12));
        assert!(g.axiom_residuals.iter().all(|&r| r <= 1e-12));
    }

    #[test]
    fn hand_example_oblique() {
        // T = diag(1, 0); domain complement span{(1,1)}, codomain complement span{e2}.
        let t = Mat::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let s = 1.0 / 2f64.sqrt();
        let n_c = Subspace::from_orthonormal(Mat::from_real(2, 1, &[s, s]).unwrap()).unwrap();
        let r_c = Subspace::from_orthonormal(Mat::from_real(2, 1, &[0.0, 1.0]).unwrap()).unwrap();
        let g = geninv_from_complements(&t, &n_c, &r_c, &tol()).unwrap();
        let expect = Mat::from_real(2, 2, &[1.0, 0.0, 1.0, 0.0]).unwrap();
        assert!(g.t_plus.approx_eq(&expect, 1e-12));

        // the four construction identities
        let st = &g.t_plus * &t;
        let ts = &t * &g.t_plus;
        assert!((&(&(&t * &g.t_plus) * &t) - &t).frobenius_norm() <= 1e-12);
        assert!((&(&(&g.t_plus * &t) * &g.t_plus) - &g.t_plus).frobenius_norm() <= 1e-12);
        assert!(st.approx_eq(&(&Mat::identity(2) - &g.p.matrix), 1e-12));
        assert!(ts.approx_eq(&g.q.matrix, 1e-12));
    }

    #[test]
    fn orthogonal_complements_give_pseudoinverse() {
        let t = Mat::diag_real(&[2.0, 0.0]);
        let g = geninv_orthogonal(&t, &tol()).unwrap();
        assert!(g.t_plus.approx_eq(&Mat::diag_real(&[0.5, 0.0]), 1e-12));
    }

    #[test]
    fn zero_operator() {
        let t = Mat::zeros(2, 3);
        let g = geninv_orthogonal(&t, &tol()).unwrap();
        assert_eq!(g.t_plus.shape(), (3, 2));
        assert!(g.t_plus.frobenius_norm() <= 1e-14);
    }

    #[test]
    fn check_axioms_examples() {
        let (res, ok) = check_axioms(&Mat::identity(2), &Mat::identity(2), &tol()).unwrap();
        assert!(ok);
        assert!(res.iter().all(|&r| r == 0.0));

        let t = Mat::diag_real(&[1.0, 0.0]);
        let pinv = t.svd().unwrap().pseudoinverse(&tol());
        let (_, ok) = check_axioms(&t, &pinv, &tol()).unwrap();
        assert!(ok);

        // S = I is not a generalized inverse of diag(1,0): STS differs from S.
        let (res, ok) = check_axioms(&t, &Mat::identity(2), &tol()).unwrap();
        assert!(!ok);
        assert!((res[1] - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn random_complements_satisfy_axioms() {
        let mut rng = crate::rng::seeded(41);
        for profile in 0..12 {
            let (m, n) = sampling::random_shape(&mut rng);
            let r = sampling::random_rank_profile(m, n, profile, &mut rng);
            let t = sampling::matrix_with_rank(m, n, r, &mut rng);
            let g = geninv_random(&t, profile as u64, &tol()).unwrap();
            let (_, ok) = check_axioms(&t, &g.t_plus, &tol()).unwrap();
            assert!(ok, "axioms failed for shape {m}x{n} rank {r}");
            assert_eq!(g.t_plus.rank_tol(&tol()).unwrap(), r);

            // R(T⁺) and N(T⁺) match the chosen complements.
            let r_plus = range_space(&g.t_plus, &tol()).unwrap();
            let n_plus = null_space(&g.t_plus, &tol()).unwrap();
            assert!(subspace_equal(&r_plus, g.domain_complement(), &tol()));
            assert!(subspace_equal(&n_plus, g.codomain_complement(), &tol()));
        }
    }

    #[test]
    fn distinct_seeds_distinct_inverses() {
        // Fixed regression instance: 4x3 complex of rank 2.
        let i = C64::new(0.0, 1.0);
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let t = Mat::new(
            4,
            3,
            vec![
                one, zero, zero, //
                zero, i, zero, //
                zero, zero, zero, //
                one, i, zero,
            ],
        )
        .unwrap();
        let g1 = geninv_random(&t, 1, &tol()).unwrap();
        let g2 = geninv_random(&t, 2, &tol()).unwrap();
        let diff = (&g1.t_plus - &g2.t_plus).spectral_norm().unwrap();
        assert!(diff > 1e-4, "seeds produced identical inverses: {diff:e}");
        for g in [&g1, &g2] {
            let (_, ok) = check_axioms(&t, &g.t_plus, &tol()).unwrap();
            assert!(ok);
        }
    }
}
