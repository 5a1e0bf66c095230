//! The closed-form pseudoinverse of a perturbed operator.
//!
//! When the conditions hold, B = T⁺(I + δT T⁺)⁻¹ is a generalized inverse of
//! T̄, and feeding (T̄, B) to the adjoint-form expression yields T̄† without
//! ever factorizing T̄. The result is compared against the SVD oracle, and
//! the distance ‖T̄† − T†‖ is checked against its norm bound.
//!
//! ```bash
//! cargo run -p hu-stab --example perturbed_pseudoinverse
//! ```

use hu_stab::geninv::geninv_random;
use hu_stab::perturb::{build_b, lipschitz_check, make_perturbation, perturbed_pinv};
use hu_stab::pinv::pinv_oracle;
use hu_stab::subspace::{null_space, range_space, subspace_equal};
use hu_stab::{rng, sampling, Tolerances};

fn main() -> hu_stab::Result<()> {
    let tol = Tolerances::default();
    let mut rand = rng::seeded(13);

    let t = sampling::matrix_with_rank(7, 5, 3, &mut rand);
    let g = geninv_random(&t, 2024, &tol)?;
    let direction = sampling::range_preserving_direction(&t, &mut rand, &tol)?;
    let delta = sampling::scale_to_gate(&direction, g.t_plus.spectral_norm()?, 0.35)?;
    let p = make_perturbation(&t, &delta, &g, &tol)?;
    println!("gate a‖T⁺‖ + b‖TT⁺‖ = {:.4}", p.gate);

    let b = build_b(&p, &tol)?;
    let cycle = (&(&(&b * &p.t_bar) * &b) - &b).spectral_norm()?;
    println!("‖B T̄ B − B‖ = {cycle:.3e}");
    println!(
        "R(B) = R(T⁺): {}   N(B) = N(T⁺): {}",
        subspace_equal(&range_space(&b, &tol)?, &range_space(&g.t_plus, &tol)?, &tol),
        subspace_equal(&null_space(&b, &tol)?, &null_space(&g.t_plus, &tol)?, &tol)
    );

    let formula = perturbed_pinv(&p, &tol)?;
    let oracle = pinv_oracle(&p.t_bar, &tol)?.t_dagger;
    println!(
        "\n‖closed-form T̄† − oracle T̄†‖ = {:.3e}",
        (&formula - &oracle).spectral_norm()?
    );

    let (bound, holds) = lipschitz_check(&p, &formula, &tol)?;
    let t_dagger = pinv_oracle(&p.t, &tol)?.t_dagger;
    println!(
        "‖T̄† − T†‖ = {:.4e} ≤ bound {:.4e} : {holds}",
        (&formula - &t_dagger).spectral_norm()?,
        bound
    );
    Ok(())
}
