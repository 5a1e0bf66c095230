//! Generalized inverses from chosen complements, and their non-uniqueness.
//!
//! A complement of the null space in the domain and a complement of the
//! range in the codomain pin down a unique generalized inverse. Different
//! complements give different inverses of the same operator — all satisfying
//! the defining axioms — while the induced Moore–Penrose inverse is always
//! the same.
//!
//! ```bash
//! cargo run -p hu-stab --example generalized_inverse
//! ```

use hu_stab::geninv::{check_axioms, geninv_random};
use hu_stab::pinv::pinv_adjoint_form;
use hu_stab::{rng, sampling, Tolerances};

fn main() -> hu_stab::Result<()> {
    let tol = Tolerances::default();
    let mut rand = rng::seeded(21);
    let t = sampling::matrix_with_rank(5, 4, 2, &mut rand);

    let g1 = geninv_random(&t, 1, &tol)?;
    let g2 = geninv_random(&t, 2, &tol)?;

    for (label, g) in [("seed 1", &g1), ("seed 2", &g2)] {
        let (residuals, ok) = check_axioms(&t, &g.t_plus, &tol)?;
        println!(
            "{label}: axioms pass = {ok}, residuals = {:.2e} / {:.2e} / {:.2e}, ‖T⁺‖ = {:.3}",
            residuals[0],
            residuals[1],
            residuals[2],
            g.t_plus.spectral_norm()?
        );
    }

    let plus_gap = (&g1.t_plus - &g2.t_plus).spectral_norm()?;
    let d1 = pinv_adjoint_form(&g1, &tol)?.t_dagger;
    let d2 = pinv_adjoint_form(&g2, &tol)?.t_dagger;
    let dagger_gap = (&d1 - &d2).spectral_norm()?;

    println!("\n‖T⁺(seed 1) − T⁺(seed 2)‖ = {plus_gap:.4}   (genuinely different inverses)");
    println!("‖T†(seed 1) − T†(seed 2)‖ = {dagger_gap:.3e} (the same pseudoinverse)");
    Ok(())
}
