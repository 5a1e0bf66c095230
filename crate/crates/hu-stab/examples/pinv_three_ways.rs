//! Compute the Moore–Penrose inverse three ways and watch them agree.
//!
//! Two closed forms start from a deliberately oblique generalized inverse;
//! the third route is the SVD oracle. The pseudoinverse is unique, so all
//! three must coincide no matter which complements induced T⁺.
//!
//! ```bash
//! cargo run -p hu-stab --example pinv_three_ways
//! ```

use hu_stab::geninv::geninv_random;
use hu_stab::pinv::{pinv_adjoint_form, pinv_oracle, pinv_projector_form};
use hu_stab::{rng, sampling, Tolerances};

fn main() -> hu_stab::Result<()> {
    let tol = Tolerances::default();
    let mut rand = rng::seeded(7);

    // A 6x4 complex matrix of rank 2: both the null space and the co-range
    // are nontrivial, so the choice of complements genuinely matters.
    let t = sampling::matrix_with_rank(6, 4, 2, &mut rand);
    let g = geninv_random(&t, 1234, &tol)?;

    println!("operator: 6x4, rank {}", t.rank_tol(&tol)?);
    println!(
        "oblique generalized inverse: ‖P‖ = {:.3}, ‖Q‖ = {:.3} (1 would be orthogonal)",
        g.p.norm()?,
        g.q.norm()?
    );

    let oracle = pinv_oracle(&t, &tol)?;
    let projector = pinv_projector_form(&g, &tol)?;
    let adjoint = pinv_adjoint_form(&g, &tol)?;

    println!("\nroute                       ‖T† − oracle‖");
    for mp in [&projector, &adjoint] {
        let delta = (&mp.t_dagger - &oracle.t_dagger).spectral_norm()?;
        println!("{:<27} {delta:.3e}", format!("{:?}", mp.method));
    }

    println!("\nPenrose residuals (TT†T−T, T†TT†−T†, (TT†)*−TT†, (T†T)*−T†T):");
    for mp in [&oracle, &projector, &adjoint] {
        println!(
            "{:<14} {:.2e}  {:.2e}  {:.2e}  {:.2e}",
            format!("{:?}", mp.method),
            mp.residuals[0],
            mp.residuals[1],
            mp.residuals[2],
            mp.residuals[3]
        );
    }
    Ok(())
}
