//! Structured perturbations: null-preserving and range-preserving.
//!
//! When δT vanishes on N(T), the perturbed operator keeps the null space and
//! one bracket of the closed form collapses; when R(δT) ⊆ R(T), the range is
//! kept and the other bracket collapses. Both specialized forms must agree
//! with the general expression and the oracle.
//!
//! ```bash
//! cargo run -p hu-stab --example special_cases
//! ```

use hu_stab::geninv::geninv_random;
use hu_stab::perturb::{make_perturbation, perturbed_pinv, special_cases};
use hu_stab::pinv::pinv_oracle;
use hu_stab::{rng, sampling, Tolerances};

fn main() -> hu_stab::Result<()> {
    let tol = Tolerances::default();
    let mut rand = rng::seeded(17);

    let t = sampling::matrix_with_rank(6, 5, 3, &mut rand);
    let g = geninv_random(&t, 4321, &tol)?;
    let tpn = g.t_plus.spectral_norm()?;

    let null_dir = sampling::null_preserving_direction(&t, &mut rand, &tol)?;
    let range_dir = sampling::range_preserving_direction(&t, &mut rand, &tol)?;

    for (label, dir) in [("null-preserving", null_dir), ("range-preserving", range_dir)] {
        let delta = sampling::scale_to_gate(&dir, tpn, 0.3)?;
        let p = make_perturbation(&t, &delta, &g, &tol)?;
        let rep = special_cases(&p, &tol)?;
        println!("{label}: classified as {:?}", rep.case);
        if let Some(kept) = rep.null_space_kept {
            println!("  N(T̄) = N(T): {kept}");
        }
        if let Some(kept) = rep.range_space_kept {
            println!("  R(T̄) = R(T): {kept}");
        }
        let general = perturbed_pinv(&p, &tol)?;
        let oracle = pinv_oracle(&p.t_bar, &tol)?.t_dagger;
        let specialized = rep.pinv_null_form.or(rep.pinv_range_form).unwrap();
        println!(
            "  specialized vs general: {:.3e}   specialized vs oracle: {:.3e}\n",
            (&specialized - &general).spectral_norm()?,
            (&specialized - &oracle).spectral_norm()?
        );
    }
    Ok(())
}
