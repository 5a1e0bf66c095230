//! The equivalent conditions for a perturbed operator to stay stable.
//!
//! Under the smallness gate a‖T⁺‖ + b‖TT⁺‖ < 1, five conditions on
//! T̄ = T + δT are equivalent — and in finite dimensions all of them reduce
//! to "the rank did not jump". This example evaluates every condition
//! independently on a rank-preserving and a rank-jumping perturbation of the
//! same operator.
//!
//! ```bash
//! cargo run -p hu-stab --example perturbation_conditions
//! ```

use hu_stab::geninv::geninv_random;
use hu_stab::perturb::{check_conditions, make_perturbation};
use hu_stab::{rng, sampling, Tolerances};

fn main() -> hu_stab::Result<()> {
    let tol = Tolerances::default();
    let mut rand = rng::seeded(31);

    let t = sampling::matrix_with_rank(6, 5, 3, &mut rand);
    let g = geninv_random(&t, 77, &tol)?;
    let t_plus_norm = g.t_plus.spectral_norm()?;

    let keep_raw = sampling::range_preserving_direction(&t, &mut rand, &tol)?;
    let keep = sampling::scale_to_gate(&keep_raw, t_plus_norm, 0.4)?;
    let jump_raw = sampling::rank_jumping_direction(&t, &mut rand, &tol)?
        .expect("rank 3 < min(6,5), a jump direction exists");
    let jump = sampling::scale_to_gate(&jump_raw, t_plus_norm, 0.4)?;

    for (label, delta) in [("rank-preserving δT", keep), ("rank-jumping δT", jump)] {
        let p = make_perturbation(&t, &delta, &g, &tol)?;
        let c = check_conditions(&p, &tol)?;
        println!("{label} (gate = {:.3}):", p.gate);
        println!("  B is a generalized inverse of T̄ : {}", c.b_is_geninv);
        println!("  (I+δTT⁺)⁻¹R(T̄) = R(T)           : {}", c.range_pullback);
        println!("  (I+δTT⁺)⁻¹T̄ maps N(T) into R(T) : {}", c.nullspace_mapped);
        println!("  R(T̄) ∩ N(T⁺) = {{0}}              : {}", c.trivial_intersection);
        println!("  (I+T†δT)⁻¹N(T) = N(T̄)           : {}", c.nullspace_pullback);
        println!(
            "  rank equal / dim N equal / codim R equal : {} / {} / {}",
            c.rank_equal, c.dim_null_equal, c.codim_range_equal
        );
        println!(
            "  unanimous: {}\n",
            c.equivalence_holds() && c.rank_criteria_agree()
        );
    }
    Ok(())
}
