//! The Hyers–Ulam stability constant and the reduced minimum modulus.
//!
//! For every operator with closed range, K_T = ‖T†‖ = γ(T)⁻¹: the best
//! stability constant is the reciprocal of the smallest nonzero singular
//! value. The zero operator is the degenerate corner: γ = +∞ and K = 0.
//!
//! ```bash
//! cargo run -p hu-stab --example stability_constant
//! ```

use hu_stab::stability::stability_constant;
use hu_stab::{rng, sampling, Mat, Tolerances};

fn main() -> hu_stab::Result<()> {
    let tol = Tolerances::default();
    let mut rand = rng::seeded(11);

    let cases: Vec<(&str, Mat)> = vec![
        ("identity 3x3", Mat::identity(3)),
        ("diag(3, 2, 0)", Mat::diag_real(&[3.0, 2.0, 0.0])),
        ("zero 2x3", Mat::zeros(2, 3)),
        ("random 8x5 rank 3", sampling::matrix_with_rank(8, 5, 3, &mut rand)),
        ("random 4x9 rank 4", sampling::matrix_with_rank(4, 9, 4, &mut rand)),
    ];

    println!("{:<22} {:>12} {:>12} {:>14}", "operator", "gamma", "K_T", "K_T * gamma");
    for (name, t) in cases {
        let rep = stability_constant(&t, &tol)?;
        let product = if rep.gamma.is_finite() {
            format!("{:.12}", rep.k_t * rep.gamma)
        } else {
            "undefined".to_string()
        };
        println!("{:<22} {:>12.6} {:>12.6} {:>14}", name, rep.gamma, rep.k_t, product);
    }
    Ok(())
}
