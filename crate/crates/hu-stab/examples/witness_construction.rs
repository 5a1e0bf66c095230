//! Constructive stability witnesses.
//!
//! For any x, the vector x₀ = (I − T†T)x lies in the null space and satisfies
//! ‖x − x₀‖ ≤ K_T·‖Tx‖. Sampling directions shows the ratio never exceeds
//! K_T and attains it along the right singular vector of the smallest
//! nonzero singular value. An ε-approximate solution of Tx = y is likewise
//! repaired to an exact one within K_T·ε.
//!
//! ```bash
//! cargo run -p hu-stab --example witness_construction
//! ```

use hu_stab::stability::{epsilon_approximate_solve, stability_witness, witness_sweep};
use hu_stab::{rng, Mat, Tolerances};

fn main() -> hu_stab::Result<()> {
    let tol = Tolerances::default();
    let t = Mat::diag_real(&[2.0, 0.0]);

    let x = Mat::from_real(2, 1, &[1.0, 1.0])?;
    let (x0, ratio) = stability_witness(&t, &x, &tol)?;
    println!("T = diag(2, 0), x = (1, 1)");
    println!("x0 = ({:.3}, {:.3})  ratio ‖x−x0‖/‖Tx‖ = {ratio:.6}", x0[(0, 0)].re, x0[(1, 0)].re);

    let mut rand = rng::seeded(3);
    let rep = witness_sweep(&t, 1000, &mut rand, &tol)?;
    println!(
        "sampled 1000 directions: max ratio = {:.9} vs K_T = {:.9}",
        rep.max_witness_ratio, rep.k_t
    );

    // Repairing an approximate solution: y = (2, 0) is in the range, and
    // x = (1.4, 0) solves Tx = y only up to 0.8.
    let y = Mat::from_real(2, 1, &[2.0, 0.0])?;
    let x_approx = Mat::from_real(2, 1, &[1.4, 0.0])?;
    let eps = 0.8;
    let exact = epsilon_approximate_solve(&t, &y, &x_approx, eps, &tol)?;
    println!(
        "\napproximate solve: x = (1.4, 0), ε = {eps}  →  x0 = ({:.3}, {:.3})",
        exact[(0, 0)].re,
        exact[(1, 0)].re
    );
    println!(
        "‖x − x0‖ = {:.3} ≤ K_T·ε = {:.3}",
        (&x_approx - &exact).frobenius_norm(),
        rep.k_t * eps
    );
    Ok(())
}
