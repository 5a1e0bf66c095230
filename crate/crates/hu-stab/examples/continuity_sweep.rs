//! The continuity dichotomy of the stability constant.
//!
//! Shrink δT = s·direction toward zero. If the rank never jumps, K_T̄ → K_T
//! (continuity). If the rank jumps at every scale, K_T̄ blows up like 1/s —
//! the product K_T̄·s stabilizes. The scalar family T = diag(1, 0) shows both
//! branches exactly.
//!
//! ```bash
//! cargo run -p hu-stab --example continuity_sweep
//! ```

use hu_stab::geninv::geninv_orthogonal;
use hu_stab::perturb::continuity_sweep;
use hu_stab::{Mat, Tolerances};

fn main() -> hu_stab::Result<()> {
    let tol = Tolerances::default();
    let t = Mat::diag_real(&[1.0, 0.0]);
    let g = geninv_orthogonal(&t, &tol)?;
    let scales: Vec<f64> = (1..=10).map(|k| 0.5f64.powi(k)).collect();

    for (label, dir) in [
        ("rank-preserving direction diag(1, 0)", Mat::diag_real(&[1.0, 0.0])),
        ("rank-jumping direction diag(0, 1)", Mat::diag_real(&[0.0, 1.0])),
    ] {
        let table = continuity_sweep(&t, &dir, &scales, &g, &tol)?;
        println!("{label}  (K_T = {}):", table.k_t);
        println!(
            "{:>12} {:>6} {:>12} {:>14} {:>12}",
            "scale", "rank=", "K_T̄", "|K_T̄ − K_T|", "K_T̄ · s"
        );
        for row in &table.rows {
            println!(
                "{:>12.6} {:>6} {:>12.6} {:>14.3e} {:>12.6}",
                row.scale, row.rank_equal, row.k_t_bar, row.k_abs_diff, row.k_scale_product
            );
        }
        println!("verdict: {:?}\n", table.verdict);
    }
    Ok(())
}
