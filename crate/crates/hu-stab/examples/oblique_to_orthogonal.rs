//! Orthogonalizing an oblique projector in closed form.
//!
//! Any projector P onto a subspace M — however oblique — determines the
//! orthogonal projector onto the same subspace through
//! P_M^⊥ = P P* [I − (P − P*)²]⁻¹, with the bracket inverse applying on
//! either side. This example builds a visibly oblique projector, orthogonalizes
//! it, and compares against the projector built directly from the basis.
//!
//! ```bash
//! cargo run -p hu-stab --example oblique_to_orthogonal
//! ```

use hu_stab::projector::{oblique_projector, orthogonal_projector, orthogonalize};
use hu_stab::subspace::{random_complement, range_space};
use hu_stab::{rng, sampling, Mat, Tolerances};

fn main() -> hu_stab::Result<()> {
    let tol = Tolerances::default();
    let mut rand = rng::seeded(5);

    let span = sampling::gaussian_mat(6, 2, &mut rand);
    let m = range_space(&span, &tol)?;
    let oblique_partner = random_complement(&m, 99);

    let p = oblique_projector(&m, &oblique_partner, &tol)?;
    println!("subspace dim {} in ℂ^6", m.dim());
    println!("oblique projector norm ‖P‖ = {:.4}", p.norm()?);
    let idem = (&(&p.matrix * &p.matrix) - &p.matrix).spectral_norm()?;
    println!("idempotency residual ‖P² − P‖ = {idem:.3e}");
    let skew = (&p.matrix - &p.matrix.adjoint()).spectral_norm()?;
    println!("self-adjointness defect ‖P − P*‖ = {skew:.3e} (nonzero: P is oblique)");

    let q = orthogonalize(&p, &tol)?;
    let direct = orthogonal_projector(&m);
    println!("\nafter orthogonalization:");
    println!(
        "‖orthogonalize(P) − basis-built projector‖ = {:.3e}",
        (&q.matrix - &direct.matrix).spectral_norm()?
    );
    println!(
        "self-adjointness defect = {:.3e}, norm = {:.6}",
        (&q.matrix - &q.matrix.adjoint()).spectral_norm()?,
        q.norm()?
    );

    // Both orders of the closed form agree.
    let d = &p.matrix - &p.matrix.adjoint();
    let bracket = &Mat::identity(6) - &(&d * &d);
    let inv = bracket.solve_inverse(&tol)?;
    let pp = &p.matrix * &p.matrix.adjoint();
    println!(
        "product-order difference of the two displayed forms = {:.3e}",
        (&(&pp * &inv) - &(&inv * &pp)).spectral_norm()?
    );
    Ok(())
}
