//! Perturbation theory for generalized inverses and stability constants.
//!
//! Starting point: `T` with a bounded generalized inverse `T⁺` and a
//! perturbation `δT` that is T-bounded with constants (a, b). Under the
//! smallness gate
//!
//! ```text
//! a‖T⁺‖ + b‖TT⁺‖ < 1
//! ```
//!
//! the operator `B = T⁺(I + δT T⁺)⁻¹` always satisfies `BT̄B = B`,
//! `R(B) = R(T⁺)` and `N(B) = N(T⁺)`, and the following are equivalent:
//!
//! 1. `B` is a generalized inverse of `T̄ = T + δT`;
//! 2. `(I + δT T⁺)⁻¹ R(T̄) = R(T)`;
//! 3. `(I + δT T⁺)⁻¹ T̄` maps `N(T)` into `R(T)`;
//! 4. `R(T̄) ∩ N(T⁺) = {0}` — equivalently `(I + T†δT)⁻¹N(T) = N(T̄)`.
//!
//! In finite dimensions each of these is further equivalent to
//! `rank T̄ = rank T`, to `dim N(T̄) = dim N(T)`, and to
//! `codim R(T̄) = codim R(T)`. When they hold, the perturbed pseudoinverse has
//! the closed form obtained by feeding the pair `(T̄, B)` to the adjoint-form
//! pseudoinverse expression, `K_T̄ = ‖T̄†‖` stays close to `K_T`, and
//!
//! ```text
//! ‖T̄† − T†‖ ≤ (‖T̄†‖² + ‖T̄†‖‖T†‖ + ‖T†‖²) ‖δT‖.
//! ```
//!
//! When the rank jumps instead, `K_T̄` diverges like `1/‖δT‖` — the
//! continuity sweep in this module demonstrates both branches.

use rand::Rng as _;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geninv::{check_axioms, GenInverse};
use crate::mat::{Mat, Tolerances};
use crate::pinv::{adjoint_form_core, pinv_oracle};
use crate::rng;
use crate::sampling::unit_vector;
use crate::stability::stability_constant;
use crate::subspace::{
    contains, intersection_is_trivial, null_space, null_space_from_svd, range_space,
    range_space_from_svd, subspace_equal, Subspace,
};

/// How the T-bound constants (a, b) were certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundCertificate {
    /// The exact pair a = ‖δT‖, b = 0, always valid for bounded δT.
    Exact,
    /// User-supplied (a, b), verified on a finite sample of vectors only.
    Sampled { samples: usize },
}

/// A gated perturbation instance: `T̄ = T + δT`, the T-bound constants, and
/// the generalized inverse of the base operator.
#[derive(Clone, Debug)]
pub struct Perturbation {
    pub t: Mat,
    pub delta_t: Mat,
    pub t_bar: Mat,
    pub a: f64,
    pub b: f64,
    /// Recorded gate value a‖T⁺‖ + b‖TT⁺‖ (strictly below 1).
    pub gate: f64,
    pub certificate: BoundCertificate,
    pub g: GenInverse,
}

/// Gate a perturbation with the exact T-bound pair (a, b) = (‖δT‖, 0).
pub fn make_perturbation(
    t: &Mat,
    delta_t: &Mat,
    g: &GenInverse,
    tol: &Tolerances,
) -> Result<Perturbation> {
    let a = delta_t.spectral_norm()?;
    gate_perturbation(t, delta_t, g, a, 0.0, BoundCertificate::Exact, tol)
}

/// Gate a perturbation with user-supplied T-bound constants, certified on a
/// finite sample of unit vectors (a certificate of non-violation, not a
/// proof).
pub fn make_perturbation_with_bound(
    t: &Mat,
    delta_t: &Mat,
    g: &GenInverse,
    a: f64,
    b: f64,
    samples: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<Perturbation> {
    if a < 0.0 || b < 0.0 {
        return Err(Error::Infeasible("T-bound constants must be non-negative".into()));
    }
    let mut rng = rng::stream(seed, 0xb0);
    let slack = tol.eq_scaled(delta_t.spectral_norm()?);
    for _ in 0..samples {
        let x = unit_vector(t.cols(), &mut rng);
        let lhs = (delta_t * &x).frobenius_norm();
        let rhs = a * x.frobenius_norm() + b * (t * &x).frobenius_norm();
        if lhs > rhs + slack {
            return Err(Error::Infeasible(format!(
                "sampled vector violates ‖δTx‖ ≤ a‖x‖ + b‖Tx‖: {lhs:.6e} > {rhs:.6e}"
            )));
        }
    }
    gate_perturbation(
        t,
        delta_t,
        g,
        a,
        b,
        BoundCertificate::Sampled { samples },
        tol,
    )
}

fn gate_perturbation(
    t: &Mat,
    delta_t: &Mat,
    g: &GenInverse,
    a: f64,
    b: f64,
    certificate: BoundCertificate,
    _tol: &Tolerances,
) -> Result<Perturbation> {
    if delta_t.shape() != t.shape() {
        return Err(Error::Shape(format!(
            "perturbation is {}x{}, operator is {}x{}",
            delta_t.rows(),
            delta_t.cols(),
            t.rows(),
            t.cols()
        )));
    }
    if g.t != *t {
        return Err(Error::Shape(
            "generalized inverse belongs to a different operator".into(),
        ));
    }
    let t_plus_norm = g.t_plus.spectral_norm()?;
    let ttp_norm = (t * &g.t_plus).spectral_norm()?;
    let gate = a * t_plus_norm + b * ttp_norm;
    if gate >= 1.0 {
        return Err(Error::GateFailed { gate });
    }
    Ok(Perturbation {
        t: t.clone(),
        delta_t: delta_t.clone(),
        t_bar: t + delta_t,
        a,
        b,
        gate,
        certificate,
        g: g.clone(),
    })
}

/// `B = T⁺ (I + δT T⁺)⁻¹`. Under the gate the inverse exists; `B` satisfies
/// `B T̄ B = B` with `R(B) = R(T⁺)` and `N(B) = N(T⁺)` unconditionally.
pub fn build_b(p: &Perturbation, tol: &Tolerances) -> Result<Mat> {
    let m = p.t.rows();
    let factor = &Mat::identity(m) + &(&p.delta_t * &p.g.t_plus);
    Ok(&p.g.t_plus * &factor.solve_inverse(tol)?)
}

/// Verdicts for the equivalent conditions and the finite-dimensional rank
/// criteria. Serialized field names are the stable report keys.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Conditions {
    /// B is a generalized inverse of T̄.
    #[serde(rename = "C1_B_is_geninv")]
    pub b_is_geninv: bool,
    /// (I + δT T⁺)⁻¹ R(T̄) = R(T).
    #[serde(rename = "C2_range_pullback")]
    pub range_pullback: bool,
    /// (I + δT T⁺)⁻¹ T̄ maps N(T) into R(T).
    #[serde(rename = "C3_nullspace_mapped")]
    pub nullspace_mapped: bool,
    /// R(T̄) ∩ N(T⁺) = {0}.
    #[serde(rename = "C4_trivial_intersection")]
    pub trivial_intersection: bool,
    /// (I + T†δT)⁻¹ N(T) = N(T̄).
    #[serde(rename = "C4p_nullspace_pullback")]
    pub nullspace_pullback: bool,
    #[serde(rename = "RankEqual")]
    pub rank_equal: bool,
    #[serde(rename = "DimNullEqual")]
    pub dim_null_equal: bool,
    #[serde(rename = "CodimRangeEqual")]
    pub codim_range_equal: bool,
}

impl Conditions {
    /// The five equivalent conditions agree (all true or all false).
    pub fn equivalence_holds(&self) -> bool {
        let c = self.b_is_geninv;
        self.range_pullback == c
            && self.nullspace_mapped == c
            && self.trivial_intersection == c
            && self.nullspace_pullback == c
    }

    /// The rank criteria agree with the conditions in both directions.
    pub fn rank_criteria_agree(&self) -> bool {
        self.rank_equal == self.trivial_intersection
            && self.dim_null_equal == self.rank_equal
            && self.codim_range_equal == self.rank_equal
    }

    pub fn all_hold(&self) -> bool {
        self.b_is_geninv
            && self.range_pullback
            && self.nullspace_mapped
            && self.trivial_intersection
            && self.nullspace_pullback
            && self.rank_equal
            && self.dim_null_equal
            && self.codim_range_equal
    }
}

/// Evaluate every condition independently by its own definition.
pub fn check_conditions(p: &Perturbation, tol: &Tolerances) -> Result<Conditions> {
    let (m, n) = p.t.shape();
    let svd_t = p.t.svd()?;
    let svd_tbar = p.t_bar.svd()?;
    let rank_t = svd_t.rank(tol);
    let rank_tbar = svd_tbar.rank(tol);
    let null_t = null_space_from_svd(&svd_t, tol);
    let range_t = range_space_from_svd(&svd_t, tol);
    let null_tbar = null_space_from_svd(&svd_tbar, tol);
    let range_tbar = range_space_from_svd(&svd_tbar, tol);

    let inv_y = (&Mat::identity(m) + &(&p.delta_t * &p.g.t_plus)).solve_inverse(tol)?;
    let b = &p.g.t_plus * &inv_y;

    let (_, b_is_geninv) = check_axioms(&p.t_bar, &b, tol)?;

    let pulled = &inv_y * &p.t_bar;
    let range_pullback = subspace_equal(&range_space(&pulled, tol)?, &range_t, tol);

    let mut nullspace_mapped = true;
    for j in 0..null_t.dim() {
        let image = &pulled * &null_t.basis().column(j);
        if !contains(&range_t, &image, tol) {
            nullspace_mapped = false;
            break;
        }
    }

    let null_t_plus = null_space(&p.g.t_plus, tol)?;
    let trivial_intersection = intersection_is_trivial(&range_tbar, &null_t_plus, tol)?;

    let t_dagger = pinv_oracle(&p.t, tol)?.t_dagger;
    let inv_x = (&Mat::identity(n) + &(&t_dagger * &p.delta_t)).solve_inverse(tol)?;
    let mapped_null = if null_t.dim() == 0 {
        Subspace::trivial(n)
    } else {
        range_space(&(&inv_x * null_t.basis()), tol)?
    };
    let nullspace_pullback = subspace_equal(&mapped_null, &null_tbar, tol);

    Ok(Conditions {
        b_is_geninv,
        range_pullback,
        nullspace_mapped,
        trivial_intersection,
        nullspace_pullback,
        rank_equal: rank_t == rank_tbar,
        dim_null_equal: (n - rank_t) == (n - rank_tbar),
        codim_range_equal: (m - rank_t) == (m - rank_tbar),
    })
}

/// Closed-form perturbed pseudoinverse: the adjoint-form expression evaluated
/// at `(T̄, B)`. Requires the trivial-intersection condition.
pub fn perturbed_pinv(p: &Perturbation, tol: &Tolerances) -> Result<Mat> {
    let range_tbar = range_space(&p.t_bar, tol)?;
    let null_t_plus = null_space(&p.g.t_plus, tol)?;
    if !intersection_is_trivial(&range_tbar, &null_t_plus, tol)? {
        return Err(Error::ConditionFailed);
    }
    let b = build_b(p, tol)?;
    adjoint_form_core(&p.t_bar, &b, tol)
}

/// The norm bound `(‖T̄†‖² + ‖T̄†‖‖T†‖ + ‖T†‖²)·‖δT‖` and whether
/// `‖T̄† − T†‖` actually sits below it (with equality slack).
pub fn lipschitz_check(
    p: &Perturbation,
    t_bar_dagger: &Mat,
    tol: &Tolerances,
) -> Result<(f64, bool)> {
    let t_dagger = pinv_oracle(&p.t, tol)?.t_dagger;
    let k_bar = t_bar_dagger.spectral_norm()?;
    let k = t_dagger.spectral_norm()?;
    let bound = (k_bar * k_bar + k_bar * k + k * k) * p.delta_t.spectral_norm()?;
    let diff = (t_bar_dagger - &t_dagger).spectral_norm()?;
    Ok((bound, diff <= bound + tol.eq_scaled(k.max(k_bar))))
}

/// Full perturbation verdict: condition map, B, the perturbed pseudoinverse
/// (closed form when defined, oracle otherwise for the distance field),
/// stability constants, and the norm bound.
#[derive(Clone, Debug)]
pub struct PerturbReport {
    pub conditions: Conditions,
    pub b_matrix: Mat,
    /// Closed-form `T̄†`; `None` when the conditions fail.
    pub t_bar_dagger: Option<Mat>,
    pub k_t: f64,
    pub k_t_bar: f64,
    /// ‖T̄† − T†‖ with T̄† from the closed form when defined, else the oracle.
    pub pinv_delta: f64,
    pub lipschitz_bound: f64,
    pub lipschitz_holds: bool,
    pub equivalence_held: bool,
}

pub fn analyze(p: &Perturbation, tol: &Tolerances) -> Result<PerturbReport> {
    let conditions = check_conditions(p, tol)?;
    let b_matrix = build_b(p, tol)?;
    let t_bar_dagger = if conditions.trivial_intersection {
        Some(adjoint_form_core(&p.t_bar, &b_matrix, tol)?)
    } else {
        None
    };
    let k_t = stability_constant(&p.t, tol)?.k_t;
    let k_t_bar = stability_constant(&p.t_bar, tol)?.k_t;
    let effective_dagger = match &t_bar_dagger {
        Some(d) => d.clone(),
        None => pinv_oracle(&p.t_bar, tol)?.t_dagger,
    };
    let (lipschitz_bound, lipschitz_holds) = lipschitz_check(p, &effective_dagger, tol)?;
    let t_dagger = pinv_oracle(&p.t, tol)?.t_dagger;
    let pinv_delta = (&effective_dagger - &t_dagger).spectral_norm()?;
    Ok(PerturbReport {
        equivalence_held: conditions.equivalence_holds() && conditions.rank_criteria_agree(),
        conditions,
        b_matrix,
        t_bar_dagger,
        k_t,
        k_t_bar,
        pinv_delta,
        lipschitz_bound,
        lipschitz_holds,
    })
}

/// Structural classification of a perturbation direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SpecialCase {
    /// N(T) ⊆ N(δT): the perturbation vanishes on the null space.
    NullPreserving,
    /// R(δT) ⊆ R(T): the perturbation maps into the range.
    RangePreserving,
    /// Both containments hold (e.g. δT = 0 or δT = εT).
    Both,
    Neither,
}

/// Outcome of the special-case analysis: the classification, the structural
/// facts it implies (checked, not assumed), and the specialized closed forms.
#[derive(Clone, Debug)]
pub struct SpecialCaseReport {
    pub case: SpecialCase,
    pub null_preserving: bool,
    pub range_preserving: bool,
    /// N(T̄) = N(T), checked when the null-preserving containment holds.
    pub null_space_kept: Option<bool>,
    /// R(T̄) = R(T), checked when the range-preserving containment holds.
    pub range_space_kept: Option<bool>,
    /// Specialized pseudoinverse from the null-preserving form.
    pub pinv_null_form: Option<Mat>,
    /// Specialized pseudoinverse from the range-preserving form.
    pub pinv_range_form: Option<Mat>,
}

/// `{I − (M − M*)²}⁻¹`, shared by the specialized forms below.
fn bracket_inverse(m: &Mat, tol: &Tolerances) -> Result<Mat> {
    let d = m - &m.adjoint();
    (&Mat::identity(m.rows()) - &(&d * &d)).solve_inverse(tol)
}

/// Specialized perturbed pseudoinverse when N(T) ⊆ N(δT): the left bracket
/// collapses from BT̄ to T⁺T,
/// `T̄† = {I − [T⁺T − (T⁺T)*]²}⁻¹ (T⁺T)* B (T̄B)* {I − [T̄B − (T̄B)*]²}⁻¹`.
pub fn pinv_null_preserving_form(p: &Perturbation, tol: &Tolerances) -> Result<Mat> {
    let b = build_b(p, tol)?;
    let tp_t = &p.g.t_plus * &p.t;
    let tbar_b = &p.t_bar * &b;
    let left = &bracket_inverse(&tp_t, tol)? * &tp_t.adjoint();
    let right = &tbar_b.adjoint() * &bracket_inverse(&tbar_b, tol)?;
    Ok(&(&left * &b) * &right)
}

/// Specialized perturbed pseudoinverse when R(δT) ⊆ R(T): the right bracket
/// collapses from T̄B to TT⁺,
/// `T̄† = {I − [BT̄ − (BT̄)*]²}⁻¹ (BT̄)* B (TT⁺)* {I − [TT⁺ − (TT⁺)*]²}⁻¹`.
pub fn pinv_range_preserving_form(p: &Perturbation, tol: &Tolerances) -> Result<Mat> {
    let b = build_b(p, tol)?;
    let b_tbar = &b * &p.t_bar;
    let t_tp = &p.t * &p.g.t_plus;
    let left = &bracket_inverse(&b_tbar, tol)? * &b_tbar.adjoint();
    let right = &t_tp.adjoint() * &bracket_inverse(&t_tp, tol)?;
    Ok(&(&left * &b) * &right)
}

/// Classify the perturbation and, where a containment holds, verify the
/// structural consequence and evaluate the specialized closed form.
pub fn special_cases(p: &Perturbation, tol: &Tolerances) -> Result<SpecialCaseReport> {
    let delta_norm = p.delta_t.spectral_norm()?;
    let null_t = null_space(&p.t, tol)?;
    let range_t = range_space(&p.t, tol)?;

    // N(T) ⊆ N(δT): δT annihilates the null-space basis.
    let null_preserving = if null_t.dim() == 0 {
        true
    } else {
        (&p.delta_t * null_t.basis()).spectral_norm()? <= tol.eq_scaled(delta_norm)
    };
    // R(δT) ⊆ R(T): the co-range component of δT vanishes.
    let p_range = range_t.basis() * &range_t.basis().adjoint();
    let co_range_part = &p.delta_t - &(&p_range * &p.delta_t);
    let range_preserving = co_range_part.spectral_norm()? <= tol.eq_scaled(delta_norm);

    let case = match (null_preserving, range_preserving) {
        (true, true) => SpecialCase::Both,
        (true, false) => SpecialCase::NullPreserving,
        (false, true) => SpecialCase::RangePreserving,
        (false, false) => SpecialCase::Neither,
    };

    let mut report = SpecialCaseReport {
        case,
        null_preserving,
        range_preserving,
        null_space_kept: None,
        range_space_kept: None,
        pinv_null_form: None,
        pinv_range_form: None,
    };
    if null_preserving {
        let null_tbar = null_space(&p.t_bar, tol)?;
        report.null_space_kept = Some(subspace_equal(&null_tbar, &null_t, tol));
        report.pinv_null_form = Some(pinv_null_preserving_form(p, tol)?);
    }
    if range_preserving {
        let range_tbar = range_space(&p.t_bar, tol)?;
        report.range_space_kept = Some(subspace_equal(&range_tbar, &range_t, tol));
        report.pinv_range_form = Some(pinv_range_preserving_form(p, tol)?);
    }
    Ok(report)
}

/// Continuity verdict of a scale sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// Rank preserved at every scale; K_T̄ → K_T.
    Continuous,
    /// Rank jumped at every scale; K_T̄ diverges like 1/scale.
    Divergent,
    Mixed,
}

/// One row of a continuity sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub scale: f64,
    pub rank_equal: bool,
    pub k_t_bar: f64,
    /// |K_T̄ − K_T|.
    pub k_abs_diff: f64,
    /// ‖T̄† − T†‖.
    pub pinv_delta: f64,
    pub lipschitz_bound: f64,
    /// K_T̄ · scale; stabilizes near a constant on the divergent branch.
    pub k_scale_product: f64,
}

#[derive(Clone, Debug)]
pub struct SweepTable {
    pub k_t: f64,
    pub rows: Vec<SweepRow>,
    pub verdict: Verdict,
}

/// Sweep `δT = s · direction` over decreasing scales and record how the
/// stability constant and pseudoinverse respond. The gate must hold at the
/// largest scale (hence at all of them).
pub fn continuity_sweep(
    t: &Mat,
    direction: &Mat,
    scales: &[f64],
    g: &GenInverse,
    tol: &Tolerances,
) -> Result<SweepTable> {
    if scales.is_empty() {
        return Err(Error::Infeasible("empty scale list".into()));
    }
    if scales.iter().any(|&s| s <= 0.0) {
        return Err(Error::Infeasible("scales must be positive".into()));
    }
    if scales.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Infeasible(
            "scales must be strictly decreasing toward 0".into(),
        ));
    }
    // Gate check at the largest scale; smaller scales only shrink the gate.
    make_perturbation(t, &direction.scale_re(scales[0]), g, tol)?;

    let k_t = stability_constant(t, tol)?.k_t;
    let mut rows = Vec::with_capacity(scales.len());
    for &s in scales {
        let p = make_perturbation(t, &direction.scale_re(s), g, tol)?;
        let rep = analyze(&p, tol)?;
        rows.push(SweepRow {
            scale: s,
            rank_equal: rep.conditions.rank_equal,
            k_t_bar: rep.k_t_bar,
            k_abs_diff: (rep.k_t_bar - k_t).abs(),
            pinv_delta: rep.pinv_delta,
            lipschitz_bound: rep.lipschitz_bound,
            k_scale_product: rep.k_t_bar * s,
        });
    }
    let preserved = rows.iter().filter(|r| r.rank_equal).count();
    let verdict = if preserved == rows.len() {
        Verdict::Continuous
    } else if preserved == 0 {
        Verdict::Divergent
    } else {
        Verdict::Mixed
    };
    Ok(SweepTable { k_t, rows, verdict })
}

/// Random gated perturbation instance for the equivalence suites: a base
/// operator with the given rank, random oblique complements, and either a
/// rank-preserving or rank-jumping direction scaled into the gate.
pub fn random_instance(
    rows: usize,
    cols: usize,
    rank: usize,
    jump: bool,
    seed: u64,
    tol: &Tolerances,
) -> Result<Option<(Perturbation, GenInverse)>> {
    use crate::sampling;
    let mut rand = rng::stream(seed, 0x51);
    let t = sampling::matrix_with_rank(rows, cols, rank, &mut rand);
    let g = crate::geninv::geninv_random(&t, seed ^ 0xa5a5, tol)?;
    let t_plus_norm = g.t_plus.spectral_norm()?;
    let direction = if jump {
        match sampling::rank_jumping_direction(&t, &mut rand, tol)? {
            Some(d) => d,
            None => return Ok(None),
        }
    } else {
        match rand.gen_range(0..3) {
            0 => sampling::range_preserving_direction(&t, &mut rand, tol)?,
            1 => sampling::null_preserving_direction(&t, &mut rand, tol)?,
            _ => t.scale_re(0.3),
        }
    };
    let target = rand.gen_range(0.05..0.5);
    let delta = sampling::scale_to_gate(&direction, t_plus_norm, target)?;
    let p = make_perturbation(&t, &delta, &g, tol)?;
    Ok(Some((p.clone(), g)))
}
