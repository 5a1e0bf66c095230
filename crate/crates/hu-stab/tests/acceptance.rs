//! Acceptance suite: every release-gating property at its pinned tolerance,
//! one printed verdict line per criterion.
//!
//! Run with `cargo test -p hu-stab --test acceptance -- --nocapture` to see
//! the per-criterion lines; the counts follow `selftest::Counts::default()`.

use hu_stab::mat::Tolerances;
use hu_stab::selftest::{self, Counts, PropertyResult};
use hu_stab::{io, rng, sampling};

const SEED: u64 = 42;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn report(criterion: u32, r: &PropertyResult) {
    let verdict = if r.pass { "PASS" } else { "FAIL" };
    println!(
        "acceptance criterion {criterion:02} ({}): {verdict} [cases={}, failures={}, max_residual={:.3e}]",
        r.name, r.cases, r.failures, r.max_residual
    );
    assert!(
        r.pass,
        "criterion {criterion} ({}) failed on {}/{} cases (max residual {:.3e})",
        r.name, r.failures, r.cases, r.max_residual
    );
}

#[test]
fn criterion_01_stability_constant_identity() {
    let r = selftest::prop_stability_identity(SEED, &tol(), Counts::default().stability_identity)
        .unwrap();
    report(1, &r);
}

#[test]
fn criterion_02_pinv_three_route_agreement() {
    let r = selftest::prop_pinv_agreement(SEED, &tol(), Counts::default().pinv_agreement).unwrap();
    report(2, &r);
}

#[test]
fn criterion_03_projector_orthogonalization() {
    let r = selftest::prop_projector_orthogonalization(
        SEED,
        &tol(),
        Counts::default().projector_orthogonalization,
    )
    .unwrap();
    report(3, &r);
}

#[test]
fn criterion_04_geninv_construction() {
    let r = selftest::prop_geninv_construction(SEED, &tol(), Counts::default().geninv_construction)
        .unwrap();
    report(4, &r);
}

#[test]
fn criterion_05_perturbation_equivalence() {
    let r = selftest::prop_perturbation_equivalence(
        SEED,
        &tol(),
        Counts::default().perturbation_equivalence,
    )
    .unwrap();
    report(5, &r);
}

#[test]
fn criterion_06_perturbed_pinv_formula() {
    let r = selftest::prop_perturbed_pinv_formula(
        SEED,
        &tol(),
        Counts::default().perturbation_equivalence,
    )
    .unwrap();
    report(6, &r);
}

#[test]
fn criterion_07_lipschitz_bound() {
    let r = selftest::prop_lipschitz_bound(SEED, &tol(), Counts::default().perturbation_equivalence)
        .unwrap();
    report(7, &r);
}

#[test]
fn criterion_08_continuity_dichotomy() {
    let r = selftest::prop_continuity_dichotomy(&tol()).unwrap();
    report(8, &r);
}

#[test]
fn criterion_09_special_case_forms() {
    let r = selftest::prop_special_case_forms(
        SEED,
        &tol(),
        Counts::default().special_cases_per_branch,
    )
    .unwrap();
    report(9, &r);
}

#[test]
fn criterion_10_witness_attainment() {
    let counts = Counts::default();
    let r = selftest::prop_witness_attainment(
        SEED,
        &tol(),
        counts.witness_operators,
        counts.witness_samples,
    )
    .unwrap();
    report(10, &r);
}

#[test]
fn criterion_11_cli_determinism_and_roundtrip() {
    // The selftest command run twice with the same seed must produce
    // byte-identical JSON and exit successfully.
    let bin = env!("CARGO_BIN_EXE_hu-stab");
    let run = || {
        std::process::Command::new(bin)
            .args(["selftest", "--seed", "42"])
            .env_remove("HU_STAB_SEED")
            .output()
            .expect("selftest run")
    };
    let first = run();
    let second = run();
    assert!(first.status.success(), "selftest exited nonzero");
    assert_eq!(first.stdout, second.stdout, "selftest output not byte-identical");

    // 50 random matrices through both file formats, written to real files,
    // must reproduce every entry exactly (17 significant digits).
    let dir = tempfile::tempdir().unwrap();
    let mut rand = rng::stream(SEED, 99);
    let mut failures = 0;
    for k in 0..50 {
        let (m, n) = sampling::random_shape(&mut rand);
        let t = sampling::gaussian_mat(m, n, &mut rand);
        let csv = dir.path().join(format!("m{k}.csv"));
        let mm = dir.path().join(format!("m{k}.mtx"));
        io::write_matrix(&csv, io::FileFormat::Csv, &t).unwrap();
        io::write_matrix(&mm, io::FileFormat::MatrixMarketDense, &t).unwrap();
        let from_csv = io::read_matrix(&csv, io::FileFormat::Csv).unwrap();
        let from_mm = io::read_matrix(&mm, io::FileFormat::MatrixMarketDense).unwrap();
        if from_csv != t || from_mm != t {
            failures += 1;
        }
    }
    let r = PropertyResult {
        name: "cli_determinism_and_roundtrip",
        cases: 52,
        failures,
        max_residual: 0.0,
        pass: failures == 0,
        note: None,
    };
    report(11, &r);
}
