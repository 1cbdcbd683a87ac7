use btk::acceptance::{run_all, run_criterion, Config};

fn check(id: usize) {
    let r = run_criterion(id, &Config::default());
    println!("{}", r.line());
    assert!(r.pass, "{}", r.line());
}

macro_rules! criteria {
    ($($name:ident = $id:expr),* $(,)?) => {
        $(#[test] fn $name() { check($id); })*
    };
}

criteria! {
    c01_degree_example = 1,
    c02_inner_outer_degrees = 2,
    c03_hankel_product = 3,
    c04_abrahamse_counterexample = 4,
    c05_completion_families = 5,
    c06_pair_counterexample = 6,
    c07_pair_theta_mismatch = 7,
    c08_model_matrices = 8,
    c09_representation_identity = 9,
    c10_rank_formula = 10,
    c11_measure_infimum = 11,
    c12_coprime_with_scalar = 12,
    c13_hermite_fejer_fidelity = 13,
    c14_degree_equality = 14,
}

#[test]
fn corrupted_tolerance_fails_a_named_criterion() {
    let cfg = Config { tol: 1e-30, ..Config::default() };
    let failed: Vec<_> = run_all(&cfg).into_iter().filter(|r| !r.pass).map(|r| r.name).collect();
    assert!(!failed.is_empty());
}
