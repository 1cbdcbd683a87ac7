//! The acceptance suite: fourteen fixed checks, shared by the integration test
//! target and `btk selftest`.
//!
//! Every randomized criterion draws from its own `ChaCha8Rng` seeded by
//! `seed ^ id`, so a single criterion can be rerun in isolation.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{self, CompletionClass, Settings};
use crate::hardy_ops;
use crate::linalg;
use crate::matrix_inner::{self, PotapovFactor, PotapovProduct};
use crate::poly::Poly;
use crate::ratmat::{blaschke_factor, monomial, RatMat};
use crate::scalar_inner::{self, AtomicSingularMeasure, BlaschkeProduct, ScalarInner};
use crate::symbol::{self, MatrixSymbol};
use crate::{c64, BtkError, CMat, Result, C64};

#[derive(Debug, Clone, Copy)]
pub struct Config {
    pub tol: f64,
    pub seed: u64,
    pub samples: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { tol: 1e-8, seed: 20260101, samples: 1024 }
    }
}

impl Config {
    fn settings(&self) -> Settings {
        Settings { tol: self.tol, samples: self.samples }
    }

    fn rng(&self, id: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ (id as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl CriterionResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"id": self.id, "name": self.name, "pass": self.pass, "detail": self.detail})
    }

    /// One line, `PASS  3 hankel-product: ...`.
    pub fn line(&self) -> String {
        format!("{} {:>2} {}: {}", if self.pass { "PASS" } else { "FAIL" }, self.id, self.name, self.detail)
    }
}

pub const CRITERIA: [(usize, &str); 14] = [
    (1, "degree-example"),
    (2, "inner-outer-degrees"),
    (3, "hankel-product"),
    (4, "abrahamse-counterexample"),
    (5, "completion-families"),
    (6, "pair-counterexample"),
    (7, "pair-theta-mismatch"),
    (8, "model-matrices"),
    (9, "representation-identity"),
    (10, "rank-formula"),
    (11, "measure-infimum"),
    (12, "coprime-with-scalar"),
    (13, "hermite-fejer-fidelity"),
    (14, "degree-equality"),
];

pub fn criterion_name(id: usize) -> Option<&'static str> {
    CRITERIA.iter().find(|c| c.0 == id).map(|c| c.1)
}

pub fn run_all(cfg: &Config) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|&(id, _)| run_criterion(id, cfg)).collect()
}

/// Run one criterion; library errors count as a failure with the error as detail.
pub fn run_criterion(id: usize, cfg: &Config) -> CriterionResult {
    let name = criterion_name(id).unwrap_or("unknown");
    let outcome = match id {
        1 => degree_example(),
        2 => inner_outer_degrees(),
        3 => hankel_product(),
        4 => abrahamse_counterexample(cfg),
        5 => completion_families(cfg),
        6 => pair_counterexample(cfg),
        7 => pair_theta_mismatch(cfg),
        8 => model_matrices(),
        9 => representation_identity(cfg),
        10 => rank_formula(cfg),
        11 => measure_infimum(),
        12 => coprime_with_scalar(cfg),
        13 => hermite_fejer_fidelity(cfg),
        14 => degree_equality(cfg),
        _ => Err(BtkError::InvalidInput(format!("no criterion {id}"))),
    };
    let (pass, detail) = match outcome {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult { id, name, pass, detail }
}

type Outcome = Result<(bool, String)>;

fn r(x: f64) -> C64 {
    c64(x, 0.0)
}

fn sym(f: &RatMat) -> Result<MatrixSymbol> {
    MatrixSymbol::from_ratmat(f)
}

fn zbar_plus(k: f64) -> RatMat {
    monomial(-1).add(&monomial(1).scale(r(k)))
}

fn disk_point(rng: &mut ChaCha8Rng, rmax: f64) -> C64 {
    C64::from_polar(rmax * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..2.0 * PI))
}

fn gauss_like(rng: &mut ChaCha8Rng) -> C64 {
    c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn random_mat(rng: &mut ChaCha8Rng, n: usize) -> CMat {
    CMat::from_fn(n, n, |_, _| gauss_like(rng))
}

// Points of 𝔻 kept apart so that Blaschke zeros do not nearly collide.
fn separated_points(rng: &mut ChaCha8Rng, k: usize, rmax: f64) -> Vec<C64> {
    let mut pts: Vec<C64> = vec![];
    while pts.len() < k {
        let a = disk_point(rng, rmax);
        if pts.iter().all(|&b| scalar_inner::pseudo_hyperbolic(a, b) > 0.3) {
            pts.push(a);
        }
    }
    pts
}

fn random_blaschke(rng: &mut ChaCha8Rng, max_deg: usize) -> Result<BlaschkeProduct> {
    let d = rng.gen_range(1..=max_deg);
    let distinct = rng.gen_range(1..=d);
    let pts = separated_points(rng, distinct, 0.8);
    let mut zeros: Vec<(C64, usize)> = pts.iter().map(|&a| (a, 1)).collect();
    for _ in distinct..d {
        let j = rng.gen_range(0..distinct);
        zeros[j].1 += 1;
    }
    BlaschkeProduct::new(C64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI)), &zeros)
}

fn unit_vector(rng: &mut ChaCha8Rng, n: usize) -> CMat {
    let v = CMat::from_fn(n, 1, |_, _| gauss_like(rng));
    let nrm = v.norm();
    v / r(nrm)
}

fn matpoly_symbol(coeffs: Vec<CMat>) -> RatMat {
    RatMat::from_matpoly(coeffs)
}

// ---------------------------------------------------------------------------
// Fixed examples

fn degree_example() -> Outcome {
    let z = monomial(1);
    let phi = RatMat::from_entries(&[
        vec![z.clone(), symbol::bfactor(r(0.5)).mul(&z).neg()],
        vec![RatMat::zeros(1, 1), RatMat::scalar_const(r(1.0))],
    ]);
    let deg_theta = symbol::dss_right(&phi)?.degree();
    let det = phi.det();
    let deg_det = det.num_degree() as i32 + det.shift;
    Ok((deg_theta == 2 && deg_det == 1, format!("deg Θ = {deg_theta}, deg det Φ = {deg_det}")))
}

fn inner_outer_degrees() -> Outcome {
    let z = monomial(1);
    let zp2 = RatMat::from_matpoly(vec![CMat::from_element(1, 1, r(2.0)), CMat::from_element(1, 1, r(1.0))]);
    let f = RatMat::block_diag(&[z, zp2]);
    let (fi, _) = symbol::inner_outer(&f)?;
    let left = symbol::dss_left(&f)?.degree();
    let ok = fi.degree() == 1 && left == 2 && fi.degree() <= left;
    Ok((ok, format!("deg Φ_i = {}, deg Θ_left = {left}", fi.degree())))
}

fn hankel_product() -> Outcome {
    let one = RatMat::scalar_const(r(1.0));
    let phi = sym(&RatMat::block_diag(&[one.clone(), monomial(-1)]))?;
    let psi = sym(&RatMat::block_diag(&[monomial(-1), one]))?;
    let (hp, hq) = (hardy_ops::hankel(&phi, 32).mat, hardy_ops::hankel(&psi, 32).mat);
    let prod = linalg::norm2(&(&hp * &hq));
    let (np, nq) = (linalg::norm2(&hp), linalg::norm2(&hq));
    let ok = prod < 1e-10 && (np - 1.0).abs() < 1e-10 && (nq - 1.0).abs() < 1e-10;
    Ok((ok, format!("‖H_Φ H_Ψ‖ = {prod:.2e}, ‖H_Φ‖ = {np:.12}, ‖H_Ψ‖ = {nq:.12}")))
}

fn abrahamse_counterexample(cfg: &Config) -> Outcome {
    let phi = sym(&RatMat::block_diag(&[zbar_plus(1.0), monomial(1)]))?;
    let v = analysis::hyponormal(&phi, 32, &cfg.settings())?;
    let sing = symbol::tensored_singularity(&phi, symbol::Part::Minus)?;
    let ok = v.hyponormal && v.min_eigenvalue >= -cfg.tol && v.commutator_norm > 0.5 && sing.is_empty();
    Ok((
        ok,
        format!("min eig = {:.2e}, ‖[T*,T]‖ = {:.4}, singularity zeros = {}", v.min_eigenvalue, v.commutator_norm, sing.len()),
    ))
}

fn completion_families(cfg: &Config) -> Outcome {
    let mut rng = cfg.rng(5);
    let (mut worst, mut fails) = (0.0f64, vec![]);
    for draw in 0..20 {
        let alpha = disk_point(&mut rng, 0.7);
        let th = rng.gen_range(0.0..2.0 * PI);
        let zeta = disk_point(&mut rng, 1.0);
        let b = blaschke_factor(alpha);
        let (phi_e, psi_e) = if draw < 10 {
            let f = b.scale(C64::from_polar(1.0, th)).add(&RatMat::scalar_const(zeta));
            let om = rng.gen_range(0.0..2.0 * PI);
            (f.clone(), f.scale(C64::from_polar(1.0, om)))
        } else {
            let mu = C64::from_polar(if draw % 2 == 0 { 0.5 } else { 2.0 }, rng.gen_range(0.0..2.0 * PI));
            let f = b
                .star()
                .scale(mu)
                .add(&b.scale(C64::from_polar((1.0 + mu.norm_sqr()).sqrt(), th)))
                .add(&RatMat::scalar_const(zeta));
            (f.clone(), f.scale(C64::from_polar(1.0, PI - 2.0 * mu.arg())))
        };
        let v = analysis::completion_classify(alpha, alpha, &phi_e, &psi_e, 48, &cfg.settings())?;
        worst = worst.max(v.commutator_norm);
        if v.class != CompletionClass::Normal || v.commutator_norm >= 1e-7 {
            fails.push(format!("draw {draw}: {:?} ({})", v.class, v.reason));
        }
    }
    let ok = fails.is_empty();
    Ok((ok, if ok { format!("20 draws Normal, max ‖[T*,T]‖ = {worst:.2e}") } else { fails.join("; ") }))
}

fn pair_counterexample(cfg: &Config) -> Outcome {
    let z0 = RatMat::zeros(1, 1);
    let phi = sym(&RatMat::block_diag(&[zbar_plus(2.0), z0.clone()]))?;
    let psi = sym(&RatMat::block_diag(&[z0, zbar_plus(2.0)]))?;
    let v = analysis::pair_analyze(&phi, &psi, 32, &cfg.settings())?;
    let ok = v.hyponormal && v.min_eigenvalue >= -cfg.tol && v.lambda_ls_residual > 0.1;
    Ok((ok, format!("min eig = {:.2e}, Λ residual = {:.4}", v.min_eigenvalue, v.lambda_ls_residual)))
}

fn pair_theta_mismatch(cfg: &Config) -> Outcome {
    let b = RatMat::scalar(&Poly::new(vec![r(0.5), r(1.0)]), &Poly::new(vec![r(1.0), r(0.5)]), 0)?;
    let phi = MatrixSymbol::from_parts(monomial(1).scale(r(4.0)), monomial(1))?;
    let psi = MatrixSymbol::from_parts(monomial(1).mul(&b).scale(r(2.0)), monomial(1))?;
    let v = analysis::pair_analyze(&phi, &psi, 48, &cfg.settings())?;
    let t = v.thetas.as_ref().ok_or_else(|| BtkError::Internal("no θ forms extracted".into()))?;
    let theta3_is_b = t.theta3.zeros.len() == 1 && t.theta3.zeros[0].1 == 1 && (t.theta3.zeros[0].0 - r(-0.5)).norm() < 1e-10;
    let ok = v.hyponormal && t.theta1.degree() == 0 && theta3_is_b;
    Ok((ok, format!("hyponormal = {}, deg θ₁ = {}, θ₃ zeros = {:?}", v.hyponormal, t.theta1.degree(), t.theta3.zeros)))
}

fn model_matrices() -> Outcome {
    let m = hardy_ops::m_matrix(&BlaschkeProduct::z_power(3));
    let q = MatrixSymbol::analytic(RatMat::block_diag(&[monomial(2), monomial(2)]));
    let qm = hardy_ops::q_of_m(&q, &m)?;
    let mut want = CMat::zeros(6, 6);
    want[(4, 0)] = r(1.0);
    want[(5, 1)] = r(1.0);
    let qq = qm.adjoint() * &qm;
    let want_qq = linalg::diag(&[r(1.0), r(1.0), r(0.0), r(0.0), r(0.0), r(0.0)]);
    let qsq = MatrixSymbol::from_ratmat(&q.to_ratmat().star().mul(&q.to_ratmat()))?;
    let qsq_m = hardy_ops::q_of_m(&qsq, &m)?;
    let checks = [qm == want, qq == want_qq, qsq_m == linalg::eye(6)];
    Ok((checks.iter().all(|&c| c), format!("Q(M), Q(M)*Q(M), (Q*Q)(M) exact: {checks:?}")))
}

// ---------------------------------------------------------------------------
// Randomized criteria

fn representation_identity(cfg: &Config) -> Outcome {
    let mut rng = cfg.rng(9);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let deg = rng.gen_range(0..=3);
        let p: Vec<CMat> = (0..=deg).map(|_| random_mat(&mut rng, 2)).collect();
        let theta = random_blaschke(&mut rng, 4)?;
        worst = worst.max(hardy_ops::verify_representation(&p, &theta));
    }
    Ok((worst < 1e-9, format!("max ‖W*(T_P)_Θ W − P(M)‖ = {worst:.2e} over 20 draws")))
}

/// `Φ = P₊ + P_−*` with `deg P_− = d ≥ 1`, `deg P₊ = d + e`, and the leading
/// coefficient of `P_−` a multiple of the identity.
fn trig_symbol(rng: &mut ChaCha8Rng, d: usize, e: usize) -> Result<MatrixSymbol> {
    let plus_scale = rng.gen_range(1.5..3.0);
    let mut minus = vec![CMat::zeros(2, 2)];
    for j in 1..=d {
        minus.push(if j == d { linalg::scalar(2, C64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI))) } else { random_mat(rng, 2) * r(0.5) });
    }
    let mut plus = vec![random_mat(rng, 2)];
    for j in 1..=d + e {
        let c = if j == d + e { linalg::nearest_unitary(&random_mat(rng, 2)) * r(plus_scale) } else { random_mat(rng, 2) * r(0.3) };
        plus.push(c);
    }
    MatrixSymbol::from_parts(matpoly_symbol(plus), matpoly_symbol(minus))
}

/// A scalar hyponormal trig-polynomial pair of coefficient lists `(φ₊, φ_−)` with
/// `deg φ₊ = d + e`, `deg φ_− = d` and leading coefficient `c` in `φ_−`.  The
/// contractive `k = z^e(k_e + k_{e+1}z + ⋯)` lies in `C(φ)` because `φ_−*` is
/// taken to be the co-analytic part of `k φ₊*`.
fn hyponormal_scalar(rng: &mut ChaCha8Rng, d: usize, e: usize, c: C64) -> (Vec<C64>, Vec<C64>) {
    let m = d + e;
    let mut a: Vec<C64> = (0..m).map(|_| gauss_like(rng)).collect();
    a.push(C64::from_polar(rng.gen_range(1.5..2.5), rng.gen_range(0.0..2.0 * PI)));
    let mut k = vec![r(0.0); m];
    k[e] = (c / a[m]).conj();
    let budget = (0.95 - k[e].norm()) / m as f64;
    for ki in k.iter_mut().skip(e + 1) {
        *ki = gauss_like(rng) * (budget * rng.gen::<f64>() / 2f64.sqrt());
    }
    let mut minus = vec![r(0.0); d + 1];
    for (kk, slot) in minus.iter_mut().enumerate().skip(1) {
        for i in e..m {
            if i + kk <= m {
                *slot += a[i + kk] * k[i].conj();
            }
        }
    }
    (a, minus)
}

/// A hyponormal normal symbol `Φ = U diag(φ₁, φ₂) U*` with `deg Φ₊ = d + e`,
/// `deg Φ_− = d` and diagonal-constant leading coefficient of `Φ_−`.
fn hyponormal_trig_symbol(rng: &mut ChaCha8Rng, d: usize, e: usize) -> Result<MatrixSymbol> {
    let c = C64::from_polar(rng.gen_range(0.5..1.0), rng.gen_range(0.0..2.0 * PI));
    let u = linalg::nearest_unitary(&random_mat(rng, 2));
    let (p1, m1) = hyponormal_scalar(rng, d, e, c);
    let (p2, m2) = hyponormal_scalar(rng, d, e, c);
    let conj = |x: &[C64], y: &[C64]| -> Vec<CMat> { x.iter().zip(y).map(|(&s, &t)| &u * linalg::diag(&[s, t]) * u.adjoint()).collect() };
    MatrixSymbol::from_parts(matpoly_symbol(conj(&p1, &p2)), matpoly_symbol(conj(&m1, &m2)))
}

fn rank_formula(cfg: &Config) -> Outcome {
    let mut rng = cfg.rng(10);
    let set = cfg.settings();
    let (mut done, mut tries, mut fails, mut seen) = (0, 0, vec![], vec![]);
    while done < 10 && tries < 200 {
        tries += 1;
        let d = rng.gen_range(1..=2);
        let e = rng.gen_range(0..=3 - d);
        let phi = hyponormal_trig_symbol(&mut rng, d, e)?;
        // Ψ = λΦ + ζI keeps θ₀ = θ₂ and the shared θ₁, with B(γ₀), D(γ₀) diagonal-constant.
        let lam = C64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..2.0 * PI));
        let zeta = linalg::scalar(2, gauss_like(&mut rng));
        let psi = phi.scale(lam).add(&MatrixSymbol::analytic(RatMat::constant(zeta)));
        let v = analysis::pair_analyze(&phi, &psi, 24, &set)?;
        if !v.hyponormal || !v.hypotheses {
            continue;
        }
        let rep = analysis::rank_formula(&phi, &psi, 24, &set)?;
        done += 1;
        seen.push(rep.rank_single);
        if !rep.coincide() {
            fails.push(format!("{rep:?}"));
        }
    }
    if done < 10 {
        return Ok((false, format!("only {done} hyponormal pairs in {tries} draws")));
    }
    let ok = fails.is_empty();
    Ok((ok, if ok { format!("10 pairs, ranks {seen:?}") } else { fails.join("; ") }))
}

fn measure_infimum() -> Outcome {
    let grid = [r(1.0), c64(0.0, 1.0), r(-1.0), c64(0.0, -1.0)];
    let to_measure = |code: usize| -> Result<(AtomicSingularMeasure, [f64; 4])> {
        let mut m = [0.0; 4];
        let mut c = code;
        for slot in m.iter_mut() {
            *slot = (c % 3) as f64;
            c /= 3;
        }
        let atoms: Vec<(C64, f64)> = grid.iter().zip(m.iter()).filter(|(_, &w)| w > 0.0).map(|(&t, &w)| (t, w)).collect();
        Ok((AtomicSingularMeasure::new(&atoms)?, m))
    };
    let (mut pairs, mut bad_inf, mut bad_cop) = (0, 0, 0);
    for a in 0..81 {
        let (mu, ma) = to_measure(a)?;
        for b in 0..81 {
            let (nu, mb) = to_measure(b)?;
            pairs += 1;
            let inf = scalar_inner::measure_inf(&mu, &nu);
            // (μ∧ν)(E) = min over S ⊆ E of μ(S) + ν(E∖S), for every E ⊆ grid
            for e in 0..16usize {
                let mut best = f64::INFINITY;
                for s in 0..16usize {
                    if s & !e != 0 {
                        continue;
                    }
                    let v: f64 = (0..4).map(|k| if s >> k & 1 == 1 { ma[k] } else if e >> k & 1 == 1 { mb[k] } else { 0.0 }).sum();
                    best = best.min(v);
                }
                let got: f64 = (0..4).filter(|k| e >> k & 1 == 1).map(|k| inf.mass_at(grid[k])).sum();
                if got != best {
                    bad_inf += 1;
                }
            }
            let disjoint = (0..4).all(|k| ma[k] == 0.0 || mb[k] == 0.0);
            let cop = scalar_inner::singular_coprime(&ScalarInner::from_singular(mu.clone()), &ScalarInner::from_singular(nu));
            if cop != disjoint {
                bad_cop += 1;
            }
        }
    }
    let ok = bad_inf == 0 && bad_cop == 0;
    Ok((ok, format!("{pairs} pairs: {bad_inf} infimum mismatches, {bad_cop} coprimeness mismatches")))
}

/// Search for a Potapov factor `D = b_α P + I − P` with α ∈ Z(θ) dividing `A`
/// on the left, certified by the vanishing of the negative Fourier
/// coefficients of `D*A` on 𝕋.
fn common_left_divisor(a: &RatMat, theta: &BlaschkeProduct) -> bool {
    let n = a.rows;
    let scale = a.sup_norm(256).max(1e-300);
    theta.zeros.iter().any(|&(alpha, _)| {
        let v = a.eval(alpha);
        let (_, u) = linalg::hermitian_eigen(&(&v * v.adjoint()));
        (0..n).any(|k| {
            let col = u.columns(k, 1).into_owned();
            let p = &col * col.adjoint();
            let d = blaschke_factor(alpha).star().scalar_mul(&RatMat::constant(p.clone())).add(&RatMat::constant(linalg::eye(n) - p));
            let g = d.mul(a);
            let neg = g.fourier(-16, -1, 512).iter().map(linalg::norm2).fold(0.0, f64::max);
            neg < 1e-8 * scale
        })
    })
}

fn coprime_with_scalar(cfg: &Config) -> Outcome {
    let mut rng = cfg.rng(12);
    let (mut agree, mut coprime_cases, mut fails) = (0, 0, vec![]);
    for draw in 0..50 {
        let pool = separated_points(&mut rng, 4, 0.8);
        let kt = rng.gen_range(1..=2);
        let theta = BlaschkeProduct::new(r(1.0), &pool[..kt].iter().map(|&a| (a, rng.gen_range(1..=2))).collect::<Vec<_>>())?;
        let ka = rng.gen_range(1..=4);
        let mut factors = vec![];
        for _ in 0..ka {
            let alpha = pool[rng.gen_range(0..pool.len())];
            let v = unit_vector(&mut rng, 2);
            factors.push(PotapovFactor::new(alpha, &v * v.adjoint())?);
        }
        let a = PotapovProduct::new(linalg::nearest_unitary(&random_mat(&mut rng, 2)), factors)?.to_ratmat();
        let got = matrix_inner::coprime_with_scalar(&a, &theta)?;
        let oracle = !common_left_divisor(&a, &theta);
        coprime_cases += oracle as usize;
        if got == oracle {
            agree += 1;
        } else {
            fails.push(format!("draw {draw}: coprime_with_scalar = {got}, oracle = {oracle}"));
        }
    }
    let both = coprime_cases > 0 && coprime_cases < 50;
    let ok = fails.is_empty() && both;
    Ok((
        ok,
        if fails.is_empty() { format!("{agree}/50 agree ({coprime_cases} coprime, {} not)", 50 - coprime_cases) } else { fails.join("; ") },
    ))
}

fn hermite_fejer_fidelity(cfg: &Config) -> Outcome {
    let mut rng = cfg.rng(13);
    let set = cfg.settings();
    let (mut done, mut tries, mut worst_i, mut worst_m) = (0, 0, 0.0f64, 0.0f64);
    while done < 20 && tries < 200 {
        tries += 1;
        // Φ₊ = z^k P(z)/(1 − p̄ z) and Φ_− a matrix polynomial with zero constant term
        let d = rng.gen_range(1..=2);
        let k = rng.gen_range(d..=3);
        let pd = rng.gen_range(0..=1);
        let num: Vec<CMat> = (0..k + pd + 1).map(|j| if j < k { CMat::zeros(2, 2) } else { random_mat(&mut rng, 2) + linalg::eye(2) * r(1.5) }).collect();
        let p = disk_point(&mut rng, 0.6);
        let den = Poly::new(vec![r(1.0), -p.conj()]);
        let plus = RatMat::from_parts(num, &den, 0)?;
        let minus: Vec<CMat> = (0..=d).map(|j| if j == 0 { CMat::zeros(2, 2) } else { random_mat(&mut rng, 2) * r(0.5) }).collect();
        let phi = MatrixSymbol::from_parts(plus, matpoly_symbol(minus))?;
        match analysis::solve_c_phi(&phi, &set) {
            Ok(c) => {
                done += 1;
                worst_i = worst_i.max(c.interpolation_residual);
                worst_m = worst_m.max(c.membership_residual);
            }
            Err(BtkError::NoSolutionByThisMethod(_)) | Err(BtkError::Infeasible(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    if done < 20 {
        return Ok((false, format!("only {done} solvable draws in {tries}")));
    }
    let ok = worst_i < cfg.tol && worst_m < cfg.tol;
    Ok((ok, format!("20 draws: max interpolation residual {worst_i:.2e}, max membership residual {worst_m:.2e}")))
}

fn degree_equality(cfg: &Config) -> Outcome {
    let mut rng = cfg.rng(14);
    let set = cfg.settings();
    let (mut matched, mut tries, mut fails) = (0, 0, vec![]);
    while matched < 10 && tries < 300 {
        tries += 1;
        let d = rng.gen_range(1..=2);
        let e = rng.gen_range(0..=3 - d);
        let phi = hyponormal_trig_symbol(&mut rng, d, e)?;
        let psi = if rng.gen_bool(0.5) {
            let lam = C64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..2.0 * PI));
            let zeta = linalg::scalar(2, gauss_like(&mut rng));
            phi.scale(lam).add(&MatrixSymbol::analytic(RatMat::constant(zeta)))
        } else {
            let d2 = rng.gen_range(1..=2);
            let e = rng.gen_range(0..=3 - d2);
            hyponormal_trig_symbol(&mut rng, d2, e)?
        };
        let v = analysis::degree_equality_check(&phi, &psi, 24, &set)?;
        if !(v.hypotheses && v.hyponormal) {
            continue;
        }
        matched += 1;
        if !v.equal {
            fails.push(format!("hyponormal pair with degrees {} and {}", v.deg_minus_phi, v.deg_minus_psi));
        }
    }
    if matched < 10 {
        return Ok((false, format!("only {matched} hyponormal pairs in {tries} draws")));
    }
    let mut unequal = 0;
    while unequal < 10 {
        let d = rng.gen_range(1..=2);
        let d2 = d + rng.gen_range(1..=3 - d);
        let (d_phi, d_psi) = if rng.gen_bool(0.5) { (d, d2) } else { (d2, d) };
        let phi = trig_symbol(&mut rng, d_phi, 3 - d_phi)?;
        let psi = trig_symbol(&mut rng, d_psi, 3 - d_psi)?;
        let v = analysis::degree_equality_check(&phi, &psi, 24, &set)?;
        if !v.hypotheses {
            return Ok((false, "constructed unequal-degree pair misses the hypotheses".into()));
        }
        unequal += 1;
        if v.hyponormal {
            fails.push(format!("unequal degrees {} and {} yet hyponormal", v.deg_minus_phi, v.deg_minus_psi));
        }
    }
    let ok = fails.is_empty();
    Ok((ok, if ok { "10 matched pairs with equal degrees, 10 unequal pairs not hyponormal".into() } else { fails.join("; ") }))
}
