//! Decision procedures: Hermite-Fejér solver for `C(Φ)`, hyponormality of single
//! operators, pairs and tuples, the completion classifier and rank formulas.

use crate::error::{BtkError, Result};
use crate::hardy_ops::{self, matrix_to_json};
use crate::linalg;
use crate::matrix_inner::{is_left_inner_divisor, PotapovProduct};
use crate::poly::Poly;
use crate::ratmat::{blaschke_factor, circle_point, mp_add, mp_mul_poly, RatMat};
use crate::scalar_inner::{gcd_blaschke, lcm_blaschke, BlaschkeProduct};
use crate::symbol::{self, MatrixSymbol, Part};
use crate::{c64, CMat, C64};
use serde_json::{json, Value};
use std::f64::consts::PI;

/// Tolerances shared by the decision procedures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    /// Relative tolerance for PSD, rank and equality tests.
    pub tol: f64,
    /// Boundary samples for sup norms.
    pub samples: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { tol: hardy_ops::DEFAULT_TOL, samples: 1024 }
    }
}

/// Contraction threshold for `‖K‖`.
pub const CONTRACTION_SLACK: f64 = 1e-9;
/// Residual threshold for the numerical kernel invariance test.
pub const INVARIANCE_TOL: f64 = 1e-7;

fn negligible(f: &RatMat) -> bool {
    f.sup_norm(64) < 1e-14
}

/// `Φ₊ − Φ₊(0)`; the constant plays no role in Hankel operators.
fn plus_nonconstant(phi: &MatrixSymbol) -> RatMat {
    phi.plus.sub(&RatMat::constant(phi.plus.eval(c64(0.0, 0.0))))
}

/// `L²` norm from boundary samples, with the Frobenius norm pointwise.
fn l2_norm(f: &RatMat, m: usize) -> f64 {
    let s: f64 = f.samples(m).iter().map(|x| x.norm_squared()).sum();
    (s / m as f64).sqrt()
}

/// `‖X − (tr X / n) I‖ < 1e-8 · max(1, ‖X‖)`.
pub fn is_diagonal_constant(x: &CMat) -> bool {
    let n = x.nrows();
    let c = x.trace() / n as f64;
    linalg::norm2(&(x - linalg::scalar(n, c))) < 1e-8 * linalg::norm2(x).max(1.0)
}

/// Sup of `‖f‖` over 𝕋: `m` samples, then three refinement sweeps around the argmax.
pub fn sup_norm_refined(f: &RatMat, m: usize) -> f64 {
    let val = |t: f64| linalg::norm2(&f.eval(C64::from_polar(1.0, t)));
    let (mut best_t, mut best) = (0.0, f64::NEG_INFINITY);
    for j in 0..m {
        let t = 2.0 * PI * j as f64 / m as f64;
        let v = val(t);
        if v > best {
            best = v;
            best_t = t;
        }
    }
    let mut h = 2.0 * PI / m as f64;
    for _ in 0..3 {
        let centre = best_t;
        for k in -8i32..=8 {
            let t = centre + h * k as f64 / 8.0;
            let v = val(t);
            if v > best {
                best = v;
                best_t = t;
            }
        }
        h /= 8.0;
    }
    best
}

/// Operator scale `max ‖Φ‖_∞²` for commutator tests.
fn op_scale(syms: &[&MatrixSymbol]) -> f64 {
    syms.iter().map(|s| s.sup_norm(64).powi(2)).fold(1e-300, f64::max)
}

/// `λ_min(m) ≥ −tol · max(‖m‖, scale)`; the floor keeps roundoff on a vanishing
/// commutator from reading as a negative eigenvalue.
pub fn psd_scaled(m: &CMat, tol: f64, scale: f64) -> bool {
    hardy_ops::min_eigenvalue(m) >= -tol * linalg::norm2(m).max(scale)
}

/// Number of singular values above `tol · max(σ_max, scale)`.
pub fn rank_scaled(m: &CMat, tol: f64, scale: f64) -> usize {
    let sv = linalg::singular_values(m);
    let top = sv.iter().copied().fold(0.0, f64::max).max(scale);
    sv.iter().filter(|&&x| x > tol * top).count()
}

fn cjson(z: C64) -> Value {
    json!([z.re, z.im])
}

/// `{"constant": [re, im], "zeros": [{"alpha": [re, im], "mult": k}]}`.
pub fn blaschke_to_json(b: &BlaschkeProduct) -> Value {
    json!({
        "constant": cjson(b.constant),
        "zeros": b.zeros.iter().map(|&(a, m)| json!({"alpha": cjson(a), "mult": m})).collect::<Vec<_>>(),
    })
}

pub fn potapov_to_json(p: &PotapovProduct) -> Value {
    json!({
        "nu": matrix_to_json(&p.nu),
        "factors": p.factors.iter().map(|f| json!({"alpha": cjson(f.alpha), "proj": matrix_to_json(&f.proj)})).collect::<Vec<_>>(),
        "degree": p.degree(),
    })
}

// ---------------------------------------------------------------------------
// Hermite-Fejér interpolation

/// `ker H_{Φ₊*} ⊆ ker H_{Φ_−*}`: the right inner factor of `Φ_−` left-divides that of `Φ₊`.
pub fn kernel_inclusion(phi: &MatrixSymbol) -> Result<bool> {
    if negligible(&phi.minus) {
        return Ok(true);
    }
    let p = plus_nonconstant(phi);
    if negligible(&p) {
        return Ok(false);
    }
    let om_plus = symbol::dss_right(&p)?.inner;
    let om_minus = symbol::dss_right(&phi.minus)?.inner;
    Ok(is_left_inner_divisor(&om_minus, &om_plus.to_ratmat()))
}

/// Jet data of the interpolation problem `K A ≡ B mod θ` and its solution.
#[derive(Debug, Clone)]
pub struct InterpolationData {
    pub points: Vec<(C64, usize)>,
    pub a_blocks: Vec<Vec<CMat>>,
    pub b_blocks: Vec<Vec<CMat>>,
    pub k_blocks: Vec<Vec<CMat>>,
}

impl InterpolationData {
    /// `max ‖Σ_{k≤j} K_{i,j−k} A_{i,k} − B_{i,j}‖`.
    pub fn system_residual(&self) -> f64 {
        let mut r: f64 = 0.0;
        for i in 0..self.points.len() {
            for j in 0..self.points[i].1 {
                let mut s = -self.b_blocks[i][j].clone();
                for k in 0..=j {
                    s += &self.k_blocks[i][j - k] * &self.a_blocks[i][k];
                }
                r = r.max(linalg::norm2(&s));
            }
        }
        r
    }
}

/// A polynomial `K` with `Φ − KΦ* ∈ H∞`, and its contraction status.
#[derive(Debug, Clone)]
pub struct InterpolationCertificate {
    /// Interpolation modulus: `K` is unique modulo `θ H∞`.
    pub theta: BlaschkeProduct,
    pub data: InterpolationData,
    /// Ascending matrix coefficients of `K`, degree `deg θ − 1`.
    pub k_coeffs: Vec<CMat>,
    pub sup_norm: f64,
    /// `‖K‖_∞ ≤ 1 + 1e-9` for this particular `K`.
    pub contraction: bool,
    /// `‖K(M)‖`, the least sup norm over all solutions.
    pub hf_norm: f64,
    /// `‖K(M)‖ ≤ 1 + 1e-9`: some contractive solution exists.
    pub contractive_exists: bool,
    pub interpolation_residual: f64,
    pub membership_residual: f64,
}

impl InterpolationCertificate {
    pub fn k(&self) -> RatMat {
        RatMat::from_matpoly(self.k_coeffs.clone())
    }

    /// `K(M)` for the model matrix of θ.
    pub fn k_of_m(&self) -> CMat {
        if self.theta.degree() == 0 {
            return CMat::zeros(0, 0);
        }
        hardy_ops::p_of_m(&self.k_coeffs, &hardy_ops::m_matrix(&self.theta))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "theta": blaschke_to_json(&self.theta),
            "points": self.data.points.iter().map(|&(a, m)| json!({"alpha": cjson(a), "mult": m})).collect::<Vec<_>>(),
            "k_blocks": self.data.k_blocks.iter().map(|row| row.iter().map(matrix_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "k_coeffs": self.k_coeffs.iter().map(matrix_to_json).collect::<Vec<_>>(),
            "sup_norm": self.sup_norm,
            "contraction": self.contraction,
            "hf_norm": self.hf_norm,
            "contractive_exists": self.contractive_exists,
            "residuals": {"interpolation": self.interpolation_residual, "membership": self.membership_residual},
        })
    }
}

fn zero_certificate(n: usize) -> InterpolationCertificate {
    InterpolationCertificate {
        theta: BlaschkeProduct::one(),
        data: InterpolationData { points: vec![], a_blocks: vec![], b_blocks: vec![], k_blocks: vec![] },
        k_coeffs: vec![CMat::zeros(n, n)],
        sup_norm: 0.0,
        contraction: true,
        hf_norm: 0.0,
        contractive_exists: true,
        interpolation_residual: 0.0,
        membership_residual: 0.0,
    }
}

/// Solve for `K ∈ C(Φ)`, i.e. `Φ − KΦ* ∈ H∞`, as a Hermite-Fejér polynomial.
pub fn solve_c_phi(phi: &MatrixSymbol, settings: &Settings) -> Result<InterpolationCertificate> {
    let n = phi.n;
    if negligible(&phi.minus) {
        return Ok(zero_certificate(n));
    }
    if !kernel_inclusion(phi)? {
        return Err(BtkError::Infeasible("ker H_{Φ₊*} is not contained in ker H_{Φ_−*}".into()));
    }
    let p = plus_nonconstant(phi);
    let (tp, _) = symbol::naive_scalar_pullout(&p)?;
    let (tm, _) = symbol::naive_scalar_pullout(&phi.minus)?;
    let theta = lcm_blaschke(&tp, &tm).with_constant(c64(1.0, 0.0));
    // θΦ_−* − K θΦ₊* ∈ θH²
    let a = theta.to_ratmat().scalar_mul(&p.star());
    let b = theta.to_ratmat().scalar_mul(&phi.minus.star());
    if !a.is_analytic() || !b.is_analytic() {
        return Err(BtkError::Internal("θΦ₊* or θΦ_−* is not analytic".into()));
    }
    let scale = a.sup_norm(64).max(1e-300);
    let points = theta.zeros.clone();
    let mut data = InterpolationData { points: points.clone(), a_blocks: vec![], b_blocks: vec![], k_blocks: vec![] };
    for &(alpha, m) in &points {
        let aj = a.taylor_at(alpha, m);
        let bj = b.taylor_at(alpha, m);
        if linalg::sigma_min(&aj[0]) <= 1e-8 * scale {
            return Err(BtkError::NoSolutionByThisMethod(format!("A(α) is singular at α = {alpha}")));
        }
        let inv = linalg::inverse(&aj[0]).ok_or_else(|| BtkError::NoSolutionByThisMethod("A(α) not invertible".into()))?;
        let mut kj: Vec<CMat> = Vec::with_capacity(m);
        for j in 0..m {
            let mut rhs = bj[j].clone();
            for k in 1..=j {
                rhs -= &kj[j - k] * &aj[k];
            }
            kj.push(rhs * &inv);
        }
        data.a_blocks.push(aj);
        data.b_blocks.push(bj);
        data.k_blocks.push(kj);
    }
    let k_coeffs = hermite_polynomial(&points, &data.k_blocks, n);
    let k = RatMat::from_matpoly(k_coeffs.clone());

    let mut interp: f64 = 0.0;
    for (i, &(alpha, m)) in points.iter().enumerate() {
        for (j, t) in k.taylor_at(alpha, m).iter().enumerate() {
            interp = interp.max(linalg::norm2(&(t - &data.k_blocks[i][j])));
        }
    }
    let f = phi.to_ratmat();
    let r = f.sub(&k.mul(&f.star()));
    let lo = -(hardy_ops::tail_pad(&r).clamp(64, 512) as i64);
    let w = hardy_ops::fourier_ratmat(&r, lo, -1);
    let membership = w.coeffs.iter().map(linalg::norm2).fold(0.0, f64::max);

    let sup = sup_norm_refined(&k, settings.samples);
    let hf = linalg::norm2(&hardy_ops::p_of_m(&k_coeffs, &hardy_ops::m_matrix(&theta)));
    Ok(InterpolationCertificate {
        theta,
        data,
        k_coeffs,
        sup_norm: sup,
        contraction: sup <= 1.0 + CONTRACTION_SLACK,
        hf_norm: hf,
        contractive_exists: hf <= 1.0 + CONTRACTION_SLACK,
        interpolation_residual: interp,
        membership_residual: membership,
    })
}

/// `P(z) = Σ_i p_i(z) Σ_j K′_{i,j} (z − α_i)^j` with
/// `p_i = ∏_{k≠i} ((z − α_k)/(α_i − α_k))^{m_k}`.
fn hermite_polynomial(points: &[(C64, usize)], k_blocks: &[Vec<CMat>], n: usize) -> Vec<CMat> {
    let mut out = vec![CMat::zeros(n, n)];
    for (i, &(ai, mi)) in points.iter().enumerate() {
        let mut pi = Poly::one();
        for (k, &(ak, mk)) in points.iter().enumerate() {
            if k != i {
                let lin = Poly::new(vec![-ak, c64(1.0, 0.0)]).scale(c64(1.0, 0.0) / (ai - ak));
                pi = pi.mul(&lin.pow(mk));
            }
        }
        // Taylor coefficients of p_i at α_i
        let c = pi.taylor_shift(ai);
        let cz = |j: usize| c.c.get(j).copied().unwrap_or(c64(0.0, 0.0));
        let mut kp: Vec<CMat> = Vec::with_capacity(mi);
        for j in 0..mi {
            let mut v = k_blocks[i][j].clone();
            for (l, kl) in kp.iter().enumerate() {
                v -= kl * cz(j - l);
            }
            kp.push(v);
        }
        let shift = Poly::new(vec![-ai, c64(1.0, 0.0)]);
        for (j, kj) in kp.iter().enumerate() {
            let basis = pi.mul(&shift.pow(j));
            out = mp_add(&out, &mp_mul_poly(std::slice::from_ref(kj), &basis));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Single operators

#[derive(Debug, Clone)]
pub struct HyponormalVerdict {
    pub hyponormal: bool,
    pub normal_symbol: bool,
    pub min_eigenvalue: f64,
    pub commutator_norm: f64,
    pub truncation: usize,
    pub certificate: Option<InterpolationCertificate>,
    /// `certified`, or the reason no certificate was produced.
    pub certificate_status: String,
}

impl HyponormalVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "verdict": if self.hyponormal { "hyponormal" } else { "not hyponormal" },
            "certificates": {
                "normal_symbol": self.normal_symbol,
                "interpolation": self.certificate.as_ref().map(|c| c.to_json()),
                "status": self.certificate_status,
            },
            "residuals": {"min_eigenvalue": self.min_eigenvalue},
            "ranks": Value::Null,
            "parameters": {"truncation": self.truncation, "commutator_norm": self.commutator_norm},
        })
    }
}

/// Hyponormality of `T_Φ`: normal symbol and PSD truncated self-commutator,
/// cross-checked against the interpolation certificate.
pub fn hyponormal(phi: &MatrixSymbol, n_trunc: usize, settings: &Settings) -> Result<HyponormalVerdict> {
    let normal = symbol::is_normal(phi, settings.tol);
    let c = hardy_ops::self_commutator(phi, n_trunc).mat;
    let psd = psd_scaled(&c, settings.tol, op_scale(&[phi]));
    let hyp = normal && psd;
    let (certificate, status, exists) = match solve_c_phi(phi, settings) {
        Ok(cert) => {
            let e = Some(cert.contractive_exists);
            (Some(cert), "certified".to_string(), e)
        }
        Err(e @ BtkError::Infeasible(_)) => (None, e.to_string(), Some(false)),
        Err(e) => (None, e.to_string(), None),
    };
    if let (true, Some(exists)) = (normal, exists) {
        if exists != psd {
            return Err(BtkError::Certification(format!(
                "commutator test (psd = {psd}) disagrees with the interpolation certificate (contractive = {exists})"
            )));
        }
    }
    if hyp {
        let lhs = l2_norm(&phi.minus, settings.samples);
        let rhs = l2_norm(&plus_nonconstant(phi), settings.samples);
        if lhs > rhs * (1.0 + 1e-9) + 1e-12 {
            return Err(BtkError::Certification(format!("hyponormal verdict with ‖Φ_−‖₂ = {lhs} > ‖Φ₊‖₂ = {rhs}")));
        }
    }
    Ok(HyponormalVerdict {
        hyponormal: hyp,
        normal_symbol: normal,
        min_eigenvalue: hardy_ops::min_eigenvalue(&c),
        commutator_norm: linalg::norm2(&c),
        truncation: n_trunc,
        certificate,
        certificate_status: status,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbrahamseOutcome {
    NormalForced,
    NoConstraint,
}

#[derive(Debug, Clone)]
pub struct AbrahamseVerdict {
    pub outcome: AbrahamseOutcome,
    pub singularity: Vec<(C64, usize)>,
    pub invariance_residual: Option<f64>,
    pub commutator_norm: f64,
}

impl AbrahamseVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "verdict": match self.outcome { AbrahamseOutcome::NormalForced => "normal forced", AbrahamseOutcome::NoConstraint => "no constraint" },
            "certificates": {"singularity": self.singularity.iter().map(|&(a, p)| json!({"alpha": cjson(a), "order": p})).collect::<Vec<_>>()},
            "residuals": {"invariance": self.invariance_residual},
            "ranks": Value::Null,
            "parameters": {"commutator_norm": self.commutator_norm},
        })
    }
}

/// Tensored-scalar singularity plus numerically `T_Φ`-invariant commutator kernel
/// forces `T_Φ` to be normal.
pub fn abrahamse_check(phi: &MatrixSymbol, n_trunc: usize, settings: &Settings) -> Result<AbrahamseVerdict> {
    let _ = settings;
    let sing = symbol::tensored_singularity(phi, Part::Minus)?;
    let c = hardy_ops::self_commutator(phi, n_trunc).mat;
    let cn = linalg::norm2(&c);
    if sing.is_empty() {
        return Ok(AbrahamseVerdict { outcome: AbrahamseOutcome::NoConstraint, singularity: sing, invariance_residual: None, commutator_norm: cn });
    }
    let (ev, vecs) = linalg::hermitian_eigen(&c);
    let s = phi.sup_norm(64).max(1.0);
    let cut = 1e-8 * s * s;
    let ker: Vec<usize> = (0..ev.len()).filter(|&k| ev[k].abs() <= cut).collect();
    let ran: Vec<usize> = (0..ev.len()).filter(|&k| ev[k].abs() > cut).collect();
    let residual = if ker.is_empty() || ran.is_empty() {
        0.0
    } else {
        let v = vecs.select_columns(&ker);
        let u = vecs.select_columns(&ran);
        let t = hardy_ops::toeplitz(phi, n_trunc).mat;
        linalg::norm2(&(u.adjoint() * t * v)) / s
    };
    let outcome = if residual < INVARIANCE_TOL { AbrahamseOutcome::NormalForced } else { AbrahamseOutcome::NoConstraint };
    if outcome == AbrahamseOutcome::NormalForced && cn >= INVARIANCE_TOL * s * s {
        return Err(BtkError::Certification(format!("normality forced but ‖[T*, T]‖ = {cn:.2e}")));
    }
    Ok(AbrahamseVerdict { outcome, singularity: sing, invariance_residual: Some(residual), commutator_norm: cn })
}

// ---------------------------------------------------------------------------
// Pairs, tuples and ranks

/// Scalar inner data `Φ₊ = θ₀θ₁A*`, `Φ_− = θ₀B*`, `Ψ₊ = θ₂θ₃C*`, `Ψ_− = θ₂D*`.
#[derive(Debug, Clone)]
pub struct PairThetas {
    pub theta0: BlaschkeProduct,
    pub theta1: BlaschkeProduct,
    pub theta2: BlaschkeProduct,
    pub theta3: BlaschkeProduct,
    pub a: RatMat,
    pub b: RatMat,
    pub c: RatMat,
    pub d: RatMat,
}

/// Scalar forms `plus = θ₀θ₁A*`, `minus = θ₀B*` of one symbol.
fn scalar_forms(phi: &MatrixSymbol) -> Result<(BlaschkeProduct, BlaschkeProduct, RatMat, RatMat)> {
    let p = plus_nonconstant(phi);
    let (t01, _) = symbol::naive_scalar_pullout(&p)?;
    let t0 = if negligible(&phi.minus) { BlaschkeProduct::one() } else { symbol::naive_scalar_pullout(&phi.minus)?.0 };
    let t0 = t0.with_constant(c64(1.0, 0.0));
    let b = t0.to_ratmat().scalar_mul(&phi.minus.star());
    let t01 = lcm_blaschke(&t01, &t0).with_constant(c64(1.0, 0.0));
    let t1 = t01.div(&t0).expect("θ₀ divides the lcm");
    let a = t01.to_ratmat().scalar_mul(&p.star());
    Ok((t0, t1, a, b))
}

pub fn pair_thetas(phi: &MatrixSymbol, psi: &MatrixSymbol) -> Result<PairThetas> {
    let (theta0, theta1, a, b) = scalar_forms(phi)?;
    let (theta2, theta3, c, d) = scalar_forms(psi)?;
    Ok(PairThetas { theta0, theta1, theta2, theta3, a, b, c, d })
}

fn same_zeros(x: &BlaschkeProduct, y: &BlaschkeProduct) -> bool {
    x.divides(y) && y.divides(x)
}

/// Common zeros of θ₀ and θ₂, by decreasing common multiplicity and then increasing modulus.
fn gamma_candidates(t0: &BlaschkeProduct, t2: &BlaschkeProduct) -> Vec<(C64, usize)> {
    let mut c: Vec<(C64, usize)> = t0
        .zeros
        .iter()
        .filter_map(|&(a, m)| {
            let m2 = t2.multiplicity_of(a);
            (m2 > 0).then_some((a, m.min(m2)))
        })
        .collect();
    c.sort_by(|x, y| y.1.cmp(&x.1).then(x.0.norm().partial_cmp(&y.0.norm()).unwrap()));
    c
}

#[derive(Debug, Clone)]
pub struct PairVerdict {
    pub hyponormal: bool,
    pub pseudo_hyponormal: bool,
    pub min_eigenvalue: f64,
    pub pseudo_min_eigenvalue: f64,
    /// `Λ = B(γ₀)D(γ₀)⁻¹` when the hypotheses hold.
    pub lambda: Option<CMat>,
    /// Least-squares fit of `Φ_− ≈ Λ*Ψ_−` on boundary samples.
    pub lambda_ls: CMat,
    pub lambda_ls_residual: f64,
    pub gamma0: Option<C64>,
    pub thetas: Option<PairThetas>,
    pub hypotheses: bool,
    pub cond_i: bool,
    pub cond_ii: Option<bool>,
    pub cond_iii: Option<bool>,
    pub delta: Option<PotapovProduct>,
    pub theorem_verdict: Option<bool>,
    /// Direct test and theorem agree, and hyponormal implies (i) and pseudo-hyponormality.
    pub consistent: bool,
    pub truncation: usize,
}

impl PairVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "verdict": if self.hyponormal { "hyponormal" } else { "not hyponormal" },
            "certificates": {
                "pseudo_hyponormal": self.pseudo_hyponormal,
                "lambda": self.lambda.as_ref().map(matrix_to_json),
                "gamma0": self.gamma0.map(cjson),
                "hypotheses": self.hypotheses,
                "conditions": {"i": self.cond_i, "ii": self.cond_ii, "iii": self.cond_iii},
                "theorem_verdict": self.theorem_verdict,
                "consistent": self.consistent,
                "thetas": self.thetas.as_ref().map(|t| json!({
                    "theta0": blaschke_to_json(&t.theta0),
                    "theta1": blaschke_to_json(&t.theta1),
                    "theta2": blaschke_to_json(&t.theta2),
                    "theta3": blaschke_to_json(&t.theta3),
                })),
                "delta": self.delta.as_ref().map(potapov_to_json),
            },
            "residuals": {
                "min_eigenvalue": self.min_eigenvalue,
                "pseudo_min_eigenvalue": self.pseudo_min_eigenvalue,
                "lambda_ls": matrix_to_json(&self.lambda_ls),
                "lambda_ls_residual": self.lambda_ls_residual,
            },
            "ranks": Value::Null,
            "parameters": {"truncation": self.truncation},
        })
    }
}

/// Least-squares `X` minimising `Σ ‖F(z_j) − X G(z_j)‖²` and the RMS residual.
fn least_squares_left(f: &RatMat, g: &RatMat, m: usize) -> (CMat, f64) {
    let n = f.rows;
    let mut fm = CMat::zeros(n, n * m);
    let mut gm = CMat::zeros(n, n * m);
    for j in 0..m {
        let z = circle_point(j, m);
        fm.view_mut((0, j * n), (n, n)).copy_from(&f.eval(z));
        gm.view_mut((0, j * n), (n, n)).copy_from(&g.eval(z));
    }
    let x = &fm * linalg::pinv(&gm, 1e-12);
    let r = (&fm - &x * &gm).norm_squared() / m as f64;
    (x, r.sqrt())
}

/// Hyponormality of the pair `(T_Φ, T_Ψ)`: direct PSD test reconciled with the
/// structure theorem's conditions (i) to (iii).
pub fn pair_analyze(phi: &MatrixSymbol, psi: &MatrixSymbol, n_trunc: usize, settings: &Settings) -> Result<PairVerdict> {
    if phi.n != psi.n {
        return Err(BtkError::InvalidInput("pair symbols must have the same size".into()));
    }
    let n = phi.n;
    let tol = settings.tol;
    let comm = hardy_ops::pair_commutator(phi, psi, n_trunc).mat;
    let pseudo = hardy_ops::pair_pseudo_commutator(phi, psi, n_trunc).mat;
    let scale = op_scale(&[phi, psi]);
    let hyp = psd_scaled(&comm, tol, scale);
    let pseudo_hyp = psd_scaled(&pseudo, tol, scale);
    let cond_i = symbol::is_normal(phi, tol) && symbol::is_normal(psi, tol) && symbol::commutes(phi, psi, tol);
    let (x, ls_res) = least_squares_left(&phi.minus, &psi.minus, 64);

    let th = pair_thetas(phi, psi)?;
    let mut gamma0 = None;
    let mut lambda = None;
    for (g, _) in gamma_candidates(&th.theta0, &th.theta2) {
        gamma0.get_or_insert(g);
        let (bg, dg) = (th.b.eval(g), th.d.eval(g));
        if is_diagonal_constant(&bg) && is_diagonal_constant(&dg) {
            if let Some(dinv) = linalg::inverse(&dg).filter(|_| linalg::sigma_min(&dg) > 1e-8 * linalg::norm2(&dg).max(1e-300)) {
                gamma0 = Some(g);
                lambda = Some(&bg * dinv);
                break;
            }
        }
    }
    let hypotheses = lambda.is_some();
    let mut cond_ii = None;
    let mut cond_iii = None;
    let mut delta = None;
    let mut theorem = None;
    if let Some(l) = &lambda {
        let scale = phi.minus.sup_norm(64).max(psi.minus.sup_norm(64)).max(1.0);
        let ii = phi.minus.dist(&psi.minus.lmul_const(&l.adjoint()), symbol::CHECK_SAMPLES) < 1e-8 * scale;
        cond_ii = Some(ii);
        let theta_eq = same_zeros(&th.theta0, &th.theta2);
        if theta_eq {
            let theta = gcd_blaschke(&th.theta1, &th.theta3).with_constant(c64(1.0, 0.0));
            let w1 = th.theta1.div(&theta).expect("gcd divides θ₁");
            let w3 = th.theta3.div(&theta).expect("gcd divides θ₃");
            let xm = w3.to_ratmat().scalar_mul(&th.a).sub(&w1.to_ratmat().scalar_mul(&th.c.rmul_const(&l.adjoint())));
            let eta = th.theta0.mul(&theta);
            let d = symbol::left_gcd_scalar(&eta, &xm)?;
            let outer = th.theta0.mul(&th.theta1).mul(&th.theta3).div(&theta).expect("θ divides θ₁θ₃");
            let omega = outer.to_ratmat().scalar_mul(&d.to_ratmat().star());
            let psi1 = symbol::upper(psi, &RatMat::identity(n), &omega)?;
            cond_iii = Some(psd_scaled(&hardy_ops::pseudo_selfcommutator(&psi1, n_trunc).mat, tol, op_scale(&[&psi1])));
            delta = Some(d);
        }
        theorem = Some(theta_eq && cond_i && ii && cond_iii == Some(true));
    }
    let consistent = theorem.map_or(true, |t| t == hyp) && (!hyp || (pseudo_hyp && cond_i));
    Ok(PairVerdict {
        hyponormal: hyp,
        pseudo_hyponormal: pseudo_hyp,
        min_eigenvalue: hardy_ops::min_eigenvalue(&comm),
        pseudo_min_eigenvalue: hardy_ops::min_eigenvalue(&pseudo),
        lambda,
        lambda_ls: x.adjoint(),
        lambda_ls_residual: ls_res,
        gamma0,
        thetas: Some(th),
        hypotheses,
        cond_i,
        cond_ii,
        cond_iii,
        delta,
        theorem_verdict: theorem,
        consistent,
        truncation: n_trunc,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankReport {
    pub rank_pair: usize,
    pub rank_single: usize,
    pub rank_ikk: usize,
}

impl RankReport {
    pub fn coincide(&self) -> bool {
        self.rank_pair == self.rank_single && self.rank_single == self.rank_ikk
    }

    pub fn to_json(&self) -> Value {
        json!({
            "verdict": if self.coincide() { "ranks coincide" } else { "ranks differ" },
            "certificates": Value::Null,
            "residuals": Value::Null,
            "ranks": {"pair": self.rank_pair, "single": self.rank_single, "ikk": self.rank_ikk},
            "parameters": Value::Null,
        })
    }
}

/// `rank(I − K(M)*K(M))` for the interpolation solution of `Φ`.
pub fn rank_ikk(phi: &MatrixSymbol, settings: &Settings) -> Result<usize> {
    let cert = solve_c_phi(phi, settings)?;
    let km = cert.k_of_m();
    if km.nrows() == 0 {
        return Ok(0);
    }
    let d = linalg::eye(km.nrows()) - km.adjoint() * &km;
    Ok(rank_scaled(&d, settings.tol, 1.0))
}

/// The three ranks: pair self-commutator, self-commutator of `T_Φ`, `I − K(M)*K(M)`.
pub fn rank_formula(phi: &MatrixSymbol, psi: &MatrixSymbol, n_trunc: usize, settings: &Settings) -> Result<RankReport> {
    let pair = hardy_ops::pair_commutator(phi, psi, n_trunc).mat;
    let single = hardy_ops::self_commutator(phi, n_trunc).mat;
    let scale = op_scale(&[phi, psi]);
    Ok(RankReport {
        rank_pair: rank_scaled(&pair, settings.tol, scale),
        rank_single: rank_scaled(&single, settings.tol, scale),
        rank_ikk: rank_ikk(phi, settings)?,
    })
}

#[derive(Debug, Clone)]
pub struct TupleVerdict {
    pub hyponormal: bool,
    /// `(i, j, hyponormal)` for every subpair.
    pub subpairs: Vec<(usize, usize, bool)>,
    pub subpairs_hyponormal: bool,
    pub rank_tuple_pseudo: usize,
    pub rank_single_pseudo: usize,
    /// `rank((I − K*K) ⊗ 1_{m×m})` when `C(Φ₁)` was solved.
    pub rank_block_formula: Option<usize>,
}

impl TupleVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "verdict": if self.hyponormal { "hyponormal" } else { "not hyponormal" },
            "certificates": {
                "subpairs": self.subpairs.iter().map(|&(i, j, h)| json!({"i": i, "j": j, "hyponormal": h})).collect::<Vec<_>>(),
                "subpairs_hyponormal": self.subpairs_hyponormal,
            },
            "residuals": Value::Null,
            "ranks": {"tuple_pseudo": self.rank_tuple_pseudo, "single_pseudo": self.rank_single_pseudo, "block_formula": self.rank_block_formula},
            "parameters": Value::Null,
        })
    }
}

pub fn tuple_analyze(phis: &[MatrixSymbol], n_trunc: usize, settings: &Settings) -> Result<TupleVerdict> {
    if phis.is_empty() || phis.iter().any(|p| p.n != phis[0].n) {
        return Err(BtkError::InvalidInput("tuple symbols must be nonempty and of equal size".into()));
    }
    let tol = settings.tol;
    let scale = op_scale(&phis.iter().collect::<Vec<_>>());
    let hyp = psd_scaled(&hardy_ops::tuple_commutator(phis, n_trunc).mat, tol, scale);
    let mut subpairs = vec![];
    for i in 0..phis.len() {
        for j in i + 1..phis.len() {
            let c = hardy_ops::pair_commutator(&phis[i], &phis[j], n_trunc).mat;
            subpairs.push((i, j, psd_scaled(&c, tol, scale)));
        }
    }
    let all = subpairs.iter().all(|s| s.2) && psd_scaled(&hardy_ops::self_commutator(&phis[0], n_trunc).mat, tol, scale);
    let tp = hardy_ops::tuple_pseudo_commutator(phis, n_trunc).mat;
    let sp = hardy_ops::pseudo_selfcommutator(&phis[0], n_trunc).mat;
    let block = solve_c_phi(&phis[0], settings).ok().map(|cert| {
        let km = cert.k_of_m();
        if km.nrows() == 0 {
            return 0;
        }
        let d = linalg::eye(km.nrows()) - km.adjoint() * &km;
        let ones = CMat::from_element(phis.len(), phis.len(), c64(1.0, 0.0));
        rank_scaled(&linalg::kron(&d, &ones), tol, 1.0)
    });
    Ok(TupleVerdict {
        hyponormal: hyp,
        subpairs,
        subpairs_hyponormal: all,
        rank_tuple_pseudo: rank_scaled(&tp, tol, scale),
        rank_single_pseudo: rank_scaled(&sp, tol, scale),
        rank_block_formula: block,
    })
}

#[derive(Debug, Clone)]
pub struct DegreeEquality {
    /// Trigonometric polynomials, invertible outer coefficients, diagonal-constant
    /// co-analytic outer coefficients.
    pub hypotheses: bool,
    pub hyponormal: bool,
    pub deg_minus_phi: usize,
    pub deg_minus_psi: usize,
    pub equal: bool,
    /// `hypotheses ∧ hyponormal ⟹ equal`.
    pub consistent: bool,
}

impl DegreeEquality {
    pub fn to_json(&self) -> Value {
        json!({
            "verdict": if self.equal { "equal" } else { "different" },
            "certificates": {"hypotheses": self.hypotheses, "hyponormal": self.hyponormal, "consistent": self.consistent},
            "residuals": Value::Null,
            "ranks": Value::Null,
            "parameters": {"deg_minus_phi": self.deg_minus_phi, "deg_minus_psi": self.deg_minus_psi},
        })
    }
}

/// Leading coefficient of an analytic polynomial part, if the part is a polynomial.
fn outer_coefficient(f: &RatMat) -> Option<CMat> {
    if !f.poles.is_empty() || f.shift < 0 {
        return None;
    }
    f.num.last().cloned()
}

fn trig_hypotheses(phi: &MatrixSymbol) -> bool {
    let p = plus_nonconstant(phi);
    match (outer_coefficient(&p), outer_coefficient(&phi.minus)) {
        (Some(a), Some(b)) => {
            let inv = |m: &CMat| linalg::sigma_min(m) > 1e-8 * linalg::norm2(m).max(1e-300);
            !negligible(&p) && !negligible(&phi.minus) && inv(&a) && inv(&b) && is_diagonal_constant(&b)
        }
        _ => false,
    }
}

pub fn degree_equality_check(phi: &MatrixSymbol, psi: &MatrixSymbol, n_trunc: usize, settings: &Settings) -> Result<DegreeEquality> {
    let hypotheses = trig_hypotheses(phi) && trig_hypotheses(psi);
    let hyp = psd_scaled(&hardy_ops::pair_commutator(phi, psi, n_trunc).mat, settings.tol, op_scale(&[phi, psi]));
    let dp = symbol::degree_symbol(phi, Part::Minus)?;
    let dq = symbol::degree_symbol(psi, Part::Minus)?;
    Ok(DegreeEquality {
        hypotheses,
        hyponormal: hyp,
        deg_minus_phi: dp,
        deg_minus_psi: dq,
        equal: dp == dq,
        consistent: !(hypotheses && hyp) || dp == dq,
    })
}

// ---------------------------------------------------------------------------
// Subnormal completions

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompletionClass {
    Normal,
    NotSubnormal,
    SpecialCase,
}

#[derive(Debug, Clone)]
pub struct CompletionVerdict {
    pub class: CompletionClass,
    /// Orders of `b_α` in θ₀ and θ₁.
    pub m: usize,
    pub n: usize,
    /// `φ_− = θ₀ ā`, `ψ_− = θ₁ b̄`.
    pub theta0: BlaschkeProduct,
    pub theta1: BlaschkeProduct,
    pub normal_symbol: bool,
    pub commutator_norm: f64,
    pub reason: String,
}

impl CompletionVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "verdict": format!("{:?}", self.class),
            "certificates": {
                "m": self.m,
                "n": self.n,
                "theta0": blaschke_to_json(&self.theta0),
                "theta1": blaschke_to_json(&self.theta1),
                "normal_symbol": self.normal_symbol,
                "reason": self.reason,
            },
            "residuals": {"commutator_norm": self.commutator_norm},
            "ranks": Value::Null,
            "parameters": Value::Null,
        })
    }
}

/// The symbol `[[b̄_α, φ], [ψ, b̄_β]]`.
pub fn completion_symbol(alpha: C64, beta: C64, phi_entry: &RatMat, psi_entry: &RatMat) -> Result<MatrixSymbol> {
    if !phi_entry.is_scalar() || !psi_entry.is_scalar() {
        return Err(BtkError::InvalidInput("completion entries must be scalar".into()));
    }
    let f = RatMat::from_entries(&[
        vec![blaschke_factor(alpha).star(), phi_entry.clone()],
        vec![psi_entry.clone(), blaschke_factor(beta).star()],
    ]);
    MatrixSymbol::from_ratmat(&f)
}

/// Classify `[[T_{b̄_α}, T_φ], [T_ψ, T_{b̄_β}]]` as normal, not subnormal or the
/// exceptional pattern where the equivalence of the three notions is not asserted.
pub fn completion_classify(
    alpha: C64,
    beta: C64,
    phi_entry: &RatMat,
    psi_entry: &RatMat,
    n_trunc: usize,
    settings: &Settings,
) -> Result<CompletionVerdict> {
    if alpha.norm() >= 1.0 || beta.norm() >= 1.0 {
        return Err(BtkError::InvalidInput("α and β must lie in the open disk".into()));
    }
    let sym = completion_symbol(alpha, beta, phi_entry, psi_entry)?;
    let (_, phi_m) = phi_entry.split()?;
    let (_, psi_m) = psi_entry.split()?;
    let (theta0, a) = symbol::scalar_coprime_decomp(&phi_m)?;
    let (theta1, b) = symbol::scalar_coprime_decomp(&psi_m)?;
    let m = theta0.multiplicity_of(alpha);
    let n = theta1.multiplicity_of(alpha);
    let normal = symbol::is_normal(&sym, settings.tol);
    let c = hardy_ops::self_commutator(&sym, n_trunc).mat;
    let cn = linalg::norm2(&c);
    let mk = |class, reason: &str| CompletionVerdict {
        class,
        m,
        n,
        theta0: theta0.clone(),
        theta1: theta1.clone(),
        normal_symbol: normal,
        commutator_norm: cn,
        reason: reason.to_string(),
    };
    if m == 1 && n == 1 {
        let bf = BlaschkeProduct::factor(alpha);
        let t0p = theta0.div(&bf).expect("b_α divides θ₀");
        let t1p = theta1.div(&bf).expect("b_α divides θ₁");
        let lhs = a.eval_scalar(alpha) * b.eval_scalar(alpha);
        let rhs = t0p.eval(alpha) * t1p.eval(alpha);
        if rhs.norm() > 1e-8 && (lhs - rhs).norm() < 1e-8 * lhs.norm().max(1.0) {
            return Ok(mk(CompletionClass::SpecialCase, "exceptional pattern (ab)(α) = (θ₀′θ₁′)(α) ≠ 0"));
        }
    }
    if (alpha - beta).norm() > 1e-12 {
        return Ok(mk(CompletionClass::NotSubnormal, "α ≠ β"));
    }
    if !normal {
        return Ok(mk(CompletionClass::NotSubnormal, "symbol is not normal"));
    }
    if !((m == 0 && n == 0) || (m == 1 && n == 1)) {
        return Ok(mk(CompletionClass::NotSubnormal, "orders of b_α in θ₀, θ₁ are not (0, 0) or (1, 1)"));
    }
    let s = sym.sup_norm(64).max(1.0);
    if cn < settings.tol * s * s {
        Ok(mk(CompletionClass::Normal, "self-commutator vanishes"))
    } else {
        Ok(mk(CompletionClass::NotSubnormal, "self-commutator does not vanish"))
    }
}

/// Truncation of the 2-hyponormality matrix `([T*^j, T^i])_{i,j=1,2}` to `N + 1` blocks.
pub fn two_hyponormal_matrix(phi: &MatrixSymbol, n_trunc: usize) -> CMat {
    let f = phi.to_ratmat();
    let c = phi.n * (n_trunc + 1);
    let r = n_trunc + 1 + 3 * hardy_ops::tail_pad(&f);
    let t = hardy_ops::toeplitz_rect(&f, r, r);
    let ts = t.adjoint();
    let t2 = &t * &t;
    let ts2 = t2.adjoint();
    let top = |m: CMat| m.view((0, 0), (c, c)).into_owned();
    let b11 = top(&ts * &t - &t * &ts);
    let b12 = top(&ts2 * &t - &t * &ts2);
    let b22 = top(&ts2 * &t2 - &t2 * &ts2);
    let mut out = CMat::zeros(2 * c, 2 * c);
    out.view_mut((0, 0), (c, c)).copy_from(&b11);
    out.view_mut((0, c), (c, c)).copy_from(&b12);
    out.view_mut((c, 0), (c, c)).copy_from(&b12.adjoint());
    out.view_mut((c, c), (c, c)).copy_from(&b22);
    linalg::hermitian_part(&out)
}

pub fn is_two_hyponormal(phi: &MatrixSymbol, n_trunc: usize, tol: f64) -> bool {
    psd_scaled(&two_hyponormal_matrix(phi, n_trunc), tol, op_scale(&[phi]).powi(2))
}
