//! Rational matrix symbols `Φ = Φ_−* + Φ₊` and their coprime factorizations.

use crate::error::{BtkError, Result};
use crate::linalg::{self, NULL_TOL};
use crate::matrix_inner::{
    circle_scale, cluster_points, divide_left, potapov_from_inner_with_zeros, right_coprime_at, PotapovFactor,
    PotapovProduct,
};
use crate::poly::Poly;
use crate::ratmat::{blaschke_factor, circle_point, RatMat};
use crate::scalar_inner::{lcm_blaschke, pseudo_hyperbolic, BlaschkeProduct, ZERO_MATCH};
use crate::{c64, CMat, C64};
use serde::{Deserialize, Serialize};

/// Boundary samples used for reconstruction checks.
pub const CHECK_SAMPLES: usize = 256;

/// A scalar Laurent rational `num · z^zshift / den`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaurentRational {
    pub num: Vec<C64>,
    pub den: Vec<C64>,
    pub zshift: i32,
}

impl LaurentRational {
    pub fn new(num: Vec<C64>, den: Vec<C64>, zshift: i32) -> Self {
        LaurentRational { num, den, zshift }
    }

    pub fn constant(a: C64) -> Self {
        LaurentRational { num: vec![a], den: vec![c64(1.0, 0.0)], zshift: 0 }
    }

    pub fn to_ratmat(&self) -> Result<RatMat> {
        if self.den.iter().all(|d| d.norm() == 0.0) {
            return Err(BtkError::InvalidInput("denominator is identically zero".into()));
        }
        let num = if self.num.is_empty() { vec![c64(0.0, 0.0)] } else { self.num.clone() };
        let r = RatMat::scalar(&Poly::new(num), &Poly::new(self.den.clone()), self.zshift)?;
        r.check_circle()?;
        Ok(r)
    }
}

/// `Φ = Φ_−* + Φ₊` with `Φ₊` holding the constant term and `Φ_−(0) = 0`.
#[derive(Debug, Clone)]
pub struct MatrixSymbol {
    pub n: usize,
    pub plus: RatMat,
    pub minus: RatMat,
}

impl MatrixSymbol {
    /// Split a rational function given on 𝕋.
    pub fn from_ratmat(f: &RatMat) -> Result<Self> {
        if f.rows != f.cols {
            return Err(BtkError::InvalidInput("symbols must be square".into()));
        }
        let (plus, minus) = f.split()?;
        let s = MatrixSymbol { n: f.rows, plus, minus };
        let err = s.to_ratmat().dist(f, CHECK_SAMPLES);
        let scale = f.sup_norm(64).max(1.0);
        if err > 1e-10 * scale {
            return Err(BtkError::Certification(format!("split round trip error {err:.2e}")));
        }
        Ok(s)
    }

    /// Build from explicit parts, moving any constant of `minus` into `plus`.
    pub fn from_parts(plus: RatMat, minus: RatMat) -> Result<Self> {
        if !plus.is_analytic() || !minus.is_analytic() {
            return Err(BtkError::InvalidInput("symbol parts must be analytic on the closed disk".into()));
        }
        let c = minus.eval(c64(0.0, 0.0));
        let minus = minus.sub(&RatMat::constant(c.clone()));
        let plus = plus.add(&RatMat::constant(c.adjoint()));
        Ok(MatrixSymbol { n: plus.rows, plus, minus })
    }

    pub fn analytic(f: RatMat) -> Self {
        let n = f.rows;
        MatrixSymbol { n, plus: f, minus: RatMat::zeros(n, n) }
    }

    pub fn coanalytic(g: RatMat) -> Result<Self> {
        let n = g.rows;
        Self::from_parts(RatMat::zeros(n, n), g)
    }

    pub fn to_ratmat(&self) -> RatMat {
        self.minus.star().add(&self.plus)
    }

    pub fn eval(&self, z: C64) -> CMat {
        self.plus.eval(z) + self.minus.eval(z).adjoint()
    }

    /// The symbol `Φ*`.
    pub fn adjoint(&self) -> MatrixSymbol {
        let c = self.plus.eval(c64(0.0, 0.0));
        let minus = self.plus.sub(&RatMat::constant(c.clone()));
        let plus = self.minus.add(&RatMat::constant(c.adjoint()));
        MatrixSymbol { n: self.n, plus, minus }
    }

    pub fn add(&self, o: &MatrixSymbol) -> MatrixSymbol {
        MatrixSymbol { n: self.n, plus: self.plus.add(&o.plus), minus: self.minus.add(&o.minus) }
    }

    pub fn sub(&self, o: &MatrixSymbol) -> MatrixSymbol {
        MatrixSymbol { n: self.n, plus: self.plus.sub(&o.plus), minus: self.minus.sub(&o.minus) }
    }

    pub fn scale(&self, s: C64) -> MatrixSymbol {
        MatrixSymbol { n: self.n, plus: self.plus.scale(s), minus: self.minus.scale(s.conj()) }
    }

    /// `Λ Φ` for a constant matrix `Λ`.
    pub fn lmul_const(&self, l: &CMat) -> MatrixSymbol {
        MatrixSymbol { n: self.n, plus: self.plus.lmul_const(l), minus: self.minus.rmul_const(&l.adjoint()) }
    }

    pub fn mul(&self, o: &MatrixSymbol) -> Result<MatrixSymbol> {
        MatrixSymbol::from_ratmat(&self.to_ratmat().mul(&o.to_ratmat()))
    }

    pub fn is_analytic(&self) -> bool {
        self.minus.sup_norm(64) < 1e-12
    }

    /// Sampled sup norm on 𝕋.
    pub fn sup_norm(&self, m: usize) -> f64 {
        (0..m).map(|j| linalg::norm2(&self.eval(circle_point(j, m)))).fold(0.0, f64::max)
    }

    /// `Φ ∘ ω` for a finite Blaschke product ω.
    pub fn compose(&self, omega: &BlaschkeProduct) -> Result<MatrixSymbol> {
        let (p, q) = omega.as_fraction();
        MatrixSymbol::from_parts(self.plus.compose(&p, &q)?, self.minus.compose(&p, &q)?)
    }

    /// Largest pole modulus among poles inside the disk of `Φ₊*` and `Φ_−*`,
    /// i.e. the geometric decay rate of the Fourier coefficients.
    pub fn decay_rate(&self) -> f64 {
        let r = |f: &RatMat| f.poles.iter().map(|p| 1.0 / p.norm()).fold(0.0, f64::max);
        r(&self.plus).max(r(&self.minus))
    }

    pub fn part(&self, which: Part) -> &RatMat {
        match which {
            Part::Plus => &self.plus,
            Part::Minus => &self.minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// `part = Ω_r A_r*` (right) or `part = A_ℓ* Ω_ℓ` (left), with a coprimeness certificate.
#[derive(Debug, Clone)]
pub struct CoprimeFactorization {
    pub side: Side,
    pub inner: PotapovProduct,
    pub outerish: RatMat,
    /// `(θ, A)` when the inner factor is `θ` times a constant unitary.
    pub scalar_form: Option<(BlaschkeProduct, RatMat)>,
    pub reconstruction_error: f64,
}

impl CoprimeFactorization {
    pub fn degree(&self) -> usize {
        self.inner.degree()
    }
}

/// Split a matrix of Laurent rationals into a [`MatrixSymbol`].
pub fn split(raw: &[Vec<LaurentRational>]) -> Result<MatrixSymbol> {
    let n = raw.len();
    if n == 0 || raw.iter().any(|r| r.len() != n) {
        return Err(BtkError::InvalidInput("symbol must be a nonempty square array".into()));
    }
    let grid: Vec<Vec<RatMat>> =
        raw.iter().map(|row| row.iter().map(|e| e.to_ratmat()).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    MatrixSymbol::from_ratmat(&RatMat::from_entries(&grid))
}

/// `f = θ ā` on 𝕋 with θ minimal; returns `(θ, a)`, or `(1, 0)` when `f ≡ 0`.
pub fn scalar_coprime_decomp(f: &RatMat) -> Result<(BlaschkeProduct, RatMat)> {
    if !f.is_scalar() {
        return Err(BtkError::InvalidInput("scalar function expected".into()));
    }
    if !f.is_analytic() {
        return Err(BtkError::InvalidInput("f must be analytic on the closed disk".into()));
    }
    if f.sup_norm(64) == 0.0 || f.is_zero_exact() {
        return Ok((BlaschkeProduct::one(), RatMat::zeros(1, 1)));
    }
    // candidate: reflect the poles and absorb the pole of f* at the origin
    let d = f.num_degree() as i32 + f.shift;
    let m = f.poles.len() as i32;
    let mut zeros: Vec<C64> = vec![c64(0.0, 0.0); (d - m).max(0) as usize];
    zeros.extend(f.poles.iter().map(|p| c64(1.0, 0.0) / p.conj()));
    let mut theta = BlaschkeProduct::from_zeros(&zeros);
    let fs = f.star();
    let mut a = theta.to_ratmat().mul(&fs);
    // cancel common zeros of θ and a
    loop {
        let scale = a.sup_norm(64).max(1e-300);
        let hit = theta.zeros.iter().map(|z| z.0).find(|&z| a.eval_scalar(z).norm() <= 1e-8 * scale);
        match hit {
            Some(z) => {
                theta = theta.div(&BlaschkeProduct::factor(z)).expect("zero of θ");
                a = divide_scalar_factor(&a, z);
            }
            None => break,
        }
    }
    if !a.is_analytic() {
        return Err(BtkError::Certification("a is not analytic after reduction".into()));
    }
    let err = theta.to_ratmat().mul(&a.star()).dist(f, CHECK_SAMPLES);
    if err > 1e-9 * f.sup_norm(64).max(1.0) {
        return Err(BtkError::Certification(format!("f = θā fails by {err:.2e}")));
    }
    Ok((theta, a))
}

/// `g / b_α` for a function with `g(α) = 0`, by exact division.
pub fn divide_scalar_factor(g: &RatMat, alpha: C64) -> RatMat {
    divide_left(g, alpha, &linalg::eye(g.rows))
}

/// θ = lcm of the entrywise θ_ij, and `A = θ F*` so that `F = θA*` on 𝕋.
pub fn naive_scalar_pullout(part: &RatMat) -> Result<(BlaschkeProduct, RatMat)> {
    let mut theta = BlaschkeProduct::one();
    for i in 0..part.rows {
        for j in 0..part.cols {
            let (t, _) = scalar_coprime_decomp(&part.entry(i, j))?;
            theta = lcm_blaschke(&theta, &t);
        }
    }
    let a = theta.to_ratmat().scalar_mul(&part.star());
    if !a.is_analytic() {
        return Err(BtkError::Certification("A = θF* is not analytic".into()));
    }
    Ok((theta, a))
}

/// Zeros of θ in the canonical extraction order (|α|, then argument), with multiplicity.
fn ordered_zeros(theta: &BlaschkeProduct) -> Vec<(C64, usize)> {
    let mut z = theta.zeros.clone();
    z.sort_by(|a, b| (a.0.norm(), a.0.arg()).partial_cmp(&(b.0.norm(), b.0.arg())).unwrap());
    z
}

fn joint_left_kernel(g1: &CMat, g2: &CMat, s1: f64, s2: f64) -> CMat {
    let n = g1.nrows();
    let mut s = CMat::zeros(n, g1.ncols() + g2.ncols());
    s.view_mut((0, 0), g1.shape()).copy_from(&g1.map(|e| e / s1));
    s.view_mut((0, g1.ncols()), g2.shape()).copy_from(&g2.map(|e| e / s2));
    linalg::left_null_space_scaled(&s, NULL_TOL, 1.0)
}

/// Joint extraction of left Blaschke-Potapov factors from `θI` and `A` at the zeros
/// of θ.  Returns the extracted factors, the two quotients and the zero budget left
/// over in the first quotient.
fn joint_extract(theta: &BlaschkeProduct, a: RatMat) -> (Vec<PotapovFactor>, RatMat, RatMat, Vec<(C64, usize)>) {
    let n = a.rows;
    let mut g1 = theta.to_ratmat().scalar_mul(&RatMat::identity(n));
    let mut g2 = a;
    let mut factors: Vec<PotapovFactor> = vec![];
    let s2 = circle_scale(&g2).max(1e-300);
    let mut budget: Vec<(C64, usize)> = theta.zeros.iter().map(|&(z, k)| (z, k * n)).collect();
    for (alpha, _) in ordered_zeros(theta) {
        loop {
            let left = budget.iter().find(|b| pseudo_hyperbolic(b.0, alpha) < ZERO_MATCH).map(|b| b.1).unwrap_or(0);
            if left == 0 {
                break;
            }
            let k = joint_left_kernel(&g1.eval(alpha), &g2.eval(alpha), 1.0, s2);
            if k.ncols() == 0 {
                break;
            }
            let p = linalg::projector(&k);
            g1 = divide_left(&g1, alpha, &p);
            g2 = divide_left(&g2, alpha, &p);
            if let Some(b) = budget.iter_mut().find(|b| pseudo_hyperbolic(b.0, alpha) < ZERO_MATCH) {
                b.1 = b.1.saturating_sub(k.ncols());
            }
            factors.push(PotapovFactor { alpha, proj: p });
        }
    }
    (factors, g1, g2, budget)
}

/// `left-gcd(I_θ, X)` for a scalar finite Blaschke product θ and analytic `X`.
pub fn left_gcd_scalar(theta: &BlaschkeProduct, x: &RatMat) -> Result<PotapovProduct> {
    if !x.is_analytic() || x.rows != x.cols {
        return Err(BtkError::InvalidInput("analytic square function expected".into()));
    }
    let (factors, _, _, _) = joint_extract(theta, x.clone());
    PotapovProduct::new(linalg::eye(x.rows), factors)
}

/// Left factorization `part = A_ℓ* Ω_ℓ`.
pub fn dss_left(part: &RatMat) -> Result<CoprimeFactorization> {
    let n = part.rows;
    if part.cols != n {
        return Err(BtkError::InvalidInput("square part expected".into()));
    }
    let (theta, a) = naive_scalar_pullout(part)?;
    let (_, g1, g2, mut budget) = joint_extract(&theta, a);
    budget.retain(|b| b.1 > 0);
    let omega_l = potapov_from_inner_with_zeros(&g1, &budget)?;
    // certification
    let recon = g2.star().mul(&omega_l.to_ratmat());
    let err = recon.dist(part, CHECK_SAMPLES);
    let scale = part.sup_norm(64).max(1.0);
    if err > 1e-8 * scale {
        return Err(BtkError::Certification(format!("left factorization reconstruction error {err:.2e}")));
    }
    let pts = omega_l.zero_set();
    let ok = right_coprime_at(&|z| omega_l.eval(z).adjoint(), &|z| g2.eval(z).adjoint(), &pts);
    if !ok {
        return Err(BtkError::Certification("left factors are not left coprime".into()));
    }
    let scalar_form = scalar_form_of(&omega_l, &g2, Side::Left);
    Ok(CoprimeFactorization { side: Side::Left, inner: omega_l, outerish: g2, scalar_form, reconstruction_error: err })
}

/// Right factorization `part = Ω_r A_r*`, via the left algorithm on the tilde symbol.
pub fn dss_right(part: &RatMat) -> Result<CoprimeFactorization> {
    let left = dss_left(&part.tilde())?;
    let inner = left.inner.tilde();
    let a = left.outerish.tilde();
    let recon = inner.to_ratmat().mul(&a.star());
    let err = recon.dist(part, CHECK_SAMPLES);
    let scale = part.sup_norm(64).max(1.0);
    if err > 1e-8 * scale {
        return Err(BtkError::Certification(format!("right factorization reconstruction error {err:.2e}")));
    }
    let pts = inner.zero_set();
    if !right_coprime_at(&|z| inner.eval(z), &|z| a.eval(z), &pts) {
        return Err(BtkError::Certification("right factors are not right coprime".into()));
    }
    let scalar_form = scalar_form_of(&inner, &a, Side::Right);
    Ok(CoprimeFactorization { side: Side::Right, inner, outerish: a, scalar_form, reconstruction_error: err })
}

/// Detect `Ω = θU` with `U` constant unitary and return `(θ, A)` with `part = θA*`.
fn scalar_form_of(omega: &PotapovProduct, a: &RatMat, side: Side) -> Option<(BlaschkeProduct, RatMat)> {
    let n = omega.size();
    let det = omega.det();
    if det.zeros.iter().any(|z| z.1 % n != 0) {
        return None;
    }
    let theta = BlaschkeProduct::new(c64(1.0, 0.0), &det.zeros.iter().map(|&(z, k)| (z, k / n)).collect::<Vec<_>>()).ok()?;
    let z0 = c64(0.2, 0.3);
    let u = omega.eval(z0) / theta.eval(z0);
    for j in 0..32 {
        let z = circle_point(j, 32);
        if linalg::max_abs(&(omega.eval(z) - &u * theta.eval(z))) > 1e-8 {
            return None;
        }
    }
    let u = linalg::nearest_unitary(&u);
    // right: θ U A* = θ (A U*)*; left: A* θ U = θ (U* A)*
    let a = match side {
        Side::Right => a.rmul_const(&u.adjoint()),
        Side::Left => a.lmul_const(&u.adjoint()),
    };
    Some((theta, a))
}

/// Degree of the chosen part, via the right factorization; the left side must agree.
pub fn degree_symbol(phi: &MatrixSymbol, part: Part) -> Result<usize> {
    let f = phi.part(part);
    if f.sup_norm(64) < 1e-14 {
        return Ok(0);
    }
    let r = dss_right(f)?.degree();
    let l = dss_left(f)?.degree();
    if r != l {
        return Err(BtkError::Certification(format!("left degree {l} differs from right degree {r}")));
    }
    Ok(r)
}

/// Points α with `Θ(α) = 0` for the right inner factor of the chosen part, with the
/// largest `p` such that `I_{b_α^p}` divides Θ.
pub fn tensored_singularity(phi: &MatrixSymbol, part: Part) -> Result<Vec<(C64, usize)>> {
    let f = phi.part(part);
    if f.sup_norm(64) < 1e-14 {
        return Ok(vec![]);
    }
    let fac = dss_right(f)?;
    let theta = fac.inner;
    let n = theta.size();
    let mut out = vec![];
    for (alpha, _) in theta.det().zeros {
        let mut g = theta.to_ratmat();
        let mut p = 0;
        while linalg::norm2(&g.eval(alpha)) <= 1e-8 {
            g = divide_left(&g, alpha, &linalg::eye(n));
            p += 1;
        }
        if p > 0 {
            out.push((alpha, p));
        }
    }
    Ok(out)
}

/// `‖Φ*Φ − ΦΦ*‖ < tol` on 256 samples of 𝕋.
pub fn is_normal(phi: &MatrixSymbol, tol: f64) -> bool {
    (0..CHECK_SAMPLES).all(|j| {
        let v = phi.eval(circle_point(j, CHECK_SAMPLES));
        let s = linalg::norm2(&v).max(1.0);
        linalg::norm2(&(v.adjoint() * &v - &v * v.adjoint())) < tol * s * s
    })
}

/// `‖ΦΨ − ΨΦ‖ < tol` on 256 samples of 𝕋.
pub fn commutes(phi: &MatrixSymbol, psi: &MatrixSymbol, tol: f64) -> bool {
    (0..CHECK_SAMPLES).all(|j| {
        let z = circle_point(j, CHECK_SAMPLES);
        let (a, b) = (phi.eval(z), psi.eval(z));
        let s = (linalg::norm2(&a) * linalg::norm2(&b)).max(1.0);
        linalg::norm2(&(&a * &b - &b * &a)) < tol * s
    })
}

/// Zeros of an analytic scalar function inside 𝔻, clustered, with multiplicities.
pub fn zeros_in_disk(f: &RatMat) -> Vec<(C64, usize)> {
    let p = Poly::new(f.num.iter().map(|c| c[(0, 0)]).collect());
    let mut roots: Vec<C64> = vec![c64(0.0, 0.0); f.shift.max(0) as usize];
    roots.extend(p.roots());
    let inside: Vec<C64> = roots.into_iter().filter(|r| r.norm() < 1.0 - 1e-9).collect();
    cluster_points(&inside, 1e-5)
}

/// Inner factor as a Blaschke product of the zeros of an analytic scalar function.
pub fn scalar_inner_factor(f: &RatMat) -> BlaschkeProduct {
    let z: Vec<(C64, usize)> = zeros_in_disk(f);
    BlaschkeProduct::new(c64(1.0, 0.0), &z).expect("zeros inside the disk")
}

/// Inner-outer factorization `F = F_i F_e` of an analytic square `F` with `det F ≢ 0`.
pub fn inner_outer(f: &RatMat) -> Result<(PotapovProduct, RatMat)> {
    if f.rows != f.cols || !f.is_analytic() {
        return Err(BtkError::InvalidInput("analytic square matrix expected".into()));
    }
    let det = f.det();
    if det.sup_norm(64) < 1e-14 {
        return Err(BtkError::InvalidInput("det F vanishes identically".into()));
    }
    let mut fe = f.clone();
    let mut factors = vec![];
    for (alpha, mult) in zeros_in_disk(&det) {
        let mut used = 0;
        while used < mult {
            let v = fe.eval(alpha);
            let k = linalg::left_null_space_scaled(&v, 1e-7, circle_scale(&fe));
            if k.ncols() == 0 {
                break;
            }
            let p = linalg::projector(&k);
            fe = divide_left(&fe, alpha, &p);
            used += k.ncols();
            factors.push(PotapovFactor { alpha, proj: p });
        }
        if used != mult {
            return Err(BtkError::Certification(format!("extracted {used} of {mult} zeros at {alpha}")));
        }
    }
    let fi = PotapovProduct::new(linalg::eye(f.rows), factors)?;
    let rest = zeros_in_disk(&fe.det());
    if !rest.is_empty() {
        return Err(BtkError::Certification("outer factor still has zeros in the disk".into()));
    }
    let err = fi.to_ratmat().mul(&fe).dist(f, CHECK_SAMPLES);
    if err > 1e-8 * f.sup_norm(64).max(1.0) {
        return Err(BtkError::Certification(format!("inner-outer reconstruction error {err:.2e}")));
    }
    Ok((fi, fe))
}

/// Outer test for an analytic `m × n` function with `m ≤ n`: the inner parts of the
/// nonzero maximal minors have no common zero.
pub fn outer_test(f: &RatMat) -> Result<bool> {
    let (m, n) = (f.rows, f.cols);
    if m > n || !f.is_analytic() {
        return Err(BtkError::InvalidInput("analytic m×n function with m ≤ n expected".into()));
    }
    let rows: Vec<usize> = (0..m).collect();
    let mut g: Option<BlaschkeProduct> = None;
    for cols in combinations(n, m) {
        let d = f.select(&rows, &cols).det();
        if d.sup_norm(64) < 1e-12 {
            continue;
        }
        let inner = scalar_inner_factor(&d);
        g = Some(match g {
            None => inner,
            Some(x) => crate::scalar_inner::gcd_blaschke(&x, &inner),
        });
    }
    Ok(matches!(g, Some(b) if b.degree() == 0))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur = vec![];
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Entrywise composition of an analytic function with a finite Blaschke product.
pub fn compose_symbol(f: &RatMat, omega: &BlaschkeProduct) -> Result<RatMat> {
    let (p, q) = omega.as_fraction();
    f.compose(&p, &q)
}

fn analytic_part_without_constant(f: &RatMat) -> Result<RatMat> {
    let (plus, _) = f.split()?;
    let c = plus.eval(c64(0.0, 0.0));
    Ok(plus.sub(&RatMat::constant(c)))
}

fn conjugate_part(f: &RatMat) -> Result<RatMat> {
    Ok(f.split()?.1)
}

/// `Φ_{Δ1,Δ2} = P_{(H²)⊥}(Φ_−*Δ1) + P_{H0²}(Δ2*Φ₊)`.
pub fn lower(phi: &MatrixSymbol, d1: &RatMat, d2: &RatMat) -> Result<MatrixSymbol> {
    let x = phi.minus.star().mul(d1);
    let y = d2.star().mul(&phi.plus);
    Ok(MatrixSymbol { n: phi.n, plus: analytic_part_without_constant(&y)?, minus: conjugate_part(&x)? })
}

/// `Φ^{Δ1,Δ2} = P_{(H²)⊥}(Δ1Φ_−*) + P_{H0²}(Φ₊Δ2*)`.
pub fn upper(phi: &MatrixSymbol, d1: &RatMat, d2: &RatMat) -> Result<MatrixSymbol> {
    let x = d1.mul(&phi.minus.star());
    let y = phi.plus.mul(&d2.star());
    Ok(MatrixSymbol { n: phi.n, plus: analytic_part_without_constant(&y)?, minus: conjugate_part(&x)? })
}

/// Convenience: scalar inner `θ` as an `n × n` diagonal-constant rational function.
pub fn diagonal_constant(theta: &BlaschkeProduct, n: usize) -> RatMat {
    theta.to_ratmat().scalar_mul(&RatMat::identity(n))
}

/// Convenience: `b_α` as a scalar function.
pub fn bfactor(alpha: C64) -> RatMat {
    blaschke_factor(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmat::monomial;
    use proptest::prelude::*;

    fn r(x: f64) -> C64 {
        c64(x, 0.0)
    }

    fn poly(c: &[f64]) -> RatMat {
        RatMat::from_matpoly(c.iter().map(|&a| CMat::from_element(1, 1, r(a))).collect())
    }

    fn degree_example() -> RatMat {
        let z = monomial(1);
        let b = bfactor(r(0.5));
        RatMat::from_entries(&[
            vec![z.clone(), b.mul(&z).neg()],
            vec![RatMat::zeros(1, 1), RatMat::scalar_const(r(1.0))],
        ])
    }

    #[test]
    fn split_examples() {
        let raw = vec![vec![LaurentRational::new(vec![r(1.0), r(0.0), r(2.0)], vec![r(1.0)], -1)]];
        let s = split(&raw).unwrap();
        let z = c64(0.2, 0.5);
        assert!((s.plus.eval_scalar(z) - 2.0 * z).norm() < 1e-12);
        assert!((s.minus.eval_scalar(z) - z).norm() < 1e-12);
        let c = split(&[vec![LaurentRational::constant(r(3.0))]]).unwrap();
        assert!((c.plus.eval_scalar(z) - r(3.0)).norm() < 1e-14 && c.minus.sup_norm(16) < 1e-14);
        let p = split(&[vec![LaurentRational::new(vec![r(1.0)], vec![r(-0.5), r(1.0)], 0)]]).unwrap();
        assert!(p.minus.eval_scalar(r(0.0)).norm() < 1e-14);
        assert!(p.plus.sup_norm(16) < 1e-12 + 1e-9 || p.plus.is_analytic());
        let bad = split(&[vec![LaurentRational::new(vec![r(1.0)], vec![r(-1.0), r(1.0)], 0)]]);
        assert!(bad.is_err());
    }

    #[test]
    fn scalar_decomposition_examples() {
        let (t, a) = scalar_coprime_decomp(&poly(&[-2.0, 1.0])).unwrap();
        assert_eq!(t.degree(), 1);
        assert_eq!(t.multiplicity_of(r(0.0)), 1);
        // a = 1 − 2z up to a unimodular constant
        let ratio = a.eval_scalar(r(0.3)) / c64(1.0 - 0.6, 0.0);
        assert!((ratio.norm() - 1.0).abs() < 1e-10);
        assert!((a.eval_scalar(r(0.7)) / c64(1.0 - 1.4, 0.0) - ratio).norm() < 1e-10);
        let (t3, a3) = scalar_coprime_decomp(&monomial(3)).unwrap();
        assert_eq!(t3.degree(), 3);
        assert!((a3.eval_scalar(r(0.4)).norm() - 1.0).abs() < 1e-12);
        let f = RatMat::scalar(
            &Poly::from_roots(&[r(2.0), r(1.0 / 3.0)]),
            &Poly::new(vec![r(1.0), r(-0.25)]),
            0,
        )
        .unwrap();
        let (t, a) = scalar_coprime_decomp(&f).unwrap();
        assert!(t.zeros.iter().all(|&(z, _)| a.eval_scalar(z).norm() > 1e-6));
        assert!(t.to_ratmat().mul(&a.star()).dist(&f, 256) < 1e-9);
    }

    #[test]
    fn pullout_examples() {
        let z = monomial(1);
        let d = RatMat::block_diag(&[z.clone(), z.clone()]);
        let (t, a) = naive_scalar_pullout(&d).unwrap();
        assert_eq!(t.degree(), 1);
        assert!(a.dist(&RatMat::identity(2).scale(t.constant.conj()), 64) < 1e-12);
        let (t0, _) = naive_scalar_pullout(&RatMat::zeros(2, 2)).unwrap();
        assert_eq!(t0.degree(), 0);
    }

    #[test]
    fn degree_example_right_factorization() {
        let phi = degree_example();
        let f = dss_right(&phi).unwrap();
        assert_eq!(f.degree(), 2);
        // inner factor equals diag(b z, 1) up to a constant unitary on the right
        let target = PotapovProduct::new(
            linalg::eye(2),
            vec![
                PotapovFactor::new(r(0.5), linalg::diag(&[r(1.0), r(0.0)])).unwrap(),
                PotapovFactor::new(r(0.0), linalg::diag(&[r(1.0), r(0.0)])).unwrap(),
            ],
        )
        .unwrap();
        assert!(target.equal_up_to_unitary(&f.inner, 1e-8));
        assert_eq!(phi.det().num_degree() as i32 + phi.det().shift, 1);
    }

    #[test]
    fn example_i_left_factorization() {
        let z = monomial(1);
        let phi = RatMat::from_entries(&[vec![z.clone(), z.clone()], vec![RatMat::zeros(1, 1), RatMat::zeros(1, 1)]]);
        let f = dss_left(&phi).unwrap();
        assert_eq!(f.degree(), 1);
        // Θ = (1/√2)[[z, z],[1, −1]] up to a constant unitary on the left
        let s = 1.0 / 2f64.sqrt();
        let w = c64(0.3, 0.4);
        let theta = linalg::from_rows(&[vec![w * s, w * s], vec![r(s), r(-s)]]);
        let got = f.inner.eval(w);
        let u = got.clone() * linalg::inverse(&theta).unwrap();
        assert!(linalg::unitarity_defect(&u) < 1e-8);
        assert!(dss_right(&RatMat::block_diag(&[z.clone(), z])).unwrap().scalar_form.is_some());
    }

    #[test]
    fn inner_outer_examples() {
        let z = monomial(1);
        let f = RatMat::block_diag(&[z.clone(), poly(&[2.0, 1.0])]);
        let (fi, fe) = inner_outer(&f).unwrap();
        assert_eq!(fi.degree(), 1);
        assert!(zeros_in_disk(&fe.det()).is_empty());
        assert_eq!(dss_left(&f).unwrap().degree(), 2);
        let (ci, _) = inner_outer(&RatMat::constant(linalg::from_rows(&[vec![r(1.0), r(2.0)], vec![r(0.0), r(1.0)]]))).unwrap();
        assert_eq!(ci.degree(), 0);
        let b = diagonal_constant(&BlaschkeProduct::factor(r(0.5)), 2);
        let (bi, be) = inner_outer(&b).unwrap();
        assert_eq!(bi.degree(), 2);
        assert!(be.dist(&RatMat::identity(2), 64) < 1e-8 || linalg::unitarity_defect(&be.eval(r(0.0))) < 1e-8);
    }

    #[test]
    fn outer_test_examples() {
        let one = RatMat::scalar_const(r(1.0));
        let row = RatMat::from_entries(&[vec![one.clone(), one.clone()]]);
        assert!(outer_test(&row).unwrap());
        let zrow = RatMat::from_entries(&[vec![monomial(1), RatMat::zeros(1, 1)]]);
        assert!(!outer_test(&zrow).unwrap());
        assert!(outer_test(&RatMat::identity(2)).unwrap());
    }

    #[test]
    fn tensored_singularity_examples() {
        let zbar = RatMat::block_diag(&[monomial(1), monomial(2)]);
        let psi = MatrixSymbol::coanalytic(zbar).unwrap();
        assert_eq!(tensored_singularity(&psi, Part::Minus).unwrap(), vec![(r(0.0), 1)]);
        let phi = MatrixSymbol::coanalytic(RatMat::block_diag(&[monomial(1), RatMat::zeros(1, 1)])).unwrap();
        assert!(tensored_singularity(&phi, Part::Minus).unwrap().is_empty());
        let abr = MatrixSymbol::from_parts(RatMat::block_diag(&[monomial(1), monomial(1)]), RatMat::block_diag(&[monomial(1), RatMat::zeros(1, 1)])).unwrap();
        assert!(tensored_singularity(&abr, Part::Minus).unwrap().is_empty());
    }

    #[test]
    fn normality_examples() {
        let s = MatrixSymbol::from_parts(RatMat::scalar_const(r(1.0)).add(&monomial(2)), monomial(1)).unwrap();
        assert!(is_normal(&s, 1e-10));
        let abr = MatrixSymbol::from_parts(RatMat::block_diag(&[monomial(1), monomial(1)]), RatMat::block_diag(&[monomial(1), RatMat::zeros(1, 1)])).unwrap();
        assert!(is_normal(&abr, 1e-10));
        let nil = MatrixSymbol::analytic(RatMat::from_entries(&[
            vec![RatMat::zeros(1, 1), monomial(1)],
            vec![RatMat::zeros(1, 1), RatMat::zeros(1, 1)],
        ]));
        assert!(!is_normal(&nil, 1e-10));
        assert!(commutes(&abr, &abr, 1e-10));
    }

    #[test]
    fn lowering_examples() {
        let phi = MatrixSymbol::from_ratmat(&RatMat::scalar(&Poly::new(vec![r(1.0), r(3.0), r(2.0)]), &Poly::one(), -1).unwrap()).unwrap();
        let one = RatMat::identity(1);
        let l = lower(&phi, &one, &one).unwrap();
        let expected = phi.to_ratmat().sub(&RatMat::scalar_const(r(3.0)));
        assert!(l.to_ratmat().dist(&expected, 64) < 1e-12);
        // analytic symbol: lower part has no co-analytic piece
        let an = MatrixSymbol::analytic(poly(&[1.0, 2.0]));
        assert!(lower(&an, &bfactor(r(0.3)), &one).unwrap().minus.sup_norm(32) < 1e-12);
        // φ₊ = θā with θ = z b: upper with Δ2 = θ removes θ
        let b = bfactor(r(-0.5));
        let plus = monomial(1).mul(&b).scale(r(2.0));
        let psi = MatrixSymbol::from_parts(plus.clone(), monomial(1)).unwrap();
        let u = upper(&psi, &one, &b).unwrap();
        assert!(u.plus.dist(&monomial(1).scale(r(2.0)), 64) < 1e-10);
    }

    fn arb_part() -> impl Strategy<Value = RatMat> {
        let entry = (proptest::collection::vec(-1.0f64..1.0, 3), proptest::collection::vec(-1.0f64..1.0, 3), 0usize..2, 1.5f64..4.0, 0.0f64..6.28);
        proptest::collection::vec(entry, 4).prop_map(|es| {
            let grid: Vec<Vec<RatMat>> = (0..2)
                .map(|i| {
                    (0..2)
                        .map(|j| {
                            let (re, im, npoles, rad, th) = &es[2 * i + j];
                            let num: Vec<C64> = re.iter().zip(im).map(|(&a, &b)| c64(a, b)).collect();
                            let den = if *npoles == 0 { Poly::one() } else { Poly::linear(C64::from_polar(*rad, *th)) };
                            RatMat::scalar(&Poly::new(num), &den, 0).unwrap()
                        })
                        .collect()
                })
                .collect();
            RatMat::from_entries(&grid)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn factorizations_reconstruct_and_degrees_agree(f in arb_part()) {
            let r = dss_right(&f).unwrap();
            let l = dss_left(&f).unwrap();
            prop_assert!(r.inner.to_ratmat().mul(&r.outerish.star()).dist(&f, 256) < 1e-8);
            prop_assert_eq!(r.degree(), l.degree());
            if f.det().sup_norm(64) > 1e-6 {
                let (fi, _) = inner_outer(&f).unwrap();
                prop_assert!(fi.degree() <= l.degree());
            }
        }

        #[test]
        fn split_round_trip(re in proptest::collection::vec(-1.0f64..1.0, 4), rad in 0.2f64..0.8, th in 0.0f64..6.28) {
            let num = Poly::new(re.iter().map(|&a| r(a)).collect());
            let f = RatMat::scalar(&num, &Poly::linear(C64::from_polar(rad, th)), -1).unwrap();
            let s = MatrixSymbol::from_ratmat(&f).unwrap();
            prop_assert!(s.to_ratmat().dist(&f, 256) < 1e-10);
            prop_assert!(s.minus.eval_scalar(r(0.0)).norm() < 1e-12);
        }
    }
}
