//! Truncated Toeplitz and Hankel matrices, commutators and model-space machinery.
//!
//! Block matrices use the coefficient-major layout: block row `i`, component `a`
//! sits at index `i·n + a`.  Model-space matrices use the basis-major layout
//! `j·n + a` for `φ_j ⊗ e_a`, so that `P(M) = Σ M^i ⊗ P_i`.

use crate::error::{BtkError, Result};
use crate::linalg;
use crate::matrix_inner::PotapovProduct;
use crate::ratmat::RatMat;
use crate::scalar_inner::BlaschkeProduct;
use crate::symbol::MatrixSymbol;
use crate::{c64, CMat, C64};
use serde::{Deserialize, Serialize};

/// Coefficients below this size are treated as the end of a geometric tail.
pub const TAIL_TOL: f64 = 1e-17;
/// Upper bound on the extra rows used to make truncated products exact.
pub const MAX_PAD: usize = 2000;
/// PSD floor and rank threshold, relative to the matrix norm.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Matrix Fourier coefficients `A_k` for `k ∈ [lo, hi]`.
#[derive(Debug, Clone)]
pub struct FourierWindow {
    pub n: usize,
    pub lo: i64,
    pub coeffs: Vec<CMat>,
    /// `max(‖A_lo‖, ‖A_hi‖)`; small when the window covers the support.
    pub tail: f64,
}

impl FourierWindow {
    pub fn get(&self, k: i64) -> CMat {
        let idx = k - self.lo;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            CMat::zeros(self.n, self.n)
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    Toeplitz,
    Hankel,
    Commutator,
    Compression,
    Model,
}

#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    pub kind: OperatorKind,
    pub mat: CMat,
}

impl OperatorMatrix {
    pub fn hermitian_defect(&self) -> f64 {
        linalg::max_abs(&(&self.mat - self.mat.adjoint()))
    }
}

/// Geometric decay rate of the Fourier coefficients of `f` on 𝕋.
pub fn decay_rate(f: &RatMat) -> f64 {
    f.poles.iter().map(|p| p.norm().min(1.0 / p.norm())).fold(0.0, f64::max)
}

/// Number of coefficients past which the tail of `f` is below [`TAIL_TOL`].
pub fn tail_pad(f: &RatMat) -> usize {
    let poly_span = (f.num.len() as i64 + f.shift as i64).unsigned_abs().max(f.shift.unsigned_abs() as u64) as usize;
    let rho = decay_rate(f);
    let geo = if rho == 0.0 { 0 } else { (TAIL_TOL.ln() / rho.ln()).ceil() as usize };
    (poly_span + geo + 2).min(MAX_PAD)
}

/// Fourier coefficients of `f` on `[lo, hi]` via an FFT of size `max(8L, 512)`
/// rounded up to a power of two, enlarged until aliasing is below the tail tolerance.
pub fn fourier_ratmat(f: &RatMat, lo: i64, hi: i64) -> FourierWindow {
    let l = lo.unsigned_abs().max(hi.unsigned_abs()) as usize;
    let m = (8 * l).max(512).max(2 * (l + tail_pad(f))).next_power_of_two();
    let coeffs = f.fourier(lo, hi, m);
    let tail = linalg::norm2(&coeffs[0]).max(linalg::norm2(coeffs.last().unwrap()));
    FourierWindow { n: f.rows, lo, coeffs, tail }
}

/// Coefficients `A_j`, `j ∈ [−N, N]`, of a symbol.
pub fn fourier(phi: &MatrixSymbol, n_trunc: usize) -> FourierWindow {
    let n = n_trunc as i64;
    fourier_ratmat(&phi.to_ratmat(), -n, n)
}

/// Default truncation `max(32, 4·(d + n))` with `d` a bound on the inner degree.
pub fn default_truncation(phi: &MatrixSymbol) -> usize {
    let bound = |f: &RatMat| f.poles.len() + (f.num.len() as i64 - 1 + f.shift as i64).max(0) as usize;
    let d = bound(&phi.plus) + bound(&phi.minus);
    (4 * (d + phi.n)).max(32)
}

fn block_matrix(n: usize, rows: usize, cols: usize, f: impl Fn(usize, usize) -> CMat) -> CMat {
    let mut m = CMat::zeros(n * rows, n * cols);
    for i in 0..rows {
        for j in 0..cols {
            m.view_mut((i * n, j * n), (n, n)).copy_from(&f(i, j));
        }
    }
    m
}

/// `rows × cols` block section of `T_f`: block `(i, j) = A_{i−j}`.
pub fn toeplitz_rect(f: &RatMat, rows: usize, cols: usize) -> CMat {
    let w = fourier_ratmat(f, -(cols as i64), rows as i64);
    block_matrix(f.rows, rows, cols, |i, j| w.get(i as i64 - j as i64))
}

/// `rows × cols` block section of `H_f`: block `(i, j) = A_{−(i+j+1)}`.
pub fn hankel_rect(f: &RatMat, rows: usize, cols: usize) -> CMat {
    let w = fourier_ratmat(f, -((rows + cols) as i64), 0);
    block_matrix(f.rows, rows, cols, |i, j| w.get(-((i + j + 1) as i64)))
}

pub fn toeplitz(phi: &MatrixSymbol, n_trunc: usize) -> OperatorMatrix {
    OperatorMatrix { kind: OperatorKind::Toeplitz, mat: toeplitz_rect(&phi.to_ratmat(), n_trunc + 1, n_trunc + 1) }
}

pub fn hankel(phi: &MatrixSymbol, n_trunc: usize) -> OperatorMatrix {
    OperatorMatrix { kind: OperatorKind::Hankel, mat: hankel_rect(&phi.to_ratmat(), n_trunc + 1, n_trunc + 1) }
}

/// Compression of `H_f* H_g` to the first `cols` blocks, with enough rows for the tail.
fn hankel_gram(f: &RatMat, g: &RatMat, cols: usize) -> CMat {
    let rows = cols + tail_pad(f).max(tail_pad(g));
    hankel_rect(f, rows, cols).adjoint() * hankel_rect(g, rows, cols)
}

/// `[T_A, T_B]_p = H_{B*}* H_A − H_{A*}* H_B` compressed to `N + 1` blocks.
pub fn pseudo_commutator_ratmat(a: &RatMat, b: &RatMat, n_trunc: usize) -> CMat {
    let c = n_trunc + 1;
    hankel_gram(&b.star(), a, c) - hankel_gram(&a.star(), b, c)
}

/// `[T_A*, T_B] = H_{B*}* H_{A*} − H_A* H_B + T_{A*B − BA*}` compressed to `N + 1` blocks.
pub fn commutator_block(a: &RatMat, b: &RatMat, n_trunc: usize) -> CMat {
    let c = n_trunc + 1;
    let (sa, sb) = (a.star(), b.star());
    let sym = sa.mul(b).sub(&b.mul(&sa));
    hankel_gram(&sb, &sa, c) - hankel_gram(a, b, c) + toeplitz_rect(&sym, c, c)
}

/// `[T_Φ*, T_Φ]` via the Hankel route.
pub fn self_commutator(phi: &MatrixSymbol, n_trunc: usize) -> OperatorMatrix {
    let f = phi.to_ratmat();
    OperatorMatrix { kind: OperatorKind::Commutator, mat: hermitize(commutator_block(&f, &f, n_trunc)) }
}

/// `P_N (T*T − TT*) P_N` from padded Toeplitz sections; an independent route.
pub fn self_commutator_direct(phi: &MatrixSymbol, n_trunc: usize) -> CMat {
    let f = phi.to_ratmat();
    let fs = f.star();
    let c = n_trunc + 1;
    let r = c + tail_pad(&f);
    toeplitz_rect(&fs, c, r) * toeplitz_rect(&f, r, c) - toeplitz_rect(&f, c, r) * toeplitz_rect(&fs, r, c)
}

/// `[T_Φ*, T_Φ]_p`.
pub fn pseudo_selfcommutator(phi: &MatrixSymbol, n_trunc: usize) -> OperatorMatrix {
    let f = phi.to_ratmat();
    OperatorMatrix { kind: OperatorKind::Commutator, mat: hermitize(pseudo_commutator_ratmat(&f.star(), &f, n_trunc)) }
}

/// `[T_Φ, T_Ψ]_p` for two symbols.
pub fn pseudo_commutator(phi: &MatrixSymbol, psi: &MatrixSymbol, n_trunc: usize) -> OperatorMatrix {
    OperatorMatrix {
        kind: OperatorKind::Commutator,
        mat: pseudo_commutator_ratmat(&phi.to_ratmat(), &psi.to_ratmat(), n_trunc),
    }
}

fn assemble(blocks: &[Vec<CMat>]) -> CMat {
    let k = blocks.len();
    let s = blocks[0][0].nrows();
    let mut m = CMat::zeros(k * s, k * s);
    for (i, row) in blocks.iter().enumerate() {
        for (j, b) in row.iter().enumerate() {
            m.view_mut((i * s, j * s), (s, s)).copy_from(b);
        }
    }
    m
}

/// Block pseudo-commutator of a tuple: block `(i, j) = H_{Φ_i*}* H_{Φ_j*} − H_{Φ_j}* H_{Φ_i}`.
pub fn tuple_pseudo_commutator(phis: &[MatrixSymbol], n_trunc: usize) -> OperatorMatrix {
    let fs: Vec<RatMat> = phis.iter().map(|p| p.to_ratmat()).collect();
    let c = n_trunc + 1;
    let blocks: Vec<Vec<CMat>> = (0..fs.len())
        .map(|i| (0..fs.len()).map(|j| hankel_gram(&fs[i].star(), &fs[j].star(), c) - hankel_gram(&fs[j], &fs[i], c)).collect())
        .collect();
    OperatorMatrix { kind: OperatorKind::Commutator, mat: hermitize(assemble(&blocks)) }
}

/// Block self-commutator of a tuple: block `(i, j) = [T_{Φ_j}*, T_{Φ_i}]`.
pub fn tuple_commutator(phis: &[MatrixSymbol], n_trunc: usize) -> OperatorMatrix {
    let fs: Vec<RatMat> = phis.iter().map(|p| p.to_ratmat()).collect();
    let blocks: Vec<Vec<CMat>> =
        (0..fs.len()).map(|i| (0..fs.len()).map(|j| commutator_block(&fs[j], &fs[i], n_trunc)).collect()).collect();
    OperatorMatrix { kind: OperatorKind::Commutator, mat: hermitize(assemble(&blocks)) }
}

/// `[T*, T]` for the pair `(T_Φ, T_Ψ)`.
pub fn pair_commutator(phi: &MatrixSymbol, psi: &MatrixSymbol, n_trunc: usize) -> OperatorMatrix {
    tuple_commutator(&[phi.clone(), psi.clone()], n_trunc)
}

/// `[T*, T]_p` for the pair `(T_Φ, T_Ψ)`.
pub fn pair_pseudo_commutator(phi: &MatrixSymbol, psi: &MatrixSymbol, n_trunc: usize) -> OperatorMatrix {
    tuple_pseudo_commutator(&[phi.clone(), psi.clone()], n_trunc)
}

fn hermitize(m: CMat) -> CMat {
    linalg::hermitian_part(&m)
}

/// Smallest eigenvalue is at least `−tol·‖M‖`.
pub fn is_psd(m: &CMat, tol: f64) -> bool {
    let ev = linalg::hermitian_eigenvalues(&linalg::hermitian_part(m));
    let scale = linalg::norm2(m);
    ev.first().map_or(true, |&e| e >= -tol * scale)
}

/// Smallest eigenvalue of the Hermitian part.
pub fn min_eigenvalue(m: &CMat) -> f64 {
    linalg::hermitian_eigenvalues(&linalg::hermitian_part(m)).first().copied().unwrap_or(0.0)
}

/// Number of singular values above `tol·σ_max`.
pub fn numerical_rank(m: &CMat, tol: f64) -> usize {
    linalg::rank(m, tol)
}

/// Moore-Penrose inverse.
pub fn moore_penrose(m: &CMat) -> CMat {
    linalg::pinv(m, 1e-12)
}

/// `(rank S, rank A + rank(C − B* A♯ B))` for `S = [[A, B], [B*, C]]` split after `k` rows.
pub fn schur_rank_identity(s: &CMat, k: usize, tol: f64) -> (usize, usize) {
    let n = s.nrows();
    let a = s.view((0, 0), (k, k)).into_owned();
    let b = s.view((0, k), (k, n - k)).into_owned();
    let c = s.view((k, k), (n - k, n - k)).into_owned();
    let schur = &c - b.adjoint() * moore_penrose(&a) * &b;
    let scale = linalg::norm2(s);
    let r = |m: &CMat| linalg::singular_values(m).iter().filter(|&&x| x > tol * scale).count();
    (r(s), r(&a) + r(&schur))
}

/// Orthonormal basis `φ_j = q_j/(1 − ᾱ_j z) ∏_{k<j} b_{α_k}` of `H(θ)`.
#[derive(Debug, Clone)]
pub struct ModelBasis {
    pub theta: BlaschkeProduct,
    pub alphas: Vec<C64>,
    pub q: Vec<f64>,
}

impl ModelBasis {
    pub fn dim(&self) -> usize {
        self.alphas.len()
    }

    pub fn phi(&self, j: usize) -> RatMat {
        let a = self.alphas[j];
        let mut f = RatMat::scalar(
            &crate::poly::Poly::constant(c64(self.q[j], 0.0)),
            &crate::poly::Poly::new(vec![c64(1.0, 0.0), -a.conj()]),
            0,
        )
        .expect("pole outside the disk");
        for k in 0..j {
            f = f.mul(&crate::ratmat::blaschke_factor(self.alphas[k]));
        }
        f
    }

    pub fn eval(&self, j: usize, z: C64) -> C64 {
        let a = self.alphas[j];
        let mut v = c64(self.q[j], 0.0) / (c64(1.0, 0.0) - a.conj() * z);
        for k in 0..j {
            v *= crate::scalar_inner::blaschke_eval(self.alphas[k], z);
        }
        v
    }
}

pub fn model_basis(theta: &BlaschkeProduct) -> ModelBasis {
    let alphas = theta.zeros_flat();
    let q = alphas.iter().map(|a| (1.0 - a.norm_sqr()).sqrt()).collect();
    ModelBasis { theta: theta.clone(), alphas, q }
}

/// Coefficient count that captures the model basis to the tail tolerance.
pub fn model_truncation(theta: &BlaschkeProduct) -> usize {
    let rho = theta.zeros.iter().map(|z| z.0.norm()).fold(0.0, f64::max);
    let geo = if rho == 0.0 { 0 } else { (TAIL_TOL.ln() / rho.ln()).ceil() as usize };
    (theta.degree() + geo + 4).min(MAX_PAD)
}

/// `W = C ⊗ I_n`, where column `j` of `C` holds the first `L` Taylor coefficients of `φ_j`.
pub fn w_matrix(theta: &BlaschkeProduct, n: usize, l: usize) -> CMat {
    let basis = model_basis(theta);
    let d = basis.dim();
    let mut c = CMat::zeros(l, d);
    for j in 0..d {
        for (k, t) in basis.phi(j).taylor0(l).iter().enumerate() {
            c[(k, j)] = t[(0, 0)];
        }
    }
    linalg::kron(&c, &linalg::eye(n))
}

/// Lower-triangular matrix of the compressed shift in the basis `φ_j`.
pub fn m_matrix(theta: &BlaschkeProduct) -> CMat {
    let b = model_basis(theta);
    let d = b.dim();
    let mut m = CMat::zeros(d, d);
    for i in 0..d {
        m[(i, i)] = b.alphas[i];
        for j in 0..i {
            let mut v = c64(b.q[i] * b.q[j], 0.0);
            for k in j + 1..i {
                v *= -b.alphas[k].conj();
            }
            m[(i, j)] = v;
        }
    }
    m
}

/// `P(M) = Σ M^i ⊗ P_i` for a matrix polynomial with ascending coefficients.
pub fn p_of_m(p: &[CMat], m: &CMat) -> CMat {
    let d = m.nrows();
    let n = p[0].nrows();
    let mut out = CMat::zeros(d * n, d * n);
    let mut pow = linalg::eye(d);
    for c in p {
        out += linalg::kron(&pow, c);
        pow = &pow * m;
    }
    out
}

/// `F(M)` for an analytic rational `F`, by its Taylor series.
fn analytic_of_m(f: &RatMat, m: &CMat) -> Result<CMat> {
    let d = m.nrows();
    let cap = (10 * d).max(500);
    let coeffs = f.taylor0(cap + 1);
    let mut tail_max = vec![0.0f64; cap + 2];
    for k in (0..=cap).rev() {
        tail_max[k] = tail_max[k + 1].max(linalg::norm2(&coeffs[k]));
    }
    let mut out = CMat::zeros(d * f.rows, d * f.cols);
    let mut pow = linalg::eye(d);
    for (k, c) in coeffs.iter().enumerate() {
        let pn = linalg::norm2(&pow);
        if pn * tail_max[k] < 1e-12 {
            return Ok(out);
        }
        out += linalg::kron(&pow, c);
        pow = &pow * m;
    }
    Err(BtkError::NonConvergence(format!("power series in M did not converge within {cap} terms")))
}

/// `Q(M) = Q_−(M)* + Q₊(M)`.
pub fn q_of_m(q: &MatrixSymbol, m: &CMat) -> Result<CMat> {
    Ok(analytic_of_m(&q.minus, m)?.adjoint() + analytic_of_m(&q.plus, m)?)
}

/// Orthonormal basis of `H(Θ)` as rational `n × 1` columns:
/// `ν B_1 ⋯ B_{m−1} q_m/(1 − ᾱ_m z) u` with `u` running over `ran P_m`.
pub fn potapov_model_columns(theta: &PotapovProduct) -> Vec<RatMat> {
    let n = theta.size();
    let mut out = vec![];
    let mut prefix = RatMat::constant(theta.nu.clone());
    for f in &theta.factors {
        let a = f.alpha;
        let kernel = crate::poly::Poly::new(vec![c64(1.0, 0.0), -a.conj()]);
        let qk = (1.0 - a.norm_sqr()).sqrt();
        let scal = RatMat::scalar(&crate::poly::Poly::constant(c64(qk, 0.0)), &kernel, 0).expect("pole outside the disk");
        let (ev, vecs) = linalg::hermitian_eigen(&f.proj);
        for (k, &e) in ev.iter().enumerate() {
            if e > 0.5 {
                let u = vecs.column(k).into_owned();
                out.push(scal.scalar_mul(&prefix).rmul_const(&CMat::from_column_slice(n, 1, u.as_slice())));
            }
        }
        prefix = prefix.mul(&f.to_ratmat());
    }
    out
}

/// Matrix whose columns are the first `L` block coefficients of the model basis of `H(Θ)`.
pub fn potapov_w_matrix(theta: &PotapovProduct, l: usize) -> CMat {
    let n = theta.size();
    let cols = potapov_model_columns(theta);
    let mut w = CMat::zeros(l * n, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (k, t) in c.taylor0(l).iter().enumerate() {
            for a in 0..n {
                w[(k * n + a, j)] = t[(a, 0)];
            }
        }
    }
    w
}

fn potapov_truncation(theta: &PotapovProduct) -> usize {
    let rho = theta.factors.iter().map(|f| f.alpha.norm()).fold(0.0, f64::max);
    let geo = if rho == 0.0 { 0 } else { (TAIL_TOL.ln() / rho.ln()).ceil() as usize };
    (theta.factors.len() + geo + 4).min(MAX_PAD)
}

/// Matrix of `(T_A)_Θ = P_{H(Θ)} T_A |_{H(Θ)}` in the model basis.
pub fn compression(a: &RatMat, theta: &PotapovProduct) -> Result<OperatorMatrix> {
    if !a.is_analytic() || a.rows != theta.size() || a.cols != theta.size() {
        return Err(BtkError::InvalidInput("compression needs an analytic symbol of the inner function's size".into()));
    }
    let l = potapov_truncation(theta);
    let w = potapov_w_matrix(theta, l);
    let t = toeplitz_rect(a, l, l);
    Ok(OperatorMatrix { kind: OperatorKind::Compression, mat: w.adjoint() * t * &w })
}

/// Basis (in model coordinates) of the numerical kernel of the compression.
pub fn compression_kernel(a: &RatMat, theta: &PotapovProduct) -> Result<CMat> {
    let c = compression(a, theta)?;
    Ok(linalg::null_space_scaled(&c.mat, DEFAULT_TOL, 1.0))
}

/// `‖W*(T_P)_Θ W − P(M)‖` for `Θ = I_θ` of size `n`.
pub fn verify_representation(p: &[CMat], theta: &BlaschkeProduct) -> f64 {
    let n = p[0].nrows();
    let l = model_truncation(theta) + p.len();
    let w = w_matrix(theta, n, l);
    let t = toeplitz_rect(&RatMat::from_matpoly(p.to_vec()), l, l);
    let lhs = w.adjoint() * t * &w;
    linalg::norm2(&(lhs - p_of_m(p, &m_matrix(theta))))
}

/// JSON 2-D array of `[re, im]` pairs.
pub fn matrix_to_json(m: &CMat) -> serde_json::Value {
    serde_json::Value::Array(
        (0..m.nrows())
            .map(|i| serde_json::Value::Array((0..m.ncols()).map(|j| serde_json::json!([m[(i, j)].re, m[(i, j)].im])).collect()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix_inner::PotapovFactor;
    use crate::poly::Poly;
    use crate::ratmat::{blaschke_factor, monomial};
    use proptest::prelude::*;

    fn r(x: f64) -> C64 {
        c64(x, 0.0)
    }

    fn laurent(c: &[(i32, f64)]) -> RatMat {
        let lo = c.iter().map(|x| x.0).min().unwrap();
        let hi = c.iter().map(|x| x.0).max().unwrap();
        let mut v = vec![r(0.0); (hi - lo + 1) as usize];
        for &(k, a) in c {
            v[(k - lo) as usize] = r(a);
        }
        RatMat::scalar(&Poly::new(v), &Poly::one(), lo).unwrap()
    }

    fn sym(f: &RatMat) -> MatrixSymbol {
        MatrixSymbol::from_ratmat(f).unwrap()
    }

    #[test]
    fn fourier_examples() {
        let w = fourier(&sym(&monomial(1)), 4);
        for k in -4..=4 {
            let want = if k == 1 { 1.0 } else { 0.0 };
            assert!((w.get(k)[(0, 0)] - r(want)).norm() < 1e-14);
        }
        let w = fourier(&sym(&laurent(&[(-1, 1.0), (1, 2.0)])), 4);
        assert!((w.get(-1)[(0, 0)] - r(1.0)).norm() < 1e-14);
        assert!((w.get(1)[(0, 0)] - r(2.0)).norm() < 1e-14);
        assert!(w.get(0)[(0, 0)].norm() < 1e-14);
        // b_{1/2} = −1/2 + Σ_{k≥1} (3/4)(1/2)^{k−1} z^k
        let w = fourier_ratmat(&blaschke_factor(r(0.5)), -2, 6);
        assert!((w.get(0)[(0, 0)] - r(-0.5)).norm() < 1e-14);
        for k in 1..=6 {
            assert!((w.get(k)[(0, 0)] - r(0.75 * 0.5f64.powi(k as i32 - 1))).norm() < 1e-14);
        }
        let d = RatMat::block_diag(&[laurent(&[(-1, 1.0), (1, 1.0)]), monomial(1)]);
        let w = fourier_ratmat(&d, -2, 2);
        assert!((w.get(1) - linalg::eye(2)).norm() < 1e-14);
        assert!((w.get(-1) - linalg::diag(&[r(1.0), r(0.0)])).norm() < 1e-14);
    }

    #[test]
    fn hankel_examples() {
        let h = hankel(&sym(&monomial(-1)), 5).mat;
        assert!((h[(0, 0)] - r(1.0)).norm() < 1e-14);
        let e00 = &linalg::unit(6, 0) * linalg::unit(6, 0).transpose();
        assert!(linalg::max_abs(&(h - e00)) < 1e-14);
        assert!(linalg::max_abs(&hankel(&sym(&laurent(&[(0, 1.0), (3, 2.0)])), 5).mat) < 1e-14);
        let phi = sym(&RatMat::block_diag(&[RatMat::scalar_const(r(1.0)), monomial(-1)]));
        let psi = sym(&RatMat::block_diag(&[monomial(-1), RatMat::scalar_const(r(1.0))]));
        let (hp, hq) = (hankel(&phi, 32).mat, hankel(&psi, 32).mat);
        assert!(linalg::norm2(&(&hp * &hq)) < 1e-10);
        assert!((linalg::norm2(&hp) - 1.0).abs() < 1e-10 && (linalg::norm2(&hq) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn commutator_examples() {
        let c = self_commutator(&sym(&monomial(1)), 6).mat;
        assert!(linalg::max_abs(&(c - &linalg::unit(7, 0) * linalg::unit(7, 0).transpose())) < 1e-12);
        let abr = sym(&RatMat::block_diag(&[laurent(&[(-1, 1.0), (1, 1.0)]), monomial(1)]));
        let c = self_commutator(&abr, 24);
        assert!(c.hermitian_defect() < 1e-10);
        assert!(is_psd(&c.mat, 1e-8) && linalg::norm2(&c.mat) > 0.5);
        let zi = sym(&RatMat::block_diag(&[monomial(1), monomial(1)]));
        assert_eq!(numerical_rank(&self_commutator(&zi, 10).mat, 1e-8), 2);
        assert!(linalg::max_abs(&(self_commutator(&abr, 24).mat - self_commutator_direct(&abr, 24))) < 1e-10);
        let b = sym(&laurent(&[(-1, 1.0), (1, 2.0)]).add(&blaschke_factor(r(0.3)).star()));
        assert!(linalg::max_abs(&(self_commutator(&b, 20).mat - self_commutator_direct(&b, 20))) < 1e-10);
        // pseudo plus Toeplitz part equals the full commutator
        let p = pseudo_selfcommutator(&b, 20).mat;
        assert!(linalg::max_abs(&(&p - &self_commutator(&b, 20).mat)) < 1e-10);
    }

    #[test]
    fn pair_examples() {
        let f = laurent(&[(-1, 1.0), (1, 2.0)]);
        let zero = RatMat::zeros(1, 1);
        let phi = sym(&RatMat::block_diag(&[f.clone(), zero.clone()]));
        let psi = sym(&RatMat::block_diag(&[zero, f]));
        let c = pair_commutator(&phi, &psi, 20);
        assert!(min_eigenvalue(&c.mat) >= -1e-8 * linalg::norm2(&c.mat));
        let z = sym(&RatMat::block_diag(&[monomial(1), monomial(1)]));
        let z2 = sym(&RatMat::block_diag(&[monomial(2), monomial(2)]));
        assert!(is_psd(&pair_commutator(&z, &z2, 12).mat, 1e-8));
        // analytic pair: pseudo part vanishes off the Hankel grams of the conjugates
        let pp = pair_pseudo_commutator(&z, &z2, 12).mat;
        let h1 = hankel_gram(&z.to_ratmat().star(), &z.to_ratmat().star(), 13);
        assert!(linalg::max_abs(&(pp.view((0, 0), (26, 26)).into_owned() - h1)) < 1e-12);
    }

    #[test]
    fn rank_helpers() {
        assert_eq!(numerical_rank(&CMat::zeros(3, 3), 1e-8), 0);
        let v = CMat::from_column_slice(3, 1, &[r(1.0), r(1.0), r(0.0)]) / c64(2f64.sqrt(), 0.0);
        assert_eq!(numerical_rank(&linalg::projector(&v), 1e-8), 1);
        let a = CMat::from_fn(4, 4, |i, j| c64((i * j) as f64 + 1.0, (i as f64) - (j as f64)));
        let p = &a * a.adjoint();
        let (l, rs) = schur_rank_identity(&p, 2, 1e-10);
        assert_eq!(l, rs);
    }

    #[test]
    fn model_space_examples() {
        let z3 = BlaschkeProduct::z_power(3);
        let m = m_matrix(&z3);
        let want = linalg::from_rows(&[vec![r(0.0), r(0.0), r(0.0)], vec![r(1.0), r(0.0), r(0.0)], vec![r(0.0), r(1.0), r(0.0)]]);
        assert_eq!(m, want);
        let a = c64(0.3, -0.2);
        assert!((m_matrix(&BlaschkeProduct::factor(a))[(0, 0)] - a).norm() < 1e-15);
        // θ = z b_{1/2}: entries against the inner products ⟨zφ_j, φ_i⟩ by quadrature
        let th = BlaschkeProduct::from_zeros(&[r(0.0), r(0.5), c64(-0.1, 0.4)]);
        let mm = m_matrix(&th);
        let b = model_basis(&th);
        let k = 512;
        for i in 0..3 {
            for j in 0..3 {
                let mut s = r(0.0);
                for t in 0..k {
                    let z = crate::ratmat::circle_point(t, k);
                    s += z * b.eval(j, z) * b.eval(i, z).conj();
                }
                s /= k as f64;
                assert!((s - mm[(i, j)]).norm() < 1e-12, "{i} {j}");
            }
        }
        let w = w_matrix(&th, 2, model_truncation(&th));
        assert!(linalg::max_abs(&(w.adjoint() * &w - linalg::eye(6))) < 1e-9);
    }

    #[test]
    fn q_of_m_example() {
        let th = BlaschkeProduct::z_power(3);
        let m = m_matrix(&th);
        let q = MatrixSymbol::analytic(RatMat::block_diag(&[monomial(2), monomial(2)]));
        let qm = q_of_m(&q, &m).unwrap();
        let mut want = CMat::zeros(6, 6);
        want[(4, 0)] = r(1.0);
        want[(5, 1)] = r(1.0);
        assert_eq!(qm, want);
        let qq = qm.adjoint() * &qm;
        assert_eq!(qq, linalg::diag(&[r(1.0), r(1.0), r(0.0), r(0.0), r(0.0), r(0.0)]));
        let qsq = MatrixSymbol::from_ratmat(&q.to_ratmat().star().mul(&q.to_ratmat())).unwrap();
        assert_eq!(q_of_m(&qsq, &m).unwrap(), linalg::eye(6));
        let c = linalg::from_rows(&[vec![r(1.0), r(2.0)], vec![r(3.0), r(4.0)]]);
        assert_eq!(q_of_m(&MatrixSymbol::analytic(RatMat::constant(c.clone())), &m).unwrap(), linalg::kron(&linalg::eye(3), &c));
    }

    #[test]
    fn representation_examples() {
        let th = BlaschkeProduct::z_power(3);
        assert!(verify_representation(&[linalg::eye(2)], &th) < 1e-12);
        assert!(verify_representation(&[CMat::zeros(2, 2), linalg::eye(2)], &th) < 1e-12);
    }

    #[test]
    fn compression_examples() {
        let a = RatMat::constant(linalg::from_rows(&[vec![r(0.0), r(1.0)], vec![r(1.0), r(0.0)]]));
        let theta = PotapovProduct::new(linalg::eye(2), vec![PotapovFactor::new(r(0.0), linalg::diag(&[r(1.0), r(0.0)])).unwrap()]).unwrap();
        let k = compression_kernel(&a, &theta).unwrap();
        assert_eq!(k.ncols(), 1);
        let cols = potapov_model_columns(&theta);
        assert_eq!(cols.len(), 1);
        assert!(linalg::max_abs(&(cols[0].eval(r(0.3)) - CMat::from_column_slice(2, 1, &[r(1.0), r(0.0)]))) < 1e-14);
        let th = BlaschkeProduct::from_zeros(&[r(0.0), r(0.5)]);
        let id = compression(&RatMat::identity(2), &PotapovProduct::diagonal_constant(&th, 2)).unwrap();
        assert!(linalg::max_abs(&(id.mat - linalg::eye(4))) < 1e-10);
        let b = RatMat::from_matpoly(vec![linalg::from_rows(&[vec![r(2.0), r(0.0)], vec![r(1.0), r(3.0)]]), linalg::eye(2)]);
        let c = compression(&b, &PotapovProduct::diagonal_constant(&th, 2)).unwrap();
        assert!(linalg::sigma_min(&c.mat) > 1e-3);
    }

    #[test]
    fn kernel_and_range_structure() {
        // φ = z̄ + 2z: [T*,T] has range in H(z) = constants
        let f = sym(&laurent(&[(-1, 1.0), (1, 2.0)]));
        let c = self_commutator(&f, 16).mat;
        assert!(linalg::max_abs(&c.view((1, 0), (16, 17)).into_owned()) < 1e-10);
        // ker H_Φ ⊇ ΘH² with Θ the right inner factor of Φ_−
        let phi = sym(&RatMat::block_diag(&[monomial(-1), blaschke_factor(r(0.4)).star()]));
        let fac = crate::symbol::dss_right(&phi.minus).unwrap();
        let l = 40;
        let h = hankel_rect(&phi.to_ratmat(), l, l);
        let t = fac.inner.to_ratmat();
        let tw = toeplitz_rect(&t, l, 2);
        assert!(linalg::max_abs(&(h * tw)) < 1e-10);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn hankel_times_analytic_toeplitz(a in proptest::collection::vec(-1.0f64..1.0, 3), rho in 0.1f64..0.7, c in -1.0f64..1.0) {
            let phi = laurent(&[(-2, a[0]), (-1, a[1]), (1, a[2])]);
            let psi = RatMat::scalar(&Poly::new(vec![r(c), r(1.0)]), &Poly::linear(r(1.0 / rho)), 0).unwrap();
            let n = 12;
            let big = n + 1 + tail_pad(&psi);
            let lhs = hankel_rect(&phi, n + 1, big) * toeplitz_rect(&psi, big, n + 1);
            let rhs = hankel_rect(&phi.mul(&psi), n + 1, n + 1);
            prop_assert!(linalg::max_abs(&(lhs - rhs)) < 1e-8);
        }

        #[test]
        fn hankel_route_matches_direct(a in proptest::collection::vec(-1.0f64..1.0, 4), al in 0.0f64..0.8) {
            let f = laurent(&[(-1, a[0]), (0, a[1]), (1, a[2]), (2, a[3])]).add(&blaschke_factor(r(al)));
            let s = sym(&f);
            prop_assert!(linalg::max_abs(&(self_commutator(&s, 16).mat - self_commutator_direct(&s, 16))) < 1e-9);
        }

        #[test]
        fn representation_identity(coef in proptest::collection::vec(-1.0f64..1.0, 16), zs in proptest::collection::vec((0.0f64..0.8, 0.0f64..6.28), 1..4)) {
            let p: Vec<CMat> = coef.chunks(4).map(|c| linalg::from_rows(&[vec![r(c[0]), r(c[1])], vec![r(c[2]), r(c[3])]])).collect();
            let zeros: Vec<C64> = zs.iter().map(|&(m, t)| C64::from_polar(m, t)).collect();
            let th = BlaschkeProduct::from_zeros(&zeros);
            prop_assert!(verify_representation(&p, &th) < 1e-9);
            let w = w_matrix(&th, 2, model_truncation(&th));
            prop_assert!(linalg::max_abs(&(w.adjoint() * &w - linalg::eye(2 * zeros.len()))) < 1e-9);
        }
    }
}
