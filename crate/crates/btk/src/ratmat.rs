//! Rational matrix functions `z^shift · N(z) / ∏(z − p_j)`.
//!
//! Every symbol, inner function and multiplier in the crate is ultimately
//! stored in this form.  The numerator is a matrix polynomial with ascending
//! coefficients, the denominator a monic scalar polynomial kept as its list of
//! nonzero roots; poles at the origin are folded into a negative `shift`.

use crate::error::{BtkError, Result};
use crate::linalg;
use crate::poly::Poly;
use crate::{c64, CMat, C64};
use rustfft::FftPlanner;

/// Poles closer than this to the unit circle are rejected.
pub const CIRCLE_MARGIN: f64 = 1e-8;
/// Relative tolerance for cancelling a common numerator/denominator root.
const CANCEL_TOL: f64 = 1e-9;
/// Poles closer than this are treated as the same pole when adding.
const POLE_MATCH: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct RatMat {
    pub rows: usize,
    pub cols: usize,
    pub num: Vec<CMat>,
    pub shift: i32,
    pub poles: Vec<C64>,
}

fn czero() -> C64 {
    c64(0.0, 0.0)
}

/// `Σ_k m_k z^k`
pub fn mp_eval(m: &[CMat], z: C64) -> CMat {
    let mut acc = CMat::zeros(m[0].nrows(), m[0].ncols());
    for c in m.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Matrix polynomial times scalar polynomial.
pub fn mp_mul_poly(m: &[CMat], p: &Poly) -> Vec<CMat> {
    let (r, c) = m[0].shape();
    let mut out = vec![CMat::zeros(r, c); m.len() + p.c.len() - 1];
    for (i, a) in m.iter().enumerate() {
        for (j, &b) in p.c.iter().enumerate() {
            if b != czero() {
                out[i + j] += a * b;
            }
        }
    }
    out
}

/// Product of matrix polynomials.
pub fn mp_mul(a: &[CMat], b: &[CMat]) -> Vec<CMat> {
    let mut out = vec![CMat::zeros(a[0].nrows(), b[0].ncols()); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn mp_add(a: &[CMat], b: &[CMat]) -> Vec<CMat> {
    let (r, c) = a[0].shape();
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| {
            let mut x = CMat::zeros(r, c);
            if k < a.len() {
                x += &a[k];
            }
            if k < b.len() {
                x += &b[k];
            }
            x
        })
        .collect()
}

/// Synthetic division of a matrix polynomial by `(z − a)`.
pub fn mp_deflate(m: &[CMat], a: C64) -> (Vec<CMat>, CMat) {
    let n = m.len();
    if n == 1 {
        return (vec![CMat::zeros(m[0].nrows(), m[0].ncols())], m[0].clone());
    }
    let mut q = vec![CMat::zeros(m[0].nrows(), m[0].ncols()); n - 1];
    let mut acc = m[n - 1].clone();
    for k in (0..n - 1).rev() {
        q[k] = acc.clone();
        acc = acc * a + &m[k];
    }
    (q, acc)
}

/// Euclidean division of a matrix polynomial by a scalar polynomial.
pub fn mp_divrem(m: &[CMat], d: &Poly) -> (Vec<CMat>, Vec<CMat>) {
    let (r, c) = m[0].shape();
    let dd = d.degree();
    let lead = d.c[dd];
    let mut rem: Vec<CMat> = m.to_vec();
    if rem.len() <= dd {
        rem.resize(dd.max(1), CMat::zeros(r, c));
        return (vec![CMat::zeros(r, c)], rem);
    }
    let mut q = vec![CMat::zeros(r, c); rem.len() - dd];
    for k in (0..q.len()).rev() {
        let t = &rem[k + dd] / lead;
        for j in 0..=dd {
            if d.c[j] != czero() {
                rem[k + j] -= &t * d.c[j];
            }
        }
        q[k] = t;
    }
    rem.truncate(dd.max(1));
    if dd == 0 {
        rem = vec![CMat::zeros(r, c)];
    }
    (q, rem)
}

/// Determinant of a square matrix polynomial.
pub fn mp_det(m: &[CMat]) -> Poly {
    let n = m[0].nrows();
    let entries: Vec<Vec<Poly>> = (0..n)
        .map(|i| (0..n).map(|j| Poly::new(m.iter().map(|c| c[(i, j)]).collect())).collect())
        .collect();
    poly_det(&entries)
}

fn poly_det(a: &[Vec<Poly>]) -> Poly {
    let n = a.len();
    if n == 0 {
        return Poly::one();
    }
    if n == 1 {
        return a[0][0].clone();
    }
    let mut acc = Poly::constant(czero());
    for j in 0..n {
        if a[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = (1..n)
            .map(|i| (0..n).filter(|&k| k != j).map(|k| a[i][k].clone()).collect())
            .collect();
        let term = a[0][j].mul(&poly_det(&minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

fn mp_scale_norm(m: &[CMat], z: C64) -> f64 {
    let r = z.norm().max(1.0);
    let mut s = 0.0;
    let mut p = 1.0;
    for c in m {
        s += linalg::max_abs(c) * p;
        p *= r;
    }
    s
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat { rows, cols, num: vec![CMat::zeros(rows, cols)], shift: 0, poles: vec![] }
    }

    pub fn constant(m: CMat) -> Self {
        RatMat { rows: m.nrows(), cols: m.ncols(), num: vec![m], shift: 0, poles: vec![] }.simplify()
    }

    pub fn identity(n: usize) -> Self {
        Self::constant(linalg::eye(n))
    }

    /// Scalar (1×1) constant.
    pub fn scalar_const(a: C64) -> Self {
        Self::constant(CMat::from_element(1, 1, a))
    }

    /// Matrix polynomial `Σ c_k z^k`.
    pub fn from_matpoly(c: Vec<CMat>) -> Self {
        let (rows, cols) = c[0].shape();
        RatMat { rows, cols, num: c, shift: 0, poles: vec![] }.simplify()
    }

    /// Scalar `z^shift · num / den`.
    pub fn scalar(num: &Poly, den: &Poly, shift: i32) -> Result<Self> {
        let n: Vec<CMat> = num.c.iter().map(|&a| CMat::from_element(1, 1, a)).collect();
        Self::from_parts(n, den, shift)
    }

    /// `z^shift · N(z) / den(z)` with an arbitrary polynomial denominator.
    pub fn from_parts(num: Vec<CMat>, den: &Poly, shift: i32) -> Result<Self> {
        let den = den.trim(1e-14);
        if den.is_zero() {
            return Err(BtkError::InvalidInput("zero denominator".into()));
        }
        let lead = den.lead();
        let roots = den.roots();
        Ok(Self::from_roots(num, lead, &roots, shift))
    }

    /// `z^shift · N(z) / (lead · ∏(z − r))`.
    pub fn from_roots(num: Vec<CMat>, lead: C64, roots: &[C64], shift: i32) -> Self {
        let (rows, cols) = num[0].shape();
        let mut s = shift;
        let mut poles = vec![];
        for &r in roots {
            if r.norm() < 1e-14 {
                s -= 1;
            } else {
                poles.push(r);
            }
        }
        let num = num.into_iter().map(|c| c / lead).collect();
        RatMat { rows, cols, num, shift: s, poles }.simplify()
    }

    pub fn is_scalar(&self) -> bool {
        self.rows == 1 && self.cols == 1
    }

    pub fn den_poly(&self) -> Poly {
        Poly::from_roots(&self.poles)
    }

    /// Numerator degree.
    pub fn num_degree(&self) -> usize {
        self.num.len() - 1
    }

    pub fn is_zero_exact(&self) -> bool {
        self.num.iter().all(|c| linalg::max_abs(c) == 0.0)
    }

    /// Remove negligible coefficients and cancel common numerator/denominator roots.
    pub fn simplify(mut self) -> Self {
        let top = self.num.iter().map(linalg::max_abs).fold(0.0, f64::max);
        if top == 0.0 {
            return RatMat::zeros(self.rows, self.cols);
        }
        while self.num.len() > 1 && linalg::max_abs(self.num.last().unwrap()) <= 1e-15 * top {
            self.num.pop();
        }
        while self.num.len() > 1 && linalg::max_abs(&self.num[0]) <= 1e-15 * top {
            self.num.remove(0);
            self.shift += 1;
        }
        let mut i = 0;
        while i < self.poles.len() {
            let p = self.poles[i];
            if self.num.len() > 1 {
                let (q, r) = mp_deflate(&self.num, p);
                let scale = mp_scale_norm(&self.num, p);
                if linalg::max_abs(&r) <= CANCEL_TOL * scale {
                    self.num = q;
                    self.poles.remove(i);
                    continue;
                }
            }
            i += 1;
        }
        self
    }

    pub fn eval(&self, z: C64) -> CMat {
        let mut v = mp_eval(&self.num, z);
        let mut d = c64(1.0, 0.0);
        for &p in &self.poles {
            d *= z - p;
        }
        v /= d;
        if self.shift != 0 {
            v *= z.powi(self.shift);
        }
        v
    }

    /// Scalar value of a 1×1 function.
    pub fn eval_scalar(&self, z: C64) -> C64 {
        self.eval(z)[(0, 0)]
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut r = self.clone();
        for c in r.num.iter_mut() {
            *c *= s;
        }
        r.simplify()
    }

    pub fn neg(&self) -> Self {
        self.scale(c64(-1.0, 0.0))
    }

    /// Left multiplication by a constant matrix.
    pub fn lmul_const(&self, m: &CMat) -> Self {
        RatMat {
            rows: m.nrows(),
            cols: self.cols,
            num: self.num.iter().map(|c| m * c).collect(),
            shift: self.shift,
            poles: self.poles.clone(),
        }
        .simplify()
    }

    pub fn rmul_const(&self, m: &CMat) -> Self {
        RatMat {
            rows: self.rows,
            cols: m.ncols(),
            num: self.num.iter().map(|c| c * m).collect(),
            shift: self.shift,
            poles: self.poles.clone(),
        }
        .simplify()
    }

    pub fn mul(&self, o: &RatMat) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut poles = self.poles.clone();
        poles.extend_from_slice(&o.poles);
        RatMat { rows: self.rows, cols: o.cols, num: mp_mul(&self.num, &o.num), shift: self.shift + o.shift, poles }
            .simplify()
    }

    /// Product of a scalar (1×1) function with a matrix function.
    pub fn scalar_mul(&self, m: &RatMat) -> Self {
        assert!(self.is_scalar());
        let s = self.num.iter().map(|c| c[(0, 0)]).collect::<Vec<_>>();
        let num = mp_mul_poly(&m.num, &Poly::new(s));
        let mut poles = self.poles.clone();
        poles.extend_from_slice(&m.poles);
        RatMat { rows: m.rows, cols: m.cols, num, shift: self.shift + m.shift, poles }.simplify()
    }

    pub fn add(&self, o: &RatMat) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in sum");
        if self.is_zero_exact() {
            return o.clone();
        }
        if o.is_zero_exact() {
            return self.clone();
        }
        // common denominator: lcm of the pole multisets
        let mut extra_for_self = vec![];
        let mut unmatched: Vec<C64> = self.poles.clone();
        let mut common = self.poles.clone();
        for &p in &o.poles {
            if let Some(k) = unmatched.iter().position(|&q| (q - p).norm() < POLE_MATCH) {
                unmatched.remove(k);
            } else {
                extra_for_self.push(p);
                common.push(p);
            }
        }
        // factors o is missing relative to `common`
        let mut extra_for_o = vec![];
        let mut pool = o.poles.clone();
        for &p in &common {
            if let Some(k) = pool.iter().position(|&q| (q - p).norm() < POLE_MATCH) {
                pool.remove(k);
            } else {
                extra_for_o.push(p);
            }
        }
        let s = self.shift.min(o.shift);
        let a = mp_mul_poly(&self.num, &Poly::from_roots(&extra_for_self).shift((self.shift - s) as usize));
        let b = mp_mul_poly(&o.num, &Poly::from_roots(&extra_for_o).shift((o.shift - s) as usize));
        RatMat { rows: self.rows, cols: self.cols, num: mp_add(&a, &b), shift: s, poles: common }.simplify()
    }

    pub fn sub(&self, o: &RatMat) -> Self {
        self.add(&o.neg())
    }

    /// The function whose boundary values are `F(z)*` (pointwise adjoint on 𝕋).
    pub fn star(&self) -> Self {
        let m = self.poles.len() as i32;
        let d = self.num_degree();
        let mut c = c64(1.0, 0.0);
        for &p in &self.poles {
            c *= -p.conj();
        }
        let num: Vec<CMat> = (0..=d).map(|i| self.num[d - i].adjoint() / c).collect();
        let poles = self.poles.iter().map(|p| c64(1.0, 0.0) / p.conj()).collect();
        RatMat { rows: self.cols, cols: self.rows, num, shift: m - self.shift - d as i32, poles }.simplify()
    }

    /// `F̃(z) = F(z̄)*`.
    pub fn tilde(&self) -> Self {
        RatMat {
            rows: self.cols,
            cols: self.rows,
            num: self.num.iter().map(|c| c.adjoint()).collect(),
            shift: self.shift,
            poles: self.poles.iter().map(|p| p.conj()).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        RatMat {
            rows: self.cols,
            cols: self.rows,
            num: self.num.iter().map(|c| c.transpose()).collect(),
            shift: self.shift,
            poles: self.poles.clone(),
        }
    }

    /// Entry `(i, j)` as a scalar function.
    pub fn entry(&self, i: usize, j: usize) -> RatMat {
        RatMat {
            rows: 1,
            cols: 1,
            num: self.num.iter().map(|c| CMat::from_element(1, 1, c[(i, j)])).collect(),
            shift: self.shift,
            poles: self.poles.clone(),
        }
        .simplify()
    }

    /// Assemble a matrix function from a grid of scalar functions.
    pub fn from_entries(grid: &[Vec<RatMat>]) -> RatMat {
        let rows = grid.len();
        let cols = grid[0].len();
        let mut acc = RatMat::zeros(rows, cols);
        for (i, row) in grid.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                assert!(e.is_scalar());
                let mut emb = CMat::zeros(rows, cols);
                emb[(i, j)] = c64(1.0, 0.0);
                let lifted = RatMat {
                    rows,
                    cols,
                    num: e.num.iter().map(|c| &emb * c[(0, 0)]).collect(),
                    shift: e.shift,
                    poles: e.poles.clone(),
                };
                acc = acc.add(&lifted);
            }
        }
        acc
    }

    /// Block-diagonal matrix from square blocks.
    pub fn block_diag(blocks: &[RatMat]) -> RatMat {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut acc = RatMat::zeros(n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            let mut num = vec![];
            for c in &b.num {
                let mut big = CMat::zeros(n, m);
                big.view_mut((r0, c0), (b.rows, b.cols)).copy_from(c);
                num.push(big);
            }
            acc = acc.add(&RatMat { rows: n, cols: m, num, shift: b.shift, poles: b.poles.clone() });
            r0 += b.rows;
            c0 += b.cols;
        }
        acc
    }

    /// True when analytic on a neighbourhood of the closed disk.
    pub fn is_analytic(&self) -> bool {
        self.shift >= 0 && self.poles.iter().all(|p| p.norm() > 1.0 + CIRCLE_MARGIN)
    }

    pub fn check_circle(&self) -> Result<()> {
        for p in &self.poles {
            if (p.norm() - 1.0).abs() <= CIRCLE_MARGIN {
                return Err(BtkError::InvalidInput(format!("pole {p} on the unit circle")));
            }
        }
        Ok(())
    }

    /// Decompose into `(plus, minus)` with `self = minus* + plus` on 𝕋,
    /// `plus` analytic (holding the constant term) and `minus(0) = 0`.
    pub fn split(&self) -> Result<(RatMat, RatMat)> {
        self.check_circle()?;
        let inside: Vec<C64> = self.poles.iter().copied().filter(|p| p.norm() < 1.0).collect();
        let outside: Vec<C64> = self.poles.iter().copied().filter(|p| p.norm() > 1.0).collect();
        let k0 = (-self.shift).max(0) as usize;
        if inside.is_empty() && k0 == 0 {
            return Ok((self.clone(), RatMat::zeros(self.cols, self.rows)));
        }
        let d_in = Poly::from_roots(&inside).shift(k0);
        let d_out = Poly::from_roots(&outside);
        let numer: Vec<CMat> = if self.shift > 0 {
            mp_mul_poly(&self.num, &Poly::monomial(self.shift as usize, c64(1.0, 0.0)))
        } else {
            self.num.clone()
        };
        let full = d_in.mul(&d_out);
        let (q, rem) = mp_divrem(&numer, &full);
        let a = d_in.degree();
        let b = d_out.degree();
        let n = a + b;
        // columns: z^j d_out (j < a) then z^j d_in (j < b)
        let mut sys = CMat::zeros(n, n);
        for j in 0..a {
            for (k, &v) in d_out.c.iter().enumerate() {
                if j + k < n {
                    sys[(j + k, j)] = v;
                }
            }
        }
        for j in 0..b {
            for (k, &v) in d_in.c.iter().enumerate() {
                if j + k < n {
                    sys[(j + k, a + j)] = v;
                }
            }
        }
        let (r, c) = (self.rows, self.cols);
        let mut rhs = CMat::zeros(n, r * c);
        for k in 0..n {
            if k < rem.len() {
                for i in 0..r {
                    for j in 0..c {
                        rhs[(k, i * c + j)] = rem[k][(i, j)];
                    }
                }
            }
        }
        let sol = linalg::solve(&sys, &rhs)
            .ok_or_else(|| BtkError::Internal("singular partial-fraction system".into()))?;
        let unpack = |off: usize, len: usize| -> Vec<CMat> {
            (0..len.max(1))
                .map(|k| {
                    if k < len {
                        CMat::from_fn(r, c, |i, j| sol[(off + k, i * c + j)])
                    } else {
                        CMat::zeros(r, c)
                    }
                })
                .collect()
        };
        let r_in = unpack(0, a);
        let r_out = unpack(a, b);
        let plus_num = mp_add(&mp_mul_poly(&q, &d_out), &r_out);
        let plus = RatMat { rows: r, cols: c, num: plus_num, shift: 0, poles: outside }.simplify();
        let conj_part = RatMat { rows: r, cols: c, num: r_in, shift: -(k0 as i32), poles: inside }.simplify();
        Ok((plus, conj_part.star()))
    }

    /// Taylor coefficients at the origin (requires analyticity at 0).
    pub fn taylor0(&self, n: usize) -> Vec<CMat> {
        assert!(self.shift >= 0, "taylor0 needs analyticity at 0");
        let den = self.den_poly();
        let s = self.shift as usize;
        let mut out = vec![CMat::zeros(self.rows, self.cols); n];
        if n <= s {
            return out;
        }
        let m = n - s;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let nu: Vec<C64> = self.num.iter().map(|c| c[(i, j)]).collect();
                let ser = crate::poly::series_div(&nu, &den.c, m);
                for k in 0..m {
                    out[k + s][(i, j)] = ser[k];
                }
            }
        }
        out
    }

    /// First `k` Taylor coefficients at `a`.
    pub fn taylor_at(&self, a: C64, k: usize) -> Vec<CMat> {
        let mut numer: Vec<CMat> = self.num.clone();
        let mut den = self.den_poly();
        if self.shift > 0 {
            numer = mp_mul_poly(&numer, &Poly::monomial(self.shift as usize, c64(1.0, 0.0)));
        } else if self.shift < 0 {
            den = den.shift((-self.shift) as usize);
        }
        let dsh = den.taylor_shift(a);
        let mut out = vec![CMat::zeros(self.rows, self.cols); k];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let nu = Poly::new(numer.iter().map(|c| c[(i, j)]).collect()).taylor_shift(a);
                let ser = crate::poly::series_div(&nu.c, &dsh.c, k);
                for t in 0..k {
                    out[t][(i, j)] = ser[t];
                }
            }
        }
        out
    }

    /// Samples on `m` equispaced points of 𝕋.
    pub fn samples(&self, m: usize) -> Vec<CMat> {
        (0..m).map(|j| self.eval(circle_point(j, m))).collect()
    }

    /// Fourier coefficients `F̂(k)` for `k ∈ [lo, hi]` from an `m`-point FFT.
    pub fn fourier(&self, lo: i64, hi: i64, m: usize) -> Vec<CMat> {
        let samples = self.samples(m);
        let mut planner = FftPlanner::<f64>::new();
        let fft = planner.plan_fft_forward(m);
        let mut out = vec![CMat::zeros(self.rows, self.cols); (hi - lo + 1) as usize];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let mut buf: Vec<C64> = samples.iter().map(|s| s[(i, j)]).collect();
                fft.process(&mut buf);
                for k in lo..=hi {
                    let idx = k.rem_euclid(m as i64) as usize;
                    out[(k - lo) as usize][(i, j)] = buf[idx] / m as f64;
                }
            }
        }
        out
    }

    /// Sampled sup of the spectral norm on 𝕋.
    pub fn sup_norm(&self, m: usize) -> f64 {
        (0..m).map(|j| linalg::norm2(&self.eval(circle_point(j, m)))).fold(0.0, f64::max)
    }

    /// Sampled sup of `‖self − o‖` on 𝕋.
    pub fn dist(&self, o: &RatMat, m: usize) -> f64 {
        (0..m)
            .map(|j| {
                let z = circle_point(j, m);
                linalg::max_abs(&(self.eval(z) - o.eval(z)))
            })
            .fold(0.0, f64::max)
    }

    /// Determinant of a square function.
    pub fn det(&self) -> RatMat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let d = mp_det(&self.num);
        let mut poles = vec![];
        for _ in 0..n {
            poles.extend_from_slice(&self.poles);
        }
        RatMat {
            rows: 1,
            cols: 1,
            num: d.c.iter().map(|&a| CMat::from_element(1, 1, a)).collect(),
            shift: self.shift * n as i32,
            poles,
        }
        .simplify()
    }

    /// Sub-matrix with the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> RatMat {
        RatMat {
            rows: rows.len(),
            cols: cols.len(),
            num: self.num.iter().map(|c| CMat::from_fn(rows.len(), cols.len(), |i, j| c[(rows[i], cols[j])])).collect(),
            shift: self.shift,
            poles: self.poles.clone(),
        }
        .simplify()
    }

    /// Composition `F ∘ ω` with `ω = p / q` a rational function.
    pub fn compose(&self, p: &Poly, q: &Poly) -> Result<RatMat> {
        let d = self.num_degree();
        let m = self.poles.len() as i64;
        let s = self.shift as i64;
        let mut u: Vec<CMat> = vec![CMat::zeros(self.rows, self.cols)];
        for (k, c) in self.num.iter().enumerate() {
            let f = p.pow(k).mul(&q.pow(d - k));
            u = mp_add(&u, &mp_mul_poly(&[c.clone()], &f));
        }
        let e = m - d as i64 - s;
        let mut numpoly = Poly::one();
        let mut denpoly = Poly::one();
        if s >= 0 {
            numpoly = numpoly.mul(&p.pow(s as usize));
        } else {
            denpoly = denpoly.mul(&p.pow((-s) as usize));
        }
        if e >= 0 {
            numpoly = numpoly.mul(&q.pow(e as usize));
        } else {
            denpoly = denpoly.mul(&q.pow((-e) as usize));
        }
        for &pj in &self.poles {
            denpoly = denpoly.mul(&p.sub(&q.scale(pj)));
        }
        let u = mp_mul_poly(&u, &numpoly);
        RatMat::from_parts(u, &denpoly, 0)
    }
}

/// `e^{2πi j/m}`
pub fn circle_point(j: usize, m: usize) -> C64 {
    C64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / m as f64)
}

/// Blaschke factor `b_α(z) = (z − α)/(1 − ᾱz)` as a scalar function.
pub fn blaschke_factor(alpha: C64) -> RatMat {
    if alpha.norm() == 0.0 {
        return RatMat { rows: 1, cols: 1, num: vec![CMat::from_element(1, 1, c64(1.0, 0.0))], shift: 1, poles: vec![] };
    }
    let s = -c64(1.0, 0.0) / alpha.conj();
    RatMat {
        rows: 1,
        cols: 1,
        num: vec![CMat::from_element(1, 1, -alpha * s), CMat::from_element(1, 1, s)],
        shift: 0,
        poles: vec![c64(1.0, 0.0) / alpha.conj()],
    }
}

/// The scalar `z^k`.
pub fn monomial(k: i32) -> RatMat {
    RatMat { rows: 1, cols: 1, num: vec![CMat::from_element(1, 1, c64(1.0, 0.0))], shift: k, poles: vec![] }
}
