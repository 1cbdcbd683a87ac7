//! Dense univariate complex polynomials with ascending coefficients.

use crate::linalg;
use crate::{c64, CMat, C64};

#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    /// `c[k]` multiplies `z^k`.
    pub c: Vec<C64>,
}

fn zero() -> C64 {
    c64(0.0, 0.0)
}

impl Poly {
    pub fn new(mut c: Vec<C64>) -> Self {
        if c.is_empty() {
            c.push(zero());
        }
        Poly { c }
    }

    pub fn constant(a: C64) -> Self {
        Poly { c: vec![a] }
    }

    pub fn one() -> Self {
        Poly::constant(c64(1.0, 0.0))
    }

    /// `z - a`
    pub fn linear(a: C64) -> Self {
        Poly { c: vec![-a, c64(1.0, 0.0)] }
    }

    pub fn monomial(k: usize, a: C64) -> Self {
        let mut c = vec![zero(); k + 1];
        c[k] = a;
        Poly { c }
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[C64]) -> Self {
        let mut p = Poly::one();
        for &r in roots {
            p = p.mul(&Poly::linear(r));
        }
        p
    }

    /// Degree after dropping exactly zero leading coefficients (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        let mut d = self.c.len() - 1;
        while d > 0 && self.c[d] == zero() {
            d -= 1;
        }
        d
    }

    /// Drop leading coefficients with modulus `<= tol * max|c|`.
    pub fn trim(&self, tol: f64) -> Poly {
        let m = self.c.iter().map(|x| x.norm()).fold(0.0, f64::max);
        let mut c = self.c.clone();
        while c.len() > 1 && c.last().unwrap().norm() <= tol * m {
            c.pop();
        }
        Poly { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| *x == zero())
    }

    pub fn lead(&self) -> C64 {
        self.c[self.degree()]
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.c.iter().rev().fold(zero(), |acc, &a| acc * z + a)
    }

    pub fn deriv(&self) -> Poly {
        if self.c.len() <= 1 {
            return Poly::constant(zero());
        }
        Poly::new((1..self.c.len()).map(|k| self.c[k] * k as f64).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new(
            (0..n)
                .map(|k| self.c.get(k).copied().unwrap_or(zero()) + o.c.get(k).copied().unwrap_or(zero()))
                .collect(),
        )
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(c64(-1.0, 0.0)))
    }

    pub fn scale(&self, s: C64) -> Poly {
        Poly::new(self.c.iter().map(|&x| x * s).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut c = vec![zero(); self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == zero() {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }

    pub fn pow(&self, k: usize) -> Poly {
        let mut p = Poly::one();
        for _ in 0..k {
            p = p.mul(self);
        }
        p
    }

    /// Shift by `z^k`.
    pub fn shift(&self, k: usize) -> Poly {
        let mut c = vec![zero(); k];
        c.extend_from_slice(&self.c);
        Poly::new(c)
    }

    /// Euclidean division `self = q·d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree();
        let lead = d.c[dd];
        assert!(lead != zero(), "division by zero polynomial");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::constant(zero()), Poly::new(r));
        }
        let mut q = vec![zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = r[k + dd] / lead;
            q[k] = t;
            for j in 0..=dd {
                r[k + j] -= t * d.c[j];
            }
        }
        r.truncate(dd.max(1));
        if dd == 0 {
            r = vec![zero()];
        }
        (Poly::new(q), Poly::new(r))
    }

    /// Synthetic division by `(z - a)`; returns quotient and remainder `p(a)`.
    pub fn deflate(&self, a: C64) -> (Poly, C64) {
        let n = self.c.len();
        if n == 1 {
            return (Poly::constant(zero()), self.c[0]);
        }
        let mut q = vec![zero(); n - 1];
        let mut acc = self.c[n - 1];
        for k in (0..n - 1).rev() {
            q[k] = acc;
            acc = acc * a + self.c[k];
        }
        (Poly::new(q), acc)
    }

    /// Coefficients of `p(a + h)` in powers of `h`.
    pub fn taylor_shift(&self, a: C64) -> Poly {
        let mut c = self.c.clone();
        let n = c.len();
        for i in 0..n {
            for k in (i..n - 1).rev() {
                let t = c[k + 1] * a;
                c[k] += t;
            }
        }
        Poly::new(c)
    }

    /// `conj(p(1/conj z)) * z^deg`, the reversed-conjugate polynomial.
    pub fn reversed_conj(&self, deg: usize) -> Poly {
        let mut c = vec![zero(); deg + 1];
        for (k, &a) in self.c.iter().enumerate() {
            if k <= deg {
                c[deg - k] = a.conj();
            }
        }
        Poly::new(c)
    }

    /// Roots via companion-matrix eigenvalues followed by Newton polishing.
    pub fn roots(&self) -> Vec<C64> {
        let p = self.trim(1e-14);
        let d = p.degree();
        if d == 0 {
            return vec![];
        }
        // factor out exact zeros first
        let mut lo = 0;
        while lo < d && p.c[lo] == zero() {
            lo += 1;
        }
        let mut out = vec![zero(); lo];
        let q = Poly::new(p.c[lo..=d].to_vec());
        let m = q.degree();
        if m == 0 {
            return out;
        }
        let lead = q.c[m];
        let mut comp = CMat::zeros(m, m);
        for i in 1..m {
            comp[(i, i - 1)] = c64(1.0, 0.0);
        }
        for i in 0..m {
            comp[(i, m - 1)] = -q.c[i] / lead;
        }
        let eig = linalg::eigenvalues(&comp).unwrap_or_else(|| durand_kerner(&q));
        let dq = q.deriv();
        for mut r in eig {
            for _ in 0..2 {
                let f = q.eval(r);
                let g = dq.eval(r);
                if g.norm() > 1e-300 {
                    let step = f / g;
                    // accept only improving steps; clustered roots make Newton erratic
                    let cand = r - step;
                    if q.eval(cand).norm() < f.norm() {
                        r = cand;
                    }
                }
            }
            out.push(r);
        }
        out
    }
}

fn durand_kerner(p: &Poly) -> Vec<C64> {
    let m = p.degree();
    let lead = p.c[m];
    let mono = p.scale(c64(1.0, 0.0) / lead);
    let seed = c64(0.4, 0.9);
    let mut r: Vec<C64> = (0..m).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..m {
            let mut den = c64(1.0, 0.0);
            for j in 0..m {
                if i != j {
                    den *= r[i] - r[j];
                }
            }
            let step = mono.eval(r[i]) / den;
            r[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    r
}

/// Power series quotient `num / den` to `n` terms (requires `den(0) != 0`).
pub fn series_div(num: &[C64], den: &[C64], n: usize) -> Vec<C64> {
    let d0 = den[0];
    let mut out = vec![zero(); n];
    for k in 0..n {
        let mut acc = num.get(k).copied().unwrap_or(zero());
        for j in 1..den.len().min(k + 1) {
            acc -= den[j] * out[k - j];
        }
        out[k] = acc / d0;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn division_identity() {
        let a = Poly::new(vec![c64(1.0, 0.0), c64(2.0, 1.0), c64(0.0, 0.0), c64(3.0, 0.0)]);
        let d = Poly::new(vec![c64(-0.5, 0.0), c64(1.0, 0.0)]);
        let (q, r) = a.divrem(&d);
        let back = q.mul(&d).add(&r);
        for k in 0..4 {
            assert!((back.c[k] - a.c[k]).norm() < 1e-12);
        }
        let (q2, rem) = a.deflate(c64(0.5, 0.0));
        assert!((rem - a.eval(c64(0.5, 0.0))).norm() < 1e-12);
        assert_eq!(q2.c.len(), q.c.len());
    }

    #[test]
    fn taylor_shift_matches_derivatives() {
        let p = Poly::new(vec![c64(1.0, 0.0), c64(-1.0, 2.0), c64(0.5, 0.0), c64(2.0, 0.0)]);
        let a = c64(0.3, -0.2);
        let t = p.taylor_shift(a);
        assert!((t.c[0] - p.eval(a)).norm() < 1e-12);
        assert!((t.c[1] - p.deriv().eval(a)).norm() < 1e-12);
        assert!((t.c[2] - p.deriv().deriv().eval(a) / 2.0).norm() < 1e-12);
    }

    proptest! {
        #[test]
        fn roots_reconstruct(re in proptest::collection::vec(-2.0f64..2.0, 1..6), im in proptest::collection::vec(-2.0f64..2.0, 6)) {
            let roots: Vec<C64> = re.iter().zip(im.iter()).map(|(&a, &b)| c64(a, b)).collect();
            let p = Poly::from_roots(&roots);
            let found = p.roots();
            prop_assert_eq!(found.len(), roots.len());
            for r in &roots {
                let best = found.iter().map(|f| (f - r).norm()).fold(f64::INFINITY, f64::min);
                prop_assert!(best < 1e-5);
            }
        }
    }
}
