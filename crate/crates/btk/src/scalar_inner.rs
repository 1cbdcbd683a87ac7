//! Scalar inner functions: finite Blaschke products and atomic singular inner functions.

use crate::error::{BtkError, Result};
use crate::poly::Poly;
use crate::ratmat::{blaschke_factor, RatMat};
use crate::{c64, C64};
use serde::{Deserialize, Serialize};

/// Two zeros are identified when their pseudo-hyperbolic distance is below this.
pub const ZERO_MATCH: f64 = 1e-8;
/// Minimal arc distance between distinct atoms.
pub const ATOM_SEPARATION: f64 = 1e-10;

/// Pseudo-hyperbolic distance `|b_α(β)|`.
pub fn pseudo_hyperbolic(a: C64, b: C64) -> f64 {
    let den = c64(1.0, 0.0) - a.conj() * b;
    if den.norm() == 0.0 {
        return 1.0;
    }
    ((b - a) / den).norm()
}

/// `b_α(z)` evaluated directly.
pub fn blaschke_eval(alpha: C64, z: C64) -> C64 {
    (z - alpha) / (c64(1.0, 0.0) - alpha.conj() * z)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeProduct {
    pub constant: C64,
    /// `(alpha, multiplicity)` with pairwise distinct `alpha`.
    pub zeros: Vec<(C64, usize)>,
}

impl BlaschkeProduct {
    /// Build from a constant and zeros, merging zeros that match within tolerance.
    pub fn new(constant: C64, zeros: &[(C64, usize)]) -> Result<Self> {
        if (constant.norm() - 1.0).abs() > 1e-12 {
            return Err(BtkError::InvalidInput(format!("constant {constant} is not unimodular")));
        }
        let mut merged: Vec<(C64, usize)> = vec![];
        for &(a, m) in zeros {
            if a.norm() >= 1.0 - 1e-12 {
                return Err(BtkError::InvalidInput(format!("zero {a} outside the open disk")));
            }
            if m == 0 {
                continue;
            }
            match merged.iter_mut().find(|(b, _)| pseudo_hyperbolic(*b, a) < ZERO_MATCH) {
                Some(e) => e.1 += m,
                None => merged.push((a, m)),
            }
        }
        merged.sort_by(|x, y| order_key(x.0).partial_cmp(&order_key(y.0)).unwrap());
        Ok(BlaschkeProduct { constant, zeros: merged })
    }

    pub fn one() -> Self {
        BlaschkeProduct { constant: c64(1.0, 0.0), zeros: vec![] }
    }

    /// `z^k`
    pub fn z_power(k: usize) -> Self {
        Self::from_zeros(&vec![c64(0.0, 0.0); k])
    }

    /// `b_α`
    pub fn factor(alpha: C64) -> Self {
        Self::from_zeros(&[alpha])
    }

    /// Product of Blaschke factors at the listed points (repetition = multiplicity).
    pub fn from_zeros(points: &[C64]) -> Self {
        let z: Vec<(C64, usize)> = points.iter().map(|&a| (a, 1)).collect();
        Self::new(c64(1.0, 0.0), &z).expect("zeros inside the disk")
    }

    pub fn degree(&self) -> usize {
        self.zeros.iter().map(|z| z.1).sum()
    }

    /// Zeros listed with repetition in canonical order.
    pub fn zeros_flat(&self) -> Vec<C64> {
        let mut v = vec![];
        for &(a, m) in &self.zeros {
            for _ in 0..m {
                v.push(a);
            }
        }
        v
    }

    pub fn multiplicity_of(&self, a: C64) -> usize {
        self.zeros.iter().filter(|(b, _)| pseudo_hyperbolic(*b, a) < ZERO_MATCH).map(|z| z.1).sum()
    }

    pub fn eval(&self, z: C64) -> C64 {
        let mut v = self.constant;
        for &(a, m) in &self.zeros {
            v *= blaschke_eval(a, z).powu(m as u32);
        }
        v
    }

    pub fn mul(&self, o: &BlaschkeProduct) -> Self {
        let mut z = self.zeros.clone();
        z.extend_from_slice(&o.zeros);
        Self::new(self.constant * o.constant, &z).expect("valid factors")
    }

    pub fn with_constant(&self, c: C64) -> Self {
        BlaschkeProduct { constant: c, zeros: self.zeros.clone() }
    }

    /// `self / d` when `d` divides `self` (constant set to `self.constant / d.constant`).
    pub fn div(&self, d: &BlaschkeProduct) -> Option<Self> {
        let mut z = self.zeros.clone();
        for &(a, m) in &d.zeros {
            let e = z.iter_mut().find(|(b, _)| pseudo_hyperbolic(*b, a) < ZERO_MATCH)?;
            if e.1 < m {
                return None;
            }
            e.1 -= m;
        }
        z.retain(|e| e.1 > 0);
        Some(BlaschkeProduct { constant: self.constant / d.constant, zeros: z })
    }

    pub fn divides(&self, o: &BlaschkeProduct) -> bool {
        o.div(self).is_some()
    }

    /// The product as a scalar rational function.
    pub fn to_ratmat(&self) -> RatMat {
        let mut r = RatMat::scalar_const(self.constant);
        for &(a, m) in &self.zeros {
            let f = blaschke_factor(a);
            for _ in 0..m {
                r = r.mul(&f);
            }
        }
        r
    }

    /// Numerator and denominator polynomials `(p, q)` with `self = p/q`.
    pub fn as_fraction(&self) -> (Poly, Poly) {
        let mut p = Poly::constant(self.constant);
        let mut q = Poly::one();
        for a in self.zeros_flat() {
            p = p.mul(&Poly::linear(a));
            q = q.mul(&Poly::new(vec![c64(1.0, 0.0), -a.conj()]));
        }
        (p, q)
    }

    /// Maximum deviation of `|self|` from 1 over `m` points of 𝕋.
    pub fn unimodular_defect(&self, m: usize) -> f64 {
        (0..m).map(|j| (self.eval(crate::ratmat::circle_point(j, m)).norm() - 1.0).abs()).fold(0.0, f64::max)
    }
}

fn order_key(a: C64) -> (f64, f64) {
    (round_key(a.norm()), a.arg())
}

fn round_key(x: f64) -> f64 {
    (x * 1e10).round() / 1e10
}

pub fn eval_blaschke(b: &BlaschkeProduct, z: C64) -> C64 {
    b.eval(z)
}

/// Zeros with the minimum multiplicity over matched zeros; constant 1.
pub fn gcd_blaschke(b1: &BlaschkeProduct, b2: &BlaschkeProduct) -> BlaschkeProduct {
    let mut z = vec![];
    for &(a, m) in &b1.zeros {
        let k = b2.multiplicity_of(a);
        if k > 0 {
            z.push((a, m.min(k)));
        }
    }
    BlaschkeProduct::new(c64(1.0, 0.0), &z).expect("zeros from inputs")
}

/// Zeros with the maximum multiplicity over matched zeros; constant 1.
pub fn lcm_blaschke(b1: &BlaschkeProduct, b2: &BlaschkeProduct) -> BlaschkeProduct {
    let mut z: Vec<(C64, usize)> = b1.zeros.clone();
    for &(a, m) in &b2.zeros {
        match z.iter_mut().find(|(b, _)| pseudo_hyperbolic(*b, a) < ZERO_MATCH) {
            Some(e) => e.1 = e.1.max(m),
            None => z.push((a, m)),
        }
    }
    BlaschkeProduct::new(c64(1.0, 0.0), &z).expect("zeros from inputs")
}

pub fn coprime_blaschke(b1: &BlaschkeProduct, b2: &BlaschkeProduct) -> bool {
    gcd_blaschke(b1, b2).degree() == 0
}

/// `b ∘ ω`: the zeros are the roots in 𝔻 of `p(z) − α q(z)` for each zero `α` of `b`.
pub fn compose_blaschke(b: &BlaschkeProduct, omega: &BlaschkeProduct) -> Result<BlaschkeProduct> {
    let (p, q) = omega.as_fraction();
    let r = omega.degree();
    let mut zeros = vec![];
    for &(a, m) in &b.zeros {
        let roots = p.sub(&q.scale(a)).roots();
        if roots.len() != r {
            return Err(BtkError::Internal(format!("expected {r} roots of ω = {a}, found {}", roots.len())));
        }
        for root in roots {
            if root.norm() >= 1.0 - 1e-10 {
                return Err(BtkError::Internal(format!("root {root} of ω = {a} escaped the disk")));
            }
            zeros.push((root, m));
        }
    }
    let (zc, zq) = (zeros.clone(), b.constant);
    let mut out = BlaschkeProduct::new(c64(1.0, 0.0), &zc)?;
    // fix the unimodular constant by matching one interior value
    let w = c64(0.123, -0.071);
    let want = b.eval(omega.eval(w));
    let have = out.eval(w);
    let c = if have.norm() > 1e-12 { want / have } else { zq };
    out.constant = c / c.norm();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct AtomicSingularMeasure {
    /// `(t, mass)` with `|t| = 1` and `mass > 0`.
    pub atoms: Vec<(C64, f64)>,
}

fn arc_distance(a: C64, b: C64) -> f64 {
    (a / b).arg().abs()
}

impl AtomicSingularMeasure {
    pub fn new(atoms: &[(C64, f64)]) -> Result<Self> {
        for (i, &(t, m)) in atoms.iter().enumerate() {
            if (t.norm() - 1.0).abs() > 1e-12 {
                return Err(BtkError::InvalidInput(format!("atom {t} is not on the unit circle")));
            }
            if !(m > 0.0) || !m.is_finite() {
                return Err(BtkError::InvalidInput(format!("atom mass {m} must be positive and finite")));
            }
            for &(s, _) in &atoms[..i] {
                if arc_distance(s, t) <= ATOM_SEPARATION {
                    return Err(BtkError::InvalidInput(format!("atoms {s} and {t} coincide")));
                }
            }
        }
        Ok(AtomicSingularMeasure { atoms: atoms.to_vec() })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum()
    }

    /// Mass carried at `t` (0 when `t` is not an atom).
    pub fn mass_at(&self, t: C64) -> f64 {
        self.atoms.iter().filter(|(s, _)| arc_distance(*s, t) <= ATOM_SEPARATION).map(|a| a.1).sum()
    }
}

/// `exp(−Σ mass_k (t_k + z)/(t_k − z))`.
pub fn eval_singular(mu: &AtomicSingularMeasure, z: C64) -> Result<C64> {
    let mut e = c64(0.0, 0.0);
    for &(t, m) in &mu.atoms {
        let d = t - z;
        if d.norm() < 1e-14 {
            return Err(BtkError::Singularity(format!("evaluation at atom {t}")));
        }
        e += (t + z) / d * m;
    }
    Ok((-e).exp())
}

/// Infimum of two atomic measures: common atoms with the smaller mass.
pub fn measure_inf(mu1: &AtomicSingularMeasure, mu2: &AtomicSingularMeasure) -> AtomicSingularMeasure {
    let atoms = mu1
        .atoms
        .iter()
        .filter_map(|&(t, m)| {
            let k = mu2.mass_at(t);
            (k > 0.0).then(|| (t, m.min(k)))
        })
        .collect();
    AtomicSingularMeasure { atoms }
}

pub fn mutually_singular(mu1: &AtomicSingularMeasure, mu2: &AtomicSingularMeasure) -> bool {
    measure_inf(mu1, mu2).total_mass() < 1e-12
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarInner {
    pub blaschke: BlaschkeProduct,
    pub singular: AtomicSingularMeasure,
}

impl ScalarInner {
    pub fn from_blaschke(b: BlaschkeProduct) -> Self {
        ScalarInner { blaschke: b, singular: AtomicSingularMeasure::empty() }
    }

    pub fn from_singular(mu: AtomicSingularMeasure) -> Self {
        ScalarInner { blaschke: BlaschkeProduct::one(), singular: mu }
    }

    pub fn eval(&self, z: C64) -> Result<C64> {
        Ok(self.blaschke.eval(z) * eval_singular(&self.singular, z)?)
    }

    pub fn is_constant(&self) -> bool {
        self.blaschke.degree() == 0 && self.singular.total_mass() < 1e-12
    }
}

pub fn singular_coprime(s1: &ScalarInner, s2: &ScalarInner) -> bool {
    mutually_singular(&s1.singular, &s2.singular)
}

/// The singular inner function of the infimum measure.
pub fn singular_gcd(s1: &ScalarInner, s2: &ScalarInner) -> ScalarInner {
    ScalarInner::from_singular(measure_inf(&s1.singular, &s2.singular))
}

/// Factorwise greatest common inner divisor.
pub fn gcd_inner(s1: &ScalarInner, s2: &ScalarInner) -> ScalarInner {
    ScalarInner { blaschke: gcd_blaschke(&s1.blaschke, &s2.blaschke), singular: measure_inf(&s1.singular, &s2.singular) }
}

pub fn coprime_inner(s1: &ScalarInner, s2: &ScalarInner) -> bool {
    coprime_blaschke(&s1.blaschke, &s2.blaschke) && singular_coprime(s1, s2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmat::circle_point;
    use proptest::prelude::*;

    fn r(x: f64) -> C64 {
        c64(x, 0.0)
    }

    #[test]
    fn evaluation_examples() {
        assert!((BlaschkeProduct::z_power(1).eval(r(0.3)) - r(0.3)).norm() < 1e-15);
        assert!(BlaschkeProduct::factor(r(0.5)).eval(r(0.5)).norm() < 1e-15);
        let v = BlaschkeProduct::factor(r(0.5)).eval(C64::from_polar(1.0, std::f64::consts::PI / 3.0));
        assert!((v.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gcd_lcm_examples() {
        let a = BlaschkeProduct::from_zeros(&[r(0.5), r(1.0 / 3.0)]);
        let g = gcd_blaschke(&a, &BlaschkeProduct::factor(r(0.5)));
        assert_eq!(g.zeros_flat(), vec![r(0.5)]);
        let z2 = BlaschkeProduct::z_power(2);
        let z3 = BlaschkeProduct::z_power(3);
        assert_eq!(gcd_blaschke(&z2, &z3).degree(), 2);
        assert_eq!(lcm_blaschke(&z2, &z3).degree(), 3);
        assert_eq!(gcd_blaschke(&BlaschkeProduct::factor(r(0.5)), &BlaschkeProduct::factor(r(-0.5))).degree(), 0);
    }

    #[test]
    fn coprime_examples() {
        let t = BlaschkeProduct::from_zeros(&[r(-0.2), c64(0.0, -0.4)]);
        let d = BlaschkeProduct::from_zeros(&[r(-0.6), c64(0.3, 0.3)]);
        assert!(coprime_blaschke(&t, &d));
        assert!(!coprime_blaschke(&BlaschkeProduct::z_power(1), &BlaschkeProduct::z_power(1)));
        assert!(!coprime_blaschke(&BlaschkeProduct::factor(r(0.5)), &BlaschkeProduct::factor(r(0.5 + 1e-12))));
    }

    #[test]
    fn composition_examples() {
        // ω = b_η with η = ∏ α_i composed after θ = ∏ b_{−α_i} vanishes at 0
        let alphas = [r(0.3), c64(0.1, 0.5)];
        let theta = BlaschkeProduct::from_zeros(&alphas.iter().map(|a| -a).collect::<Vec<_>>());
        let eta = alphas[0] * alphas[1];
        let w = BlaschkeProduct::factor(eta);
        let comp = compose_blaschke(&w, &theta).unwrap();
        assert!(comp.eval(r(0.0)).norm() < 1e-10);
        let b = BlaschkeProduct::from_zeros(&[r(0.4), c64(-0.2, 0.3)]);
        let same = compose_blaschke(&BlaschkeProduct::z_power(1), &b).unwrap();
        assert!(same.zeros_flat().iter().zip(b.zeros_flat()).all(|(x, y)| (x - y).norm() < 1e-8));
        for j in 0..8 {
            let z = circle_point(j, 8) * 0.6;
            assert!((comp.eval(z) - w.eval(theta.eval(z))).norm() < 1e-9);
        }
    }

    #[test]
    fn singular_examples() {
        let e = AtomicSingularMeasure::empty();
        assert_eq!(eval_singular(&e, c64(0.2, 0.1)).unwrap(), r(1.0));
        let one = AtomicSingularMeasure::new(&[(r(1.0), 2.0)]).unwrap();
        assert!((eval_singular(&one, r(0.0)).unwrap() - r((-2.0f64).exp())).norm() < 1e-15);
        let two = AtomicSingularMeasure::new(&[(r(1.0), 2.0), (c64(0.0, 1.0), 0.5)]).unwrap();
        assert!((eval_singular(&two, r(0.0)).unwrap() - r((-2.5f64).exp())).norm() < 1e-15);
        assert!(eval_singular(&one, r(1.0)).is_err());
        assert!(AtomicSingularMeasure::new(&[(r(1.0), 1.0), (C64::from_polar(1.0, 1e-12), 1.0)]).is_err());
    }

    #[test]
    fn measure_infimum_examples() {
        let a = AtomicSingularMeasure::new(&[(r(1.0), 2.0), (c64(0.0, 1.0), 3.0)]).unwrap();
        let b = AtomicSingularMeasure::new(&[(r(1.0), 1.0)]).unwrap();
        assert_eq!(measure_inf(&a, &b).atoms, vec![(r(1.0), 1.0)]);
        assert_eq!(measure_inf(&a, &a), a);
        let c = AtomicSingularMeasure::new(&[(r(-1.0), 1.0)]).unwrap();
        assert!(measure_inf(&a, &c).atoms.is_empty());
        assert!(mutually_singular(&a, &c));
        assert!(!mutually_singular(&a, &b));
        assert!(mutually_singular(&a, &AtomicSingularMeasure::empty()));
    }

    #[test]
    fn inner_gcd_examples() {
        let s1 = ScalarInner::from_singular(AtomicSingularMeasure::new(&[(r(1.0), 2.0)]).unwrap());
        let s2 = ScalarInner {
            blaschke: BlaschkeProduct::factor(r(0.5)),
            singular: AtomicSingularMeasure::new(&[(r(1.0), 1.0)]).unwrap(),
        };
        let g = singular_gcd(&s1, &s2);
        assert_eq!(g.singular.atoms, vec![(r(1.0), 1.0)]);
        assert!(!coprime_inner(&s1, &s2));
        let b = ScalarInner::from_blaschke(BlaschkeProduct::factor(r(0.5)));
        assert!(coprime_inner(&b, &s1));
        assert_eq!(gcd_inner(&s1, &s1), s1);
    }

    fn arb_blaschke() -> impl Strategy<Value = BlaschkeProduct> {
        proptest::collection::vec((0.0f64..0.9, 0.0f64..6.28, 1usize..3), 0..4).prop_map(|v| {
            // draw from a small lattice so that shared zeros occur
            let z: Vec<(C64, usize)> =
                v.iter().map(|&(r, t, m)| (C64::from_polar((r * 3.0).round() / 3.5, (t * 2.0).round() / 2.0), m)).collect();
            BlaschkeProduct::new(c64(1.0, 0.0), &z).unwrap()
        })
    }

    proptest! {
        #[test]
        fn gcd_lcm_degree_law(a in arb_blaschke(), b in arb_blaschke()) {
            let g = gcd_blaschke(&a, &b);
            let l = lcm_blaschke(&a, &b);
            prop_assert_eq!(g.degree() + l.degree(), a.degree() + b.degree());
            prop_assert!(g.divides(&a) && g.divides(&b));
            prop_assert!(a.divides(&l) && b.divides(&l));
            prop_assert!(a.unimodular_defect(1024) < 1e-9);
        }

        #[test]
        fn composition_preserves_coprimeness(a in arb_blaschke(), b in arb_blaschke(),
                                             w in proptest::collection::vec((0.0f64..0.8, 0.0f64..6.28), 1..3)) {
            let omega = BlaschkeProduct::from_zeros(&w.iter().map(|&(r, t)| C64::from_polar(r, t)).collect::<Vec<_>>());
            let ca = compose_blaschke(&a, &omega).unwrap();
            let cb = compose_blaschke(&b, &omega).unwrap();
            prop_assert_eq!(ca.degree(), a.degree() * omega.degree());
            prop_assert_eq!(coprime_blaschke(&a, &b), coprime_blaschke(&ca, &cb));
        }
    }
}
