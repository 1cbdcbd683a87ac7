//! Dense linear algebra helpers on complex matrices.

use crate::{c64, CMat, C64};
use nalgebra::DVector;

/// Relative threshold below which singular values count as zero.
pub const NULL_TOL: f64 = 1e-8;

pub fn zeros(r: usize, c: usize) -> CMat {
    CMat::zeros(r, c)
}

pub fn eye(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// Conjugate transpose.
pub fn adj(m: &CMat) -> CMat {
    m.adjoint()
}

/// Kronecker product `a ⊗ b` with the usual `(i*rb + k, j*cb + l)` indexing.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let (ra, ca) = a.shape();
    let (rb, cb) = b.shape();
    let mut out = CMat::zeros(ra * rb, ca * cb);
    for i in 0..ra {
        for j in 0..ca {
            let s = a[(i, j)];
            if s == C64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    out[(i * rb + k, j * cb + l)] = s * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Singular values in descending order.
pub fn singular_values(m: &CMat) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return vec![];
    }
    let svd = m.clone().svd(false, false);
    let mut s: Vec<f64> = svd.singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    s
}

/// Spectral norm (largest singular value).
pub fn norm2(m: &CMat) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Smallest singular value of a square or tall matrix.
pub fn sigma_min(m: &CMat) -> f64 {
    if m.nrows() < m.ncols() {
        return 0.0;
    }
    singular_values(m).last().copied().unwrap_or(0.0)
}

/// Number of singular values above `rel * sigma_max`.
pub fn rank(m: &CMat, rel: f64) -> usize {
    let s = singular_values(m);
    let Some(&top) = s.first() else { return 0 };
    if top == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > rel * top).count()
}

/// Orthonormal basis (as columns) of the right null space, with singular
/// values below `rel * sigma_max` treated as zero.  A zero matrix has the
/// whole space as kernel.
pub fn null_space(m: &CMat, rel: f64) -> CMat {
    null_space_scaled(m, rel, 0.0)
}

/// Null space with threshold `rel * max(sigma_max, scale)`; `scale` guards
/// against a numerically zero matrix whose own `sigma_max` is round-off.
pub fn null_space_scaled(m: &CMat, rel: f64, scale: f64) -> CMat {
    let (r, c) = m.shape();
    if c == 0 {
        return CMat::zeros(0, 0);
    }
    // pad to at least square so that the SVD returns a full V
    let rows = r.max(c);
    let mut a = CMat::zeros(rows, c);
    a.view_mut((0, 0), (r, c)).copy_from(m);
    let svd = a.svd(false, true);
    let vt = svd.v_t.expect("v_t requested");
    let s = &svd.singular_values;
    let top = s.iter().cloned().fold(0.0, f64::max).max(scale);
    let keep: Vec<usize> = (0..s.len()).filter(|&i| top == 0.0 || s[i] <= rel * top).collect();
    let mut out = CMat::zeros(c, keep.len());
    for (k, &i) in keep.iter().enumerate() {
        for j in 0..c {
            out[(j, k)] = vt[(i, j)].conj();
        }
    }
    out
}

/// Orthonormal basis of the left null space, i.e. of `ker m*`.
pub fn left_null_space(m: &CMat, rel: f64) -> CMat {
    null_space(&m.adjoint(), rel)
}

pub fn left_null_space_scaled(m: &CMat, rel: f64, scale: f64) -> CMat {
    null_space_scaled(&m.adjoint(), rel, scale)
}

/// Orthogonal projection onto the column span of an orthonormal `v`.
pub fn projector(v: &CMat) -> CMat {
    v * v.adjoint()
}

/// Hermitian part `(m + m*)/2`.
pub fn hermitian_part(m: &CMat) -> CMat {
    (m + m.adjoint()).scale(0.5)
}

/// Eigenvalues of the Hermitian part of `m`, ascending.
pub fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    if m.nrows() == 0 {
        return vec![];
    }
    let e = hermitian_part(m).symmetric_eigen();
    let mut v: Vec<f64> = e.eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

/// Hermitian eigen-decomposition (ascending eigenvalues, matching eigenvector columns).
pub fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let e = hermitian_part(m).symmetric_eigen();
    let n = m.nrows();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| e.eigenvalues[a].partial_cmp(&e.eigenvalues[b]).unwrap());
    let vals = idx.iter().map(|&i| e.eigenvalues[i]).collect();
    let mut vecs = CMat::zeros(n, n);
    for (k, &i) in idx.iter().enumerate() {
        vecs.set_column(k, &e.eigenvectors.column(i));
    }
    (vals, vecs)
}

/// Moore-Penrose pseudoinverse with singular values below `rel * sigma_max` dropped.
pub fn pinv(m: &CMat, rel: f64) -> CMat {
    let (r, c) = m.shape();
    if r == 0 || c == 0 {
        return CMat::zeros(c, r);
    }
    let top = norm2(m);
    if top == 0.0 {
        return CMat::zeros(c, r);
    }
    m.clone().svd(true, true).pseudo_inverse(rel * top).expect("svd vectors computed")
}

/// Solve `a x = b` for square invertible `a`.
pub fn solve(a: &CMat, b: &CMat) -> Option<CMat> {
    a.clone().lu().solve(b)
}

pub fn inverse(a: &CMat) -> Option<CMat> {
    a.clone().try_inverse()
}

/// Frobenius-style max-abs entry norm.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// Closest unitary matrix (polar factor).
pub fn nearest_unitary(m: &CMat) -> CMat {
    let svd = m.clone().svd(true, true);
    svd.u.unwrap() * svd.v_t.unwrap()
}

/// `‖m m* − I‖` in spectral norm.
pub fn unitarity_defect(m: &CMat) -> f64 {
    norm2(&(m * m.adjoint() - eye(m.nrows())))
}

pub fn is_zero(m: &CMat, tol: f64) -> bool {
    max_abs(m) <= tol
}

/// Build a matrix from a row-major nested slice of complex values.
pub fn from_rows(rows: &[Vec<C64>]) -> CMat {
    let r = rows.len();
    let c = if r == 0 { 0 } else { rows[0].len() };
    CMat::from_fn(r, c, |i, j| rows[i][j])
}

/// Real diagonal matrix helper.
pub fn diag(v: &[C64]) -> CMat {
    CMat::from_diagonal(&DVector::from_column_slice(v))
}

pub fn scalar(n: usize, s: C64) -> CMat {
    eye(n) * s
}

/// Unit vector `e_i` in `C^n` as a column matrix.
pub fn unit(n: usize, i: usize) -> CMat {
    let mut e = CMat::zeros(n, 1);
    e[(i, 0)] = c64(1.0, 0.0);
    e
}

/// Complex eigenvalues of a general square matrix via the complex Schur form.
pub fn eigenvalues(m: &CMat) -> Option<Vec<C64>> {
    let n = m.nrows();
    if n == 0 {
        return Some(vec![]);
    }
    let schur = m.clone().try_schur(f64::EPSILON, 100_000)?;
    let (_, t) = schur.unpack();
    Some((0..n).map(|i| t[(i, i)]).collect())
}
