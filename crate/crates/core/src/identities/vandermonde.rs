//! Rational-case identities: Schur-function generalizations of the Cauchy and
//! Schur Pfaffian identities, and the generalized Vandermonde determinant
//! identities they specialize from.

use super::{concat, denom, ensure_len, even_half, CheckOptions};
use crate::error::{Error, Result};
use crate::evaluation::IdentityEvaluation;
use crate::linalg::{Matrix, SkewMatrix};
use crate::scalar::{product, Scalar};
use crate::symfunc::{epsilon_pq, schur, staircase, vandermonde_pq, vandermonde_product, Sign};

fn det_v<S: Scalar>(p: usize, q: usize, x: &[S], a: &[S]) -> Result<S> {
    vandermonde_pq(p, q, x, a)?.determinant()
}

fn cauchy_factor<S: Scalar>(x: &[S], y: &[S], opts: &CheckOptions) -> Result<S> {
    let mut den = S::one();
    for xi in x {
        for yj in y {
            den = den * denom(xi.clone() + yj.clone(), "x_i + y_j", opts)?;
        }
    }
    (vandermonde_product(x) * vandermonde_product(y)).try_div(&den)
}

fn staircase_ratio_base<S: Scalar>(k: usize, z: &[S], opts: &CheckOptions) -> Result<S> {
    if k > z.len() {
        return Err(Error::InvalidParameter(format!("need k <= m, got k={k}, m={}", z.len())));
    }
    denom(schur(&staircase(k), z)?, "s_δ(k)(z)", opts)
}

/// `det( s_{δ(k)}(x_i, y_j, z) / ((x_i+y_j) s_{δ(k)}(z)) )
///  = ∏_{i<j}(x_j−x_i)(y_j−y_i)/∏(x_i+y_j) · s_{δ(k)}(x, y, z)/s_{δ(k)}(z)`, with `k ≤ m = |z|`.
pub fn check_rational_schur_det<S: Scalar>(
    k: usize,
    x: &[S],
    y: &[S],
    zv: &[S],
    opts: &CheckOptions,
) -> Result<IdentityEvaluation<S>> {
    let n = x.len();
    ensure_len(y, n)?;
    let sz = staircase_ratio_base(k, zv, opts)?;
    let lam = staircase(k);
    let lhs = Matrix::try_from_fn(n, n, |i, j| {
        let d = denom(x[i].clone() + y[j].clone(), "x_i + y_j", opts)?;
        let s = schur(&lam, &concat(&[&[x[i].clone(), y[j].clone()], zv]))?;
        s.try_div(&(d * sz.clone()))
    })?
    .determinant()?;
    let rhs = cauchy_factor(x, y, opts)? * schur(&lam, &concat(&[x, y, zv]))?.try_div(&sz)?;
    IdentityEvaluation::compare("rational_schur_det", lhs, rhs, &opts.tol)
}

/// `Pf( (x_j−x_i)/(x_j+x_i) · s_{δ(k)}(x_i,x_j,z)/s_{δ(k)}(z) · s_{δ(l)}(x_i,x_j,w)/s_{δ(l)}(w) )
///  = ∏_{i<j}(x_j−x_i)/(x_j+x_i) · s_{δ(k)}(x,z)/s_{δ(k)}(z) · s_{δ(l)}(x,w)/s_{δ(l)}(w)`.
pub fn check_rational_schur_pf<S: Scalar>(
    k: usize,
    l: usize,
    x: &[S],
    zv: &[S],
    wv: &[S],
    opts: &CheckOptions,
) -> Result<IdentityEvaluation<S>> {
    even_half(x)?;
    let sz = staircase_ratio_base(k, zv, opts)?;
    let sw = staircase_ratio_base(l, wv, opts)?;
    let (lk, ll) = (staircase(k), staircase(l));
    let mut ratio_product = S::one();
    let a = SkewMatrix::try_from_upper(x.len(), |i, j| {
        let d = denom(x[j].clone() + x[i].clone(), "x_i + x_j", opts)?;
        let ratio = (x[j].clone() - x[i].clone()).try_div(&d)?;
        ratio_product = ratio_product.clone() * ratio.clone();
        let pair = [x[i].clone(), x[j].clone()];
        let fz = schur(&lk, &concat(&[&pair, zv]))?.try_div(&sz)?;
        let fw = schur(&ll, &concat(&[&pair, wv]))?.try_div(&sw)?;
        Ok(ratio * fz * fw)
    })?;
    let lhs = a.pfaffian()?;
    let rhs = ratio_product
        * schur(&lk, &concat(&[x, zv]))?.try_div(&sz)?
        * schur(&ll, &concat(&[x, wv]))?.try_div(&sw)?;
    IdentityEvaluation::compare("rational_schur_pf", lhs, rhs, &opts.tol)
}

/// `det( det V^{p+1,q+1}(x_i,y_j,z; a_i,b_j,c) / (y_j−x_i) )
///  = (−1)^{n(n−1)/2} / ∏(y_j−x_i) · det V^{p,q}(z;c)^{n−1} · det V^{n+p,n+q}(x,y,z; a,b,c)`.
#[allow(clippy::too_many_arguments)]
pub fn check_general_det<S: Scalar>(
    p: usize,
    q: usize,
    x: &[S],
    y: &[S],
    a: &[S],
    b: &[S],
    zv: &[S],
    c: &[S],
    opts: &CheckOptions,
) -> Result<IdentityEvaluation<S>> {
    let n = x.len();
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    for v in [y, a, b] {
        ensure_len(v, n)?;
    }
    for v in [zv, c] {
        ensure_len(v, p + q)?;
    }
    let mut diffs = Vec::with_capacity(n * n);
    for xi in x {
        for yj in y {
            diffs.push(denom(yj.clone() - xi.clone(), "y_j - x_i", opts)?);
        }
    }
    let lhs = Matrix::try_from_fn(n, n, |i, j| {
        let pts = concat(&[&[x[i].clone(), y[j].clone()], zv]);
        let wts = concat(&[&[a[i].clone(), b[j].clone()], c]);
        det_v(p + 1, q + 1, &pts, &wts)?.try_div(&diffs[i * n + j])
    })?
    .determinant()?;
    let sign = S::sign(n * (n - 1) / 2 % 2 == 1);
    let rhs = sign.try_div(&product(diffs))?
        * det_v(p, q, zv, c)?.powi((n - 1) as u32)
        * det_v(n + p, n + q, &concat(&[x, y, zv]), &concat(&[a, b, c]))?;
    IdentityEvaluation::compare("general_det", lhs, rhs, &opts.tol)
}

/// `Pf( det V^{p+1,q+1}(x_i,x_j,z; a_i,a_j,c) det V^{r+1,s+1}(x_i,x_j,w; b_i,b_j,d) / (x_j−x_i) )
///  = 1/∏_{i<j}(x_j−x_i) · det V^{p,q}(z;c)^{n−1} det V^{r,s}(w;d)^{n−1}
///    · det V^{n+p,n+q}(x,z; a,c) det V^{n+r,n+s}(x,w; b,d)`.
#[allow(clippy::too_many_arguments)]
pub fn check_general_pf<S: Scalar>(
    (p, q, r, s): (usize, usize, usize, usize),
    x: &[S],
    a: &[S],
    b: &[S],
    zv: &[S],
    c: &[S],
    wv: &[S],
    d: &[S],
    opts: &CheckOptions,
) -> Result<IdentityEvaluation<S>> {
    let n = even_half(x)?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    for v in [a, b] {
        ensure_len(v, 2 * n)?;
    }
    for v in [zv, c] {
        ensure_len(v, p + q)?;
    }
    for v in [wv, d] {
        ensure_len(v, r + s)?;
    }
    let mut diff_product = S::one();
    let m = SkewMatrix::try_from_upper(2 * n, |i, j| {
        let diff = denom(x[j].clone() - x[i].clone(), "x_j - x_i", opts)?;
        diff_product = diff_product.clone() * diff.clone();
        let pair = [x[i].clone(), x[j].clone()];
        let va = det_v(p + 1, q + 1, &concat(&[&pair, zv]), &concat(&[&[a[i].clone(), a[j].clone()], c]))?;
        let vb = det_v(r + 1, s + 1, &concat(&[&pair, wv]), &concat(&[&[b[i].clone(), b[j].clone()], d]))?;
        (va * vb).try_div(&diff)
    })?;
    let lhs = m.pfaffian()?;
    let e = (n - 1) as u32;
    let rhs = S::one().try_div(&diff_product)?
        * det_v(p, q, zv, c)?.powi(e)
        * det_v(r, s, wv, d)?.powi(e)
        * det_v(n + p, n + q, &concat(&[x, zv]), &concat(&[a, c]))?
        * det_v(n + r, n + s, &concat(&[x, wv]), &concat(&[b, d]))?;
    IdentityEvaluation::compare("general_pf", lhs, rhs, &opts.tol)
}

/// The `(p, q)` with `p + q = m` and `δ_{p+1,q+1} = δ_{p,q} = δ(k)`:
/// `((m−k)/2, (m+k)/2)` when `m ≡ k (mod 2)`, else `((m+k+1)/2, (m−k−1)/2)`.
pub fn specialization_pq(k: usize, m: usize) -> Result<(usize, usize)> {
    if k > m {
        return Err(Error::InvalidParameter(format!("need k <= m, got k={k}, m={m}")));
    }
    if (m + k).is_multiple_of(2) {
        Ok(((m - k) / 2, (m + k) / 2))
    } else {
        Ok(((m + k).div_ceil(2), (m - k - 1) / 2))
    }
}

/// Specializes the generalized Vandermonde determinant identity via
/// `x→x², y→y², z→z², a→x, b→y, c→z` with the parity-chosen `(p, q)` and
/// compares its right side, after removing the Vandermonde and sign factors,
/// with the right side of [`check_rational_schur_det`] on the same data.
///
/// Parts: the specialized determinant identity and the Schur determinant identity.
pub fn check_specialization_consistency<S: Scalar>(
    k: usize,
    m: usize,
    x: &[S],
    y: &[S],
    zv: &[S],
    opts: &CheckOptions,
) -> Result<IdentityEvaluation<S>> {
    ensure_len(zv, m)?;
    let n = x.len();
    ensure_len(y, n)?;
    let (p, q) = specialization_pq(k, m)?;
    let sq = |v: &[S]| v.iter().map(|t| t.clone() * t.clone()).collect::<Vec<S>>();
    let general = check_general_det(p, q, &sq(x), &sq(y), x, y, &sq(zv), zv, opts)?;
    let rational = check_rational_schur_det(k, x, y, zv, opts)?;

    // general lhs = ε_{p+1,q+1}^n Δ(z)^n ∏_{i,l}(z_l−x_i)(z_l−y_i) · det(s(x_i,y_j,z)/(x_i+y_j))
    let mut cross = S::one();
    for zl in zv {
        for v in x.iter().chain(y) {
            cross = cross * denom(zl.clone() - v.clone(), "z_l - x_i", opts)?;
        }
    }
    let sz = schur(&staircase(k), zv)?;
    let eps: Sign = epsilon_pq(p + 1, q + 1).pow(n);
    let factor = eps.to_scalar::<S>()
        * vandermonde_product(zv).powi(n as u32)
        * cross
        * sz.powi(n as u32);
    let predicted = general.rhs.clone().try_div(&denom(factor, "specialization factor", opts)?)?;
    Ok(IdentityEvaluation::compare("specialization_consistency", predicted, rational.rhs.clone(), &opts.tol)?
        .with_parts(vec![general, rational]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::{check_cauchy, check_schur_pfaffian};
    use crate::scalar::{rat, Exact};
    use crate::symfunc::delta_pq;

    fn xs(v: &[(i64, i64)]) -> Vec<Exact> {
        v.iter().map(|&(a, b)| rat(a, b)).collect()
    }

    fn ex() -> CheckOptions {
        CheckOptions::exact()
    }

    #[test]
    fn parity_rule_produces_staircase_k() {
        for m in 0..8 {
            for k in 0..=m {
                let (p, q) = specialization_pq(k, m).unwrap();
                assert_eq!(p + q, m);
                assert_eq!(delta_pq(p + 1, q + 1), staircase(k), "k={k} m={m}");
                assert_eq!(delta_pq(p, q), staircase(k));
                for n in 1..4 {
                    assert_eq!(delta_pq(n + p, n + q), staircase(k));
                }
            }
        }
        assert!(specialization_pq(3, 2).is_err());
    }

    #[test]
    fn rational_schur_det_small_cases() {
        let x = xs(&[(1, 2), (7, 3)]);
        let y = xs(&[(2, 1), (-1, 5)]);
        let z = xs(&[(3, 1), (-4, 3)]);
        let k0 = check_rational_schur_det(0, &x, &y, &z, &ex()).unwrap();
        let c = check_cauchy(&x, &y, &ex()).unwrap();
        assert_eq!((k0.lhs.clone(), k0.passed), (c.lhs, c.passed));
        // k = m = n = 1: both sides are (x+y+z)/((x+y) z)
        let ev = check_rational_schur_det(1, &x[..1], &y[..1], &z[..1], &ex()).unwrap();
        assert_eq!(ev.lhs, rat(1 + 4 + 6, 2) / (rat(5, 2) * rat(3, 1)));
        assert!(ev.passed);
        assert!(check_rational_schur_det(2, &x, &y, &z, &ex()).unwrap().passed);
        assert!(check_rational_schur_det(3, &x, &y, &z, &ex()).is_err());
    }

    #[test]
    fn rational_schur_pf_small_cases() {
        let x = xs(&[(1, 2), (7, 3), (-5, 4), (5, 1)]);
        let z = xs(&[(3, 1), (-4, 3)]);
        let w = xs(&[(2, 5)]);
        let k0 = check_rational_schur_pf(0, 0, &x, &z, &w, &ex()).unwrap();
        let s = check_schur_pfaffian(&x, &ex()).unwrap();
        assert_eq!((k0.lhs.clone(), k0.passed), (s.lhs, s.passed));
        assert!(check_rational_schur_pf(1, 1, &x[..2], &z[..1], &w, &ex()).unwrap().passed);
        assert!(check_rational_schur_pf(2, 1, &x, &z, &w, &ex()).unwrap().passed);
    }

    #[test]
    fn general_det_cases() {
        let x = xs(&[(1, 2), (7, 3)]);
        let y = xs(&[(2, 1), (-1, 5)]);
        let a = xs(&[(3, 4), (5, 1)]);
        let b = xs(&[(-2, 3), (1, 1)]);
        let z = xs(&[(3, 1), (-4, 3)]);
        let c = xs(&[(6, 5), (-1, 2)]);
        let ev = check_general_det(0, 0, &x[..1], &y[..1], &a[..1], &b[..1], &[], &[], &ex()).unwrap();
        assert_eq!(ev.lhs, (b[0].clone() - a[0].clone()) / (y[0].clone() - x[0].clone()));
        assert!(ev.passed);
        assert!(check_general_det(1, 0, &x[..1], &y[..1], &a[..1], &b[..1], &z[..1], &c[..1], &ex()).unwrap().passed);
        assert!(check_general_det(1, 1, &x, &y, &a, &b, &z, &c, &ex()).unwrap().passed);
        assert!(check_general_det(1, 1, &x, &y, &a, &b, &z[..1], &c, &ex()).is_err());
    }

    #[test]
    fn general_pf_cases() {
        let x = xs(&[(1, 2), (7, 3), (-5, 4), (3, 1)]);
        let a = xs(&[(3, 4), (5, 1), (2, 3), (-1, 1)]);
        let b = xs(&[(-2, 3), (1, 1), (4, 1), (1, 5)]);
        let z = xs(&[(3, 1), (-4, 3)]);
        let c = xs(&[(6, 5), (-1, 2)]);
        let w = xs(&[(9, 2), (1, 3)]);
        let d = xs(&[(2, 1), (-3, 5)]);
        let ev = check_general_pf((0, 0, 0, 0), &x[..2], &a[..2], &b[..2], &[], &[], &[], &[], &ex()).unwrap();
        assert!(ev.passed);
        let ev = check_general_pf((1, 0, 0, 1), &x[..2], &a[..2], &b[..2], &z[..1], &c[..1], &w[..1], &d[..1], &ex())
            .unwrap();
        assert!(ev.passed);
        let ev = check_general_pf((1, 1, 1, 1), &x, &a, &b, &z, &c, &w, &d, &ex()).unwrap();
        assert!(ev.passed);
    }

    #[test]
    fn specialization_cases() {
        let x = xs(&[(1, 2), (7, 3)]);
        let y = xs(&[(2, 1), (-1, 5)]);
        let z = xs(&[(3, 1), (-4, 3), (5, 2)]);
        assert!(check_specialization_consistency(0, 2, &x[..1], &y[..1], &z[..2], &ex()).unwrap().passed);
        assert!(check_specialization_consistency(1, 1, &x[..1], &y[..1], &z[..1], &ex()).unwrap().passed);
        let ev = check_specialization_consistency(2, 2, &x, &y, &z[..2], &ex()).unwrap();
        assert!(ev.passed);
        assert_eq!(ev.parts.len(), 2);
        assert!(check_specialization_consistency(1, 3, &x, &y, &z, &ex()).unwrap().passed);
    }
}
