//! Trigonometric-case identities in multiplicative variables, the Okada
//! determinant and Pfaffian they follow from, and the two block-determinant
//! evaluations used along the way.

use super::{denom, ensure_len, even_half, CheckOptions};
use crate::error::Result;
use crate::evaluation::IdentityEvaluation;
use crate::linalg::{Matrix, SkewMatrix};
use crate::scalar::{product, Scalar};
use crate::symfunc::{d_poly, vandermonde_product, w_matrix};

fn one_minus<S: Scalar>(v: S) -> S {
    S::one() - v
}

fn kernel_product<S: Scalar>(x: &[S], y: &[S], opts: &CheckOptions) -> Result<S> {
    let mut den = S::one();
    for xi in x {
        for yj in y {
            den = den * denom(one_minus(xi.clone() * yj.clone()), "1 - x_i y_j", opts)?;
        }
    }
    Ok(den)
}

/// `det((1 − z x_i y_j)/(1 − x_i y_j))
///  = (1−z)^{n−1}(1 − z∏x∏y) Δ(x)Δ(y)/∏(1 − x_i y_j)`.
pub fn check_trig_det<S: Scalar>(x: &[S], y: &[S], z: &S, opts: &CheckOptions) -> Result<IdentityEvaluation<S>> {
    let n = x.len();
    ensure_len(y, n)?;
    let den = kernel_product(x, y, opts)?;
    let lhs = Matrix::try_from_fn(n, n, |i, j| {
        let xy = x[i].clone() * y[j].clone();
        one_minus(z.clone() * xy.clone()).try_div(&one_minus(xy))
    })?
    .determinant()?;
    let all = product(x.iter().chain(y).cloned());
    let rhs = (one_minus(z.clone()).powi(n.saturating_sub(1) as u32)
        * one_minus(z.clone() * all)
        * vandermonde_product(x)
        * vandermonde_product(y))
    .try_div(&den)?;
    IdentityEvaluation::compare("trig_det", lhs, rhs, &opts.tol)
}

/// `Pf((x_j−x_i)(1 − z x_i x_j)(1 − w x_i x_j)/(1 − x_i x_j))
///  = (1−z)^{n−1}(1−w)^{n−1}(1 − z∏x)(1 − w∏x) ∏_{i<j}(x_j−x_i)/(1 − x_i x_j)`.
pub fn check_trig_pf<S: Scalar>(x: &[S], z: &S, w: &S, opts: &CheckOptions) -> Result<IdentityEvaluation<S>> {
    let n = even_half(x)?;
    let mut ratio_product = S::one();
    let a = SkewMatrix::try_from_upper(x.len(), |i, j| {
        let xx = x[i].clone() * x[j].clone();
        let d = denom(one_minus(xx.clone()), "1 - x_i x_j", opts)?;
        let ratio = (x[j].clone() - x[i].clone()).try_div(&d)?;
        ratio_product = ratio_product.clone() * ratio.clone();
        Ok(ratio * one_minus(z.clone() * xx.clone()) * one_minus(w.clone() * xx))
    })?;
    let lhs = a.pfaffian()?;
    let e = n.saturating_sub(1) as u32;
    let all = product(x.iter().cloned());
    let rhs = one_minus(z.clone()).powi(e)
        * one_minus(w.clone()).powi(e)
        * one_minus(z.clone() * all.clone())
        * one_minus(w.clone() * all)
        * ratio_product;
    IdentityEvaluation::compare("trig_pf", lhs, rhs, &opts.tol)
}

/// `2n × 2n` matrix whose first `n` rows are `(t_i x_i^{n−1+s−k})_k | (x_i^{n−1−k})_k`
/// and last `n` rows are `(y_i^k)_k | (u_i y_i^{k+s})_k`, for a shift `s ∈ {0, 1}`.
fn block_matrix<S: Scalar>(x: &[S], y: &[S], t: &[S], u: &[S], shift: u32) -> Matrix<S> {
    let n = x.len();
    Matrix::from_fn(2 * n, 2 * n, |r, c| {
        let (k, right) = (c % n, c >= n);
        let k32 = k as u32;
        let m = (n - 1) as u32;
        if r < n {
            let i = r;
            if right {
                x[i].powi(m - k32)
            } else {
                t[i].clone() * x[i].powi(m + shift - k32)
            }
        } else {
            let i = r - n;
            if right {
                u[i].clone() * y[i].powi(k32 + shift)
            } else {
                y[i].powi(k32)
            }
        }
    })
}

fn sign_n_n1<S: Scalar>(n: usize) -> S {
    S::sign((n * (n + 1) / 2) % 2 == 1)
}

/// `det((1 − a_i b_j)/(1 − x_i y_j)) = (−1)^{n(n+1)/2}/∏(1 − x_i y_j) · det B`, where
/// `B` has rows `(a_i x_i^{n−1}, …, a_i, x_i^{n−1}, …, 1)` and `(1, …, y_i^{n−1}, b_i, …, b_i y_i^{n−1})`.
pub fn check_okada_det<S: Scalar>(
    x: &[S],
    y: &[S],
    a: &[S],
    b: &[S],
    opts: &CheckOptions,
) -> Result<IdentityEvaluation<S>> {
    let n = x.len();
    for v in [y, a, b] {
        ensure_len(v, n)?;
    }
    let den = kernel_product(x, y, opts)?;
    let lhs = Matrix::try_from_fn(n, n, |i, j| {
        one_minus(a[i].clone() * b[j].clone()).try_div(&one_minus(x[i].clone() * y[j].clone()))
    })?
    .determinant()?;
    let rhs = (sign_n_n1::<S>(n) * block_matrix(x, y, a, b, 0).determinant()?).try_div(&den)?;
    IdentityEvaluation::compare("okada_det", lhs, rhs, &opts.tol)
}

/// `Pf(det W²(x_i,x_j; a_i,a_j) det W²(x_i,x_j; b_i,b_j)/((x_j−x_i)(1 − x_i x_j)))
///  = det W^{2n}(x; a) det W^{2n}(x; b) / ∏_{i<j}(x_j−x_i)(1 − x_i x_j)`.
pub fn check_okada_pf<S: Scalar>(x: &[S], a: &[S], b: &[S], opts: &CheckOptions) -> Result<IdentityEvaluation<S>> {
    even_half(x)?;
    let m = x.len();
    for v in [a, b] {
        ensure_len(v, m)?;
    }
    let mut den = S::one();
    let pf = SkewMatrix::try_from_upper(m, |i, j| {
        let d = denom(x[j].clone() - x[i].clone(), "x_j - x_i", opts)?
            * denom(one_minus(x[i].clone() * x[j].clone()), "1 - x_i x_j", opts)?;
        den = den.clone() * d.clone();
        let pair = [x[i].clone(), x[j].clone()];
        let wa = w_matrix(2, &pair, &[a[i].clone(), a[j].clone()])?.determinant()?;
        let wb = w_matrix(2, &pair, &[b[i].clone(), b[j].clone()])?.determinant()?;
        (wa * wb).try_div(&d)
    })?;
    let lhs = pf.pfaffian()?;
    let rhs = (w_matrix(m, x, a)?.determinant()? * w_matrix(m, x, b)?.determinant()?).try_div(&den)?;
    IdentityEvaluation::compare("okada_pf", lhs, rhs, &opts.tol)
}

/// `det D(x, y; t) = (−1)^{n(n+1)/2}(1−t²)^{n−1}(1 − t²∏x∏y) Δ(x)Δ(y)`, where `D` has rows
/// `(t x_i^n, …, t x_i, x_i^{n−1}, …, 1)` and `(1, …, y_i^{n−1}, t y_i, …, t y_i^n)`.
pub fn check_det1<S: Scalar>(x: &[S], y: &[S], t: &S, opts: &CheckOptions) -> Result<IdentityEvaluation<S>> {
    let n = x.len();
    ensure_len(y, n)?;
    let ts = vec![t.clone(); n];
    let lhs = block_matrix(x, y, &ts, &ts, 1).determinant()?;
    let t2 = t.clone() * t.clone();
    let all = product(x.iter().chain(y).cloned());
    let rhs = sign_n_n1::<S>(n)
        * one_minus(t2.clone()).powi(n.saturating_sub(1) as u32)
        * one_minus(t2 * all)
        * vandermonde_product(x)
        * vandermonde_product(y);
    IdentityEvaluation::compare("det1", lhs, rhs, &opts.tol)
}

/// Both evaluations `det W^n(x; t,…,t) = d_n(t) Δ(x)` and
/// `det W^n(x; t x_1,…,t x_n) = d_{n−1}(t)(1 − (−1)^n t∏x) Δ(x)`.
///
/// Parts: the constant-weight evaluation, then the proportional-weight one.
pub fn check_det2<S: Scalar>(x: &[S], t: &S, opts: &CheckOptions) -> Result<IdentityEvaluation<S>> {
    let n = x.len();
    let delta = vandermonde_product(x);
    let constant = {
        let lhs = w_matrix(n, x, &vec![t.clone(); n])?.determinant()?;
        let rhs = d_poly(n, t) * delta.clone();
        IdentityEvaluation::compare("det2_constant", lhs, rhs, &opts.tol)?
    };
    let proportional = {
        let a: Vec<S> = x.iter().map(|xi| t.clone() * xi.clone()).collect();
        let lhs = w_matrix(n, x, &a)?.determinant()?;
        let signed_t = if n.is_multiple_of(2) { t.clone() } else { S::zero() - t.clone() };
        let rhs = d_poly(n.saturating_sub(1), t) * one_minus(signed_t * product(x.iter().cloned())) * delta;
        IdentityEvaluation::compare("det2_proportional", lhs, rhs, &opts.tol)?
    };
    let mut out = IdentityEvaluation::compare("det2", constant.lhs.clone(), constant.rhs.clone(), &opts.tol)?
        .with_parts(vec![constant, proportional]);
    out.identity_name = "det2".into();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Exact};

    fn xs(v: &[(i64, i64)]) -> Vec<Exact> {
        v.iter().map(|&(a, b)| rat(a, b)).collect()
    }

    fn ex() -> CheckOptions {
        CheckOptions::exact()
    }

    #[test]
    fn trig_det_cases() {
        let x = xs(&[(1, 2), (7, 3)]);
        let y = xs(&[(3, 1), (-1, 5)]);
        let z = rat(3, 7);
        // x₁y₁ = −1/10
        let ev = check_trig_det(&x[..1], &y[1..], &z, &ex()).unwrap();
        assert_eq!(ev.lhs, (rat(1, 1) + rat(3, 70)) / rat(11, 10));
        assert!(ev.passed);
        let ev = check_trig_det(&x, &y, &rat(1, 1), &ex()).unwrap();
        assert!(ev.lhs.is_zero() && ev.passed);
        assert!(check_trig_det(&x, &y, &z, &ex()).unwrap().passed);
        assert!(check_trig_det(&x, &[rat(2, 1), rat(5, 1)], &z, &ex()).is_err());
    }

    #[test]
    fn trig_pf_cases() {
        let x = xs(&[(1, 2), (7, 3), (-5, 4), (3, 1)]);
        let (z, w) = (rat(3, 7), rat(-2, 5));
        assert!(check_trig_pf(&x[..2], &z, &w, &ex()).unwrap().passed);
        let ev = check_trig_pf(&x, &rat(1, 1), &rat(1, 1), &ex()).unwrap();
        assert!(ev.lhs.is_zero() && ev.passed);
        assert!(check_trig_pf(&x, &z, &w, &ex()).unwrap().passed);
    }

    #[test]
    fn okada_det_cases() {
        let x = xs(&[(1, 2), (7, 3)]);
        let y = xs(&[(3, 1), (-1, 5)]);
        let a = xs(&[(3, 4), (5, 1)]);
        let b = xs(&[(-2, 3), (1, 1)]);
        let ev = check_okada_det(&x[..1], &y[..1], &a[..1], &b[..1], &ex()).unwrap();
        let expected = (Exact::one() - a[0].clone() * b[0].clone()) / (Exact::one() - x[0].clone() * y[0].clone());
        assert_eq!((ev.lhs.clone(), ev.rhs.clone()), (expected.clone(), expected));
        let zero = vec![Exact::zero(); 2];
        assert!(check_okada_det(&x, &y, &zero, &zero, &ex()).unwrap().passed);
        assert!(check_okada_det(&x, &y, &a, &b, &ex()).unwrap().passed);
    }

    #[test]
    fn okada_pf_cases() {
        let x = xs(&[(1, 2), (7, 3), (-5, 4), (3, 1)]);
        let a = xs(&[(3, 4), (5, 1), (2, 3), (-1, 1)]);
        let b = xs(&[(-2, 3), (1, 1), (4, 1), (1, 5)]);
        assert!(check_okada_pf(&x[..2], &a[..2], &b[..2], &ex()).unwrap().passed);
        assert!(check_okada_pf(&x, &a, &a, &ex()).unwrap().passed);
        assert!(check_okada_pf(&x, &a, &b, &ex()).unwrap().passed);
    }

    #[test]
    fn det1_cases() {
        let x = xs(&[(1, 2), (7, 3), (-5, 4)]);
        let y = xs(&[(2, 1), (-1, 5), (4, 3)]);
        let t = rat(3, 7);
        let ev = check_det1(&x[..1], &y[..1], &t, &ex()).unwrap();
        assert_eq!(ev.lhs, t.clone() * t.clone() * x[0].clone() * y[0].clone() - Exact::one());
        assert!(ev.passed);
        let ev = check_det1(&x[..2], &y[..2], &rat(1, 1), &ex()).unwrap();
        assert!(ev.lhs.is_zero() && ev.passed);
        assert!(check_det1(&x[..2], &y[..2], &t, &ex()).unwrap().passed);
        assert!(check_det1(&x, &y, &t, &ex()).unwrap().passed);
    }

    #[test]
    fn det2_cases() {
        let x = xs(&[(1, 2), (7, 3), (-5, 4), (3, 1), (2, 9)]);
        let t = rat(3, 7);
        let ev = check_det2(&x[..1], &t, &ex()).unwrap();
        assert_eq!(ev.parts[0].lhs, rat(10, 7));
        assert_eq!(ev.parts[1].lhs, Exact::one() + t.clone() * x[0].clone());
        assert!(ev.passed);
        let ev = check_det2(&x[..3], &rat(1, 1), &ex()).unwrap();
        assert!(ev.parts[0].lhs.is_zero() && ev.passed);
        for n in 2..=5 {
            assert!(check_det2(&x[..n], &t, &ex()).unwrap().passed, "n={n}");
        }
    }
}
