use num_rational::BigRational;

use super::{br, denom, ensure_len, even_half, CheckOptions};
use crate::bracket::{riemann_terms, Bracket, BracketFunction};
use crate::error::{Error, Result};
use crate::evaluation::IdentityEvaluation;
use crate::linalg::{Matrix, SkewMatrix};
use crate::scalar::{product, sum, Exact, Scalar};

/// Riemann relation as an identity: `T₁ + T₃ = T₂`.
pub fn check_riemann<S: Scalar, B: Bracket<S>>(
    f: &B,
    x: &S,
    y: &S,
    u: &S,
    v: &S,
    opts: &CheckOptions,
) -> Result<IdentityEvaluation<S>> {
    let [t1, t2, t3] = riemann_terms(f, x, y, u, v)?;
    IdentityEvaluation::compare("riemann", t1 + t3, t2, &opts.tol)
}

/// `det([z+x_i+y_j] / ([z][x_i+y_j])) = ∏_{i<j}[x_j−x_i][y_j−y_i] / ∏[x_i+y_j] · [z+Σx+Σy]/[z]`.
pub fn check_frobenius<S: Scalar, B: Bracket<S>>(
    f: &B,
    x: &[S],
    y: &[S],
    z: &S,
    opts: &CheckOptions,
) -> Result<IdentityEvaluation<S>> {
    let n = x.len();
    ensure_len(y, n)?;
    let bz = denom(f.eval(z)?, "[z]", opts)?;
    let mut bxy = Vec::with_capacity(n * n);
    for xi in x {
        for yj in y {
            bxy.push(denom(br(f, &[xi, yj])?, "[x_i + y_j]", opts)?);
        }
    }
    let m = Matrix::try_from_fn(n, n, |i, j| {
        br(f, &[z, &x[i], &y[j]])?.try_div(&(bz.clone() * bxy[i * n + j].clone()))
    })?;
    let lhs = m.determinant()?;

    let mut num = S::one();
    for i in 0..n {
        for j in i + 1..n {
            num = num
                * f.eval(&(x[j].clone() - x[i].clone()))?
                * f.eval(&(y[j].clone() - y[i].clone()))?;
        }
    }
    let total = z.clone() + sum(x.iter().cloned()) + sum(y.iter().cloned());
    let rhs = num.try_div(&product(bxy))? * f.eval(&total)?.try_div(&bz)?;
    IdentityEvaluation::compare("frobenius", lhs, rhs, &opts.tol)
}

/// `det(1/(x_i+y_j)) = ∏_{i<j}(x_j−x_i)(y_j−y_i) / ∏(x_i+y_j)`.
pub fn check_cauchy<S: Scalar>(x: &[S], y: &[S], opts: &CheckOptions) -> Result<IdentityEvaluation<S>> {
    let n = x.len();
    ensure_len(y, n)?;
    let mut sums = Vec::with_capacity(n * n);
    for xi in x {
        for yj in y {
            sums.push(denom(xi.clone() + yj.clone(), "x_i + y_j", opts)?);
        }
    }
    let lhs = Matrix::try_from_fn(n, n, |i, j| S::one().try_div(&sums[i * n + j]))?.determinant()?;
    let mut num = S::one();
    for i in 0..n {
        for j in i + 1..n {
            num = num * (x[j].clone() - x[i].clone()) * (y[j].clone() - y[i].clone());
        }
    }
    let rhs = num.try_div(&product(sums))?;
    IdentityEvaluation::compare("cauchy", lhs, rhs, &opts.tol)
}

/// `Pf((x_j−x_i)/(x_j+x_i)) = ∏_{i<j} (x_j−x_i)/(x_j+x_i)`.
pub fn check_schur_pfaffian<S: Scalar>(x: &[S], opts: &CheckOptions) -> Result<IdentityEvaluation<S>> {
    even_half(x)?;
    let entry = |i: usize, j: usize| -> Result<S> {
        let d = denom(x[j].clone() + x[i].clone(), "x_i + x_j", opts)?;
        (x[j].clone() - x[i].clone()).try_div(&d)
    };
    let a = SkewMatrix::try_from_upper(x.len(), entry)?;
    let lhs = a.pfaffian()?;
    let mut rhs = S::one();
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            rhs = rhs * a.get(i, j).clone();
        }
    }
    IdentityEvaluation::compare("schur_pfaffian", lhs, rhs, &opts.tol)
}

/// The elliptic Pfaffian identity:
/// `Pf([x_j−x_i]/[x_j+x_i] · [z+x_i+x_j]/[z] · [w+x_i+x_j]/[w])
///  = ∏_{i<j}[x_j−x_i]/[x_j+x_i] · [z+Σx]/[z] · [w+Σx]/[w]`.
pub fn check_main<S: Scalar, B: Bracket<S>>(
    f: &B,
    x: &[S],
    z: &S,
    w: &S,
    opts: &CheckOptions,
) -> Result<IdentityEvaluation<S>> {
    even_half(x)?;
    let bz = denom(f.eval(z)?, "[z]", opts)?;
    let bw = denom(f.eval(w)?, "[w]", opts)?;
    let mut ratio_product = S::one();
    let a = SkewMatrix::try_from_upper(x.len(), |i, j| {
        let d = denom(br(f, &[&x[j], &x[i]])?, "[x_i + x_j]", opts)?;
        let ratio = f.eval(&(x[j].clone() - x[i].clone()))?.try_div(&d)?;
        ratio_product = ratio_product.clone() * ratio.clone();
        let zf = br(f, &[z, &x[i], &x[j]])?.try_div(&bz)?;
        let wf = br(f, &[w, &x[i], &x[j]])?.try_div(&bw)?;
        Ok(ratio * zf * wf)
    })?;
    let lhs = a.pfaffian()?;
    let sx = sum(x.iter().cloned());
    let rhs = ratio_product
        * br(f, &[z, &sx])?.try_div(&bz)?
        * br(f, &[w, &sx])?.try_div(&bw)?;
    IdentityEvaluation::compare("main", lhs, rhs, &opts.tol)
}

/// The four-term identity of the induction step, with `a..d = x_1..x_4` and
/// `s = Σ_{j≥5} x_j`.
///
/// The evaluation carries four parts: the Riemann-relation consequences used
/// to reduce the left side (stated for `z+s`, `w+s` in place of `z`, `w`).
#[allow(clippy::too_many_arguments)]
pub fn check_key_identity<S: Scalar, B: Bracket<S>>(
    f: &B,
    a: &S,
    b: &S,
    c: &S,
    d: &S,
    s: &S,
    z: &S,
    w: &S,
    opts: &CheckOptions,
) -> Result<IdentityEvaluation<S>> {
    let e = |v: S| f.eval(&v);
    let (a, b, c, d, s) = (a.clone(), b.clone(), c.clone(), d.clone(), s.clone());
    let plus = |u: &S, v: &S| e(u.clone() + v.clone());
    let minus = |u: &S, v: &S| e(u.clone() - v.clone());
    let shifted = |base: &S, u: &S, v: &S| e(base.clone() + u.clone() + v.clone() + s.clone());

    let t1 = minus(&b, &a)? * minus(&d, &c)? * plus(&c, &a)? * plus(&d, &a)? * plus(&c, &b)? * plus(&d, &b)?
        * shifted(z, &a, &b)? * shifted(z, &c, &d)? * shifted(w, &a, &b)? * shifted(w, &c, &d)?;
    let t2 = minus(&c, &a)? * minus(&d, &b)? * plus(&b, &a)? * plus(&d, &a)? * plus(&c, &b)? * plus(&d, &c)?
        * shifted(z, &a, &c)? * shifted(z, &b, &d)? * shifted(w, &a, &c)? * shifted(w, &b, &d)?;
    let t3 = minus(&d, &a)? * minus(&c, &b)? * plus(&b, &a)? * plus(&c, &a)? * plus(&d, &b)? * plus(&d, &c)?
        * shifted(z, &a, &d)? * shifted(z, &b, &c)? * shifted(w, &a, &d)? * shifted(w, &b, &c)?;
    let lhs = t1 - t2 + t3;

    let abcd = a.clone() + b.clone() + c.clone() + d.clone();
    let diffs = minus(&b, &a)? * minus(&c, &a)? * minus(&d, &a)? * minus(&c, &b)? * minus(&d, &b)? * minus(&d, &c)?;
    let rhs = diffs
        * shifted(z, &abcd, &S::zero())?
        * e(z.clone() + s.clone())?
        * shifted(w, &abcd, &S::zero())?
        * e(w.clone() + s.clone())?;

    let zs = z.clone() + s.clone();
    let ws = w.clone() + s.clone();
    let parts = key_reduction_steps(f, &a, &b, &c, &d, &zs, &ws, opts)?;
    Ok(IdentityEvaluation::compare("key_identity", lhs, rhs, &opts.tol)?.with_parts(parts))
}

/// The three Riemann-relation reductions (the second one also with `c ↔ d`).
#[allow(clippy::too_many_arguments)]
fn key_reduction_steps<S: Scalar, B: Bracket<S>>(
    f: &B,
    a: &S,
    b: &S,
    c: &S,
    d: &S,
    z: &S,
    w: &S,
    opts: &CheckOptions,
) -> Result<Vec<IdentityEvaluation<S>>> {
    let e = |v: S| f.eval(&v);
    let minus = |u: &S, v: &S| e(u.clone() - v.clone());
    let plus = |u: &S, v: &S| e(u.clone() + v.clone());
    let at = |base: &S, u: &S, v: &S| e(base.clone() + u.clone() + v.clone());
    let abcd = a.clone() + b.clone() + c.clone() + d.clone();

    // [b−a][z+a+b][d−c][z+c+d] = [c−a][z+a+c][d−b][z+b+d] − [d−a][z+a+d][c−b][z+b+c]
    let first = IdentityEvaluation::compare(
        "key_step_z_pairs",
        minus(b, a)? * at(z, a, b)? * minus(d, c)? * at(z, c, d)?,
        minus(c, a)? * at(z, a, c)? * minus(d, b)? * at(z, b, d)?
            - minus(d, a)? * at(z, a, d)? * minus(c, b)? * at(z, b, c)?,
        &opts.tol,
    )?;
    let w_step = |c: &S, d: &S, name: &str| -> Result<IdentityEvaluation<S>> {
        // [c+a][d+b][w+a+b][w+c+d] − [b+a][d+c][w+a+c][w+b+d] = [d−a][c−b][w][w+a+b+c+d]
        IdentityEvaluation::compare(
            name,
            plus(c, a)? * plus(d, b)? * at(w, a, b)? * at(w, c, d)?
                - plus(b, a)? * plus(d, c)? * at(w, a, c)? * at(w, b, d)?,
            minus(d, a)? * minus(c, b)? * e(w.clone())? * plus(w, &abcd)?,
            &opts.tol,
        )
    };
    let second = w_step(c, d, "key_step_w")?;
    let second_swapped = w_step(d, c, "key_step_w_swapped")?;
    // [d+a][c+b][z+a+c][z+b+d] − [c+a][d+b][z+a+d][z+b+c] = [b−a][d−c][z][z+a+b+c+d]
    let third = IdentityEvaluation::compare(
        "key_step_z",
        plus(d, a)? * plus(c, b)? * at(z, a, c)? * at(z, b, d)?
            - plus(c, a)? * plus(d, b)? * at(z, a, d)? * at(z, b, c)?,
        minus(b, a)? * minus(d, c)? * e(z.clone())? * plus(z, &abcd)?,
        &opts.tol,
    )?;
    Ok(vec![first, second, second_swapped, third])
}

/// One point of the `z → ∞` degeneration of the rational Frobenius identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitSample {
    pub z: f64,
    /// `|lhs_frobenius(z) − lhs_cauchy|`
    pub residual: f64,
    /// `residual · z`, constant when the gap decays as `O(1/z)`.
    pub scaled: f64,
}

/// Gap between the rational Frobenius determinant at `z = Z` and the Cauchy
/// determinant, for each `Z`.
pub fn check_frobenius_limit_degeneration(
    x: &[Exact],
    y: &[Exact],
    z_magnitudes: &[f64],
) -> Result<Vec<LimitSample>> {
    let opts = CheckOptions::exact();
    let cauchy = check_cauchy(x, y, &opts)?;
    let f = BracketFunction::rational();
    z_magnitudes
        .iter()
        .map(|&zf| {
            let z = BigRational::from_float(zf).ok_or(Error::NonFinite)?;
            let frob = check_frobenius(&f, x, y, &z, &opts)?;
            let gap = frob.lhs - cauchy.lhs.clone();
            let residual = gap.modulus();
            Ok(LimitSample { z: zf, residual, scaled: residual * zf })
        })
        .collect()
}
