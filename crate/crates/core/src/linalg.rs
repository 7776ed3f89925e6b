//! Dense determinants and Pfaffians over any [`Scalar`] field, and the
//! Pfaffian Desnanot–Jacobi relation.

use crate::error::{Error, Result};
use crate::evaluation::IdentityEvaluation;
use crate::scalar::{near_equal, Scalar, Tolerance};

/// Largest dimension accepted by [`SkewMatrix::pfaffian_oracle`].
pub const ORACLE_MAX_DIM: usize = 12;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn new(n_rows: usize, n_cols: usize, entries: Vec<S>) -> Result<Self> {
        if entries.len() != n_rows * n_cols {
            return Err(Error::DimensionMismatch {
                expected: n_rows * n_cols,
                got: entries.len(),
            });
        }
        Ok(Self { n_rows, n_cols, entries })
    }

    pub fn from_fn(n_rows: usize, n_cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for i in 0..n_rows {
            for j in 0..n_cols {
                entries.push(f(i, j));
            }
        }
        Self { n_rows, n_cols, entries }
    }

    pub fn try_from_fn(
        n_rows: usize,
        n_cols: usize,
        mut f: impl FnMut(usize, usize) -> Result<S>,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for i in 0..n_rows {
            for j in 0..n_cols {
                entries.push(f(i, j)?);
            }
        }
        Ok(Self { n_rows, n_cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            if row.len() != n_cols {
                return Err(Error::DimensionMismatch { expected: n_cols, got: row.len() });
            }
            entries.extend(row);
        }
        Ok(Self { n_rows, n_cols, entries })
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.n_cols + j]
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.entries[i * self.n_cols..(i + 1) * self.n_cols]
    }

    /// Determinant by Gaussian elimination. The 0×0 determinant is 1.
    ///
    /// Exact fields pivot on the first nonzero entry, approximate fields on
    /// the entry of largest modulus.
    pub fn determinant(&self) -> Result<S> {
        if self.n_rows != self.n_cols {
            return Err(Error::NotSquare { rows: self.n_rows, cols: self.n_cols });
        }
        let n = self.n_rows;
        let mut a = self.entries.clone();
        let mut det = S::one();
        for k in 0..n {
            let Some(p) = select_pivot((k..n).map(|i| &a[i * n + k])) else {
                return Ok(S::zero());
            };
            let p = p + k;
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                det = -det;
            }
            let pivot = a[k * n + k].clone();
            det = det * pivot.clone();
            for i in k + 1..n {
                if a[i * n + k].is_zero() {
                    continue;
                }
                let factor = a[i * n + k].try_div(&pivot)?;
                for j in k + 1..n {
                    let t = factor.clone() * a[k * n + j].clone();
                    a[i * n + j] = a[i * n + j].clone() - t;
                }
            }
        }
        Ok(det)
    }
}

/// Position of the pivot among `candidates`, or `None` when all are zero.
fn select_pivot<'a, S: Scalar>(candidates: impl Iterator<Item = &'a S>) -> Option<usize> {
    if S::EXACT {
        let mut candidates = candidates;
        candidates.position(|v| !v.is_zero())
    } else {
        let mut best: Option<(usize, f64)> = None;
        for (i, v) in candidates.enumerate() {
            let m = v.modulus();
            if m > 0.0 && best.is_none_or(|(_, b)| m > b) {
                best = Some((i, m));
            }
        }
        best.map(|(i, _)| i)
    }
}

/// Square skew-symmetric matrix: zero diagonal, `A[j][i] = -A[i][j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewMatrix<S> {
    n: usize,
    entries: Vec<S>,
}

impl<S: Scalar> SkewMatrix<S> {
    /// Builds the matrix from its strict upper triangle, `f(i, j)` for `i < j`.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        Self::try_from_upper(n, |i, j| Ok(f(i, j))).expect("infallible")
    }

    pub fn try_from_upper(n: usize, mut f: impl FnMut(usize, usize) -> Result<S>) -> Result<Self> {
        let mut entries = vec![S::zero(); n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = f(i, j)?;
                entries[j * n + i] = -v.clone();
                entries[i * n + j] = v;
            }
        }
        Ok(Self { n, entries })
    }

    /// Checks skew-symmetry of `m`: strictly for exact fields, within `tol`
    /// for approximate ones. The upper triangle is kept.
    pub fn from_matrix(m: &Matrix<S>, tol: &Tolerance) -> Result<Self> {
        if m.n_rows() != m.n_cols() {
            return Err(Error::NotSquare { rows: m.n_rows(), cols: m.n_cols() });
        }
        let n = m.n_rows();
        for i in 0..n {
            if !near_equal(m.get(i, i), &S::zero(), tol)? {
                return Err(Error::NotSkew { row: i, col: i });
            }
            for j in i + 1..n {
                if !near_equal(m.get(j, i), &-m.get(i, j).clone(), tol)? {
                    return Err(Error::NotSkew { row: j, col: i });
                }
            }
        }
        Ok(Self::from_upper(n, |i, j| m.get(i, j).clone()))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.n + j]
    }

    pub fn to_matrix(&self) -> Matrix<S> {
        Matrix { n_rows: self.n, n_cols: self.n, entries: self.entries.clone() }
    }

    /// Simultaneous row/column permutation: entry `(i, j)` of the result is
    /// `A[perm[i]][perm[j]]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.n)?;
        Ok(Self::from_upper(self.n, |i, j| self.get(perm[i], perm[j]).clone()))
    }

    /// Pfaffian by skew-symmetric Gaussian elimination, O(n³).
    ///
    /// `Pf([[0, a], [-a, 0]]) = a`, the 0×0 Pfaffian is 1, and a zero pivot
    /// column makes the Pfaffian exactly 0.
    pub fn pfaffian(&self) -> Result<S> {
        let n = self.n;
        if n % 2 == 1 {
            return Err(Error::OddDimension(n));
        }
        let mut a = self.entries.clone();
        let mut pf = S::one();
        let mut k = 0;
        while k < n {
            let Some(p) = select_pivot((k + 1..n).map(|j| &a[k * n + j])) else {
                return Ok(S::zero());
            };
            let p = p + k + 1;
            if p != k + 1 {
                swap_index(&mut a, n, k + 1, p);
                pf = -pf;
            }
            let pivot = a[k * n + k + 1].clone();
            pf = pf * pivot.clone();
            // Trailing block: A[i][j] -= (A[k][i] A[k+1][j] - A[k][j] A[k+1][i]) / A[k][k+1]
            for i in k + 2..n {
                let ui = a[k * n + i].clone();
                let vi = a[(k + 1) * n + i].clone();
                if ui.is_zero() && vi.is_zero() {
                    continue;
                }
                for j in i + 1..n {
                    let uj = a[k * n + j].clone();
                    let vj = a[(k + 1) * n + j].clone();
                    let cross = ui.clone() * vj - uj * vi.clone();
                    if cross.is_zero() {
                        continue;
                    }
                    let upd = a[i * n + j].clone() - cross.try_div(&pivot)?;
                    a[j * n + i] = -upd.clone();
                    a[i * n + j] = upd;
                }
            }
            k += 2;
        }
        Ok(pf)
    }

    /// Independent Pfaffian by recursive expansion along the first row.
    /// Limited to dimension [`ORACLE_MAX_DIM`].
    pub fn pfaffian_oracle(&self) -> Result<S> {
        if self.n % 2 == 1 {
            return Err(Error::OddDimension(self.n));
        }
        if self.n > ORACLE_MAX_DIM {
            return Err(Error::OracleSizeCap(self.n));
        }
        let idx: Vec<usize> = (0..self.n).collect();
        Ok(self.expand(&idx))
    }

    fn expand(&self, idx: &[usize]) -> S {
        if idx.is_empty() {
            return S::one();
        }
        let first = idx[0];
        let mut total = S::zero();
        for (pos, &j) in idx.iter().enumerate().skip(1) {
            let entry = self.get(first, j);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx[1..].iter().copied().filter(|&k| k != j).collect();
            let term = entry.clone() * self.expand(&rest);
            // pos is 1-based offset of j after the first index
            total = if pos % 2 == 1 { total + term } else { total - term };
        }
        total
    }

    /// Submatrix with the listed rows and columns (0-based) removed.
    pub fn without(&self, removed: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.n];
        for &r in removed {
            if r >= self.n {
                return Err(Error::InvalidIndices(format!("index {r} out of range for dimension {}", self.n)));
            }
            if seen[r] {
                return Err(Error::InvalidIndices(format!("duplicate index {r}")));
            }
            seen[r] = true;
        }
        let keep: Vec<usize> = (0..self.n).filter(|&i| !seen[i]).collect();
        Ok(Self::from_upper(keep.len(), |i, j| self.get(keep[i], keep[j]).clone()))
    }

    /// `Pf A^{i_1, ..., i_k}`: Pfaffian of the matrix with the listed rows and
    /// columns (0-based) removed.
    pub fn pfaffian_minor(&self, removed: &[usize]) -> Result<S> {
        let sub = self.without(removed)?;
        if sub.n % 2 == 1 {
            return Err(Error::OddDimension(sub.n));
        }
        sub.pfaffian()
    }
}

fn swap_index<S>(a: &mut [S], n: usize, r: usize, s: usize) {
    for j in 0..n {
        a.swap(r * n + j, s * n + j);
    }
    for i in 0..n {
        a.swap(i * n + r, i * n + s);
    }
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: perm.len() });
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::InvalidIndices(format!("{perm:?} is not a permutation")));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Checks `Pf A^{12} Pf A^{34} - Pf A^{13} Pf A^{24} + Pf A^{14} Pf A^{23} = Pf A Pf A^{1234}`.
pub fn check_desnanot_jacobi<S: Scalar>(
    a: &SkewMatrix<S>,
    tol: &Tolerance,
) -> Result<IdentityEvaluation<S>> {
    let n = a.dim();
    if n < 4 || n % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "desnanot-jacobi needs an even dimension >= 4, got {n}"
        )));
    }
    let m = |r: &[usize]| a.pfaffian_minor(r);
    let lhs = m(&[0, 1])? * m(&[2, 3])? - m(&[0, 2])? * m(&[1, 3])? + m(&[0, 3])? * m(&[1, 2])?;
    let rhs = a.pfaffian()? * m(&[0, 1, 2, 3])?;
    IdentityEvaluation::compare("desnanot_jacobi", lhs, rhs, tol)
}
