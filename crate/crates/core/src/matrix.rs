//! Dense row-major matrices over the rationals.

use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rational::{parse_list, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// The flip (anti-identity) matrix `J`.
    pub fn flip(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, n - 1 - i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidSize(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::InvalidSize(format!(
                "ragged rows: expected {c} entries, found {}",
                bad.len()
            )));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer literal matrix; panics on ragged input.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| Rational::int(x)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn column_vector(v: &[Rational]) -> Self {
        Matrix {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    pub fn row_vector(v: &[Rational]) -> Self {
        Matrix {
            rows: 1,
            cols: v.len(),
            data: v.to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub(crate) fn require_square(&self, op: &'static str) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                op,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Exact product `self · rhs`. Zero entries of `self` are skipped.
    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                op: "matrix product",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                op: "matrix-vector product",
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect())
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, "matrix sum", |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, "matrix difference", |a, b| a - b)
    }

    fn zip_with(
        &self,
        rhs: &Matrix,
        op: &'static str,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<Matrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// `A^J = J Aᵀ J`, the reflection about the secondary diagonal.
    pub fn flip_secondary(&self) -> Result<Matrix> {
        let n = self.require_square("flip_secondary")?;
        Ok(Matrix::from_fn(n, n, |i, j| self[(n - 1 - j, n - 1 - i)].clone()))
    }

    /// `A·J`: column order reversed. No arithmetic.
    pub fn reverse_columns(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, self.cols - 1 - j)].clone())
    }

    /// `J·A`: row order reversed. No arithmetic.
    pub fn reverse_rows(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(self.rows - 1 - i, j)].clone())
    }

    /// Rows `r0..r1` and columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        Matrix::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn hstack(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch {
                op: "hstack",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(Matrix::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - self.cols)].clone()
            }
        }))
    }

    pub fn vstack(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                op: "vstack",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Ok(Matrix {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// Returns `λ` when the matrix equals `λI`.
    pub fn as_scalar(&self) -> Option<Rational> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let lambda = self[(0, 0)].clone();
        let ok = (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                if i == j {
                    self[(i, j)] == lambda
                } else {
                    self[(i, j)].is_zero()
                }
            })
        });
        ok.then_some(lambda)
    }

    /// `self^k` for `k ≥ 0` by binary exponentiation.
    pub fn pow(&self, mut k: u32) -> Result<Matrix> {
        let n = self.require_square("matrix power")?;
        let mut acc = Matrix::identity(n);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Exact inverse by Gauss–Jordan elimination; the pivot is the first
    /// nonzero entry at or below the diagonal.
    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.require_square("inverse")?;
        let mut a = self.to_rows();
        let mut inv = Matrix::identity(n).to_rows();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or_else(|| Error::singular(format!("no pivot in column {}", col + 1)))?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].recip().expect("nonzero pivot");
            scale_row(&mut a[col], &p, col);
            scale_row(&mut inv[col], &p, 0);
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                let (src_a, dst_a) = pick(&mut a, col, r);
                axpy(dst_a, &f, src_a, col);
                let (src_i, dst_i) = pick(&mut inv, col, r);
                axpy(dst_i, &f, src_i, 0);
            }
        }
        Matrix::from_rows(inv)
    }

    /// Row-reduced echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut a = self.to_rows();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(row, p);
            let inv = a[row][col].recip().expect("nonzero pivot");
            scale_row(&mut a[row], &inv, col);
            for r in 0..self.rows {
                if r == row || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                let (src, dst) = pick(&mut a, row, r);
                axpy(dst, &f, src, col);
            }
            pivots.push(col);
            row += 1;
        }
        let m = Matrix::from_rows(a).unwrap_or_else(|_| Matrix::zeros(self.rows, self.cols));
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn determinant(&self) -> Result<Rational> {
        let n = self.require_square("determinant")?;
        let mut a = self.to_rows();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != col {
                a.swap(col, p);
                det = -det;
            }
            det = &det * &a[col][col];
            let inv = a[col][col].recip().expect("nonzero pivot");
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] * &inv;
                let (src, dst) = pick(&mut a, col, r);
                axpy(dst, &f, src, col);
            }
        }
        Ok(det)
    }

    /// A basis of the right kernel, one vector per free column of the RREF.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&r[(row, f)];
                }
                v
            })
            .collect()
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

fn scale_row(row: &mut [Rational], c: &Rational, from: usize) {
    for x in row.iter_mut().skip(from) {
        if !x.is_zero() {
            *x = &*x * c;
        }
    }
}

/// `dst -= f · src` on entries from `from` onward.
fn axpy(dst: &mut [Rational], f: &Rational, src: &[Rational], from: usize) {
    for (d, s) in dst.iter_mut().zip(src).skip(from) {
        if !s.is_zero() {
            *d -= f * s;
        }
    }
}

/// Borrow row `src` immutably and row `dst` mutably.
fn pick(rows: &mut [Vec<Rational>], src: usize, dst: usize) -> (&[Rational], &mut [Rational]) {
    debug_assert_ne!(src, dst);
    if src < dst {
        let (lo, hi) = rows.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    }
}

/// Free-function form of [`Matrix::mul`].
pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.mul(b)
}

/// Free-function form of [`Matrix::inverse`].
pub fn mat_inverse(a: &Matrix) -> Result<Matrix> {
    a.inverse()
}

/// Free-function form of [`Matrix::flip_secondary`].
pub fn flip_secondary(a: &Matrix) -> Result<Matrix> {
    a.flip_secondary()
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Rows separated by `;`, entries by `,`.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(";")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            f.write_str(&row.join(","))?;
        }
        Ok(())
    }
}

/// Inverse of `Display`; newlines also separate rows.
impl FromStr for Matrix {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let rows = text
            .split([';', '\n'])
            .map(str::trim)
            .filter(|r| !r.is_empty())
            .map(parse_list)
            .collect::<Result<Vec<_>>>()?;
        if rows.is_empty() {
            return Err(Error::Parse("empty matrix".into()));
        }
        Matrix::from_rows(rows)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn m(rows: &[&[(i64, i64)]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| q(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn parse_round_trip() {
        let a = m(&[&[(1, 4), (0, 1)], &[(-3, 16), (1, 4)]]);
        assert_eq!(a.to_string(), "1/4,0;-3/16,1/4");
        assert_eq!(a.to_string().parse::<Matrix>().unwrap(), a);
        assert_eq!("1/4 0\n-3/16 1/4\n".parse::<Matrix>().unwrap(), a);
        assert!("1,2;3".parse::<Matrix>().is_err());
        assert!("".parse::<Matrix>().is_err());
    }

    #[test]
    fn identity_product() {
        let a = Matrix::from_ints(&[[1, 2, 3], [4, 5, 6], [7, 8, 10]]);
        assert_eq!(Matrix::identity(3).mul(&a).unwrap(), a);
    }

    #[test]
    fn product_dimension_mismatch() {
        let a = Matrix::zeros(2, 3);
        assert!(matches!(
            a.mul(&a),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn two_by_two_inverse() {
        let a = Matrix::from_ints(&[[1, 2], [3, 4]]);
        let expect = m(&[&[(-2, 1), (1, 1)], &[(3, 2), (-1, 2)]]);
        assert_eq!(a.inverse().unwrap(), expect);
    }

    #[test]
    fn inverse_needs_row_swap() {
        let a = Matrix::from_ints(&[[0, 0, -1], [1, 0, 0], [0, 1, 0]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
    }

    #[test]
    fn singular_inverse() {
        let a = Matrix::from_ints(&[[1, 2], [2, 4]]);
        assert!(matches!(a.inverse(), Err(Error::Singular { .. })));
        assert_eq!(a.rank(), 1);
        assert_eq!(a.determinant().unwrap(), 0);
        assert!(matches!(
            Matrix::zeros(2, 3).inverse(),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn flip_secondary_definition() {
        let a = Matrix::from_ints(&[[1, 2, 3], [4, 5, 6], [7, 8, 9]]);
        let j = Matrix::flip(3);
        let expect = j.mul(&a.transpose()).unwrap().mul(&j).unwrap();
        assert_eq!(a.flip_secondary().unwrap(), expect);
        assert_eq!(a.flip_secondary().unwrap().flip_secondary().unwrap(), a);
        assert!(Matrix::zeros(2, 3).flip_secondary().is_err());
    }

    #[test]
    fn nullspace_and_determinant() {
        let a = Matrix::from_ints(&[[1, 2, 3, 4], [2, 4, 6, 9]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.mul_vec(v).unwrap().iter().all(Rational::is_zero));
        }
        let b = Matrix::from_ints(&[[2, 0, 1], [1, 3, 2], [1, 1, 2]]);
        assert_eq!(b.determinant().unwrap(), 6);
    }

    #[test]
    fn power_and_display() {
        let a = Matrix::from_ints(&[[1, 1], [0, 1]]);
        assert_eq!(a.pow(5).unwrap(), Matrix::from_ints(&[[1, 5], [0, 1]]));
        assert_eq!(a.pow(0).unwrap(), Matrix::identity(2));
        let b = m(&[&[(1, 4), (0, 1)], &[(-3, 16), (1, 4)]]);
        assert_eq!(b.to_string(), "1/4,0;-3/16,1/4");
    }
}
