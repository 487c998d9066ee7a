//! Toeplitz and Hankel band representations, the `∂` operator and its kernel,
//! band completion and the triangular factors `U_±`.
//!
//! A square Toeplitz matrix `T_{ij} = a_{i-j}` is stored as its band
//! `a_{1-n}, …, a_0, …, a_{n-1}`; a Hankel matrix `H_{ij} = a_{i+j-n-1}`
//! (1-based) is stored the same way, so `H = TJ` shares its band with `T`.
//! Rectangular bands are allowed so extended grids can be described too.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{Poly, PolyVec};
use crate::rational::{format_list, parse_list, primitive_scale, Rational};

/// A `rows × cols` Toeplitz matrix, `band[i - j + cols - 1] = T[i][j]` (0-based).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ToeplitzBand {
    rows: usize,
    cols: usize,
    band: Vec<Rational>,
}

/// A `rows × cols` Hankel matrix, `band[i + j] = H[i][j]` (0-based).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HankelBand {
    rows: usize,
    cols: usize,
    band: Vec<Rational>,
}

fn check_band_len(rows: usize, cols: usize, len: usize) -> Result<()> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidSize("band of an empty matrix".into()));
    }
    if len != rows + cols - 1 {
        return Err(Error::InvalidSize(format!(
            "a {rows}x{cols} band needs {} values, got {len}",
            rows + cols - 1
        )));
    }
    Ok(())
}

/// Size `n` of a square band with `len = 2n - 1` values.
fn square_size(len: usize) -> Result<usize> {
    if len.is_multiple_of(2) {
        return Err(Error::InvalidSize(format!(
            "a square band has an odd number of values, got {len}"
        )));
    }
    Ok(len.div_ceil(2))
}

impl ToeplitzBand {
    pub fn new(rows: usize, cols: usize, band: Vec<Rational>) -> Result<Self> {
        check_band_len(rows, cols, band.len())?;
        Ok(ToeplitzBand { rows, cols, band })
    }

    /// Square band from `a_{1-n}, …, a_{n-1}`.
    pub fn square(band: Vec<Rational>) -> Result<Self> {
        let n = square_size(band.len())?;
        Self::new(n, n, band)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::square(parse_list(text)?)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Size of a square band.
    pub fn n(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn band(&self) -> &[Rational] {
        &self.band
    }

    /// `a_k` for `1 - cols ≤ k ≤ rows - 1`.
    pub fn get(&self, k: isize) -> &Rational {
        &self.band[(k + self.cols as isize - 1) as usize]
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.band[i + self.cols - 1 - j]
    }

    pub fn to_dense(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.entry(i, j).clone())
    }

    /// The Hankel matrix `T·J` (same band, columns reversed).
    pub fn times_flip(&self) -> HankelBand {
        HankelBand {
            rows: self.rows,
            cols: self.cols,
            band: self.band.clone(),
        }
    }

    fn require_square(&self, op: &'static str) -> Result<usize> {
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
}

impl HankelBand {
    pub fn new(rows: usize, cols: usize, band: Vec<Rational>) -> Result<Self> {
        check_band_len(rows, cols, band.len())?;
        Ok(HankelBand { rows, cols, band })
    }

    pub fn square(band: Vec<Rational>) -> Result<Self> {
        let n = square_size(band.len())?;
        Self::new(n, n, band)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::square(parse_list(text)?)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn n(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn band(&self) -> &[Rational] {
        &self.band
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.band[i + j]
    }

    pub fn to_dense(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.entry(i, j).clone())
    }

    /// The Toeplitz matrix `H·J` (same band).
    pub fn times_flip(&self) -> ToeplitzBand {
        ToeplitzBand {
            rows: self.rows,
            cols: self.cols,
            band: self.band.clone(),
        }
    }
}

impl fmt::Display for ToeplitzBand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_list(&self.band))
    }
}

impl fmt::Debug for ToeplitzBand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ToeplitzBand {}x{} [{}]", self.rows, self.cols, self)
    }
}

impl fmt::Display for HankelBand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_list(&self.band))
    }
}

impl fmt::Debug for HankelBand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HankelBand {}x{} [{}]", self.rows, self.cols, self)
    }
}

/// Reads the band of a matrix with constant diagonals. Entry positions in
/// the error are 1-based.
pub fn detect_toeplitz(a: &Matrix) -> Result<ToeplitzBand> {
    let (rows, cols) = a.shape();
    for i in 1..rows {
        for j in 1..cols {
            if a[(i, j)] != a[(i - 1, j - 1)] {
                return Err(Error::NotToeplitz {
                    first: (i, j),
                    second: (i + 1, j + 1),
                });
            }
        }
    }
    let band = (0..rows + cols - 1)
        .map(|k| {
            // k = i - j + cols - 1
            if k < cols {
                a[(0, cols - 1 - k)].clone()
            } else {
                a[(k + 1 - cols, 0)].clone()
            }
        })
        .collect();
    ToeplitzBand::new(rows, cols, band)
}

/// Reads the band of a matrix with constant anti-diagonals.
pub fn detect_hankel(a: &Matrix) -> Result<HankelBand> {
    let (rows, cols) = a.shape();
    for i in 1..rows {
        for j in 0..cols - 1 {
            if a[(i, j)] != a[(i - 1, j + 1)] {
                return Err(Error::NotHankel {
                    first: (i, j + 2),
                    second: (i + 1, j + 1),
                });
            }
        }
    }
    let band = (0..rows + cols - 1)
        .map(|k| {
            if k < cols {
                a[(0, k)].clone()
            } else {
                a[(k + 1 - cols, cols - 1)].clone()
            }
        })
        .collect();
    HankelBand::new(rows, cols, band)
}

/// `∂T`: the `(n-1)×(n+1)` Toeplitz matrix with entries `a_{i-j+1}`.
pub fn del_toeplitz(t: &ToeplitzBand) -> Result<Matrix> {
    let n = t.require_square("del_toeplitz")?;
    if n < 2 {
        return Err(Error::InvalidSize("∂T needs n ≥ 2".into()));
    }
    Ok(Matrix::from_fn(n - 1, n + 1, |i, j| {
        t.get(i as isize - j as isize + 1).clone()
    }))
}

/// `∂H`: the first `n-1` rows of the one-column Hankel extension of `H`.
pub fn del_hankel(h: &HankelBand) -> Result<Matrix> {
    if !h.is_square() {
        return Err(Error::NotSquare {
            op: "del_hankel",
            rows: h.rows,
            cols: h.cols,
        });
    }
    let n = h.rows;
    if n < 2 {
        return Err(Error::InvalidSize("∂H needs n ≥ 2".into()));
    }
    Ok(Matrix::from_fn(n - 1, n + 1, |i, j| h.band[i + j].clone()))
}

/// `∂T · w`, computed from the band without materializing `∂T`.
pub fn del_toeplitz_apply(t: &ToeplitzBand, w: &[Rational]) -> Result<Vec<Rational>> {
    let n = t.require_square("del_toeplitz_apply")?;
    if w.len() != n + 1 {
        return Err(Error::DimensionMismatch {
            op: "∂T·w",
            left: (n.saturating_sub(1), n + 1),
            right: (w.len(), 1),
        });
    }
    Ok((0..n.saturating_sub(1))
        .map(|i| {
            let mut acc = Rational::zero();
            for (j, wj) in w.iter().enumerate() {
                let a = t.get(i as isize - j as isize + 1);
                if !a.is_zero() && !wj.is_zero() {
                    acc += a * wj;
                }
            }
            acc
        })
        .collect())
}

fn require_invertible(m: &Matrix, what: &str) -> Result<()> {
    if m.rank() < m.rows() {
        return Err(Error::singular(what.to_string()));
    }
    Ok(())
}

/// A basis `{a, b}` of `ker ∂T`, by exact elimination on `∂T`.
///
/// `T` must be invertible; this is checked first.
pub fn kernel_del(t: &ToeplitzBand) -> Result<[PolyVec; 2]> {
    let n = t.require_square("kernel_del")?;
    if n < 2 {
        return Err(Error::InvalidSize("∂T needs n ≥ 2".into()));
    }
    require_invertible(&t.to_dense(), "T")?;
    let d = del_toeplitz(t)?;
    let mut basis = d.nullspace();
    if basis.len() != 2 {
        return Err(Error::RankDeficient {
            rank: d.cols() - basis.len(),
            expected: n - 1,
        });
    }
    let b = PolyVec::new(basis.pop().expect("two vectors"))?;
    let a = PolyVec::new(basis.pop().expect("two vectors"))?;
    Ok([a, b])
}

/// Two independent vectors of `ker ∂T` in `O(n²)` operations, without
/// any dense elimination.
///
/// `w ∈ ker ∂T` exactly when the coefficients of `λ^n … λ^{2n-2}` in
/// `a(λ)·w(λ)` vanish, where `a(λ) = Σ band[m] λ^m`. Running the extended
/// Euclidean algorithm on `(λ^{2n-1}, a)` until the remainder drops below
/// degree `n` yields a cofactor `t_j` of degree `≤ n-1` with that property;
/// the second vector is either the next cofactor (degree `n`) or `λ·t_j`.
/// When `T` is invertible the kernel is 2-dimensional, so the pair spans it.
/// Both vectors are returned as coprime integer vectors.
/// Invertibility itself is not checked here.
pub fn kernel_del_euclid(t: &ToeplitzBand) -> Result<[PolyVec; 2]> {
    let n = t.require_square("kernel_del_euclid")?;
    if n < 2 {
        return Err(Error::InvalidSize("∂T needs n ≥ 2".into()));
    }
    let modulus = 2 * n - 1;
    // Subresultant remainder sequence: pseudo-remainders divided exactly by
    // `lead·psi^δ`, so every remainder and cofactor stays integral.
    let scale = primitive_scale(&t.band);
    let mut r_prev = Poly::monomial(modulus);
    let mut t_prev = Poly::zero();
    let mut r_cur = Poly::new(t.band.clone()).scale(&scale);
    let mut t_cur = Poly::new(vec![scale]);
    let mut psi = Rational::one();
    let mut last_delta: Option<usize> = None;
    let mut step = |r_prev: &Poly, t_prev: &Poly, r_cur: &Poly, t_cur: &Poly| -> Result<(Poly, Poly)> {
        let delta = r_prev.degree().unwrap_or(0) - r_cur.degree().unwrap_or(0);
        let (quot, rem, factor) = r_prev.pseudo_div_rem(r_cur)?;
        let divisor = match last_delta {
            None => Rational::one(),
            Some(d) => {
                let lead = r_prev.lead().expect("nonzero remainder").abs();
                psi = &power(&lead, d) / &power(&psi, d - 1);
                &lead * &power(&psi, delta)
            }
        };
        last_delta = Some(delta);
        let t_next = t_prev.scale(&factor).sub(&quot.mul(t_cur));
        let exact = |p: &Poly| Poly::new(p.coeffs().iter().map(|x| x / &divisor).collect());
        Ok((exact(&rem), exact(&t_next)))
    };
    while r_cur.degree().is_some_and(|d| d >= n) {
        let (r_next, t_next) = step(&r_prev, &t_prev, &r_cur, &t_cur)?;
        r_prev = std::mem::replace(&mut r_cur, r_next);
        t_prev = std::mem::replace(&mut t_cur, t_next);
    }
    let second = if r_cur.degree() == Some(n - 1) {
        step(&r_prev, &t_prev, &r_cur, &t_cur)?.1
    } else {
        t_cur.shift(1)
    };
    let (first, second) = (primitive(&t_cur), primitive(&second));
    let to_vec = |p: &Poly| -> Result<PolyVec> {
        if p.degree().is_some_and(|d| d > n) {
            return Err(Error::Internal(format!("kernel cofactor of degree {:?} > {n}", p.degree())));
        }
        PolyVec::new(p.padded(n + 1))
    };
    let basis = [to_vec(&first)?, to_vec(&second)?];
    for w in &basis {
        if !del_toeplitz_apply(t, w.coeffs())?.iter().all(Rational::is_zero) {
            return Err(Error::Internal("Euclidean kernel vector not annihilated by ∂T".into()));
        }
    }
    Ok(basis)
}

fn power(x: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| &acc * x)
}

fn primitive(p: &Poly) -> Poly {
    let c = primitive_scale(p.coeffs());
    if c.is_one() {
        p.clone()
    } else {
        p.scale(&c)
    }
}

/// Completes a Toeplitz band so that `∂T·u = 0`.
///
/// `free` supplies `a_{1-n}, …, a_0` (the first row read right to left);
/// the remaining values follow from
/// `a_i = -(a_{i-1}u₂ + … + a_{i-n}u_{n+1}) / u₁`, `i = 1, …, n-1`.
pub fn complete_band(u: &PolyVec, free: &[Rational]) -> Result<ToeplitzBand> {
    let n = u.n();
    if free.len() != n {
        return Err(Error::InvalidSize(format!(
            "band completion for n = {n} needs {n} free values, got {}",
            free.len()
        )));
    }
    let inv = u.first().recip().ok_or(Error::ZeroEndpoint { which: "u1" })?;
    let mut band = free.to_vec();
    // band[m] = a_{m-n+1}
    for i in 1..n {
        let m = i + n - 1;
        let mut acc = Rational::zero();
        for j in 1..=n {
            let coeff = u.coeff(j);
            if !coeff.is_zero() {
                acc += &band[m - j] * coeff;
            }
        }
        band.push(-(&acc * &inv));
    }
    ToeplitzBand::square(band)
}

/// `U_+`: lower triangular Toeplitz with first column `(u₁, …, u_n)`.
pub fn build_u_plus(u: &PolyVec) -> ToeplitzBand {
    let n = u.n();
    let band = (0..2 * n - 1)
        .map(|m| {
            if m + 1 >= n {
                u.coeff(m + 1 - n).clone()
            } else {
                Rational::zero()
            }
        })
        .collect();
    ToeplitzBand::square(band).expect("odd band length")
}

/// `U_-`: upper triangular Toeplitz with first row `(u_{n+1}, …, u₂)`.
pub fn build_u_minus(u: &PolyVec) -> ToeplitzBand {
    let n = u.n();
    // a_{-k} = u_{n+1-k} for k = 0..n-1, i.e. band[m] = u(m + 2) (1-based) for m < n
    let band = (0..2 * n - 1)
        .map(|m| {
            if m < n {
                u.coeff(m + 1).clone()
            } else {
                Rational::zero()
            }
        })
        .collect();
    ToeplitzBand::square(band).expect("odd band length")
}

/// Lower triangular Toeplitz matrix with the given first column.
pub fn lower_triangular_toeplitz(first_col: &[Rational]) -> Matrix {
    let n = first_col.len();
    Matrix::from_fn(n, n, |i, j| {
        if i >= j {
            first_col[i - j].clone()
        } else {
            Rational::zero()
        }
    })
}

/// Upper triangular Toeplitz matrix with the given first row.
pub fn upper_triangular_toeplitz(first_row: &[Rational]) -> Matrix {
    let n = first_row.len();
    Matrix::from_fn(n, n, |i, j| {
        if j >= i {
            first_row[j - i].clone()
        } else {
            Rational::zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn u4321() -> PolyVec {
        PolyVec::from_ints(&[4, 3, 2, 1])
    }

    fn u_plus_inv_band() -> Vec<Rational> {
        vec![q(0), q(0), q((1, 4)), q((-3, 16)), q((1, 64))]
    }

    #[test]
    fn detect_toeplitz_examples() {
        let t = detect_toeplitz(&Matrix::identity(3)).unwrap();
        assert_eq!(t.band(), &[q(0), q(0), q(1), q(0), q(0)]);
        let m = ToeplitzBand::square(u_plus_inv_band()).unwrap().to_dense();
        assert_eq!(m[(2, 0)], q((1, 64)));
        assert_eq!(detect_toeplitz(&m).unwrap().band(), u_plus_inv_band().as_slice());
        assert!(detect_toeplitz(&Matrix::from_ints(&[[1, 2], [2, 1]])).is_ok());
        assert!(matches!(
            detect_toeplitz(&Matrix::from_ints(&[[1, 2], [3, 4]])),
            Err(Error::NotToeplitz { first: (1, 1), second: (2, 2) })
        ));
    }

    #[test]
    fn detect_hankel_examples() {
        let j = detect_hankel(&Matrix::flip(3)).unwrap();
        assert_eq!(j.band(), &[q(0), q(0), q(1), q(0), q(0)]);
        let t = ToeplitzBand::square(u_plus_inv_band()).unwrap();
        let h = t.to_dense().mul(&Matrix::flip(3)).unwrap();
        assert_eq!(detect_hankel(&h).unwrap(), t.times_flip());
        assert!(detect_hankel(&Matrix::from_ints(&[[1, 2], [3, 4]])).is_err());
    }

    #[test]
    fn rectangular_bands_round_trip() {
        let m = Matrix::from_ints(&[[1, 2, 3, 4], [5, 1, 2, 3]]);
        let t = detect_toeplitz(&m).unwrap();
        assert_eq!(t.to_dense(), m);
        let h = Matrix::from_ints(&[[1, 2, 3], [2, 3, 4], [3, 4, 5], [4, 5, 6]]);
        assert_eq!(detect_hankel(&h).unwrap().to_dense(), h);
    }

    #[test]
    fn del_toeplitz_examples() {
        let t = ToeplitzBand::square(u_plus_inv_band()).unwrap();
        let d = del_toeplitz(&t).unwrap();
        let expect = Matrix::from_rows(vec![
            vec![q((-3, 16)), q((1, 4)), q(0), q(0)],
            vec![q((1, 64)), q((-3, 16)), q((1, 4)), q(0)],
        ])
        .unwrap();
        assert_eq!(d, expect);
        assert!(d.mul_vec(u4321().coeffs()).unwrap().iter().all(Rational::is_zero));
        let id = detect_toeplitz(&Matrix::identity(3)).unwrap();
        assert_eq!(
            del_toeplitz(&id).unwrap(),
            Matrix::from_ints(&[[0, 1, 0, 0], [0, 0, 1, 0]])
        );
        let one = ToeplitzBand::square(vec![q(2)]).unwrap();
        assert!(del_toeplitz(&one).is_err());
    }

    #[test]
    fn del_hankel_examples() {
        let t = ToeplitzBand::square(u_plus_inv_band()).unwrap();
        let dh = del_hankel(&t.times_flip()).unwrap();
        assert_eq!(dh, del_toeplitz(&t).unwrap().reverse_columns());
        let uj = u4321().reverse();
        assert!(dh.mul_vec(uj.coeffs()).unwrap().iter().all(Rational::is_zero));
        let small = HankelBand::square(vec![q(1), q(2), q(3)]).unwrap();
        assert_eq!(del_hankel(&small).unwrap(), Matrix::from_ints(&[[1, 2, 3]]));
        let j = detect_hankel(&Matrix::flip(3)).unwrap();
        assert_eq!(
            del_hankel(&j).unwrap(),
            Matrix::from_ints(&[[0, 0, 1, 0], [0, 1, 0, 0]])
        );
    }

    #[test]
    fn kernel_examples() {
        let t = ToeplitzBand::square(u_plus_inv_band()).unwrap();
        let [a, b] = kernel_del(&t).unwrap();
        let basis = Matrix::from_rows(vec![a.coeffs().to_vec(), b.coeffs().to_vec()]).unwrap();
        // span{(4,3,2,1), (0,0,0,1)} has rank 2 together with the basis
        let with_expected = basis
            .vstack(&Matrix::from_ints(&[[4, 3, 2, 1], [0, 0, 0, 1]]))
            .unwrap();
        assert_eq!(basis.rank(), 2);
        assert_eq!(with_expected.rank(), 2);

        let id = detect_toeplitz(&Matrix::identity(3)).unwrap();
        let [a, b] = kernel_del(&id).unwrap();
        let basis = Matrix::from_rows(vec![a.coeffs().to_vec(), b.coeffs().to_vec()]).unwrap();
        let with_expected = basis
            .vstack(&Matrix::from_ints(&[[1, 0, 0, 0], [0, 0, 0, 1]]))
            .unwrap();
        assert_eq!(with_expected.rank(), 2);
    }

    #[test]
    fn kernel_rejects_singular() {
        let t = ToeplitzBand::square(vec![q(1), q(1), q(1)]).unwrap();
        assert!(matches!(kernel_del(&t), Err(Error::Singular { .. })));
    }

    #[test]
    fn euclid_kernel_matches_elimination() {
        let t1 = complete_band(&u4321(), &[q(-1), q(0), q(0)]).unwrap();
        for t in [
            ToeplitzBand::square(u_plus_inv_band()).unwrap(),
            detect_toeplitz(&Matrix::identity(4)).unwrap(),
            t1,
        ] {
            let fast = kernel_del_euclid(&t).unwrap();
            let slow = kernel_del(&t).unwrap();
            let m = Matrix::from_rows(
                fast.iter()
                    .chain(slow.iter())
                    .map(|w| w.coeffs().to_vec())
                    .collect(),
            )
            .unwrap();
            assert_eq!(m.rank(), 2, "same span for {t:?}");
        }
    }

    #[test]
    fn complete_band_examples() {
        let u = u4321();
        let t = complete_band(&u, &[q(0), q(0), q((1, 4))]).unwrap();
        assert_eq!(t.band(), u_plus_inv_band().as_slice());
        let t1 = complete_band(&u, &[q(-1), q(0), q(0)]).unwrap();
        let expect = Matrix::from_rows(vec![
            vec![q(0), q(0), q(-1)],
            vec![q((1, 4)), q(0), q(0)],
            vec![q((-3, 16)), q((1, 4)), q(0)],
        ])
        .unwrap();
        assert_eq!(t1.to_dense(), expect);
        let zero_first = PolyVec::from_ints(&[0, 1, 1]);
        assert!(complete_band(&zero_first, &[q(1), q(2)]).is_err());
        assert!(complete_band(&u, &[q(1)]).is_err());
    }

    #[test]
    fn complete_band_sparse_u() {
        // u = 1 + λ^3: a_i = -a_{i-3}
        let u = PolyVec::from_ints(&[1, 0, 0, 1]);
        let t = complete_band(&u, &[q(2), q(-5), q(7)]).unwrap();
        assert_eq!(t.get(1), &q(-2));
        assert_eq!(t.get(2), &q(5));
        assert!(del_toeplitz(&t).unwrap().mul_vec(u.coeffs()).unwrap().iter().all(Rational::is_zero));
    }

    #[test]
    fn triangular_factors() {
        let u = u4321();
        assert_eq!(
            build_u_plus(&u).to_dense(),
            Matrix::from_ints(&[[4, 0, 0], [3, 4, 0], [2, 3, 4]])
        );
        assert_eq!(
            build_u_minus(&u).to_dense(),
            Matrix::from_ints(&[[1, 2, 3], [0, 1, 2], [0, 0, 1]])
        );
        let small = PolyVec::from_ints(&[5, 7]);
        assert_eq!(build_u_plus(&small).to_dense(), Matrix::from_ints(&[[5]]));
        assert_eq!(build_u_minus(&small).to_dense(), Matrix::from_ints(&[[7]]));
    }

    #[test]
    fn band_length_validation() {
        assert!(ToeplitzBand::square(vec![q(1), q(2)]).is_err());
        assert!(ToeplitzBand::new(2, 3, vec![q(1); 3]).is_err());
        assert!(HankelBand::parse("1,2,3").is_ok());
    }
}
