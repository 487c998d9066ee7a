//! Toeplitz and Hankel Bezoutians, the Gohberg–Semencul products and
//! Bezoutian-based inversion of Toeplitz and Hankel matrices.
//!
//! For `u, v` of common degree `n` the Toeplitz Bezoutian `B_T(u, v)` is the
//! `n×n` coefficient matrix of
//!
//! ```text
//! (u(λ)v^J(μ) - u^J(μ)v(λ)) / (1 - λμ)
//! ```
//!
//! and the Hankel Bezoutian `B_H(u, v)` that of
//!
//! ```text
//! (u(λ)v(μ) - u(μ)v(λ)) / (λ - μ).
//! ```
//!
//! The generating-function divisions are the reference definitions; the
//! triangular-product formulas are checked against them.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::PolyVec;
use crate::rational::Rational;
use crate::structured::{
    build_u_minus, build_u_plus, kernel_del_euclid, HankelBand, ToeplitzBand,
};

/// Coefficients `c_{ij}` of `Σ c_{ij} λ^i μ^j`, `i, j = 0..m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateCoeffs {
    grid: Vec<Vec<Rational>>,
}

impl BivariateCoeffs {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        BivariateCoeffs {
            grid: (0..rows).map(|i| (0..cols).map(|j| f(i, j)).collect()).collect(),
        }
    }

    /// Numerator `u(λ)v^J(μ) - u^J(μ)v(λ)` of the Toeplitz Bezoutian.
    pub fn toeplitz_numerator(u: &PolyVec, v: &PolyVec) -> Result<Self> {
        let n = common_degree(u, v)?;
        let (uj, vj) = (u.reverse(), v.reverse());
        Ok(Self::from_fn(n + 1, n + 1, |p, q| {
            u.coeff(p) * vj.coeff(q) - uj.coeff(q) * v.coeff(p)
        }))
    }

    /// Numerator `u(λ)v(μ) - u(μ)v(λ)` of the Hankel Bezoutian.
    pub fn hankel_numerator(u: &PolyVec, v: &PolyVec) -> Result<Self> {
        let n = common_degree(u, v)?;
        Ok(Self::from_fn(n + 1, n + 1, |p, q| {
            u.coeff(p) * v.coeff(q) - u.coeff(q) * v.coeff(p)
        }))
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        Self::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)].clone())
    }

    pub fn rows(&self) -> usize {
        self.grid.len()
    }

    pub fn cols(&self) -> usize {
        self.grid.first().map_or(0, Vec::len)
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.grid[i][j]
    }

    pub fn eval(&self, lambda: &Rational, mu: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for row in self.grid.iter().rev() {
            let mut inner = Rational::zero();
            for c in row.iter().rev() {
                inner = &inner * mu + c;
            }
            acc = &acc * lambda + &inner;
        }
        acc
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_fn(self.rows(), self.cols(), |i, j| self.grid[i][j].clone())
    }
}

fn common_degree(u: &PolyVec, v: &PolyVec) -> Result<usize> {
    if u.n() != v.n() {
        return Err(Error::DimensionMismatch {
            op: "Bezoutian",
            left: (u.n() + 1, 1),
            right: (v.n() + 1, 1),
        });
    }
    Ok(u.n())
}

/// `B_T(u, v)` by exact division of the generating function by `1 - λμ`.
pub fn bez_toeplitz_oracle(u: &PolyVec, v: &PolyVec) -> Result<Matrix> {
    let num = BivariateCoeffs::toeplitz_numerator(u, v)?;
    let n = u.n();
    // c_pq = N_pq + c_{p-1,q-1}
    let mut c = Matrix::zeros(n, n);
    for p in 0..n {
        for q in 0..n {
            let prev = if p > 0 && q > 0 {
                c[(p - 1, q - 1)].clone()
            } else {
                Rational::zero()
            };
            c[(p, q)] = num.get(p, q) + &prev;
        }
    }
    for p in 0..=n {
        for q in 0..=n {
            if p < n && q < n {
                continue;
            }
            let prev = if p > 0 && q > 0 {
                c[(p - 1, q - 1)].clone()
            } else {
                Rational::zero()
            };
            if !(num.get(p, q) + &prev).is_zero() {
                return Err(Error::Internal(format!(
                    "Toeplitz Bezoutian division leaves a remainder at ({p}, {q})"
                )));
            }
        }
    }
    Ok(c)
}

/// `B_H(u, v)` by exact division of the generating function by `λ - μ`.
pub fn bez_hankel_oracle(u: &PolyVec, v: &PolyVec) -> Result<Matrix> {
    let w = BivariateCoeffs::hankel_numerator(u, v)?;
    let n = u.n();
    // c_{p-1,q} = w_pq + c_{p,q-1}, filled column by column
    let mut c = Matrix::zeros(n, n);
    let at = |c: &Matrix, p: usize, q: isize| -> Rational {
        if q < 0 || p >= n || q as usize >= n {
            Rational::zero()
        } else {
            c[(p, q as usize)].clone()
        }
    };
    for q in 0..n {
        for p in 1..=n {
            c[(p - 1, q)] = w.get(p, q) + &at(&c, p, q as isize - 1);
        }
    }
    // the equations with p = 0 or q = n have no unknown on the left
    for q in 0..=n {
        let lhs_zero = w.get(0, q) + &at(&c, 0, q as isize - 1);
        if !lhs_zero.is_zero() {
            return Err(Error::Internal(format!(
                "Hankel Bezoutian division leaves a remainder at (0, {q})"
            )));
        }
    }
    for p in 1..=n {
        if !(w.get(p, n) + &at(&c, p, n as isize - 1)).is_zero() {
            return Err(Error::Internal(format!(
                "Hankel Bezoutian division leaves a remainder at ({p}, {n})"
            )));
        }
    }
    Ok(c)
}

/// `B_T(u, v)` from the triangular factors, `U_+V_- - V_+U_-`, checked
/// against the second form `V_-U_+ - U_-V_+`.
pub fn bez_toeplitz_gs(u: &PolyVec, v: &PolyVec) -> Result<Matrix> {
    common_degree(u, v)?;
    let (up, um) = (build_u_plus(u).to_dense(), build_u_minus(u).to_dense());
    let (vp, vm) = (build_u_plus(v).to_dense(), build_u_minus(v).to_dense());
    let first = up.mul(&vm)?.sub(&vp.mul(&um)?)?;
    let second = vm.mul(&up)?.sub(&um.mul(&vp)?)?;
    if first != second {
        return Err(Error::Internal(
            "the two triangular-product forms of B_T disagree".into(),
        ));
    }
    Ok(first)
}

/// The two Hankel triangular-product forms as printed, compared with the
/// generating-function Bezoutian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HankelGsReport {
    /// `V_+JU_- - U_+JV_-`.
    pub first: Matrix,
    /// `U_-JV_+ - V_-JU_+`.
    pub second: Matrix,
    pub oracle: Matrix,
    pub first_matches: bool,
    pub second_matches: bool,
    /// `second = J·first·J`.
    pub second_is_rotation: bool,
    /// `second = flip_secondary(first)`.
    pub second_is_flip: bool,
}

pub fn bez_hankel_gs_literal(u: &PolyVec, v: &PolyVec) -> Result<HankelGsReport> {
    let n = common_degree(u, v)?;
    let j = Matrix::flip(n);
    let (up, um) = (build_u_plus(u).to_dense(), build_u_minus(u).to_dense());
    let (vp, vm) = (build_u_plus(v).to_dense(), build_u_minus(v).to_dense());
    let first = vp.mul(&j)?.mul(&um)?.sub(&up.mul(&j)?.mul(&vm)?)?;
    let second = um.mul(&j)?.mul(&vp)?.sub(&vm.mul(&j)?.mul(&up)?)?;
    let oracle = bez_hankel_oracle(u, v)?;
    Ok(HankelGsReport {
        first_matches: first == oracle,
        second_matches: second == oracle,
        second_is_rotation: second == first.reverse_rows().reverse_columns(),
        second_is_flip: second == first.flip_secondary()?,
        first,
        second,
        oracle,
    })
}

/// `Q = -B_T(u, v)ᵀ J`.
pub fn q_transform(u: &PolyVec, v: &PolyVec) -> Result<Matrix> {
    Ok(bez_toeplitz_oracle(u, v)?.transpose().reverse_columns().neg())
}

/// A structured inverse together with the data that certifies it.
#[derive(Clone, Debug)]
pub struct StructuredInverse {
    pub inverse: Matrix,
    /// Basis of `ker ∂T` the Bezoutian was built from.
    pub kernel: [PolyVec; 2],
    /// The scalar with `B_T(a, b)·T = scalar·I`.
    pub scalar: Rational,
}

/// `T⁻¹` as a scaled Bezoutian of the kernel of `∂T`.
///
/// Everything runs in `O(n²)` scalar operations: the kernel comes from a
/// Euclidean remainder sequence, the Bezoutian from its recurrence, and
/// `B·T = λI` is verified through the displacement of `B·T` rather than
/// by forming the product. A nonzero `λ` certifies that `T` is invertible.
pub fn toeplitz_inverse_structured(t: &ToeplitzBand) -> Result<Matrix> {
    Ok(toeplitz_inverse_certified(t)?.inverse)
}

pub fn toeplitz_inverse_certified(t: &ToeplitzBand) -> Result<StructuredInverse> {
    if !t.is_square() {
        return Err(Error::NotSquare {
            op: "toeplitz_inverse_structured",
            rows: t.rows(),
            cols: t.cols(),
        });
    }
    let n = t.n();
    if n == 1 {
        let a0 = t.get(0);
        let inv = a0.recip().ok_or_else(|| Error::singular("1x1 Toeplitz matrix is zero"))?;
        let kernel = [PolyVec::from_ints(&[1, 0]), PolyVec::from_ints(&[0, 1])];
        return Ok(StructuredInverse {
            inverse: Matrix::from_fn(1, 1, |_, _| inv.clone()),
            kernel,
            scalar: Rational::one(),
        });
    }
    let [a, b] = kernel_del_euclid(t)?;
    let bez = bez_toeplitz_oracle(&a, &b)?;
    let scalar: Rational = (0..n)
        .filter(|&k| !bez[(0, k)].is_zero())
        .map(|k| &bez[(0, k)] * t.entry(k, 0))
        .sum();
    if scalar.is_zero() {
        return Err(diagnose_failure(t));
    }
    if !product_is_scalar(&bez, t, &a, &b) {
        return Err(diagnose_failure(t));
    }
    let inv = scalar.recip().expect("nonzero");
    Ok(StructuredInverse {
        inverse: bez.scale(&inv),
        kernel: [a, b],
        scalar,
    })
}

/// Called only on failure: tells a singular input apart from a fault.
fn diagnose_failure(t: &ToeplitzBand) -> Error {
    let dense = t.to_dense();
    if dense.rank() < t.n() {
        Error::singular("Toeplitz matrix")
    } else {
        Error::Internal("Bezoutian of the ∂T kernel is not a multiple of T⁻¹".into())
    }
}

/// Checks `B·T = λI` in `O(n²)`.
///
/// Row 0 and column 0 of `P = B·T` are formed directly. For `i, j ≥ 1` the
/// Bezoutian recurrence `B_{ik} - B_{i-1,k-1} = a_i b^J_k - a^J_k b_i` and
/// the Toeplitz shift `T_{kj} = T_{k-1,j-1}` give
///
/// ```text
/// P_{ij} - P_{i-1,j-1} = B_{i0}T_{0j} - B_{i-1,n-1}T_{n-1,j-1} + a_i G_j - b_i H_j
/// ```
///
/// with `G_j = Σ_{k≥1} b^J_k T_{k-1,j-1}` and `H_j = Σ_{k≥1} a^J_k T_{k-1,j-1}`.
fn product_is_scalar(
    bez: &Matrix,
    t: &ToeplitzBand,
    a: &PolyVec,
    b: &PolyVec,
) -> bool {
    let n = t.n();
    let entry = |i: usize, j: usize| -> Rational {
        (0..n)
            .filter(|&k| !bez[(i, k)].is_zero())
            .map(|k| &bez[(i, k)] * t.entry(k, j))
            .sum()
    };
    for j in 1..n {
        if !entry(0, j).is_zero() {
            return false;
        }
    }
    for i in 1..n {
        let p = (0..n)
            .filter(|&k| !bez[(i, k)].is_zero())
            .map(|k| &bez[(i, k)] * t.entry(k, 0))
            .sum::<Rational>();
        if !p.is_zero() {
            return false;
        }
    }
    let (aj, bj) = (a.reverse(), b.reverse());
    let weighted = |w: &PolyVec, j: usize| -> Rational {
        (1..n)
            .filter(|&k| !w.coeff(k).is_zero())
            .map(|k| w.coeff(k) * t.entry(k - 1, j - 1))
            .sum()
    };
    let g: Vec<Rational> = (1..n).map(|j| weighted(&bj, j)).collect();
    let h: Vec<Rational> = (1..n).map(|j| weighted(&aj, j)).collect();
    for i in 1..n {
        for j in 1..n {
            let mut d = &bez[(i, 0)] * t.entry(0, j) - &bez[(i - 1, n - 1)] * t.entry(n - 1, j - 1);
            if !a.coeff(i).is_zero() {
                d += a.coeff(i) * &g[j - 1];
            }
            if !b.coeff(i).is_zero() {
                d -= b.coeff(i) * &h[j - 1];
            }
            if !d.is_zero() {
                return false;
            }
        }
    }
    true
}

/// `H⁻¹ = J·T⁻¹` with `T = HJ`, which has the same band as `H`.
pub fn hankel_inverse_structured(h: &HankelBand) -> Result<Matrix> {
    if !h.is_square() {
        return Err(Error::NotSquare {
            op: "hankel_inverse_structured",
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let t = h.times_flip();
    match toeplitz_inverse_structured(&t) {
        Ok(inv) => Ok(inv.reverse_rows()),
        Err(Error::Singular { .. }) => Err(Error::singular("Hankel matrix")),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::structured::complete_band;

    fn u() -> PolyVec {
        PolyVec::from_ints(&[4, 3, 2, 1])
    }

    fn ones() -> PolyVec {
        PolyVec::from_ints(&[1, 1, 1, 1])
    }

    #[test]
    fn toeplitz_oracle_examples() {
        let expect = Matrix::from_ints(&[[3, 2, 1], [2, 4, 2], [1, 2, 3]]);
        assert_eq!(bez_toeplitz_oracle(&u(), &ones()).unwrap(), expect);
        assert_eq!(
            bez_toeplitz_oracle(&u(), &PolyVec::from_ints(&[0, 0, 0, 1])).unwrap(),
            Matrix::from_ints(&[[4, 0, 0], [3, 4, 0], [2, 3, 4]])
        );
        assert!(bez_toeplitz_oracle(&u(), &u()).unwrap().is_zero());
        assert!(bez_toeplitz_oracle(&u(), &PolyVec::from_ints(&[1, 1])).is_err());
    }

    #[test]
    fn oracle_satisfies_generating_identity() {
        let (u, v) = (u(), PolyVec::from_ints(&[2, -1, 0, 5]));
        let b = BivariateCoeffs::from_matrix(&bez_toeplitz_oracle(&u, &v).unwrap());
        let num = BivariateCoeffs::toeplitz_numerator(&u, &v).unwrap();
        let bh = BivariateCoeffs::from_matrix(&bez_hankel_oracle(&u, &v).unwrap());
        let numh = BivariateCoeffs::hankel_numerator(&u, &v).unwrap();
        for (l, m) in [(q(2), q(3)), (q((-1, 2)), q(5)), (q(7), q((2, 9)))] {
            let lhs = b.eval(&l, &m) * (q(1) - &l * &m);
            assert_eq!(lhs, num.eval(&l, &m));
            assert_eq!(bh.eval(&l, &m) * (&l - &m), numh.eval(&l, &m));
        }
    }

    #[test]
    fn gs_matches_oracle() {
        let expect = Matrix::from_ints(&[[3, 2, 1], [2, 4, 2], [1, 2, 3]]);
        assert_eq!(bez_toeplitz_gs(&u(), &ones()).unwrap(), expect);
        assert!(bez_toeplitz_gs(&u(), &u()).unwrap().is_zero());
    }

    #[test]
    fn hankel_oracle_examples() {
        let expect = Matrix::from_ints(&[[-1, -2, -3], [-2, -4, -2], [-3, -2, -1]]);
        assert_eq!(bez_hankel_oracle(&u(), &ones()).unwrap(), expect);
        assert_eq!(bez_hankel_oracle(&ones(), &u()).unwrap(), expect.neg());
        assert!(bez_hankel_oracle(&u(), &u()).unwrap().is_zero());
        // B(λ, 0) = (u(λ)v(0) - u(0)v(λ)) / λ
        let b = BivariateCoeffs::from_matrix(&expect);
        let lam = q(3);
        let direct = (u().eval(&lam) * ones().first() - u().first() * ones().eval(&lam)) / &lam;
        assert_eq!(b.eval(&lam, &q(0)), direct);
    }

    #[test]
    fn hankel_literal_forms() {
        let r = bez_hankel_gs_literal(&u(), &ones()).unwrap();
        assert_eq!(r.first, Matrix::from_ints(&[[0, 0, -3], [0, -3, -4], [-3, -4, -3]]));
        assert_eq!(r.second, r.first.reverse_rows().reverse_columns());
        assert!(r.second_is_rotation);
        assert!(!r.first_matches && !r.second_matches);
        let z = bez_hankel_gs_literal(&u(), &u()).unwrap();
        assert!(z.first.is_zero() && z.second.is_zero());
    }

    #[test]
    fn q_examples() {
        let expect = Matrix::from_ints(&[[-1, -2, -3], [-2, -4, -2], [-3, -2, -1]]);
        let qm = q_transform(&u(), &ones()).unwrap();
        assert_eq!(qm, expect);
        assert_eq!(qm.determinant().unwrap(), 16);
        assert!(q_transform(&u(), &u()).unwrap().is_zero());
    }

    #[test]
    fn structured_inverse_examples() {
        let t = complete_band(&u(), &[q(0), q(0), q((1, 4))]).unwrap();
        let inv = toeplitz_inverse_structured(&t).unwrap();
        assert_eq!(inv, Matrix::from_ints(&[[4, 0, 0], [3, 4, 0], [2, 3, 4]]));
        let id = ToeplitzBand::square(vec![q(0), q(0), q(0), q(1), q(0), q(0), q(0)]).unwrap();
        assert_eq!(toeplitz_inverse_structured(&id).unwrap(), Matrix::identity(4));
        let t1 = complete_band(&u(), &[q(-1), q(0), q(0)]).unwrap();
        assert_eq!(
            toeplitz_inverse_structured(&t1).unwrap(),
            t1.to_dense().inverse().unwrap()
        );
        let one = ToeplitzBand::square(vec![q(-3)]).unwrap();
        assert_eq!(toeplitz_inverse_structured(&one).unwrap()[(0, 0)], q((-1, 3)));
    }

    #[test]
    fn structured_inverse_singular() {
        let t = ToeplitzBand::square(vec![q(1), q(1), q(1)]).unwrap();
        assert!(matches!(toeplitz_inverse_structured(&t), Err(Error::Singular { .. })));
        let z = ToeplitzBand::square(vec![q(0); 5]).unwrap();
        assert!(matches!(toeplitz_inverse_structured(&z), Err(Error::Singular { .. })));
        let h = HankelBand::square(vec![q(1), q(2), q(4)]).unwrap();
        assert!(hankel_inverse_structured(&h).is_err());
    }

    #[test]
    fn hankel_inverse_examples() {
        let j = HankelBand::square(vec![q(0), q(0), q(1), q(0), q(0)]).unwrap();
        assert_eq!(hankel_inverse_structured(&j).unwrap(), Matrix::flip(3));
        let t = complete_band(&u(), &[q(0), q(0), q((1, 4))]).unwrap();
        let h = t.times_flip();
        assert_eq!(
            hankel_inverse_structured(&h).unwrap(),
            h.to_dense().inverse().unwrap()
        );
    }

    #[test]
    fn displacement_check_rejects_wrong_scalar_multiple() {
        let t = complete_band(&u(), &[q(-1), q(0), q(0)]).unwrap();
        let [a, b] = kernel_del_euclid(&t).unwrap();
        let bez = bez_toeplitz_oracle(&a, &b).unwrap();
        assert!(product_is_scalar(&bez, &t, &a, &b));
        let mut broken = bez.clone();
        broken[(2, 1)] = &broken[(2, 1)] + &q(1);
        assert!(!product_is_scalar(&broken, &t, &a, &b));
    }
}
