//! Similarity of companion matrices through Toeplitz, Hankel and Bezoutian
//! transformers, and the canonical observer/controller change of basis.
//!
//! A conjugation `A⁻¹XA = Y` is always tested as `XA = AY` after checking
//! that `A` is invertible, so no inverse is formed.

use std::ops::RangeInclusive;

use crate::bezoutian::bez_toeplitz_oracle;
use crate::companion::{companion, companion_power, CompanionKind, Side};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{gcd, PolyVec};
use crate::rational::Rational;
use crate::structured::{del_hankel, del_toeplitz, detect_hankel, detect_toeplitz, HankelBand, ToeplitzBand};

/// Powers exercised when no range is given.
pub const DEFAULT_POWERS: RangeInclusive<i64> = -3..=3;

const BAR_LEFT: CompanionKind = CompanionKind::barred(Side::Left);
const BAR_RIGHT: CompanionKind = CompanionKind::barred(Side::Right);

/// Outcome of testing the three equivalent similarity statements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimilarityReport {
    /// `u ∈ ker ∂T` (Hankel: `u^J ∈ ker ∂H`).
    pub kernel: bool,
    /// `C_tT = TC_r`, both Toeplitz (Hankel: `C_tH = HC̄_l`, both Hankel).
    pub top: bool,
    /// `C_bT = TC_l`, both Toeplitz (Hankel: `C_bH = HC̄_r`, both Hankel).
    pub bottom: bool,
    /// `T⁻¹C_t^kT = C_r^k` (Hankel: `H⁻¹C_t^kH = C̄_l^k`).
    pub powers: Vec<(i64, bool)>,
    /// Hankel only: `H⁻¹C_b^kH = C̄_l^k`, the alternative power relation.
    pub bottom_powers: Vec<(i64, bool)>,
}

impl SimilarityReport {
    /// All statements and power checks hold.
    pub fn all_true(&self) -> bool {
        self.kernel && self.top && self.bottom && self.powers.iter().all(|&(_, ok)| ok)
    }

    /// No statement and no nonzero power check holds.
    pub fn all_false(&self) -> bool {
        !self.kernel
            && !self.top
            && !self.bottom
            && self.powers.iter().all(|&(k, ok)| k == 0 || !ok)
    }

    /// The three statements agree with each other.
    pub fn consistent(&self) -> bool {
        self.kernel == self.top && self.top == self.bottom
    }
}

fn require_invertible(a: &Matrix, what: &str) -> Result<usize> {
    let n = a.require_square("similarity transformer")?;
    if a.rank() < n {
        return Err(Error::singular(what.to_string()));
    }
    Ok(n)
}

/// `A⁻¹XA = Y` for an invertible `A`.
pub fn conjugates(a: &Matrix, x: &Matrix, y: &Matrix) -> Result<bool> {
    Ok(x.mul(a)? == a.mul(y)?)
}

fn both_toeplitz_and_equal(lhs: &Matrix, rhs: &Matrix) -> bool {
    lhs == rhs && detect_toeplitz(lhs).is_ok() && detect_toeplitz(rhs).is_ok()
}

fn both_hankel_and_equal(lhs: &Matrix, rhs: &Matrix) -> bool {
    lhs == rhs && detect_hankel(lhs).is_ok() && detect_hankel(rhs).is_ok()
}

fn annihilates(m: &Matrix, w: &PolyVec) -> Result<bool> {
    Ok(m.mul_vec(w.coeffs())?.iter().all(Rational::is_zero))
}

fn require_size(n: usize, u: &PolyVec) -> Result<()> {
    if u.n() != n {
        return Err(Error::DimensionMismatch {
            op: "transformer vs coefficient vector",
            left: (n, n),
            right: (u.n() + 1, 1),
        });
    }
    u.require_endpoints()
}

/// Evaluates each similarity statement for a Toeplitz transformer.
pub fn toeplitz_similarity(
    t: &ToeplitzBand,
    u: &PolyVec,
    powers: RangeInclusive<i64>,
) -> Result<SimilarityReport> {
    let dense = t.to_dense();
    let n = require_invertible(&dense, "Toeplitz transformer")?;
    require_size(n, u)?;
    let kernel = if n >= 2 {
        annihilates(&del_toeplitz(t)?, u)?
    } else {
        // ∂T is empty for n = 1, so every u lies in its kernel
        true
    };
    let ct = companion(u, CompanionKind::TOP)?;
    let cr = companion(u, CompanionKind::RIGHT)?;
    let cb = companion(u, CompanionKind::BOTTOM)?;
    let cl = companion(u, CompanionKind::LEFT)?;
    let top = both_toeplitz_and_equal(&ct.mul(&dense)?, &dense.mul(&cr)?);
    let bottom = both_toeplitz_and_equal(&cb.mul(&dense)?, &dense.mul(&cl)?);
    let mut checks = Vec::new();
    for k in powers {
        let lhs = companion_power(u, CompanionKind::TOP, k)?;
        let rhs = companion_power(u, CompanionKind::RIGHT, k)?;
        checks.push((k, conjugates(&dense, &lhs, &rhs)?));
    }
    Ok(SimilarityReport {
        kernel,
        top,
        bottom,
        powers: checks,
        bottom_powers: Vec::new(),
    })
}

/// Evaluates each similarity statement for a Hankel transformer. Both
/// candidate power relations are reported.
pub fn hankel_similarity(
    h: &HankelBand,
    u: &PolyVec,
    powers: RangeInclusive<i64>,
) -> Result<SimilarityReport> {
    let dense = h.to_dense();
    let n = require_invertible(&dense, "Hankel transformer")?;
    require_size(n, u)?;
    let kernel = if n >= 2 {
        annihilates(&del_hankel(h)?, &u.reverse())?
    } else {
        true
    };
    let ct = companion(u, CompanionKind::TOP)?;
    let cb = companion(u, CompanionKind::BOTTOM)?;
    let bl = companion(u, BAR_LEFT)?;
    let br = companion(u, BAR_RIGHT)?;
    let top = both_hankel_and_equal(&ct.mul(&dense)?, &dense.mul(&bl)?);
    let bottom = both_hankel_and_equal(&cb.mul(&dense)?, &dense.mul(&br)?);
    let mut checks = Vec::new();
    let mut alt = Vec::new();
    for k in powers {
        let target = companion_power(u, BAR_LEFT, k)?;
        let t = companion_power(u, CompanionKind::TOP, k)?;
        let b = companion_power(u, CompanionKind::BOTTOM, k)?;
        checks.push((k, conjugates(&dense, &t, &target)?));
        alt.push((k, conjugates(&dense, &b, &target)?));
    }
    Ok(SimilarityReport {
        kernel,
        top,
        bottom,
        powers: checks,
        bottom_powers: alt,
    })
}

/// Multiplications that carry one similarity transformer to another.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shift {
    /// `C_t·A`.
    PreTop,
    /// `C_b·A`.
    PreBottom,
    /// `A·C_r`.
    PostRight,
    /// `A·C_l`.
    PostLeft,
    /// `A·C̄_r`.
    PostBarredRight,
    /// `A·C̄_l`.
    PostBarredLeft,
}

/// Multiplies an invertible transformer by a companion matrix. If `A`
/// conjugates `C_t` to `C_r` (or to `C̄_l`) then so does the result.
pub fn shift_transform(a: &Matrix, u: &PolyVec, shift: Shift) -> Result<Matrix> {
    let n = require_invertible(a, "transformer")?;
    require_size(n, u)?;
    match shift {
        Shift::PreTop => companion(u, CompanionKind::TOP)?.mul(a),
        Shift::PreBottom => companion(u, CompanionKind::BOTTOM)?.mul(a),
        Shift::PostRight => a.mul(&companion(u, CompanionKind::RIGHT)?),
        Shift::PostLeft => a.mul(&companion(u, CompanionKind::LEFT)?),
        Shift::PostBarredRight => a.mul(&companion(u, BAR_RIGHT)?),
        Shift::PostBarredLeft => a.mul(&companion(u, BAR_LEFT)?),
    }
}

/// Controllability matrix `[B, AB, …, A^{n-1}B]`.
pub fn ctrb(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let n = a.require_square("ctrb")?;
    if b.shape() != (n, 1) {
        return Err(Error::DimensionMismatch {
            op: "ctrb",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let mut cols = vec![b.column(0)];
    for _ in 1..n {
        let next = a.mul_vec(cols.last().expect("nonempty"))?;
        cols.push(next);
    }
    Ok(Matrix::from_fn(n, n, |i, j| cols[j][i].clone()))
}

/// Observability matrix `[D; DA; …; DA^{n-1}]`.
pub fn obsv(d: &Matrix, a: &Matrix) -> Result<Matrix> {
    let n = a.require_square("obsv")?;
    if d.shape() != (1, n) {
        return Err(Error::DimensionMismatch {
            op: "obsv",
            left: d.shape(),
            right: a.shape(),
        });
    }
    let mut rows = vec![d.clone()];
    for _ in 1..n {
        let next = rows.last().expect("nonempty").mul(a)?;
        rows.push(next);
    }
    Ok(Matrix::from_fn(n, n, |i, j| rows[i][(0, j)].clone()))
}

/// Observer and controller canonical forms of `b(λ)/a(λ)`.
///
/// With `a = (a₁, …, a_n)` and `b = (b₁, …, b_n)` the coefficient vectors
/// are `u = (a_n, …, a₁, 1)` and `v = (b_n, …, b₁, 0)`. The observer form
/// has the top companion matrix itself as system matrix (first row
/// `-a₁, …, -a_n`); the controller form is its transpose-dual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalPair {
    pub u: PolyVec,
    pub v: PolyVec,
    /// Observer form: `A₁ = C_t`, `B₁ = e₁`, `D₁ = (b₁, …, b_n)`.
    pub a1: Matrix,
    pub b1: Matrix,
    pub d1: Matrix,
    /// Controller form: `A₂ = C_tᵀ = C̄_l`, `B₂ = (b₁, …, b_n)ᵀ`, `D₂ = e₁ᵀ`.
    pub a2: Matrix,
    pub b2: Matrix,
    pub d2: Matrix,
}

impl CanonicalPair {
    pub fn new(a: &[Rational], b: &[Rational]) -> Result<Self> {
        let n = a.len();
        if n == 0 || b.len() != n {
            return Err(Error::InvalidSize(format!(
                "canonical forms need n ≥ 1 coefficients each, got {} and {}",
                a.len(),
                b.len()
            )));
        }
        let u = PolyVec::new(a.iter().rev().cloned().chain([Rational::one()]).collect())?;
        let v = PolyVec::new(b.iter().rev().cloned().chain([Rational::zero()]).collect())?;
        let ct = companion(&u, CompanionKind::TOP)?;
        let e1: Vec<Rational> = (0..n)
            .map(|i| if i == 0 { Rational::one() } else { Rational::zero() })
            .collect();
        Ok(CanonicalPair {
            a2: ct.transpose(),
            b1: Matrix::column_vector(&e1),
            d1: Matrix::row_vector(b),
            a1: ct,
            b2: Matrix::column_vector(b),
            d2: Matrix::row_vector(&e1),
            u,
            v,
        })
    }
}

/// The change of basis between the two canonical forms and its cross-checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalTransform {
    /// `Q = O(D₂, A₂)⁻¹ O(D₁, A₁)`, so that `Q⁻¹A₂Q = A₁`.
    pub q: Matrix,
    /// `Q = C(A₂, B₂) C(A₁, B₁)⁻¹`.
    pub controllability_agrees: bool,
    /// `Q = -B_T(u, v)ᵀ J`.
    pub matches_bezoutian: bool,
    /// `Q C_t^k Q⁻¹ = C̄_l^k` for `k` in [`DEFAULT_POWERS`].
    pub powers: Vec<(i64, bool)>,
    /// `Q⁻¹ C_t^k Q = C̄_l^k`, the same relation with `Q` on the other side.
    pub inverse_powers: Vec<(i64, bool)>,
}

/// Computes `Q` with `Q⁻¹A₂Q = A₁`; fails if the pair is not minimal.
pub fn canonical_q(a: &[Rational], b: &[Rational]) -> Result<CanonicalTransform> {
    let pair = CanonicalPair::new(a, b)?;
    let o1 = obsv(&pair.d1, &pair.a1)?;
    let o2 = obsv(&pair.d2, &pair.a2)?;
    let c1 = ctrb(&pair.a1, &pair.b1)?;
    let c2 = ctrb(&pair.a2, &pair.b2)?;
    let o2_inv = o2.inverse().map_err(|_| Error::NotMinimal("observable"))?;
    if o1.rank() < o1.rows() {
        return Err(Error::NotMinimal("observable"));
    }
    let c1_inv = c1.inverse().map_err(|_| Error::NotMinimal("controllable"))?;
    if c2.rank() < c2.rows() {
        return Err(Error::NotMinimal("controllable"));
    }
    let q = o2_inv.mul(&o1)?;
    if !conjugates(&q, &pair.a2, &pair.a1)? {
        return Err(Error::Internal("Q does not carry A₂ to A₁".into()));
    }
    let controllability_agrees = c2.mul(&c1_inv)? == q;
    let bez = bez_toeplitz_oracle(&pair.u, &pair.v)?;
    let matches_bezoutian = bez.transpose().reverse_columns().neg() == q;
    let mut powers = Vec::new();
    let mut inverse_powers = Vec::new();
    for k in DEFAULT_POWERS {
        let ct = companion_power(&pair.u, CompanionKind::TOP, k)?;
        let bl = companion_power(&pair.u, BAR_LEFT, k)?;
        // Q C_t^k Q⁻¹ = C̄_l^k  ⇔  Q C_t^k = C̄_l^k Q
        powers.push((k, q.mul(&ct)? == bl.mul(&q)?));
        inverse_powers.push((k, conjugates(&q, &ct, &bl)?));
    }
    Ok(CanonicalTransform {
        q,
        controllability_agrees,
        matches_bezoutian,
        powers,
        inverse_powers,
    })
}

/// Fails unless `u` and `v` are coprime.
pub fn require_coprime(u: &PolyVec, v: &PolyVec) -> Result<()> {
    let g = gcd(&u.to_poly(), &v.to_poly())?;
    match g.degree() {
        Some(0) => Ok(()),
        Some(d) => Err(Error::NotCoprime { gcd_degree: d }),
        None => Err(Error::BothZero),
    }
}

/// `B_T C_t(w)^k B_T⁻¹ = C_r(w)^k` for `w ∈ {u, v}` and every `k` in range.
pub fn bezoutian_similarity_check(
    u: &PolyVec,
    v: &PolyVec,
    powers: RangeInclusive<i64>,
) -> Result<bool> {
    u.require_endpoints()?;
    v.require_endpoints()?;
    require_coprime(u, v)?;
    let bez = bez_toeplitz_oracle(u, v)?;
    if bez.rank() < bez.rows() {
        return Err(Error::singular("Toeplitz Bezoutian"));
    }
    for k in powers {
        for w in [u, v] {
            let ct = companion_power(w, CompanionKind::TOP, k)?;
            let cr = companion_power(w, CompanionKind::RIGHT, k)?;
            // B C_t^k B⁻¹ = C_r^k  ⇔  B C_t^k = C_r^k B
            if bez.mul(&ct)? != cr.mul(&bez)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::structured::complete_band;

    fn u() -> PolyVec {
        PolyVec::from_ints(&[4, 3, 2, 1])
    }

    fn u_plus_inv() -> ToeplitzBand {
        complete_band(&u(), &[q(0), q(0), q((1, 4))]).unwrap()
    }

    fn t1() -> ToeplitzBand {
        complete_band(&u(), &[q(-1), q(0), q(0)]).unwrap()
    }

    #[test]
    fn toeplitz_report_examples() {
        let r = toeplitz_similarity(&u_plus_inv(), &u(), DEFAULT_POWERS).unwrap();
        assert!(r.all_true(), "{r:?}");
        let r = toeplitz_similarity(&t1(), &u(), DEFAULT_POWERS).unwrap();
        assert!(r.all_true(), "{r:?}");
        let id = detect_toeplitz(&Matrix::identity(3)).unwrap();
        let r = toeplitz_similarity(&id, &u(), DEFAULT_POWERS).unwrap();
        assert!(r.all_false(), "{r:?}");
        assert!(del_toeplitz(&id).unwrap().mul_vec(u().coeffs()).unwrap() == vec![q(3), q(2)]);
    }

    #[test]
    fn toeplitz_report_rejects_singular() {
        let t = ToeplitzBand::square(vec![q(1); 5]).unwrap();
        assert!(matches!(
            toeplitz_similarity(&t, &u(), DEFAULT_POWERS),
            Err(Error::Singular { .. })
        ));
        let bad = PolyVec::from_ints(&[0, 1, 2, 3]);
        assert!(matches!(
            toeplitz_similarity(&u_plus_inv(), &bad, DEFAULT_POWERS),
            Err(Error::ZeroEndpoint { .. })
        ));
    }

    #[test]
    fn hankel_report_examples() {
        let h = t1().times_flip();
        let r = hankel_similarity(&h, &u(), DEFAULT_POWERS).unwrap();
        assert!(r.kernel && r.top && r.bottom);
        assert!(r.powers.iter().all(|&(_, ok)| ok));
        let j = detect_hankel(&Matrix::flip(3)).unwrap();
        let r = hankel_similarity(&j, &u(), DEFAULT_POWERS).unwrap();
        assert!(!r.kernel && !r.top && !r.bottom);
        // n = 2, u = (1,1,1): the band (x, y, z) needs x + y + z = 0
        let small = HankelBand::square(vec![q(1), q(-1), q(0)]).unwrap();
        let r = hankel_similarity(&small, &PolyVec::from_ints(&[1, 1, 1]), DEFAULT_POWERS).unwrap();
        assert!(r.kernel && r.top && r.bottom);
    }

    #[test]
    fn shift_examples() {
        let t1 = t1().to_dense();
        let shifted = shift_transform(&t1, &u(), Shift::PostLeft).unwrap();
        assert_eq!(shifted, u_plus_inv().to_dense());
        let ct = companion(&u(), CompanionKind::TOP).unwrap();
        let cr = companion(&u(), CompanionKind::RIGHT).unwrap();
        let pre = shift_transform(&u_plus_inv().to_dense(), &u(), Shift::PreTop).unwrap();
        assert!(conjugates(&pre, &ct, &cr).unwrap());
        assert_eq!(shift_transform(&Matrix::identity(3), &u(), Shift::PreTop).unwrap(), ct);
    }

    #[test]
    fn ctrb_obsv_examples() {
        let e1 = Matrix::from_ints(&[[1], [0], [0]]);
        assert_eq!(
            ctrb(&Matrix::identity(3), &e1).unwrap(),
            Matrix::from_ints(&[[1, 1, 1], [0, 0, 0], [0, 0, 0]])
        );
        let ct = companion(&u(), CompanionKind::TOP).unwrap();
        assert_eq!(
            ctrb(&ct, &e1).unwrap(),
            Matrix::from_ints(&[[1, -2, 1], [0, 1, -2], [0, 0, 1]])
        );
        assert_eq!(
            obsv(&e1.transpose(), &Matrix::identity(3)).unwrap(),
            Matrix::from_ints(&[[1, 0, 0], [1, 0, 0], [1, 0, 0]])
        );
        assert!(ctrb(&ct, &Matrix::identity(3)).is_err());
    }

    #[test]
    fn canonical_q_examples() {
        let r = canonical_q(&[q(3)], &[q(5)]).unwrap();
        assert_eq!(r.q, Matrix::from_ints(&[[5]]));
        assert!(r.matches_bezoutian && r.controllability_agrees);

        let (a, b) = ([q(2), q(3), q(4)], [q(1), q(0), q(2)]);
        let r = canonical_q(&a, &b).unwrap();
        assert_eq!(r.q, Matrix::from_ints(&[[1, 0, 2], [0, -1, 0], [2, 0, 6]]));
        assert!(r.controllability_agrees && r.matches_bezoutian);
        assert!(r.powers.iter().all(|&(_, ok)| ok));
        assert!(r.inverse_powers.iter().any(|&(_, ok)| !ok));
        let pair = CanonicalPair::new(&a, &b).unwrap();
        assert_eq!(pair.a2, companion(&pair.u, BAR_LEFT).unwrap());
        assert_eq!(pair.a1.row(0), &[q(-2), q(-3), q(-4)]);

        // a(λ) = λ² + 2λ + 1 and b(λ) = λ + 1 share the root -1
        assert!(matches!(
            canonical_q(&[q(2), q(1)], &[q(1), q(1)]),
            Err(Error::NotMinimal(_))
        ));
    }

    #[test]
    fn bezoutian_similarity_examples() {
        let ones = PolyVec::from_ints(&[1, 1, 1, 1]);
        assert!(bezoutian_similarity_check(&u(), &ones, -2..=2).unwrap());
        assert!(bezoutian_similarity_check(&u(), &ones, 0..=0).unwrap());
        assert!(bezoutian_similarity_check(&u(), &u(), -2..=2).is_err());
    }
}
