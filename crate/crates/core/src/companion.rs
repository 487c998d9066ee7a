//! The four companion matrices of a coefficient vector and their powers.
//!
//! For `u = (u₁, …, u_{n+1})`:
//!
//! ```text
//! C_t = [ -u_n/u_{n+1} … -u_1/u_{n+1} ]    C_b = [ 0        I_{n-1}           ]
//!       [ I_{n-1}           0          ]          [ -u_{n+1}/u_1 … -u_2/u_1   ]
//!
//! C_l = [ -u_2/u_1      I_{n-1} ]           C_r = [ 0        -u_1/u_{n+1}     ]
//!       [   ⋮                   ]                 [ I_{n-1}      ⋮            ]
//!       [ -u_{n+1}/u_1  0       ]                 [          -u_n/u_{n+1}     ]
//! ```
//!
//! The barred variants are the same constructions applied to `u^J`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::PolyVec;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Top,
    Bottom,
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CompanionKind {
    pub side: Side,
    /// Built from `u^J` instead of `u`.
    pub barred: bool,
}

impl CompanionKind {
    pub const TOP: Self = Self::plain(Side::Top);
    pub const BOTTOM: Self = Self::plain(Side::Bottom);
    pub const LEFT: Self = Self::plain(Side::Left);
    pub const RIGHT: Self = Self::plain(Side::Right);

    pub const fn plain(side: Side) -> Self {
        CompanionKind { side, barred: false }
    }

    pub const fn barred(side: Side) -> Self {
        CompanionKind { side, barred: true }
    }

    /// The kind whose matrix is the inverse of this one (`C_t⁻¹ = C_b`, `C_r⁻¹ = C_l`).
    pub const fn inverse_partner(self) -> Self {
        let side = match self.side {
            Side::Top => Side::Bottom,
            Side::Bottom => Side::Top,
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        };
        CompanionKind { side, barred: self.barred }
    }
}

impl FromStr for CompanionKind {
    type Err = Error;

    /// Accepts `top|bottom|left|right`, optionally prefixed with `bar-`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let (barred, name) = match lower.strip_prefix("bar-").or_else(|| lower.strip_prefix("bar")) {
            Some(rest) => (true, rest.to_string()),
            None => (false, lower.clone()),
        };
        let side = match name.as_str() {
            "top" | "t" => Side::Top,
            "bottom" | "b" => Side::Bottom,
            "left" | "l" => Side::Left,
            "right" | "r" => Side::Right,
            _ => return Err(Error::Parse(format!("unknown companion kind {s:?}"))),
        };
        Ok(CompanionKind { side, barred })
    }
}

impl fmt::Display for CompanionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.side {
            Side::Top => "top",
            Side::Bottom => "bottom",
            Side::Left => "left",
            Side::Right => "right",
        };
        if self.barred {
            write!(f, "bar-{name}")
        } else {
            f.write_str(name)
        }
    }
}

/// The companion matrix of `u` of the given kind.
pub fn companion(u: &PolyVec, kind: CompanionKind) -> Result<Matrix> {
    let reversed;
    let w = if kind.barred {
        reversed = u.reverse();
        &reversed
    } else {
        u
    };
    let n = w.n();
    let c = w.coeffs();
    match kind.side {
        Side::Top | Side::Right => {
            let inv = w
                .last()
                .recip()
                .ok_or(Error::ZeroEndpoint { which: "u(n+1)" })?;
            // -u_i / u_{n+1}, i = 1..=n (0-based c[i-1])
            let ratio = |i: usize| -(&c[i - 1] * &inv);
            Ok(if kind.side == Side::Top {
                Matrix::from_fn(n, n, |i, j| {
                    if i == 0 {
                        ratio(n - j)
                    } else if j + 1 == i {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
            } else {
                Matrix::from_fn(n, n, |i, j| {
                    if j == n - 1 {
                        ratio(i + 1)
                    } else if i == j + 1 {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
            })
        }
        Side::Bottom | Side::Left => {
            let inv = w.first().recip().ok_or(Error::ZeroEndpoint { which: "u1" })?;
            // -u_i / u_1, i = 2..=n+1
            let ratio = |i: usize| -(&c[i - 1] * &inv);
            Ok(if kind.side == Side::Bottom {
                Matrix::from_fn(n, n, |i, j| {
                    if i == n - 1 {
                        ratio(n + 1 - j)
                    } else if j == i + 1 {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
            } else {
                Matrix::from_fn(n, n, |i, j| {
                    if j == 0 {
                        ratio(i + 2)
                    } else if j == i + 1 {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
            })
        }
    }
}

/// `C^k` for any integer `k`; negative powers use the inverse partner
/// (`C_t^{-k} = C_b^k`, `C_r^{-k} = C_l^k`), never a generic inversion.
pub fn companion_power(u: &PolyVec, kind: CompanionKind, k: i64) -> Result<Matrix> {
    let (kind, e) = if k < 0 {
        (kind.inverse_partner(), k.unsigned_abs())
    } else {
        (kind, k as u64)
    };
    let base = companion(u, kind)?;
    let e = u32::try_from(e).map_err(|_| Error::InvalidSize(format!("power {k} too large")))?;
    base.pow(e)
}

/// Memoized powers `C^k` of one companion matrix, for walking `k` in steps.
#[derive(Clone, Debug)]
pub struct PowerLadder {
    forward: Matrix,
    backward: Matrix,
    n: usize,
}

impl PowerLadder {
    pub fn new(u: &PolyVec, kind: CompanionKind) -> Result<Self> {
        let forward = companion(u, kind)?;
        let backward = companion(u, kind.inverse_partner())?;
        Ok(PowerLadder {
            n: forward.rows(),
            forward,
            backward,
        })
    }

    /// The matrix `C` itself.
    pub fn step(&self) -> &Matrix {
        &self.forward
    }

    /// `C⁻¹`.
    pub fn step_back(&self) -> &Matrix {
        &self.backward
    }

    pub fn power(&self, k: i64) -> Matrix {
        let base = if k < 0 { &self.backward } else { &self.forward };
        let e = u32::try_from(k.unsigned_abs()).expect("power fits in u32");
        if e == 0 {
            return Matrix::identity(self.n);
        }
        base.pow(e).expect("square")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn u4321() -> PolyVec {
        PolyVec::from_ints(&[4, 3, 2, 1])
    }

    #[test]
    fn top_and_right_examples() {
        let u = u4321();
        assert_eq!(
            companion(&u, CompanionKind::TOP).unwrap(),
            Matrix::from_ints(&[[-2, -3, -4], [1, 0, 0], [0, 1, 0]])
        );
        assert_eq!(
            companion(&u, CompanionKind::RIGHT).unwrap(),
            Matrix::from_ints(&[[0, 0, -4], [1, 0, -3], [0, 1, -2]])
        );
    }

    #[test]
    fn bottom_and_left_layout() {
        let u = u4321();
        let cb = companion(&u, CompanionKind::BOTTOM).unwrap();
        let expect = Matrix::from_rows(vec![
            vec![q(0), q(1), q(0)],
            vec![q(0), q(0), q(1)],
            vec![q((-1, 4)), q((-1, 2)), q((-3, 4))],
        ])
        .unwrap();
        assert_eq!(cb, expect);
        let cl = companion(&u, CompanionKind::LEFT).unwrap();
        let expect = Matrix::from_rows(vec![
            vec![q((-3, 4)), q(1), q(0)],
            vec![q((-1, 2)), q(0), q(1)],
            vec![q((-1, 4)), q(0), q(0)],
        ])
        .unwrap();
        assert_eq!(cl, expect);
    }

    #[test]
    fn degree_one_collapses() {
        let u = PolyVec::from_ints(&[3, 5]);
        let top = companion(&u, CompanionKind::TOP).unwrap();
        assert_eq!(top, Matrix::from_rows(vec![vec![q((-3, 5))]]).unwrap());
        assert_eq!(companion(&u, CompanionKind::RIGHT).unwrap(), top);
        let bottom = Matrix::from_rows(vec![vec![q((-5, 3))]]).unwrap();
        assert_eq!(companion(&u, CompanionKind::BOTTOM).unwrap(), bottom);
        assert_eq!(companion(&u, CompanionKind::LEFT).unwrap(), bottom);
    }

    #[test]
    fn zero_endpoint_rejected() {
        let u = PolyVec::from_ints(&[0, 3, 1]);
        assert!(companion(&u, CompanionKind::TOP).is_ok());
        assert!(matches!(
            companion(&u, CompanionKind::BOTTOM),
            Err(Error::ZeroEndpoint { .. })
        ));
        // barred top needs (u^J)_{n+1} = u_1
        assert!(companion(&u, CompanionKind::barred(Side::Top)).is_err());
    }

    #[test]
    fn powers() {
        let u = u4321();
        assert_eq!(companion_power(&u, CompanionKind::TOP, 0).unwrap(), Matrix::identity(3));
        assert_eq!(
            companion_power(&u, CompanionKind::TOP, -1).unwrap(),
            companion(&u, CompanionKind::BOTTOM).unwrap()
        );
        let cb2 = companion_power(&u, CompanionKind::BOTTOM, 2).unwrap();
        assert_eq!(cb2[(2, 2)], q((1, 16)));
        let ladder = PowerLadder::new(&u, CompanionKind::RIGHT).unwrap();
        assert_eq!(ladder.power(-2), companion_power(&u, CompanionKind::LEFT, 2).unwrap());
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("top".parse::<CompanionKind>().unwrap(), CompanionKind::TOP);
        assert_eq!(
            "bar-left".parse::<CompanionKind>().unwrap(),
            CompanionKind::barred(Side::Left)
        );
        assert!("middle".parse::<CompanionKind>().is_err());
        assert_eq!(CompanionKind::barred(Side::Right).to_string(), "bar-right");
    }
}
