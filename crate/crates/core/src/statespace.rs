//! Discrete-time SISO systems with transfer function `-v(λ)/u(λ)`.
//!
//! The state at time `k` is the window `β(k) = (b_k, …, b_{k+n-1})` of the
//! sequence `b` with `x = -Ub` and `y = Vb`. The initial state is `β(1)`.

use crate::bezoutian::bez_toeplitz_oracle;
use crate::companion::{companion, CompanionKind};
use crate::error::{Error, Result};
use crate::extension::{extend_full, extend_vertical, ExtensionSpec};
use crate::matrix::{dot, Matrix};
use crate::poly::{gcd, PolyVec};
use crate::rational::Rational;
use crate::structured::lower_triangular_toeplitz;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SisoSystem {
    pub u: PolyVec,
    pub v: PolyVec,
    /// `gcd(u, v)` is constant. Simulation does not need it; the
    /// transformed realization does.
    pub coprime: bool,
}

impl SisoSystem {
    pub fn new(u: PolyVec, v: PolyVec) -> Result<Self> {
        if u.n() != v.n() {
            return Err(Error::DimensionMismatch {
                op: "system",
                left: (u.n() + 1, 1),
                right: (v.n() + 1, 1),
            });
        }
        let coprime = match gcd(&u.to_poly(), &v.to_poly()) {
            Ok(g) => g.degree() == Some(0),
            Err(_) => false,
        };
        Ok(SisoSystem { u, v, coprime })
    }

    pub fn n(&self) -> usize {
        self.u.n()
    }

    fn inv_u1(&self) -> Result<Rational> {
        self.u.first().recip().ok_or(Error::ZeroEndpoint { which: "u1" })
    }

    fn feedthrough(&self) -> Result<Rational> {
        Ok(-(self.v.first() * &self.inv_u1()?))
    }

    fn bezoutian(&self) -> Result<Matrix> {
        let bez = bez_toeplitz_oracle(&self.u, &self.v)?;
        if bez.rank() < self.n() {
            return Err(Error::singular("Toeplitz Bezoutian (u and v are not coprime)"));
        }
        Ok(bez)
    }
}

/// `β(k+1) = Aβ(k) + Bx_k`, `y_k = Dβ(k) + d·x_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub a: Matrix,
    pub b: Vec<Rational>,
    pub d: Vec<Rational>,
    pub feedthrough: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    /// `β(1), …, β(p+1)`.
    pub states: Vec<Vec<Rational>>,
    pub outputs: Vec<Rational>,
    pub inputs: Vec<Rational>,
}

/// `A = C_b`, `B = -(0, …, 0, 1/u₁)ᵀ`, `D = (u₁v_{n+2-j} - v₁u_{n+2-j})_j / u₁`.
pub fn controller_form(sys: &SisoSystem) -> Result<Realization> {
    let n = sys.n();
    let inv = sys.inv_u1()?;
    let (u, v) = (&sys.u, &sys.v);
    let b = (0..n)
        .map(|i| if i + 1 == n { -&inv } else { Rational::zero() })
        .collect();
    let d = (0..n)
        .map(|j| (u.first() * v.coeff(n - j) - v.first() * u.coeff(n - j)) * &inv)
        .collect();
    Ok(Realization {
        a: companion(u, CompanionKind::BOTTOM)?,
        b,
        d,
        feedthrough: sys.feedthrough()?,
    })
}

/// The same system in the basis `β' = B_T β`: `A = C_l`,
/// `B₁ = -(last column of B_T)/u₁`, `D₁ = e₁ᵀ/u₁`.
pub fn transformed_form(sys: &SisoSystem) -> Result<Realization> {
    let n = sys.n();
    let inv = sys.inv_u1()?;
    let bez = sys.bezoutian()?;
    let b = bez.column(n - 1).iter().map(|c| -(c * &inv)).collect();
    let d = (0..n)
        .map(|j| if j == 0 { inv.clone() } else { Rational::zero() })
        .collect();
    Ok(Realization {
        a: companion(&sys.u, CompanionKind::LEFT)?,
        b,
        d,
        feedthrough: sys.feedthrough()?,
    })
}

pub fn simulate(r: &Realization, beta0: &[Rational], inputs: &[Rational]) -> Result<Trajectory> {
    let n = r.a.rows();
    if beta0.len() != n {
        return Err(Error::DimensionMismatch {
            op: "simulate",
            left: (n, n),
            right: (beta0.len(), 1),
        });
    }
    let mut states = vec![beta0.to_vec()];
    let mut outputs = Vec::with_capacity(inputs.len());
    for x in inputs {
        let beta = states.last().expect("nonempty");
        outputs.push(dot(&r.d, beta) + &r.feedthrough * x);
        let mut next = r.a.mul_vec(beta)?;
        for (s, b) in next.iter_mut().zip(&r.b) {
            if !b.is_zero() {
                *s += b * x;
            }
        }
        states.push(next);
    }
    Ok(Trajectory {
        states,
        outputs,
        inputs: inputs.to_vec(),
    })
}

/// Inputs and outputs generated by a sequence `b`:
/// `x_k = -Σ_j u_{n+1-j} b_{k+j}`, `y_k = Σ_j v_{n+1-j} b_{k+j}`.
pub fn b_to_io(b: &[Rational], sys: &SisoSystem) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let n = sys.n();
    if b.len() < n + 1 {
        return Err(Error::InvalidSize(format!(
            "a sequence for an order-{n} system needs at least {} terms, got {}",
            n + 1,
            b.len()
        )));
    }
    let steps = b.len() - n;
    let mut xs = Vec::with_capacity(steps);
    let mut ys = Vec::with_capacity(steps);
    for k in 0..steps {
        let mut x = Rational::zero();
        let mut y = Rational::zero();
        for j in 0..=n {
            let bj = &b[k + j];
            if bj.is_zero() {
                continue;
            }
            x -= sys.u.coeff(n - j) * bj;
            y += sys.v.coeff(n - j) * bj;
        }
        xs.push(x);
        ys.push(y);
    }
    Ok((xs, ys))
}

/// The last-row, last-column entries `s_i` of `C_b^i`, `i = 1..count`.
fn bottom_corner_powers(u: &PolyVec, count: usize) -> Result<Vec<Rational>> {
    let n = u.n();
    let cb = companion(u, CompanionKind::BOTTOM)?;
    let mut col: Vec<Rational> = (0..n)
        .map(|i| if i + 1 == n { Rational::one() } else { Rational::zero() })
        .collect();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        col = cb.mul_vec(&col)?;
        out.push(col[n - 1].clone());
    }
    Ok(out)
}

/// `p×p` unit lower triangular Toeplitz matrix with first column
/// `(1, s₁, …, s_{p-1})`.
pub fn build_f(u: &PolyVec, p: usize) -> Result<Matrix> {
    if u.first().is_zero() {
        return Err(Error::ZeroEndpoint { which: "u1" });
    }
    if p == 0 {
        return Err(Error::InvalidSize("F_p needs p ≥ 1".into()));
    }
    let mut first = vec![Rational::one()];
    first.extend(bottom_corner_powers(u, p - 1)?);
    Ok(lower_triangular_toeplitz(&first))
}

/// `p×p` leading block of the banded lower triangular `U`.
pub fn truncated_u(u: &PolyVec, p: usize) -> Matrix {
    let first: Vec<Rational> = (0..p)
        .map(|i| if i <= u.n() { u.coeff(i).clone() } else { Rational::zero() })
        .collect();
    lower_triangular_toeplitz(&first)
}

/// `-(1/u₁)[O_{n×p}; F_p]·x`.
fn forced_response(sys: &SisoSystem, inputs: &[Rational]) -> Result<Vec<Rational>> {
    let n = sys.n();
    let p = inputs.len();
    let inv = sys.inv_u1()?;
    let f = build_f(&sys.u, p)?;
    let fx = f.mul_vec(inputs)?;
    Ok((0..n)
        .map(|_| Rational::zero())
        .chain(fx.iter().map(|v| -(v * &inv)))
        .collect())
}

fn add_into(acc: &mut [Rational], other: &[Rational]) {
    for (a, b) in acc.iter_mut().zip(other) {
        *a += b;
    }
}

fn check_state(n: usize, beta: &[Rational]) -> Result<()> {
    if beta.len() != n {
        return Err(Error::DimensionMismatch {
            op: "initial state",
            left: (n, 1),
            right: (beta.len(), 1),
        });
    }
    Ok(())
}

/// `(b_1, …, b_{n+p})` from `β(1)` and `x₁, …, x_p`:
/// `T[I:0,-p;0,0]·β(1) - (1/u₁)[O; F_p]·x`.
pub fn long_state(sys: &SisoSystem, beta_init: &[Rational], inputs: &[Rational]) -> Result<Vec<Rational>> {
    let n = sys.n();
    check_state(n, beta_init)?;
    let p = inputs.len();
    if p == 0 {
        return Err(Error::InvalidSize("long_state needs at least one input".into()));
    }
    let ext = extend_vertical(&Matrix::identity(n), &sys.u, 0, -(p as i64))?;
    let mut out = ext.mul_vec(beta_init)?;
    add_into(&mut out, &forced_response(sys, inputs)?);
    Ok(out)
}

/// `(n+q-1)×q` band with `B₁` in column `j` starting at row `j`.
fn input_band(b1: &[Rational], q: usize) -> Matrix {
    let n = b1.len();
    Matrix::from_fn(n + q - 1, q, |i, j| {
        if i >= j && i - j < n {
            b1[i - j].clone()
        } else {
            Rational::zero()
        }
    })
}

/// `β'` after `q` steps of the transformed realization:
/// `C_l^q β'(1) + T[I:0,0;0,1-q]·E_q·x`.
pub fn late_state(sys: &SisoSystem, beta_p_init: &[Rational], inputs: &[Rational]) -> Result<Vec<Rational>> {
    let n = sys.n();
    check_state(n, beta_p_init)?;
    let q = inputs.len();
    if q == 0 {
        return Err(Error::InvalidSize("late_state needs at least one input".into()));
    }
    let real = transformed_form(sys)?;
    let cl_q = real.a.pow(q as u32)?;
    let mut out = cl_q.mul_vec(beta_p_init)?;
    let spec = ExtensionSpec::new(0, 0, 0, 1 - q as i64)?;
    let ext = extend_full(&Matrix::identity(n), &sys.u, spec)?;
    let driven = ext.matrix.mul(&input_band(&real.b, q))?.mul_vec(inputs)?;
    add_into(&mut out, &driven);
    Ok(out)
}

/// `(b_{q+1}, …, b_{n+q+p})` after evolving `q` steps in the transformed
/// basis from `β'(1)` and `p` further steps in the original basis.
///
/// Evaluated as `T[B_T⁻¹:0,-p;-q,-q]β'(1) + T[B_T⁻¹:0,-p;0,1-q]E_q x_{1..q}
/// - (1/u₁)[O; F_p]x_{q+1..q+p}` and checked against the two-phase form
/// `T[I:0,-p;0,0]B_T⁻¹β'(q+1) - (1/u₁)[O; F_p]x_{q+1..q+p}`.
pub fn mixed_state(
    sys: &SisoSystem,
    beta_p_init: &[Rational],
    inputs: &[Rational],
    q: usize,
) -> Result<Vec<Rational>> {
    let n = sys.n();
    check_state(n, beta_p_init)?;
    if q > inputs.len() || inputs.len() == q {
        return Err(Error::InvalidSize(format!(
            "mixed_state needs q < number of inputs, got q = {q} with {} inputs",
            inputs.len()
        )));
    }
    let (early, late) = inputs.split_at(q);
    let p = late.len() as i64;
    let bez_inv = sys.bezoutian()?.inverse()?;
    let qi = q as i64;
    let first = extend_full(&bez_inv, &sys.u, ExtensionSpec::new(0, -p, -qi, -qi)?)?;
    let mut out = first.matrix.mul_vec(beta_p_init)?;
    if q > 0 {
        let real = transformed_form(sys)?;
        let second = extend_full(&bez_inv, &sys.u, ExtensionSpec::new(0, -p, 0, 1 - qi)?)?;
        let driven = second.matrix.mul(&input_band(&real.b, q))?.mul_vec(early)?;
        add_into(&mut out, &driven);
    }
    add_into(&mut out, &forced_response(sys, late)?);

    let mid = if q > 0 {
        late_state(sys, beta_p_init, early)?
    } else {
        beta_p_init.to_vec()
    };
    let two_phase = long_state(sys, &bez_inv.mul_vec(&mid)?, late)?;
    if two_phase != out {
        return Err(Error::Internal("mixed-state closed form disagrees with the two-phase evolution".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn sys() -> SisoSystem {
        SisoSystem::new(PolyVec::from_ints(&[4, 3, 2, 1]), PolyVec::from_ints(&[1, 1, 1, 1])).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn controller_form_example() {
        let r = controller_form(&sys()).unwrap();
        assert_eq!(r.b, vec![q(0), q(0), q((-1, 4))]);
        assert_eq!(r.d, vec![q((3, 4)), q((1, 2)), q((1, 4))]);
        assert_eq!(r.feedthrough, q((-1, 4)));
        let bez = bez_toeplitz_oracle(&sys().u, &sys().v).unwrap();
        let scaled: Vec<Rational> = bez.row(0).iter().map(|c| c * &q((1, 4))).collect();
        assert_eq!(r.d, scaled);
    }

    #[test]
    fn zero_numerator_gives_zero_output() {
        let s = SisoSystem::new(PolyVec::from_ints(&[4, 3, 2, 1]), PolyVec::from_ints(&[0, 0, 0, 0])).unwrap();
        let r = controller_form(&s).unwrap();
        assert!(r.d.iter().all(Rational::is_zero) && r.feedthrough.is_zero());
        let tr = simulate(&r, &ints(&[1, 2, 3]), &ints(&[5, -1, 7])).unwrap();
        assert!(tr.outputs.iter().all(Rational::is_zero));
        assert!(!s.coprime);
    }

    #[test]
    fn scalar_system() {
        let s = SisoSystem::new(PolyVec::from_ints(&[2, 3]), PolyVec::from_ints(&[1, 5])).unwrap();
        let r = controller_form(&s).unwrap();
        let tr = simulate(&r, &ints(&[7]), &ints(&[4])).unwrap();
        // b_{k+1} = (-x_k - u₂ b_k) / u₁
        assert_eq!(tr.states[1], vec![q((-4 - 21, 2))]);
    }

    #[test]
    fn transformed_form_example() {
        let r = transformed_form(&sys()).unwrap();
        assert_eq!(r.b, vec![q((-1, 4)), q((-1, 2)), q((-3, 4))]);
        assert_eq!(r.d, vec![q((1, 4)), q(0), q(0)]);
        let same = SisoSystem::new(sys().u, sys().u).unwrap();
        assert!(transformed_form(&same).is_err());
    }

    #[test]
    fn b_to_io_examples() {
        let (x, y) = b_to_io(&ints(&[1, 0, 0, 1]), &sys()).unwrap();
        assert_eq!((x, y), (vec![q(-5)], vec![q(2)]));
        let (x, y) = b_to_io(&ints(&[1, 0, 0, 0]), &sys()).unwrap();
        assert_eq!((x, y), (vec![q(-1)], vec![q(1)]));
        let (x, y) = b_to_io(&ints(&[0; 6]), &sys()).unwrap();
        assert!(x.iter().chain(&y).all(Rational::is_zero));
        assert!(b_to_io(&ints(&[1, 2, 3]), &sys()).is_err());
    }

    #[test]
    fn simulate_reproduces_windows() {
        let b = ints(&[1, -2, 0, 3, 5, -1, 2, 0, 4]);
        let (x, y) = b_to_io(&b, &sys()).unwrap();
        let r = controller_form(&sys()).unwrap();
        let tr = simulate(&r, &b[..3], &x).unwrap();
        for (k, state) in tr.states.iter().enumerate() {
            assert_eq!(state.as_slice(), &b[k..k + 3]);
        }
        assert_eq!(tr.outputs, y);
    }

    #[test]
    fn f_examples() {
        let u = sys().u;
        let f = build_f(&u, 3).unwrap();
        assert_eq!(f[(1, 0)], q((-3, 4)));
        assert_eq!(f[(2, 0)], q((1, 16)));
        let scaled = f.scale(&q((1, 4)));
        assert_eq!(scaled, crate::structured::build_u_plus(&u).to_dense().inverse().unwrap());
        assert_eq!(build_f(&u, 1).unwrap(), Matrix::identity(1));
        for p in 1..=6 {
            let prod = build_f(&u, p).unwrap().scale(&q((1, 4))).mul(&truncated_u(&u, p)).unwrap();
            assert!(prod.is_identity());
        }
    }

    #[test]
    fn long_state_matches_simulation() {
        let r = controller_form(&sys()).unwrap();
        let beta = ints(&[2, -1, 3]);
        let x = ints(&[1, 0, -4, 2]);
        let tr = simulate(&r, &beta, &x).unwrap();
        let long = long_state(&sys(), &beta, &x).unwrap();
        let mut expect = beta.clone();
        for s in &tr.states[1..] {
            expect.push(s[2].clone());
        }
        assert_eq!(long, expect);
        let one = long_state(&sys(), &beta, &ints(&[3])).unwrap();
        // u₁b₄ = -x₁ - (u₄b₁ + u₃b₂ + u₂b₃) = -3 - (2 - 2 + 9)
        assert_eq!(one[3], q((-12, 4)));
    }

    #[test]
    fn late_state_matches_simulation() {
        let r = transformed_form(&sys()).unwrap();
        let beta = ints(&[1, 4, -2]);
        for x in [ints(&[5]), ints(&[1, -1, 2, 0]), ints(&[0, 0, 0])] {
            let tr = simulate(&r, &beta, &x).unwrap();
            assert_eq!(&late_state(&sys(), &beta, &x).unwrap(), tr.states.last().unwrap());
        }
    }

    #[test]
    fn mixed_state_matches_two_phase_simulation() {
        let s = sys();
        let bez = bez_toeplitz_oracle(&s.u, &s.v).unwrap();
        let bez_inv = bez.inverse().unwrap();
        let beta_p = ints(&[3, -1, 2]);
        for (x, q_steps) in [(ints(&[2, -3]), 1), (ints(&[1, 4, -2, 5]), 2), (ints(&[7, 1]), 0)] {
            let out = mixed_state(&s, &beta_p, &x, q_steps).unwrap();
            let mid = simulate(&transformed_form(&s).unwrap(), &beta_p, &x[..q_steps]).unwrap();
            let beta = bez_inv.mul_vec(mid.states.last().unwrap()).unwrap();
            let tail = simulate(&controller_form(&s).unwrap(), &beta, &x[q_steps..]).unwrap();
            let mut expect = beta.clone();
            for st in &tail.states[1..] {
                expect.push(st[2].clone());
            }
            assert_eq!(out, expect);
        }
    }

    #[test]
    fn literal_mixed_second_term_without_bezoutian_differs() {
        let s = sys();
        let p = 2;
        let q_steps = 2;
        let real = transformed_form(&s).unwrap();
        let lit = extend_full(&Matrix::identity(3), &s.u, ExtensionSpec::new(0, -p, 0, 1 - q_steps).unwrap())
            .unwrap()
            .matrix
            .mul(&input_band(&real.b, q_steps as usize))
            .unwrap();
        let bez_inv = bez_toeplitz_oracle(&s.u, &s.v).unwrap().inverse().unwrap();
        let fixed = extend_full(&bez_inv, &s.u, ExtensionSpec::new(0, -p, 0, 1 - q_steps).unwrap())
            .unwrap()
            .matrix
            .mul(&input_band(&real.b, q_steps as usize))
            .unwrap();
        assert_ne!(lit, fixed);
    }
}
