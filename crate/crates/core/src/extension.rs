//! Extending a square matrix in four directions with companion powers.
//!
//! `T[A:k,l;s,t]` stacks the first rows of `C_t^{l+i}A` above `C_t^lA`
//! (`i = 1..k-l`), then multiplies by `C_r^t` and appends the last columns
//! of the products with `C_r^{t+i}` (`i = 1..s-t`). The `n×n` block whose
//! top-left corner sits at grid offset `(r, c)` is `C_t^{k-r} A C_r^{t+c}`,
//! so `A` itself sits at `(k, -t)`. The Hankel variant uses the barred
//! right companion for the horizontal steps.

use std::fmt;

use crate::companion::{companion, companion_power, CompanionKind, Side};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::PolyVec;
use crate::rational::Rational;
use crate::structured::{
    build_u_minus, build_u_plus, del_hankel, del_toeplitz, detect_hankel, detect_toeplitz,
    lower_triangular_toeplitz, upper_triangular_toeplitz, HankelBand, ToeplitzBand,
};

/// The four extents of an extension and its flavor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExtensionSpec {
    pub k: i64,
    pub l: i64,
    pub s: i64,
    pub t: i64,
    /// Use `C̄_r`/`C̄_l` for the horizontal steps.
    pub hankel: bool,
}

impl ExtensionSpec {
    pub fn new(k: i64, l: i64, s: i64, t: i64) -> Result<Self> {
        Self::with_mode(k, l, s, t, false)
    }

    pub fn hankel(k: i64, l: i64, s: i64, t: i64) -> Result<Self> {
        Self::with_mode(k, l, s, t, true)
    }

    pub fn with_mode(k: i64, l: i64, s: i64, t: i64, hankel: bool) -> Result<Self> {
        if k < l {
            return Err(Error::InvalidSpec(format!("k = {k} < l = {l}")));
        }
        if s < t {
            return Err(Error::InvalidSpec(format!("s = {s} < t = {t}")));
        }
        Ok(ExtensionSpec { k, l, s, t, hankel })
    }

    /// Rows added to an `n×n` generator.
    pub fn extra_rows(&self) -> usize {
        (self.k - self.l) as usize
    }

    /// Columns added to an `n×n` generator.
    pub fn extra_cols(&self) -> usize {
        (self.s - self.t) as usize
    }

    /// The spec generating the same grid from `C_t^i A C_r^j`.
    pub fn shifted(&self, i: i64, j: i64) -> Self {
        ExtensionSpec {
            k: self.k - i,
            l: self.l - i,
            s: self.s - j,
            t: self.t - j,
            hankel: self.hankel,
        }
    }

    fn horizontal(&self) -> CompanionKind {
        if self.hankel {
            CompanionKind::barred(Side::Right)
        } else {
            CompanionKind::RIGHT
        }
    }
}

impl fmt::Display for ExtensionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = if self.hankel { "H" } else { "T" };
        write!(f, "{name}[A:{},{};{},{}]", self.k, self.l, self.s, self.t)
    }
}

/// An extended matrix with the position of its generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionGrid {
    pub matrix: Matrix,
    /// Grid offset `(k, -t)` of the generator's top-left entry; may lie
    /// outside the grid.
    pub origin: (i64, i64),
    pub n: usize,
    pub spec: ExtensionSpec,
}

impl ExtensionGrid {
    /// The `n×n` block at grid offset `(r, c)`.
    pub fn block(&self, r: usize, c: usize) -> Option<Matrix> {
        let (rows, cols) = self.matrix.shape();
        if r + self.n > rows || c + self.n > cols {
            return None;
        }
        Some(self.matrix.submatrix(r, r + self.n, c, c + self.n))
    }

    /// The block equal to `C_t^i A C_r^j`, if it lies in the grid.
    pub fn power_block(&self, i: i64, j: i64) -> Option<Matrix> {
        let r = self.origin.0 - i;
        let c = self.origin.1 + j;
        if r < 0 || c < 0 {
            return None;
        }
        self.block(r as usize, c as usize)
    }

    /// Diagonal index of a grid entry relative to the generator: entry
    /// `(i, j)` of `A` has index `i - j`.
    pub fn relative_diagonal(&self, row: usize, col: usize) -> i64 {
        row as i64 - col as i64 - self.origin.0 + self.origin.1
    }

    /// Range of relative diagonal indices present in the grid.
    pub fn diagonal_range(&self) -> (i64, i64) {
        let (rows, cols) = self.matrix.shape();
        (
            self.relative_diagonal(0, cols - 1),
            self.relative_diagonal(rows - 1, 0),
        )
    }

    /// All entries on one relative diagonal, top to bottom.
    pub fn diagonal(&self, d: i64) -> Vec<Rational> {
        let (rows, cols) = self.matrix.shape();
        (0..rows)
            .filter_map(|g| {
                let c = g as i64 - d - self.origin.0 + self.origin.1;
                (c >= 0 && (c as usize) < cols).then(|| self.matrix[(g, c as usize)].clone())
            })
            .collect()
    }
}

fn require_generator(a: &Matrix, u: &PolyVec) -> Result<usize> {
    let n = a.require_square("extension generator")?;
    if u.n() != n {
        return Err(Error::DimensionMismatch {
            op: "extension",
            left: (n, n),
            right: (u.n() + 1, 1),
        });
    }
    u.require_endpoints()?;
    Ok(n)
}

/// `T[A:k,l]`: `(n+k-l)×n`, row `g` is the first row of `C_t^{k-g}A`.
pub fn extend_vertical(a: &Matrix, u: &PolyVec, k: i64, l: i64) -> Result<Matrix> {
    let n = require_generator(a, u)?;
    if k < l {
        return Err(Error::InvalidSpec(format!("k = {k} < l = {l}")));
    }
    let top = companion_power(u, CompanionKind::TOP, k)?.mul(a)?;
    let bottom_row = companion(u, CompanionKind::BOTTOM)?.row(n - 1).to_vec();
    let mut rows = top.to_rows();
    for _ in 0..(k - l) {
        // C_b X keeps the last n-1 rows of X and appends one combination of them
        let window = &rows[rows.len() - n..];
        let next = (0..n)
            .map(|j| {
                bottom_row
                    .iter()
                    .zip(window)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, row)| c * &row[j])
                    .sum()
            })
            .collect();
        rows.push(next);
    }
    Matrix::from_rows(rows)
}

/// Appends columns to the right: the columns of `M·C^t`, then the last
/// columns of `M·C^{t+i}` for `i = 1..s-t`.
fn extend_horizontal(m: &Matrix, u: &PolyVec, kind: CompanionKind, s: i64, t: i64) -> Result<Matrix> {
    let n = m.cols();
    let start = m.mul(&companion_power(u, kind, t)?)?;
    let last_col = companion(u, kind)?.column(n - 1);
    let mut cols: Vec<Vec<Rational>> = (0..n).map(|j| start.column(j)).collect();
    for _ in 0..(s - t) {
        let window = &cols[cols.len() - n..];
        let next = (0..m.rows())
            .map(|i| {
                last_col
                    .iter()
                    .zip(window)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, col)| c * &col[i])
                    .sum()
            })
            .collect();
        cols.push(next);
    }
    Ok(Matrix::from_fn(m.rows(), cols.len(), |i, j| cols[j][i].clone()))
}

/// `T[A:k,l;s,t]`, or `H[A:k,l;s,t]` when `spec.hankel` is set.
pub fn extend_full(a: &Matrix, u: &PolyVec, spec: ExtensionSpec) -> Result<ExtensionGrid> {
    let n = require_generator(a, u)?;
    let vertical = extend_vertical(a, u, spec.k, spec.l)?;
    let matrix = extend_horizontal(&vertical, u, spec.horizontal(), spec.s, spec.t)?;
    Ok(ExtensionGrid {
        matrix,
        origin: (spec.k, -spec.t),
        n,
        spec,
    })
}

/// `(n+r)×r` banded Toeplitz matrix whose `i`-th column is `u` shifted
/// down by `i-1`.
pub fn extension_kernel_basis(u: &PolyVec, r: usize) -> Matrix {
    let n = u.n();
    Matrix::from_fn(n + r, r, |i, j| {
        if i >= j && i - j <= n {
            u.coeff(i - j).clone()
        } else {
            Rational::zero()
        }
    })
}

/// The Hankel counterpart: `(n+r)×r` with first column `(0,…,0,u_{n+1},…,u₁)`.
pub fn extension_kernel_basis_hankel(u: &PolyVec, r: usize) -> Matrix {
    extension_kernel_basis(u, r).reverse_rows()
}

/// Rank `n` and the banded basis annihilated by the grid.
pub fn check_extension_kernel(a: &Matrix, u: &PolyVec, spec: ExtensionSpec) -> Result<bool> {
    let n = require_generator(a, u)?;
    if a.rank() < n {
        return Err(Error::singular("extension generator"));
    }
    let grid = extend_full(a, u, spec)?;
    if grid.matrix.rank() != n {
        return Ok(false);
    }
    let r = spec.extra_cols();
    if r == 0 {
        return Ok(true);
    }
    let basis = if spec.hankel {
        extension_kernel_basis_hankel(u, r)
    } else {
        extension_kernel_basis(u, r)
    };
    Ok(grid.matrix.mul(&basis)?.is_zero())
}

/// Extends an invertible Toeplitz `T` with `u ∈ ker ∂T` and returns the
/// band of the (Toeplitz) result.
pub fn preserve_toeplitz(t: &ToeplitzBand, u: &PolyVec, spec: ExtensionSpec) -> Result<ToeplitzBand> {
    if spec.hankel {
        return Err(Error::InvalidSpec("Toeplitz extension needs the plain horizontal companion".into()));
    }
    let dense = t.to_dense();
    let n = require_generator(&dense, u)?;
    if n >= 2 {
        let residual = del_toeplitz(t)?.mul_vec(u.coeffs())?;
        if !residual.iter().all(Rational::is_zero) {
            return Err(Error::Precondition(format!(
                "u is not in the kernel of ∂T: ∂T·u = ({})",
                crate::rational::format_list(&residual)
            )));
        }
    }
    if dense.rank() < n {
        return Err(Error::singular("Toeplitz generator"));
    }
    let grid = extend_full(&dense, u, spec)?;
    detect_toeplitz(&grid.matrix)
        .map_err(|e| Error::Internal(format!("extension lost the Toeplitz structure: {e}")))
}

/// Extends an invertible Hankel `H` with `u^J ∈ ker ∂H` and returns the
/// band of the (Hankel) result.
pub fn preserve_hankel(h: &HankelBand, u: &PolyVec, spec: ExtensionSpec) -> Result<HankelBand> {
    if !spec.hankel {
        return Err(Error::InvalidSpec("Hankel extension needs the barred horizontal companion".into()));
    }
    let dense = h.to_dense();
    let n = require_generator(&dense, u)?;
    if n >= 2 {
        let residual = del_hankel(h)?.mul_vec(u.reverse().coeffs())?;
        if !residual.iter().all(Rational::is_zero) {
            return Err(Error::Precondition(format!(
                "u^J is not in the kernel of ∂H: ∂H·u^J = ({})",
                crate::rational::format_list(&residual)
            )));
        }
    }
    if dense.rank() < n {
        return Err(Error::singular("Hankel generator"));
    }
    let grid = extend_full(&dense, u, spec)?;
    detect_hankel(&grid.matrix)
        .map_err(|e| Error::Internal(format!("extension lost the Hankel structure: {e}")))
}

/// First `len` coefficients of the power series `1/p(λ)`, `p(0) ≠ 0`.
pub fn series_inverse(p: &[Rational], len: usize) -> Result<Vec<Rational>> {
    let inv = p
        .first()
        .and_then(Rational::recip)
        .ok_or_else(|| Error::Precondition("series inverse needs a nonzero constant term".into()))?;
    let mut out: Vec<Rational> = Vec::with_capacity(len);
    for m in 0..len {
        let mut acc = if m == 0 { Rational::one() } else { Rational::zero() };
        for j in 1..=m.min(p.len() - 1) {
            if !p[j].is_zero() {
                acc -= &p[j] * &out[m - j];
            }
        }
        out.push(&acc * &inv);
    }
    Ok(out)
}

/// Structure of `T[U_+⁻¹:k,l;s,t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPlusReport {
    pub grid: ExtensionGrid,
    pub toeplitz: bool,
    /// The `n-1` diagonals directly above the generator's main diagonal
    /// are zero throughout the grid.
    pub zero_band: bool,
    /// Entries on and below the main diagonal follow the series `1/u(λ)`,
    /// i.e. the inverse of a lower triangular Toeplitz matrix with first
    /// column `(u₁, …, u_{n+1}, 0, …)`.
    pub lower_series: bool,
    /// Entries above the zero band follow the series `1/(-u^J(λ))`, i.e.
    /// the inverse of an upper triangular Toeplitz matrix with first row
    /// `(-u_{n+1}, …, -u₁, 0, …)`.
    pub upper_series: bool,
    /// Number of diagonals on or below the main diagonal.
    pub lower_diagonals: usize,
    /// Number of diagonals above the zero band.
    pub upper_diagonals: usize,
    /// First grid entry (0-based) that breaks a feature.
    pub first_mismatch: Option<(usize, usize)>,
}

impl UPlusReport {
    pub fn holds(&self) -> bool {
        self.toeplitz && self.zero_band && self.lower_series && self.upper_series
    }
}

/// Checks the zero-band and triangular-inverse features of the extension
/// of `U_+⁻¹` entry by entry.
pub fn analyze_uplus_extension(u: &PolyVec, spec: ExtensionSpec) -> Result<UPlusReport> {
    if spec.hankel {
        return Err(Error::InvalidSpec("the U_+⁻¹ extension is a Toeplitz extension".into()));
    }
    u.require_endpoints()?;
    let n = u.n();
    let generator = lower_triangular_toeplitz(&series_inverse(u.coeffs(), n)?);
    let grid = extend_full(&generator, u, spec)?;
    let (lo, hi) = grid.diagonal_range();
    let lower_len = (hi.max(-1) + 1) as usize;
    let upper_len = (-(lo.min(-(n as i64))) - n as i64 + 1) as usize;
    let lower = series_inverse(u.coeffs(), lower_len)?;
    let neg_rev: Vec<Rational> = u.reverse().coeffs().iter().map(|c| -c).collect();
    let upper = series_inverse(&neg_rev, upper_len)?;
    let (mut zero_band, mut lower_ok, mut upper_ok) = (true, true, true);
    let mut first_mismatch = None;
    let (rows, cols) = grid.matrix.shape();
    for g in 0..rows {
        for c in 0..cols {
            let d = grid.relative_diagonal(g, c);
            let value = &grid.matrix[(g, c)];
            let ok = if d >= 0 {
                let ok = *value == lower[d as usize];
                lower_ok &= ok;
                ok
            } else if d > -(n as i64) {
                let ok = value.is_zero();
                zero_band &= ok;
                ok
            } else {
                let ok = *value == upper[(-d - n as i64) as usize];
                upper_ok &= ok;
                ok
            };
            if !ok && first_mismatch.is_none() {
                first_mismatch = Some((g, c));
            }
        }
    }
    Ok(UPlusReport {
        toeplitz: detect_toeplitz(&grid.matrix).is_ok(),
        zero_band,
        lower_series: lower_ok,
        upper_series: upper_ok,
        lower_diagonals: if hi >= 0 { lower_len } else { 0 },
        upper_diagonals: if lo <= -(n as i64) { upper_len } else { 0 },
        first_mismatch,
        grid,
    })
}

/// Splits `T[U_+⁻¹:n,0;n,-n] = [[S₁,R₁,R₂],[S₂,S₁,R₁]]` and checks
/// `[[S₁,0],[S₂,S₁]]·[[U_+,0],[U_-,U_+]] = I` and
/// `[[R₁,R₂],[0,R₁]]·[[U_-,U_+],[0,U_-]] = -I`.
pub fn uplus_block_identities(u: &PolyVec) -> Result<(bool, bool)> {
    let n = u.n();
    let ni = n as i64;
    let spec = ExtensionSpec::new(ni, 0, ni, -ni)?;
    let report = analyze_uplus_extension(u, spec)?;
    let g = &report.grid;
    let block = |r: usize, c: usize| g.block(r * n, c * n).expect("2x3 block grid");
    let (s1, r1, r2, s2) = (block(0, 0), block(0, 1), block(0, 2), block(1, 0));
    if block(1, 1) != s1 || block(1, 2) != r1 {
        return Ok((false, false));
    }
    let up = build_u_plus(u).to_dense();
    let um = build_u_minus(u).to_dense();
    let z = Matrix::zeros(n, n);
    let two = |a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix| -> Result<Matrix> {
        a.hstack(b)?.vstack(&c.hstack(d)?)
    };
    let lower = two(&s1, &z, &s2, &s1)?.mul(&two(&up, &z, &um, &up)?)?;
    let upper = two(&r1, &r2, &z, &r1)?.mul(&two(&um, &up, &z, &um)?)?;
    Ok((lower.is_identity(), upper.neg().is_identity()))
}

/// Lower and upper triangular Toeplitz truncations used by the block
/// identities, exposed for callers that want the literal matrices.
pub fn triangular_truncations(u: &PolyVec, size: usize) -> (Matrix, Matrix) {
    let first_col: Vec<Rational> = (0..size)
        .map(|i| if i <= u.n() { u.coeff(i).clone() } else { Rational::zero() })
        .collect();
    let neg_rev: Vec<Rational> = (0..size)
        .map(|i| if i <= u.n() { -u.coeff(u.n() - i) } else { Rational::zero() })
        .collect();
    (lower_triangular_toeplitz(&first_col), upper_triangular_toeplitz(&neg_rev))
}

/// Extensions of `B_T(u, v)⁻¹` with the companions of `u` and of `v`.
pub fn bezoutian_extension_pair(
    u: &PolyVec,
    v: &PolyVec,
    spec: ExtensionSpec,
) -> Result<(ExtensionGrid, ExtensionGrid)> {
    crate::similarity::require_coprime(u, v)?;
    let bez = crate::bezoutian::bez_toeplitz_oracle(u, v)?;
    let inv = bez.inverse().map_err(|_| Error::singular("Toeplitz Bezoutian"))?;
    Ok((extend_full(&inv, u, spec)?, extend_full(&inv, v, spec)?))
}

/// The two grids agree on every diagonal of the generator.
pub fn central_band_agrees(a: &ExtensionGrid, b: &ExtensionGrid) -> bool {
    let n = a.n as i64;
    a.matrix.shape() == b.matrix.shape()
        && a.origin == b.origin
        && (1 - n..n).all(|d| a.diagonal(d) == b.diagonal(d))
}

/// `T[I:k,l;0,0] · A · T[I:0,0;s,t]`.
pub fn factorized_extension(a: &Matrix, u: &PolyVec, spec: ExtensionSpec) -> Result<Matrix> {
    let n = require_generator(a, u)?;
    let id = Matrix::identity(n);
    let left = extend_vertical(&id, u, spec.k, spec.l)?;
    let right = extend_horizontal(&id, u, spec.horizontal(), spec.s, spec.t)?;
    left.mul(a)?.mul(&right)
}
