//! Seeded invariant suite with the worked examples embedded as goldens.
//!
//! Every row of the report is one identity. Rows marked `KNOWN` document a
//! printed formula that disagrees with its definition; `PROBE` rows report
//! an empirical count without asserting anything.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bezoutian::{
    bez_hankel_gs_literal, bez_hankel_oracle, bez_toeplitz_gs, bez_toeplitz_oracle, q_transform,
    toeplitz_inverse_structured,
};
use crate::companion::{companion, companion_power, CompanionKind, Side};
use crate::error::Result;
use crate::extension::{
    analyze_uplus_extension, bezoutian_extension_pair, central_band_agrees, check_extension_kernel,
    extend_full, extend_vertical, factorized_extension, preserve_hankel, preserve_toeplitz,
    uplus_block_identities, ExtensionSpec,
};
use crate::matrix::Matrix;
use crate::poly::{is_coprime, PolyVec};
use crate::rational::{q, Rational};
use crate::similarity::{
    bezoutian_similarity_check, canonical_q, conjugates, hankel_similarity, toeplitz_similarity,
    DEFAULT_POWERS,
};
use crate::statespace::{
    b_to_io, build_f, controller_form, late_state, long_state, mixed_state, simulate,
    transformed_form, truncated_u, SisoSystem,
};
use crate::structured::{
    build_u_plus, complete_band, del_toeplitz, detect_hankel, detect_toeplitz, HankelBand,
    ToeplitzBand,
};

pub const DEFAULT_SEED: u64 = 0x5eed_c0de;
pub const DEFAULT_INSTANCES: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// A printed formula that disagrees with its definition, as expected.
    Known,
    /// Informational count; never fails.
    Probe,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Known => "KNOWN",
            Status::Probe => "PROBE",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
    /// Free-form lines printed after the table.
    pub notes: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    fn push(&mut self, name: &str, status: Status, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            status,
            detail: detail.into(),
        });
    }

    fn golden(&mut self, name: &str, outcome: Result<bool>) {
        match outcome {
            Ok(true) => self.push(name, Status::Pass, "exact"),
            Ok(false) => self.push(name, Status::Fail, "value differs from the worked example"),
            Err(e) => self.push(name, Status::Fail, format!("error: {e}")),
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
        for c in &self.checks {
            let pad = width - c.name.chars().count();
            writeln!(f, "{:<5}  {}{}  {}", c.status, c.name, " ".repeat(pad), c.detail)?;
        }
        for note in &self.notes {
            writeln!(f, "{note}")?;
        }
        write!(f, "{} checks, {} failed", self.checks.len(), self.failures().count())
    }
}

/// Random inputs: numerators in `[-9, 9]`, small positive denominators.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }

    pub fn size(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.random_range(lo..=hi)
    }

    pub fn rational(&mut self) -> Rational {
        let num = self.int(-9, 9);
        let den = self.int(1, 4);
        Rational::frac(num, den)
    }

    pub fn nonzero(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn vector(&mut self, len: usize) -> Vec<Rational> {
        (0..len).map(|_| self.rational()).collect()
    }

    /// `n+1` coefficients with both endpoints nonzero.
    pub fn poly(&mut self, n: usize) -> PolyVec {
        let mut c = self.vector(n + 1);
        c[0] = self.nonzero();
        c[n] = self.nonzero();
        PolyVec::new(c).expect("n ≥ 1")
    }

    pub fn poly_sized(&mut self, lo: usize, hi: usize) -> PolyVec {
        let n = self.size(lo, hi);
        self.poly(n)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.random_bool(0.5)
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(rows, cols, |_, _| self.rational())
    }

    pub fn invertible(&mut self, n: usize) -> Matrix {
        loop {
            let m = self.matrix(n, n);
            if m.rank() == n {
                return m;
            }
        }
    }

    pub fn coprime_pair(&mut self, n: usize) -> (PolyVec, PolyVec) {
        loop {
            let (u, v) = (self.poly(n), self.poly(n));
            if is_coprime(&u, &v).unwrap_or(false) {
                return (u, v);
            }
        }
    }

    /// Invertible Toeplitz `T` with `u ∈ ker ∂T`.
    pub fn toeplitz_with_kernel(&mut self, u: &PolyVec) -> ToeplitzBand {
        let n = u.n();
        loop {
            let t = complete_band(u, &self.vector(n)).expect("valid u");
            if t.to_dense().rank() == n {
                return t;
            }
        }
    }

    pub fn invertible_toeplitz(&mut self, n: usize) -> ToeplitzBand {
        loop {
            let t = ToeplitzBand::square(self.vector(2 * n - 1)).expect("odd band");
            if t.to_dense().rank() == n {
                return t;
            }
        }
    }

    pub fn invertible_toeplitz_sized(&mut self, lo: usize, hi: usize) -> ToeplitzBand {
        let n = self.size(lo, hi);
        self.invertible_toeplitz(n)
    }

    pub fn coprime_pair_sized(&mut self, lo: usize, hi: usize) -> (PolyVec, PolyVec) {
        let n = self.size(lo, hi);
        self.coprime_pair(n)
    }

    /// An integer 2×2 matrix of determinant one, as a product of shears.
    pub fn unimodular(&mut self) -> [[i64; 2]; 2] {
        let mut m = [[1, 0], [0, 1]];
        for step in 0..3 {
            let k = self.int(-3, 3);
            let shear = if step % 2 == 0 { [[1, k], [0, 1]] } else { [[1, 0], [k, 1]] };
            m = [
                [
                    m[0][0] * shear[0][0] + m[0][1] * shear[1][0],
                    m[0][0] * shear[0][1] + m[0][1] * shear[1][1],
                ],
                [
                    m[1][0] * shear[0][0] + m[1][1] * shear[1][0],
                    m[1][0] * shear[0][1] + m[1][1] * shear[1][1],
                ],
            ];
        }
        m
    }

    pub fn spec(&mut self, range: i64, hankel: bool) -> ExtensionSpec {
        let (a, b) = (self.int(-range, range), self.int(-range, range));
        let (c, d) = (self.int(-range, range), self.int(-range, range));
        ExtensionSpec::with_mode(a.max(b), a.min(b), c.max(d), c.min(d), hankel).expect("ordered")
    }

    pub fn spec_any(&mut self, range: i64) -> ExtensionSpec {
        let hankel = self.coin();
        self.spec(range, hankel)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub seed: u64,
    pub instances: usize,
    /// Largest size used by the random suites.
    pub max_n: usize,
    /// Sizes at which structured and dense inversion are compared once.
    pub large_sizes: &'static [usize],
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: DEFAULT_SEED,
            instances: DEFAULT_INSTANCES,
            max_n: 8,
            large_sizes: &[16, 32, 50],
        }
    }
}

/// Runs `body` on `count` instances and summarizes.
fn suite(
    report: &mut Report,
    name: &str,
    count: usize,
    sampler: &mut Sampler,
    mut body: impl FnMut(&mut Sampler) -> Result<bool>,
) {
    let mut failed = 0;
    let mut first = None;
    for i in 0..count {
        let outcome = body(sampler);
        if !matches!(outcome, Ok(true)) {
            failed += 1;
            if first.is_none() {
                first = Some(match outcome {
                    Err(e) => format!("instance {i}: {e}"),
                    _ => format!("instance {i}"),
                });
            }
        }
    }
    if failed == 0 {
        report.push(name, Status::Pass, format!("{count}/{count}"));
    } else {
        report.push(
            name,
            Status::Fail,
            format!("{failed}/{count} failed, first at {}", first.unwrap_or_default()),
        );
    }
}

fn worked_u() -> PolyVec {
    PolyVec::from_ints(&[4, 3, 2, 1])
}

fn worked_v() -> PolyVec {
    PolyVec::from_ints(&[1, 1, 1, 1])
}

fn m(rows: &[&[Rational]]) -> Matrix {
    Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).expect("rectangular")
}

fn goldens(report: &mut Report) {
    let u = worked_u();
    report.golden("example: top and right companions", (|| {
        let ct = companion(&u, CompanionKind::TOP)?;
        let cr = companion(&u, CompanionKind::RIGHT)?;
        Ok(ct == Matrix::from_ints(&[[-2, -3, -4], [1, 0, 0], [0, 1, 0]])
            && cr == Matrix::from_ints(&[[0, 0, -4], [1, 0, -3], [0, 1, -2]]))
    })());
    let t1_expect = m(&[
        &[q(0), q(0), q(-1)],
        &[q((1, 4)), q(0), q(0)],
        &[q((-3, 16)), q((1, 4)), q(0)],
    ]);
    let t_expect = m(&[
        &[q((1, 4)), q(0), q(0)],
        &[q((-3, 16)), q((1, 4)), q(0)],
        &[q((1, 64)), q((-3, 16)), q((1, 4))],
    ]);
    report.golden("example: T1 from its ∂-rows", (|| {
        let t1 = complete_band(&u, &[q(-1), q(0), q(0)])?;
        let del = del_toeplitz(&t1)?;
        let x_ok = del[(1, 0)] == q((-3, 16));
        let rows_ok = del.row(0) == [q((1, 4)), q(0), q(0), q(-1)];
        Ok(x_ok && rows_ok && t1.to_dense() == t1_expect)
    })());
    report.golden("example: T = T1·C_l = U_+⁻¹", (|| {
        let t = t1_expect.mul(&companion(&u, CompanionKind::LEFT)?)?;
        let product = t.mul(&build_u_plus(&u).to_dense())?;
        Ok(t == t_expect && product.is_identity())
    })());
    report.golden("example: similarity report for U_+⁻¹", (|| {
        let band = ToeplitzBand::parse("0,0,1/4,-3/16,1/64")?;
        Ok(toeplitz_similarity(&band, &u, DEFAULT_POWERS)?.all_true())
    })());
    report.golden("example: one-row extension of U_+⁻¹", (|| {
        let ext = extend_vertical(&t_expect, &u, 1, 0)?;
        Ok(ext.submatrix(0, 3, 0, 3) == t1_expect && ext.row(3) == t_expect.row(2))
    })());
    report.golden("example: nine-block identity extension", (|| {
        let grid = extend_full(&Matrix::identity(3), &u, ExtensionSpec::new(3, -3, 3, -3)?)?;
        let p = |kind, k| companion_power(&u, kind, k);
        let (ct, cb) = (p(CompanionKind::TOP, 3)?, p(CompanionKind::BOTTOM, 3)?);
        let (cl, cr) = (p(CompanionKind::LEFT, 3)?, p(CompanionKind::RIGHT, 3)?);
        let id = Matrix::identity(3);
        let expect = [
            [ct.mul(&cl)?, ct.clone(), ct.mul(&cr)?],
            [cl.clone(), id, cr.clone()],
            [cb.mul(&cl)?, cb.clone(), cb.mul(&cr)?],
        ];
        Ok((0..3).all(|r| (0..3).all(|c| grid.block(3 * r, 3 * c).as_ref() == Some(&expect[r][c]))))
    })());
    report.golden("example: U_+⁻¹ extension features (3,0;3,-3)", (|| {
        let r = analyze_uplus_extension(&u, ExtensionSpec::new(3, 0, 3, -3)?)?;
        let (lower, upper) = uplus_block_identities(&u)?;
        Ok(r.holds() && lower && upper)
    })());
    report.golden("example: canonical-form change of basis", (|| {
        let r = canonical_q(&[q(2), q(3), q(4)], &[q(1), q(0), q(2)])?;
        Ok(r.matches_bezoutian
            && r.controllability_agrees
            && r.q == Matrix::from_ints(&[[1, 0, 2], [0, -1, 0], [2, 0, 6]]))
    })());
    report.golden("example: Bezoutian of (4,3,2,1), (1,1,1,1)", (|| {
        let b = bez_toeplitz_oracle(&u, &worked_v())?;
        Ok(b == Matrix::from_ints(&[[3, 2, 1], [2, 4, 2], [1, 2, 3]])
            && bez_toeplitz_gs(&u, &worked_v())? == b)
    })());
    report.golden("example: controller and transformed realizations", (|| {
        let sys = SisoSystem::new(u.clone(), worked_v())?;
        let c = controller_form(&sys)?;
        let t = transformed_form(&sys)?;
        let (x, y) = b_to_io(&[q(1), q(0), q(0), q(1)], &sys)?;
        let f = build_f(&u, 3)?;
        Ok(c.b == [q(0), q(0), q((-1, 4))]
            && c.d == [q((3, 4)), q((1, 2)), q((1, 4))]
            && c.feedthrough == q((-1, 4))
            && t.b == [q((-1, 4)), q((-1, 2)), q((-3, 4))]
            && x == [q(-5)]
            && y == [q(2)]
            && f[(1, 0)] == q((-3, 4))
            && f[(2, 0)] == q((1, 16))
            && f.scale(&q((1, 4))) == t_expect)
    })());
}

/// The Hankel triangular-product forms as printed versus the definition.
fn hankel_gs_discrepancy(report: &mut Report) {
    let (u, v) = (worked_u(), worked_v());
    let name = "Hankel Gohberg–Semencul forms as printed";
    let outcome = (|| -> Result<(bool, String, Vec<String>)> {
        let r = bez_hankel_gs_literal(&u, &v)?;
        let oracle = &r.oracle;
        let symmetric = *oracle == oracle.transpose();
        let inverse = oracle.inverse()?;
        let inverse_hankel = detect_hankel(&inverse).is_ok();
        let notes = vec![
            format!("  definition      {}", r.oracle),
            format!("  first printed   {}", r.first),
            format!("  second printed  {}", r.second),
            format!(
                "  definition symmetric: {symmetric}; inverse is Hankel: {inverse_hankel}; \
                 -B_Tᵀ·J equals definition: {}",
                q_transform(&u, &v)? == r.oracle
            ),
        ];
        let mismatch = !r.first_matches && !r.second_matches;
        let detail = format!(
            "known issue: first matches {}, second matches {}, second is the 180° rotation of first: {}",
            r.first_matches, r.second_matches, r.second_is_rotation
        );
        Ok((mismatch && symmetric && inverse_hankel, detail, notes))
    })();
    match outcome {
        Ok((true, detail, notes)) => {
            report.push(name, Status::Known, detail);
            report.notes.extend(notes);
        }
        Ok((false, detail, notes)) => {
            report.push(name, Status::Fail, format!("expected mismatch not reproduced; {detail}"));
            report.notes.extend(notes);
        }
        Err(e) => report.push(name, Status::Fail, format!("error: {e}")),
    }
}

fn companion_properties(report: &mut Report, cfg: &Config, s: &mut Sampler) {
    use Side::*;
    let kind = |side| CompanionKind::plain(side);
    let bar = |side| CompanionKind::barred(side);
    let max_n = cfg.max_n;
    suite(report, "companion inversion pairs", cfg.instances, s, |s| {
        let u = s.poly_sized(1, max_n);
        for (a, b) in [(kind(Top), kind(Bottom)), (kind(Left), kind(Right)), (bar(Top), bar(Bottom)), (bar(Left), bar(Right))] {
            if !companion(&u, a)?.mul(&companion(&u, b)?)?.is_identity() {
                return Ok(false);
            }
        }
        Ok(true)
    });
    suite(report, "companion secondary-diagonal flips", cfg.instances, s, |s| {
        let u = s.poly_sized(1, max_n);
        for (a, b) in [(kind(Top), kind(Right)), (kind(Bottom), kind(Left)), (bar(Top), bar(Right)), (bar(Bottom), bar(Left))] {
            if companion(&u, a)?.flip_secondary()? != companion(&u, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    });
    suite(report, "companion transpositions", cfg.instances, s, |s| {
        let u = s.poly_sized(1, max_n);
        for (a, b) in [(kind(Top), bar(Left)), (kind(Bottom), bar(Right)), (kind(Right), bar(Bottom)), (kind(Left), bar(Top))] {
            if companion(&u, a)?.transpose() != companion(&u, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    });
}

fn similarity_properties(report: &mut Report, cfg: &Config, s: &mut Sampler) {
    let max_n = cfg.max_n;
    suite(report, "U_+⁻¹ carries C_t^k to C_r^k", cfg.instances, s, |s| {
        let u = s.poly_sized(1, max_n);
        let inv = build_u_plus(&u).to_dense().inverse()?;
        for k in DEFAULT_POWERS {
            let ct = companion_power(&u, CompanionKind::TOP, k)?;
            let cr = companion_power(&u, CompanionKind::RIGHT, k)?;
            if !conjugates(&inv, &ct, &cr)? {
                return Ok(false);
            }
        }
        Ok(true)
    });
    suite(report, "kernel-built Toeplitz transformers, all powers", cfg.instances, s, |s| {
        let u = s.poly_sized(1, max_n);
        let t = s.toeplitz_with_kernel(&u);
        Ok(toeplitz_similarity(&t, &u, DEFAULT_POWERS)?.all_true())
    });
    let mut negatives = 0;
    suite(report, "three-way equivalence on perturbed transformers", cfg.instances, s, |s| {
        let u = s.poly_sized(2, max_n);
        let t = s.toeplitz_with_kernel(&u);
        let mut band = t.band().to_vec();
        let at = s.size(0, band.len() - 1);
        band[at] += Rational::one();
        let perturbed = ToeplitzBand::square(band)?;
        if perturbed.to_dense().rank() < u.n() {
            return Ok(true);
        }
        let r = toeplitz_similarity(&perturbed, &u, DEFAULT_POWERS)?;
        if !r.kernel {
            negatives += 1;
            return Ok(r.all_false());
        }
        Ok(r.all_true())
    });
    report.notes.push(format!("  perturbed transformers outside the kernel: {negatives}/{}", cfg.instances));

    let mut alt_holds = 0usize;
    let mut alt_total = 0usize;
    suite(report, "Hankel transformers H = T·J", cfg.instances, s, |s| {
        let u = s.poly_sized(2, max_n);
        let h = s.toeplitz_with_kernel(&u).times_flip();
        let r = hankel_similarity(&h, &u, DEFAULT_POWERS)?;
        for &(k, ok) in &r.bottom_powers {
            if k != 0 {
                alt_total += 1;
                alt_holds += ok as usize;
            }
        }
        Ok(r.all_true())
    });
    report.push(
        "Hankel power relation with C_b in place of C_t",
        Status::Probe,
        format!("H⁻¹C_b^kH = C̄_l^k held in {alt_holds}/{alt_total} nonzero-power cases"),
    );

    suite(report, "Bezoutian carries C_t^k to C_r^k for u and v", cfg.instances, s, |s| {
        let (u, v) = s.coprime_pair_sized(1, max_n);
        bezoutian_similarity_check(&u, &v, -2..=2)
    });
}

fn bezoutian_properties(report: &mut Report, cfg: &Config, s: &mut Sampler) {
    let max_n = cfg.max_n;
    suite(report, "Toeplitz Gohberg–Semencul forms equal definition", cfg.instances, s, |s| {
        let n = s.size(1, max_n);
        let (u, v) = (s.poly(n), s.poly(n));
        Ok(bez_toeplitz_gs(&u, &v)? == bez_toeplitz_oracle(&u, &v)?)
    });
    suite(report, "Bezoutians invariant under unimodular recombination", cfg.instances, s, |s| {
        let n = s.size(1, max_n);
        let (u, v) = (s.poly(n), s.poly(n));
        let [[a, b], [c, d]] = s.unimodular();
        let u2 = u.combine(&q(a), &v, &q(c))?;
        let v2 = u.combine(&q(b), &v, &q(d))?;
        Ok(bez_toeplitz_oracle(&u2, &v2)? == bez_toeplitz_oracle(&u, &v)?
            && bez_hankel_oracle(&u2, &v2)? == bez_hankel_oracle(&u, &v)?)
    });
    suite(report, "Bezoutian invertible iff coprime; inverse Toeplitz", cfg.instances, s, |s| {
        let n = s.size(1, max_n);
        let (u, v) = (s.poly(n), s.poly(n));
        let b = bez_toeplitz_oracle(&u, &v)?;
        let coprime = is_coprime(&u, &v)?;
        if (b.rank() == n) != coprime {
            return Ok(false);
        }
        if !coprime {
            return Ok(true);
        }
        let inv = detect_toeplitz(&b.inverse()?)?;
        if n == 1 {
            return Ok(true);
        }
        let del = del_toeplitz(&inv)?;
        Ok(del.mul_vec(u.coeffs())?.iter().all(Rational::is_zero)
            && del.mul_vec(v.coeffs())?.iter().all(Rational::is_zero))
    });
    suite(report, "structured Toeplitz inverse equals dense inverse", cfg.instances, s, |s| {
        let t = s.invertible_toeplitz_sized(1, max_n);
        let inv = toeplitz_inverse_structured(&t)?;
        Ok(inv == t.to_dense().inverse()? && inv.flip_secondary()? == inv)
    });
    for &n in cfg.large_sizes {
        let t = s.invertible_toeplitz(n);
        let name = format!("structured Toeplitz inverse at n = {n}");
        let ok = toeplitz_inverse_structured(&t)
            .and_then(|inv| Ok(inv == t.to_dense().inverse()?));
        report.golden(&name, ok);
    }
    suite(report, "structured Hankel inverse equals dense inverse", cfg.instances, s, |s| {
        let n = s.size(1, max_n);
        let h = HankelBand::square(s.vector(2 * n - 1))?;
        let dense = h.to_dense();
        if dense.rank() < n {
            return Ok(crate::bezoutian::hankel_inverse_structured(&h).is_err());
        }
        Ok(crate::bezoutian::hankel_inverse_structured(&h)? == dense.inverse()?)
    });

    let (mut q_hits, mut persym, mut flip_transpose) = (0, 0, 0);
    let mut counterexample = None;
    for _ in 0..cfg.instances {
        let n = s.size(2, max_n);
        let (u, v) = (s.poly(n), s.poly(n));
        let (Ok(bt), Ok(bh), Ok(qm)) = (bez_toeplitz_oracle(&u, &v), bez_hankel_oracle(&u, &v), q_transform(&u, &v)) else {
            continue;
        };
        q_hits += (bh == qm) as usize;
        let flipped = bt.flip_secondary().expect("square");
        persym += (flipped == bt) as usize;
        if flipped == bt.transpose() {
            flip_transpose += 1;
        } else if counterexample.is_none() {
            counterexample = Some(format!("u = ({}), v = ({})", fmt_list(u.coeffs()), fmt_list(v.coeffs())));
        }
    }
    let total = cfg.instances;
    report.push(
        "Hankel Bezoutian equals -B_Tᵀ·J",
        Status::Probe,
        format!("{q_hits}/{total} random pairs (holds on the worked pair)"),
    );
    report.push(
        "Toeplitz Bezoutian is persymmetric",
        if persym == total { Status::Pass } else { Status::Fail },
        format!("{persym}/{total}"),
    );
    report.push(
        "Toeplitz Bezoutian flip equals its transpose",
        Status::Probe,
        format!(
            "{flip_transpose}/{total}; counterexample {}",
            counterexample.unwrap_or_else(|| "none".into())
        ),
    );
}

fn fmt_list(v: &[Rational]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn extension_properties(report: &mut Report, cfg: &Config, s: &mut Sampler) {
    let max_n = cfg.max_n.min(6);
    suite(report, "extension rank and kernel basis", cfg.instances, s, |s| {
        let n = s.size(1, max_n);
        let u = s.poly(n);
        let a = s.invertible(n);
        let mut spec = s.spec_any(3);
        if spec.s == spec.t {
            spec = ExtensionSpec::with_mode(spec.k, spec.l, spec.s + 1, spec.t, spec.hankel)?;
        }
        check_extension_kernel(&a, &u, spec)
    });
    suite(report, "Toeplitz structure preserved by extension", cfg.instances, s, |s| {
        let n = s.size(2, max_n);
        let u = s.poly(n);
        let t = s.toeplitz_with_kernel(&u);
        let ext = preserve_toeplitz(&t, &u, s.spec(4, false))?;
        Ok(ext.rows() >= n)
    });
    suite(report, "Hankel structure preserved by extension", cfg.instances, s, |s| {
        let n = s.size(2, max_n);
        let u = s.poly(n);
        let h = s.toeplitz_with_kernel(&u).times_flip();
        let ext = preserve_hankel(&h, &u, s.spec(4, true))?;
        Ok(ext.rows() >= n)
    });
    suite(report, "identity extension Toeplitz iff interior of u vanishes", cfg.instances, s, |s| {
        let n = s.size(2, max_n);
        let mut u = s.poly(n);
        let sparse = s.coin();
        if sparse {
            let mut c = u.coeffs().to_vec();
            for x in &mut c[1..n] {
                *x = Rational::zero();
            }
            u = PolyVec::new(c)?;
        }
        let interior_zero = u.coeffs()[1..n].iter().all(Rational::is_zero);
        let grid = extend_full(&Matrix::identity(n), &u, ExtensionSpec::new(1, -1, 1, -1)?)?;
        Ok(detect_toeplitz(&grid.matrix).is_ok() == interior_zero)
    });
    suite(report, "extension factorizes through the identity", cfg.instances, s, |s| {
        let n = s.size(1, max_n);
        let u = s.poly(n);
        let a = s.matrix(n, n);
        let spec = s.spec_any(3);
        Ok(factorized_extension(&a, &u, spec)? == extend_full(&a, &u, spec)?.matrix)
    });
    suite(report, "extension independent of the generating block", cfg.instances, s, |s| {
        let n = s.size(1, max_n);
        let u = s.poly(n);
        let a = s.matrix(n, n);
        let spec = s.spec(3, false);
        let base = extend_full(&a, &u, spec)?.matrix;
        for i in -1..=1 {
            for j in -1..=1 {
                let ti = companion_power(&u, CompanionKind::TOP, i)?;
                let rj = companion_power(&u, CompanionKind::RIGHT, j)?;
                let moved = ti.mul(&a)?.mul(&rj)?;
                let shifted = extend_full(&moved, &u, spec.shifted(i, j))?.matrix;
                if shifted != base {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    });
    suite(report, "U_+⁻¹ extension zero band and triangular inverses", cfg.instances, s, |s| {
        let n = s.size(1, max_n);
        let u = s.poly(n);
        Ok(analyze_uplus_extension(&u, s.spec(4, false))?.holds())
    });
    suite(report, "inverse-Bezoutian extensions share the central band", cfg.instances, s, |s| {
        let (u, v) = s.coprime_pair_sized(1, max_n);
        let spec = s.spec(2, false);
        let (a, b) = bezoutian_extension_pair(&u, &v, spec)?;
        Ok(central_band_agrees(&a, &b)
            && detect_toeplitz(&a.matrix).is_ok()
            && detect_toeplitz(&b.matrix).is_ok())
    });
}

fn statespace_properties(report: &mut Report, cfg: &Config, s: &mut Sampler) {
    let max_n = cfg.max_n.min(6);
    suite(report, "b_to_io and simulate reproduce windows", cfg.instances, s, |s| {
        let n = s.size(1, max_n);
        let sys = SisoSystem::new(s.poly(n), s.poly(n))?;
        let b = s.vector(n + 10);
        let (x, y) = b_to_io(&b, &sys)?;
        let tr = simulate(&controller_form(&sys)?, &b[..n], &x)?;
        Ok(tr.outputs == y && tr.states.iter().enumerate().all(|(k, st)| st.as_slice() == &b[k..k + n]))
    });
    suite(report, "output row is the first Bezoutian row over u₁", cfg.instances, s, |s| {
        let n = s.size(1, max_n);
        let sys = SisoSystem::new(s.poly(n), s.poly(n))?;
        let d = controller_form(&sys)?.d;
        let bez = bez_toeplitz_oracle(&sys.u, &sys.v)?;
        Ok(d.iter().zip(bez.row(0)).all(|(x, b)| x * sys.u.first() == *b))
    });
    suite(report, "F_p over u₁ inverts the truncated U", cfg.instances, s, |s| {
        let n = s.size(1, max_n);
        let u = s.poly(n);
        let inv = u.first().recip().expect("nonzero");
        for p in 1..=n + 3 {
            if !build_f(&u, p)?.scale(&inv).mul(&truncated_u(&u, p))?.is_identity() {
                return Ok(false);
            }
        }
        Ok(true)
    });
    suite(report, "Bezoutian basis change commutes with evolution", cfg.instances, s, |s| {
        let (u, v) = s.coprime_pair_sized(1, max_n);
        let sys = SisoSystem::new(u, v)?;
        let bez = bez_toeplitz_oracle(&sys.u, &sys.v)?;
        let beta = s.vector(sys.n());
        let x = s.vector(4);
        let a = simulate(&controller_form(&sys)?, &beta, &x)?;
        let b = simulate(&transformed_form(&sys)?, &bez.mul_vec(&beta)?, &x)?;
        for (sa, sb) in a.states.iter().zip(&b.states) {
            if bez.mul_vec(sa)? != *sb {
                return Ok(false);
            }
        }
        Ok(a.outputs == b.outputs)
    });
    suite(report, "closed-form trajectories equal stepwise simulation", cfg.instances, s, |s| {
        let (u, v) = s.coprime_pair_sized(1, max_n);
        let sys = SisoSystem::new(u, v)?;
        let n = sys.n();
        let (p, qs) = (s.size(1, 4), s.size(0, 3));
        let x = s.vector(p + qs);
        let beta = s.vector(n);
        let ctrl = controller_form(&sys)?;
        let tr = simulate(&ctrl, &beta, &x[..p])?;
        let long = long_state(&sys, &beta, &x[..p])?;
        let windows_ok = tr
            .states
            .iter()
            .enumerate()
            .all(|(k, st)| st.as_slice() == &long[k..k + n]);
        let trans = transformed_form(&sys)?;
        let late_ok = qs == 0 || {
            let tr = simulate(&trans, &beta, &x[..qs])?;
            late_state(&sys, &beta, &x[..qs])? == *tr.states.last().expect("nonempty")
        };
        let mixed = mixed_state(&sys, &beta, &x, qs)?;
        let mid = simulate(&trans, &beta, &x[..qs])?;
        let bez = bez_toeplitz_oracle(&sys.u, &sys.v)?;
        let start = bez.inverse()?.mul_vec(mid.states.last().expect("nonempty"))?;
        let tail = simulate(&ctrl, &start, &x[qs..])?;
        let mut expect = start.clone();
        expect.extend(tail.states[1..].iter().map(|st| st[n - 1].clone()));
        Ok(windows_ok && late_ok && mixed == expect)
    });
}

pub fn run(cfg: &Config) -> Report {
    let mut report = Report::default();
    let mut s = Sampler::new(cfg.seed);
    goldens(&mut report);
    hankel_gs_discrepancy(&mut report);
    companion_properties(&mut report, cfg, &mut s);
    similarity_properties(&mut report, cfg, &mut s);
    bezoutian_properties(&mut report, cfg, &mut s);
    extension_properties(&mut report, cfg, &mut s);
    statespace_properties(&mut report, cfg, &mut s);
    report
}
