//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line and then
//! asserts it. Tolerances are exact equality unless stated.

use std::time::{Duration, Instant};

use companion_core::bezoutian::{bez_hankel_gs_literal, toeplitz_inverse_structured};
use companion_core::selftest::{self, Config, Status};
use companion_core::structured::{build_u_plus, complete_band, detect_hankel};
use companion_core::{companion, count_multiplications, q, CompanionKind, Matrix, PolyVec, ToeplitzBand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(name: &str, ok: bool, detail: &str) {
    println!("{} criterion {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {name} failed: {detail}");
}

fn rows(r: &[&[(i64, i64)]]) -> Matrix {
    Matrix::from_rows(r.iter().map(|row| row.iter().map(|&x| q(x)).collect()).collect()).unwrap()
}

#[test]
fn criterion_1_worked_example() {
    let start = Instant::now();
    let u = PolyVec::from_ints(&[4, 3, 2, 1]);
    let ct = companion(&u, CompanionKind::TOP).unwrap();
    let cr = companion(&u, CompanionKind::RIGHT).unwrap();
    let cl = companion(&u, CompanionKind::LEFT).unwrap();
    let t1 = complete_band(&u, &[q(-1), q(0), q(0)]).unwrap().to_dense();
    let t = t1.mul(&cl).unwrap();
    let checks = [
        ct.to_string() == "-2,-3,-4;1,0,0;0,1,0",
        cr.to_string() == "0,0,-4;1,0,-3;0,1,-2",
        t1.to_string() == "0,0,-1;1/4,0,0;-3/16,1/4,0",
        t.to_string() == "1/4,0,0;-3/16,1/4,0;1/64,-3/16,1/4",
        t == rows(&[&[(1, 4), (0, 1), (0, 1)], &[(-3, 16), (1, 4), (0, 1)], &[(1, 64), (-3, 16), (1, 4)]]),
        t.mul(&build_u_plus(&u).to_dense()).unwrap().is_identity(),
    ];
    let elapsed = start.elapsed();
    let ok = checks.iter().all(|&c| c) && elapsed < Duration::from_secs(1);
    verdict(
        "1 (worked example, exact, < 1 s)",
        ok,
        &format!("{}/{} identities exact in {:.1?}", checks.iter().filter(|&&c| c).count(), checks.len(), elapsed),
    );
}

#[test]
fn criterion_2_property_suites() {
    let cfg = Config {
        seed: selftest::DEFAULT_SEED,
        instances: 200,
        max_n: 8,
        large_sizes: &[50],
    };
    let report = selftest::run(&cfg);
    let suites: Vec<_> = report
        .checks
        .iter()
        .filter(|c| c.status == Status::Pass && c.detail.contains('/'))
        .collect();
    let full = suites.iter().all(|c| c.detail == "200/200");
    let failures: Vec<String> = report.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
    for c in &report.checks {
        println!("  {:<5} {} {}", c.status.to_string(), c.name, c.detail);
    }
    verdict(
        "2 (property suites, 200 instances each, exact)",
        failures.is_empty() && full && suites.len() >= 25,
        &format!(
            "{} suites at 200/200, {} failures{}",
            suites.len(),
            failures.len(),
            if failures.is_empty() { String::new() } else { format!(": {}", failures.join("; ")) }
        ),
    );
}

#[test]
fn criterion_3_hankel_discrepancy_reported() {
    let u = PolyVec::from_ints(&[4, 3, 2, 1]);
    let v = PolyVec::from_ints(&[1, 1, 1, 1]);
    let r = bez_hankel_gs_literal(&u, &v).unwrap();
    let symmetric = r.oracle == r.oracle.transpose();
    let inverse_hankel = detect_hankel(&r.oracle.inverse().unwrap()).is_ok();
    let report = selftest::run(&Config {
        instances: 1,
        large_sizes: &[],
        ..Config::default()
    });
    let text = report.to_string();
    let row = report.checks.iter().find(|c| c.name.starts_with("Hankel Gohberg"));
    let flagged = row.is_some_and(|c| c.status == Status::Known);
    let printed = text.contains(&r.oracle.to_string())
        && text.contains(&r.first.to_string())
        && text.contains(&r.second.to_string());
    println!("{}", text.lines().filter(|l| l.contains("printed") || l.contains("definition")).collect::<Vec<_>>().join("\n"));
    verdict(
        "3 (printed Hankel forms flagged against the definition)",
        flagged && printed && !r.first_matches && !r.second_matches && symmetric && inverse_hankel,
        &format!(
            "flagged {flagged}, printed {printed}, first matches {}, second matches {}, definition symmetric {symmetric}, inverse Hankel {inverse_hankel}",
            r.first_matches, r.second_matches
        ),
    );
}

fn random_band(rng: &mut ChaCha8Rng, n: usize) -> ToeplitzBand {
    ToeplitzBand::square((0..2 * n - 1).map(|_| q(rng.random_range(-9i64..=9))).collect()).unwrap()
}

#[test]
fn criterion_4_quadratic_multiplication_count() {
    const BOUND: u64 = 64;
    const MAX_RATIO: f64 = 4.5;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut counts = Vec::new();
    for n in [25usize, 50, 100, 200] {
        let t = random_band(&mut rng, n);
        let (inv, count) = count_multiplications(|| toeplitz_inverse_structured(&t));
        assert!(inv.is_ok(), "structured inverse failed at n = {n}: {:?}", inv.err());
        println!("  structured n = {n:>3}: {count} multiplications ({:.2} n²)", count as f64 / (n * n) as f64);
        counts.push((n, count, t));
    }
    let mut dense = Vec::new();
    for (n, _, t) in counts.iter().take(2) {
        let m = t.to_dense();
        let (inv, count) = count_multiplications(|| m.inverse());
        let structured = toeplitz_inverse_structured(t).unwrap();
        assert_eq!(inv.unwrap(), structured, "structured and dense inverses differ at n = {n}");
        println!("  dense      n = {n:>3}: {count} multiplications ({:.2} n³)", count as f64 / (n * n * n) as f64);
        dense.push(count);
    }
    let within = counts.iter().all(|(n, c, _)| *c <= BOUND * (*n * *n) as u64);
    let ratios: Vec<f64> = counts.windows(2).map(|w| w[1].1 as f64 / w[0].1 as f64).collect();
    let dense_ratio = dense[1] as f64 / dense[0] as f64;
    let ok = within && ratios.iter().all(|&r| r <= MAX_RATIO) && dense_ratio > MAX_RATIO;
    verdict(
        "4 (count ≤ 64n², doubling ratio ≤ 4.5, dense ratio above it)",
        ok,
        &format!(
            "structured doubling ratios {}; dense ratio {dense_ratio:.2}",
            ratios.iter().map(|r| format!("{r:.2}")).collect::<Vec<_>>().join(", ")
        ),
    );
}
