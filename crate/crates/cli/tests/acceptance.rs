//! Acceptance suite: one test per release criterion, each printing an
//! explicit PASS/FAIL line. Run with `cargo test --test acceptance`
//! (add `-- --nocapture` to see the lines for passing criteria too).

use std::process::Command;
use std::time::Instant;

use matfn_cli::campaign::{gate_passes, run_campaign, CampaignConfig, CheckKind};
use matfn_core::algebra::{AlgebraTag, MatrixF};
use matfn_core::hyper::stiefel_log_volume;
use matfn_core::jack::{
    build_jack_table, factorial_exact, rat, rising_factorial, rising_factorial_exact, Rational,
};
use matfn_core::montecarlo::{etr_estimate, DEFAULT_CHUNK_SIZE};
use matfn_core::partitions::{partitions_of, Partition};
use matfn_core::verify::theorem_rhs;
use num_bigint::BigInt;
use num_traits::One;

const ALL_TAGS: [AlgebraTag; 4] = [
    AlgebraTag::Real,
    AlgebraTag::Complex,
    AlgebraTag::Quaternion,
    AlgebraTag::Octonion,
];

const GRID_BETAS: [u32; 3] = [1, 2, 4];
const GRID_PAIRS: [(usize, usize); 5] = [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)];

fn report(criterion: u32, label: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {criterion} ({label}): {verdict} — {detail}");
    assert!(pass, "criterion {criterion} ({label}) failed: {detail}");
}

fn grid_config(check: CheckKind, ks: Vec<u32>, seed: u64) -> CampaignConfig {
    CampaignConfig {
        check,
        betas: GRID_BETAS.to_vec(),
        pairs: GRID_PAIRS.to_vec(),
        ks,
        samples: 1_000_000,
        seed,
        threshold: 4.0,
        max_degree: 12,
        chunk_size: DEFAULT_CHUNK_SIZE,
        explicit_x: None,
    }
}

/// Criterion 1: `Σ_{κ⊢k} C_κ^β = (p₁)^k` exactly, k ≤ 8, all β, built
/// in under 60 s.
#[test]
fn criterion_1_exact_sum_identity() {
    let start = Instant::now();
    let mut ok = true;
    for tag in ALL_TAGS {
        let table = build_jack_table(8, tag);
        for k in 0..=8u32 {
            let mut sums: std::collections::BTreeMap<Partition, Rational> = std::collections::BTreeMap::new();
            for kappa in partitions_of(k, k as usize) {
                for (lambda, coeff) in table.coefficients(&kappa).unwrap() {
                    *sums.entry(lambda.clone()).or_default() += coeff;
                }
            }
            for lambda in partitions_of(k, k as usize) {
                let mut multinomial = Rational::new(factorial_exact(k), BigInt::one());
                for &part in lambda.parts() {
                    multinomial /= Rational::new(factorial_exact(part), BigInt::one());
                }
                ok &= sums.get(&lambda) == Some(&multinomial);
            }
        }
    }
    let elapsed = start.elapsed();
    ok &= elapsed.as_secs() < 60;
    report(1, "exact sum identity", ok, &format!("k<=8, all beta, built in {elapsed:.2?}"));
}

/// `E[u₁^{2k}]` for a uniform point on `S^{d−1}`, by composite Simpson
/// quadrature of `∫ cos^{2k}θ sin^{d−2}θ dθ / ∫ sin^{d−2}θ dθ`.
fn sphere_even_moment(d: usize, k: u32) -> f64 {
    if d == 1 {
        return 1.0; // S⁰ = {±1}
    }
    let simpson = |f: &dyn Fn(f64) -> f64| -> f64 {
        let n = 40_000usize;
        let h = std::f64::consts::PI / n as f64;
        let mut acc = f(0.0) + f(std::f64::consts::PI);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(i as f64 * h);
        }
        acc * h / 3.0
    };
    let p = (d - 2) as f64;
    let num = simpson(&|t: f64| t.cos().powi(2 * k as i32) * t.sin().powf(p));
    let den = simpson(&|t: f64| t.sin().powf(p));
    num / den
}

/// Criterion 2: m=1 closed form `(½)_k/(βn/2)_k·|x|^{2k}` matches
/// theorem_rhs to 1e-12 relative and sphere quadrature to 1e-9,
/// including the 1/2, 1/5 and 1/4 cells.
#[test]
fn criterion_2_closed_form_sphere_cells() {
    let mut ok = true;
    let mut worst_closed = 0.0f64;
    let mut worst_quad = 0.0f64;
    for tag in [AlgebraTag::Real, AlgebraTag::Complex, AlgebraTag::Quaternion] {
        let table = build_jack_table(6, tag);
        let beta = tag.beta();
        let comps = tag.components();
        for n in 1..=4usize {
            // A fixed non-trivial row vector with every component in play.
            let mut x = MatrixF::zeros(1, n, tag);
            let mut norm_sq = 0.0;
            for j in 0..n {
                for c in 0..comps {
                    let v = 0.3 + 0.1 * (j * comps + c) as f64;
                    x.entry_mut(0, j)[c] = v;
                    norm_sq += v * v;
                }
            }
            for k in 0..=6u32 {
                let a = beta as f64 * n as f64 / 2.0;
                let closed = rising_factorial(0.5, k) / rising_factorial(a, k) * norm_sq.powi(k as i32);
                let got = theorem_rhs(&x, k, &table).unwrap();
                let rel = (got - closed).abs() / closed.abs();
                worst_closed = worst_closed.max(rel);
                ok &= rel <= 1e-12;
                if k <= 3 {
                    let quad = sphere_even_moment(n * beta as usize, k) * norm_sq.powi(k as i32);
                    let qrel = (got - quad).abs() / quad.abs().max(1.0);
                    worst_quad = worst_quad.max(qrel);
                    ok &= qrel <= 1e-9;
                }
            }
        }
    }
    // The three named cells, as plain numbers.
    let half = sphere_even_moment(2, 1);
    let fifth = sphere_even_moment(3, 2);
    let quarter = sphere_even_moment(4, 1);
    ok &= (half - 0.5).abs() <= 1e-9 && (fifth - 0.2).abs() <= 1e-9 && (quarter - 0.25).abs() <= 1e-9;
    report(
        2,
        "closed-form sphere cells",
        ok,
        &format!("worst closed-form rel {worst_closed:.2e}, worst quadrature rel {worst_quad:.2e}"),
    );
}

/// Criterion 3: the 75-cell Monte Carlo grid at 10⁶ samples passes the
/// z=4 gate (≥95%, k=0 exact) in under 10 minutes.
#[test]
fn criterion_3_monte_carlo_grid() {
    let start = Instant::now();
    let rows = run_campaign(&grid_config(CheckKind::Moment, vec![0, 1, 2, 3, 4], 42)).unwrap();
    let elapsed = start.elapsed();
    let passed = rows.iter().filter(|r| r.pass == Some(true)).count();
    let k0_exact = rows
        .iter()
        .filter(|r| r.k == Some(0))
        .all(|r| r.lhs_mean == Some(1.0) && r.z_score == Some(0.0));
    let ok = gate_passes(&rows) && k0_exact && elapsed.as_secs() < 600;
    report(
        3,
        "monte carlo verification grid",
        ok,
        &format!("{passed}/{} cells passed in {elapsed:.2?}", rows.len()),
    );
}

/// Criterion 4: odd powers 1, 3, 5 vanish within 4·stderr on ≥95% of
/// the same grid.
#[test]
fn criterion_4_odd_moments() {
    let rows = run_campaign(&grid_config(CheckKind::Odd, vec![1, 3, 5], 43)).unwrap();
    let passed = rows.iter().filter(|r| r.pass == Some(true)).count();
    let ok = (passed as f64) >= 0.95 * rows.len() as f64;
    report(4, "odd-moment suite", ok, &format!("{passed}/{} cells passed", rows.len()));
}

/// Criterion 5: etr vs degree-12 ₀F₁ on the grid, plus the scalar
/// I₀(1) cell to 3·stderr.
#[test]
fn criterion_5_bessel_consistency() {
    let rows = run_campaign(&grid_config(CheckKind::Bessel, vec![], 44)).unwrap();
    let passed = rows.iter().filter(|r| r.pass == Some(true)).count();
    let mut ok = (passed as f64) >= 0.95 * rows.len() as f64;

    let x = MatrixF::from_entries(1, 1, AlgebraTag::Complex, &[vec![1.0, 0.0]]).unwrap();
    let est = etr_estimate(&x, 1_000_000, 45, DEFAULT_CHUNK_SIZE).unwrap();
    let i0 = 1.26606587775201;
    let dev = (est.mean - i0).abs();
    ok &= dev <= 3.0 * est.stderr;
    report(
        5,
        "bessel/etr consistency",
        ok,
        &format!("{passed}/{} grid cells; I0(1) off by {dev:.2e} vs 3σ={:.2e}", rows.len(), 3.0 * est.stderr),
    );
}

/// Criterion 6: `4^k·(½)_k/(2k)! = 1/k!` exactly for k ≤ 20.
#[test]
fn criterion_6_algebraic_collapse() {
    let mut ok = true;
    for k in 0..=20u32 {
        let mut lhs = rising_factorial_exact(&rat(1, 2), k);
        for _ in 0..k {
            lhs *= rat(4, 1);
        }
        lhs /= Rational::new(factorial_exact(2 * k), BigInt::one());
        let rhs = Rational::new(BigInt::one(), factorial_exact(k));
        ok &= lhs == rhs;
    }
    report(6, "algebraic collapse", ok, "4^k(1/2)_k/(2k)! = 1/k! for k <= 20");
}

/// Criterion 7: known Stiefel log-volumes to 1e-12.
#[test]
fn criterion_7_volume_checks() {
    let tau = std::f64::consts::TAU;
    let checks = [
        (1, 2, AlgebraTag::Real, tau.ln()),
        (1, 3, AlgebraTag::Real, (2.0 * tau).ln()),
        (1, 1, AlgebraTag::Complex, tau.ln()),
    ];
    let mut ok = true;
    let mut worst = 0.0f64;
    for (m, n, tag, expect) in checks {
        let got = stiefel_log_volume(m, n, tag).unwrap();
        worst = worst.max((got - expect).abs());
        ok &= (got - expect).abs() <= 1e-12;
    }
    report(7, "volume checks", ok, &format!("worst deviation {worst:.2e}"));
}

/// Criterion 8: identical seed and chunk size give byte-identical
/// reports with 1, 4 and 8 workers.
#[test]
fn criterion_8_determinism_across_workers() {
    let dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_matfn");
    // Samples straddle several chunk boundaries so the worker pool has
    // real scheduling freedom.
    let samples = (2 * DEFAULT_CHUNK_SIZE + 12_345).to_string();
    let mut outputs = Vec::new();
    for workers in [1u32, 4, 8] {
        let path = dir.path().join(format!("report-{workers}.jsonl"));
        let status = Command::new(bin)
            .args(["verify", "--beta", "1,2", "--m", "1,2", "--n", "2,3", "--k", "0,1,2"])
            .args(["--samples", &samples, "--seed", "42"])
            .args(["--workers", &workers.to_string(), "--out"])
            .arg(&path)
            .status()
            .unwrap();
        assert!(status.success(), "verify run with {workers} workers failed");
        outputs.push(std::fs::read(&path).unwrap());
    }
    let ok = outputs[0] == outputs[1] && outputs[1] == outputs[2];
    report(
        8,
        "determinism across workers",
        ok,
        &format!("{} bytes identical across 1/4/8 workers", outputs[0].len()),
    );
}
