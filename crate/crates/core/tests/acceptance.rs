//! Acceptance suite: one line per criterion, at the stated tolerances.
//!
//! Exits nonzero if any criterion fails, except those listed in
//! `KNOWN_UNATTAINABLE`, which are still run and reported as FAIL.

use std::time::Instant;

use degenerate_hilfer::fractional_ops::{
    hilfer_monomial, hilfer_numeric, OrderTriple, SampledFunction,
};
use degenerate_hilfer::solver::{
    cauchy_solution, coefficient_sequence, derive_params, fundamental_solution, DegenerateProblem,
};
use degenerate_hilfer::special_functions::{
    kilbas_saigo, mittag_leffler, KilbasSaigoParams, DEFAULT_N_MAX,
};
use degenerate_hilfer::verification::{
    default_ic_points, initial_condition_check, residual_coefficient_identity_with,
    residual_numeric, GridSpec,
};
use degenerate_hilfer::Complex64;

/// Absolute 1e-10 agreement is below one ulp of E_{0.3}(5) ≈ 1e92, and the
/// alternating series at z = −5 cancels terms of size 1e91.
const KNOWN_UNATTAINABLE: &[u32] = &[1];

struct Verdict {
    id: u32,
    passed: bool,
    detail: String,
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn orders_window(i: u32) -> [f64; 3] {
    let i = f64::from(i);
    [i - 0.9, i - 0.5, i - 0.1]
}

/// The coefficient sweep: α, β ∈ {i−0.9, i−0.5, i−0.1}, μ ∈ {0, 0.3, 1},
/// m ∈ {0, 0.5, 2}. Combinations with m + μ(α−β) < 0 are outside the
/// problem class and are counted separately.
fn sweep(max_i: u32, lambda: Complex64) -> (Vec<DegenerateProblem>, usize) {
    let mut out = Vec::new();
    let mut skipped = 0;
    for i in 1..=max_i {
        for &alpha in &orders_window(i) {
            for &beta in &orders_window(i) {
                for &mu in &[0.0, 0.3, 1.0] {
                    for &m in &[0.0, 0.5, 2.0] {
                        let o =
                            OrderTriple::new(alpha, beta, mu, i).expect("window values are valid");
                        match DegenerateProblem::new(o, m, lambda) {
                            Ok(p) => out.push(p),
                            Err(_) => skipped += 1,
                        }
                    }
                }
            }
        }
    }
    (out, skipped)
}

fn criterion_1() -> Verdict {
    let t0 = Instant::now();
    let mut max_abs = 0.0_f64;
    let mut worst = (0.0, 0.0);
    let mut max_rel = 0.0_f64;
    let mut per_alpha = Vec::new();
    for &alpha in &[0.3, 0.5, 0.8] {
        let p0 = KilbasSaigoParams::new(alpha, 1.0, 0.0).unwrap();
        let p1 = KilbasSaigoParams::new(alpha, 1.0, 1.0).unwrap();
        let scale = libm::tgamma(alpha + 1.0);
        let mut alpha_abs = 0.0_f64;
        for k in 0..41 {
            let z = c(-5.0 + 0.25 * k as f64);
            let ks0 = kilbas_saigo(p0, z, 1e-15, DEFAULT_N_MAX).unwrap().value;
            let ml0 = mittag_leffler(alpha, 1.0, z, 1e-15).unwrap().value;
            let ks1 = kilbas_saigo(p1, z, 1e-15, DEFAULT_N_MAX).unwrap().value;
            let ml1 = mittag_leffler(alpha, alpha + 1.0, z, 1e-15).unwrap().value * scale;
            for (a, b) in [(ks0, ml0), (ks1, ml1)] {
                let e = (a - b).norm();
                let e = if e.is_nan() { f64::INFINITY } else { e };
                alpha_abs = alpha_abs.max(e);
                if e > max_abs {
                    max_abs = e;
                    worst = (alpha, z.re);
                }
                max_rel = max_rel.max(e / b.norm().max(1.0));
            }
        }
        per_alpha.push(format!("α={alpha}: {alpha_abs:.1e}"));
    }
    let secs = t0.elapsed().as_secs_f64();
    Verdict {
        id: 1,
        passed: max_abs <= 1e-10 && secs < 1.0,
        detail: format!(
            "Kilbas-Saigo reductions: max abs err {max_abs:.2e} at α={}, z={} [{}]; max err/max(1,|E|) {max_rel:.1e}; {secs:.3}s",
            worst.0,
            worst.1,
            per_alpha.join(", ")
        ),
    }
}

fn criterion_2() -> Verdict {
    let p = KilbasSaigoParams::new(1.0, 1.0, 0.0).unwrap();
    let mut worst = 0.0_f64;
    let mut count = 0;
    for ring in 0..=10 {
        let r = 0.5 * ring as f64;
        for k in 0..24 {
            let z = Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / 24.0);
            let v = kilbas_saigo(p, z, 1e-16, DEFAULT_N_MAX).unwrap().value;
            let e = (v - z.exp()).norm() / z.norm().exp();
            worst = worst.max(e);
            count += 1;
        }
    }
    Verdict {
        id: 2,
        passed: worst <= 1e-12,
        detail: format!(
            "exponential identity: max |E−e^z|/e^|z| = {worst:.2e} over {count} points of |z| ≤ 5"
        ),
    }
}

fn criterion_3() -> Verdict {
    let t0 = Instant::now();
    let (problems, skipped) = sweep(3, c(1.0));
    let mut worst = 0.0_f64;
    let mut branches = 0;
    for p in &problems {
        for s in 0..p.orders.i {
            let coeffs = coefficient_sequence(p, s, 200).unwrap();
            let e = residual_coefficient_identity_with(p, s, &coeffs).unwrap();
            worst = worst.max(e);
            branches += 1;
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    Verdict {
        id: 3,
        passed: worst <= 1e-12 && secs < 10.0,
        detail: format!(
            "coefficient identity: max rel err {worst:.2e} over {branches} branches, K=200 ({skipped} combos with m+μ(α−β)<0 excluded); {secs:.2}s"
        ),
    }
}

fn monomial_error(orders: &OrderTriple, delta: f64, n: usize) -> (f64, bool) {
    let h = 1.0 / n as f64;
    let f = SampledFunction::from_fn(0.0, h, n + 1, |y| c(y.powf(delta))).unwrap();
    let out = hilfer_numeric(&f, orders).unwrap();
    let exact = hilfer_monomial(orders, delta).unwrap();
    let zero_ref = exact.is_zero();
    let mut worst = 0.0_f64;
    for k in 2..n - 1 {
        let y = k as f64 * h;
        if y < 0.25 {
            continue;
        }
        let want = exact.eval(y);
        let e = (out.values[k] - want).norm();
        worst = worst.max(if zero_ref { e } else { e / want.norm() });
    }
    (worst, zero_ref)
}

fn criterion_4() -> Verdict {
    let mut worst_err = 0.0_f64;
    let mut worst_order = f64::INFINITY;
    let mut cases = 0;
    let mut failures = Vec::new();
    for i in 1..=2u32 {
        let fi = f64::from(i);
        for &(alpha, beta) in &[
            (fi - 0.3, fi - 0.6),
            (fi - 0.5, fi - 0.5),
            (fi - 0.8, fi - 0.2),
        ] {
            for &mu in &[0.0, 0.5, 1.0] {
                let orders = OrderTriple::new(alpha, beta, mu, i).unwrap();
                for &delta in &[1.0, 2.0, 3.5] {
                    let errs: Vec<f64> = [256, 512, 1024, 2048]
                        .iter()
                        .map(|&n| monomial_error(&orders, delta, n).0)
                        .collect();
                    let fine = errs[3];
                    // Errors at rounding level carry no order information.
                    let order = if errs[0] < 1e-10 {
                        f64::INFINITY
                    } else {
                        (errs[0] / fine).log2() / 3.0
                    };
                    worst_err = worst_err.max(fine);
                    worst_order = worst_order.min(order);
                    cases += 1;
                    if !(fine <= 5e-3 && order >= 1.3) {
                        failures.push(format!("(α={alpha},β={beta},μ={mu},i={i},δ={delta}): err {fine:.1e}, order {order:.2}"));
                    }
                }
            }
        }
    }
    Verdict {
        id: 4,
        passed: failures.is_empty(),
        detail: format!(
            "monomial oracle: {cases} cases, max err {worst_err:.2e} at h=1/2048, min order {worst_order:.2}{}",
            if failures.is_empty() { String::new() } else { format!("; failing {}", failures.join(" ")) }
        ),
    }
}

fn criterion_5() -> Verdict {
    let grid = GridSpec::new(1.0, 2049).unwrap();
    let mut worst = 0.0_f64;
    let mut cases = Vec::new();
    for &mu in &[0.0, 1.0] {
        for &m in &[0.0, 1.0] {
            for &lambda in &[c(1.0), c(-1.0), Complex64::new(0.5, 0.5)] {
                let o = OrderTriple::new(0.5, 0.5, mu, 1).unwrap();
                let p = DegenerateProblem::new(o, m, lambda).unwrap();
                let r = residual_numeric(&p, 0, grid, 1e-14).unwrap();
                worst = worst.max(if r.series_converged {
                    r.max_rel_error
                } else {
                    f64::INFINITY
                });
                cases.push(format!("{:.0e}", r.max_rel_error));
            }
        }
    }
    Verdict {
        id: 5,
        passed: worst <= 5e-3,
        detail: format!(
            "equation residual: max rel {worst:.2e} over 12 cases at h=1/2048 [{}]",
            cases.join(" ")
        ),
    }
}

fn criterion_6() -> Verdict {
    let mut worst = 0.0_f64;
    for &lambda in &[1.0, -1.0, 2.0, -2.0, 0.5, -3.0] {
        let o = OrderTriple::new(0.5, 0.5, 1.0, 1).unwrap();
        let p = DegenerateProblem::new(o, 0.0, c(lambda)).unwrap();
        let sol = cauchy_solution(&p, &[c(1.0)]).unwrap();
        for k in 1..=200 {
            let y = k as f64 / 200.0;
            let got = sol.evaluate(y, 1e-15).unwrap().value;
            let want = (lambda * lambda * y).exp() * libm::erfc(-lambda * y.sqrt());
            worst = worst.max((got - c(want)).norm());
        }
    }
    Verdict {
        id: 6,
        passed: worst <= 1e-8,
        detail: format!(
            "classical closure e^(λ²y)erfc(−λ√y): max abs err {worst:.2e}, λ ∈ {{±1, ±2, 0.5, −3}}"
        ),
    }
}

fn criterion_7() -> Verdict {
    let mut param_err = 0.0_f64;
    let mut value_err = 0.0_f64;
    for &beta in &[0.1, 0.5, 0.9] {
        for &alpha in &[0.2, 0.7] {
            for &m in &[0.0, 0.5, 2.0] {
                for &lambda in &[c(1.0), c(-1.0), Complex64::new(0.5, 0.5)] {
                    let o = OrderTriple::new(alpha, beta, 0.0, 1).unwrap();
                    let p = DegenerateProblem::new(o, m, lambda).unwrap();
                    let u = fundamental_solution(&p, 0, 256).unwrap();
                    let got = u.ks_params();
                    let want = KilbasSaigoParams::new(beta, 1.0 + m / beta, 1.0 + (m - 1.0) / beta)
                        .unwrap();
                    param_err = param_err
                        .max((got.alpha - want.alpha).abs())
                        .max((got.m - want.m).abs())
                        .max((got.l - want.l).abs());
                    for k in 1..=50 {
                        let y = k as f64 / 50.0;
                        let v = u.evaluate(y, 1e-15).unwrap().value;
                        let e = kilbas_saigo(want, lambda * y.powf(m + beta), 1e-15, DEFAULT_N_MAX)
                            .unwrap()
                            .value
                            * y.powf(beta - 1.0);
                        value_err = value_err.max((v - e).norm() / e.norm().max(1.0));
                    }
                }
            }
        }
    }
    Verdict {
        id: 7,
        passed: param_err <= 1e-14 && value_err <= 1e-10,
        detail: format!(
            "Riemann-Liouville closed form: param err {param_err:.1e}, value err {value_err:.2e}"
        ),
    }
}

fn criterion_8() -> Verdict {
    let points = default_ic_points();
    let mut worst = 0.0_f64;
    let mut checks = 0;
    for &lambda in &[c(1.0), c(-1.0)] {
        let (problems, _) = sweep(2, lambda);
        for p in &problems {
            let i = p.orders.i as usize;
            let mut phis_set: Vec<Vec<f64>> = vec![vec![]];
            for _ in 0..i {
                phis_set = phis_set
                    .into_iter()
                    .flat_map(|v| (0..4).map(move |x| [v.clone(), vec![f64::from(x)]].concat()))
                    .collect();
            }
            for phis in phis_set {
                let phis: Vec<Complex64> = phis.into_iter().map(c).collect();
                for e in initial_condition_check(p, &phis, &points).unwrap() {
                    worst = worst.max(if e.error.is_nan() {
                        f64::INFINITY
                    } else {
                        e.error
                    });
                    checks += 1;
                }
            }
        }
    }
    Verdict {
        id: 8,
        passed: worst <= 1e-6,
        detail: format!("initial conditions: max |limit − φ_j| {worst:.2e} over {checks} limits"),
    }
}

fn criterion_9() -> Verdict {
    let (problems, _) = sweep(3, c(1.0));
    let mut mismatches = 0;
    let mut checks = 0;
    for p in &problems {
        let o = &p.orders;
        let gamma = o.beta + o.mu * (o.alpha - o.beta);
        let fi = f64::from(o.i);
        let mut deltas = vec![fi + 0.25, fi + 1.0, fi + 3.5, 10.1];
        deltas.extend(derive_params(p).unwrap().b);
        for delta in deltas {
            let t = hilfer_monomial(o, delta).unwrap();
            let want = delta - gamma;
            let ulp = want.abs() * f64::EPSILON;
            if (t.exponent - want).abs() > ulp {
                mismatches += 1;
            }
            checks += 1;
        }
    }
    Verdict {
        id: 9,
        passed: mismatches == 0,
        detail: format!("exponent law: {mismatches} mismatches in {checks} exponents"),
    }
}

fn criterion_10() -> Verdict {
    let (problems, _) = sweep(3, c(1.0));
    let mut undetected = 0;
    let mut trials = 0;
    let mut min_detect = f64::INFINITY;
    let mut perturb = |p: &DegenerateProblem, s: u32, ks: &mut dyn Iterator<Item = usize>| {
        let base = coefficient_sequence(p, s, 200).unwrap();
        for k in ks {
            let mut coeffs = base.clone();
            coeffs[k] = coeffs[k] * (1.0 + 1e-6);
            let e = residual_coefficient_identity_with(p, s, &coeffs).unwrap();
            min_detect = min_detect.min(e);
            trials += 1;
            if e <= 1e-12 {
                undetected += 1;
            }
        }
    };
    for (n, p) in problems.iter().enumerate() {
        for s in 0..p.orders.i {
            if n % 20 == 0 {
                perturb(p, s, &mut (0..=200));
            } else {
                perturb(p, s, &mut [0, 1, 2, 50, 100, 199, 200].into_iter());
            }
        }
    }
    Verdict {
        id: 10,
        passed: undetected == 0,
        detail: format!(
            "negative control: {undetected} of {trials} single-coefficient perturbations undetected; smallest detected error {min_detect:.1e}"
        ),
    }
}

fn main() {
    let t0 = Instant::now();
    let verdicts = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
    ];
    let mut blocking = 0;
    for v in &verdicts {
        let tag = if v.passed { "PASS" } else { "FAIL" };
        let note = if !v.passed && KNOWN_UNATTAINABLE.contains(&v.id) {
            " (known unattainable in f64)"
        } else {
            ""
        };
        println!("[{tag}] criterion {:>2}: {}{note}", v.id, v.detail);
        if !v.passed && !KNOWN_UNATTAINABLE.contains(&v.id) {
            blocking += 1;
        }
    }
    let passed = verdicts.iter().filter(|v| v.passed).count();
    println!(
        "acceptance: {passed}/{} criteria passed in {:.1}s",
        verdicts.len(),
        t0.elapsed().as_secs_f64()
    );
    if blocking > 0 {
        std::process::exit(1);
    }
}
