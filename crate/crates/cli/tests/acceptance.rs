//! Acceptance run: one pass/fail line per criterion.
//!
//! Criterion 1 asks for the level 7, D = 20 polynomial exactly as printed in
//! the source, whose x coefficient has the wrong sign. That line is expected
//! to fail; every other line must pass for the run to succeed.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use heegner_core::arith::{gcd, is_fundamental};
use heegner_core::formlib::{normalized_hauptmodul, HAUPTMODUL_LEVELS};
use heegner_core::halfint::{generate_family, in_plus_support, seed_form, NormalizationRule};
use heegner_core::numoracle::{
    calibrate_constant_term, direct_trace_oracle, first_sensitive_disc, hauptmodul_at, polynomial_roots,
    verify_class_polynomial, Budget,
};
use heegner_core::qseries::LaurentSeries;
use heegner_core::quadforms::{class_number_hn, heegner_representatives, hurwitz_h1, BinaryQF};
use heegner_core::traceeng::{
    class_polynomial, class_polynomial_with, constant_c, from_elementary, hecke_combination_check, newton_girard,
    p_polynomials, trace_with, Families,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rug::{Float, Integer, Rational};

const KNOWN_UNATTAINABLE: &[u32] = &[1];

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn ints(v: &[i64]) -> Vec<Integer> {
    v.iter().map(|&x| Integer::from(x)).collect()
}

fn golden_run() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_hauptpoly"))
        .args(["classpoly", "-N", "7", "-D", "20"])
        .env_remove("HAUPTPOLY_CACHE_DIR")
        .output()
        .expect("binary runs");
    let took = start.elapsed();
    let got = String::from_utf8_lossy(&out.stdout).trim().to_string();
    let printed = "x^4+30x^3+327x^2-1470x+2401";
    let consistent = "x^4+30x^3+327x^2+1470x+2401";
    let timing = format!("{:.2}s", took.as_secs_f64());
    if got == printed && took < Duration::from_secs(60) {
        pass(format!("{got} in {timing}"))
    } else if got == consistent && took < Duration::from_secs(60) {
        fail(format!(
            "got {got} in {timing}; the printed polynomial has -1470x, which contradicts its own power sums and roots"
        ))
    } else {
        fail(format!("got {got:?} in {timing}"))
    }
}

fn intermediates() -> Outcome {
    let fams = Families::new(NormalizationRule::square_delta());
    let mut bad = Vec::new();
    let fam = match fams.get(7, 16, 21) {
        Ok(f) => f,
        Err(e) => return fail(e.to_string()),
    };
    let b: Vec<Rational> = [1u64, 4, 9, 16].iter().map(|&m| fam.btilde(m, 20).unwrap()).collect();
    if b != [22, -26, 78, 338].map(Rational::from) {
        bad.push(format!("btilde {b:?}"));
    }
    let c: Vec<Rational> = (1..=4).map(|nu| constant_c(7, nu)).collect();
    if c != [(-1, 2), (-3, 2), (-2, 1), (-7, 2)].map(Rational::from) {
        bad.push(format!("c {c:?}"));
    }
    let tr: Vec<Rational> = (1..=4).map(|nu| trace_with(&fams, 7, 20, nu).unwrap()).collect();
    if tr != [-14, 54, -224, -1266].map(Rational::from) {
        bad.push(format!("traces {tr:?}"));
    }
    let p = p_polynomials(7, 4).unwrap();
    let want = [ints(&[4, 1]), ints(&[12, 8, 1]), ints(&[16, 42, 12, 1]), ints(&[28, 160, 88, 16, 1])];
    for (nu, w) in want.iter().enumerate() {
        if p[nu + 1].coeffs != *w {
            bad.push(format!("P_{}", nu + 1));
        }
    }
    match class_polynomial_with(&fams, 7, 20) {
        Ok(h) if h.power_sums == [-30, 246, -1980, 13454].map(Rational::from) => {}
        Ok(h) => bad.push(format!("power sums {:?}", h.power_sums)),
        Err(e) => bad.push(e.to_string()),
    }
    if bad.is_empty() {
        pass("btilde 22,-26,78,338; c -1/2,-3/2,-2,-7/2; traces -14,54,-224,-1266; P_1..P_4; power sums -30,246,-1980,13454")
    } else {
        fail(bad.join("; "))
    }
}

fn numeric_roots() -> Outcome {
    let h = match class_polynomial(7, 20) {
        Ok(h) => h,
        Err(e) => return fail(e.to_string()),
    };
    let roots = polynomial_roots(&h.coeffs, 256);
    let forms = [(14, 6, 1), (21, 8, 1), (7, 6, 2), (63, 22, 2)];
    let mut worst = 0.0f64;
    let mut used = vec![false; roots.len()];
    for (a, b, c) in forms {
        let q = BinaryQF::new(a, b, c).unwrap();
        let v = hauptmodul_at(7, &q, Budget::default()).unwrap();
        let (vx, vy) = v.to_f64_pair();
        let best = roots
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, r)| {
                let (rx, ry) = r.to_f64_pair();
                (i, (rx - vx).abs().max((ry - vy).abs()))
            })
            .min_by(|x, y| x.1.total_cmp(&y.1));
        match best {
            Some((i, d)) => {
                used[i] = true;
                worst = worst.max(d);
            }
            None => return fail("fewer roots than table forms"),
        }
    }
    if worst < 1e-4 {
        pass(format!("4 roots matched at 1500 terms, max coordinate difference {worst:.2e}"))
    } else {
        fail(format!("max coordinate difference {worst:.2e}"))
    }
}

fn hecke_identities() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for n in HAUPTMODUL_LEVELS {
        for nu in 1..=12 {
            count += 1;
            match hecke_combination_check(n, nu, 0) {
                Ok(true) => {}
                Ok(false) => bad.push(format!("({n},{nu})")),
                Err(e) => bad.push(format!("({n},{nu}): {e}")),
            }
        }
    }
    if bad.is_empty() {
        pass(format!("{count} identities exact through nu (varpi(N) - 1) + 1"))
    } else {
        fail(format!("failed {}", bad.join(", ")))
    }
}

fn u_p_annihilation() -> Outcome {
    let mut bad = Vec::new();
    for (n, p) in [(4u64, 2u64), (8, 2), (9, 3), (12, 2), (25, 5)] {
        let j = normalized_hauptmodul(n, 100 * p as i64 + 2).unwrap();
        let u = j.u(p);
        if u.precision() < 100 || u.terms().any(|(k, c)| k < 100 && c != 0) {
            bad.push(format!("({n},{p})"));
        }
    }
    if bad.is_empty() {
        pass("J|U_p = 0 through 100 coefficients for (4,2),(8,2),(9,3),(12,2),(25,5)")
    } else {
        fail(bad.join(", "))
    }
}

fn f0_crosscheck() -> Outcome {
    let mut bad = Vec::new();
    for n in [2u64, 3, 5, 7, 13] {
        let f = seed_form(n, 0, 51).unwrap();
        for k in 0..=50i64 {
            let want = if matches!(k % 4, 1 | 2) {
                Rational::new()
            } else {
                (2 * hurwitz_h1(k).unwrap()) - class_number_hn(n, k).unwrap()
            };
            if f.coeff(k).unwrap() != want {
                bad.push(format!("N={n} n={k}"));
            }
        }
    }
    if bad.is_empty() {
        pass("F_N(0) = sum (2H_1(n) - H_N(n)) q^n for n <= 50, N = 2,3,5,7,13")
    } else {
        fail(bad.join(", "))
    }
}

fn level_one_battery() -> Outcome {
    let fams = Families::new(NormalizationRule::square_delta());
    let mut bad = Vec::new();
    for (d, nu, want) in [(3i64, 1u64, -248i64), (4, 1, 492), (3, 2, 53256)] {
        let exact = trace_with(&fams, 1, d, nu).unwrap();
        let num = direct_trace_oracle(1, d, nu, Budget::default()).unwrap();
        let err = (num.re - Float::with_val(256, &exact)).abs().to_f64();
        if exact != want || err >= 1e-6 {
            bad.push(format!("Tr_{nu}(D={d}) = {exact}, oracle off by {err:.1e}"));
        }
    }
    for (d, want) in [(3i64, "x"), (4, "x-1728")] {
        match class_polynomial_with(&fams, 1, d) {
            Ok(h) if h.to_string() == want => {}
            Ok(h) => bad.push(format!("D={d}: {h}")),
            Err(e) => bad.push(e.to_string()),
        }
    }
    if bad.is_empty() {
        pass("Tr_1(3) = -248, Tr_1(4) = 492, Tr_2(3) = 53256 match the oracle; H_3 = x, H_4 = x-1728")
    } else {
        fail(bad.join("; "))
    }
}

fn calibration() -> Outcome {
    let fams = Families::new(NormalizationRule::square_delta());
    let mut notes = Vec::new();
    let mut bad = Vec::new();
    for n in [3u64, 5, 7, 13] {
        let d = match first_sensitive_disc(n) {
            Ok(d) => d,
            Err(e) => return fail(e.to_string()),
        };
        for m in [1u64, 4, 9] {
            match calibrate_constant_term(&fams, n, m, d, Budget::default()) {
                Ok(a) if a == 0 => {}
                Ok(a) => bad.push(format!("N={n} m={m} D={d}: adjustment {a}")),
                Err(e) => bad.push(format!("N={n} m={m}: {e}")),
            }
        }
        notes.push(format!("N={n}@D={d}"));
    }
    if bad.is_empty() {
        pass(format!("default rule confirmed, adjustment 0 for m = 1, 4, 9 at {}", notes.join(", ")))
    } else {
        fail(format!("non-zero adjustments (rule would need an override): {}", bad.join("; ")))
    }
}

fn arb_series(max_len: usize) -> impl Strategy<Value = LaurentSeries> {
    (-3i64..4, prop::collection::vec(-20i64..21, 1..max_len), 1i64..5).prop_map(|(s, v, d)| {
        LaurentSeries::new(s, v.into_iter().map(|n| Rational::from((n, d))).collect())
    })
}

fn same(a: &LaurentSeries, b: &LaurentSeries) -> bool {
    let p = a.precision().min(b.precision());
    a.truncate(p) == b.truncate(p)
}

fn properties() -> Outcome {
    const CASES: u32 = 250;
    let cfg = Config { cases: CASES, failure_persistence: None, ..Config::default() };
    let mut total = 0;
    let mut failures = Vec::new();
    let mut record = |name: &str, r: Result<(), String>| {
        total += CASES;
        if let Err(e) = r {
            failures.push(format!("{name}: {e}"));
        }
    };

    let mut runner = TestRunner::new(cfg.clone());
    let r = runner.run(
        &(arb_series(150), 1u64..8, 1u64..8, 0i64..7, prop::sample::select(vec![1u64, 2, 3, 7])),
        |(f, m, n, k, level)| {
            if gcd(m, n) != 1 {
                return Ok(());
            }
            prop_assert!(same(&f.hecke(n, k, level).hecke(m, k, level), &f.hecke(m * n, k, level)));
            Ok(())
        },
    );
    record("hecke multiplicativity", r.map_err(|e| e.to_string()));

    let mut runner = TestRunner::new(cfg.clone());
    let r = runner.run(&(arb_series(100), 1u64..6, 1u64..6), |(f, a, b)| {
        prop_assert_eq!(f.v(a).u(a), f.clone());
        prop_assert!(same(&f.v(a).v(b), &f.v(a * b)));
        prop_assert!(same(&f.u(a).u(b), &f.u(a * b)));
        Ok(())
    });
    record("U/V identities", r.map_err(|e| e.to_string()));

    let mut runner = TestRunner::new(cfg.clone());
    let r = runner.run(&(arb_series(40), arb_series(40)), |(f, g)| {
        let p = f.mul_series(&g);
        for n in p.valuation()..p.precision() {
            let mut acc = Rational::new();
            for i in f.valuation()..f.precision() {
                let j = n - i;
                if j >= g.valuation() && j < g.precision() {
                    acc += f.coeff(i).unwrap() * g.coeff(j).unwrap();
                }
            }
            prop_assert_eq!(p.coeff(n).unwrap(), acc);
        }
        Ok(())
    });
    record("convolution oracle", r.map_err(|e| e.to_string()));

    let mut runner = TestRunner::new(cfg.clone());
    let r = runner.run(&prop::collection::vec((-30i64..31, 1i64..6), 1..9), |roots| {
        let xs: Vec<Rational> = roots.iter().map(|&(n, d)| Rational::from((n, d))).collect();
        let p: Vec<Rational> = (1..=xs.len() as u32)
            .map(|k| xs.iter().fold(Rational::new(), |acc, x| acc + rug::ops::Pow::pow(x.clone(), k)))
            .collect();
        let mut want = vec![Rational::from(1)];
        for x in &xs {
            let mut next = vec![Rational::new(); want.len() + 1];
            for (i, c) in want.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= Rational::from(c * x);
            }
            want = next;
        }
        prop_assert_eq!(from_elementary(&newton_girard(&p)), want);
        Ok(())
    });
    record("Newton-Girard round trip", r.map_err(|e| e.to_string()));

    let fams: Vec<_> = [1u64, 2, 3, 5, 7, 13]
        .iter()
        .map(|&n| generate_family(n, 40, 60, &NormalizationRule::square_delta()).unwrap())
        .collect();
    let mut runner = TestRunner::new(cfg);
    let r = runner.run(&(0usize..6, 0u64..41), |(i, m)| {
        let fam = &fams[i];
        if !matches!(m % 4, 0 | 1) || (fam.level == 1 && m == 0) {
            return Ok(());
        }
        let f = fam.get(m).unwrap();
        for (n, c) in f.series().terms() {
            if n < 0 {
                prop_assert!(n == -(m as i64) && c == 1);
            } else {
                prop_assert!(in_plus_support(n));
            }
        }
        Ok(())
    });
    record("plus-space support", r.map_err(|e| e.to_string()));

    if failures.is_empty() {
        pass(format!("{total} randomized cases across 5 properties, 0 failures"))
    } else {
        fail(failures.join("; "))
    }
}

fn integrality_sweep() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    for n in [1u64, 3, 5, 7, 13] {
        let fams = Families::new(NormalizationRule::square_delta());
        let ds: Vec<i64> = (3..=120).filter(|&d| is_fundamental(d)).collect();
        let hmax = ds.iter().map(|&d| heegner_representatives(n, d).unwrap().len() as u64).max().unwrap();
        if let Err(e) = fams.get(n, hmax * hmax, 121) {
            return fail(e.to_string());
        }
        for d in ds {
            if heegner_representatives(n, d).unwrap().is_empty() {
                continue;
            }
            count += 1;
            let h = match class_polynomial_with(&fams, n, d) {
                Ok(h) => h,
                Err(e) => {
                    bad.push(format!("N={n} D={d}: {e}"));
                    continue;
                }
            };
            match verify_class_polynomial(&h, Budget::default()) {
                Ok(r) if r.passed => worst = worst.max(r.max_residual),
                Ok(r) => bad.push(format!("N={n} D={d}: residual {:.1e}", r.max_residual)),
                Err(e) => bad.push(format!("N={n} D={d}: {e}")),
            }
        }
    }
    let took = start.elapsed();
    if took > Duration::from_secs(15 * 60) {
        bad.push(format!("took {took:.0?}"));
    }
    if bad.is_empty() {
        pass(format!("{count} polynomials monic and integral, max residual {worst:.1e}, {:.1}s", took.as_secs_f64()))
    } else {
        fail(bad.join("; "))
    }
}

fn main() -> ExitCode {
    let checks: [(u32, &str, fn() -> Outcome); 10] = [
        (1, "level 7, D = 20 golden run", golden_run),
        (2, "level 7, D = 20 intermediates", intermediates),
        (3, "numeric roots at the level 7 table forms", numeric_roots),
        (4, "Hecke combination identities", hecke_identities),
        (5, "U_p annihilation of J", u_p_annihilation),
        (6, "F_N(0) class number cross-check", f0_crosscheck),
        (7, "level 1 battery", level_one_battery),
        (8, "constant-term calibration", calibration),
        (9, "property suites", properties),
        (10, "integrality sweep D <= 120", integrality_sweep),
    ];
    let mut unexpected = 0;
    for (id, name, f) in checks {
        let t = Instant::now();
        let o = f();
        let status = if o.ok { "PASS" } else { "FAIL" };
        let note = if !o.ok && KNOWN_UNATTAINABLE.contains(&id) { " [expected]" } else { "" };
        println!("criterion {id:>2} {status}{note}  {name}: {} ({:.1}s)", o.detail, t.elapsed().as_secs_f64());
        if !o.ok && !KNOWN_UNATTAINABLE.contains(&id) {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
