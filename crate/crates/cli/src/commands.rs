use std::time::Instant;

use heegner_core::arith::{divisors, gamma0_index, gcd};
use heegner_core::formlib::{hauptmodul, normalized_hauptmodul, CLASS_POLY_LEVELS, HAUPTMODUL_LEVELS};
use heegner_core::halfint::{cache, seed_form, NormalizationRule, SEED_LEVELS};
use heegner_core::numoracle::{
    calibrate_constant_term, direct_trace_oracle, first_sensitive_disc, verify_class_polynomial, Budget,
};
use heegner_core::quadforms::{class_number_hn, heegner_representatives, hurwitz_h1};
use heegner_core::traceeng::{class_polynomial_with, hecke_combination_check, trace_with, Families};
use heegner_core::Error;
use rug::{Float, Rational};
use serde_json::json;

use crate::config::{Cli, Command, Format, Global, Suite};

pub enum Failure {
    Usage(String),
    Math(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnsupportedLevel(_) => Failure::Usage(e.to_string()),
            e => Failure::Math(e),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn rule(g: &Global) -> Result<NormalizationRule, Failure> {
    NormalizationRule::parse(&g.normalization).or_else(|e| usage(e.to_string()))
}

fn families(g: &Global) -> Result<Families, Failure> {
    let r = rule(g)?;
    Ok(match &g.cache_dir {
        Some(dir) => Families::with_cache_dir(r, dir),
        None => Families::new(r),
    })
}

fn budget(g: &Global) -> Result<Budget, Failure> {
    if g.numeric_terms < 10 || g.bits < 53 {
        return usage("--numeric-terms must be at least 10 and --bits at least 53");
    }
    Ok(Budget { terms: g.numeric_terms, bits: g.bits })
}

fn check_level(level: u64, allowed: &[u64], what: &str) -> Result<(), Failure> {
    if allowed.contains(&level) {
        Ok(())
    } else {
        usage(format!("level {level} is not supported for {what} (supported: {allowed:?})"))
    }
}

fn check_disc(disc: i64, precision: Option<i64>) -> Result<i64, Failure> {
    if disc <= 0 {
        return usage("-D must be positive");
    }
    let p = precision.unwrap_or(disc + 1);
    if p <= disc {
        return usage(format!("--precision must exceed D = {disc}"));
    }
    Ok(p)
}

fn rat(r: &Rational) -> String {
    r.to_string()
}

pub fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Classpoly { level, disc, precision, check_numeric } => {
            classpoly(g, *level, *disc, *precision, *check_numeric)
        }
        Command::Trace { level, disc, nu, precision, check_numeric } => {
            trace(g, *level, *disc, *nu, *precision, *check_numeric)
        }
        Command::Form { level, m, coeff, terms } => form(g, *level, *m, *coeff, *terms),
        Command::Haupt { level, terms } => haupt(g, *level, *terms),
        Command::Verify { suite, level, nu_max, terms } => verify(g, *suite, *level, *nu_max, *terms),
    }
}

fn classpoly(g: &Global, level: u64, disc: i64, precision: Option<i64>, check: bool) -> Outcome {
    check_level(level, &CLASS_POLY_LEVELS, "class polynomials")?;
    let p = check_disc(disc, precision)?;
    let b = budget(g)?;
    let fams = families(g)?;
    let h = heegner_representatives(level, disc)?.len() as u64;
    fams.get(level, (h * h).max(1), p)?;
    let poly = class_polynomial_with(&fams, level, disc)?;
    let report = if check { Some(verify_class_polynomial(&poly, b)?) } else { None };
    let verified = report.as_ref().is_some_and(|r| r.passed);
    match g.format {
        Format::Plain => {
            println!("{poly}");
            if let Some(r) = &report {
                for (q, v, res) in &r.points {
                    println!("  {q}  j = {v}  |H(j)| = {res:.3e}");
                }
                let paired = if r.pairing.is_some() { "paired" } else { "unpaired" };
                println!(
                    "numeric check: {} (max residual {:.3e}, roots {paired}, {} bits)",
                    if r.passed { "pass" } else { "FAIL" },
                    r.max_residual,
                    r.bits_used
                );
            }
        }
        Format::Json => {
            let out = json!({
                "level": level,
                "disc": disc,
                "coeffs": poly.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "verified": verified,
                "residual": report.as_ref().map_or("unchecked".to_string(), |r| format!("{:e}", r.max_residual)),
            });
            println!("{out}");
        }
    }
    Ok(!check || verified)
}

fn trace(g: &Global, level: u64, disc: i64, nu: u64, precision: Option<i64>, check: bool) -> Outcome {
    check_level(level, &SEED_LEVELS, "traces")?;
    let p = check_disc(disc, precision)?;
    if nu == 0 {
        return usage("--nu must be positive");
    }
    let b = budget(g)?;
    let fams = families(g)?;
    fams.get(level, nu * nu, p)?;
    let t = trace_with(&fams, level, disc, nu)?;
    let mut ok = true;
    let mut numeric = None;
    if check {
        let v = direct_trace_oracle(level, disc, nu, b)?;
        let err = (v.re.clone() - Float::with_val(b.bits, &t)).abs().to_f64();
        ok = err < 1e-6;
        numeric = Some((v.re.to_f64(), err));
    }
    match g.format {
        Format::Plain => {
            println!("{t}");
            if let Some((v, err)) = numeric {
                println!("numeric: {v:.10} (difference {err:.3e}) {}", if ok { "pass" } else { "FAIL" });
            }
        }
        Format::Json => {
            let mut out = json!({ "level": level, "disc": disc, "nu": nu, "trace": rat(&t) });
            if let Some((v, err)) = numeric {
                out["numeric"] = json!(format!("{v:e}"));
                out["difference"] = json!(format!("{err:e}"));
                out["verified"] = json!(ok);
            }
            println!("{out}");
        }
    }
    Ok(ok)
}

fn form(g: &Global, level: u64, m: u64, coeff: Option<i64>, terms: i64) -> Outcome {
    check_level(level, &SEED_LEVELS, "weight 3/2 forms")?;
    if !matches!(m % 4, 0 | 1) {
        return usage("-m must be 0 or 1 mod 4");
    }
    if m == 0 && level == 1 {
        return usage("F_1(0) is zero");
    }
    if terms <= 0 {
        return usage("--terms must be positive");
    }
    let mi = m as i64;
    let precision = match coeff {
        Some(n) if n < -mi => return usage(format!("--coeff must be at least -{m}")),
        Some(n) => n + 1,
        None => terms - mi,
    }
    .max(1);
    let fam = cache::load_or_generate(g.cache_dir.as_deref(), level, m.max(1), precision, &rule(g)?)?;
    let f = fam.get(m)?;
    let rows: Vec<(i64, Rational)> = match coeff {
        Some(n) => vec![(n, f.coeff(n)?)],
        None => (-mi..precision).map(|n| f.coeff(n).map(|c| (n, c))).collect::<Result<_, _>>()?,
    };
    match (g.format, coeff) {
        (Format::Plain, Some(_)) => println!("{}", rows[0].1),
        (Format::Plain, None) => {
            for (n, c) in &rows {
                println!("{n} {c}");
            }
        }
        (Format::Json, _) => {
            let out = json!({
                "level": level,
                "m": m,
                "coeffs": rows.iter().map(|(n, c)| json!({"n": n, "c": rat(c)})).collect::<Vec<_>>(),
            });
            println!("{out}");
        }
    }
    Ok(true)
}

fn haupt(g: &Global, level: u64, terms: i64) -> Outcome {
    check_level(level, &HAUPTMODUL_LEVELS, "Hauptmoduln")?;
    if terms <= 0 {
        return usage("--terms must be positive");
    }
    let j = hauptmodul(level, terms - 1)?;
    let rows: Vec<(i64, String)> = (-1..terms - 1).map(|n| (n, j.coeff_int(n).unwrap().to_string())).collect();
    match g.format {
        Format::Plain => {
            for (n, c) in &rows {
                println!("{n} {c}");
            }
        }
        Format::Json => {
            let out = json!({
                "level": level,
                "start": -1,
                "coeffs": rows.iter().map(|r| r.1.clone()).collect::<Vec<_>>(),
            });
            println!("{out}");
        }
    }
    Ok(true)
}

struct Row {
    name: String,
    ok: bool,
    detail: String,
}

fn verify(g: &Global, suite: Suite, level: Option<u64>, nu_max: u64, terms: Option<i64>) -> Outcome {
    let start = Instant::now();
    let pick = |all: &[u64], what: &str| -> Result<Vec<u64>, Failure> {
        match level {
            Some(n) => check_level(n, all, what).map(|_| vec![n]),
            None => Ok(all.to_vec()),
        }
    };
    let mut rows = Vec::new();
    match suite {
        Suite::Thm11 => {
            let levels = pick(&HAUPTMODUL_LEVELS, "thm11")?;
            for n in levels {
                for nu in 1..=nu_max {
                    let ok = hecke_combination_check(n, nu, 0)?;
                    let terms: Vec<String> = divisors(gcd(nu, n)).iter().map(|d| d.to_string()).collect();
                    rows.push(Row { name: format!("N={n} nu={nu}"), ok, detail: format!("d in {{{}}}", terms.join(",")) });
                }
            }
        }
        Suite::Lemma24 => {
            let pairs: Vec<(u64, u64)> = [(4, 2), (8, 2), (9, 3), (12, 2), (25, 5)]
                .into_iter()
                .filter(|(n, _)| level.is_none_or(|l| l == *n))
                .collect();
            if pairs.is_empty() {
                return usage("lemma24 covers levels 4, 8, 9, 12, 25");
            }
            let t = terms.unwrap_or(100);
            for (n, p) in pairs {
                let big = normalized_hauptmodul(n, p as i64 * t + 2)?;
                let u = big.u(p);
                let ok = u.precision() >= t && u.terms().all(|(k, c)| k >= t || c == 0);
                rows.push(Row { name: format!("N={n} p={p}"), ok, detail: format!("{t} coefficients") });
            }
        }
        Suite::F0Crosscheck => {
            let levels = pick(&[2, 3, 5, 7, 13], "f0-crosscheck")?;
            let t = terms.unwrap_or(50);
            for n in levels {
                let f = seed_form(n, 0, t + 1)?;
                let mut bad = Vec::new();
                for k in 0..=t {
                    let want = if matches!(k % 4, 1 | 2) {
                        Rational::new()
                    } else {
                        (2 * hurwitz_h1(k)?) - class_number_hn(n, k)?
                    };
                    if f.coeff(k)? != want {
                        bad.push(k);
                    }
                }
                rows.push(Row {
                    name: format!("N={n}"),
                    ok: bad.is_empty(),
                    detail: if bad.is_empty() { format!("n <= {t}") } else { format!("mismatch at {bad:?}") },
                });
            }
        }
        Suite::Calibration => {
            let levels = pick(&[3, 5, 7, 13], "calibration")?;
            let fams = families(g)?;
            let b = budget(g)?;
            for n in levels {
                let d = first_sensitive_disc(n)?;
                for m in [1u64, 4, 9] {
                    let adj = calibrate_constant_term(&fams, n, m, d, b)?;
                    let target = fams.rule().target(n, m);
                    rows.push(Row {
                        name: format!("N={n} m={m}"),
                        ok: adj == 0,
                        detail: format!("D={d} varpi={} target {target} adjustment {adj}", gamma0_index(n)),
                    });
                }
            }
        }
    }
    let all = rows.iter().all(|r| r.ok);
    match g.format {
        Format::Plain => {
            let w = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
            for r in &rows {
                println!("{:<w$}  {}  {}", r.name, if r.ok { "pass" } else { "FAIL" }, r.detail);
            }
            println!("{} of {} passed in {:.1?}", rows.iter().filter(|r| r.ok).count(), rows.len(), start.elapsed());
        }
        Format::Json => {
            let out = json!({
                "suite": format!("{suite:?}").to_lowercase(),
                "passed": all,
                "rows": rows.iter().map(|r| json!({"name": r.name, "ok": r.ok, "detail": r.detail})).collect::<Vec<_>>(),
            });
            println!("{out}");
        }
    }
    Ok(all)
}
