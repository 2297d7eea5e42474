use heegner_core::arith::gamma0_index;
use heegner_core::halfint::{
    btilde, cache, generate_family, in_plus_support, seed_form, NormalizationRule,
};
use heegner_core::quadforms::{class_number_hn, hurwitz_h1};
use rug::Rational;

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

#[test]
fn level_seven_coefficients_at_twenty() {
    let fam = generate_family(7, 16, 21, &NormalizationRule::square_delta()).unwrap();
    assert_eq!(fam.btilde(1, 20).unwrap(), 22);
    assert_eq!(fam.btilde(4, 20).unwrap(), -26);
    assert_eq!(fam.btilde(9, 20).unwrap(), 78);
    assert_eq!(fam.btilde(16, 20).unwrap(), 338);
}

#[test]
fn one_shot_btilde() {
    assert_eq!(btilde(7, 1, 20).unwrap(), 22);
    assert_eq!(btilde(7, 16, 20).unwrap(), 338);
    assert_eq!(btilde(7, 16, 21).unwrap(), 0);
}

#[test]
fn level_one_traces_of_j_at_three() {
    // coefficients of q^3, the traces of j - 744 on discriminant -3 up to sign
    let fam = generate_family(1, 9, 4, &NormalizationRule::square_delta()).unwrap();
    let want = [(1, 248), (4, -26752), (5, 85995), (8, -1707264), (9, 4096248)];
    for (m, v) in want {
        assert_eq!(fam.btilde(m, 3).unwrap(), v, "m = {m}");
    }
}

#[test]
fn members_have_exact_principal_part_and_support() {
    for level in [1u64, 2, 3, 5, 7, 13] {
        let fam = generate_family(level, 13, 30, &NormalizationRule::square_delta()).unwrap();
        for (&m, f) in fam.members() {
            let s = f.series();
            assert_eq!(s.valuation(), if m == 0 { s.valuation().max(0) } else { -(m as i64) });
            assert_eq!(s.precision(), 30);
            for (n, c) in s.terms() {
                if n < 0 {
                    assert_eq!((n, c), (-(m as i64), Rational::from(1)), "N={level} m={m}");
                }
                assert!(in_plus_support(n), "N={level} m={m} n={n}");
            }
        }
    }
}

#[test]
fn square_constant_terms_follow_rule() {
    for level in [3u64, 7, 13] {
        let fam = generate_family(level, 16, 8, &NormalizationRule::square_delta()).unwrap();
        let w = gamma0_index(level) as i64;
        for m in [1u64, 4, 5, 8, 9, 12, 13, 16] {
            let want = if matches!(m, 1 | 4 | 9 | 16) { q(-2, w) } else { q(0, 1) };
            assert_eq!(fam.btilde(m, 0).unwrap(), want, "N={level} m={m}");
        }
    }
}

#[test]
fn weight_zero_seed_is_class_number_series() {
    for level in [2u64, 3, 5, 7, 13] {
        let f = seed_form(level, 0, 51).unwrap();
        for n in 0..=50i64 {
            let want = if n % 4 == 1 || n % 4 == 2 {
                Rational::new()
            } else {
                (2 * hurwitz_h1(n).unwrap()) - class_number_hn(level, n).unwrap()
            };
            assert_eq!(f.coeff(n).unwrap(), want, "N={level} n={n}");
        }
    }
}

#[test]
fn higher_precision_extends() {
    let rule = NormalizationRule::square_delta();
    let a = generate_family(5, 12, 15, &rule).unwrap();
    let b = generate_family(5, 12, 40, &rule).unwrap();
    for (&m, f) in a.members() {
        for n in f.series().valuation()..15 {
            assert_eq!(f.coeff(n).unwrap(), b.btilde(m, n).unwrap());
        }
    }
}

#[test]
fn reading_past_precision_fails() {
    let fam = generate_family(3, 4, 10, &NormalizationRule::square_delta()).unwrap();
    assert!(fam.btilde(4, 10).is_err());
    assert!(fam.btilde(8, 0).is_err());
    assert!(fam.btilde(2, 0).is_err());
}

#[test]
fn unsupported_level() {
    assert!(generate_family(11, 4, 10, &NormalizationRule::square_delta()).is_err());
    assert!(seed_form(18, 1, 10).is_err());
}

#[test]
fn cache_round_trip() {
    let mut rule = NormalizationRule::square_delta();
    rule.overrides.insert(4, q(1, 3));
    let fam = generate_family(13, 9, 12, &rule).unwrap();
    assert_eq!(fam.btilde(4, 0).unwrap(), q(1, 3));
    let text = cache::render(&fam);
    let back = cache::parse(&text).unwrap();
    assert_eq!(back, fam);
    assert_eq!(cache::render(&back), text);

    let dir = tempfile::tempdir().unwrap();
    let path = cache::save(dir.path(), &fam).unwrap();
    assert!(path.ends_with("families/N13-p12.txt"));
    assert_eq!(cache::load(dir.path(), 13, 12).unwrap().unwrap(), fam);
    assert!(cache::load(dir.path(), 13, 13).unwrap().is_none());
    // a deeper request regenerates and overwrites
    let deeper = cache::load_or_generate(Some(dir.path()), 13, 16, 12, &rule).unwrap();
    assert_eq!(deeper.m_max, 16);
    assert_eq!(cache::load(dir.path(), 13, 12).unwrap().unwrap().m_max, 16);
}

#[test]
fn corrupt_cache_is_rejected() {
    let fam = generate_family(2, 5, 8, &NormalizationRule::square_delta()).unwrap();
    let text = cache::render(&fam);
    assert!(cache::parse(&text.replace("varpi 3", "varpi 4")).is_err());
    assert!(cache::parse(&text.replace("format-version 1", "format-version 9")).is_err());
    assert!(cache::parse(&text[..text.len() - 6]).is_err());
}
