use std::collections::BTreeSet;

use heegner_core::arith::is_fundamental;
use heegner_core::quadforms::*;
use proptest::prelude::*;
use rug::Rational;

/// Independent enumeration: scan a = N, 2N, ... and key classes by
/// (SL_2-reduced form, b mod 2N). Valid for fundamental -D.
fn scan_classes(level: u64, d: i64) -> BTreeSet<(BinaryQF, i64)> {
    let n = level as i64;
    let h = class_number(d).unwrap();
    let expected = h * count_roots_mod_2n(level, d);
    let mut keys = BTreeSet::new();
    let mut a = n;
    while keys.len() < expected {
        assert!(a <= 64 * n * d, "scan cap exceeded for N={level}, D={d}");
        for b in -a + 1..=a {
            if (b * b + d) % (4 * a) != 0 {
                continue;
            }
            let q = BinaryQF::new(a, b, (b * b + d) / (4 * a)).unwrap();
            keys.insert((reduce_sl2(&q).unwrap(), b.rem_euclid(2 * n)));
        }
        a += n;
    }
    keys
}

#[test]
fn class_count_identity_for_fundamental_discriminants() {
    for level in [1u64, 3, 5, 7, 13] {
        for d in 3..=200i64 {
            if !is_fundamental(d) {
                continue;
            }
            let set = heegner_representatives(level, d).unwrap();
            let expected = class_number(d).unwrap() * count_roots_mod_2n(level, d);
            assert_eq!(set.len(), expected, "N={level} D={d}");
            let keys = scan_classes(level, d);
            assert_eq!(keys.len(), set.len(), "N={level} D={d}");
            let mine: BTreeSet<(BinaryQF, i64)> = set
                .classes
                .iter()
                .map(|c| (reduce_sl2(&c.form).unwrap(), c.form.b.rem_euclid(2 * level as i64)))
                .collect();
            assert_eq!(mine, keys, "N={level} D={d}");
        }
    }
}

#[test]
fn representatives_are_heegner_forms() {
    for level in [1u64, 2, 3, 5, 7, 13] {
        for d in (3..=120i64).filter(|d| d % 4 == 0 || d % 4 == 3) {
            let set = heegner_representatives(level, d).unwrap();
            for c in &set.classes {
                assert_eq!(c.form.a % level as i64, 0);
                assert_eq!(c.form.d(), d);
                assert!(c.form.b.abs() <= c.form.a);
                assert_eq!(reduce_sl2(&c.form).unwrap(), c.reduced);
                assert!(matches!(c.weight, 1..=3));
            }
            for (i, c) in set.classes.iter().enumerate() {
                assert_eq!(set.class_of(&c.form).unwrap(), i);
            }
        }
    }
}

#[test]
fn weighted_count_sums_to_class_number() {
    // H_N(D) summed over points: sum over reduced Q of #{x : Q(x) = 0 mod N} / |Aut(Q)/+-1|
    for level in [2u64, 3, 7, 13] {
        for d in [3i64, 4, 12, 16, 27, 36, 48, 75] {
            let mut expect = Rational::new();
            for q in reduced_forms(d).unwrap() {
                let pts = projective_line(level)
                    .into_iter()
                    .filter(|p| q.eval(p.0, p.1).rem_euclid(level as i64) == 0)
                    .count();
                expect += Rational::from((pts as i64, automorphs(&q).len() as i64));
            }
            assert_eq!(class_number_hn(level, d).unwrap(), expect, "N={level} D={d}");
        }
    }
}

proptest! {
    #[test]
    fn gamma0_moves_stay_in_class(a in 1i64..6, b in -6i64..6, c in 1i64..8, k in -3i64..3, j in -3i64..3) {
        prop_assume!(b * b - 4 * a * c < 0);
        let level = 7i64;
        let q = BinaryQF::new(level * a, b, c).unwrap();
        let d = q.d();
        prop_assume!(d % 4 == 0 || d % 4 == 3);
        let set = heegner_representatives(level as u64, d).unwrap();
        let i = set.class_of(&q).unwrap();
        // act by [[1, k], [0, 1]] and [[1, 0], [N j, 1]], both in Gamma_0(N)
        let q2 = q.transform(&Mat([[1, k], [0, 1]])).transform(&Mat([[1, 0], [level * j, 1]]));
        prop_assert_eq!(set.class_of(&q2).unwrap(), i);
    }
}
