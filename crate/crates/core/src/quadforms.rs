//! Positive definite binary quadratic forms, Heegner forms for Gamma_0(N),
//! stabilizer weights and (generalized) Hurwitz class numbers.
//!
//! Gamma_0(N)-classes of forms [a, b, c] with N | a are enumerated as
//! follows. Every such form is Q o gamma for an SL_2-reduced Q and some
//! gamma in SL_2(Z); the Gamma_0(N) class only depends on Q and on the first
//! column of gamma read as a point of P^1(Z/N). That point must satisfy
//! Q(p, r) = 0 mod N, and two points give the same class exactly when they are
//! related by an automorph of Q. So the classes are the Aut(Q)-orbits on
//! those points, and the stabilizer of a class is the stabilizer of the point.

use std::fmt;

use rug::Rational;

use crate::arith::{ext_gcd, gamma0_index, gcd_i, isqrt};
use crate::error::{Error, Result};

/// The form a x^2 + b x y + c y^2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryQF {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl fmt::Display for BinaryQF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

impl BinaryQF {
    /// Only positive definite forms are accepted.
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        let q = BinaryQF { a, b, c };
        if a <= 0 || q.discriminant() >= 0 {
            return Err(Error::Invalid(format!("{q} is not positive definite")));
        }
        Ok(q)
    }

    /// b^2 - 4ac (negative for the forms used here).
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// D with discriminant -D.
    pub fn d(&self) -> i64 {
        -self.discriminant()
    }

    pub fn content(&self) -> i64 {
        gcd_i(gcd_i(self.a, self.b), self.c)
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    /// Q o gamma for gamma = [[p, s], [r, t]].
    pub fn transform(&self, m: &Mat) -> BinaryQF {
        let [[p, s], [r, t]] = m.0;
        BinaryQF {
            a: self.eval(p, r),
            b: 2 * self.a * p * s + self.b * (p * t + r * s) + 2 * self.c * r * t,
            c: self.eval(s, t),
        }
    }

    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        b.abs() <= a && a <= c && !(b < 0 && (b.abs() == a || a == c))
    }
}

/// 2x2 integer matrix [[p, s], [r, t]], acting on column vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mat(pub [[i64; 2]; 2]);

impl Mat {
    pub const IDENTITY: Mat = Mat([[1, 0], [0, 1]]);

    pub fn mul(&self, o: &Mat) -> Mat {
        let a = self.0;
        let b = o.0;
        Mat([
            [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
        ])
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse(&self) -> Mat {
        let [[p, s], [r, t]] = self.0;
        Mat([[t, -s], [-r, p]])
    }

    pub fn apply(&self, x: (i64, i64)) -> (i64, i64) {
        let [[p, s], [r, t]] = self.0;
        (p * x.0 + s * x.1, r * x.0 + t * x.1)
    }
}

/// Gauss reduction together with the matrix R such that Q o R is reduced.
pub fn reduce_with_matrix(q: &BinaryQF) -> Result<(BinaryQF, Mat)> {
    if q.a <= 0 || q.discriminant() >= 0 {
        return Err(Error::Invalid(format!("{q} is not positive definite")));
    }
    let mut f = *q;
    let mut m = Mat::IDENTITY;
    loop {
        // translate b into (-a, a]
        let k = (f.a - f.b).div_euclid(2 * f.a);
        if k != 0 {
            let tr = Mat([[1, k], [0, 1]]);
            f = f.transform(&tr);
            m = m.mul(&tr);
        }
        if f.a > f.c || (f.a == f.c && f.b < 0) {
            let s = Mat([[0, -1], [1, 0]]);
            f = f.transform(&s);
            m = m.mul(&s);
            continue;
        }
        break;
    }
    debug_assert!(f.is_reduced());
    Ok((f, m))
}

/// The SL_2(Z)-reduced representative: |b| <= a <= c, b >= 0 if |b| = a or a = c.
pub fn reduce_sl2(q: &BinaryQF) -> Result<BinaryQF> {
    Ok(reduce_with_matrix(q)?.0)
}

fn check_disc(d: i64) -> Result<()> {
    if d <= 0 || d % 4 == 1 || d % 4 == 2 {
        return Err(Error::BadDiscriminant(d));
    }
    Ok(())
}

/// All reduced forms of discriminant -D, primitive or not.
pub fn reduced_forms(d: i64) -> Result<Vec<BinaryQF>> {
    check_disc(d)?;
    let mut out = Vec::new();
    let mut a = 1;
    while 3 * a * a <= d {
        for b in (-a + 1)..=a {
            if (b * b + d) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b + d) / (4 * a);
            let q = BinaryQF { a, b, c };
            if q.is_reduced() {
                out.push(q);
            }
        }
        a += 1;
    }
    Ok(out)
}

/// Automorphs of Q modulo +-1, as matrices M with Q o M = Q.
pub fn automorphs(q: &BinaryQF) -> Vec<Mat> {
    let g = q.content();
    let (a, b, c) = (q.a / g, q.b / g, q.c / g);
    let d0 = q.d() / (g * g);
    let mut out = vec![Mat::IDENTITY];
    // M = [[(t - b u)/2, -c u], [a u, (t + b u)/2]] with t^2 + d0 u^2 = 4
    let gen = match d0 {
        3 => Some(Mat([[(1 - b) / 2, -c], [a, (1 + b) / 2]])),
        4 => Some(Mat([[-b / 2, -c], [a, b / 2]])),
        _ => None,
    };
    if let Some(m) = gen {
        out.push(m);
        if d0 == 3 {
            out.push(m.mul(&m));
        }
    }
    out
}

/// Canonical representatives of P^1(Z/N).
pub fn projective_line(n: u64) -> Vec<(i64, i64)> {
    let n = n as i64;
    if n == 1 {
        return vec![(1, 0)];
    }
    let mut out = Vec::new();
    for p in 0..n {
        for r in 0..n {
            if gcd_i(gcd_i(p, r), n) != 1 {
                continue;
            }
            if canonical_point((p, r), n) == (p, r) {
                out.push((p, r));
            }
        }
    }
    out
}

fn canonical_point(x: (i64, i64), n: i64) -> (i64, i64) {
    if n == 1 {
        return (1, 0);
    }
    (1..n)
        .filter(|&u| gcd_i(u, n) == 1)
        .map(|u| ((x.0 * u).rem_euclid(n), (x.1 * u).rem_euclid(n)))
        .min()
        .unwrap()
}

/// One Gamma_0(N)-class of Heegner forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeegnerClass {
    /// Representative with N | a and maximal imaginary part of its root.
    pub form: BinaryQF,
    /// Order of the stabilizer in Gamma_0(N)/{+-1}.
    pub weight: u32,
    /// The SL_2-reduced form of the class.
    pub reduced: BinaryQF,
    /// The point of P^1(Z/N) attached to the class.
    pub point: (i64, i64),
}

/// The Heegner class set Q_D^N / Gamma_0(N).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeegnerClassSet {
    pub level: u64,
    pub disc: i64,
    pub classes: Vec<HeegnerClass>,
    /// The residues b mod 2N (b^2 = -D mod 4N) realized by the classes.
    pub roots_mod_2n: Vec<i64>,
}

impl HeegnerClassSet {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Index of the class containing the Heegner form `q` (N | a).
    pub fn class_of(&self, q: &BinaryQF) -> Result<usize> {
        let n = self.level as i64;
        if q.a % n != 0 || q.d() != self.disc {
            return Err(Error::Invalid(format!("{q} is not a Heegner form of level {n}, D = {}", self.disc)));
        }
        let (red, r) = reduce_with_matrix(q)?;
        let gamma = r.inverse();
        let pt = canonical_point((gamma.0[0][0], gamma.0[1][0]), n);
        let autos = automorphs(&red);
        self.classes
            .iter()
            .position(|c| {
                c.reduced == red
                    && autos.iter().any(|m| canonical_point(m.apply(c.point), n) == pt)
            })
            .ok_or_else(|| Error::Invalid(format!("no class found for {q}")))
    }
}

/// Enumerates Q_D^N / Gamma_0(N) with weights.
pub fn heegner_representatives(level: u64, d: i64) -> Result<HeegnerClassSet> {
    if level == 0 {
        return Err(Error::Invalid("level must be positive".into()));
    }
    let n = level as i64;
    let pts = projective_line(level);
    let mut classes = Vec::new();
    for q in reduced_forms(d)? {
        let autos = automorphs(&q);
        let mut seen: Vec<(i64, i64)> = Vec::new();
        for &pt in &pts {
            if q.eval(pt.0, pt.1).rem_euclid(n) != 0 || seen.contains(&pt) {
                continue;
            }
            let orbit: Vec<(i64, i64)> = autos.iter().map(|m| canonical_point(m.apply(pt), n)).collect();
            let mut distinct = orbit.clone();
            distinct.sort();
            distinct.dedup();
            seen.extend(distinct.iter().copied());
            let weight = (autos.len() / distinct.len()) as u32;
            classes.push(HeegnerClass { form: representative(&q, pt, n), weight, reduced: q, point: pt });
        }
    }
    let mut roots: Vec<i64> = classes.iter().map(|c| c.form.b.rem_euclid(2 * n)).collect();
    roots.sort();
    roots.dedup();
    Ok(HeegnerClassSet { level, disc: d, classes, roots_mod_2n: roots })
}

/// Q o gamma with gamma's first column the primitive lift of `pt` minimizing
/// Q, then translated so that -a < b <= a.
fn representative(q: &BinaryQF, pt: (i64, i64), n: i64) -> BinaryQF {
    let in_class = |p: i64, r: i64| -> bool {
        gcd_i(p, r) == 1 && (n == 1 || canonical_point((p.rem_euclid(n), r.rem_euclid(n)), n) == pt)
    };
    // any lift gives an upper bound; search a growing box for one
    let mut best: Option<(i64, i64, i64)> = None;
    let mut bound = n.max(2);
    while best.is_none() {
        for r in -bound..=bound {
            for p in -bound..=bound {
                if in_class(p, r) {
                    let v = q.eval(p, r);
                    if best.is_none_or(|b| (v, p, r) < b) {
                        best = Some((v, p, r));
                    }
                }
            }
        }
        bound *= 2;
    }
    // Q(p, r) >= D r^2 / (4c') bounds the exhaustive search
    let limit = best.unwrap().0;
    let d = q.d();
    let rmax = isqrt((4 * q.a * limit / d) as u64) as i64 + 1;
    let pmax = isqrt((4 * q.c * limit / d) as u64) as i64 + 1;
    for r in -rmax..=rmax {
        for p in -pmax..=pmax {
            if in_class(p, r) {
                let v = q.eval(p, r);
                if best.is_none_or(|b| (v, p, r) < b) {
                    best = Some((v, p, r));
                }
            }
        }
    }
    let (_, p, r) = best.unwrap();
    let (_, x, y) = ext_gcd(p, r);
    // p t - s r = 1 with t = x, s = -y
    let gamma = Mat([[p, -y], [r, x]]);
    let mut f = q.transform(&gamma);
    let k = (f.a - f.b).div_euclid(2 * f.a);
    f = f.transform(&Mat([[1, k], [0, 1]]));
    debug_assert_eq!(f.a % n, 0);
    f
}

/// Order of the stabilizer of the Heegner form `q` in Gamma_0(N)/{+-1}.
pub fn stabilizer_order(q: &BinaryQF, level: u64) -> Result<u32> {
    let set = heegner_representatives(level, q.d())?;
    let i = set.class_of(q)?;
    Ok(set.classes[i].weight)
}

/// H_N(D) = sum of 1/w over Q_D^N / Gamma_0(N); H_N(0) = -varpi(N)/12.
pub fn class_number_hn(level: u64, d: i64) -> Result<Rational> {
    if d == 0 {
        return Ok(Rational::from((-(gamma0_index(level) as i64), 12)));
    }
    let set = heegner_representatives(level, d)?;
    Ok(set
        .classes
        .iter()
        .map(|c| Rational::from((1, c.weight)))
        .fold(Rational::new(), |acc, x| acc + x))
}

/// The Hurwitz class number H_1(D).
pub fn hurwitz_h1(d: i64) -> Result<Rational> {
    class_number_hn(1, d)
}

/// Class number h(-D) of primitive forms.
pub fn class_number(d: i64) -> Result<usize> {
    Ok(reduced_forms(d)?.iter().filter(|q| q.content() == 1).count())
}

/// The root (-b + i sqrt(D)) / (2a) of Q in the upper half-plane, kept exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HeegnerPoint {
    pub a: i64,
    pub b: i64,
    pub d: i64,
}

pub fn heegner_point(q: &BinaryQF) -> HeegnerPoint {
    HeegnerPoint { a: q.a, b: q.b, d: q.d() }
}

/// Number of square roots beta of -D mod 4N taken mod 2N.
pub fn count_roots_mod_2n(level: u64, d: i64) -> usize {
    let n = level as i64;
    (0..2 * n).filter(|&b| (b * b + d).rem_euclid(4 * n) == 0).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qf(a: i64, b: i64, c: i64) -> BinaryQF {
        BinaryQF::new(a, b, c).unwrap()
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce_sl2(&qf(1, 1, 1)).unwrap(), qf(1, 1, 1));
        assert_eq!(reduce_sl2(&qf(2, 2, 3)).unwrap(), qf(2, 2, 3));
        let r = reduce_sl2(&qf(14, 6, 1)).unwrap();
        assert_eq!(r.d(), 20);
        assert!(r.a <= r.c);
        assert!(r.is_reduced());
        assert!(reduce_sl2(&BinaryQF { a: 1, b: 3, c: 1 }).is_err());
    }

    #[test]
    fn reduction_matrix_is_consistent() {
        for q in [qf(14, 6, 1), qf(63, 22, 2), qf(21, 8, 1), qf(7, 6, 2), qf(100, 91, 21)] {
            let (red, m) = reduce_with_matrix(&q).unwrap();
            assert_eq!(q.transform(&m), red);
            assert_eq!(m.0[0][0] * m.0[1][1] - m.0[0][1] * m.0[1][0], 1);
        }
    }

    #[test]
    fn automorphs_preserve_forms() {
        for d in [3i64, 4, 12, 16, 27, 36, 48] {
            for q in reduced_forms(d).unwrap() {
                for m in automorphs(&q) {
                    assert_eq!(q.transform(&m), q, "{q} {m:?}");
                }
            }
        }
    }

    #[test]
    fn level_seven_d20() {
        let set = heegner_representatives(7, 20).unwrap();
        assert_eq!(set.len(), 4);
        let listed = [qf(14, 6, 1), qf(21, 8, 1), qf(7, 6, 2), qf(63, 22, 2)];
        let mut idx: Vec<usize> = listed.iter().map(|q| set.class_of(q).unwrap()).collect();
        idx.sort();
        assert_eq!(idx, vec![0, 1, 2, 3]);
        for c in &set.classes {
            assert_eq!(c.form.a % 7, 0);
            assert_eq!(c.form.d(), 20);
            assert_eq!(c.weight, 1);
        }
        assert_eq!(stabilizer_order(&qf(14, 6, 1), 7).unwrap(), 1);
    }

    #[test]
    fn small_level_one_sets() {
        let s3 = heegner_representatives(1, 3).unwrap();
        assert_eq!(s3.len(), 1);
        assert_eq!(s3.classes[0].form, qf(1, 1, 1));
        assert_eq!(s3.classes[0].weight, 3);
        let s4 = heegner_representatives(1, 4).unwrap();
        assert_eq!(s4.classes[0].form, qf(1, 0, 1));
        assert_eq!(s4.classes[0].weight, 2);
        assert_eq!(stabilizer_order(&qf(1, 1, 1), 1).unwrap(), 3);
        assert_eq!(stabilizer_order(&qf(7, 5, 1), 7).unwrap(), 3);
    }

    #[test]
    fn class_numbers() {
        assert_eq!(hurwitz_h1(20).unwrap(), 2);
        assert_eq!(class_number_hn(7, 20).unwrap(), 4);
        assert_eq!(hurwitz_h1(3).unwrap(), Rational::from((1, 3)));
        assert_eq!(hurwitz_h1(4).unwrap(), Rational::from((1, 2)));
        assert_eq!(class_number_hn(7, 0).unwrap(), Rational::from((-8, 12)));
        let table: Vec<Rational> =
            [3, 4, 7, 8, 11, 12, 15, 16, 19, 20].iter().map(|&d| hurwitz_h1(d).unwrap()).collect();
        let expect = [(1, 3), (1, 2), (1, 1), (1, 1), (1, 1), (4, 3), (2, 1), (3, 2), (1, 1), (2, 1)];
        for (h, e) in table.iter().zip(expect) {
            assert_eq!(*h, Rational::from(e));
        }
        assert!(class_number_hn(1, 5).is_err());
    }

    #[test]
    fn empty_set_when_no_root() {
        // -4 is not a square mod 12
        let set = heegner_representatives(3, 4).unwrap();
        assert!(set.is_empty());
        assert_eq!(count_roots_mod_2n(3, 4), 0);
        assert_eq!(class_number_hn(3, 4).unwrap(), 0);
    }

    #[test]
    fn heegner_points() {
        assert_eq!(heegner_point(&qf(1, 0, 1)), HeegnerPoint { a: 1, b: 0, d: 4 });
        assert_eq!(heegner_point(&qf(14, 6, 1)), HeegnerPoint { a: 14, b: 6, d: 20 });
    }
}
