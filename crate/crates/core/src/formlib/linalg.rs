//! Dense linear algebra and univariate polynomials over Q.

use rug::{Integer, Rational};

/// Row-major rational matrix.
pub type Matrix = Vec<Vec<Rational>>;

/// Reduced row echelon form of `rows`. Returns (rref rows, pivot columns,
/// transform) where `transform * rows = rref` (zero rows dropped).
pub fn rref(rows: &[Vec<Rational>]) -> (Matrix, Vec<usize>, Matrix) {
    let m = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut a: Matrix = rows.to_vec();
    let mut t: Matrix = (0..m)
        .map(|i| (0..m).map(|j| Rational::from((i == j) as i32)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| a[i][col] != 0) else { continue };
        a.swap(r, p);
        t.swap(r, p);
        let inv = Rational::from(1) / a[r][col].clone();
        for x in a[r].iter_mut().chain(t[r].iter_mut()) {
            *x *= &inv;
        }
        for i in 0..m {
            if i != r && a[i][col] != 0 {
                let f = a[i][col].clone();
                for j in 0..ncols {
                    let v = Rational::from(&f * &a[r][j]);
                    a[i][j] -= v;
                }
                for j in 0..m {
                    let v = Rational::from(&f * &t[r][j]);
                    t[i][j] -= v;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    a.truncate(r);
    t.truncate(r);
    (a, pivots, t)
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    rref(rows).1.len()
}

/// Basis of the right null space {x : A x = 0}.
pub fn nullspace(a: &[Vec<Rational>], ncols: usize) -> Matrix {
    let (r, pivots, _) = rref(a);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::new(); ncols];
            v[f] = Rational::from(1);
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| Rational::from((i == j) as i32)).collect()).collect()
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![Rational::new(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l] == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += Rational::from(&a[i][l] * &b[l][j]);
            }
        }
    }
    out
}

pub fn transpose(a: &[Vec<Rational>]) -> Matrix {
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// p(A) for a polynomial with coefficients low to high.
pub fn poly_eval_matrix(p: &[Rational], a: &[Vec<Rational>]) -> Matrix {
    let n = a.len();
    let mut acc = vec![vec![Rational::new(); n]; n];
    for c in p.iter().rev() {
        acc = mat_mul(&acc, a);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] += c;
        }
    }
    acc
}

/// Characteristic polynomial det(x I - A), coefficients low to high (monic).
/// Faddeev-LeVerrier recursion.
pub fn charpoly(a: &[Vec<Rational>]) -> Vec<Rational> {
    let n = a.len();
    let mut coeffs = vec![Rational::new(); n + 1];
    coeffs[n] = Rational::from(1);
    let mut m = vec![vec![Rational::new(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = next;
        let am = mat_mul(a, &m);
        let tr: Rational = (0..n).fold(Rational::new(), |s, i| s + &am[i][i]);
        coeffs[n - k] = -tr / Rational::from(k as i64);
    }
    coeffs
}

/// Evaluate a polynomial (low to high) at x.
pub fn poly_eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::new(), |acc, c| acc * x + c)
}

/// Divide p by (x - r), returning the quotient; the remainder must vanish.
pub fn deflate(p: &[Rational], r: &Rational) -> Vec<Rational> {
    let n = p.len() - 1;
    let mut q = vec![Rational::new(); n];
    let mut carry = Rational::new();
    for i in (0..n).rev() {
        carry = Rational::from(&carry * r) + &p[i + 1];
        q[i] = carry.clone();
    }
    debug_assert_eq!(Rational::from(&carry * r) + &p[0], 0);
    q
}

/// Integer roots with multiplicity of a monic polynomial with integer
/// coefficients, searched in [-bound, bound]. Returns (roots with
/// multiplicity, remaining cofactor).
pub fn integer_roots(p: &[Rational], bound: i64) -> (Vec<(i64, usize)>, Vec<Rational>) {
    let mut rest = p.to_vec();
    let mut out = Vec::new();
    for r in -bound..=bound {
        let rr = Rational::from(r);
        let mut mult = 0;
        while rest.len() > 1 && poly_eval(&rest, &rr) == 0 {
            rest = deflate(&rest, &rr);
            mult += 1;
        }
        if mult > 0 {
            out.push((r, mult));
        }
    }
    (out, rest)
}

/// Solves A x = b for square or tall full-column-rank A, if consistent.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let ncols = a.first().map_or(0, |r| r.len());
    let aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let (r, pivots, _) = rref(&aug);
    if pivots.contains(&ncols) || pivots.len() < ncols {
        return None;
    }
    let mut x = vec![Rational::new(); ncols];
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Least common multiple of the denominators in `v`.
pub fn common_denominator(v: &[Rational]) -> Integer {
    v.iter().fold(Integer::from(1), |acc, x| acc.lcm(x.denom()))
}
