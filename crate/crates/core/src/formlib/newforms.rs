//! The cusp forms named in the seed formulas, built from generator catalogs
//! by Hecke closure and exact eigen-decomposition.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use rug::{Integer, Rational};

use super::linalg::{integer_roots, nullspace, poly_eval_matrix, solve, Matrix};
use super::space::{cusp_subspace, span_and_close, Generator, SpaceBasis, Subspace};
use crate::arith::{is_prime, is_square, kronecker};
use crate::error::{Error, Result};
use crate::qseries::{at_scale, e2, e4, eisenstein_char, eta_quotient, EtaQuotientSpec, LaurentSeries};

/// The named cusp forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NewformId {
    /// eta(2z)^2 eta(10z)^2 in S_2(Gamma_0(20)).
    S2Level20,
    /// The newform in S_4(Gamma_0(7)).
    S4Level7,
    /// Sum of the two newforms in S_2(Gamma_0(26)).
    S2Level26Plus,
    /// Difference of the two newforms in S_2(Gamma_0(26)), beginning -2q^2 + 4q^3 - 2q^5.
    S2Level26Minus,
    /// The newform in S_2(Gamma_0(52)).
    S2Level52,
    /// The rational newform in S_4(Gamma_0(13)).
    S4Level13Rational,
    /// Trace to Q of the conjugate pair of newforms in S_4(Gamma_0(13)).
    S4Level13Pair,
}

impl NewformId {
    pub const ALL: [NewformId; 7] = [
        NewformId::S2Level20,
        NewformId::S4Level7,
        NewformId::S2Level26Plus,
        NewformId::S2Level26Minus,
        NewformId::S2Level52,
        NewformId::S4Level13Rational,
        NewformId::S4Level13Pair,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            NewformId::S2Level20 => "S2-20",
            NewformId::S4Level7 => "S4-7",
            NewformId::S2Level26Plus => "S2-26+",
            NewformId::S2Level26Minus => "S2-26-",
            NewformId::S2Level52 => "S2-52",
            NewformId::S4Level13Rational => "S4-13-1",
            NewformId::S4Level13Pair => "S4-13+",
        }
    }

    /// (weight, level) of the ambient space.
    pub fn space(&self) -> (i64, u64) {
        match self {
            NewformId::S2Level20 => (2, 20),
            NewformId::S4Level7 => (4, 7),
            NewformId::S2Level26Plus | NewformId::S2Level26Minus => (2, 26),
            NewformId::S2Level52 => (2, 52),
            NewformId::S4Level13Rational | NewformId::S4Level13Pair => (4, 13),
        }
    }
}

impl fmt::Display for NewformId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NewformId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        NewformId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown newform {s}")))
    }
}

fn eta_gen(terms: &'static [(u64, i64)]) -> Generator {
    let name = format!("eta{terms:?}");
    Generator::new(name, move |p| Ok(eta_quotient(&EtaQuotientSpec::new(terms)?, p)))
}

/// E_2(z) - d E_2(dz), holomorphic of weight 2 on Gamma_0(d).
pub fn e2_difference(d: u64, precision: i64) -> LaurentSeries {
    e2(precision).add_scaled(&Rational::from(-(d as i64)), &at_scale(e2, d, precision))
}

fn e2_diff_gen(d: u64) -> Generator {
    Generator::new(format!("E2-{d}E2({d}z)"), move |p| Ok(e2_difference(d, p)))
}

fn e4_gen(d: u64) -> Generator {
    Generator::new(format!("E4({d}z)"), move |p| Ok(at_scale(e4, d, p)))
}

fn chi13(n: u64) -> i64 {
    kronecker(n as i64, 13)
}

/// E_2^{1,chi} and E_2^{chi,1} for the quadratic character mod 13.
pub fn eisenstein_chi13(swap: bool, precision: i64) -> LaurentSeries {
    eisenstein_char(precision, &chi13, -1, swap)
}

const LEVEL52_ETA: [&[(u64, i64)]; 4] = [
    &[(2, -2), (4, 4), (26, -2), (52, 4)],
    &[(1, 1), (2, -2), (4, 3), (13, 3), (26, -2), (52, 1)],
    &[(1, 3), (2, -2), (4, 1), (13, 1), (26, -2), (52, 3)],
    &[(1, 4), (2, -2), (13, 4), (26, -2)],
];

/// Generator catalog for M_k(Gamma_0(M)), for the spaces used here.
pub fn catalog(k: i64, level: u64) -> Result<Vec<Generator>> {
    let gens = match (k, level) {
        (2, 52) => {
            let mut g: Vec<Generator> = [2, 4, 13, 26, 52].into_iter().map(e2_diff_gen).collect();
            g.extend(LEVEL52_ETA.iter().map(|t| eta_gen(t)));
            g
        }
        (2, 26) => catalog(2, 52)?
            .into_iter()
            .map(|g| {
                let name = format!("U2({})", g.name);
                Generator::new(name, move |p| Ok(g.expand(2 * p)?.u(2)))
            })
            .collect(),
        (4, 7) | (4, 13) => {
            let n = level;
            let mut g = vec![
                e4_gen(1),
                e4_gen(n),
                Generator::new(format!("(E2-{n}E2({n}z))^2"), move |p| e2_difference(n, p).pow(2)),
            ];
            if n == 13 {
                g.push(Generator::new("E2[1,chi13]^2", |p| eisenstein_chi13(false, p).pow(2)));
                g.push(Generator::new("E2[chi13,1]^2", |p| eisenstein_chi13(true, p).pow(2)));
            }
            g
        }
        _ => return Err(Error::Catalog(format!("no generator catalog for weight {k}, level {level}"))),
    };
    Ok(gens)
}

/// Process-wide caches: built spaces, eigen-coordinates, and realized forms.
struct Caches {
    spaces: RwLock<HashMap<(i64, u64), Arc<SpaceBasis>>>,
    coords: RwLock<HashMap<NewformId, Vec<Rational>>>,
    forms: RwLock<HashMap<NewformId, LaurentSeries>>,
}

fn caches() -> &'static Caches {
    static C: OnceLock<Caches> = OnceLock::new();
    C.get_or_init(|| Caches {
        spaces: RwLock::new(HashMap::new()),
        coords: RwLock::new(HashMap::new()),
        forms: RwLock::new(HashMap::new()),
    })
}

/// The echelon basis of M_k(Gamma_0(M)) built from its catalog (cached).
pub fn ambient_space(k: i64, level: u64) -> Result<Arc<SpaceBasis>> {
    if let Some(s) = caches().spaces.read().unwrap().get(&(k, level)) {
        return Ok(s.clone());
    }
    let built = Arc::new(span_and_close(k, level, catalog(k, level)?, &[2, 3, 5])?);
    let mut w = caches().spaces.write().unwrap();
    Ok(w.entry((k, level)).or_insert(built).clone())
}

/// Hecke data on the cuspidal subspace at one prime.
struct Decomposition {
    space: Arc<SpaceBasis>,
    cusp: Subspace,
    matrix: Matrix,
    roots: Vec<(i64, usize)>,
    rest: Vec<Rational>,
}

/// Eigen-decomposition of T_p on the cusp space, for the first prime p not
/// dividing the level whose eigenvalue pattern `accept` likes.
fn decompose(
    space: Arc<SpaceBasis>,
    accept: impl Fn(&[(i64, usize)], &[Rational]) -> bool,
) -> Result<Decomposition> {
    let cusp = cusp_subspace(&space)?;
    for p in (2u64..30).filter(|&p| is_prime(p) && !space.level.is_multiple_of(p)) {
        let matrix = cusp.restrict(&space.hecke_matrix(p)?);
        let cp = super::linalg::charpoly(&matrix);
        // Deligne: |a_p| <= 2 p^((k-1)/2)
        let bound = (2.0 * (p as f64).powf((space.weight - 1) as f64 / 2.0)).floor() as i64 + 1;
        let (roots, rest) = integer_roots(&cp, bound);
        if accept(&roots, &rest) {
            return Ok(Decomposition { space, cusp, matrix, roots, rest });
        }
    }
    Err(Error::Eigen(format!(
        "no prime separates the eigenforms of S_{}(Gamma_0({}))",
        space.weight, space.level
    )))
}

impl Decomposition {
    /// Ambient coordinates of the kernel of q(T) for a polynomial q.
    fn kernel(&self, poly: &[Rational]) -> Vec<Vec<Rational>> {
        let m = poly_eval_matrix(poly, &self.matrix);
        nullspace(&m, self.matrix.len()).iter().map(|v| self.cusp.lift(v)).collect()
    }

    /// The eigenform for a simple integer eigenvalue, normalized a_1 = 1.
    fn eigenform(&self, lambda: i64) -> Result<Vec<Rational>> {
        let ker = self.kernel(&[Rational::from(-lambda), Rational::from(1)]);
        if ker.len() != 1 {
            return Err(Error::Eigen(format!("eigenvalue {lambda} is not simple")));
        }
        let f = self.space.element(&ker[0], 2)?;
        let a1 = f.coeff(1)?;
        if a1 == 0 {
            return Err(Error::Eigen(format!("eigenform for {lambda} has a_1 = 0")));
        }
        Ok(ker[0].iter().map(|x| Rational::from(x / &a1)).collect())
    }
}

fn add(a: &[Rational], b: &[Rational], s: i64) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + Rational::from(y * s)).collect()
}

fn simple_roots(roots: &[(i64, usize)]) -> Vec<i64> {
    roots.iter().filter(|r| r.1 == 1).map(|r| r.0).collect()
}

/// Echelon coordinates of the named form in its ambient space.
fn compute_coords(id: NewformId) -> Result<Vec<Rational>> {
    let (k, level) = id.space();
    let space = ambient_space(k, level)?;
    match id {
        NewformId::S2Level20 => Err(Error::Invalid("S2-20 is an eta quotient".into())),
        NewformId::S4Level7 => {
            let d = decompose(space, |r, rest| r.len() == 1 && rest.len() == 1)?;
            d.eigenform(d.roots[0].0)
        }
        NewformId::S2Level26Plus | NewformId::S2Level26Minus => {
            let d = decompose(space, |r, rest| simple_roots(r).len() == 2 && rest.len() == 1)?;
            let f = d.eigenform(d.roots[0].0)?;
            let g = d.eigenform(d.roots[1].0)?;
            if id == NewformId::S2Level26Plus {
                return Ok(add(&f, &g, 1));
            }
            // pinned by the opening -2q^2 + 4q^3 - 2q^5
            let mut diff = add(&f, &g, -1);
            if d.space.element(&diff, 3)?.coeff(2)? == 2 {
                diff = add(&g, &f, -1);
            }
            let s = d.space.element(&diff, 6)?;
            let opening: Vec<Rational> = (0..6).map(|n| s.coeff(n).unwrap()).collect();
            let pinned: Vec<Rational> = [0, 0, -2, 4, 0, -2].iter().map(|&x| Rational::from(x)).collect();
            if opening != pinned {
                return Err(Error::Eigen(format!("S2-26- opening mismatch: {s}")));
            }
            Ok(diff)
        }
        NewformId::S2Level52 => {
            let d = decompose(space, |r, rest| simple_roots(r).len() == 1 && rest.len() == 1)?;
            d.eigenform(simple_roots(&d.roots)[0])
        }
        NewformId::S4Level13Rational | NewformId::S4Level13Pair => {
            let d = decompose(space, |r, rest| {
                simple_roots(r).len() == 1 && rest.len() == 3 && !quadratic_splits(rest)
            })?;
            if id == NewformId::S4Level13Rational {
                return d.eigenform(d.roots[0].0);
            }
            // g = f + f^sigma has a_1 = 2 and a_p = sum of the conjugate eigenvalues
            let trace = -d.rest[1].clone();
            let ker = d.kernel(&d.rest);
            let forms = ker.iter().map(|v| d.space.element(v, 3)).collect::<Result<Vec<_>>>()?;
            let a: Matrix = (1..=2).map(|n| forms.iter().map(|f| f.coeff(n).unwrap()).collect()).collect();
            // the eigen-decomposition prime p is 2 here, so a_2 carries the trace
            let x = solve(&a, &[Rational::from(2), trace])
                .ok_or_else(|| Error::Eigen("conjugate pair trace form not determined".into()))?;
            let mut out = vec![Rational::new(); ker[0].len()];
            for (c, v) in x.iter().zip(&ker) {
                out = out.iter().zip(v).map(|(o, y)| o + Rational::from(c * y)).collect();
            }
            Ok(out)
        }
    }
}

fn quadratic_splits(p: &[Rational]) -> bool {
    // x^2 + b x + c over Z
    let disc = Rational::from(&p[1] * &p[1]) - Rational::from(4) * &p[0];
    disc >= 0 && *disc.denom() == 1 && is_square(disc.numer().to_u64().unwrap_or(2))
}

fn coords(id: NewformId) -> Result<Vec<Rational>> {
    if let Some(c) = caches().coords.read().unwrap().get(&id) {
        return Ok(c.clone());
    }
    let c = compute_coords(id)?;
    caches().coords.write().unwrap().insert(id, c.clone());
    Ok(c)
}

/// The named cusp form, known below q^precision.
pub fn named_cusp_form(id: NewformId, precision: i64) -> Result<LaurentSeries> {
    if let Some(f) = caches().forms.read().unwrap().get(&id) {
        if f.precision() >= precision {
            return Ok(f.truncate(precision));
        }
    }
    let f = match id {
        NewformId::S2Level20 => eta_quotient(&EtaQuotientSpec::new(&[(2, 2), (10, 2)])?, precision),
        _ => {
            let (k, level) = id.space();
            ambient_space(k, level)?.element(&coords(id)?, precision)?
        }
    };
    let mut w = caches().forms.write().unwrap();
    let keep = w.get(&id).is_none_or(|g| g.precision() < f.precision());
    if keep {
        w.insert(id, f.clone());
    }
    Ok(f)
}

/// Defining polynomial (integer coefficients, low to high) of the Hecke
/// eigenvalue field at the decomposition prime, for the conjugate-pair form.
pub fn hecke_field_polynomial(id: NewformId) -> Result<Vec<Integer>> {
    match id {
        NewformId::S4Level13Pair => {
            let space = ambient_space(4, 13)?;
            let d = decompose(space, |r, rest| {
                simple_roots(r).len() == 1 && rest.len() == 3 && !quadratic_splits(rest)
            })?;
            Ok(d.rest.iter().map(|c| c.numer().clone()).collect())
        }
        _ => Ok(vec![Integer::from(0), Integer::from(1)]),
    }
}
