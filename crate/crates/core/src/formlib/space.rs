//! Spaces M_k(Gamma_0(M)) spanned by catalog generators and their Hecke images.
//!
//! Each basis element is kept as a recipe (generator index plus a list of
//! Hecke primes), so the space can be realized at any precision after the
//! linear algebra has been done once at the Sturm bound.

use std::fmt;
use std::sync::Arc;

use rug::Rational;

use super::dims::{dim_mk, sturm_bound};
use super::linalg::{mat_mul, rank, rref, transpose, Matrix};
use crate::error::{Error, Result};
use crate::qseries::{t_op, LaurentSeries};

type GenFn = dyn Fn(i64) -> Result<LaurentSeries> + Send + Sync;

/// A named q-expansion that can be produced at any precision.
#[derive(Clone)]
pub struct Generator {
    pub name: String,
    f: Arc<GenFn>,
}

impl Generator {
    pub fn new(name: impl Into<String>, f: impl Fn(i64) -> Result<LaurentSeries> + Send + Sync + 'static) -> Self {
        Generator { name: name.into(), f: Arc::new(f) }
    }

    pub fn expand(&self, precision: i64) -> Result<LaurentSeries> {
        Ok((self.f)(precision)?.truncate(precision))
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Generator({})", self.name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Recipe {
    generator: usize,
    hecke: Vec<u64>,
}

/// A basis of M_k(Gamma_0(M)) in echelon form, with recipes for its elements.
#[derive(Clone, Debug)]
pub struct SpaceBasis {
    pub weight: i64,
    pub level: u64,
    generators: Vec<Generator>,
    elements: Vec<Recipe>,
    horizon: i64,
    echelon: Matrix,
    pivots: Vec<usize>,
    transform: Matrix,
}

fn leading(f: &LaurentSeries, horizon: i64) -> Result<Vec<Rational>> {
    (0..horizon).map(|n| f.coeff(n)).collect()
}

impl SpaceBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    /// Number of leading coefficients used for the linear algebra.
    pub fn horizon(&self) -> i64 {
        self.horizon
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Describes how basis element `i` was obtained, e.g. "T3(eta{...})".
    pub fn provenance(&self, i: usize) -> String {
        let r = &self.elements[i];
        let mut s = self.generators[r.generator].name.clone();
        for p in &r.hecke {
            s = format!("T{p}({s})");
        }
        s
    }

    fn realize_recipe(&self, r: &Recipe, precision: i64) -> Result<LaurentSeries> {
        realize(&self.generators[r.generator], &r.hecke, self.weight, self.level, precision)
    }

    /// The raw (non-echelon) basis elements at the given precision.
    fn raw(&self, precision: i64) -> Result<Vec<LaurentSeries>> {
        self.elements.iter().map(|r| self.realize_recipe(r, precision)).collect()
    }

    /// The echelon basis as q-series known below q^precision.
    pub fn basis(&self, precision: i64) -> Result<Vec<LaurentSeries>> {
        let raw = self.raw(precision)?;
        Ok(self.transform.iter().map(|row| combine(row, &raw, precision)).collect())
    }

    /// The element with echelon coordinates `coords`.
    pub fn element(&self, coords: &[Rational], precision: i64) -> Result<LaurentSeries> {
        let raw_coords = mat_mul(&[coords.to_vec()], &self.transform).remove(0);
        let raw = self.raw(precision)?;
        Ok(combine(&raw_coords, &raw, precision))
    }

    /// Echelon coordinates of `f`; fails if `f` is not in the span.
    pub fn coordinates(&self, f: &LaurentSeries) -> Result<Vec<Rational>> {
        let v = leading(f, self.horizon)?;
        let c: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = mat_mul(std::slice::from_ref(&c), &self.echelon).remove(0);
        if back != v {
            return Err(Error::Catalog(format!(
                "series is not in M_{}(Gamma_0({}))",
                self.weight, self.level
            )));
        }
        Ok(c)
    }

    /// Matrix of T_p on echelon coordinates (acting on column vectors).
    pub fn hecke_matrix(&self, p: u64) -> Result<Matrix> {
        let basis = self.basis(self.horizon * p as i64)?;
        let cols = basis
            .iter()
            .map(|b| self.coordinates(&t_op(b, p, self.weight, self.level)))
            .collect::<Result<Vec<_>>>()?;
        Ok(transpose(&cols))
    }
}

fn realize(g: &Generator, hecke: &[u64], k: i64, level: u64, precision: i64) -> Result<LaurentSeries> {
    let scale: i64 = hecke.iter().map(|&p| p as i64).product();
    let mut f = g.expand(precision * scale)?;
    for &p in hecke {
        f = t_op(&f, p, k, level);
    }
    Ok(f.truncate(precision))
}

fn combine(coeffs: &[Rational], series: &[LaurentSeries], precision: i64) -> LaurentSeries {
    let mut acc = LaurentSeries::zero(precision);
    for (c, s) in coeffs.iter().zip(series) {
        if *c != 0 {
            acc = acc.add_scaled(c, s);
        }
    }
    acc
}

/// Echelon basis of the span of `generators` closed under T_p, p in `primes`.
///
/// Errors if the span exceeds the dimension formula (a catalog entry is not
/// in the space) or if closure stalls below it.
pub fn span_and_close(k: i64, level: u64, generators: Vec<Generator>, primes: &[u64]) -> Result<SpaceBasis> {
    let dim = dim_mk(k, level)? as usize;
    let horizon = sturm_bound(k, level).max(2);
    let mut rows: Matrix = Vec::new();
    let mut elements: Vec<Recipe> = Vec::new();
    let try_add = |r: Recipe, rows: &mut Matrix, elements: &mut Vec<Recipe>| -> Result<bool> {
        let f = realize(&generators[r.generator], &r.hecke, k, level, horizon)?;
        let v = leading(&f, horizon)?;
        rows.push(v);
        if rank(rows) > elements.len() {
            elements.push(r);
            Ok(true)
        } else {
            rows.pop();
            Ok(false)
        }
    };
    for i in 0..generators.len() {
        try_add(Recipe { generator: i, hecke: vec![] }, &mut rows, &mut elements)?;
    }
    if elements.len() > dim {
        return Err(Error::Catalog(format!(
            "catalog spans {} dimensions but dim M_{k}(Gamma_0({level})) = {dim}",
            elements.len()
        )));
    }
    let mut queue: std::collections::VecDeque<Recipe> = elements.iter().cloned().collect();
    while let Some(r) = queue.pop_front() {
        if elements.len() >= dim {
            break;
        }
        for &p in primes {
            let mut next = r.clone();
            next.hecke.push(p);
            if try_add(next.clone(), &mut rows, &mut elements)? {
                queue.push_back(next);
            }
        }
    }
    if elements.len() != dim {
        return Err(Error::Catalog(format!(
            "catalog closes to dimension {} but dim M_{k}(Gamma_0({level})) = {dim}",
            elements.len()
        )));
    }
    let (echelon, pivots, transform) = rref(&rows);
    Ok(SpaceBasis { weight: k, level, generators, elements, horizon, echelon, pivots, transform })
}

/// A subspace of a SpaceBasis, stored as reduced rows of echelon coordinates.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub rows: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_vectors(vectors: &[Vec<Rational>]) -> Self {
        let (rows, pivots, _) = rref(vectors);
        Subspace { rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Coordinates of an ambient vector known to lie in the subspace.
    pub fn coords(&self, w: &[Rational]) -> Vec<Rational> {
        self.pivots.iter().map(|&p| w[p].clone()).collect()
    }

    /// Restriction of an ambient operator (column convention) to the subspace.
    pub fn restrict(&self, ambient: &Matrix) -> Matrix {
        let cols: Matrix = self
            .rows
            .iter()
            .map(|r| {
                let image = mat_mul(ambient, &transpose(std::slice::from_ref(r)));
                let w: Vec<Rational> = image.into_iter().map(|mut x| x.remove(0)).collect();
                self.coords(&w)
            })
            .collect();
        transpose(&cols)
    }

    /// Ambient coordinates of the subspace vector with coordinates `c`.
    pub fn lift(&self, c: &[Rational]) -> Vec<Rational> {
        mat_mul(&[c.to_vec()], &self.rows).remove(0)
    }
}

/// The cuspidal subspace: the image of T_p - (1 + p^(k-1)) for a prime p not
/// dividing the level (Eisenstein series are exactly the kernel).
pub fn cusp_subspace(space: &SpaceBasis) -> Result<Subspace> {
    let p = (2u64..).find(|p| crate::arith::is_prime(*p) && !space.level.is_multiple_of(*p)).unwrap();
    let t = space.hecke_matrix(p)?;
    let lambda = Rational::from(1 + (p as i64).pow((space.weight - 1) as u32));
    let n = t.len();
    let mut shifted = t;
    for (i, row) in shifted.iter_mut().enumerate().take(n) {
        row[i] -= &lambda;
    }
    Ok(Subspace::from_vectors(&transpose(&shifted)))
}
