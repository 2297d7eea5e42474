//! Recursive generation of F_N(-m) for all m = 0, 1 mod 4 up to a bound.

use std::collections::BTreeMap;
use std::fmt;

use rug::Rational;

use super::plus::PlusSeries;
use super::seeds::{level1_extra_seed, seed_form, SEED_LEVELS};
use crate::arith::{gamma0_index, is_square};
use crate::error::{Error, Result};
use crate::formlib::hauptmodul;
use crate::qseries::LaurentSeries;

/// Extra coefficients carried through the recursion beyond what is needed.
pub const DEFAULT_GUARD: i64 = 8;

/// How the constant term of a generated F_N(-m) is fixed.
///
/// The default target is -2 delta(m) / varpi(N), with delta(m) = 1 for square
/// m and 0 otherwise. Overrides replace the target for individual m.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NormalizationRule {
    pub overrides: BTreeMap<u64, Rational>,
}

impl NormalizationRule {
    pub fn square_delta() -> Self {
        Self::default()
    }

    /// Identifier written to cache headers.
    pub fn id(&self) -> String {
        let mut s = String::from("square-delta");
        for (m, v) in &self.overrides {
            s.push_str(&format!(";m{m}={v}"));
        }
        s
    }

    /// Parses an identifier produced by `id`.
    pub fn parse(id: &str) -> Result<Self> {
        let mut parts = id.split(';');
        if parts.next() != Some("square-delta") {
            return Err(Error::Invalid(format!("unknown normalization rule {id}")));
        }
        let mut overrides = BTreeMap::new();
        for p in parts {
            let bad = || Error::Invalid(format!("bad normalization override {p}"));
            let (m, v) = p.strip_prefix('m').and_then(|x| x.split_once('=')).ok_or_else(bad)?;
            overrides.insert(m.parse().map_err(|_| bad())?, v.parse::<Rational>().map_err(|_| bad())?);
        }
        Ok(NormalizationRule { overrides })
    }

    pub fn target(&self, level: u64, m: u64) -> Rational {
        if let Some(v) = self.overrides.get(&m) {
            return v.clone();
        }
        if is_square(m) {
            Rational::from((-2, gamma0_index(level) as i64))
        } else {
            Rational::new()
        }
    }
}

impl fmt::Display for NormalizationRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

/// F_N(-m) for every m = 0, 1 mod 4 up to `m_max`, each known below q^precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyCache {
    pub level: u64,
    pub precision: i64,
    pub m_max: u64,
    pub rule: NormalizationRule,
    members: BTreeMap<u64, PlusSeries>,
}

impl FamilyCache {
    pub(crate) fn from_members(
        level: u64,
        precision: i64,
        m_max: u64,
        rule: NormalizationRule,
        members: BTreeMap<u64, PlusSeries>,
    ) -> Self {
        FamilyCache { level, precision, m_max, rule, members }
    }

    pub fn get(&self, m: u64) -> Result<&PlusSeries> {
        if m > self.m_max {
            return Err(Error::FamilyDepth { level: self.level, need: m, have: self.m_max });
        }
        self.members.get(&m).ok_or_else(|| {
            Error::Invalid(format!("no member F_{}(-{m}): m must be 0 or 1 mod 4", self.level))
        })
    }

    /// Coefficient b_N(-m; n).
    pub fn btilde(&self, m: u64, n: i64) -> Result<Rational> {
        self.get(m)?.coeff(n)
    }

    pub fn members(&self) -> impl Iterator<Item = (&u64, &PlusSeries)> {
        self.members.iter()
    }
}

/// Generates the family with every member known below q^precision.
///
/// F_N(-m) comes from F_N(-(m-4)) j^(N)(4z); the other principal terms are
/// removed with lower members and the constant term is set by `rule` using
/// F_N(0) (levels N > 1). For N = 1, F_1(-4) is the extra seed and the
/// constant term is forced; a mismatch with the rule is reported.
pub fn generate_family(level: u64, m_max: u64, precision: i64, rule: &NormalizationRule) -> Result<FamilyCache> {
    if !SEED_LEVELS.contains(&level) {
        return Err(Error::UnsupportedLevel(level));
    }
    // every step F(-(m-4)) -> F(-m) costs four coefficients
    let top = precision + m_max as i64 + DEFAULT_GUARD;
    let mut fam: BTreeMap<u64, LaurentSeries> = BTreeMap::new();
    let f0 = if level > 1 { Some(seed_form(level, 0, top)?.series().clone()) } else { None };
    if let Some(f) = &f0 {
        fam.insert(0, f.clone());
    }
    fam.insert(1, seed_form(level, 1, top)?.series().clone());
    if level == 1 && m_max >= 4 {
        fam.insert(4, level1_extra_seed(top - 4)?.series().clone());
    }
    let j4 = hauptmodul(level, top.div_euclid(4) + 3)?.v(4);
    for m in 2..=m_max {
        if !matches!(m % 4, 0 | 1) || fam.contains_key(&m) {
            continue;
        }
        let mut g = fam[&(m - 4)].mul_series(&j4);
        if m == 4 {
            // F(0) j(4z) = c q^-4 + ...
            let c = g.coeff(-4)?;
            g = g.scale(&(Rational::from(1) / c));
        }
        let mi = m as i64;
        if g.valuation() != -mi || g.coeff(-mi)? != 1 {
            return Err(Error::Normalization(format!("F_{level}(-{m}) seed product has leading term {}", g)));
        }
        let mut terms: Vec<(Rational, &LaurentSeries)> = vec![(Rational::from(1), &g)];
        let mut constant = g.coeff(0)?;
        for n in 1..m {
            let c = g.coeff(-(n as i64))?;
            if c == 0 {
                continue;
            }
            let f = fam.get(&n).ok_or_else(|| {
                Error::Normalization(format!("F_{level}(-{m}) has a q^-{n} term outside the plus space"))
            })?;
            constant -= &c * f.coeff(0)?;
            terms.push((-c, f));
        }
        let target = rule.target(level, m);
        let adjust;
        if let Some(f0) = &f0 {
            adjust = (constant - &target) / f0.coeff(0)?;
            terms.push((-adjust, f0));
        } else if constant != target {
            return Err(Error::Normalization(format!(
                "F_1(-{m}) has constant term {constant}, rule {} wants {target}",
                rule.id()
            )));
        }
        let h = LaurentSeries::linear_combination(&terms);
        drop(terms);
        fam.insert(m, h);
    }
    let mut members = BTreeMap::new();
    for (m, s) in fam {
        if m > m_max {
            continue;
        }
        if s.precision() < precision {
            return Err(Error::Precision { index: precision - 1, precision: s.precision() });
        }
        members.insert(m, PlusSeries::new(level, m, s.truncate(precision))?);
    }
    Ok(FamilyCache::from_members(level, precision, m_max, rule.clone(), members))
}
