//! Text persistence of family caches.
//!
//! ```text
//! format-version 1
//! level 7
//! varpi 8
//! precision 21
//! rule square-delta
//! m-max 16
//! m 1 -1
//! 1/1 0/1 ...
//! ```
//! Each member is a header line `m <m> <start>` followed by one line of
//! coefficients from q^start up to the precision.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rug::Rational;

use super::family::{FamilyCache, NormalizationRule};
use super::plus::PlusSeries;
use crate::arith::gamma0_index;
use crate::error::{Error, Result};
use crate::qseries::LaurentSeries;

pub const FORMAT_VERSION: u32 = 1;

pub fn render(cache: &FamilyCache) -> String {
    let mut out = String::new();
    out.push_str(&format!("format-version {FORMAT_VERSION}\n"));
    out.push_str(&format!("level {}\n", cache.level));
    out.push_str(&format!("varpi {}\n", gamma0_index(cache.level)));
    out.push_str(&format!("precision {}\n", cache.precision));
    out.push_str(&format!("rule {}\n", cache.rule.id()));
    out.push_str(&format!("m-max {}\n", cache.m_max));
    for (m, f) in cache.members() {
        let s = f.series();
        out.push_str(&format!("m {m} {}\n", s.valuation()));
        let row: Vec<String> = s
            .coeffs_from(s.valuation())
            .iter()
            .map(|c| format!("{}/{}", c.numer(), c.denom()))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse(text: &str) -> Result<FamilyCache> {
    let bad = |what: &str| Error::Cache(format!("malformed family cache: {what}"));
    let mut lines = text.lines();
    let mut header = |key: &str| -> Result<String> {
        let line = lines.next().ok_or_else(|| bad(key))?;
        line.strip_prefix(key)
            .and_then(|r| r.strip_prefix(' '))
            .map(str::to_string)
            .ok_or_else(|| bad(key))
    };
    let version: u32 = header("format-version")?.parse().map_err(|_| bad("format-version"))?;
    if version != FORMAT_VERSION {
        return Err(Error::Cache(format!("unsupported cache format version {version}")));
    }
    let level: u64 = header("level")?.parse().map_err(|_| bad("level"))?;
    let varpi: u64 = header("varpi")?.parse().map_err(|_| bad("varpi"))?;
    if varpi != gamma0_index(level) {
        return Err(bad("varpi does not match level"));
    }
    let precision: i64 = header("precision")?.parse().map_err(|_| bad("precision"))?;
    let rule = NormalizationRule::parse(&header("rule")?)?;
    let m_max: u64 = header("m-max")?.parse().map_err(|_| bad("m-max"))?;
    let mut members = BTreeMap::new();
    while let Some(line) = lines.next() {
        if line.trim().is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        if it.next() != Some("m") {
            return Err(bad(line));
        }
        let m: u64 = it.next().and_then(|x| x.parse().ok()).ok_or_else(|| bad(line))?;
        let start: i64 = it.next().and_then(|x| x.parse().ok()).ok_or_else(|| bad(line))?;
        let row = lines.next().ok_or_else(|| bad("missing coefficient row"))?;
        let coeffs = row
            .split_whitespace()
            .map(|c| c.parse::<Rational>().map_err(|_| bad(c)))
            .collect::<Result<Vec<_>>>()?;
        let s = LaurentSeries::new(start, coeffs);
        if s.precision() != precision {
            return Err(bad("member precision differs from header"));
        }
        members.insert(m, PlusSeries::new(level, m, s)?);
    }
    Ok(FamilyCache::from_members(level, precision, m_max, rule, members))
}

/// `<dir>/families/N<level>-p<precision>.txt`.
pub fn cache_path(dir: &Path, level: u64, precision: i64) -> PathBuf {
    dir.join("families").join(format!("N{level}-p{precision}.txt"))
}

/// Writes atomically: a temporary file in the same directory, then a rename.
pub fn save(dir: &Path, cache: &FamilyCache) -> Result<PathBuf> {
    let path = cache_path(dir, cache.level, cache.precision);
    let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", path.display()));
    let parent = path.parent().unwrap();
    fs::create_dir_all(parent).map_err(io)?;
    let tmp = parent.join(format!(".N{}-p{}.{}.tmp", cache.level, cache.precision, std::process::id()));
    {
        let mut f = fs::File::create(&tmp).map_err(io)?;
        f.write_all(render(cache).as_bytes()).map_err(io)?;
        f.sync_all().map_err(io)?;
    }
    fs::rename(&tmp, &path).map_err(io)?;
    Ok(path)
}

/// Loads a cache file if it exists; `Ok(None)` when absent.
pub fn load(dir: &Path, level: u64, precision: i64) -> Result<Option<FamilyCache>> {
    let path = cache_path(dir, level, precision);
    match fs::read_to_string(&path) {
        Ok(text) => parse(&text).map(Some),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(Error::Cache(format!("{}: {e}", path.display()))),
    }
}

/// A cached family for (level, precision) reaching `m_max` under `rule`,
/// regenerating and rewriting the file when the cached one is too shallow or
/// was made under a different rule.
pub fn load_or_generate(
    dir: Option<&Path>,
    level: u64,
    m_max: u64,
    precision: i64,
    rule: &NormalizationRule,
) -> Result<FamilyCache> {
    if let Some(dir) = dir {
        if let Some(c) = load(dir, level, precision)? {
            if c.m_max >= m_max && c.rule == *rule {
                return Ok(c);
            }
        }
    }
    let fam = super::family::generate_family(level, m_max, precision, rule)?;
    if let Some(dir) = dir {
        save(dir, &fam)?;
    }
    Ok(fam)
}
