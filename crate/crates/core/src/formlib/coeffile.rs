//! Plain-text coefficient files for named forms.
//!
//! ```text
//! # form S2-26-
//! # method hecke-eigen
//! # precision 40
//! 0 0/1
//! 1 0/1
//! 2 -2/1
//! ```

use std::fs;
use std::path::Path;

use rug::{Integer, Rational};

use super::newforms::NewformId;
use crate::error::{Error, Result};
use crate::qseries::LaurentSeries;

pub fn render(id: NewformId, method: &str, f: &LaurentSeries) -> String {
    let mut out = format!("# form {id}\n# method {method}\n# precision {}\n", f.precision());
    for n in f.valuation().min(0)..f.precision() {
        let c = f.coeff(n).unwrap();
        out.push_str(&format!("{n} {}/{}\n", c.numer(), c.denom()));
    }
    out
}

pub fn write(path: &Path, id: NewformId, method: &str, f: &LaurentSeries) -> Result<()> {
    fs::write(path, render(id, method, f)).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))
}

/// Parses a coefficient file, returning the form id, the generation method
/// and the series.
pub fn parse(text: &str) -> Result<(NewformId, String, LaurentSeries)> {
    let bad = |msg: &str| Error::Cache(format!("malformed coefficient file: {msg}"));
    let mut id = None;
    let mut method = None;
    let mut precision = None;
    let mut rows: Vec<(i64, Rational)> = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        if let Some(h) = line.strip_prefix('#') {
            let mut it = h.split_whitespace();
            match (it.next(), it.next()) {
                (Some("form"), Some(v)) => id = Some(v.parse::<NewformId>()?),
                (Some("method"), Some(v)) => method = Some(v.to_string()),
                (Some("precision"), Some(v)) => precision = Some(v.parse::<i64>().map_err(|_| bad("precision"))?),
                _ => {}
            }
            continue;
        }
        let (n, c) = line.split_once(' ').ok_or_else(|| bad(line))?;
        let n: i64 = n.parse().map_err(|_| bad(line))?;
        let (p, q) = c.split_once('/').ok_or_else(|| bad(line))?;
        let p: Integer = p.parse().map_err(|_| bad(line))?;
        let q: Integer = q.parse().map_err(|_| bad(line))?;
        if q == 0 {
            return Err(bad("zero denominator"));
        }
        rows.push((n, Rational::from((p, q))));
    }
    let precision = precision.ok_or_else(|| bad("missing precision"))?;
    let start = rows.first().map_or(precision, |r| r.0);
    let mut coeffs = vec![Rational::new(); (precision - start).max(0) as usize];
    for (n, c) in rows {
        if n < start || n >= precision {
            return Err(bad("exponent out of range"));
        }
        coeffs[(n - start) as usize] = c;
    }
    Ok((
        id.ok_or_else(|| bad("missing form id"))?,
        method.unwrap_or_else(|| "unknown".into()),
        LaurentSeries::new(start, coeffs),
    ))
}

pub fn read(path: &Path) -> Result<(NewformId, String, LaurentSeries)> {
    let text = fs::read_to_string(path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
    parse(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let f = LaurentSeries::new(
            1,
            vec![Rational::from(1), Rational::from((-5, 3)), Rational::new(), Rational::from(17)],
        );
        let text = render(NewformId::S4Level13Rational, "hecke-eigen", &f);
        let (id, method, g) = parse(&text).unwrap();
        assert_eq!(id, NewformId::S4Level13Rational);
        assert_eq!(method, "hecke-eigen");
        assert_eq!(g, f);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse("# form S2-52\n# precision 3\n1 x/2\n").is_err());
        assert!(parse("# form S9\n# precision 3\n").is_err());
    }
}
