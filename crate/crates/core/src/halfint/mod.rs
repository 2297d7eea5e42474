//! Weight 3/2 plus-space forms F_N(-m): seeds, the recursive family, and
//! coefficient access.

pub mod cache;
mod family;
mod plus;
mod seeds;

pub use family::{generate_family, FamilyCache, NormalizationRule, DEFAULT_GUARD};
pub use plus::{in_plus_support, PlusSeries};
pub use seeds::{level1_extra_seed, plus_t4, seed_form, SEED_LEVELS};

use rug::Rational;

use crate::error::Result;

/// b_N(-m; n) from a family generated on the spot. Prefer `FamilyCache::btilde`
/// when reading many coefficients.
pub fn btilde(level: u64, m: u64, n: i64) -> Result<Rational> {
    let fam = generate_family(level, m.max(1), n + 1, &NormalizationRule::square_delta())?;
    fam.btilde(m, n)
}
