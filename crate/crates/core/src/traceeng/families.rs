//! Shared access to generated families across levels.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use crate::error::Result;
use crate::halfint::{cache, FamilyCache, NormalizationRule};

/// Hands out families deep and precise enough for a request, generating or
/// loading from disk as needed. Smaller requests reuse larger families.
#[derive(Debug, Default)]
pub struct Families {
    rule: NormalizationRule,
    dir: Option<PathBuf>,
    loaded: Mutex<HashMap<u64, Arc<FamilyCache>>>,
}

impl Families {
    pub fn new(rule: NormalizationRule) -> Self {
        Families { rule, dir: None, loaded: Mutex::default() }
    }

    /// Families persisted under `dir` (see `halfint::cache`).
    pub fn with_cache_dir(rule: NormalizationRule, dir: impl Into<PathBuf>) -> Self {
        Families { rule, dir: Some(dir.into()), loaded: Mutex::default() }
    }

    pub fn rule(&self) -> &NormalizationRule {
        &self.rule
    }

    /// A family for `level` containing every m up to `m_max` below q^precision.
    pub fn get(&self, level: u64, m_max: u64, precision: i64) -> Result<Arc<FamilyCache>> {
        let mut loaded = self.loaded.lock().unwrap();
        if let Some(f) = loaded.get(&level) {
            if f.m_max >= m_max && f.precision >= precision {
                return Ok(f.clone());
            }
        }
        let (m_max, precision) = match loaded.get(&level) {
            Some(f) => (f.m_max.max(m_max), f.precision.max(precision)),
            None => (m_max, precision),
        };
        let fam = Arc::new(cache::load_or_generate(self.dir.as_deref(), level, m_max, precision, &self.rule)?);
        loaded.insert(level, fam.clone());
        Ok(fam)
    }
}
