use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

/// One failed check, located by a human-readable word or object label.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub location: String,
    pub detail: String,
}

impl Violation {
    pub fn new(location: impl Into<String>, detail: impl Into<String>) -> Self {
        Violation {
            location: location.into(),
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.detail)
    }
}

/// Homology dimension in one degree, with a flag recording whether it changed
/// at the last truncation increment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyEntry {
    pub degree: i64,
    pub dim: usize,
    pub stable: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HomologyTable {
    pub entries: Vec<HomologyEntry>,
}

impl HomologyTable {
    /// Every entry stable.
    pub fn exact(dims: &BTreeMap<i64, usize>) -> Self {
        HomologyTable {
            entries: dims
                .iter()
                .map(|(&degree, &dim)| HomologyEntry {
                    degree,
                    dim,
                    stable: true,
                })
                .collect(),
        }
    }

    /// Marks degrees whose value differs between the coarser and finer truncation.
    pub fn compare(coarser: &BTreeMap<i64, usize>, finer: &BTreeMap<i64, usize>) -> Self {
        HomologyTable {
            entries: finer
                .iter()
                .map(|(&degree, &dim)| HomologyEntry {
                    degree,
                    dim,
                    stable: coarser.get(&degree) == Some(&dim),
                })
                .collect(),
        }
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.entries.iter().map(|e| (e.degree, e.dim)).collect()
    }

    pub fn get(&self, degree: i64) -> Option<HomologyEntry> {
        self.entries.iter().find(|e| e.degree == degree).copied()
    }

    pub fn all_stable(&self) -> bool {
        self.entries.iter().all(|e| e.stable)
    }

    pub fn unstable_degrees(&self) -> Vec<i64> {
        self.entries
            .iter()
            .filter(|e| !e.stable)
            .map(|e| e.degree)
            .collect()
    }
}

impl fmt::Display for HomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let flag = if e.stable { "STABLE" } else { "UNSTABLE" };
            writeln!(f, "  H^{:<4} {:>4}  {flag}", e.degree, e.dim)?;
        }
        Ok(())
    }
}
