//! Stop-weight filtrations: one nonnegative count per stop label, added along
//! words and required not to grow under the structure maps.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::category::{word_label, AInfty, AInftyStructure, Adjacency};
use crate::error::{Error, Result};
use crate::report::Violation;

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(pub Vec<u32>);

impl WeightVector {
    pub fn zero(stops: usize) -> Self {
        WeightVector(vec![0; stops])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, stop: usize) -> u32 {
        self.0[stop]
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&n| n as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&n| n == 0)
    }

    pub fn add_assign(&mut self, other: &WeightVector) {
        assert_eq!(
            self.len(),
            other.len(),
            "weight vectors of different length"
        );
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
    }

    pub fn add(mut self, other: &WeightVector) -> WeightVector {
        self.add_assign(other);
        self
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &WeightVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn vanishes_at(&self, stops: &[usize]) -> bool {
        stops.iter().all(|&s| self.0[s] == 0)
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<u32>> for WeightVector {
    fn from(v: Vec<u32>) -> Self {
        WeightVector(v)
    }
}

/// Componentwise sum of the generator weights in `word`.
pub fn word_weight<C: AInfty>(c: &C, word: &[C::Gen]) -> WeightVector {
    let mut w = WeightVector::zero(c.stops().len());
    for g in word {
        w.add_assign(&c.weights(g));
    }
    w
}

/// Every structure constant with an output term heavier than its input word.
pub fn verify_filtration_subadditivity<C: AInfty>(c: &C, max_d: usize) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut check = |word: &[C::Gen]| {
        let bound = word_weight(c, word);
        for t in c.mu(word).iter() {
            let w = c.weights(t);
            if !w.le(&bound) {
                out.push(Violation::new(
                    word_label(c, word),
                    format!(
                        "output `{}` has weight {:?} exceeding the input weight {:?}",
                        c.name(t),
                        w,
                        bound
                    ),
                ));
            }
        }
    };
    match c.explicit_entries() {
        Some(entries) => {
            for (word, _) in entries.iter().filter(|(w, _)| w.len() <= max_d) {
                check(word);
            }
        }
        None => {
            let adj = Adjacency::new(c);
            for d in c.active_arities().into_iter().filter(|&d| d <= max_d) {
                adj.for_each_word(c, d, &mut check);
            }
        }
    }
    out
}

/// Subcategory of generators with weight zero at every kept stop.
pub fn zero_filtered_subcategory(
    c: &AInftyStructure,
    kept_stops: &[&str],
) -> Result<AInftyStructure> {
    let idx = kept_stops
        .iter()
        .map(|s| {
            c.stops()
                .iter()
                .position(|t| t == s)
                .ok_or_else(|| Error::Malformed(format!("unknown stop label `{s}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(v) = verify_filtration_subadditivity(c, c.max_arity())
        .into_iter()
        .next()
    {
        return Err(Error::SubadditivityViolated {
            location: v.location,
        });
    }
    let keep: BTreeSet<_> = c
        .ids()
        .filter(|&g| c.generator(g).weights.vanishes_at(&idx))
        .collect();
    Ok(c.restrict(&keep))
}
