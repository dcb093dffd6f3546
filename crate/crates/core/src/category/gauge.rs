use std::collections::{BTreeMap, HashMap};

use super::{composability_failure, word_degree, AInfty, AInftyStructure, Adjacency, GenId};
use crate::chain::{expand_multilinear, Chain};
use crate::error::{Error, Result};
use crate::words::{for_each_partition, splice};

/// Components `g^d` (d ≥ 2) of a coalgebra automorphism of the bar
/// construction whose linear part is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GaugeData {
    components: BTreeMap<Vec<GenId>, Chain<GenId>>,
}

impl GaugeData {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, word: Vec<GenId>, outputs: Chain<GenId>) {
        assert!(word.len() >= 2, "gauge components start in arity 2");
        if outputs.is_zero() {
            self.components.remove(&word);
        } else {
            self.components.insert(word, outputs);
        }
    }

    pub fn set_named(
        &mut self,
        c: &AInftyStructure,
        word: &[&str],
        outputs: &[&str],
    ) -> Result<()> {
        let w = word.iter().map(|n| c.gen(n)).collect::<Result<Vec<_>>>()?;
        let o = outputs
            .iter()
            .map(|n| c.gen(n))
            .collect::<Result<Chain<_>>>()?;
        self.set(w, o);
        Ok(())
    }

    /// `g^d(word)`, the identity in arity one.
    pub fn apply(&self, word: &[GenId]) -> Chain<GenId> {
        if word.len() == 1 {
            return Chain::single(word[0]);
        }
        self.components.get(word).cloned().unwrap_or_default()
    }

    pub fn max_arity(&self) -> usize {
        self.components.keys().map(|k| k.len()).max().unwrap_or(1)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<GenId>, &Chain<GenId>)> {
        self.components.iter()
    }

    pub fn is_identity(&self) -> bool {
        self.components.is_empty()
    }

    /// Checks composability, endpoints and the degree law `Σ deg + 1 − d`.
    pub fn validate(&self, c: &AInftyStructure) -> Result<()> {
        for (w, out) in &self.components {
            if let Some(position) = composability_failure(c, w) {
                return Err(Error::NotComposable { position });
            }
            let expected = word_degree(c, w) + 1 - w.len() as i64;
            let (src, tgt) = (c.source(w.last().unwrap()), c.target(&w[0]));
            for t in out {
                if c.degree(t) != expected {
                    return Err(Error::DegreeMismatch {
                        detail: format!(
                            "gauge output `{}` on {} has degree {}, expected {expected}",
                            c.name(t),
                            super::word_label(c, w),
                            c.degree(t)
                        ),
                    });
                }
                if c.source(t) != src || c.target(t) != tgt {
                    return Err(Error::SourceTargetMismatch(format!(
                        "gauge output `{}` on {}",
                        c.name(t),
                        super::word_label(c, w)
                    )));
                }
            }
        }
        Ok(())
    }

    fn apply_chains(&self, inputs: &[Chain<GenId>]) -> Chain<GenId> {
        expand_multilinear(inputs, |w| self.apply(w))
    }
}

/// Structure `μ'` making `g` a strict A∞ isomorphism `C → C'`, computed on all
/// composable words up to `max_arity`, which becomes the arity bound of `C'`.
pub fn gauge_transform(
    c: &AInftyStructure,
    g: &GaugeData,
    max_arity: usize,
) -> Result<AInftyStructure> {
    g.validate(c)?;
    let mut new_mu: HashMap<Vec<GenId>, Chain<GenId>> = HashMap::new();
    let adj = Adjacency::new(c);
    let active = c.active_arities();
    for d in 1..=max_arity {
        let mut level = Vec::new();
        adj.for_each_word(c, d, |w| {
            let mut out = Chain::zero();
            for s in 0..d {
                for m in (1..=d - s).filter(|m| active.contains(m)) {
                    for t in c.mu(&w[s..s + m]) {
                        out.add_assign(&g.apply(&splice(w, s, m, t)));
                    }
                }
            }
            for_each_partition(d, |blocks| {
                if blocks.len() == d {
                    return;
                }
                let images: Vec<Chain<GenId>> =
                    blocks.iter().map(|&(a, b)| g.apply(&w[a..b])).collect();
                out.add_assign(&expand_multilinear(&images, |x| {
                    new_mu.get(x).cloned().unwrap_or_default()
                }));
            });
            if !out.is_zero() {
                level.push((w.to_vec(), out));
            }
        });
        new_mu.extend(level);
    }
    let mut b = c.to_builder();
    for (w, _) in c.mu_entries() {
        b.remove_mu(w);
    }
    let mut entries: Vec<_> = new_mu.into_iter().collect();
    entries.sort();
    for (w, out) in entries {
        b.set_mu(&w, &out.terms())?;
    }
    b.max_arity(max_arity);
    b.build()
}

/// Components of the inverse automorphism on words up to `max_arity`.
pub fn gauge_inverse(c: &AInftyStructure, g: &GaugeData, max_arity: usize) -> Result<GaugeData> {
    g.validate(c)?;
    let mut h = GaugeData::new();
    let adj = Adjacency::new(c);
    for d in 2..=max_arity {
        let mut level = Vec::new();
        adj.for_each_word(c, d, |w| {
            let mut out = Chain::zero();
            for_each_partition(d, |blocks| {
                if blocks.len() < 2 {
                    return;
                }
                let images: Vec<Chain<GenId>> =
                    blocks.iter().map(|&(a, b)| h.apply(&w[a..b])).collect();
                out.add_assign(&g.apply_chains(&images));
            });
            if !out.is_zero() {
                level.push((w.to_vec(), out));
            }
        });
        for (w, out) in level {
            h.set(w, out);
        }
    }
    Ok(h)
}
