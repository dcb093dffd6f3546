use std::collections::btree_set;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A finite sum of basis elements with coefficients in GF(2).
///
/// Adding a term that is already present removes it, so the empty chain is the
/// only representation of zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain<G: Ord>(BTreeSet<G>);

impl<G: Ord> Default for Chain<G> {
    fn default() -> Self {
        Chain(BTreeSet::new())
    }
}

impl<G: Ord + Clone> Chain<G> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(g: G) -> Self {
        let mut c = Self::zero();
        c.toggle(g);
        c
    }

    pub fn toggle(&mut self, g: G) {
        if !self.0.remove(&g) {
            self.0.insert(g);
        }
    }

    pub fn add_assign(&mut self, other: &Chain<G>) {
        for g in &other.0 {
            self.toggle(g.clone());
        }
    }

    pub fn add(mut self, other: &Chain<G>) -> Chain<G> {
        self.add_assign(other);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, g: &G) -> bool {
        self.0.contains(g)
    }

    pub fn iter(&self) -> btree_set::Iter<'_, G> {
        self.0.iter()
    }

    pub fn terms(&self) -> Vec<G> {
        self.0.iter().cloned().collect()
    }

    pub fn map<H: Ord + Clone>(&self, mut f: impl FnMut(&G) -> Chain<H>) -> Chain<H> {
        let mut out = Chain::zero();
        for g in &self.0 {
            out.add_assign(&f(g));
        }
        out
    }
}

impl<G: Ord + Clone> FromIterator<G> for Chain<G> {
    fn from_iter<I: IntoIterator<Item = G>>(iter: I) -> Self {
        let mut c = Chain::zero();
        for g in iter {
            c.toggle(g);
        }
        c
    }
}

impl<G: Ord + Clone> Extend<G> for Chain<G> {
    fn extend<I: IntoIterator<Item = G>>(&mut self, iter: I) {
        for g in iter {
            self.toggle(g);
        }
    }
}

impl<'a, G: Ord> IntoIterator for &'a Chain<G> {
    type Item = &'a G;
    type IntoIter = btree_set::Iter<'a, G>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl<G: Ord> IntoIterator for Chain<G> {
    type Item = G;
    type IntoIter = btree_set::IntoIter<G>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<G: Ord + fmt::Debug> fmt::Debug for Chain<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// Sparse echelon basis of a span of chains, keyed by each row's largest term.
#[derive(Clone, Debug)]
pub struct ChainEchelon<G: Ord> {
    rows: BTreeMap<G, Chain<G>>,
}

impl<G: Ord> Default for ChainEchelon<G> {
    fn default() -> Self {
        ChainEchelon {
            rows: BTreeMap::new(),
        }
    }
}

impl<G: Ord + Clone> ChainEchelon<G> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, c: &Chain<G>) -> Chain<G> {
        let mut c = c.clone();
        let mut done: Vec<G> = Vec::new();
        // Terms without a pivot are parked so the largest remaining term is always checked next.
        while let Some(lead) = c.0.last().cloned() {
            match self.rows.get(&lead) {
                Some(row) => c.add_assign(row),
                None => {
                    c.0.remove(&lead);
                    done.push(lead);
                }
            }
        }
        done.into_iter().collect()
    }

    /// Adds `c` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, c: &Chain<G>) -> bool {
        let r = self.reduce(c);
        match r.0.last().cloned() {
            None => false,
            Some(lead) => {
                self.rows.insert(lead, r);
                true
            }
        }
    }

    pub fn contains(&self, c: &Chain<G>) -> bool {
        self.reduce(c).is_zero()
    }

    pub fn rows(&self) -> impl Iterator<Item = &Chain<G>> {
        self.rows.values()
    }
}

/// Dimension of the span of `chains`.
pub fn span_dim<G: Ord + Clone>(chains: &[Chain<G>]) -> usize {
    let mut e = ChainEchelon::new();
    chains.iter().filter(|c| e.insert(c)).count()
}

/// Expands `f` multilinearly over a sequence of chains: the sum of `f(word)` over
/// every choice of one term from each chain.
pub fn expand_multilinear<G, H>(
    chains: &[Chain<G>],
    mut f: impl FnMut(&[G]) -> Chain<H>,
) -> Chain<H>
where
    G: Ord + Clone,
    H: Ord + Clone,
{
    let mut out = Chain::zero();
    if chains.iter().any(|c| c.is_zero()) {
        return out;
    }
    let terms: Vec<Vec<G>> = chains.iter().map(|c| c.terms()).collect();
    let mut idx = vec![0usize; terms.len()];
    let mut word: Vec<G> = terms.iter().map(|t| t[0].clone()).collect();
    loop {
        out.add_assign(&f(&word));
        // Odometer increment over the term indices.
        let mut pos = terms.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < terms[pos].len() {
                word[pos] = terms[pos][idx[pos]].clone();
                break;
            }
            idx[pos] = 0;
            word[pos] = terms[pos][0].clone();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xor_semantics() {
        let mut c: Chain<u32> = [1, 2, 3].into_iter().collect();
        c.toggle(2);
        assert_eq!(c.terms(), vec![1, 3]);
        let d: Chain<u32> = [3, 4].into_iter().collect();
        assert_eq!(c.clone().add(&d).terms(), vec![1, 4]);
        assert!(c.clone().add(&c).is_zero());
        let dup: Chain<u32> = [5, 5].into_iter().collect();
        assert!(dup.is_zero());
    }

    #[test]
    fn echelon_membership() {
        let mut e = ChainEchelon::new();
        let a: Chain<u32> = [1, 2].into_iter().collect();
        let b: Chain<u32> = [2, 3].into_iter().collect();
        assert!(e.insert(&a));
        assert!(e.insert(&b));
        let c: Chain<u32> = [1, 3].into_iter().collect();
        assert!(e.contains(&c));
        assert!(!e.insert(&c));
        assert!(!e.contains(&Chain::single(1)));
        assert_eq!(e.dim(), 2);
        assert_eq!(span_dim(&[a.clone(), b, c, a]), 2);
    }

    #[test]
    fn multilinear_expansion_counts_products() {
        let a: Chain<u32> = [1, 2].into_iter().collect();
        let b: Chain<u32> = [10, 20, 30].into_iter().collect();
        let mut seen = 0;
        let out = expand_multilinear(&[a.clone(), b], |w| {
            seen += 1;
            Chain::single(w[0] * 100 + w[1])
        });
        assert_eq!(seen, 6);
        assert_eq!(out.len(), 6);
        let none = expand_multilinear(&[a, Chain::zero()], |_w: &[u32]| Chain::single(0u32));
        assert!(none.is_zero());
    }
}
