//! Finite A∞ categories over GF(2).
//!
//! Words of morphisms are stored in the order `(γ_d, …, γ_1)`: index 0 is the
//! morphism applied last, the final index is applied first. A word is composable
//! when `source(word[i]) == target(word[i + 1])` for every adjacent pair.

mod gauge;
mod homology;
pub mod io;
mod structure;
mod verify;

use std::collections::BTreeSet;
use std::fmt::Debug;
use std::hash::Hash;

use num_rational::BigRational;

use crate::chain::{expand_multilinear, Chain};
use crate::filtration::WeightVector;

pub use gauge::{gauge_inverse, gauge_transform, GaugeData};
pub use homology::{
    class_rank, hom_homology, induced_homology_rank, is_homology_unit, truncated_homology,
    Coordinates, TruncatedComplex,
};
pub use structure::{AInftyStructure, GenId, Generator, StructureBuilder};
pub use verify::{
    evaluate_mu, relation_sum, verify_ainfty_relations, verify_ainfty_relations_scoped,
    verify_degree_convention, word_label,
};

pub type ObjIdx = usize;

/// Read access to an A∞ category given by a finite basis of each hom space and
/// structure maps on basis words.
pub trait AInfty {
    type Gen: Clone + Ord + Hash + Debug;

    fn objects(&self) -> &[String];
    fn stops(&self) -> &[String];
    fn source(&self, g: &Self::Gen) -> ObjIdx;
    fn target(&self, g: &Self::Gen) -> ObjIdx;
    fn degree(&self, g: &Self::Gen) -> i64;
    fn weights(&self, g: &Self::Gen) -> WeightVector;
    fn action(&self, g: &Self::Gen) -> BigRational;
    fn name(&self, g: &Self::Gen) -> String;

    /// Operations of larger arity vanish.
    fn max_arity(&self) -> usize;

    /// Arities at which some operation may be nonzero.
    fn active_arities(&self) -> Vec<usize> {
        (1..=self.max_arity()).collect()
    }

    /// `μ^d` on a nonempty composable word; zero above `max_arity`.
    fn mu(&self, word: &[Self::Gen]) -> Chain<Self::Gen>;

    /// Basis of `hom(x, y)`, possibly truncated.
    fn hom_basis(&self, x: ObjIdx, y: ObjIdx) -> Vec<Self::Gen>;

    /// A basis containing `hom_basis(x, y)` used as the source of boundaries when
    /// computing truncated homology. Equal to `hom_basis` for finite categories.
    fn hom_basis_extended(&self, x: ObjIdx, y: ObjIdx) -> Vec<Self::Gen> {
        self.hom_basis(x, y)
    }

    fn unit(&self, _x: ObjIdx) -> Option<Self::Gen> {
        None
    }

    /// All nonzero structure constants, when they are stored explicitly.
    fn explicit_entries(&self) -> Option<Vec<(Vec<Self::Gen>, Chain<Self::Gen>)>> {
        None
    }

    fn object_index(&self, name: &str) -> Option<ObjIdx> {
        self.objects().iter().position(|o| o == name)
    }
}

/// Position of the first adjacency failure, if any.
pub fn composability_failure<C: AInfty>(c: &C, word: &[C::Gen]) -> Option<usize> {
    (0..word.len().saturating_sub(1)).find(|&i| c.source(&word[i]) != c.target(&word[i + 1]))
}

pub fn word_source<C: AInfty>(c: &C, word: &[C::Gen]) -> ObjIdx {
    c.source(word.last().expect("empty word"))
}

pub fn word_target<C: AInfty>(c: &C, word: &[C::Gen]) -> ObjIdx {
    c.target(word.first().expect("empty word"))
}

pub fn word_degree<C: AInfty>(c: &C, word: &[C::Gen]) -> i64 {
    word.iter().map(|g| c.degree(g)).sum()
}

/// Multilinear extension of `μ^d` to chains.
pub fn mu_chains<C: AInfty>(c: &C, inputs: &[Chain<C::Gen>]) -> Chain<C::Gen> {
    expand_multilinear(inputs, |w| c.mu(w))
}

/// Outgoing generators per object, used to enumerate composable words.
pub struct Adjacency<G> {
    outgoing: Vec<Vec<G>>,
}

impl<G: Clone> Adjacency<G> {
    pub fn new<C: AInfty<Gen = G>>(c: &C) -> Self {
        Self::with_filter(c, |_| true)
    }

    pub fn with_filter<C: AInfty<Gen = G>>(c: &C, keep: impl Fn(&G) -> bool) -> Self {
        let n = c.objects().len();
        let mut outgoing = vec![Vec::new(); n];
        for (x, out) in outgoing.iter_mut().enumerate() {
            for y in 0..n {
                out.extend(c.hom_basis(x, y).into_iter().filter(|g| keep(g)));
            }
        }
        Adjacency { outgoing }
    }

    pub fn outgoing(&self, x: ObjIdx) -> &[G] {
        &self.outgoing[x]
    }

    pub fn all(&self) -> impl Iterator<Item = &G> {
        self.outgoing.iter().flatten()
    }

    /// Calls `visit` on every composable word of length `d`.
    pub fn for_each_word<C: AInfty<Gen = G>>(&self, c: &C, d: usize, mut visit: impl FnMut(&[G])) {
        if d == 0 {
            return;
        }
        let mut buf: Vec<Option<G>> = vec![None; d];
        let mut word: Vec<G> = Vec::with_capacity(d);
        for start in 0..self.outgoing.len() {
            self.extend(c, start, d, &mut buf, &mut word, &mut visit);
        }
    }

    fn extend<C: AInfty<Gen = G>>(
        &self,
        c: &C,
        at: ObjIdx,
        remaining: usize,
        buf: &mut Vec<Option<G>>,
        word: &mut Vec<G>,
        visit: &mut impl FnMut(&[G]),
    ) {
        if remaining == 0 {
            word.clear();
            word.extend(buf.iter().map(|g| g.clone().expect("filled")));
            visit(word);
            return;
        }
        for g in &self.outgoing[at] {
            buf[remaining - 1] = Some(g.clone());
            let next = c.target(g);
            self.extend(c, next, remaining - 1, buf, word, visit);
        }
    }

    /// Calls `visit` on every word `(γ_d, …, γ_1)` that closes up cyclically.
    pub fn for_each_cyclic_word<C: AInfty<Gen = G>>(
        &self,
        c: &C,
        d: usize,
        mut visit: impl FnMut(&[G]),
    ) {
        self.for_each_word(c, d, |w| {
            if c.target(&w[0]) == c.source(&w[w.len() - 1]) {
                visit(w);
            }
        });
    }
}

/// Set of degrees occurring in a basis.
pub fn degrees_of<C: AInfty>(c: &C, basis: &[C::Gen]) -> BTreeSet<i64> {
    basis.iter().map(|g| c.degree(g)).collect()
}
