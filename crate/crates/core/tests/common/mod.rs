#![allow(dead_code)]

use std::collections::HashMap;

use ainfty::category::Adjacency;
use ainfty::fixtures::{
    contractible_pair_category, disk_with_stops_category, ex_category, graded_a3_category,
    linear_quiver_category, retraction_toy, twisted_a3_variants, unit_category, DiskModel,
};
use ainfty::functors::{homotopy_equation_sum, AInftyFunctor};
use ainfty::hochschild::{
    cyclic_words, hochschild_differential, shifted_action, HochschildWord, ShiftedActionValue,
};
use ainfty::{AInfty, AInftyStructure, Chain};
use num_rational::BigRational;

/// Linear quivers up to five objects, disks up to four stops and winding two,
/// and the three gauge twists.
pub fn shipped_fixtures() -> Vec<(String, AInftyStructure)> {
    let mut out = Vec::new();
    for n in 1..=5 {
        out.push((format!("a{n}"), linear_quiver_category(n)));
    }
    for s in 2..=4 {
        for w in 1..=2 {
            let m = DiskModel::necklace(s, w);
            out.push((
                format!("disk{s}w{w}"),
                disk_with_stops_category(&m).unwrap(),
            ));
        }
    }
    for v in twisted_a3_variants().unwrap() {
        out.push((v.name.to_string(), v.twisted));
    }
    out
}

/// Shipped fixtures together with the small hand-made categories.
pub fn all_fixtures() -> Vec<(String, AInftyStructure)> {
    let mut out = shipped_fixtures();
    out.push(("unit".into(), unit_category()));
    out.push(("ex".into(), ex_category()));
    out.push(("graded-a3".into(), graded_a3_category()));
    out.push(("toy".into(), retraction_toy().category));
    out.push(("contractible-pair".into(), contractible_pair_category()));
    out
}

/// Solves the homotopy equation for the second functor, arity by arity.
pub fn homotopy_target<C: AInfty>(
    c: &C,
    fa: &AInftyFunctor<C::Gen, C::Gen>,
    h: &AInftyFunctor<C::Gen, C::Gen>,
    max_d: usize,
) -> AInftyFunctor<C::Gen, C::Gen> {
    let mut fb = AInftyFunctor::new(fa.object_map.clone(), c.objects().len());
    let adj = Adjacency::new(c);
    for d in 1..=max_d {
        let mut words = Vec::new();
        adj.for_each_word(c, d, |w| words.push(w.to_vec()));
        for w in words {
            let out = homotopy_equation_sum(c, c, fa, &fb, h, &w);
            if !out.is_zero() {
                fb.set(w, out);
            }
        }
    }
    fb
}

#[derive(Debug, PartialEq, Eq)]
pub enum CosetAnswer {
    Value(ShiftedActionValue),
    Unrepresentable,
    TooLarge(usize),
}

/// Independent basis of `δ(words of length ≤ k + 1)` in one degree, used to
/// list whole cosets.
pub struct CosetOracle<G: Ord> {
    k: usize,
    rows: Vec<Chain<HochschildWord<G>>>,
}

impl<G: Clone + Ord + std::hash::Hash + std::fmt::Debug> CosetOracle<G> {
    pub fn new<C: AInfty<Gen = G>>(c: &C, k: usize, degree: i64) -> Self {
        let mut rows: Vec<Chain<HochschildWord<G>>> = Vec::new();
        for v in cyclic_words(c, 1..=k + 1) {
            if v.degree(c) != degree - 1 {
                continue;
            }
            let mut b = hochschild_differential(c, &v);
            for row in &rows {
                let pivot = row.iter().next_back().expect("nonzero row");
                if b.contains(pivot) {
                    b.add_assign(row);
                }
            }
            if !b.is_zero() {
                let pivot = b.iter().next_back().unwrap().clone();
                for row in rows.iter_mut() {
                    if row.contains(&pivot) {
                        row.add_assign(&b);
                    }
                }
                rows.push(b);
            }
        }
        CosetOracle { k, rows }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Minimum shifted action over every element of the coset of `x` made only
    /// of words of length ≤ k. Words are indexed in ascending shifted action,
    /// so the action of a chain is that of its highest set bit.
    pub fn class_action<C: AInfty<Gen = G>>(
        &self,
        c: &C,
        x: &Chain<HochschildWord<G>>,
        epsilon: &BigRational,
        max_rank: usize,
    ) -> CosetAnswer {
        if self.rows.len() > max_rank {
            return CosetAnswer::TooLarge(self.rows.len());
        }
        let mut words: Vec<HochschildWord<G>> = x
            .iter()
            .chain(self.rows.iter().flat_map(|r| r.iter()))
            .cloned()
            .collect();
        words.sort();
        words.dedup();
        let mut keyed: Vec<(ShiftedActionValue, HochschildWord<G>)> = words
            .into_iter()
            .map(|w| (shifted_action(c, &w, epsilon), w))
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        let index: HashMap<&HochschildWord<G>, usize> =
            keyed.iter().enumerate().map(|(i, (_, w))| (w, i)).collect();
        let blocks = keyed.len().div_ceil(64);
        let bits = |ch: &Chain<HochschildWord<G>>| {
            let mut v = vec![0u64; blocks];
            for w in ch {
                let i = index[w];
                v[i / 64] ^= 1 << (i % 64);
            }
            v
        };
        let mut long = vec![0u64; blocks];
        for (i, (_, w)) in keyed.iter().enumerate() {
            if w.len() > self.k {
                long[i / 64] |= 1 << (i % 64);
            }
        }
        let rows: Vec<Vec<u64>> = self.rows.iter().map(bits).collect();
        let mut y = bits(x);
        let mut best: Option<Option<usize>> = None;
        // Gray code order: each step adds one row.
        for i in 0u64..(1u64 << rows.len()) {
            if i > 0 {
                for (a, b) in y.iter_mut().zip(&rows[i.trailing_zeros() as usize]) {
                    *a ^= b;
                }
            }
            if y.iter().zip(&long).any(|(a, b)| a & b != 0) {
                continue;
            }
            let top = (0..blocks)
                .rev()
                .find(|&j| y[j] != 0)
                .map(|j| j * 64 + 63 - y[j].leading_zeros() as usize);
            if best.is_none_or(|b| top < b) {
                best = Some(top);
            }
        }
        match best {
            None => CosetAnswer::Unrepresentable,
            Some(None) => CosetAnswer::Value(ShiftedActionValue::NegInfinity),
            Some(Some(i)) => CosetAnswer::Value(keyed[i].0.clone()),
        }
    }
}
