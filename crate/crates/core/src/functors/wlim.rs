//! Homotopy limit of the constant tower `… → C → C` of identity maps, with
//! eventually constant sequences.
//!
//! A morphism is a sequence `(γ^n, η^n)` with `η^n` one degree lower than the
//! element. With stabilization bound `N`, `Γ(m, γ)` for `m < N` is the
//! sequence with `γ` in slot `m` only, `Γ(N, γ)` has `γ` in every slot from
//! `N` on, and `H(m, γ)` for `m < N` has `η^m = γ`.

use std::fmt;

use num_rational::BigRational;

use super::AInftyFunctor;
use crate::category::{AInfty, ObjIdx};
use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::filtration::WeightVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    Gamma,
    Eta,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LimGen<G> {
    pub part: Part,
    pub slot: usize,
    pub base: G,
}

impl<G: fmt::Debug> fmt::Debug for LimGen<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = match self.part {
            Part::Gamma => 'G',
            Part::Eta => 'H',
        };
        write!(f, "{p}{}:{:?}", self.slot, self.base)
    }
}

pub struct WLim<'a, C: AInfty> {
    base: &'a C,
    bound: usize,
    finite_only: bool,
}

pub fn build_wlim<C: AInfty>(c: &C, stabilization_bound: usize) -> Result<WLim<'_, C>> {
    if stabilization_bound == 0 {
        return Err(Error::Malformed(
            "stabilization bound must be at least 1".into(),
        ));
    }
    Ok(WLim {
        base: c,
        bound: stabilization_bound,
        finite_only: false,
    })
}

/// Sequences whose stable value has weight zero at every stop.
pub fn finite_intersection_sub_wlim<C: AInfty>(
    c: &C,
    stabilization_bound: usize,
) -> Result<WLim<'_, C>> {
    let mut w = build_wlim(c, stabilization_bound)?;
    w.finite_only = true;
    Ok(w)
}

impl<'a, C: AInfty> WLim<'a, C> {
    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn base(&self) -> &'a C {
        self.base
    }

    fn gamma(&self, slot: usize, base: C::Gen) -> LimGen<C::Gen> {
        LimGen {
            part: Part::Gamma,
            slot,
            base,
        }
    }

    fn eta(&self, slot: usize, base: C::Gen) -> LimGen<C::Gen> {
        LimGen {
            part: Part::Eta,
            slot,
            base,
        }
    }

    fn admits(&self, g: &LimGen<C::Gen>) -> bool {
        !(self.finite_only
            && g.part == Part::Gamma
            && g.slot == self.bound
            && !self.base.weights(&g.base).is_zero())
    }

    fn lift(&self, part: Part, slot: usize, c: Chain<C::Gen>) -> Chain<LimGen<C::Gen>> {
        c.into_iter()
            .map(|base| LimGen { part, slot, base })
            .collect()
    }

    fn differential(&self, g: &LimGen<C::Gen>) -> Chain<LimGen<C::Gen>> {
        let d = self.base.mu(std::slice::from_ref(&g.base));
        let mut out = self.lift(g.part, g.slot, d);
        if g.part == Part::Gamma {
            if g.slot < self.bound {
                out.toggle(self.eta(g.slot, g.base.clone()));
            }
            if g.slot >= 2 {
                out.toggle(self.eta(g.slot - 1, g.base.clone()));
            }
        }
        out
    }
}

impl<'a, C: AInfty> AInfty for WLim<'a, C> {
    type Gen = LimGen<C::Gen>;

    fn objects(&self) -> &[String] {
        self.base.objects()
    }
    fn stops(&self) -> &[String] {
        self.base.stops()
    }
    fn source(&self, g: &Self::Gen) -> ObjIdx {
        self.base.source(&g.base)
    }
    fn target(&self, g: &Self::Gen) -> ObjIdx {
        self.base.target(&g.base)
    }
    fn degree(&self, g: &Self::Gen) -> i64 {
        self.base.degree(&g.base) + i64::from(g.part == Part::Eta)
    }
    fn weights(&self, g: &Self::Gen) -> WeightVector {
        self.base.weights(&g.base)
    }
    fn action(&self, g: &Self::Gen) -> BigRational {
        self.base.action(&g.base)
    }
    fn name(&self, g: &Self::Gen) -> String {
        let p = match g.part {
            Part::Gamma => 'G',
            Part::Eta => 'H',
        };
        format!("{p}{}:{}", g.slot, self.base.name(&g.base))
    }
    fn max_arity(&self) -> usize {
        self.base.max_arity()
    }
    fn active_arities(&self) -> Vec<usize> {
        let mut a = self.base.active_arities();
        if !a.contains(&1) {
            a.insert(0, 1);
        }
        a
    }
    fn mu(&self, word: &[Self::Gen]) -> Chain<Self::Gen> {
        if word.len() == 1 {
            return self.differential(&word[0]);
        }
        if word.len() > self.max_arity() {
            return Chain::zero();
        }
        let bases: Vec<C::Gen> = word.iter().map(|g| g.base.clone()).collect();
        let etas: Vec<usize> = (0..word.len())
            .filter(|&i| word[i].part == Part::Eta)
            .collect();
        match etas.as_slice() {
            [] => {
                let n = word[0].slot;
                if word.iter().all(|g| g.slot == n) {
                    self.lift(Part::Gamma, n, self.base.mu(&bases))
                } else {
                    Chain::zero()
                }
            }
            [i] => {
                let n = word[*i].slot;
                let above = word[..*i].iter().all(|g| g.slot == n + 1);
                let below = word[*i + 1..].iter().all(|g| g.slot == n);
                if above && below {
                    self.lift(Part::Eta, n, self.base.mu(&bases))
                } else {
                    Chain::zero()
                }
            }
            _ => Chain::zero(),
        }
    }
    fn hom_basis(&self, x: ObjIdx, y: ObjIdx) -> Vec<Self::Gen> {
        let mut out = Vec::new();
        for g in self.base.hom_basis(x, y) {
            for n in 1..=self.bound {
                let lg = self.gamma(n, g.clone());
                if self.admits(&lg) {
                    out.push(lg);
                }
            }
            for n in 1..self.bound {
                out.push(self.eta(n, g.clone()));
            }
        }
        out
    }
}

/// The strict functor sending `γ` to the constant sequence `((γ, 0), (γ, 0), …)`.
pub fn strict_inclusion<C: AInfty>(
    c: &C,
    w: &WLim<'_, C>,
) -> AInftyFunctor<C::Gen, LimGen<C::Gen>> {
    let n = c.objects().len();
    let mut f = AInftyFunctor::new((0..n).collect(), n);
    for x in 0..n {
        for y in 0..n {
            for g in c.hom_basis(x, y) {
                let image: Chain<_> = (1..=w.bound())
                    .map(|slot| LimGen {
                        part: Part::Gamma,
                        slot,
                        base: g.clone(),
                    })
                    .collect();
                f.set(vec![g], image);
            }
        }
    }
    f
}

/// An eventually constant sequence `(γ^n, η^n)` given by its first entries and
/// the stable value `γ^∞` (with `η^∞ = 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitSequence<G: Ord> {
    pub pairs: Vec<(Chain<G>, Chain<G>)>,
    pub tail: Chain<G>,
}

impl<G: Clone + Ord> LimitSequence<G> {
    pub fn constant(tail: Chain<G>) -> Self {
        LimitSequence {
            pairs: Vec::new(),
            tail,
        }
    }

    /// Basis expansion for stabilization bound `n`; sequences that only become
    /// constant after slot `n` are rejected.
    pub fn to_chain(&self, n: usize) -> Result<Chain<LimGen<G>>> {
        if self.pairs.len() >= n {
            return Err(Error::Malformed(format!(
                "sequence with {} explicit entries exceeds stabilization bound {n}",
                self.pairs.len()
            )));
        }
        let mut out = Chain::zero();
        let lift = |part, slot, c: &Chain<G>| -> Chain<LimGen<G>> {
            c.iter()
                .map(|b| LimGen {
                    part,
                    slot,
                    base: b.clone(),
                })
                .collect()
        };
        for slot in 1..n {
            let gamma = self.pairs.get(slot - 1).map_or(&self.tail, |p| &p.0);
            out.add_assign(&lift(Part::Gamma, slot, gamma));
            if let Some((_, eta)) = self.pairs.get(slot - 1) {
                out.add_assign(&lift(Part::Eta, slot, eta));
            }
        }
        out.add_assign(&lift(Part::Gamma, n, &self.tail));
        Ok(out)
    }

    /// Inverse of [`LimitSequence::to_chain`], listing all slots below `n`.
    pub fn from_chain(c: &Chain<LimGen<G>>, n: usize) -> Self {
        let mut pairs = vec![(Chain::zero(), Chain::zero()); n.saturating_sub(1)];
        let mut tail = Chain::zero();
        for g in c {
            match (g.part, g.slot) {
                (Part::Gamma, s) if s == n => tail.toggle(g.base.clone()),
                (Part::Gamma, s) => pairs[s - 1].0.toggle(g.base.clone()),
                (Part::Eta, s) => pairs[s - 1].1.toggle(g.base.clone()),
            }
        }
        LimitSequence { pairs, tail }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{hom_homology, verify_ainfty_relations, Adjacency, GenId};
    use crate::fixtures::{acyclic_pair_category, ex_category, linear_quiver_category};
    use crate::functors::verify_functor_equations;

    #[test]
    fn differential_examples() {
        let c = ex_category();
        let w = build_wlim(&c, 4).unwrap();
        let x = c.gen("x").unwrap();
        let constant = LimitSequence::constant(Chain::single(x))
            .to_chain(4)
            .unwrap();
        let d: Chain<_> = constant.map(|g| w.mu(std::slice::from_ref(g)));
        assert!(d.is_zero());

        let p = acyclic_pair_category();
        let w = build_wlim(&p, 4).unwrap();
        let (u, wg) = (p.gen("u").unwrap(), p.gen("w").unwrap());
        let seq = LimitSequence {
            pairs: vec![(Chain::zero(), Chain::single(u))],
            tail: Chain::zero(),
        };
        let x = seq.to_chain(4).unwrap();
        let d: Chain<_> = x.map(|g| w.mu(std::slice::from_ref(g)));
        let back = LimitSequence::from_chain(&d, 4);
        assert_eq!(back.pairs[0].1, Chain::single(wg));
        assert!(back.pairs[0].0.is_zero() && back.tail.is_zero());
        assert!(back.pairs[1..]
            .iter()
            .all(|(a, b)| a.is_zero() && b.is_zero()));
    }

    #[test]
    fn relations_and_homology() {
        let c = linear_quiver_category(2);
        let w = build_wlim(&c, 4).unwrap();
        assert!(verify_ainfty_relations(&w, 4).is_empty());
        let f = strict_inclusion(&c, &w);
        assert!(verify_functor_equations(&c, &w, &f, 4).is_empty());
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(
                    hom_homology(&c, x, y, -3..=3).unwrap(),
                    hom_homology(&w, x, y, -3..=3).unwrap()
                );
            }
        }
    }

    #[test]
    fn finite_part() {
        let c = linear_quiver_category(2);
        let full = build_wlim(&c, 3).unwrap();
        let sub = finite_intersection_sub_wlim(&c, 3).unwrap();
        assert_eq!(
            Adjacency::new(&full).all().count(),
            Adjacency::new(&sub).all().count()
        );
        let seq = LimitSequence::constant(Chain::single(c.gen("a").unwrap()));
        assert!(seq.to_chain(3).is_ok());
        let long: LimitSequence<GenId> = LimitSequence {
            pairs: vec![(Chain::zero(), Chain::zero()); 3],
            tail: Chain::zero(),
        };
        assert!(long.to_chain(3).is_err());
    }
}
