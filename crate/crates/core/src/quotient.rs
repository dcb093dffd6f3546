//! Quotients `A/B` of an A∞ category by a full subcategory.
//!
//! A morphism of the quotient is a composable word `γ^k ⊗ … ⊗ γ^0` of `A`
//! whose `k` interior objects lie in `B`, stored with `γ^k` first. It has
//! degree `Σ deg γ^i − k`. The differential is the bar differential, and
//! `μ^d` for `d ≥ 2` applies one operation of `A` to every contiguous block of
//! the concatenated inputs that meets all of them, keeping the rest in place.
//! For inputs of length zero this is the operation of `A`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::RangeInclusive;

use num_rational::BigRational;
use num_traits::Zero;

use crate::category::{AInfty, AInftyStructure, Adjacency, ObjIdx, TruncatedComplex};
use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::filtration::WeightVector;
use crate::functors::AInftyFunctor;
use crate::report::HomologyTable;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuotientWord<G>(pub Vec<G>);

impl<G> QuotientWord<G> {
    /// Number `k` of objects of `B` the word passes through.
    pub fn k(&self) -> usize {
        self.0.len() - 1
    }

    pub fn entries(&self) -> &[G] {
        &self.0
    }
}

impl<G: fmt::Debug> fmt::Debug for QuotientWord<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|g| format!("{g:?}")).collect();
        write!(f, "{}", parts.join("|"))
    }
}

/// The quotient with homs restricted to words with `k ≤ max_word_length`;
/// operations are computed without truncation.
pub struct QuotientCategory<'a, A: AInfty> {
    a: &'a A,
    in_b: Vec<bool>,
    max_word_length: usize,
}

impl<'a, A: AInfty> QuotientCategory<'a, A> {
    pub fn new(a: &'a A, b: &[ObjIdx], max_word_length: usize) -> Result<Self> {
        let mut in_b = vec![false; a.objects().len()];
        for &x in b {
            if x >= in_b.len() {
                return Err(Error::UnknownObject(x.to_string()));
            }
            in_b[x] = true;
        }
        Ok(QuotientCategory {
            a,
            in_b,
            max_word_length,
        })
    }

    pub fn named(a: &'a A, b: &[&str], max_word_length: usize) -> Result<Self> {
        let ids = b
            .iter()
            .map(|n| {
                a.object_index(n)
                    .ok_or_else(|| Error::UnknownObject((*n).to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(a, &ids, max_word_length)
    }

    pub fn base(&self) -> &'a A {
        self.a
    }

    pub fn max_word_length(&self) -> usize {
        self.max_word_length
    }

    pub fn subcategory(&self) -> Vec<ObjIdx> {
        (0..self.in_b.len()).filter(|&x| self.in_b[x]).collect()
    }

    pub fn with_max_word_length(&self, max_word_length: usize) -> Self {
        QuotientCategory {
            a: self.a,
            in_b: self.in_b.clone(),
            max_word_length,
        }
    }

    pub fn word(&self, g: A::Gen) -> QuotientWord<A::Gen> {
        QuotientWord(vec![g])
    }

    /// Words from `x` to `y` with at most `max_k` interior objects.
    pub fn words(&self, x: ObjIdx, y: ObjIdx, max_k: usize) -> Vec<QuotientWord<A::Gen>> {
        let adj = Adjacency::new(self.a);
        let mut out = Vec::new();
        let mut stack: Vec<A::Gen> = Vec::new();
        self.extend(&adj, x, y, max_k, &mut stack, &mut out);
        out.sort_by(|p, q| (p.0.len(), p).cmp(&(q.0.len(), q)));
        out
    }

    fn extend(
        &self,
        adj: &Adjacency<A::Gen>,
        at: ObjIdx,
        y: ObjIdx,
        max_k: usize,
        stack: &mut Vec<A::Gen>,
        out: &mut Vec<QuotientWord<A::Gen>>,
    ) {
        for g in adj.outgoing(at) {
            let t = self.a.target(g);
            stack.push(g.clone());
            if t == y {
                out.push(QuotientWord(stack.iter().rev().cloned().collect()));
            }
            if self.in_b[t] && stack.len() <= max_k {
                self.extend(adj, t, y, max_k, stack, out);
            }
            stack.pop();
        }
    }
}

impl<'a, A: AInfty> AInfty for QuotientCategory<'a, A> {
    type Gen = QuotientWord<A::Gen>;

    fn objects(&self) -> &[String] {
        self.a.objects()
    }
    fn stops(&self) -> &[String] {
        self.a.stops()
    }
    fn source(&self, g: &Self::Gen) -> ObjIdx {
        self.a.source(g.0.last().expect("nonempty word"))
    }
    fn target(&self, g: &Self::Gen) -> ObjIdx {
        self.a.target(&g.0[0])
    }
    fn degree(&self, g: &Self::Gen) -> i64 {
        g.0.iter().map(|x| self.a.degree(x)).sum::<i64>() - g.k() as i64
    }
    fn weights(&self, g: &Self::Gen) -> WeightVector {
        let mut w = WeightVector::zero(self.a.stops().len());
        for x in &g.0 {
            w.add_assign(&self.a.weights(x));
        }
        w
    }
    fn action(&self, g: &Self::Gen) -> BigRational {
        g.0.iter()
            .fold(BigRational::zero(), |acc, x| acc + self.a.action(x))
    }
    fn name(&self, g: &Self::Gen) -> String {
        if g.0.len() == 1 {
            return self.a.name(&g.0[0]);
        }
        let parts: Vec<String> = g.0.iter().map(|x| self.a.name(x)).collect();
        format!("w:{}", parts.join("|"))
    }
    fn max_arity(&self) -> usize {
        self.a.max_arity()
    }
    fn active_arities(&self) -> Vec<usize> {
        let top = self.a.active_arities().into_iter().max().unwrap_or(0);
        (1..=top).collect()
    }
    fn mu(&self, word: &[Self::Gen]) -> Chain<Self::Gen> {
        let d = word.len();
        if d > self.max_arity() {
            return Chain::zero();
        }
        let flat: Vec<A::Gen> = word.iter().flat_map(|w| w.0.iter().cloned()).collect();
        let n = flat.len();
        // Blocks start inside the first input and end inside the last one.
        let (first_len, last_len) = (word[0].0.len(), word[d - 1].0.len());
        let (start_max, end_min) = if d == 1 {
            (n - 1, 1)
        } else {
            (first_len - 1, n - last_len + 1)
        };
        let active = self.a.active_arities();
        let mut out = Chain::zero();
        for a in 0..=start_max {
            for b in end_min.max(a + 1)..=n {
                if !active.contains(&(b - a)) {
                    continue;
                }
                for y in self.a.mu(&flat[a..b]) {
                    let mut v = Vec::with_capacity(n + 1 - (b - a));
                    v.extend_from_slice(&flat[..a]);
                    v.push(y);
                    v.extend_from_slice(&flat[b..]);
                    out.toggle(QuotientWord(v));
                }
            }
        }
        out
    }
    fn hom_basis(&self, x: ObjIdx, y: ObjIdx) -> Vec<Self::Gen> {
        self.words(x, y, self.max_word_length)
    }
    fn hom_basis_extended(&self, x: ObjIdx, y: ObjIdx) -> Vec<Self::Gen> {
        self.words(x, y, self.max_word_length + 1)
    }
    fn unit(&self, x: ObjIdx) -> Option<Self::Gen> {
        self.a.unit(x).map(|e| QuotientWord(vec![e]))
    }
}

/// Materializes `A/B` with words of at most `max_word_length` interior
/// objects; outputs beyond the truncation are dropped. Morphisms of `A` keep
/// their names and order, so `A/∅` serializes exactly like `A`.
pub fn build_quotient(
    a: &AInftyStructure,
    b: &[ObjIdx],
    max_word_length: usize,
) -> Result<AInftyStructure> {
    let q = QuotientCategory::new(a, b, max_word_length)?;
    let mut basis: Vec<QuotientWord<_>> = a.ids().map(|g| QuotientWord(vec![g])).collect();
    let n = a.objects().len();
    for x in 0..n {
        for y in 0..n {
            basis.extend(q.hom_basis(x, y).into_iter().filter(|w| w.k() > 0));
        }
    }
    let mut names = BTreeSet::new();
    for w in &basis {
        let name = q.name(w);
        if !names.insert(name.clone()) {
            return Err(Error::DuplicateName(name));
        }
    }
    let (s, _) = AInftyStructure::materialize(&q, &basis, |w| w.k() <= max_word_length);
    Ok(s)
}

/// The strict functor `A → A/B` sending a morphism to the word of length one.
pub fn canonical_functor<A: AInfty>(
    a: &A,
    _q: &QuotientCategory<'_, A>,
) -> AInftyFunctor<A::Gen, QuotientWord<A::Gen>> {
    let n = a.objects().len();
    let mut f = AInftyFunctor::new((0..n).collect(), n);
    for g in Adjacency::new(a).all() {
        f.set(
            vec![g.clone()],
            Chain::single(QuotientWord(vec![g.clone()])),
        );
    }
    f
}

/// For each object of `b`, whether its unit is exact in `hom(L, L)`.
pub fn check_contractible_subcategory<C: AInfty>(
    c: &C,
    b: &[ObjIdx],
) -> Result<Vec<(ObjIdx, bool)>> {
    let mut out = Vec::new();
    for &x in b {
        let e = c
            .unit(x)
            .ok_or_else(|| Error::UnitNotFound(c.objects()[x].clone()))?;
        let cx = TruncatedComplex::of_hom(c, x, x);
        let exact = cx.boundary_echelon(0).contains(&Chain::single(e));
        out.push((x, exact));
    }
    Ok(out)
}

/// `H*(hom_{A/B}(x, y))` at the quotient's word length, with degrees that
/// changed since one word length less marked unstable.
pub fn quotient_hom_homology<A: AInfty>(
    q: &QuotientCategory<'_, A>,
    x: ObjIdx,
    y: ObjIdx,
    window: RangeInclusive<i64>,
) -> Result<HomologyTable> {
    let fine = TruncatedComplex::of_hom(q, x, y).homology(window.clone())?;
    let coarse = match q.max_word_length() {
        0 => window.clone().map(|k| (k, 0)).collect(),
        k => {
            let c = q.with_max_word_length(k - 1);
            let h = TruncatedComplex::of_hom(&c, x, y).homology(window)?;
            h
        }
    };
    Ok(HomologyTable::compare(&coarse, &fine))
}

/// Words of the quotient on which `μ¹∘μ¹` is nonzero, skipping words whose
/// differential leaves the truncation. Returns the violations and the number
/// of skipped words.
pub fn verify_bar_square_zero<A: AInfty>(
    q: &QuotientCategory<'_, A>,
) -> (Vec<crate::report::Violation>, usize) {
    let mut out = Vec::new();
    let mut skipped = 0;
    let mut cache: HashMap<QuotientWord<A::Gen>, Chain<QuotientWord<A::Gen>>> = HashMap::new();
    let n = q.objects().len();
    for x in 0..n {
        for y in 0..n {
            for w in q.hom_basis(x, y) {
                let dw = q.mu(std::slice::from_ref(&w));
                if dw.iter().any(|v| v.k() > q.max_word_length()) {
                    skipped += 1;
                    continue;
                }
                let mut dd = Chain::zero();
                for v in &dw {
                    let image = cache
                        .entry(v.clone())
                        .or_insert_with(|| q.mu(std::slice::from_ref(v)));
                    dd.add_assign(image);
                }
                if !dd.is_zero() {
                    out.push(crate::report::Violation::new(q.name(&w), "μ¹μ¹ is nonzero"));
                }
            }
        }
    }
    (out, skipped)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::io::to_json_string;
    use crate::category::{hom_homology, verify_ainfty_relations};
    use crate::filtration::verify_filtration_subadditivity;
    use crate::fixtures::{
        contractible_pair_category, linear_quiver_category, twisted_a3_variants, unit_category,
    };
    use crate::functors::verify_functor_equations;

    #[test]
    fn empty_subcategory_is_identity() {
        for c in [linear_quiver_category(3), unit_category()] {
            let q = build_quotient(&c, &[], 3).unwrap();
            assert_eq!(to_json_string(&q), to_json_string(&c));
        }
        let v = &twisted_a3_variants().unwrap()[2];
        let q = build_quotient(&v.twisted, &[], 2).unwrap();
        assert_eq!(to_json_string(&q), to_json_string(&v.twisted));
    }

    #[test]
    fn unit_category_mod_itself() {
        let c = unit_category();
        let q = QuotientCategory::new(&c, &[0], 7).unwrap();
        let e = c.gen("e").unwrap();
        for len in 1..7 {
            let w = QuotientWord(vec![e; len]);
            let expected = if len % 2 == 0 {
                Chain::single(QuotientWord(vec![e; len - 1]))
            } else {
                Chain::zero()
            };
            assert_eq!(q.mu(std::slice::from_ref(&w)), expected);
        }
        let t = quotient_hom_homology(&q, 0, 0, -5..=0).unwrap();
        assert!(t.dims().values().all(|&d| d == 0));
        assert!(t.all_stable());
        assert_eq!(
            check_contractible_subcategory(&q, &[0]).unwrap(),
            vec![(0, true)]
        );
        assert_eq!(
            check_contractible_subcategory(&c, &[0]).unwrap(),
            vec![(0, false)]
        );
    }

    #[test]
    fn a2_mod_target() {
        let c = linear_quiver_category(2);
        let q = QuotientCategory::named(&c, &["L1"], 6).unwrap();
        let (a, e1) = (c.gen("a").unwrap(), c.gen("e1").unwrap());
        let ea = QuotientWord(vec![e1, a]);
        assert_eq!(q.name(&ea), "w:e1|a");
        assert_eq!(q.degree(&ea), -1);
        assert_eq!(
            q.mu(std::slice::from_ref(&ea)),
            Chain::single(QuotientWord(vec![a]))
        );
        let t = quotient_hom_homology(&q, 0, 1, -5..=0).unwrap();
        assert!(t.dims().values().all(|&d| d == 0));
        assert_eq!(hom_homology(&q, 0, 0, -5..=0).unwrap()[&0], 1);

        let f = canonical_functor(&c, &q);
        assert!(verify_functor_equations(&c, &q, &f, 3).is_empty());
        let src = TruncatedComplex::of_hom(&c, 0, 1);
        let tgt = TruncatedComplex::of_hom(&q, 0, 1);
        let r = crate::category::induced_homology_rank(
            &src,
            &tgt,
            |g| f.component(std::slice::from_ref(g)),
            0,
        );
        assert_eq!(r, 0);
    }

    #[test]
    fn relations_hold() {
        let c = linear_quiver_category(3);
        for b in [vec![1], vec![0, 2], vec![2]] {
            let q = QuotientCategory::new(&c, &b, 3).unwrap();
            assert!(verify_ainfty_relations(&q, 3).is_empty());
            assert!(verify_filtration_subadditivity(&q, 3).is_empty());
            let (bad, _) = verify_bar_square_zero(&q);
            assert!(bad.is_empty());
        }
        for v in twisted_a3_variants().unwrap() {
            let q = QuotientCategory::new(&v.twisted, &[1], 2).unwrap();
            assert!(verify_ainfty_relations(&q, 4).is_empty(), "{}", v.name);
        }
    }

    #[test]
    fn contractible_pair() {
        let c = contractible_pair_category();
        assert_eq!(
            check_contractible_subcategory(&c, &[0]).unwrap(),
            vec![(0, true)]
        );
        let l = linear_quiver_category(2);
        let mut b = crate::StructureBuilder::new(&["P"], &[]);
        b.add("x", "P", "P", 0).unwrap();
        let no_unit = b.build().unwrap();
        assert!(matches!(
            check_contractible_subcategory(&no_unit, &[0]),
            Err(Error::UnitNotFound(_))
        ));
        assert_eq!(
            check_contractible_subcategory(&l, &[0, 1]).unwrap(),
            vec![(0, false), (1, false)]
        );
    }
}
