//! A∞ functors, homotopies between them, and the homotopy-limit category.

pub mod io;
mod wlim;

use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;

use crate::category::{word_label, AInfty, AInftyStructure, Adjacency, GaugeData, GenId, ObjIdx};
use crate::chain::{expand_multilinear, Chain};
use crate::error::{Error, Result};
use crate::report::Violation;
use crate::words::{blocks, for_each_partition, splice};

pub use wlim::{
    build_wlim, finite_intersection_sub_wlim, strict_inclusion, LimGen, LimitSequence, Part, WLim,
};

/// Components `F^d` of an A∞ functor on composable source words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInftyFunctor<G: Ord + Hash, H: Ord> {
    pub object_map: Vec<ObjIdx>,
    /// Number of objects of the target category.
    pub target_objects: usize,
    components: HashMap<Vec<G>, Chain<H>>,
}

impl<G: Clone + Ord + Hash, H: Clone + Ord> AInftyFunctor<G, H> {
    pub fn new(object_map: Vec<ObjIdx>, target_objects: usize) -> Self {
        AInftyFunctor {
            object_map,
            target_objects,
            components: HashMap::new(),
        }
    }

    pub fn set(&mut self, word: Vec<G>, out: Chain<H>) {
        if out.is_zero() {
            self.components.remove(&word);
        } else {
            self.components.insert(word, out);
        }
    }

    pub fn component(&self, word: &[G]) -> Chain<H> {
        self.components.get(word).cloned().unwrap_or_default()
    }

    pub fn apply_chains(&self, inputs: &[Chain<G>]) -> Chain<H> {
        expand_multilinear(inputs, |w| self.component(w))
    }

    /// Arities carrying a nonzero component.
    pub fn arities(&self) -> BTreeSet<usize> {
        self.components.keys().map(|k| k.len()).collect()
    }

    pub fn max_arity(&self) -> usize {
        self.arities().into_iter().max().unwrap_or(0)
    }

    /// Nonzero components sorted by word.
    pub fn entries(&self) -> Vec<(&Vec<G>, &Chain<H>)> {
        let mut v: Vec<_> = self.components.iter().collect();
        v.sort_by(|a, b| (a.0.len(), a.0).cmp(&(b.0.len(), b.0)));
        v
    }
}

impl<G: Clone + Ord + Hash> AInftyFunctor<G, G> {
    pub fn identity<C: AInfty<Gen = G>>(c: &C) -> Self {
        let n = c.objects().len();
        let mut f = AInftyFunctor::new((0..n).collect(), n);
        for g in Adjacency::new(c).all() {
            f.set(vec![g.clone()], Chain::single(g.clone()));
        }
        f
    }
}

impl AInftyFunctor<GenId, GenId> {
    /// The strict isomorphism `C → gauge_transform(C, g)` with components `g^d`.
    pub fn from_gauge(c: &AInftyStructure, g: &GaugeData) -> Self {
        let mut f = Self::identity(c);
        for (w, out) in g.entries() {
            f.set(w.clone(), out.clone());
        }
        f
    }
}

fn arity_sums(parts: &BTreeSet<usize>, k: usize, d: usize) -> bool {
    // Whether d is a sum of exactly k elements of `parts`.
    let mut reach = vec![false; d + 1];
    reach[0] = true;
    for _ in 0..k {
        let mut next = vec![false; d + 1];
        for (s, _) in reach.iter().enumerate().filter(|(_, r)| **r) {
            for &p in parts {
                if s + p <= d {
                    next[s + p] = true;
                }
            }
        }
        reach = next;
    }
    reach[d]
}

/// Arity-`d` words can only violate the equations if some term can be nonzero.
fn equation_possible(
    d: usize,
    src_active: &[usize],
    tgt_active: &[usize],
    left: &BTreeSet<usize>,
    right: &BTreeSet<usize>,
) -> bool {
    if left.contains(&d) || right.contains(&d) {
        return true;
    }
    let inner = src_active
        .iter()
        .any(|&m| m <= d && (left.contains(&(d + 1 - m)) || right.contains(&(d + 1 - m))));
    let parts: BTreeSet<usize> = left.union(right).copied().collect();
    let outer = tgt_active
        .iter()
        .any(|&k| k <= d && arity_sums(&parts, k, d));
    inner || outer
}

/// Left side of the functor equation minus the right side on one word.
pub fn functor_equation_sum<S: AInfty, T: AInfty>(
    s: &S,
    t: &T,
    f: &AInftyFunctor<S::Gen, T::Gen>,
    w: &[S::Gen],
) -> Chain<T::Gen> {
    let mut out = Chain::zero();
    for (a, m) in blocks(w.len()) {
        for x in s.mu(&w[a..a + m]) {
            out.add_assign(&f.component(&splice(w, a, m, x)));
        }
    }
    for_each_partition(w.len(), |bl| {
        let images: Vec<Chain<T::Gen>> = bl.iter().map(|&(a, b)| f.component(&w[a..b])).collect();
        out.add_assign(&expand_multilinear(&images, |x| t.mu(x)));
    });
    out
}

/// Every composable source word of length at most `max_d` on which the
/// functor equation fails.
pub fn verify_functor_equations<S: AInfty, T: AInfty>(
    s: &S,
    t: &T,
    f: &AInftyFunctor<S::Gen, T::Gen>,
    max_d: usize,
) -> Vec<Violation> {
    let adj = Adjacency::new(s);
    let (sa, ta) = (s.active_arities(), t.active_arities());
    let arities = f.arities();
    let mut out = Vec::new();
    for d in 1..=max_d {
        if !equation_possible(d, &sa, &ta, &arities, &arities) {
            continue;
        }
        adj.for_each_word(s, d, |w| {
            let r = functor_equation_sum(s, t, f, w);
            if !r.is_zero() {
                out.push(Violation::new(
                    word_label(s, w),
                    format!("functor equation leaves {}", chain_label(t, &r)),
                ));
            }
        });
    }
    out
}

pub fn chain_label<C: AInfty>(c: &C, x: &Chain<C::Gen>) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let names: Vec<String> = x.iter().map(|g| c.name(g)).collect();
    names.join(" + ")
}

/// `(G ∘ F)^d = Σ G^k(F(b_k), …, F(b_1))` over all decompositions into blocks,
/// computed on composable source words up to `max_d`.
pub fn compose_functors<S, T, U>(
    s: &S,
    g: &AInftyFunctor<T::Gen, U::Gen>,
    f: &AInftyFunctor<S::Gen, T::Gen>,
    max_d: usize,
) -> Result<AInftyFunctor<S::Gen, U::Gen>>
where
    S: AInfty,
    T: AInfty,
    U: AInfty,
{
    if f.target_objects != g.object_map.len() {
        return Err(Error::SourceTargetMismatch(format!(
            "first functor lands in {} objects, second starts from {}",
            f.target_objects,
            g.object_map.len()
        )));
    }
    let object_map = f.object_map.iter().map(|&x| g.object_map[x]).collect();
    let mut out = AInftyFunctor::new(object_map, g.target_objects);
    let adj = Adjacency::new(s);
    for d in 1..=max_d {
        adj.for_each_word(s, d, |w| {
            let mut acc = Chain::zero();
            for_each_partition(d, |bl| {
                let images: Vec<Chain<T::Gen>> =
                    bl.iter().map(|&(a, b)| f.component(&w[a..b])).collect();
                acc.add_assign(&g.apply_chains(&images));
            });
            out.set(w.to_vec(), acc);
        });
    }
    Ok(out)
}

/// Components `T^d` of a pre-natural transformation, of degree `Σ deg − d`.
pub type PreNaturalTransformation<G, H> = AInftyFunctor<G, H>;

/// `F_β + F_α` minus the two sums of the homotopy equation on one word.
pub fn homotopy_equation_sum<S: AInfty, T: AInfty>(
    s: &S,
    t: &T,
    fa: &AInftyFunctor<S::Gen, T::Gen>,
    fb: &AInftyFunctor<S::Gen, T::Gen>,
    h: &PreNaturalTransformation<S::Gen, T::Gen>,
    w: &[S::Gen],
) -> Chain<T::Gen> {
    let mut out = fa.component(w).add(&fb.component(w));
    for (a, m) in blocks(w.len()) {
        for x in s.mu(&w[a..a + m]) {
            out.add_assign(&h.component(&splice(w, a, m, x)));
        }
    }
    for_each_partition(w.len(), |bl| {
        for r in 0..bl.len() {
            let images: Vec<Chain<T::Gen>> = bl
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| {
                    let part = &w[a..b];
                    match i.cmp(&r) {
                        std::cmp::Ordering::Less => fb.component(part),
                        std::cmp::Ordering::Equal => h.component(part),
                        std::cmp::Ordering::Greater => fa.component(part),
                    }
                })
                .collect();
            out.add_assign(&expand_multilinear(&images, |x| t.mu(x)));
        }
    });
    out
}

/// Every word where `F_β − F_α = dT` fails. Blocks to the left of the `T`
/// block use `F_β`, blocks to its right use `F_α`.
pub fn verify_homotopy<S: AInfty, T: AInfty>(
    s: &S,
    t: &T,
    fa: &AInftyFunctor<S::Gen, T::Gen>,
    fb: &AInftyFunctor<S::Gen, T::Gen>,
    h: &PreNaturalTransformation<S::Gen, T::Gen>,
    max_d: usize,
) -> Vec<Violation> {
    let adj = Adjacency::new(s);
    let (sa, ta) = (s.active_arities(), t.active_arities());
    let functors: BTreeSet<usize> = fa.arities().union(&fb.arities()).copied().collect();
    let homotopy = h.arities();
    let mut out = Vec::new();
    for d in 1..=max_d {
        if !equation_possible(d, &sa, &ta, &functors, &homotopy) {
            continue;
        }
        adj.for_each_word(s, d, |w| {
            let r = homotopy_equation_sum(s, t, fa, fb, h, w);
            if !r.is_zero() {
                out.push(Violation::new(
                    word_label(s, w),
                    format!("homotopy equation leaves {}", chain_label(t, &r)),
                ));
            }
        });
    }
    out
}

/// Checks `F¹μ¹ = μ¹F¹` on every source generator.
pub fn verify_chain_map<S: AInfty, T: AInfty>(
    s: &S,
    t: &T,
    f: &AInftyFunctor<S::Gen, T::Gen>,
) -> Vec<Violation> {
    let mut out = Vec::new();
    for g in Adjacency::new(s).all() {
        let lhs = s
            .mu(std::slice::from_ref(g))
            .map(|x| f.component(std::slice::from_ref(x)));
        let rhs = f
            .component(std::slice::from_ref(g))
            .map(|y| t.mu(std::slice::from_ref(y)));
        if lhs != rhs {
            out.push(Violation::new(s.name(g), "F¹ does not commute with μ¹"));
        }
    }
    out
}

/// Chain map on Hochschild complexes induced by `f`: a block containing `γ_d`
/// (possibly wrapping around) goes through `f` and is placed first, and the
/// remaining entries are cut into consecutive blocks.
pub fn induced_map_on_hochschild<G, H>(f: &AInftyFunctor<G, H>, word: &[G]) -> Chain<Vec<H>>
where
    G: Clone + Ord + Hash,
    H: Clone + Ord + Hash,
{
    let d = word.len();
    let mut out = Chain::zero();
    for tail in 0..d {
        for head in 1..=d - tail {
            let mut block: Vec<G> = word[d - tail..].to_vec();
            block.extend_from_slice(&word[..head]);
            let first = f.component(&block);
            if first.is_zero() {
                continue;
            }
            let rest = &word[head..d - tail];
            let mut emit = |images: Vec<Chain<H>>| {
                for y in first.iter() {
                    let mut chains = vec![Chain::single(y.clone())];
                    chains.extend(images.iter().cloned());
                    out.add_assign(&expand_multilinear(&chains, |w| Chain::single(w.to_vec())));
                }
            };
            if rest.is_empty() {
                emit(Vec::new());
            } else {
                for_each_partition(rest.len(), |bl| {
                    emit(bl.iter().map(|&(a, b)| f.component(&rest[a..b])).collect());
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::gauge_transform;
    use crate::fixtures::{acyclic_pair_category, linear_quiver_category, twisted_a3_variants};

    #[test]
    fn identity_passes() {
        let c = linear_quiver_category(3);
        let id = AInftyFunctor::identity(&c);
        assert!(verify_functor_equations(&c, &c, &id, 5).is_empty());
        assert!(verify_chain_map(&c, &c, &id).is_empty());
    }

    #[test]
    fn gauge_functor_and_inverse() {
        for v in twisted_a3_variants().unwrap() {
            let f = AInftyFunctor::from_gauge(&v.base, &v.gauge);
            assert!(
                verify_functor_equations(&v.base, &v.twisted, &f, 5).is_empty(),
                "{}",
                v.name
            );
            let h = crate::category::gauge_inverse(&v.base, &v.gauge, 5).unwrap();
            let back = gauge_transform(&v.twisted, &h, 4).unwrap();
            assert_eq!(
                crate::category::io::to_json_string(&back),
                crate::category::io::to_json_string(&{
                    let mut b = v.base.to_builder();
                    b.max_arity(4);
                    b.build().unwrap()
                })
            );
            let fi = AInftyFunctor::from_gauge(&v.twisted, &h);
            let comp = compose_functors::<_, AInftyStructure, AInftyStructure>(&v.base, &fi, &f, 5)
                .unwrap();
            assert_eq!(comp, AInftyFunctor::identity(&v.base));
        }
    }

    #[test]
    fn corrupted_functor_has_one_violation() {
        let c = linear_quiver_category(3);
        let mut f = AInftyFunctor::identity(&c);
        f.set(vec![c.gen("ba").unwrap()], Chain::zero());
        let v = verify_functor_equations(&c, &c, &f, 5);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].location, "(b, a)");
    }

    #[test]
    fn homotopies() {
        let c = linear_quiver_category(3);
        let id = AInftyFunctor::identity(&c);
        let zero = AInftyFunctor::new(id.object_map.clone(), 3);
        assert!(verify_homotopy(&c, &c, &id, &id, &zero, 5).is_empty());

        let mut fb = id.clone();
        fb.set(vec![c.gen("ba").unwrap()], Chain::zero());
        let v = verify_homotopy(&c, &c, &id, &fb, &zero, 5);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].location, "(ba)");

        let p = acyclic_pair_category();
        let (u, w) = (p.gen("u").unwrap(), p.gen("w").unwrap());
        let id = AInftyFunctor::identity(&p);
        let zero = AInftyFunctor::new(vec![0], 1);
        let mut t = AInftyFunctor::new(vec![0], 1);
        t.set(vec![w], Chain::single(u));
        assert!(verify_functor_equations(&p, &p, &zero, 5).is_empty());
        assert!(verify_homotopy(&p, &p, &id, &zero, &t, 5).is_empty());
    }

    #[test]
    fn identity_on_hochschild() {
        let c = linear_quiver_category(2);
        let id = AInftyFunctor::identity(&c);
        let (e0, e1) = (c.gen("e0").unwrap(), c.gen("e1").unwrap());
        let w = vec![e0, e0, e0];
        assert_eq!(induced_map_on_hochschild(&id, &w).terms(), vec![w.clone()]);
        let w1 = vec![e1];
        assert_eq!(
            induced_map_on_hochschild(&id, &w1).terms(),
            vec![w1.clone()]
        );
    }
}
