//! Hochschild chains of an A∞ category, their homology, and the shifted-action
//! filtration.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::category::{AInfty, Adjacency, TruncatedComplex};
use crate::chain::{Chain, ChainEchelon};
use crate::error::{Error, Result};
use crate::functors::{induced_map_on_hochschild, AInftyFunctor};
use crate::report::{HomologyTable, Violation};
use crate::words::splice;

/// A cyclically composable word `γ_d ⊗ … ⊗ γ_1`, stored with `γ_d` first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HochschildWord<G>(pub Vec<G>);

impl<G: fmt::Debug> fmt::Debug for HochschildWord<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|g| format!("{g:?}")).collect();
        write!(f, "{}", parts.join("⊗"))
    }
}

impl<G: Clone> HochschildWord<G> {
    pub fn new<C: AInfty<Gen = G>>(c: &C, entries: Vec<G>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Malformed("empty Hochschild word".into()));
        }
        if let Some(position) = crate::category::composability_failure(c, &entries) {
            return Err(Error::NotComposable { position });
        }
        if c.target(&entries[0]) != c.source(&entries[entries.len() - 1]) {
            return Err(Error::NotComposable {
                position: entries.len() - 1,
            });
        }
        Ok(HochschildWord(entries))
    }

    pub fn entries(&self) -> &[G] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree<C: AInfty<Gen = G>>(&self, c: &C) -> i64 {
        self.0.iter().map(|g| c.degree(g)).sum::<i64>() + 1 - self.0.len() as i64
    }

    pub fn label<C: AInfty<Gen = G>>(&self, c: &C) -> String {
        let parts: Vec<String> = self.0.iter().map(|g| c.name(g)).collect();
        parts.join("⊗")
    }
}

pub fn hochschild_chain_label<C: AInfty>(c: &C, x: &Chain<HochschildWord<C::Gen>>) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = x.iter().map(|w| w.label(c)).collect();
    parts.join(" + ")
}

/// `δ` on one word: blocks containing `γ_d` (wrapping around from `γ_1`) put
/// their `μ` output first; the other blocks are replaced in place.
pub fn hochschild_differential<C: AInfty>(
    c: &C,
    w: &HochschildWord<C::Gen>,
) -> Chain<HochschildWord<C::Gen>> {
    let word = &w.0;
    let d = word.len();
    let active = c.active_arities();
    let mut out = Chain::zero();
    for tail in 0..d {
        for head in 1..=d - tail {
            if !active.contains(&(tail + head)) {
                continue;
            }
            let mut block: Vec<C::Gen> = word[d - tail..].to_vec();
            block.extend_from_slice(&word[..head]);
            for y in c.mu(&block) {
                let mut v = Vec::with_capacity(d + 1 - tail - head);
                v.push(y);
                v.extend_from_slice(&word[head..d - tail]);
                out.toggle(HochschildWord(v));
            }
        }
    }
    for s in 1..d {
        for m in 1..=d - s {
            if !active.contains(&m) {
                continue;
            }
            for y in c.mu(&word[s..s + m]) {
                out.toggle(HochschildWord(splice(word, s, m, y)));
            }
        }
    }
    out
}

pub fn hochschild_differential_chain<C: AInfty>(
    c: &C,
    x: &Chain<HochschildWord<C::Gen>>,
) -> Chain<HochschildWord<C::Gen>> {
    x.map(|w| hochschild_differential(c, w))
}

/// All cyclic words of the given lengths.
pub fn cyclic_words<C: AInfty>(
    c: &C,
    lengths: RangeInclusive<usize>,
) -> Vec<HochschildWord<C::Gen>> {
    let adj = Adjacency::new(c);
    let mut out = Vec::new();
    for d in lengths {
        adj.for_each_cyclic_word(c, d, |w| out.push(HochschildWord(w.to_vec())));
    }
    out
}

/// Cyclic words of length at most `max_length`, with those of length
/// `max_length + 1` supplying boundaries.
pub fn hochschild_complex<'a, C: AInfty>(
    c: &'a C,
    max_length: usize,
) -> TruncatedComplex<'a, HochschildWord<C::Gen>> {
    let basis = cyclic_words(c, 1..=max_length);
    let mut extended = basis.clone();
    extended.extend(cyclic_words(c, max_length + 1..=max_length + 1));
    let cache: RefCell<HashMap<HochschildWord<C::Gen>, Chain<HochschildWord<C::Gen>>>> =
        RefCell::new(HashMap::new());
    TruncatedComplex::new(
        basis,
        extended,
        move |w| w.degree(c),
        move |w| {
            if let Some(v) = cache.borrow().get(w) {
                return v.clone();
            }
            let v = hochschild_differential(c, w);
            cache.borrow_mut().insert(w.clone(), v.clone());
            v
        },
    )
}

/// Per-degree Hochschild homology at word length `max_length`; degrees that
/// differ at `max_length - 1` are marked unstable.
pub fn hochschild_homology<C: AInfty>(
    c: &C,
    max_length: usize,
    window: RangeInclusive<i64>,
) -> Result<HomologyTable> {
    if max_length == 0 {
        return Err(Error::Malformed("max_length must be at least 1".into()));
    }
    let coarse = hochschild_complex(c, max_length - 1).homology(window.clone())?;
    let fine = hochschild_complex(c, max_length).homology(window)?;
    Ok(HomologyTable::compare(&coarse, &fine))
}

/// Words of length at most `max_length` on which `δ∘δ` is nonzero.
pub fn verify_hochschild_square_zero<C: AInfty>(c: &C, max_length: usize) -> Vec<Violation> {
    let mut cache = HashMap::new();
    let mut out = Vec::new();
    for w in cyclic_words(c, 1..=max_length) {
        let dw = hochschild_differential(c, &w);
        let mut dd = Chain::zero();
        for v in &dw {
            let image = cache
                .entry(v.clone())
                .or_insert_with(|| hochschild_differential(c, v));
            dd.add_assign(image);
        }
        if !dd.is_zero() {
            out.push(Violation::new(
                w.label(c),
                format!("δδ = {}", hochschild_chain_label(c, &dd)),
            ));
        }
    }
    out
}

/// Words of length at most `max_length` on which the induced map fails to
/// commute with `δ`.
pub fn verify_hochschild_chain_map<S: AInfty, T: AInfty>(
    s: &S,
    t: &T,
    f: &AInftyFunctor<S::Gen, T::Gen>,
    max_length: usize,
) -> Vec<Violation> {
    let image = |x: &HochschildWord<S::Gen>| -> Chain<HochschildWord<T::Gen>> {
        induced_map_on_hochschild(f, &x.0)
            .into_iter()
            .map(HochschildWord)
            .collect()
    };
    let mut out = Vec::new();
    for w in cyclic_words(s, 1..=max_length) {
        let lhs = hochschild_differential_chain(t, &image(&w));
        let rhs = hochschild_differential(s, &w).map(image);
        if lhs != rhs {
            out.push(Violation::new(
                w.label(s),
                "induced map does not commute with δ",
            ));
        }
    }
    out
}

/// `e^{d-1}·s` for a word of length `d` with `s = Σ(A(γ_i) + 8ε)`, or `-∞`
/// for the empty chain.
///
/// Values of equal length compare exactly by `s`. Otherwise signs decide, and
/// for two positive values `e^{d₁-d₂}` is compared with `s₂/s₁` by rational
/// enclosures of `e` refined until they separate, which always happens since
/// `e` is transcendental.
#[derive(Clone, Debug)]
pub enum ShiftedActionValue {
    NegInfinity,
    Finite { length: usize, raw_sum: BigRational },
}

impl ShiftedActionValue {
    pub fn finite(length: usize, raw_sum: BigRational) -> Self {
        ShiftedActionValue::Finite { length, raw_sum }
    }

    pub fn is_neg_infinity(&self) -> bool {
        matches!(self, ShiftedActionValue::NegInfinity)
    }

    /// Floating-point approximation of the comparison value.
    pub fn approx(&self) -> f64 {
        match self {
            ShiftedActionValue::NegInfinity => f64::NEG_INFINITY,
            ShiftedActionValue::Finite { length, raw_sum } => {
                (*length as f64 - 1.0).exp() * raw_sum.to_f64().unwrap_or(f64::NAN)
            }
        }
    }
}

impl fmt::Display for ShiftedActionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShiftedActionValue::NegInfinity => write!(f, "-inf"),
            ShiftedActionValue::Finite { length, raw_sum } => write!(
                f,
                "e^{}*{} (~{:.6})",
                length - 1,
                crate::category::io::format_rational(raw_sum),
                self.approx()
            ),
        }
    }
}

/// Rational bounds `lo < e < hi` from the first `n + 1` terms of the series.
fn e_bounds(n: u32) -> (BigRational, BigRational) {
    let mut lo = BigRational::zero();
    let mut term = BigRational::one();
    for i in 0..=n {
        if i > 0 {
            term /= BigRational::from_integer(BigInt::from(i));
        }
        lo += &term;
    }
    let tail = term * BigRational::new(BigInt::from(2), BigInt::from(n + 1));
    let hi = &lo + tail;
    (lo, hi)
}

fn pow(x: &BigRational, k: u32) -> BigRational {
    let mut r = BigRational::one();
    for _ in 0..k {
        r *= x;
    }
    r
}

/// Compares `e^k` with the positive rational `r` for `k ≥ 1`.
fn cmp_exp(k: u32, r: &BigRational) -> Ordering {
    let mut n = 12;
    loop {
        let (lo, hi) = e_bounds(n);
        if pow(&hi, k) < *r {
            return Ordering::Less;
        }
        if pow(&lo, k) > *r {
            return Ordering::Greater;
        }
        n *= 2;
    }
}

/// Compares `e^{d₁-1}·s₁` with `e^{d₂-1}·s₂` for positive `s₁`, `s₂`.
fn cmp_positive(d1: usize, s1: &BigRational, d2: usize, s2: &BigRational) -> Ordering {
    match d1.cmp(&d2) {
        Ordering::Equal => s1.cmp(s2),
        Ordering::Greater => cmp_exp((d1 - d2) as u32, &(s2 / s1)),
        Ordering::Less => cmp_exp((d2 - d1) as u32, &(s1 / s2)).reverse(),
    }
}

impl Ord for ShiftedActionValue {
    fn cmp(&self, other: &Self) -> Ordering {
        use ShiftedActionValue::*;
        match (self, other) {
            (NegInfinity, NegInfinity) => Ordering::Equal,
            (NegInfinity, _) => Ordering::Less,
            (_, NegInfinity) => Ordering::Greater,
            (
                Finite {
                    length: d1,
                    raw_sum: s1,
                },
                Finite {
                    length: d2,
                    raw_sum: s2,
                },
            ) => {
                if d1 == d2 {
                    return s1.cmp(s2);
                }
                let sign = |s: &BigRational| {
                    if s.is_zero() {
                        0
                    } else if s.is_positive() {
                        1
                    } else {
                        -1
                    }
                };
                match (sign(s1), sign(s2)) {
                    (a, b) if a != b => a.cmp(&b),
                    (0, 0) => Ordering::Equal,
                    (1, 1) => cmp_positive(*d1, s1, *d2, s2),
                    _ => cmp_positive(*d1, &-s1, *d2, &-s2).reverse(),
                }
            }
        }
    }
}

impl PartialOrd for ShiftedActionValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for ShiftedActionValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ShiftedActionValue {}

/// Shifted action of one word under the given actions.
pub fn shifted_action_with<G>(
    w: &HochschildWord<G>,
    epsilon: &BigRational,
    actions: impl Fn(&G) -> BigRational,
) -> ShiftedActionValue {
    let shift = epsilon * BigRational::from_integer(BigInt::from(8));
    let raw_sum =
        w.0.iter()
            .fold(BigRational::zero(), |acc, g| acc + actions(g) + &shift);
    ShiftedActionValue::finite(w.0.len(), raw_sum)
}

/// Shifted action of one word using the category's generator actions.
pub fn shifted_action<C: AInfty>(
    c: &C,
    w: &HochschildWord<C::Gen>,
    epsilon: &BigRational,
) -> ShiftedActionValue {
    shifted_action_with(w, epsilon, |g| c.action(g))
}

/// Maximum over the words of a chain; `-∞` for the empty chain.
pub fn chain_shifted_action<C: AInfty>(
    c: &C,
    x: &Chain<HochschildWord<C::Gen>>,
    epsilon: &BigRational,
) -> ShiftedActionValue {
    x.iter()
        .map(|w| shifted_action(c, w, epsilon))
        .max()
        .unwrap_or(ShiftedActionValue::NegInfinity)
}

/// Reports each word of length at most `max_length` whose differential has a
/// term of shifted action not strictly below its own.
pub fn verify_action_filtration<C: AInfty>(
    c: &C,
    epsilon: &BigRational,
    max_length: usize,
) -> Vec<Violation> {
    let mut out = Vec::new();
    for w in cyclic_words(c, 1..=max_length) {
        let a = shifted_action(c, &w, epsilon);
        for v in &hochschild_differential(c, &w) {
            let b = shifted_action(c, v, epsilon);
            if b >= a {
                out.push(Violation::new(
                    w.label(c),
                    format!("term {} has action {} >= {}", v.label(c), b, a),
                ));
            }
        }
    }
    out
}

/// Degree of a nonzero homogeneous chain.
fn chain_degree<C: AInfty>(c: &C, x: &Chain<HochschildWord<C::Gen>>) -> Result<i64> {
    let mut degrees = x.iter().map(|w| w.degree(c));
    let k = degrees.next().expect("nonzero chain");
    if degrees.any(|j| j != k) {
        return Err(Error::DegreeMismatch {
            detail: format!("chain {} is not homogeneous", hochschild_chain_label(c, x)),
        });
    }
    Ok(k)
}

/// Boundaries `δv` of all cyclic words `v` of length at most `max_length` and
/// degree `k - 1`.
pub fn hochschild_boundaries<C: AInfty>(
    c: &C,
    k: i64,
    max_length: usize,
) -> Vec<Chain<HochschildWord<C::Gen>>> {
    cyclic_words(c, 1..=max_length)
        .into_iter()
        .filter(|v| v.degree(c) == k - 1)
        .map(|v| hochschild_differential(c, &v))
        .filter(|b| !b.is_zero())
        .collect()
}

/// Minimal shifted action over the representatives of the class of `cycle`
/// made of words of length at most `k`, among `cycle + δ(words of length ≤ k + 1)`.
///
/// Words are totally ordered by (longer than `k`, shifted action, word); the
/// boundaries are put in echelon form with respect to the largest word, and
/// reducing `cycle` against it leaves a representative whose largest word is
/// as small as possible.
pub fn length_k_class_action<C: AInfty>(
    c: &C,
    cycle: &Chain<HochschildWord<C::Gen>>,
    k: usize,
    epsilon: &BigRational,
) -> Result<ShiftedActionValue> {
    if !hochschild_differential_chain(c, cycle).is_zero() {
        return Err(Error::NotACycle(hochschild_chain_label(c, cycle)));
    }
    if cycle.is_zero() {
        return Ok(ShiftedActionValue::NegInfinity);
    }
    let degree = chain_degree(c, cycle)?;
    let boundaries = hochschild_boundaries(c, degree, k + 1);
    let mut words: Vec<HochschildWord<C::Gen>> = cycle.terms();
    for b in &boundaries {
        words.extend(b.iter().cloned());
    }
    words.sort();
    words.dedup();
    let mut keyed: Vec<(bool, ShiftedActionValue, HochschildWord<C::Gen>)> = words
        .into_iter()
        .map(|w| (w.len() > k, shifted_action(c, &w, epsilon), w))
        .collect();
    keyed.sort();
    let rank: BTreeMap<&HochschildWord<C::Gen>, usize> = keyed
        .iter()
        .enumerate()
        .map(|(i, (_, _, w))| (w, i))
        .collect();
    let to_ranks =
        |x: &Chain<HochschildWord<C::Gen>>| -> Chain<usize> { x.iter().map(|w| rank[w]).collect() };
    let mut echelon = ChainEchelon::new();
    for b in &boundaries {
        echelon.insert(&to_ranks(b));
    }
    let reduced = echelon.reduce(&to_ranks(cycle));
    match reduced.iter().next_back() {
        None => Ok(ShiftedActionValue::NegInfinity),
        Some(&top) => {
            let (long, value, _) = &keyed[top];
            if *long {
                Err(Error::NotRepresentableAtLengthK { k })
            } else {
                Ok(value.clone())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::io::{integer, rational};
    use crate::fixtures::{
        acyclic_pair_category, linear_quiver_category, unit_category, unit_category_with_action,
    };

    fn unit_word(c: &crate::AInftyStructure, d: usize) -> HochschildWord<crate::GenId> {
        HochschildWord(vec![c.gen("e").unwrap(); d])
    }

    #[test]
    fn unit_differentials() {
        let c = unit_category();
        assert!(hochschild_differential(&c, &unit_word(&c, 2)).is_zero());
        assert_eq!(
            hochschild_differential(&c, &unit_word(&c, 3)),
            Chain::single(unit_word(&c, 2))
        );
        assert!(hochschild_differential(&c, &unit_word(&c, 1)).is_zero());
        for d in 1..8 {
            let expected = if d % 2 == 1 && d > 1 {
                Chain::single(unit_word(&c, d - 1))
            } else {
                Chain::zero()
            };
            assert_eq!(hochschild_differential(&c, &unit_word(&c, d)), expected);
        }
    }

    #[test]
    fn unit_homology() {
        let c = unit_category();
        let t = hochschild_homology(&c, 6, -5..=0).unwrap();
        assert!(t.all_stable());
        for (k, d) in t.dims() {
            assert_eq!(d, usize::from(k == 0));
        }
        let p = acyclic_pair_category();
        let t = hochschild_homology(&p, 4, -3..=1).unwrap();
        assert!(t.dims().values().all(|&d| d == 0));
    }

    #[test]
    fn square_zero_and_words() {
        let c = linear_quiver_category(3);
        assert!(verify_hochschild_square_zero(&c, 4).is_empty());
        let e0 = c.gen("e0").unwrap();
        let a = c.gen("a").unwrap();
        assert!(HochschildWord::new(&c, vec![a]).is_err());
        assert!(HochschildWord::new(&c, vec![e0, e0]).is_ok());
    }

    #[test]
    fn action_values() {
        let one = ShiftedActionValue::finite(1, integer(1));
        let w = HochschildWord(vec![0u8]);
        assert_eq!(
            shifted_action_with(&w, &rational(1, 16), |_| rational(1, 2)),
            one
        );
        let w2 = HochschildWord(vec![0u8, 0]);
        let v = shifted_action_with(&w2, &integer(0), |_| rational(1, 4));
        assert!(
            matches!(&v, ShiftedActionValue::Finite { length: 2, raw_sum } if *raw_sum == rational(1, 2))
        );
        assert!((v.approx() - std::f64::consts::E / 2.0).abs() < 1e-12);
        assert!(v > one);
        assert!(ShiftedActionValue::NegInfinity < ShiftedActionValue::finite(3, integer(-5)));
        // e·(1/2) ≈ 1.359 < 3/2
        assert!(v < ShiftedActionValue::finite(1, rational(3, 2)));
        assert!(
            ShiftedActionValue::finite(2, integer(-1)) < ShiftedActionValue::finite(1, integer(-1))
        );
        assert_eq!(
            ShiftedActionValue::finite(2, integer(0)),
            ShiftedActionValue::finite(5, integer(0))
        );
    }

    #[test]
    fn filtration_on_unit_category() {
        let c = unit_category_with_action(integer(1));
        assert!(verify_action_filtration(&c, &integer(0), 6).is_empty());
        let z = unit_category_with_action(integer(0));
        assert!(!verify_action_filtration(&z, &integer(0), 4).is_empty());
    }

    #[test]
    fn class_action_examples() {
        let c = unit_category_with_action(rational(1, 3));
        let eps = rational(1, 32);
        let e = Chain::single(unit_word(&c, 1));
        assert_eq!(
            length_k_class_action(&c, &e, 1, &eps).unwrap(),
            ShiftedActionValue::finite(1, rational(1, 3) + rational(1, 4))
        );
        let e2 = Chain::single(unit_word(&c, 2));
        assert_eq!(
            length_k_class_action(&c, &e2, 2, &eps).unwrap(),
            ShiftedActionValue::NegInfinity
        );
        let e3 = Chain::single(unit_word(&c, 3));
        assert!(matches!(
            length_k_class_action(&c, &e3, 3, &eps),
            Err(Error::NotACycle(_))
        ));
        let e4 = Chain::single(unit_word(&c, 4));
        assert!(matches!(
            length_k_class_action(&c, &e4, 2, &eps),
            Err(Error::NotRepresentableAtLengthK { k: 2 })
        ));
    }

    #[test]
    fn gauge_functor_is_a_chain_map() {
        for v in crate::fixtures::twisted_a3_variants().unwrap() {
            assert!(verify_hochschild_square_zero(&v.twisted, 3).is_empty());
            let f = AInftyFunctor::from_gauge(&v.base, &v.gauge);
            assert!(verify_hochschild_chain_map(&v.base, &v.twisted, &f, 3).is_empty());
        }
    }
}
