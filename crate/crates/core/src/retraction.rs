//! The main filtration on quotient homs and the retraction built from a
//! homotopy `Δ` that moves down in it.
//!
//! A word `γ^k ⊗ … ⊗ γ^0` has main weight `(Σ n_σ(γ^i), k)`, ordered
//! lexicographically. The subcomplex `A*_{1,0}` spanned by words of main
//! weight below `(1, 0)` consists of the words of total weight zero at `σ`,
//! whatever their length.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::category::{induced_homology_rank, AInfty, ObjIdx, TruncatedComplex};
use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::quotient::{QuotientCategory, QuotientWord};
use crate::report::Violation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MainWeight {
    pub sigma_weight: u32,
    pub k: usize,
}

impl MainWeight {
    /// Whether the word lies in `A*_{1,0}`.
    pub fn is_bottom(&self) -> bool {
        self.sigma_weight == 0
    }
}

impl fmt::Display for MainWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.sigma_weight, self.k)
    }
}

pub fn main_weight<A: AInfty>(a: &A, w: &QuotientWord<A::Gen>, stop: usize) -> MainWeight {
    MainWeight {
        sigma_weight: w.entries().iter().map(|g| a.weights(g).get(stop)).sum(),
        k: w.k(),
    }
}

/// Largest main weight among the terms of `x` outside `A*_{1,0}`.
fn top_weight<A: AInfty>(
    a: &A,
    x: &Chain<QuotientWord<A::Gen>>,
    stop: usize,
) -> Option<MainWeight> {
    x.iter()
        .map(|w| main_weight(a, w, stop))
        .filter(|m| !m.is_bottom())
        .max()
}

/// A degree −1 map on quotient homs given on basis words; unlisted words map
/// to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetractionHomotopy<G: Ord + std::hash::Hash> {
    map: HashMap<G, Chain<G>>,
}

impl<G: Clone + Ord + std::hash::Hash> Default for RetractionHomotopy<G> {
    fn default() -> Self {
        RetractionHomotopy {
            map: HashMap::new(),
        }
    }
}

impl<G: Clone + Ord + std::hash::Hash> RetractionHomotopy<G> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, g: G, out: Chain<G>) {
        if out.is_zero() {
            self.map.remove(&g);
        } else {
            self.map.insert(g, out);
        }
    }

    pub fn get(&self, g: &G) -> Chain<G> {
        self.map.get(g).cloned().unwrap_or_default()
    }

    pub fn apply(&self, x: &Chain<G>) -> Chain<G> {
        x.map(|g| self.get(g))
    }

    pub fn entries(&self) -> Vec<(&G, &Chain<G>)> {
        let mut v: Vec<_> = self.map.iter().collect();
        v.sort_by(|p, q| p.0.cmp(q.0));
        v
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

type Word<A> = QuotientWord<<A as AInfty>::Gen>;

fn d<A: AInfty>(q: &QuotientCategory<'_, A>, x: &Chain<Word<A>>) -> Chain<Word<A>> {
    x.map(|w| q.mu(std::slice::from_ref(w)))
}

/// `R(x) = x + μ¹Δx + Δμ¹x`.
pub fn basic_retraction<A: AInfty>(
    q: &QuotientCategory<'_, A>,
    delta: &RetractionHomotopy<Word<A>>,
    x: &Chain<Word<A>>,
) -> Chain<Word<A>> {
    let mut r = x.clone();
    r.add_assign(&d(q, &delta.apply(x)));
    r.add_assign(&delta.apply(&d(q, x)));
    r
}

/// Basis words violating `R(γ) = γ` on `A*_{1,0}`, or whose image has a term
/// not strictly below `γ` in the main filtration.
pub fn verify_retraction_hypotheses<A: AInfty>(
    q: &QuotientCategory<'_, A>,
    delta: &RetractionHomotopy<Word<A>>,
    stop: usize,
    basis: &[Word<A>],
) -> Vec<Violation> {
    let a = q.base();
    let mut out = Vec::new();
    for g in basis {
        let x = Chain::single(g.clone());
        let r = basic_retraction(q, delta, &x);
        let w = main_weight(a, g, stop);
        if w.is_bottom() {
            if r != x {
                out.push(Violation::new(
                    q.name(g),
                    "R is not the identity on A*_{1,0}",
                ));
            }
            continue;
        }
        if let Some(bad) = r.iter().find(|t| main_weight(a, t, stop) >= w) {
            out.push(Violation::new(
                q.name(g),
                format!(
                    "R keeps {} of weight {} against {}",
                    q.name(bad),
                    main_weight(a, bad, stop),
                    w
                ),
            ));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetractionOrbit<G: Ord> {
    pub result: Chain<G>,
    pub steps: usize,
    /// `Σ_{i < steps} Δ R^i x`.
    pub witness: Chain<G>,
}

/// Applies `R` until the chain is fixed, checking that the part outside
/// `A*_{1,0}` strictly descends at every step.
pub fn iterate_retraction<A: AInfty>(
    q: &QuotientCategory<'_, A>,
    delta: &RetractionHomotopy<Word<A>>,
    stop: usize,
    x: &Chain<Word<A>>,
) -> Result<RetractionOrbit<Word<A>>> {
    let a = q.base();
    let mut current = x.clone();
    let mut witness = Chain::zero();
    let mut steps = 0;
    loop {
        let next = basic_retraction(q, delta, &current);
        if next == current {
            return Ok(RetractionOrbit {
                result: current,
                steps,
                witness,
            });
        }
        let before = top_weight(a, &current, stop);
        let after = top_weight(a, &next, stop);
        let descends = match (before, after) {
            (Some(b), Some(n)) => n < b,
            (Some(_), None) => true,
            (None, _) => false,
        };
        if !descends {
            return Err(Error::NonTerminating {
                step: steps,
                detail: format!(
                    "weight {} does not descend to {}",
                    before.map_or("bottom".into(), |w| w.to_string()),
                    after.map_or("bottom".into(), |w| w.to_string())
                ),
            });
        }
        witness.add_assign(&delta.apply(&current));
        current = next;
        steps += 1;
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DeformationReport {
    /// Number of iterations after which `R^n` agrees with `R^∞` on the subcomplex.
    pub steps: usize,
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl DeformationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// On the span of `basis`, which must be closed under `μ¹`, finds `n` with
/// `R^n = R^∞` and checks `x + R^n x = μ¹Hx + Hμ¹x` for `H = Σ_{i<n} ΔR^i`.
pub fn verify_compact_deformation_property<A: AInfty>(
    q: &QuotientCategory<'_, A>,
    delta: &RetractionHomotopy<Word<A>>,
    stop: usize,
    basis: &[Word<A>],
) -> Result<DeformationReport> {
    let span: BTreeSet<&Word<A>> = basis.iter().collect();
    for g in basis {
        let dg = q.mu(std::slice::from_ref(g));
        if let Some(out) = dg.iter().find(|t| !span.contains(t)) {
            return Err(Error::NotASubcomplex(format!(
                "μ¹({}) has the term {} outside the span",
                q.name(g),
                q.name(out)
            )));
        }
    }
    let mut steps = 0;
    for g in basis {
        steps = steps.max(iterate_retraction(q, delta, stop, &Chain::single(g.clone()))?.steps);
    }
    let homotopy = |x: &Chain<Word<A>>| -> Chain<Word<A>> {
        let mut h = Chain::zero();
        let mut y = x.clone();
        for _ in 0..steps {
            h.add_assign(&delta.apply(&y));
            y = basic_retraction(q, delta, &y);
        }
        h
    };
    let power = |x: &Chain<Word<A>>| -> Chain<Word<A>> {
        (0..steps).fold(x.clone(), |y, _| basic_retraction(q, delta, &y))
    };
    let mut violations = Vec::new();
    for g in basis {
        let x = Chain::single(g.clone());
        let rx = power(&x);
        if basic_retraction(q, delta, &rx) != rx {
            violations.push(Violation::new(q.name(g), "R^n x is not fixed by R"));
        }
        let lhs = x.clone().add(&rx);
        let rhs = d(q, &homotopy(&x)).add(&homotopy(&d(q, &x)));
        if lhs != rhs {
            violations.push(Violation::new(q.name(g), "x + R^n x ≠ μ¹Hx + Hμ¹x"));
        }
        if rx
            .iter()
            .any(|w| !main_weight(q.base(), w, stop).is_bottom())
        {
            violations.push(Violation::new(q.name(g), "R^n x leaves A*_{1,0}"));
        }
    }
    Ok(DeformationReport {
        steps,
        checked: basis.len(),
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InclusionRow {
    pub degree: i64,
    pub bottom_dim: usize,
    pub full_dim: usize,
    pub rank: usize,
    pub stable: bool,
}

impl InclusionRow {
    /// Dimension equality together with injectivity.
    pub fn is_isomorphism(&self) -> bool {
        self.bottom_dim == self.full_dim && self.rank == self.bottom_dim
    }
}

fn bottom_complex<'q, A: AInfty>(
    q: &'q QuotientCategory<'q, A>,
    x: ObjIdx,
    y: ObjIdx,
    stop: usize,
) -> TruncatedComplex<'q, Word<A>> {
    let a = q.base();
    let keep = |w: &Word<A>| main_weight(a, w, stop).is_bottom();
    TruncatedComplex::new(
        q.hom_basis(x, y).into_iter().filter(keep).collect(),
        q.hom_basis_extended(x, y)
            .into_iter()
            .filter(keep)
            .collect(),
        move |w| q.degree(w),
        move |w| q.mu(std::slice::from_ref(w)),
    )
}

/// Compares `H*(A*_{1,0})` with `H*(hom_Q(x, y))` through the inclusion. A row
/// is stable when all three numbers agree with the quotient of one word length
/// less.
pub fn inclusion_homology<A: AInfty>(
    q: &QuotientCategory<'_, A>,
    x: ObjIdx,
    y: ObjIdx,
    stop: usize,
    window: RangeInclusive<i64>,
) -> Result<Vec<InclusionRow>> {
    let rows = |q: &QuotientCategory<'_, A>| -> Result<Vec<(i64, usize, usize, usize)>> {
        let bottom = bottom_complex(q, x, y, stop);
        let full = TruncatedComplex::of_hom(q, x, y);
        window
            .clone()
            .map(|k| {
                Ok((
                    k,
                    bottom.homology_dim(k)?,
                    full.homology_dim(k)?,
                    induced_homology_rank(&bottom, &full, |w| Chain::single(w.clone()), k),
                ))
            })
            .collect()
    };
    let fine = rows(q)?;
    let coarse = match q.max_word_length() {
        0 => Vec::new(),
        k => rows(&q.with_max_word_length(k - 1))?,
    };
    Ok(fine
        .iter()
        .map(|&(degree, bottom_dim, full_dim, rank)| InclusionRow {
            degree,
            bottom_dim,
            full_dim,
            rank,
            stable: coarse.contains(&(degree, bottom_dim, full_dim, rank)),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{retraction_toy, RetractionToy};

    fn toy() -> RetractionToy {
        retraction_toy()
    }

    #[test]
    fn weights() {
        let t = toy();
        let c = &t.category;
        let g = |n: &str| c.gen(n).unwrap();
        let w = |v: &[&str]| QuotientWord(v.iter().map(|n| g(n)).collect());
        assert_eq!(
            main_weight(c, &w(&["a"]), 0),
            MainWeight {
                sigma_weight: 0,
                k: 0
            }
        );
        assert_eq!(
            main_weight(c, &w(&["bt", "t", "ta"]), 0),
            MainWeight {
                sigma_weight: 3,
                k: 2
            }
        );
        assert!(
            MainWeight {
                sigma_weight: 1,
                k: 0
            } > MainWeight {
                sigma_weight: 0,
                k: 9
            }
        );
    }

    #[test]
    fn zero_homotopy_is_identity() {
        let t = toy();
        let q = t.quotient(3);
        let zero = RetractionHomotopy::new();
        let basis = q.hom_basis(0, 2);
        for g in &basis {
            let x = Chain::single(g.clone());
            assert_eq!(basic_retraction(&q, &zero, &x), x);
        }
        let bad = verify_retraction_hypotheses(&q, &zero, 0, &basis);
        let weighted = basis
            .iter()
            .filter(|w| !main_weight(&t.category, w, 0).is_bottom())
            .count();
        assert_eq!(bad.len(), weighted);
        assert!(weighted > 0);
    }

    #[test]
    fn toy_retraction() {
        let t = toy();
        let q = t.quotient(5);
        let delta = t.delta(&q);
        let basis = q.hom_basis(0, 2);
        assert!(verify_retraction_hypotheses(&q, &delta, 0, &basis).is_empty());
        for g in &basis {
            let x = Chain::single(g.clone());
            let orbit = iterate_retraction(&q, &delta, 0, &x).unwrap();
            assert!(orbit.steps <= 5);
            assert!(orbit
                .result
                .iter()
                .all(|w| main_weight(&t.category, w, 0).is_bottom()));
            let r = basic_retraction(&q, &delta, &x);
            assert_eq!(d(&q, &r), basic_retraction(&q, &delta, &d(&q, &x)));
        }
        let report = verify_compact_deformation_property(&q, &delta, 0, &basis).unwrap();
        assert!(report.passed(), "{:?}", report.violations);
        for row in inclusion_homology(&q, 0, 2, 0, -3..=0).unwrap() {
            if row.stable {
                assert!(row.is_isomorphism(), "{row:?}");
            }
        }
    }

    #[test]
    fn non_subcomplex_rejected() {
        let t = toy();
        let q = t.quotient(2);
        let delta = t.delta(&q);
        let g = |n: &str| t.category.gen(n).unwrap();
        let partial = vec![QuotientWord(vec![g("b"), g("a")])];
        assert!(matches!(
            verify_compact_deformation_property(&q, &delta, 0, &partial),
            Err(Error::NotASubcomplex(_))
        ));
    }
}
