use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::hash::Hash;
use std::ops::RangeInclusive;

use super::{mu_chains, AInfty, ObjIdx};
use crate::chain::{span_dim, Chain, ChainEchelon};
use crate::error::{Error, Result};
use crate::f2linalg::{kernel_basis, rank, F2Matrix, F2Vector};

/// Assigns column indices to chain terms so chains become bit vectors.
#[derive(Clone, Debug)]
pub struct Coordinates<G> {
    index: HashMap<G, usize>,
    order: Vec<G>,
}

impl<G: Clone + Eq + Hash + Ord> Coordinates<G> {
    /// Coordinates for `prefix` first, then every other term of `chains`.
    pub fn new(prefix: &[G], chains: &[Chain<G>]) -> Self {
        let mut c = Coordinates {
            index: HashMap::new(),
            order: Vec::new(),
        };
        for g in prefix {
            c.push(g);
        }
        for ch in chains {
            for g in ch {
                c.push(g);
            }
        }
        c
    }

    fn push(&mut self, g: &G) {
        if !self.index.contains_key(g) {
            self.index.insert(g.clone(), self.order.len());
            self.order.push(g.clone());
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn vector(&self, c: &Chain<G>) -> F2Vector {
        F2Vector::from_support(self.len(), c.iter().map(|g| self.index[g]))
    }

    pub fn chain(&self, v: &F2Vector) -> Chain<G> {
        v.support()
            .into_iter()
            .map(|i| self.order[i].clone())
            .collect()
    }

    /// Matrix whose columns are the given chains.
    pub fn matrix(&self, chains: &[Chain<G>]) -> F2Matrix {
        let cols: Vec<F2Vector> = chains.iter().map(|c| self.vector(c)).collect();
        F2Matrix::from_columns(self.len(), &cols)
    }
}

/// A cochain complex presented by a finite basis, a larger basis supplying
/// boundaries, and a differential on basis elements.
///
/// Homology in degree `k` uses cycles of the basis and boundaries of the
/// extended basis that land in the span of the basis. When both bases are the
/// same this is ordinary homology.
pub struct TruncatedComplex<'a, G: Ord> {
    pub basis: Vec<G>,
    pub extended: Vec<G>,
    degree: Box<dyn Fn(&G) -> i64 + 'a>,
    differential: Box<dyn Fn(&G) -> Chain<G> + 'a>,
}

impl<'a, G: Clone + Eq + Hash + Ord + std::fmt::Debug> TruncatedComplex<'a, G> {
    pub fn new(
        basis: Vec<G>,
        extended: Vec<G>,
        degree: impl Fn(&G) -> i64 + 'a,
        differential: impl Fn(&G) -> Chain<G> + 'a,
    ) -> Self {
        TruncatedComplex {
            basis,
            extended,
            degree: Box::new(degree),
            differential: Box::new(differential),
        }
    }

    /// `hom(x, y)` of an A∞ category with `μ¹`.
    pub fn of_hom<C: AInfty<Gen = G>>(c: &'a C, x: ObjIdx, y: ObjIdx) -> Self {
        Self::new(
            c.hom_basis(x, y),
            c.hom_basis_extended(x, y),
            move |g| c.degree(g),
            move |g| c.mu(std::slice::from_ref(g)),
        )
    }

    pub fn degree(&self, g: &G) -> i64 {
        (self.degree)(g)
    }

    pub fn d(&self, g: &G) -> Chain<G> {
        (self.differential)(g)
    }

    pub fn d_chain(&self, c: &Chain<G>) -> Chain<G> {
        c.map(|g| self.d(g))
    }

    pub fn in_degree(&self, k: i64) -> Vec<G> {
        self.basis
            .iter()
            .filter(|g| self.degree(g) == k)
            .cloned()
            .collect()
    }

    fn extended_in_degree(&self, k: i64) -> Vec<G> {
        self.extended
            .iter()
            .filter(|g| self.degree(g) == k)
            .cloned()
            .collect()
    }

    pub fn degrees(&self) -> BTreeSet<i64> {
        self.basis.iter().map(|g| self.degree(g)).collect()
    }

    /// Basis of the cycles of degree `k`.
    pub fn cycles(&self, k: i64) -> Vec<Chain<G>> {
        let gens = self.in_degree(k);
        let images: Vec<Chain<G>> = gens.iter().map(|g| self.d(g)).collect();
        let coords = Coordinates::new(&[], &images);
        let m = coords.matrix(&images);
        kernel_basis(&m)
            .into_iter()
            .map(|v| v.support().into_iter().map(|i| gens[i].clone()).collect())
            .collect()
    }

    /// Spanning set of the degree-`k` boundaries that lie in the span of the basis.
    pub fn boundaries(&self, k: i64) -> Vec<Chain<G>> {
        let inside: HashSet<G> = self.in_degree(k).into_iter().collect();
        let images: Vec<Chain<G>> = self
            .extended_in_degree(k - 1)
            .iter()
            .map(|g| self.d(g))
            .collect();
        if images.iter().all(|c| c.iter().all(|g| inside.contains(g))) {
            return images;
        }
        let outside: Vec<Chain<G>> = images
            .iter()
            .map(|c| c.iter().filter(|g| !inside.contains(*g)).cloned().collect())
            .collect();
        let coords = Coordinates::new(&[], &outside);
        kernel_basis(&coords.matrix(&outside))
            .into_iter()
            .map(|v| {
                let mut b = Chain::zero();
                for i in v.support() {
                    b.add_assign(&images[i]);
                }
                b
            })
            .filter(|b| !b.is_zero())
            .collect()
    }

    pub fn boundary_echelon(&self, k: i64) -> ChainEchelon<G> {
        let mut e = ChainEchelon::new();
        for b in self.boundaries(k) {
            e.insert(&b);
        }
        e
    }

    /// Checks `d ∘ d = 0` on every generator of degree `k - 1` or `k`.
    pub fn check_square_zero(&self, k: i64) -> Result<()> {
        let mut gens = self.extended_in_degree(k - 1);
        gens.extend(self.in_degree(k));
        for g in &gens {
            if !self.d_chain(&self.d(g)).is_zero() {
                return Err(Error::DifferentialNotSquareZero {
                    location: format!("{g:?}"),
                });
            }
        }
        Ok(())
    }

    pub fn homology_dim(&self, k: i64) -> Result<usize> {
        self.check_square_zero(k)?;
        let gens = self.in_degree(k);
        let images: Vec<Chain<G>> = gens.iter().map(|g| self.d(g)).collect();
        let coords = Coordinates::new(&[], &images);
        let z = gens.len() - rank(&coords.matrix(&images));
        let inside: HashSet<&G> = gens.iter().collect();
        let bd: Vec<Chain<G>> = self
            .extended_in_degree(k - 1)
            .iter()
            .map(|g| self.d(g))
            .collect();
        let coords = Coordinates::new(&gens, &bd);
        let full = rank(&coords.matrix(&bd));
        let outside: Vec<Chain<G>> = bd
            .iter()
            .map(|c| c.iter().filter(|g| !inside.contains(g)).cloned().collect())
            .collect();
        let out_rank = rank(&coords.matrix(&outside));
        Ok(z - (full - out_rank))
    }

    pub fn homology(&self, window: RangeInclusive<i64>) -> Result<BTreeMap<i64, usize>> {
        window.map(|k| Ok((k, self.homology_dim(k)?))).collect()
    }
}

/// `dim H^k(hom(x, y), μ¹)` for each `k` in the window.
pub fn hom_homology<C: AInfty>(
    c: &C,
    x: ObjIdx,
    y: ObjIdx,
    window: RangeInclusive<i64>,
) -> Result<BTreeMap<i64, usize>> {
    TruncatedComplex::of_hom(c, x, y).homology(window)
}

/// Rank of the map induced on degree-`k` homology by a chain map `f`.
pub fn induced_homology_rank<G, H>(
    src: &TruncatedComplex<'_, G>,
    tgt: &TruncatedComplex<'_, H>,
    f: impl Fn(&G) -> Chain<H>,
    k: i64,
) -> usize
where
    G: Clone + Eq + Hash + Ord + std::fmt::Debug,
    H: Clone + Eq + Hash + Ord + std::fmt::Debug,
{
    let b = tgt.boundaries(k);
    let mut all = b.clone();
    all.extend(src.cycles(k).iter().map(|z| z.map(&f)));
    let coords = Coordinates::new(&[], &all);
    rank(&coords.matrix(&all)) - rank(&coords.matrix(&b))
}

/// Whether `e` acts as the identity on homology from both sides.
pub fn is_homology_unit<C: AInfty>(c: &C, e: &C::Gen, l: ObjIdx) -> Result<bool> {
    if c.source(e) != l || c.target(e) != l {
        return Err(Error::SourceTargetMismatch(format!(
            "`{}` is not an endomorphism of `{}`",
            c.name(e),
            c.objects()[l]
        )));
    }
    if c.degree(e) != 0 {
        return Err(Error::DegreeMismatch {
            detail: format!("`{}` has degree {}", c.name(e), c.degree(e)),
        });
    }
    if !c.mu(std::slice::from_ref(e)).is_zero() {
        return Err(Error::NotACycle(c.name(e)));
    }
    let unit = Chain::single(e.clone());
    for y in 0..c.objects().len() {
        for (x, z, right) in [(l, y, true), (y, l, false)] {
            let cx = TruncatedComplex::of_hom(c, x, z);
            for k in cx.degrees() {
                let bd = cx.boundary_echelon(k);
                for cyc in cx.cycles(k) {
                    let inputs = if right {
                        [cyc.clone(), unit.clone()]
                    } else {
                        [unit.clone(), cyc.clone()]
                    };
                    let diff = mu_chains(c, &inputs).add(&cyc);
                    if !bd.contains(&diff) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Dimension of the span of the homology classes of the given cycles.
pub fn class_rank<G>(cx: &TruncatedComplex<'_, G>, k: i64, cycles: &[Chain<G>]) -> usize
where
    G: Clone + Eq + Hash + Ord + std::fmt::Debug,
{
    let b = cx.boundaries(k);
    let mut all = b.clone();
    all.extend(cycles.iter().cloned());
    span_dim(&all) - span_dim(&b)
}

/// Runs [`TruncatedComplex::homology`] at two truncation levels of the same
/// complex family and reports stability of each degree.
pub fn truncated_homology<G>(
    coarser: &TruncatedComplex<'_, G>,
    finer: &TruncatedComplex<'_, G>,
    window: RangeInclusive<i64>,
) -> Result<crate::report::HomologyTable>
where
    G: Clone + Eq + Hash + Ord + std::fmt::Debug,
{
    let a = coarser.homology(window.clone())?;
    let b = finer.homology(window)?;
    Ok(crate::report::HomologyTable::compare(&a, &b))
}
