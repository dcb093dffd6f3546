use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::{AInfty, Adjacency, ObjIdx};
use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::filtration::WeightVector;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId(pub u32);

impl GenId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

/// A basis element of a hom space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub source: ObjIdx,
    pub target: ObjIdx,
    pub degree: i64,
    pub weights: WeightVector,
    pub action: BigRational,
}

/// An A∞ category stored as sparse structure constants on basis words.
#[derive(Clone, Debug)]
pub struct AInftyStructure {
    objects: Vec<String>,
    stops: Vec<String>,
    generators: Vec<Generator>,
    mu: HashMap<Vec<GenId>, Chain<GenId>>,
    max_arity: usize,
    units: BTreeMap<ObjIdx, GenId>,
    homs: Vec<Vec<Vec<GenId>>>,
    names: HashMap<String, GenId>,
    active: Vec<usize>,
}

impl AInftyStructure {
    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, g: GenId) -> &Generator {
        &self.generators[g.index()]
    }

    pub fn ids(&self) -> impl Iterator<Item = GenId> {
        (0..self.generators.len() as u32).map(GenId)
    }

    pub fn gen(&self, name: &str) -> Result<GenId> {
        self.names
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn object(&self, name: &str) -> Result<ObjIdx> {
        self.object_index(name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn units(&self) -> &BTreeMap<ObjIdx, GenId> {
        &self.units
    }

    /// Nonzero structure constants sorted by input word.
    pub fn mu_entries(&self) -> Vec<(&[GenId], &Chain<GenId>)> {
        let mut v: Vec<_> = self.mu.iter().map(|(k, c)| (k.as_slice(), c)).collect();
        v.sort_by(|a, b| (a.0.len(), a.0).cmp(&(b.0.len(), b.0)));
        v
    }

    pub fn to_builder(&self) -> StructureBuilder {
        StructureBuilder {
            objects: self.objects.clone(),
            stops: self.stops.clone(),
            generators: self.generators.clone(),
            names: self.names.clone(),
            mu: self.mu.clone(),
            units: self.units.clone(),
            max_arity: self.max_arity,
        }
    }

    /// Full subcategory on the kept generators, renumbered in their original order.
    /// Outputs that leave the kept set are dropped.
    pub fn restrict(&self, keep: &BTreeSet<GenId>) -> AInftyStructure {
        let mut b = StructureBuilder::new_owned(self.objects.clone(), self.stops.clone());
        let mut map = HashMap::new();
        for &g in keep {
            let new = b.push_generator(self.generator(g).clone());
            map.insert(g, new);
        }
        for (inputs, out) in self.mu_entries() {
            if inputs.iter().all(|g| map.contains_key(g)) {
                let ins: Vec<GenId> = inputs.iter().map(|g| map[g]).collect();
                let outs: Vec<GenId> = out.iter().filter_map(|g| map.get(g).copied()).collect();
                b.set_mu(&ins, &outs).expect("restriction of a valid entry");
            }
        }
        for (&o, g) in &self.units {
            if let Some(&ng) = map.get(g) {
                b.set_unit(o, ng);
            }
        }
        b.max_arity(self.max_arity);
        b.build().expect("restriction of a valid structure")
    }

    /// Evaluates every composable word of `c` up to `max_arity` over the given
    /// basis and stores the result, keeping only outputs accepted by `keep_output`.
    pub fn materialize<C: AInfty>(
        c: &C,
        basis: &[C::Gen],
        keep_output: impl Fn(&C::Gen) -> bool,
    ) -> (AInftyStructure, HashMap<C::Gen, GenId>) {
        let mut b = StructureBuilder::new_owned(c.objects().to_vec(), c.stops().to_vec());
        let mut map = HashMap::new();
        for g in basis {
            let id = b.push_generator(Generator {
                name: c.name(g),
                source: c.source(g),
                target: c.target(g),
                degree: c.degree(g),
                weights: c.weights(g),
                action: c.action(g),
            });
            map.insert(g.clone(), id);
        }
        let basis_set: BTreeSet<C::Gen> = basis.iter().cloned().collect();
        let adj = Adjacency::with_filter(c, |g| basis_set.contains(g));
        let active = c.active_arities();
        for d in 1..=c.max_arity() {
            if !active.contains(&d) {
                continue;
            }
            adj.for_each_word(c, d, |w| {
                let out: Vec<GenId> = c
                    .mu(w)
                    .iter()
                    .filter(|g| keep_output(g))
                    .filter_map(|g| map.get(g).copied())
                    .collect();
                if !out.is_empty() {
                    let ins: Vec<GenId> = w.iter().map(|g| map[g]).collect();
                    b.set_mu(&ins, &out).expect("materialized entry");
                }
            });
        }
        for x in 0..c.objects().len() {
            if let Some(u) = c.unit(x) {
                if let Some(&id) = map.get(&u) {
                    b.set_unit(x, id);
                }
            }
        }
        b.max_arity(c.max_arity());
        (b.build().expect("materialized structure"), map)
    }
}

impl AInfty for AInftyStructure {
    type Gen = GenId;

    fn objects(&self) -> &[String] {
        &self.objects
    }
    fn stops(&self) -> &[String] {
        &self.stops
    }
    fn source(&self, g: &GenId) -> ObjIdx {
        self.generators[g.index()].source
    }
    fn target(&self, g: &GenId) -> ObjIdx {
        self.generators[g.index()].target
    }
    fn degree(&self, g: &GenId) -> i64 {
        self.generators[g.index()].degree
    }
    fn weights(&self, g: &GenId) -> WeightVector {
        self.generators[g.index()].weights.clone()
    }
    fn action(&self, g: &GenId) -> BigRational {
        self.generators[g.index()].action.clone()
    }
    fn name(&self, g: &GenId) -> String {
        self.generators[g.index()].name.clone()
    }
    fn max_arity(&self) -> usize {
        self.max_arity
    }
    fn active_arities(&self) -> Vec<usize> {
        self.active.clone()
    }
    fn mu(&self, word: &[GenId]) -> Chain<GenId> {
        if word.len() > self.max_arity {
            return Chain::zero();
        }
        self.mu.get(word).cloned().unwrap_or_default()
    }
    fn hom_basis(&self, x: ObjIdx, y: ObjIdx) -> Vec<GenId> {
        self.homs[x][y].clone()
    }
    fn unit(&self, x: ObjIdx) -> Option<GenId> {
        self.units.get(&x).copied()
    }
    fn explicit_entries(&self) -> Option<Vec<(Vec<GenId>, Chain<GenId>)>> {
        Some(
            self.mu_entries()
                .into_iter()
                .map(|(k, c)| (k.to_vec(), c.clone()))
                .collect(),
        )
    }
}

/// Incremental constructor for [`AInftyStructure`].
#[derive(Clone, Debug)]
pub struct StructureBuilder {
    objects: Vec<String>,
    stops: Vec<String>,
    generators: Vec<Generator>,
    names: HashMap<String, GenId>,
    mu: HashMap<Vec<GenId>, Chain<GenId>>,
    units: BTreeMap<ObjIdx, GenId>,
    max_arity: usize,
}

impl StructureBuilder {
    pub fn new(objects: &[&str], stops: &[&str]) -> Self {
        Self::new_owned(
            objects.iter().map(|s| s.to_string()).collect(),
            stops.iter().map(|s| s.to_string()).collect(),
        )
    }

    pub fn new_owned(objects: Vec<String>, stops: Vec<String>) -> Self {
        StructureBuilder {
            objects,
            stops,
            generators: Vec::new(),
            names: HashMap::new(),
            mu: HashMap::new(),
            units: BTreeMap::new(),
            max_arity: 2,
        }
    }

    pub fn object(&self, name: &str) -> Result<ObjIdx> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn gen(&self, name: &str) -> Result<GenId> {
        self.names
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn generator(&self, g: GenId) -> &Generator {
        &self.generators[g.index()]
    }

    fn push_generator(&mut self, g: Generator) -> GenId {
        let id = GenId(self.generators.len() as u32);
        self.names.insert(g.name.clone(), id);
        self.generators.push(g);
        id
    }

    /// Adds a generator with zero weights and zero action.
    pub fn add(&mut self, name: &str, source: &str, target: &str, degree: i64) -> Result<GenId> {
        let weights = WeightVector::zero(self.stops.len());
        self.add_full(name, source, target, degree, weights, BigRational::zero())
    }

    pub fn add_full(
        &mut self,
        name: &str,
        source: &str,
        target: &str,
        degree: i64,
        weights: WeightVector,
        action: BigRational,
    ) -> Result<GenId> {
        if self.names.contains_key(name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        if weights.len() != self.stops.len() {
            return Err(Error::Malformed(format!(
                "generator `{name}` has {} weights but there are {} stops",
                weights.len(),
                self.stops.len()
            )));
        }
        let (source, target) = (self.object(source)?, self.object(target)?);
        Ok(self.push_generator(Generator {
            name: name.to_string(),
            source,
            target,
            degree,
            weights,
            action,
        }))
    }

    pub fn set_action(&mut self, g: GenId, action: BigRational) {
        self.generators[g.index()].action = action;
    }

    pub fn set_weights(&mut self, g: GenId, weights: WeightVector) {
        assert_eq!(weights.len(), self.stops.len());
        self.generators[g.index()].weights = weights;
    }

    /// Sets `μ^d(inputs) = Σ outputs`, replacing any previous value.
    pub fn set_mu(&mut self, inputs: &[GenId], outputs: &[GenId]) -> Result<()> {
        if inputs.is_empty() {
            return Err(Error::Malformed("μ entry with no inputs".into()));
        }
        for i in 0..inputs.len() - 1 {
            if self.generator(inputs[i]).source != self.generator(inputs[i + 1]).target {
                return Err(Error::NotComposable { position: i });
            }
        }
        let src = self.generator(*inputs.last().unwrap()).source;
        let tgt = self.generator(inputs[0]).target;
        for &o in outputs {
            let g = self.generator(o);
            if g.source != src || g.target != tgt {
                return Err(Error::SourceTargetMismatch(format!(
                    "output `{}` does not lie in hom({}, {})",
                    g.name, self.objects[src], self.objects[tgt]
                )));
            }
        }
        let chain: Chain<GenId> = outputs.iter().copied().collect();
        if chain.is_zero() {
            self.mu.remove(inputs);
        } else {
            self.mu.insert(inputs.to_vec(), chain);
        }
        Ok(())
    }

    pub fn set_mu_named(&mut self, inputs: &[&str], outputs: &[&str]) -> Result<()> {
        let ins = inputs
            .iter()
            .map(|n| self.gen(n))
            .collect::<Result<Vec<_>>>()?;
        let outs = outputs
            .iter()
            .map(|n| self.gen(n))
            .collect::<Result<Vec<_>>>()?;
        self.set_mu(&ins, &outs)
    }

    pub fn remove_mu(&mut self, inputs: &[GenId]) {
        self.mu.remove(inputs);
    }

    pub fn set_unit(&mut self, object: ObjIdx, g: GenId) {
        self.units.insert(object, g);
    }

    pub fn max_arity(&mut self, d: usize) -> &mut Self {
        self.max_arity = d;
        self
    }

    pub fn build(self) -> Result<AInftyStructure> {
        for k in self.mu.keys() {
            if k.len() > self.max_arity {
                return Err(Error::ArityExceeded {
                    arity: k.len(),
                    max_arity: self.max_arity,
                });
            }
        }
        for (&o, &g) in &self.units {
            let gen = &self.generators[g.index()];
            if gen.source != o || gen.target != o {
                return Err(Error::Malformed(format!(
                    "unit `{}` is not an endomorphism of `{}`",
                    gen.name, self.objects[o]
                )));
            }
        }
        let n = self.objects.len();
        let mut homs = vec![vec![Vec::new(); n]; n];
        for (i, g) in self.generators.iter().enumerate() {
            homs[g.source][g.target].push(GenId(i as u32));
        }
        let active: BTreeSet<usize> = self.mu.keys().map(|k| k.len()).collect();
        Ok(AInftyStructure {
            objects: self.objects,
            stops: self.stops,
            generators: self.generators,
            mu: self.mu,
            max_arity: self.max_arity,
            units: self.units,
            homs,
            names: self.names,
            active: active.into_iter().collect(),
        })
    }
}
