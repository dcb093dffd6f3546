//! JSON interchange format for categories.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{AInfty, AInftyStructure, GenId, ObjIdx, StructureBuilder};
use crate::error::{Error, Result};
use crate::filtration::WeightVector;

/// Extra arities above `max_arity` examined by the degree-count check.
pub const ARITY_HORIZON: usize = 6;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GeneratorFile {
    pub name: String,
    pub source: String,
    pub target: String,
    pub degree: i64,
    pub weights: Vec<u32>,
    pub action: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MuEntryFile {
    pub arity: usize,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub objects: Vec<String>,
    pub stops: Vec<String>,
    pub generators: Vec<GeneratorFile>,
    pub mu: Vec<MuEntryFile>,
    pub max_arity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<BTreeMap<String, String>>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct LoadOptions {
    /// Accept categories whose degrees allow nonzero operations above `max_arity`.
    pub waive_arity_check: bool,
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("`{s}` is not a rational of the form p/q"));
    let (p, q) = match s.trim().split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p = BigInt::from_str(p).map_err(|_| bad())?;
    let q = BigInt::from_str(q).map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

/// Reduced `p/q` with positive denominator.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl CategoryFile {
    pub fn from_structure(c: &AInftyStructure) -> Self {
        let obj = |i: ObjIdx| c.objects()[i].clone();
        let generators = c
            .generators()
            .iter()
            .map(|g| GeneratorFile {
                name: g.name.clone(),
                source: obj(g.source),
                target: obj(g.target),
                degree: g.degree,
                weights: g.weights.0.clone(),
                action: format_rational(&g.action),
            })
            .collect();
        let mu = c
            .mu_entries()
            .into_iter()
            .map(|(ins, outs)| MuEntryFile {
                arity: ins.len(),
                inputs: ins.iter().map(|g| c.name(g)).collect(),
                outputs: outs.iter().map(|g| c.name(g)).collect(),
            })
            .collect();
        let units = if c.units().is_empty() {
            None
        } else {
            Some(
                c.units()
                    .iter()
                    .map(|(&o, g)| (obj(o), c.name(g)))
                    .collect(),
            )
        };
        CategoryFile {
            objects: c.objects().to_vec(),
            stops: c.stops().to_vec(),
            generators,
            mu,
            max_arity: c.max_arity(),
            units,
        }
    }

    pub fn into_structure(self, opts: LoadOptions) -> Result<AInftyStructure> {
        let mut seen = HashSet::new();
        for o in &self.objects {
            if !seen.insert(o.as_str()) {
                return Err(Error::DuplicateName(o.clone()));
            }
        }
        let mut b = StructureBuilder::new_owned(self.objects.clone(), self.stops.clone());
        for g in &self.generators {
            b.add_full(
                &g.name,
                &g.source,
                &g.target,
                g.degree,
                WeightVector(g.weights.clone()),
                parse_rational(&g.action)?,
            )?;
        }
        for e in &self.mu {
            if e.arity != e.inputs.len() {
                return Err(Error::Malformed(format!(
                    "entry on {:?} declares arity {} but has {} inputs",
                    e.inputs,
                    e.arity,
                    e.inputs.len()
                )));
            }
            let ins: Vec<&str> = e.inputs.iter().map(String::as_str).collect();
            let outs: Vec<&str> = e.outputs.iter().map(String::as_str).collect();
            b.set_mu_named(&ins, &outs)?;
        }
        for (o, g) in self.units.iter().flatten() {
            let (o, g) = (b.object(o)?, b.gen(g)?);
            b.set_unit(o, g);
        }
        b.max_arity(self.max_arity);
        let c = b.build()?;
        if !opts.waive_arity_check {
            if let Some(arity) = admissible_arity_beyond_bound(&c, ARITY_HORIZON) {
                return Err(Error::ArityBoundTooSmall {
                    arity,
                    max_arity: c.max_arity(),
                });
            }
        }
        Ok(c)
    }
}

/// Smallest arity in `max_arity + 1 ..= max_arity + horizon` at which some
/// composable word has a generator of the degree its `μ` output would need
/// and of total weight at most the word's. Declared units are strict, so
/// words containing them are skipped.
pub fn admissible_arity_beyond_bound(c: &AInftyStructure, horizon: usize) -> Option<usize> {
    let n = c.objects().len();
    let top = c.max_arity() + horizon;
    let units: HashSet<GenId> = c.units().values().copied().collect();
    let inputs: Vec<&super::Generator> = c
        .ids()
        .filter(|g| !units.contains(g))
        .map(|g| c.generator(g))
        .collect();
    // Least total weight of a word of the current length per (first source, current target, degree sum).
    let mut states: HashMap<(ObjIdx, ObjIdx, i64), u64> = HashMap::new();
    for g in &inputs {
        relax(
            &mut states,
            (g.source, g.target, g.degree),
            g.weights.total(),
        );
    }
    let mut outputs: Vec<Vec<HashMap<i64, u64>>> = vec![vec![HashMap::new(); n]; n];
    for g in c.generators() {
        relax(
            &mut outputs[g.source][g.target],
            g.degree,
            g.weights.total(),
        );
    }
    for d in 1..=top {
        if d > c.max_arity()
            && states.iter().any(|(&(s, t, deg), &w)| {
                outputs[s][t]
                    .get(&(deg + 2 - d as i64))
                    .is_some_and(|&least| least <= w)
            })
        {
            return Some(d);
        }
        let mut next = HashMap::new();
        for (&(s, t, deg), &w) in &states {
            for g in inputs.iter().filter(|g| g.source == t) {
                relax(
                    &mut next,
                    (s, g.target, deg + g.degree),
                    w + g.weights.total(),
                );
            }
        }
        states = next;
    }
    None
}

fn relax<K: std::hash::Hash + Eq>(m: &mut HashMap<K, u64>, k: K, w: u64) {
    let e = m.entry(k).or_insert(w);
    *e = (*e).min(w);
}

pub fn from_json_str(s: &str, opts: LoadOptions) -> Result<AInftyStructure> {
    let file: CategoryFile = serde_json::from_str(s)?;
    file.into_structure(opts)
}

pub fn load(path: impl AsRef<Path>, opts: LoadOptions) -> Result<AInftyStructure> {
    from_json_str(&std::fs::read_to_string(path)?, opts)
}

/// Canonical serialization: generators in stored order, entries sorted by
/// arity then input ids, rationals reduced, two-space indentation.
pub fn to_json_string(c: &AInftyStructure) -> String {
    let mut s = serde_json::to_string_pretty(&CategoryFile::from_structure(c))
        .expect("category files always serialize");
    s.push('\n');
    s
}

pub fn save(c: &AInftyStructure, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_json_string(c))?;
    Ok(())
}

pub fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn integer(p: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    const A2: &str = r#"{
      "objects": ["L0", "L1"],
      "stops": [],
      "generators": [
        {"name": "e0", "source": "L0", "target": "L0", "degree": 0, "weights": [], "action": "0"},
        {"name": "e1", "source": "L1", "target": "L1", "degree": 0, "weights": [], "action": "0/1"},
        {"name": "a", "source": "L0", "target": "L1", "degree": 0, "weights": [], "action": "2/4"}
      ],
      "mu": [
        {"arity": 2, "inputs": ["e0", "e0"], "outputs": ["e0"]},
        {"arity": 2, "inputs": ["e1", "e1"], "outputs": ["e1"]},
        {"arity": 2, "inputs": ["a", "e0"], "outputs": ["a"]},
        {"arity": 2, "inputs": ["e1", "a"], "outputs": ["a"]}
      ],
      "max_arity": 2,
      "units": {"L0": "e0", "L1": "e1"}
    }"#;

    #[test]
    fn round_trip_is_canonical() {
        let c = from_json_str(A2, LoadOptions::default()).unwrap();
        let s = to_json_string(&c);
        assert!(s.contains("\"1/2\""));
        let c2 = from_json_str(&s, LoadOptions::default()).unwrap();
        assert_eq!(to_json_string(&c2), s);
    }

    #[test]
    fn rejects_bad_input() {
        let unknown = A2.replace("\"max_arity\": 2,", "\"max_arity\": 2, \"extra\": 1,");
        assert!(matches!(
            from_json_str(&unknown, LoadOptions::default()),
            Err(Error::Json(_))
        ));
        let dup = A2.replace("\"name\": \"e1\"", "\"name\": \"e0\"");
        assert!(matches!(
            from_json_str(&dup, LoadOptions::default()),
            Err(Error::DuplicateName(_))
        ));
        let noncomp = A2.replace("[\"a\", \"e0\"]", "[\"a\", \"e1\"]");
        assert!(matches!(
            from_json_str(&noncomp, LoadOptions::default()),
            Err(Error::NotComposable { .. })
        ));
        let bad_rat = A2.replace("2/4", "0.5");
        assert!(matches!(
            from_json_str(&bad_rat, LoadOptions::default()),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn arity_check_and_waiver() {
        let ex = r#"{
          "objects": ["P"], "stops": [],
          "generators": [
            {"name": "e", "source": "P", "target": "P", "degree": 0, "weights": [], "action": "0"},
            {"name": "x", "source": "P", "target": "P", "degree": 1, "weights": [], "action": "0"}
          ],
          "mu": [{"arity": 2, "inputs": ["e", "e"], "outputs": ["e"]}],
          "max_arity": 2
        }"#;
        assert!(matches!(
            from_json_str(ex, LoadOptions::default()),
            Err(Error::ArityBoundTooSmall { arity: 3, .. })
        ));
        let waived = LoadOptions {
            waive_arity_check: true,
        };
        assert!(from_json_str(ex, waived).is_ok());
        assert!(from_json_str(A2, LoadOptions::default()).is_ok());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-6/4").unwrap(), rational(-3, 2));
        assert_eq!(format_rational(&rational(6, -4)), "-3/2");
        assert!(parse_rational("1/0").is_err());
    }
}
