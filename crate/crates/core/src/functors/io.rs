//! JSON format for functors and pre-natural transformations between stored
//! categories.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::AInftyFunctor;
use crate::category::io::MuEntryFile;
use crate::category::{AInfty, AInftyStructure, GenId};
use crate::chain::Chain;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FunctorFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_file: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_file: Option<String>,
    pub object_map: BTreeMap<String, String>,
    pub components: Vec<MuEntryFile>,
}

impl FunctorFile {
    pub fn from_functor(
        s: &AInftyStructure,
        t: &AInftyStructure,
        f: &AInftyFunctor<GenId, GenId>,
    ) -> Self {
        FunctorFile {
            source_file: None,
            target_file: None,
            object_map: s
                .objects()
                .iter()
                .zip(&f.object_map)
                .map(|(o, &i)| (o.clone(), t.objects()[i].clone()))
                .collect(),
            components: f
                .entries()
                .into_iter()
                .map(|(w, out)| MuEntryFile {
                    arity: w.len(),
                    inputs: w.iter().map(|g| s.name(g)).collect(),
                    outputs: out.iter().map(|g| t.name(g)).collect(),
                })
                .collect(),
        }
    }

    /// Resolves names against the given categories. Objects missing from
    /// `object_map` are an error.
    pub fn resolve(
        &self,
        s: &AInftyStructure,
        t: &AInftyStructure,
    ) -> Result<AInftyFunctor<GenId, GenId>> {
        let mut object_map = Vec::with_capacity(s.objects().len());
        for o in s.objects() {
            let image = self
                .object_map
                .get(o)
                .ok_or_else(|| Error::Malformed(format!("object `{o}` has no image")))?;
            object_map.push(t.object(image)?);
        }
        for o in self.object_map.keys() {
            s.object(o)?;
        }
        let mut f = AInftyFunctor::new(object_map, t.objects().len());
        for e in &self.components {
            if e.arity != e.inputs.len() || e.arity == 0 {
                return Err(Error::Malformed(format!(
                    "component on {:?} declares arity {}",
                    e.inputs, e.arity
                )));
            }
            let word = e
                .inputs
                .iter()
                .map(|n| s.gen(n))
                .collect::<Result<Vec<_>>>()?;
            if let Some(position) = crate::category::composability_failure(s, &word) {
                return Err(Error::NotComposable { position });
            }
            let mut out = Chain::zero();
            for n in &e.outputs {
                out.toggle(t.gen(n)?);
            }
            let src = f.object_map[s.source(word.last().expect("nonempty"))];
            let tgt = f.object_map[s.target(&word[0])];
            for g in &out {
                if t.source(g) != src || t.target(g) != tgt {
                    return Err(Error::SourceTargetMismatch(format!(
                        "`{}` is not a morphism between the images of {:?}",
                        t.name(g),
                        e.inputs
                    )));
                }
            }
            f.set(word, out);
        }
        Ok(f)
    }
}

pub fn functor_from_json_str(
    text: &str,
    s: &AInftyStructure,
    t: &AInftyStructure,
) -> Result<AInftyFunctor<GenId, GenId>> {
    let file: FunctorFile = serde_json::from_str(text)?;
    file.resolve(s, t)
}

pub fn load_functor(
    path: impl AsRef<Path>,
    s: &AInftyStructure,
    t: &AInftyStructure,
) -> Result<AInftyFunctor<GenId, GenId>> {
    functor_from_json_str(&std::fs::read_to_string(path)?, s, t)
}

pub fn functor_to_json_string(
    s: &AInftyStructure,
    t: &AInftyStructure,
    f: &AInftyFunctor<GenId, GenId>,
) -> String {
    let mut out = serde_json::to_string_pretty(&FunctorFile::from_functor(s, t, f))
        .expect("functor files always serialize");
    out.push('\n');
    out
}
