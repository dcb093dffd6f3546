use crate::category::io::integer;
use crate::category::{AInfty, AInftyStructure, GenId, StructureBuilder};
use crate::chain::Chain;
use crate::filtration::WeightVector;
use crate::quotient::{QuotientCategory, QuotientWord};
use crate::retraction::RetractionHomotopy;

/// Path category of `X --a--> D --b--> Y` with a loop `t` at `D`, `t² = 0`,
/// and an extra morphism `z: X → Y`. The loop has degree −1 and weight 1 at
/// the single stop `s`; every other arrow has weight zero.
pub struct RetractionToy {
    pub category: AInftyStructure,
}

/// Weighted generators and their splitting `(u∘t, v)` at the loop.
const SPLITTINGS: [(&str, &str, &str); 4] = [
    ("t", "t", "eD"),
    ("ta", "t", "a"),
    ("bt", "bt", "eD"),
    ("bta", "bt", "a"),
];

pub fn retraction_toy() -> RetractionToy {
    let mut b = StructureBuilder::new(&["X", "D", "Y"], &["s"]);
    for (i, o) in ["X", "D", "Y"].iter().enumerate() {
        let e = b.add(&format!("e{o}"), o, o, 0).expect("fresh name");
        b.set_unit(i, e);
    }
    let arrows: [(&str, &str, &str, i64, u32, i64); 8] = [
        ("a", "X", "D", 0, 0, 1),
        ("b", "D", "Y", 0, 0, 1),
        ("ba", "X", "Y", 0, 0, 2),
        ("z", "X", "Y", 0, 0, 1),
        ("t", "D", "D", -1, 1, 1),
        ("ta", "X", "D", -1, 1, 2),
        ("bt", "D", "Y", -1, 1, 2),
        ("bta", "X", "Y", -1, 1, 3),
    ];
    for (name, src, tgt, deg, w, act) in arrows {
        b.add_full(name, src, tgt, deg, WeightVector(vec![w]), integer(act))
            .expect("fresh name");
    }
    for (name, src, tgt, ..) in arrows {
        b.set_mu_named(&[name, &format!("e{src}")], &[name])
            .expect("unit");
        b.set_mu_named(&[&format!("e{tgt}"), name], &[name])
            .expect("unit");
    }
    for o in ["X", "D", "Y"] {
        let e = format!("e{o}");
        b.set_mu_named(&[&e, &e], &[&e]).expect("unit");
    }
    let products: [(&str, &str, &str); 6] = [
        ("b", "a", "ba"),
        ("t", "a", "ta"),
        ("b", "t", "bt"),
        ("bt", "a", "bta"),
        ("b", "ta", "bta"),
        ("t", "t", ""),
    ];
    for (x, y, out) in products {
        if !out.is_empty() {
            b.set_mu_named(&[x, y], &[out]).expect("composition");
        }
    }
    b.max_arity(2);
    RetractionToy {
        category: b.build().expect("toy category"),
    }
}

impl RetractionToy {
    /// `A/{D}` with words through `D` of at most `max_word_length` steps.
    pub fn quotient(&self, max_word_length: usize) -> QuotientCategory<'_, AInftyStructure> {
        QuotientCategory::named(&self.category, &["D"], max_word_length).expect("object D")
    }

    /// `Δ` splits the weighted entry closest to `γ^0` at the loop, turning
    /// `u·t·v` into `(u∘t) ⊗ v`; it vanishes on words of weight zero.
    pub fn delta(
        &self,
        q: &QuotientCategory<'_, AInftyStructure>,
    ) -> RetractionHomotopy<QuotientWord<GenId>> {
        let c = &self.category;
        let split: Vec<(GenId, GenId, GenId)> = SPLITTINGS
            .iter()
            .map(|(g, u, v)| (c.gen(g).unwrap(), c.gen(u).unwrap(), c.gen(v).unwrap()))
            .collect();
        let mut delta = RetractionHomotopy::new();
        let n = c.objects().len();
        for x in 0..n {
            for y in 0..n {
                for w in q.hom_basis(x, y) {
                    let e = w.entries();
                    let Some(i) = (0..e.len()).rev().find(|&i| !c.weights(&e[i]).is_zero()) else {
                        continue;
                    };
                    let &(_, u, v) = split.iter().find(|s| s.0 == e[i]).expect("weighted entry");
                    let mut out = e[..i].to_vec();
                    out.push(u);
                    out.push(v);
                    out.extend_from_slice(&e[i + 1..]);
                    delta.set(w.clone(), Chain::single(QuotientWord(out)));
                }
            }
        }
        delta
    }
}
