use num_rational::BigRational;

use crate::category::io::integer;
use crate::category::{gauge_transform, AInfty, AInftyStructure, GaugeData, StructureBuilder};
use crate::error::Result;
use crate::filtration::WeightVector;

const LETTERS: &[u8] = b"abcdefghijklmnopqrstuvwxyz";

/// Name of the path `L_i → L_j` for `i < j`: arrow letters in composition order.
fn path_name(i: usize, j: usize) -> String {
    (i..j).rev().map(|k| LETTERS[k] as char).collect()
}

/// Directed path category on `L_0, …, L_{n−1}`: one degree-zero generator per
/// path, strict units `e_i`, composition of paths as `μ²`. Actions count arrows.
pub fn linear_quiver_category(n: usize) -> AInftyStructure {
    assert!((1..=LETTERS.len()).contains(&n), "quiver size out of range");
    let objects: Vec<String> = (0..n).map(|i| format!("L{i}")).collect();
    let mut b = StructureBuilder::new_owned(objects.clone(), Vec::new());
    let mut gen = vec![vec![None; n]; n];
    for i in 0..n {
        let e = b
            .add(&format!("e{i}"), &objects[i], &objects[i], 0)
            .expect("fresh name");
        b.set_unit(i, e);
        gen[i][i] = Some(e);
    }
    for len in 1..n {
        for i in 0..n - len {
            let j = i + len;
            let g = b
                .add_full(
                    &path_name(i, j),
                    &objects[i],
                    &objects[j],
                    0,
                    WeightVector::zero(0),
                    integer(len as i64),
                )
                .expect("fresh name");
            gen[i][j] = Some(g);
        }
    }
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let (first, second, comp) = (gen[i][j], gen[j][k], gen[i][k]);
                b.set_mu(&[second.unwrap(), first.unwrap()], &[comp.unwrap()])
                    .expect("composable paths");
            }
        }
    }
    b.max_arity(2);
    b.build().expect("path category")
}

/// One object `P` with a strict unit `e` of the given action.
pub fn unit_category_with_action(action: BigRational) -> AInftyStructure {
    let mut b = StructureBuilder::new(&["P"], &[]);
    let e = b
        .add_full("e", "P", "P", 0, WeightVector::zero(0), action)
        .expect("fresh name");
    b.set_mu(&[e, e], &[e]).expect("unit");
    b.set_unit(0, e);
    b.max_arity(2);
    b.build().expect("unit category")
}

/// [`unit_category_with_action`] with action one.
pub fn unit_category() -> AInftyStructure {
    unit_category_with_action(integer(1))
}

/// One object with `e` in degree 0 and a closed `x` in degree 1.
pub fn ex_category() -> AInftyStructure {
    let mut b = StructureBuilder::new(&["P"], &[]);
    let e = b.add("e", "P", "P", 0).expect("fresh name");
    b.add("x", "P", "P", 1).expect("fresh name");
    b.set_mu_named(&["e", "e"], &["e"]).expect("unit");
    b.set_mu_named(&["e", "x"], &["x"]).expect("unit");
    b.set_mu_named(&["x", "e"], &["x"]).expect("unit");
    b.set_unit(0, e);
    b.max_arity(2);
    b.build().expect("ex category")
}

/// One object with `u` in degree 0, `w` in degree 1 and `μ¹u = w`.
pub fn acyclic_pair_category() -> AInftyStructure {
    let mut b = StructureBuilder::new(&["P"], &[]);
    b.add("u", "P", "P", 0).expect("fresh name");
    b.add("w", "P", "P", 1).expect("fresh name");
    b.set_mu_named(&["u"], &["w"]).expect("differential");
    b.max_arity(2);
    b.build().expect("acyclic pair")
}

/// One object with unit `e` and `u` in degree −1 with `μ¹u = e`.
pub fn contractible_pair_category() -> AInftyStructure {
    let mut b = StructureBuilder::new(&["P"], &[]);
    let e = b.add("e", "P", "P", 0).expect("fresh name");
    b.add("u", "P", "P", -1).expect("fresh name");
    b.set_mu_named(&["u"], &["e"]).expect("differential");
    b.set_mu_named(&["e", "e"], &["e"]).expect("unit");
    b.set_mu_named(&["e", "u"], &["u"]).expect("unit");
    b.set_mu_named(&["u", "e"], &["u"]).expect("unit");
    b.set_unit(0, e);
    b.max_arity(2);
    b.build().expect("contractible pair")
}

/// Graded path category of the quiver `L0 ⇉ L1 ⇉ L2` with arrows `a, b` in
/// degree 0 and `a', b'` in degree −1, strict units and `μ¹ = 0`.
pub fn graded_a3_category() -> AInftyStructure {
    let mut b = StructureBuilder::new(&["L0", "L1", "L2"], &[]);
    let w = || WeightVector::zero(0);
    for (i, o) in ["L0", "L1", "L2"].iter().enumerate() {
        let e = b.add(&format!("e{i}"), o, o, 0).expect("fresh name");
        b.set_unit(i, e);
    }
    let first = [("a", 0i64), ("a'", -1)];
    let second = [("b", 0i64), ("b'", -1)];
    for (n, d) in first {
        b.add_full(n, "L0", "L1", d, w(), integer(1))
            .expect("fresh name");
    }
    for (n, d) in second {
        b.add_full(n, "L1", "L2", d, w(), integer(1))
            .expect("fresh name");
    }
    for (y, dy) in second {
        for (x, dx) in first {
            b.add_full(&format!("{y}{x}"), "L0", "L2", dx + dy, w(), integer(2))
                .expect("fresh name");
        }
    }
    let names: Vec<(String, String, String)> = b_generators(&b);
    for (name, src, tgt) in &names {
        let (es, et) = (format!("e{}", &src[1..]), format!("e{}", &tgt[1..]));
        if name != &es {
            b.set_mu_named(&[name, &es], &[name]).expect("unit");
        }
        b.set_mu_named(&[&et, name], &[name]).expect("unit");
    }
    for (y, _) in second {
        for (x, _) in first {
            b.set_mu_named(&[y, x], &[&format!("{y}{x}")])
                .expect("composition");
        }
    }
    b.max_arity(2);
    b.build().expect("graded quiver")
}

fn b_generators(b: &StructureBuilder) -> Vec<(String, String, String)> {
    let c = b.clone().build().expect("partial structure");
    c.generators()
        .iter()
        .map(|g| {
            (
                g.name.clone(),
                c.objects()[g.source].clone(),
                c.objects()[g.target].clone(),
            )
        })
        .collect()
}

/// A gauge-twisted copy of [`graded_a3_category`] together with its gauge data.
pub struct GaugeVariant {
    pub name: &'static str,
    pub base: AInftyStructure,
    pub gauge: GaugeData,
    pub twisted: AInftyStructure,
}

/// Arity bound of the twisted structures: outputs have degree at least −2 and
/// inputs have nonpositive degree, so `μ^d` vanishes for `d ≥ 5`.
pub const TWISTED_MAX_ARITY: usize = 4;

/// Three twists of the graded quiver producing nonzero higher operations.
pub fn twisted_a3_variants() -> Result<Vec<GaugeVariant>> {
    let base = graded_a3_category();
    let specs: [(&'static str, &[(&[&str], &[&str])]); 3] = [
        (
            "twist-ba",
            &[(&["b", "a"], &["ba'"]), (&["e2", "b"], &["b'"])],
        ),
        ("twist-ae", &[(&["a", "e0"], &["a'"])]),
        (
            "twist-bae",
            &[(&["b", "a", "e0"], &["b'a'"]), (&["b", "a"], &["b'a"])],
        ),
    ];
    specs
        .iter()
        .map(|(name, entries)| {
            let mut g = GaugeData::new();
            for (w, o) in entries.iter() {
                g.set_named(&base, w, o)?;
            }
            let twisted = gauge_transform(&base, &g, TWISTED_MAX_ARITY)?;
            Ok(GaugeVariant {
                name,
                base: base.clone(),
                gauge: g,
                twisted,
            })
        })
        .collect()
}
