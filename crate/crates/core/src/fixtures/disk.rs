//! Boundary-path category of a disk with stops and arcs.
//!
//! The boundary circle carries, counterclockwise, stop `σ_0`, the marked points
//! of interval `I_0`, stop `σ_1`, the points of `I_1`, and so on. Morphisms
//! between arcs are counterclockwise boundary paths from an endpoint of the
//! source arc to an endpoint of the target arc, of fewer than `N·W` steps where
//! `N` is the number of boundary positions. A path is graded by minus its total
//! number of stop crossings.

use std::collections::HashMap;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::category::io::integer;
use crate::category::{AInftyStructure, GenId, ObjIdx, StructureBuilder};
use crate::error::{Error, Result};
use crate::filtration::{zero_filtered_subcategory, WeightVector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Arc {
    pub name: String,
    /// `[interval, index]` of each endpoint.
    pub ends: [[usize; 2]; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiskModel {
    pub stops: Vec<String>,
    pub points_per_interval: Vec<usize>,
    pub arcs: Vec<Arc>,
    pub winding_bound: usize,
}

impl DiskModel {
    /// `s` stops, two points per interval, and one arc `C_i` covering each
    /// stop `σ_i`.
    pub fn necklace(s: usize, winding_bound: usize) -> Self {
        let arcs = (0..s)
            .map(|i| Arc {
                name: format!("C{i}"),
                ends: [[(i + s - 1) % s, 1], [i, 0]],
            })
            .collect();
        DiskModel {
            stops: (0..s).map(|i| format!("s{i}")).collect(),
            points_per_interval: vec![2; s],
            arcs,
            winding_bound,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let s = self.stops.len();
        if s < 2 {
            return Err(Error::InvalidModel(
                "at least two stops are required".into(),
            ));
        }
        if self.points_per_interval.len() != s {
            return Err(Error::InvalidModel(format!(
                "{} stops but {} intervals",
                s,
                self.points_per_interval.len()
            )));
        }
        if self.winding_bound == 0 {
            return Err(Error::InvalidModel("winding bound must be positive".into()));
        }
        let mut used = HashMap::new();
        for a in &self.arcs {
            for [i, k] in a.ends {
                if i >= s || k >= self.points_per_interval[i] {
                    return Err(Error::InvalidModel(format!(
                        "arc `{}` ends at missing point I{i}.{k}",
                        a.name
                    )));
                }
                if let Some(other) = used.insert((i, k), a.name.clone()) {
                    return Err(Error::InvalidModel(format!(
                        "point I{i}.{k} is an endpoint of both `{other}` and `{}`",
                        a.name
                    )));
                }
            }
            if a.ends[0][0] == a.ends[1][0] {
                return Err(Error::InvalidModel(format!(
                    "arc `{}` has both ends on interval I{}",
                    a.name, a.ends[0][0]
                )));
            }
        }
        let mut names = std::collections::HashSet::new();
        for a in &self.arcs {
            if !names.insert(&a.name) {
                return Err(Error::DuplicateName(a.name.clone()));
            }
        }
        Ok(())
    }

    /// Number of boundary positions: stops plus marked points.
    pub fn circumference(&self) -> usize {
        self.stops.len() + self.points_per_interval.iter().sum::<usize>()
    }

    pub fn stop_position(&self, i: usize) -> usize {
        i + self.points_per_interval[..i].iter().sum::<usize>()
    }

    pub fn point_position(&self, interval: usize, index: usize) -> usize {
        self.stop_position(interval) + 1 + index
    }

    /// Stop at a boundary position, if any.
    pub fn stop_at(&self, pos: usize) -> Option<usize> {
        (0..self.stops.len()).find(|&i| self.stop_position(i) == pos)
    }

    fn point_label(&self, pos: usize) -> String {
        let i = (0..self.stops.len())
            .rev()
            .find(|&i| self.stop_position(i) < pos)
            .expect("marked point lies after some stop");
        format!("I{i}.{}", pos - self.stop_position(i) - 1)
    }

    fn arc_positions(&self, a: &Arc) -> [usize; 2] {
        a.ends.map(|[i, k]| self.point_position(i, k))
    }

    pub fn stop_index(&self, label: &str) -> Result<usize> {
        self.stops
            .iter()
            .position(|s| s == label)
            .ok_or_else(|| Error::InvalidModel(format!("unknown stop `{label}`")))
    }

    /// Index of the arc joining the marked points on either side of stop `i`.
    pub fn covering_arc(&self, i: usize) -> Result<usize> {
        let s = self.stops.len();
        let prev = (i + s - 1) % s;
        let missing = || Error::MissingCoveringArc(self.stops[i].clone());
        if self.points_per_interval[prev] == 0 || self.points_per_interval[i] == 0 {
            return Err(missing());
        }
        let want = [[prev, self.points_per_interval[prev] - 1], [i, 0]];
        self.arcs
            .iter()
            .position(|a| a.ends == want || a.ends == [want[1], want[0]])
            .ok_or_else(missing)
    }
}

/// Crossing counts of the path leaving `start` for `steps` positions.
fn crossings(m: &DiskModel, start: usize, steps: usize) -> WeightVector {
    let n = m.circumference();
    let mut w = vec![0u32; m.stops.len()];
    for s in 0..m.stops.len() {
        let p = m.stop_position(s);
        let first = (p + n - start) % n;
        let first = if first == 0 { n } else { first };
        if steps >= first {
            w[s] = (1 + (steps - first) / n) as u32;
        }
    }
    WeightVector(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Path {
    start: usize,
    steps: usize,
}

pub fn disk_with_stops_category(m: &DiskModel) -> Result<AInftyStructure> {
    m.validate()?;
    let n = m.circumference();
    let bound = n * m.winding_bound;
    let objects: Vec<String> = m.arcs.iter().map(|a| a.name.clone()).collect();
    let mut b = StructureBuilder::new_owned(objects, m.stops.clone());
    let ends: Vec<[usize; 2]> = m.arcs.iter().map(|a| m.arc_positions(a)).collect();
    let owner: HashMap<usize, usize> = ends
        .iter()
        .enumerate()
        .flat_map(|(x, e)| e.iter().map(move |&p| (p, x)))
        .collect();
    let mut units = Vec::new();
    for (x, a) in m.arcs.iter().enumerate() {
        let e = b.add(&format!("e_{}", a.name), &a.name, &a.name, 0)?;
        b.set_unit(x, e);
        units.push(e);
    }
    let mut paths: HashMap<Path, GenId> = HashMap::new();
    let mut by_start: HashMap<usize, Vec<(Path, GenId)>> = HashMap::new();
    for (x, a) in m.arcs.iter().enumerate() {
        for &p in &ends[x] {
            for steps in 1..bound {
                let q = (p + steps) % n;
                let Some(&y) = owner.get(&q) else { continue };
                let w = crossings(m, p, steps);
                let degree = -(w.total() as i64);
                let name = format!("{}>{}:{steps}", m.point_label(p), m.point_label(q));
                let g = b.add_full(
                    &name,
                    &a.name,
                    &m.arcs[y].name,
                    degree,
                    w,
                    integer(steps as i64),
                )?;
                let path = Path { start: p, steps };
                paths.insert(path, g);
                by_start.entry(p).or_default().push((path, g));
            }
        }
    }
    for (x, &e) in units.iter().enumerate() {
        b.set_mu(&[e, e], &[e])?;
        for &p in &ends[x] {
            for &(path, g) in by_start.get(&p).into_iter().flatten() {
                let y = owner[&((path.start + path.steps) % n)];
                b.set_mu(&[g, e], &[g])?;
                b.set_mu(&[units[y], g], &[g])?;
            }
        }
    }
    let mut entries = Vec::new();
    for (&first, &g1) in &paths {
        let mid = (first.start + first.steps) % n;
        for &(second, g2) in by_start.get(&mid).into_iter().flatten() {
            let steps = first.steps + second.steps;
            if steps < bound {
                let comp = paths[&Path {
                    start: first.start,
                    steps,
                }];
                entries.push(([g2, g1], comp));
            }
        }
    }
    entries.sort();
    for (w, out) in entries {
        b.set_mu(&w, &[out])?;
    }
    b.max_arity(2);
    b.build()
}

/// Allowed crossing counts per stop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightConstraint(pub Vec<RangeInclusive<u32>>);

impl WeightConstraint {
    pub fn unconstrained(stops: usize) -> Self {
        WeightConstraint(vec![0..=u32::MAX; stops])
    }

    pub fn zero(stops: usize) -> Self {
        WeightConstraint(vec![0..=0; stops])
    }

    /// Exactly `count` crossings of `stop` and none of any other stop.
    pub fn only(stops: usize, stop: usize, count: u32) -> Self {
        let mut c = Self::zero(stops);
        c.0[stop] = count..=count;
        c
    }

    fn admits(&self, w: &[u32]) -> bool {
        self.0.iter().zip(w).all(|(r, n)| r.contains(n))
    }
}

/// Counts boundary paths from `X` to `Y` meeting the constraint by walking the
/// boundary one position at a time.
pub fn path_count_oracle(
    m: &DiskModel,
    x: &str,
    y: &str,
    constraint: &WeightConstraint,
) -> Result<usize> {
    m.validate()?;
    let arc = |name: &str| {
        m.arcs
            .iter()
            .find(|a| a.name == name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    };
    let (ax, ay) = (arc(x)?, arc(y)?);
    // Walk the boundary as a list of labelled cells.
    let mut cells: Vec<Option<(usize, usize)>> = Vec::new();
    let mut stop_cells = Vec::new();
    for (i, &k) in m.points_per_interval.iter().enumerate() {
        stop_cells.push(cells.len());
        cells.push(None);
        for idx in 0..k {
            cells.push(Some((i, idx)));
        }
    }
    let n = cells.len();
    let is_end =
        |a: &Arc, c: Option<(usize, usize)>| c.is_some_and(|(i, k)| a.ends.contains(&[i, k]));
    let mut count = 0;
    if x == y && constraint.admits(&vec![0; m.stops.len()]) {
        count += 1;
    }
    for start in (0..n).filter(|&p| is_end(ax, cells[p])) {
        let mut w = vec![0u32; m.stops.len()];
        let mut pos = start;
        for _ in 1..n * m.winding_bound {
            pos = (pos + 1) % n;
            if let Some(s) = stop_cells.iter().position(|&c| c == pos) {
                w[s] += 1;
            }
            if is_end(ay, cells[pos]) && constraint.admits(&w) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Inputs for comparing a quotient by a stop-covering arc with the category
/// in which that stop is removed.
pub struct StopRemovalCase {
    pub full: AInftyStructure,
    /// Generators of weight zero at every stop.
    pub stopped: AInftyStructure,
    /// Generators of weight zero at every stop except the removed one.
    pub reference: AInftyStructure,
    pub removed: usize,
    pub covering: ObjIdx,
}

pub fn stop_removal_testcase(m: &DiskModel, removed_stop: &str) -> Result<StopRemovalCase> {
    m.validate()?;
    let removed = m.stop_index(removed_stop)?;
    let covering = m.covering_arc(removed)?;
    let full = disk_with_stops_category(m)?;
    let all: Vec<&str> = m.stops.iter().map(String::as_str).collect();
    let others: Vec<&str> = all.iter().copied().filter(|s| *s != removed_stop).collect();
    Ok(StopRemovalCase {
        stopped: zero_filtered_subcategory(&full, &all)?,
        reference: zero_filtered_subcategory(&full, &others)?,
        full,
        removed,
        covering,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{verify_ainfty_relations, verify_degree_convention, AInfty};
    use crate::filtration::verify_filtration_subadditivity;

    #[test]
    fn necklace_layout() {
        let m = DiskModel::necklace(2, 1);
        m.validate().unwrap();
        assert_eq!(m.circumference(), 6);
        assert_eq!(m.stop_position(1), 3);
        assert_eq!(m.point_position(1, 1), 5);
        assert_eq!(m.covering_arc(0).unwrap(), 0);
        assert_eq!(m.covering_arc(1).unwrap(), 1);
    }

    #[test]
    fn crossing_counts() {
        let m = DiskModel::necklace(2, 2);
        // From I0.1 (position 2), 4 steps pass σ_1 at 3 and σ_0 at 6 ≡ 0.
        assert_eq!(crossings(&m, 2, 4).0, vec![1, 1]);
        assert_eq!(crossings(&m, 2, 1).0, vec![0, 1]);
        assert_eq!(crossings(&m, 2, 10).0, vec![2, 2]);
    }

    #[test]
    fn invalid_models() {
        let mut m = DiskModel::necklace(2, 1);
        m.arcs[1].ends = [[0, 0], [1, 1]];
        assert!(matches!(m.validate(), Err(Error::InvalidModel(_))));
        let mut m = DiskModel::necklace(3, 1);
        m.arcs.remove(2);
        assert!(matches!(
            stop_removal_testcase(&m, "s2"),
            Err(Error::MissingCoveringArc(_))
        ));
    }

    #[test]
    fn oracle_matches_hom_dimensions() {
        for s in 2..=4 {
            for w in 1..=2 {
                let m = DiskModel::necklace(s, w);
                let c = disk_with_stops_category(&m).unwrap();
                let stopped = zero_filtered_subcategory(
                    &c,
                    &m.stops.iter().map(String::as_str).collect::<Vec<_>>(),
                )
                .unwrap();
                for x in 0..s {
                    for y in 0..s {
                        let (nx, ny) = (&m.arcs[x].name, &m.arcs[y].name);
                        let all =
                            path_count_oracle(&m, nx, ny, &WeightConstraint::unconstrained(s))
                                .unwrap();
                        assert_eq!(c.hom_basis(x, y).len(), all);
                        let zero =
                            path_count_oracle(&m, nx, ny, &WeightConstraint::zero(s)).unwrap();
                        assert_eq!(stopped.hom_basis(x, y).len(), zero);
                    }
                }
            }
        }
    }

    #[test]
    fn disk_passes_core_checks() {
        let m = DiskModel::necklace(3, 2);
        let c = disk_with_stops_category(&m).unwrap();
        assert!(verify_ainfty_relations(&c, 4).is_empty());
        assert!(verify_degree_convention(&c).is_empty());
        assert!(verify_filtration_subadditivity(&c, 4).is_empty());
    }
}
