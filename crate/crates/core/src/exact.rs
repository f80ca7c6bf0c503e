//! Exact triangle counting.
//!
//! Two independent counters producing the same [`TriangleStats`]:
//! [`count_brute`] tests every (edge, vertex) pair, and [`count_ordered`]
//! orients each edge by `≺` and intersects from the lower endpoint.
//!
//! Each triangle at `v` with other corners `x, w` is assigned to the directed
//! edge `(v, x)` when `x ≺ w`, so the per-edge counts `t_e` partition `t_v`.

use std::collections::BTreeMap;

use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleStats {
    pub t: u64,
    pub t_v: Vec<u64>,
    /// Nonzero assigned counts keyed by directed edge `(v, x)`.
    #[serde(serialize_with = "ser_edge_counts", deserialize_with = "de_edge_counts")]
    pub t_e: BTreeMap<(VertexId, VertexId), u64>,
}

fn ser_edge_counts<S: Serializer>(
    map: &BTreeMap<(VertexId, VertexId), u64>,
    s: S,
) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(map.len()))?;
    for (&(v, x), &c) in map {
        seq.serialize_element(&[v as u64, x as u64, c])?;
    }
    seq.end()
}

fn de_edge_counts<'de, D: Deserializer<'de>>(
    d: D,
) -> Result<BTreeMap<(VertexId, VertexId), u64>, D::Error> {
    let rows: Vec<[u64; 3]> = Vec::deserialize(d)?;
    Ok(rows
        .into_iter()
        .map(|[v, x, c]| ((v as VertexId, x as VertexId), c))
        .collect())
}

impl TriangleStats {
    fn empty(n: usize) -> Self {
        TriangleStats {
            t: 0,
            t_v: vec![0; n],
            t_e: BTreeMap::new(),
        }
    }

    /// Records one triangle given its corners sorted by `≺` (`a ≺ b ≺ c`).
    fn record(&mut self, a: VertexId, b: VertexId, c: VertexId) {
        self.t += 1;
        for v in [a, b, c] {
            self.t_v[v as usize] += 1;
        }
        // at a: b ≺ c, so (a, b); at b: a ≺ c, so (b, a); at c: a ≺ b, so (c, a)
        for key in [(a, b), (b, a), (c, a)] {
            *self.t_e.entry(key).or_insert(0) += 1;
        }
    }

    pub fn assigned(&self, v: VertexId, x: VertexId) -> u64 {
        self.t_e.get(&(v, x)).copied().unwrap_or(0)
    }

    /// Checks the counting identities; returns a description of the first violation.
    pub fn check_identities(&self, g: &Graph) -> Result<(), String> {
        let sum_tv: u64 = self.t_v.iter().sum();
        if sum_tv != 3 * self.t {
            return Err(format!("sum of t_v = {sum_tv}, expected 3t = {}", 3 * self.t));
        }
        let mut per_vertex = vec![0u64; g.n()];
        for (&(v, x), &c) in &self.t_e {
            if !g.contains_edge(v, x) {
                return Err(format!("t_e entry on non-edge ({v}, {x})"));
            }
            per_vertex[v as usize] += c;
        }
        if let Some(v) = (0..g.n()).find(|&v| per_vertex[v] != self.t_v[v]) {
            return Err(format!(
                "vertex {v}: sum of t_e = {}, t_v = {}",
                per_vertex[v], self.t_v[v]
            ));
        }
        // t_e <= √(2m) compared in integers: t_e² <= 2m
        let two_m = 2 * g.m() as u64;
        if let Some((e, c)) = self.t_e.iter().find(|(_, &c)| c * c > two_m) {
            return Err(format!("t_e{e:?} = {c} exceeds sqrt(2m)"));
        }
        // t <= (4/3) m^{3/2}  <=>  9 t² <= 16 m³
        let m = g.m() as u128;
        if 9 * (self.t as u128).pow(2) > 16 * m.pow(3) {
            return Err(format!("t = {} exceeds (4/3) m^(3/2)", self.t));
        }
        Ok(())
    }
}

fn sort3_by_order(g: &Graph, mut tri: [VertexId; 3]) -> [VertexId; 3] {
    tri.sort_by(|&x, &y| {
        if x == y {
            std::cmp::Ordering::Equal
        } else if g.precedes_unchecked(x, y) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    tri
}

/// Reference counter: for each edge `{a, b}` with `a < b`, tests every vertex
/// `c > b` for adjacency to both ends.
pub fn count_brute(g: &Graph) -> TriangleStats {
    let mut stats = TriangleStats::empty(g.n());
    let n = g.n() as VertexId;
    for (a, b) in g.edges() {
        for c in (b + 1)..n {
            if g.contains_edge(a, c) && g.contains_edge(b, c) {
                let [x, y, z] = sort3_by_order(g, [a, b, c]);
                stats.record(x, y, z);
            }
        }
    }
    stats
}

/// Edge-iterator counter. Every edge is oriented `u → v` with `u ≺ v`; for each
/// such edge the successors `w` of `u` with `v ≺ w` are probed against `v`,
/// which finds every triangle exactly once at its `≺`-smallest corner.
pub fn count_ordered(g: &Graph) -> TriangleStats {
    let mut stats = TriangleStats::empty(g.n());
    for u in 0..g.n() as VertexId {
        let succ: Vec<VertexId> = g
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&w| g.precedes_unchecked(u, w))
            .collect();
        for &v in &succ {
            for &w in &succ {
                if w != v && g.precedes_unchecked(v, w) && g.contains_edge(v, w) {
                    stats.record(u, v, w);
                }
            }
        }
    }
    stats
}
