//! Metered access to a [`Graph`].
//!
//! The estimator never touches the graph directly. It sees degree, indexed
//! neighbor and pair queries plus uniform vertex sampling, each answered
//! through memo tables so that only *distinct* queries are counted. A revealed
//! neighbor also settles the pair query for that edge.
//!
//! The optional cap bounds distinct graph queries (degree + neighbor + pair).
//! Vertex samples are counted but never charged. Once a query is refused for
//! budget reasons, every later graph query is refused as well until the cap
//! is replaced with [`QueryOracle::set_cap`].

use rand::Rng;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{pair_key, precedes_by_degree, Graph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QueryError {
    #[error("query budget exhausted")]
    BudgetExhausted,
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    OutOfRange { vertex: VertexId, n: usize },
    #[error("cannot sample from an empty graph")]
    EmptyGraph,
    #[error("vertex {0} has no incident edges")]
    IsolatedVertex(VertexId),
    #[error("pair query needs two distinct vertices (got {0} twice)")]
    SamePair(VertexId),
    #[error("neighbor index must be at least 1")]
    ZeroIndex,
}

/// Distinct-query counters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "QueryStatsJson", try_from = "QueryStatsJson")]
pub struct QueryStats {
    pub degree_queries: u64,
    pub neighbor_queries: u64,
    pub pair_queries: u64,
    pub vertex_samples: u64,
}

impl QueryStats {
    pub fn total(&self) -> u64 {
        self.graph_queries() + self.vertex_samples
    }

    /// Degree, neighbor and pair queries; the quantity the budget caps.
    pub fn graph_queries(&self) -> u64 {
        self.degree_queries + self.neighbor_queries + self.pair_queries
    }

    /// Counter-wise difference `self - earlier`.
    pub fn since(&self, earlier: &QueryStats) -> QueryStats {
        QueryStats {
            degree_queries: self.degree_queries - earlier.degree_queries,
            neighbor_queries: self.neighbor_queries - earlier.neighbor_queries,
            pair_queries: self.pair_queries - earlier.pair_queries,
            vertex_samples: self.vertex_samples - earlier.vertex_samples,
        }
    }
}

impl std::ops::Add for QueryStats {
    type Output = QueryStats;

    fn add(self, o: QueryStats) -> QueryStats {
        QueryStats {
            degree_queries: self.degree_queries + o.degree_queries,
            neighbor_queries: self.neighbor_queries + o.neighbor_queries,
            pair_queries: self.pair_queries + o.pair_queries,
            vertex_samples: self.vertex_samples + o.vertex_samples,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QueryStatsJson {
    degree: u64,
    neighbor: u64,
    pair: u64,
    vertex_samples: u64,
    total: u64,
}

impl From<QueryStats> for QueryStatsJson {
    fn from(s: QueryStats) -> Self {
        QueryStatsJson {
            degree: s.degree_queries,
            neighbor: s.neighbor_queries,
            pair: s.pair_queries,
            vertex_samples: s.vertex_samples,
            total: s.total(),
        }
    }
}

impl TryFrom<QueryStatsJson> for QueryStats {
    type Error = String;

    fn try_from(j: QueryStatsJson) -> Result<Self, String> {
        let s = QueryStats {
            degree_queries: j.degree,
            neighbor_queries: j.neighbor,
            pair_queries: j.pair,
            vertex_samples: j.vertex_samples,
        };
        if s.total() != j.total {
            return Err(format!("total {} does not match counters ({})", j.total, s.total()));
        }
        Ok(s)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub cap: Option<u64>,
    pub exhausted: bool,
}

#[derive(Debug, Clone)]
pub struct QueryOracle<'g> {
    graph: &'g Graph,
    known_degree: Vec<bool>,
    // one bit per adjacency slot (v, i) with 1 <= i <= d_v
    known_slot: Vec<u64>,
    known_absent: FxHashSet<(VertexId, usize)>,
    known_pair: FxHashSet<u64>,
    stats: QueryStats,
    budget: Budget,
}

impl<'g> QueryOracle<'g> {
    pub fn new(graph: &'g Graph, cap: Option<u64>) -> Self {
        let slots = graph.degrees().sum::<usize>();
        QueryOracle {
            graph,
            known_degree: vec![false; graph.n()],
            known_slot: vec![0; slots.div_ceil(64)],
            known_absent: FxHashSet::default(),
            known_pair: FxHashSet::default(),
            stats: QueryStats::default(),
            budget: Budget {
                cap,
                exhausted: false,
            },
        }
    }

    pub fn unbounded(graph: &'g Graph) -> Self {
        Self::new(graph, None)
    }

    /// Number of vertices; part of the query model's public input.
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn stats(&self) -> QueryStats {
        self.stats
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    /// Replaces the cap and clears the exhausted flag.
    pub fn set_cap(&mut self, cap: Option<u64>) {
        self.budget = Budget {
            cap,
            exhausted: false,
        };
    }

    fn check(&self, v: VertexId) -> Result<(), QueryError> {
        if (v as usize) < self.graph.n() {
            Ok(())
        } else {
            Err(QueryError::OutOfRange {
                vertex: v,
                n: self.graph.n(),
            })
        }
    }

    fn live(&self) -> Result<(), QueryError> {
        if self.budget.exhausted {
            Err(QueryError::BudgetExhausted)
        } else {
            Ok(())
        }
    }

    fn charge(&mut self) -> Result<(), QueryError> {
        if let Some(cap) = self.budget.cap {
            if self.stats.graph_queries() >= cap {
                self.budget.exhausted = true;
                return Err(QueryError::BudgetExhausted);
            }
        }
        Ok(())
    }

    pub fn q_degree(&mut self, v: VertexId) -> Result<usize, QueryError> {
        self.check(v)?;
        self.live()?;
        if !self.known_degree[v as usize] {
            self.charge()?;
            self.known_degree[v as usize] = true;
            self.stats.degree_queries += 1;
        }
        Ok(self.graph.degree_of(v))
    }

    /// The `i`-th neighbor of `v` (1-based), `None` past the end of the list.
    pub fn q_neighbor(&mut self, v: VertexId, i: usize) -> Result<Option<VertexId>, QueryError> {
        self.check(v)?;
        if i == 0 {
            return Err(QueryError::ZeroIndex);
        }
        self.live()?;
        let d = self.graph.degree_of(v);
        if i > d {
            if !self.known_absent.contains(&(v, i)) {
                self.charge()?;
                self.known_absent.insert((v, i));
                self.stats.neighbor_queries += 1;
            }
            return Ok(None);
        }
        let slot = self.slot(v, i);
        let w = self.graph.neighbors(v)[i - 1];
        if self.known_slot[slot / 64] & (1 << (slot % 64)) == 0 {
            self.charge()?;
            self.known_slot[slot / 64] |= 1 << (slot % 64);
            self.stats.neighbor_queries += 1;
            self.known_pair.insert(pair_key(v, w));
        }
        Ok(Some(w))
    }

    fn slot(&self, v: VertexId, i: usize) -> usize {
        self.graph.adjacency_start(v) + i - 1
    }

    pub fn q_pair(&mut self, u: VertexId, v: VertexId) -> Result<bool, QueryError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(QueryError::SamePair(u));
        }
        self.live()?;
        let key = pair_key(u, v);
        if !self.known_pair.contains(&key) {
            self.charge()?;
            self.known_pair.insert(key);
            self.stats.pair_queries += 1;
        }
        Ok(self.graph.contains_edge(u, v))
    }

    /// Uniform vertex; counted as a sample on every call, never charged.
    pub fn sample_vertex<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<VertexId, QueryError> {
        let n = self.graph.n();
        if n == 0 {
            return Err(QueryError::EmptyGraph);
        }
        self.stats.vertex_samples += 1;
        Ok(rng.random_range(0..n) as VertexId)
    }

    /// A uniform edge `(v, x)` of `E_v`, drawn with a degree query and one
    /// neighbor query at a uniform index.
    pub fn q_random_edge_at<R: Rng + ?Sized>(
        &mut self,
        v: VertexId,
        rng: &mut R,
    ) -> Result<(VertexId, VertexId), QueryError> {
        let d = self.q_degree(v)?;
        if d == 0 {
            return Err(QueryError::IsolatedVertex(v));
        }
        let i = rng.random_range(1..=d);
        let x = self.q_neighbor(v, i)?.expect("index within degree");
        Ok((v, x))
    }

    /// `u ≺ v` using two (memoized) degree queries.
    pub fn precedes(&mut self, u: VertexId, v: VertexId) -> Result<bool, QueryError> {
        if u == v {
            return Err(QueryError::SamePair(u));
        }
        let du = self.q_degree(u)?;
        let dv = self.q_degree(v)?;
        Ok(precedes_by_degree(du, u, dv, v))
    }
}
