//! Triangle-count estimation.
//!
//! [`estimate_with_advice`] is one run given `(m̄, t̄)`: sample a vertex
//! multiset `S`, draw edges out of `S` proportionally to degree, and for each
//! edge probe neighbors of its `≺`-smaller endpoint for triangles assigned to
//! that edge. Witnessed triangles are weighted by the number of light corners,
//! and are dropped entirely when the sampled vertex itself is heavy.
//!
//! [`estimate`] removes the need for advice: `m̄` comes from an average-degree
//! estimate, and `t̄` from a doubly nested halving search starting at `n³`.
//! The search stage runs under a cap of `2m̄` distinct graph queries; on
//! exhaustion, or when the search ends without accepting a value, the graph is
//! read in full and counted exactly.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::advice::{clamp_epsilon, Advice};
use crate::exact::count_ordered;
use crate::graph::{GraphBuilder, VertexId};
use crate::heavy::{classify_heavy, lower_median, HeavyParams, Verdict};
use crate::oracle::{QueryError, QueryOracle, QueryStats};
use crate::rng::RngStreams;

/// Constant `c_H` bounding the mass of all-heavy triangles.
pub const C_H: f64 = 2000.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Theoretical,
    Practical,
}

/// How the search derives the per-run accuracy `ε'` from the requested `ε`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum EpsilonRule {
    /// `ε' = ε / (3 c_H)`.
    DivideByCh(f64),
    /// `ε' = ε`.
    Same,
}

impl EpsilonRule {
    pub fn apply(&self, eps: f64) -> f64 {
        match *self {
            EpsilonRule::DivideByCh(c_h) => eps / (3.0 * c_h),
            EpsilonRule::Same => eps,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CachePolicy {
    /// One classification per vertex per run, with coins fixed per vertex.
    PerRun,
    /// Classify on every encounter; diagnostics only.
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeigeParams {
    /// Accuracy parameter of the average-degree estimate.
    pub eps: f64,
    /// Multiplier on the group size `√n / ε`.
    pub c_f: f64,
    /// Group means per invocation; the invocation reports the smallest.
    pub groups: usize,
    /// Invocations to take the median over; `None` means `⌈10 ln n⌉`.
    pub reps: Option<usize>,
}

impl FeigeParams {
    pub fn group_size(&self, n: usize) -> usize {
        ((self.c_f * (n as f64).sqrt() / self.eps).ceil() as usize).max(1)
    }

    pub fn reps_for(&self, n: usize) -> usize {
        self.reps
            .unwrap_or_else(|| (10.0 * (n.max(2) as f64).ln()).ceil() as usize)
            .max(1)
    }
}

impl Default for FeigeParams {
    fn default() -> Self {
        FeigeParams {
            eps: 0.5,
            c_f: 1.0,
            groups: 8,
            reps: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimatorParams {
    pub c1: f64,
    pub c2: f64,
    pub s1_scale: f64,
    pub s2_scale: f64,
    pub epsilon_rule: EpsilonRule,
    pub heavy: HeavyParams,
    /// `c` in the per-advice run count `⌈c ε⁻¹ ln ln n⌉`.
    pub runs_constant: f64,
    /// Overrides the per-advice run count.
    pub min_runs: Option<usize>,
    pub feige: FeigeParams,
    pub cache: CachePolicy,
    /// Search-stage cap on distinct graph queries; `None` means `2m̄`.
    pub search_budget: Option<u64>,
    /// Coins for the `j`-th run at a given `t̄` are fixed across outer
    /// iterations, so a repeated level returns its earlier result.
    pub reuse_level_coins: bool,
}

impl EstimatorParams {
    pub fn theoretical() -> Self {
        EstimatorParams {
            c1: 1.0,
            c2: 1.0,
            s1_scale: 1.0,
            s2_scale: 1.0,
            epsilon_rule: EpsilonRule::DivideByCh(C_H),
            heavy: HeavyParams::theoretical(),
            runs_constant: 1.0,
            min_runs: None,
            feige: FeigeParams::default(),
            cache: CachePolicy::PerRun,
            search_budget: None,
            reuse_level_coins: false,
        }
    }

    /// Desk-scale constants. Not covered by the accuracy guarantee: `ε' = ε`
    /// and every sample count is scaled down.
    pub fn practical() -> Self {
        EstimatorParams {
            c1: 1.0,
            c2: 1.0,
            s1_scale: 1.0,
            s2_scale: 0.007,
            epsilon_rule: EpsilonRule::Same,
            heavy: HeavyParams {
                outer_reps: Some(3),
                s_scale: 1e-4,
            },
            runs_constant: 0.5,
            min_runs: None,
            feige: FeigeParams {
                eps: 0.5,
                c_f: 4.0,
                groups: 4,
                reps: Some(5),
            },
            cache: CachePolicy::PerRun,
            search_budget: None,
            reuse_level_coins: true,
        }
    }

    pub fn for_profile(profile: Profile) -> Self {
        match profile {
            Profile::Theoretical => Self::theoretical(),
            Profile::Practical => Self::practical(),
        }
    }

    /// `s₁ = c₁ ε⁻³ ln(n/ε) · n / t̄^{1/3}`, scaled, at least 1.
    pub fn vertex_samples(&self, n: usize, advice: Advice, eps: f64) -> u64 {
        let n_f = n as f64;
        let s1 = self.s1_scale * self.c1 * eps.powi(-3) * (n_f / eps).ln().max(1.0) * n_f
            / advice.t_bar.cbrt();
        (s1.ceil() as u64).max(1)
    }

    /// `s₂ = c₂ ε⁻⁴ ln²n · m̄^{3/2} / t̄`, scaled, at least 1.
    pub fn edge_samples(&self, n: usize, advice: Advice, eps: f64) -> u64 {
        let ln_n = (n.max(2) as f64).ln();
        let m_bar = advice.m_bar as f64;
        let s2 = self.s2_scale * self.c2 * eps.powi(-4) * ln_n * ln_n * m_bar * m_bar.sqrt()
            / advice.t_bar;
        (s2.ceil() as u64).max(1)
    }

    pub fn runs_per_advice(&self, n: usize, eps: f64) -> usize {
        self.min_runs
            .unwrap_or_else(|| {
                let lnln = (n.max(3) as f64).ln().ln().max(1.0);
                (self.runs_constant * lnln / eps).ceil() as usize
            })
            .max(1)
    }
}

impl Default for EstimatorParams {
    fn default() -> Self {
        Self::theoretical()
    }
}

/// Samples a member of a vertex multiset with probability proportional to its degree.
#[derive(Debug, Clone)]
pub struct DegreeWeightedSampler {
    members: Vec<VertexId>,
    // cumulative[i] = d of members[0..=i]
    cumulative: Vec<u64>,
}

impl DegreeWeightedSampler {
    pub fn new(members: Vec<VertexId>, degrees: &[u64]) -> Self {
        assert_eq!(members.len(), degrees.len());
        let cumulative = degrees
            .iter()
            .scan(0u64, |acc, &d| {
                *acc += d;
                Some(*acc)
            })
            .collect();
        DegreeWeightedSampler {
            members,
            cumulative,
        }
    }

    /// `d_S`, the total degree of the multiset.
    pub fn total(&self) -> u64 {
        self.cumulative.last().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Index into the multiset; `None` when `d_S = 0`.
    pub fn sample_index<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<usize> {
        let total = self.total();
        if total == 0 {
            return None;
        }
        let ticket = rng.random_range(0..total);
        Some(self.cumulative.partition_point(|&c| c <= ticket))
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<VertexId> {
        self.sample_index(rng).map(|i| self.members[i])
    }
}

/// Details of a single advice-driven run.
#[derive(Debug, Clone, PartialEq)]
pub struct AdviceRun {
    pub estimate: f64,
    pub s1: u64,
    pub s2: u64,
    pub degree_sum: u64,
    pub heavy_calls: u64,
    pub triangles_witnessed: u64,
}

struct HeavyCache {
    policy: CachePolicy,
    coins: u64,
    verdicts: FxHashMap<VertexId, Verdict>,
    encounters: u64,
    calls: u64,
}

impl HeavyCache {
    fn new(policy: CachePolicy, coins: u64) -> Self {
        HeavyCache {
            policy,
            coins,
            verdicts: FxHashMap::default(),
            encounters: 0,
            calls: 0,
        }
    }

    fn verdict(
        &mut self,
        o: &mut QueryOracle<'_>,
        v: VertexId,
        advice: Advice,
        eps: f64,
        params: &HeavyParams,
    ) -> Result<Verdict, QueryError> {
        if self.policy == CachePolicy::PerRun {
            if let Some(&known) = self.verdicts.get(&v) {
                return Ok(known);
            }
        }
        let stream = match self.policy {
            CachePolicy::PerRun => v as u64,
            CachePolicy::Off => {
                self.encounters += 1;
                ((self.encounters) << 32) | v as u64
            }
        };
        let mut rng = ChaCha8Rng::seed_from_u64(self.coins);
        rng.set_stream(stream);
        self.calls += 1;
        let verdict = classify_heavy(o, v, advice, eps, params, &mut rng)?.verdict;
        if self.policy == CachePolicy::PerRun {
            self.verdicts.insert(v, verdict);
        }
        Ok(verdict)
    }
}

/// One run with advice; returns the estimate `X`.
pub fn estimate_with_advice<R: Rng + ?Sized>(
    o: &mut QueryOracle<'_>,
    advice: Advice,
    eps: f64,
    params: &EstimatorParams,
    rng: &mut R,
) -> Result<f64, QueryError> {
    run_with_advice(o, advice, eps, params, rng).map(|r| r.estimate)
}

pub fn run_with_advice<R: Rng + ?Sized>(
    o: &mut QueryOracle<'_>,
    advice: Advice,
    eps: f64,
    params: &EstimatorParams,
    rng: &mut R,
) -> Result<AdviceRun, QueryError> {
    let eps = clamp_epsilon(eps);
    let n = o.n();
    let s1 = params.vertex_samples(n, advice, eps);
    let s2 = params.edge_samples(n, advice, eps);
    let mut cache = HeavyCache::new(params.cache, rng.random());

    let mut members = Vec::with_capacity(s1.min(1 << 24) as usize);
    let mut degrees = Vec::with_capacity(members.capacity());
    for _ in 0..s1 {
        let v = o.sample_vertex(rng)?;
        degrees.push(o.q_degree(v)? as u64);
        members.push(v);
    }
    let sampler = DegreeWeightedSampler::new(members, &degrees);
    let d_s = sampler.total();
    let mut run = AdviceRun {
        estimate: 0.0,
        s1,
        s2,
        degree_sum: d_s,
        heavy_calls: 0,
        triangles_witnessed: 0,
    };
    if d_s == 0 {
        return Ok(run);
    }

    let sqrt_m = advice.sqrt_m_bar();
    let mut sum_y = 0.0;
    for _ in 0..s2 {
        let v = sampler.sample(rng).expect("d_S > 0");
        let (_, x) = o.q_random_edge_at(v, rng)?;
        let (u, other) = if o.precedes(v, x)? { (v, x) } else { (x, v) };
        let d_u = o.q_degree(u)? as u64;
        let r = if (d_u as u128).pow(2) <= advice.m_bar as u128 {
            u64::from(rng.random_bool((d_u as f64 / sqrt_m).min(1.0)))
        } else {
            crate::heavy::ceil_div_sqrt(d_u, advice.m_bar)
        };
        if r == 0 {
            continue;
        }
        let scale = (d_u as f64).max(sqrt_m);
        let mut sum_z = 0.0;
        for _ in 0..r {
            let (_, w) = o.q_random_edge_at(u, rng)?;
            if w == other || !o.precedes(x, w)? || !o.q_pair(other, w)? {
                continue;
            }
            run.triangles_witnessed += 1;
            let mut light = 0u32;
            let mut v_heavy = false;
            for corner in [v, x, w] {
                let verdict = cache.verdict(o, corner, advice, eps, &params.heavy)?;
                if verdict == Verdict::Light {
                    light += 1;
                } else if corner == v {
                    v_heavy = true;
                }
            }
            if !v_heavy {
                sum_z += scale / light as f64;
            }
        }
        sum_y += sum_z / r as f64;
    }
    run.heavy_calls = cache.calls;
    run.estimate = n as f64 / (s1 as f64 * s2 as f64) * d_s as f64 * sum_y;
    Ok(run)
}

/// Median over invocations of the smallest group-mean degree.
pub fn feige_avg_degree<R: Rng + ?Sized>(
    o: &mut QueryOracle<'_>,
    params: &FeigeParams,
    rng: &mut R,
) -> Result<f64, QueryError> {
    let n = o.n();
    if n == 0 {
        return Err(QueryError::EmptyGraph);
    }
    let size = params.group_size(n);
    let mut invocations = Vec::with_capacity(params.reps_for(n));
    for _ in 0..params.reps_for(n) {
        let mut best = f64::INFINITY;
        for _ in 0..params.groups.max(1) {
            let mut sum = 0u64;
            for _ in 0..size {
                let v = o.sample_vertex(rng)?;
                sum += o.q_degree(v)? as u64;
            }
            best = best.min(sum as f64 / size as f64);
        }
        invocations.push(best);
    }
    Ok(lower_median(&mut invocations))
}

/// `m̄ = max(1, ⌈n·d̄/2⌉)`.
pub fn edge_advice(n: usize, avg_degree: f64) -> u64 {
    ((n as f64 * avg_degree / 2.0).ceil() as u64).max(1)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageQueries {
    pub feige: QueryStats,
    pub search: QueryStats,
    pub fallback: QueryStats,
    pub total: QueryStats,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub estimate: f64,
    pub epsilon: f64,
    /// Edge advice from the average-degree stage and the last `t̄` tried.
    pub advice: Option<Advice>,
    pub queries: StageQueries,
    /// Calls to the advice-driven estimator.
    pub runs: u64,
    /// Distinct `(t̃, t̄)` steps of the search.
    pub levels: u64,
    pub seed: u64,
    pub fallback_used: bool,
    /// The search-stage cap in force (`2m̄` unless overridden).
    pub search_cap: u64,
    pub wall_ms: u64,
}

enum SearchOutcome {
    Accepted(f64),
    Exhausted,
}

/// Estimates the triangle count with no prior knowledge of `m` or `t`.
pub fn estimate(
    o: &mut QueryOracle<'_>,
    eps: f64,
    params: &EstimatorParams,
    seed: u64,
) -> Result<EstimateReport, QueryError> {
    let started = Instant::now();
    assert!(eps > 0.0 && eps <= 1.0, "epsilon must lie in (0, 1]");
    let eps = clamp_epsilon(eps);
    let eps_run = params.epsilon_rule.apply(eps);
    let streams = RngStreams::new(seed);
    let n = o.n();
    let outer_cap = o.budget().cap;
    let at_start = o.stats();

    let mut report = EstimateReport {
        estimate: 0.0,
        epsilon: eps,
        advice: None,
        queries: StageQueries::default(),
        runs: 0,
        levels: 0,
        seed,
        fallback_used: false,
        search_cap: 0,
        wall_ms: 0,
    };
    if n == 0 {
        report.wall_ms = started.elapsed().as_millis() as u64;
        return Ok(report);
    }

    let d_bar = feige_avg_degree(o, &params.feige, &mut streams.stream("feige"))?;
    let m_bar = edge_advice(n, d_bar);
    let after_feige = o.stats();
    report.queries.feige = after_feige.since(&at_start);

    let search_cap = params.search_budget.unwrap_or(2 * m_bar);
    report.search_cap = search_cap;
    let cap = after_feige.graph_queries().saturating_add(search_cap);
    o.set_cap(Some(outer_cap.map_or(cap, |c| c.min(cap))));

    let runs_per_advice = params.runs_per_advice(n, eps) as u64;
    let n3 = (n as f64).powi(3);
    let mut last_t_bar = n3;
    let mut level_results: FxHashMap<u64, f64> = FxHashMap::default();
    let mut search = || -> Result<SearchOutcome, QueryError> {
        let mut t_tilde = n3;
        while t_tilde >= 1.0 {
            let mut t_bar = n3;
            loop {
                report.levels += 1;
                last_t_bar = t_bar;
                let advice = Advice::new(m_bar, t_bar);
                let key = t_bar.to_bits();
                let x = match level_results.get(&key) {
                    Some(&x) => x,
                    None => {
                        let mut x = f64::INFINITY;
                        for j in 0..runs_per_advice {
                            let mut rng = if params.reuse_level_coins {
                                streams.indexed("level", key ^ j.rotate_left(32))
                            } else {
                                streams.indexed("run", report.runs)
                            };
                            report.runs += 1;
                            x = x.min(estimate_with_advice(o, advice, eps_run, params, &mut rng)?);
                        }
                        if params.reuse_level_coins {
                            level_results.insert(key, x);
                        }
                        x
                    }
                };
                if x >= t_bar {
                    return Ok(SearchOutcome::Accepted(x));
                }
                if t_bar <= t_tilde {
                    break;
                }
                t_bar /= 2.0;
            }
            t_tilde /= 2.0;
        }
        Ok(SearchOutcome::Exhausted)
    };
    let outcome = match search() {
        Ok(outcome) => outcome,
        Err(QueryError::BudgetExhausted) => SearchOutcome::Exhausted,
        Err(e) => return Err(e),
    };
    report.advice = Some(Advice::new(m_bar, last_t_bar));
    let after_search = o.stats();
    report.queries.search = after_search.since(&after_feige);
    o.set_cap(outer_cap);

    match outcome {
        SearchOutcome::Accepted(x) => report.estimate = x,
        SearchOutcome::Exhausted => {
            report.fallback_used = true;
            report.estimate = read_and_count(o)? as f64;
        }
    }
    let end = o.stats();
    report.queries.fallback = end.since(&after_search);
    report.queries.total = end.since(&at_start);
    report.wall_ms = started.elapsed().as_millis() as u64;
    Ok(report)
}

/// Reads every adjacency list through the oracle and counts exactly.
pub fn read_and_count(o: &mut QueryOracle<'_>) -> Result<u64, QueryError> {
    let n = o.n();
    let mut builder = GraphBuilder::new(n);
    for v in 0..n as VertexId {
        let d = o.q_degree(v)?;
        for i in 1..=d {
            let w = o.q_neighbor(v, i)?.expect("index within degree");
            if v < w {
                builder.add_edge(v, w).expect("oracle answers describe a simple graph");
            }
        }
    }
    Ok(count_ordered(&builder.build()).t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Graph, GraphBuilder};

    fn clique(q: u32) -> Graph {
        let mut b = GraphBuilder::new(q as usize);
        for u in 0..q {
            for v in (u + 1)..q {
                b.add_edge(u, v).unwrap();
            }
        }
        b.build()
    }

    #[test]
    fn sample_size_formulas() {
        let p = EstimatorParams::theoretical();
        // s1 = 8 · ln(200) · 100 / 8 = 100 ln 200 = 529.83 -> 530
        assert_eq!(p.vertex_samples(100, Advice::new(10, 512.0), 0.5), 530);
        // s2 = 16 · ln²100 · 1000 / 1000 = 16 · 21.2076 = 339.32 -> 340
        assert_eq!(p.edge_samples(100, Advice::new(100, 1000.0), 0.5), 340);
        // ⌈ln ln 100 / 0.5⌉ = ⌈3.054⌉ = 4
        assert_eq!(p.runs_per_advice(100, 0.5), 4);
        assert!((EpsilonRule::DivideByCh(C_H).apply(0.6) - 0.0001).abs() < 1e-15);
    }

    #[test]
    fn sampler_probabilities_follow_degrees() {
        let s = DegreeWeightedSampler::new(vec![7, 8, 9, 7], &[1, 0, 3, 4]);
        assert_eq!(s.total(), 8);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut counts = [0u64; 4];
        let draws = 100_000u64;
        for _ in 0..draws {
            counts[s.sample_index(&mut rng).unwrap()] += 1;
        }
        assert_eq!(counts[1], 0);
        for (i, &d) in [1u64, 0, 3, 4].iter().enumerate() {
            let p = d as f64 / 8.0;
            let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
            assert!((counts[i] as f64 - draws as f64 * p).abs() <= 5.0 * sigma.max(1e-9));
        }
        let empty = DegreeWeightedSampler::new(vec![1, 2], &[0, 0]);
        assert_eq!(empty.sample(&mut rng), None);
    }

    #[test]
    fn triangle_free_runs_return_zero() {
        let mut b = GraphBuilder::new(20);
        for u in 0..10u32 {
            for v in 10..20u32 {
                b.add_edge(u, v).unwrap();
            }
        }
        let g = b.build();
        let mut o = QueryOracle::unbounded(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let params = EstimatorParams::practical();
        for t_bar in [1.0, 10.0, 1000.0] {
            let x = estimate_with_advice(&mut o, Advice::new(100, t_bar), 0.5, &params, &mut rng)
                .unwrap();
            assert_eq!(x, 0.0);
        }
    }

    #[test]
    fn isolated_sample_gives_zero() {
        // every vertex isolated: d_S = 0
        let g = Graph::empty(8);
        let mut o = QueryOracle::unbounded(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let run = run_with_advice(&mut o, Advice::new(1, 1.0), 0.5, &EstimatorParams::practical(), &mut rng)
            .unwrap();
        assert_eq!(run.degree_sum, 0);
        assert_eq!(run.estimate, 0.0);
    }

    #[test]
    fn heavy_verdicts_are_cached_per_run() {
        let g = clique(6);
        let mut params = EstimatorParams::practical();
        params.min_runs = Some(1);
        params.s2_scale = 1.0;
        let mut o = QueryOracle::unbounded(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        // large t̄ keeps the degree cutoff above 5 so classification samples
        let advice = Advice::new(15, 20.0);
        let run = run_with_advice(&mut o, advice, 0.5, &params, &mut rng).unwrap();
        assert!(run.triangles_witnessed > 6);
        assert!(run.heavy_calls <= 6);

        params.cache = CachePolicy::Off;
        let run = run_with_advice(&mut o, advice, 0.5, &params, &mut rng).unwrap();
        assert_eq!(run.heavy_calls, 3 * run.triangles_witnessed);
    }

    #[test]
    fn feige_on_regular_and_single_edge_graphs() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let mut o = QueryOracle::unbounded(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(feige_avg_degree(&mut o, &FeigeParams::default(), &mut rng).unwrap(), 1.0);

        // cycle: 2-regular
        let n = 50u32;
        let g = Graph::from_edges(n as usize, (0..n).map(|i| (i, (i + 1) % n))).unwrap();
        let mut o = QueryOracle::unbounded(&g);
        assert_eq!(feige_avg_degree(&mut o, &FeigeParams::default(), &mut rng).unwrap(), 2.0);

        let g = Graph::empty(0);
        let mut o = QueryOracle::unbounded(&g);
        assert_eq!(
            feige_avg_degree(&mut o, &FeigeParams::default(), &mut rng),
            Err(QueryError::EmptyGraph)
        );
    }

    #[test]
    fn estimate_on_triangle_free_graph_falls_back_to_zero() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let mut o = QueryOracle::unbounded(&g);
        let report = estimate(&mut o, 0.5, &EstimatorParams::practical(), 1).unwrap();
        assert_eq!(report.estimate, 0.0);
        assert!(report.fallback_used);
        assert!(report.queries.search.graph_queries() <= report.search_cap);
    }

    #[test]
    fn estimate_is_deterministic_for_a_seed() {
        let g = clique(9);
        let run = |seed| {
            let mut o = QueryOracle::unbounded(&g);
            let mut r = estimate(&mut o, 0.5, &EstimatorParams::practical(), seed).unwrap();
            r.wall_ms = 0;
            r
        };
        assert_eq!(run(4), run(4));
    }

    #[test]
    fn tiny_budget_override_still_exact() {
        let g = clique(12);
        let mut params = EstimatorParams::practical();
        params.search_budget = Some(10);
        let mut o = QueryOracle::unbounded(&g);
        let report = estimate(&mut o, 0.5, &params, 9).unwrap();
        assert!(report.fallback_used);
        assert_eq!(report.estimate, 220.0);
        assert!(report.queries.search.graph_queries() <= 10);
    }

    #[test]
    fn empty_graph_estimate_is_zero() {
        let g = Graph::empty(0);
        let mut o = QueryOracle::unbounded(&g);
        let report = estimate(&mut o, 0.5, &EstimatorParams::practical(), 0).unwrap();
        assert_eq!(report.estimate, 0.0);
    }
}
