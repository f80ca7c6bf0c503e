//! Randomized heavy/light classification of a single vertex.
//!
//! A vertex is declared heavy outright when its degree exceeds the degree
//! cutoff. Otherwise its triangle count `t_v` is estimated by a median of
//! independent means: each mean samples edges `e = (v, x)` of `v`, and for each
//! edge probes `r = ⌈d_u/√m̄⌉` random neighbors `w` of the `≺`-smaller endpoint
//! `u`, scoring `d_u` whenever `w` closes a triangle with `x ≺ w`. That score
//! has expectation `t_e`, so every mean is an unbiased estimate of `t_v`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::advice::{clamp_epsilon, Advice, Thresholds};
use crate::graph::VertexId;
use crate::oracle::{QueryError, QueryOracle};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeavyParams {
    /// Number of independent means; `None` means `⌈10 ln n⌉`.
    pub outer_reps: Option<usize>,
    /// Multiplier on the per-mean edge sample count `20 m̄^{3/2} / (ε² t̄)`.
    pub s_scale: f64,
}

impl HeavyParams {
    pub fn theoretical() -> Self {
        HeavyParams {
            outer_reps: None,
            s_scale: 1.0,
        }
    }

    /// Reduced sampling for desk-scale runs; carries no accuracy guarantee.
    pub fn practical() -> Self {
        HeavyParams {
            outer_reps: Some(5),
            s_scale: 1.0 / 20.0,
        }
    }

    pub fn reps_for(&self, n: usize) -> usize {
        self.outer_reps
            .unwrap_or_else(|| (10.0 * (n.max(2) as f64).ln()).ceil() as usize)
            .max(1)
    }

    pub fn samples_for(&self, advice: Advice, eps: f64) -> u64 {
        let eps = clamp_epsilon(eps);
        let m_bar = advice.m_bar as f64;
        let s = self.s_scale * 20.0 * m_bar * m_bar.sqrt() / (eps * eps * advice.t_bar);
        // float-to-int casts saturate
        (s.ceil() as u64).max(1)
    }
}

impl Default for HeavyParams {
    fn default() -> Self {
        Self::theoretical()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Heavy,
    Light,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeavyVerdict {
    pub verdict: Verdict,
    /// The per-repetition estimates of `t_v`; empty when no sampling happened.
    pub estimates: Vec<f64>,
    /// Distinct graph queries charged during the call.
    pub queries_used: u64,
}

/// `⌈d / √m̄⌉` in exact integer arithmetic: the least `r` with `r²·m̄ >= d²`.
pub fn ceil_div_sqrt(d: u64, m_bar: u64) -> u64 {
    let (d2, m) = (d as u128 * d as u128, m_bar as u128);
    let mut r = (d as f64 / (m_bar as f64).sqrt()).ceil() as u128;
    while r > 0 && (r - 1) * (r - 1) * m >= d2 {
        r -= 1;
    }
    while r * r * m < d2 {
        r += 1;
    }
    r as u64
}

/// Lower median; the input is reordered.
pub fn lower_median(values: &mut [f64]) -> f64 {
    assert!(!values.is_empty());
    values.sort_by(|a, b| a.total_cmp(b));
    values[(values.len() - 1) / 2]
}

pub fn classify_heavy<R: Rng + ?Sized>(
    o: &mut QueryOracle<'_>,
    v: VertexId,
    advice: Advice,
    eps: f64,
    params: &HeavyParams,
    rng: &mut R,
) -> Result<HeavyVerdict, QueryError> {
    let start = o.stats().graph_queries();
    let th = Thresholds::new(advice, eps);
    let d_v = o.q_degree(v)?;
    let done = |o: &QueryOracle<'_>, verdict, estimates| HeavyVerdict {
        verdict,
        estimates,
        queries_used: o.stats().graph_queries() - start,
    };
    if d_v as f64 > th.degree_cutoff {
        return Ok(done(o, Verdict::Heavy, Vec::new()));
    }
    if d_v == 0 {
        return Ok(done(o, Verdict::Light, Vec::new()));
    }

    let reps = params.reps_for(o.n());
    let s = params.samples_for(advice, eps);
    let mut estimates = Vec::with_capacity(reps);
    for _ in 0..reps {
        let mut sum_y = 0.0;
        for _ in 0..s {
            let (_, x) = o.q_random_edge_at(v, rng)?;
            let (u, other) = if o.precedes(v, x)? { (v, x) } else { (x, v) };
            let d_u = o.q_degree(u)? as u64;
            let r = ceil_div_sqrt(d_u, advice.m_bar);
            let mut hits = 0u64;
            for _ in 0..r {
                let (_, w) = o.q_random_edge_at(u, rng)?;
                if w != other && o.precedes(x, w)? && o.q_pair(other, w)? {
                    hits += 1;
                }
            }
            sum_y += (hits * d_u) as f64 / r as f64;
        }
        estimates.push(d_v as f64 * sum_y / s as f64);
    }
    let median = lower_median(&mut estimates.clone());
    let verdict = if median > th.decision {
        Verdict::Heavy
    } else {
        Verdict::Light
    };
    Ok(done(o, verdict, estimates))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Graph, GraphBuilder};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn star(leaves: u32) -> Graph {
        let mut b = GraphBuilder::new(leaves as usize + 1);
        for i in 1..=leaves {
            b.add_edge(0, i).unwrap();
        }
        b.build()
    }

    #[test]
    fn integer_ceiling() {
        assert_eq!(ceil_div_sqrt(0, 7), 0);
        assert_eq!(ceil_div_sqrt(4, 16), 1);
        assert_eq!(ceil_div_sqrt(5, 16), 2);
        assert_eq!(ceil_div_sqrt(8, 16), 2);
        assert_eq!(ceil_div_sqrt(9, 16), 3);
        // √2 · 10 = 14.14..., so ⌈15/√2⌉ = ⌈10.606⌉ = 11
        assert_eq!(ceil_div_sqrt(15, 2), 11);
        for d in 0..200u64 {
            for m in 1..60u64 {
                let r = ceil_div_sqrt(d, m);
                assert!(r * r * m >= d * d);
                assert!(r == 0 || (r - 1) * (r - 1) * m < d * d);
            }
        }
    }

    #[test]
    fn lower_median_of_even_count() {
        assert_eq!(lower_median(&mut [4.0, 1.0, 3.0, 2.0]), 2.0);
        assert_eq!(lower_median(&mut [5.0, 1.0, 3.0]), 3.0);
    }

    #[test]
    fn sample_count_formula() {
        // 20 · 100^{3/2} / (0.25 · 50) = 1600
        let p = HeavyParams::theoretical();
        assert_eq!(p.samples_for(Advice::new(100, 50.0), 0.5), 1600);
        assert_eq!(HeavyParams::practical().samples_for(Advice::new(100, 50.0), 0.5), 80);
        assert_eq!(p.reps_for(100), 47);
    }

    #[test]
    fn isolated_vertex_is_light() {
        let g = Graph::empty(5);
        let mut o = QueryOracle::unbounded(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let out = classify_heavy(&mut o, 3, Advice::new(1, 1.0), 0.5, &HeavyParams::theoretical(), &mut rng)
            .unwrap();
        assert_eq!(out.verdict, Verdict::Light);
        assert_eq!(out.queries_used, 1);
    }

    #[test]
    fn degree_cutoff_short_circuits() {
        // cutoff 2·m̄/(ε t̄)^{1/3} = 2·4/1 = 8 with m̄ = 4, t̄ = 2, ε = 1/2
        let g = star(9);
        let mut o = QueryOracle::unbounded(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let out = classify_heavy(&mut o, 0, Advice::new(4, 2.0), 0.5, &HeavyParams::theoretical(), &mut rng)
            .unwrap();
        assert_eq!(out.verdict, Verdict::Heavy);
        assert!(out.estimates.is_empty());
        assert_eq!(out.queries_used, 1);
        assert_eq!(o.stats().graph_queries(), 1);
    }

    #[test]
    fn star_center_is_light_without_triangles() {
        let g = star(30);
        let mut o = QueryOracle::unbounded(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let out = classify_heavy(&mut o, 0, Advice::new(30, 1.0), 0.5, &HeavyParams::practical(), &mut rng)
            .unwrap();
        assert_eq!(out.verdict, Verdict::Light);
        assert!(out.estimates.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn fixed_seed_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let g = crate::graph::random_gnp(60, 0.3, &mut rng);
        let run = || {
            let mut o = QueryOracle::unbounded(&g);
            let mut rng = ChaCha8Rng::seed_from_u64(99);
            classify_heavy(&mut o, 5, Advice::new(200, 50.0), 0.5, &HeavyParams::practical(), &mut rng)
                .unwrap()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn budget_exhaustion_propagates() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let g = crate::graph::random_gnp(60, 0.3, &mut rng);
        let mut o = QueryOracle::new(&g, Some(5));
        let out = classify_heavy(&mut o, 5, Advice::new(200, 50.0), 0.5, &HeavyParams::practical(), &mut rng);
        assert_eq!(out, Err(QueryError::BudgetExhausted));
    }
}
