#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tricount::{Graph, GraphBuilder, VertexId};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn clique(q: u32) -> Graph {
    let mut b = GraphBuilder::new(q as usize);
    for u in 0..q {
        for v in (u + 1)..q {
            b.add_edge(u, v).unwrap();
        }
    }
    b.build()
}

/// Hub `0` joined to a rim cycle `1..=rim`.
pub fn wheel(rim: u32) -> Graph {
    let mut b = GraphBuilder::new(rim as usize + 1);
    for i in 1..=rim {
        b.add_edge(0, i).unwrap();
        b.add_edge(i, i % rim + 1).unwrap();
    }
    b.build()
}

/// Exact `E[X]` of one advice-driven run for a fixed heavy set, by enumerating
/// every (vertex, edge, probe) outcome: `Σ_{v light} Σ_{x ∈ N(v)} Σ_{w ∈ N(u)} [triangle, x ≺ w] / ℓ`.
pub fn expected_x(g: &Graph, heavy: &[bool]) -> f64 {
    let before = |a: VertexId, b: VertexId| {
        let (da, db) = (g.degree_of(a), g.degree_of(b));
        da < db || (da == db && a < b)
    };
    let mut total = 0.0;
    for v in 0..g.n() as VertexId {
        if heavy[v as usize] {
            continue;
        }
        for &x in g.neighbors(v) {
            let (u, other) = if before(v, x) { (v, x) } else { (x, v) };
            for &w in g.neighbors(u) {
                if w != other && before(x, w) && g.contains_edge(other, w) {
                    let light = [v, x, w].iter().filter(|&&c| !heavy[c as usize]).count();
                    total += 1.0 / light as f64;
                }
            }
        }
    }
    total
}

pub fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Two-sample Kolmogorov–Smirnov statistic.
pub fn ks_statistic(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / a.len() as f64 - j as f64 / b.len() as f64).abs());
    }
    d
}

/// Critical value of the two-sample KS test at `α = 0.01`.
pub fn ks_critical_01(n: usize, m: usize) -> f64 {
    1.628 * (((n + m) as f64) / (n * m) as f64).sqrt()
}
