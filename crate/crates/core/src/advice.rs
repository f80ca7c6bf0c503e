use serde::{Deserialize, Serialize};

use crate::exact::TriangleStats;
use crate::graph::Graph;

/// Edge- and triangle-count guesses `(m̄, t̄)` that drive one estimation run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Advice {
    pub m_bar: u64,
    pub t_bar: f64,
}

impl Advice {
    pub fn new(m_bar: u64, t_bar: f64) -> Self {
        assert!(m_bar >= 1, "m_bar must be positive");
        assert!(t_bar > 0.0, "t_bar must be positive");
        Advice { m_bar, t_bar }
    }

    /// `t/4 <= t̄ <= t` and `m/6 <= m̄`.
    pub fn conforms(&self, g: &Graph, t: u64) -> bool {
        let t = t as f64;
        t / 4.0 <= self.t_bar && self.t_bar <= t && (g.m() as f64) / 6.0 <= self.m_bar as f64
    }

    pub fn sqrt_m_bar(&self) -> f64 {
        (self.m_bar as f64).sqrt()
    }
}

/// Accuracy parameters above 1/2 are run at 1/2.
pub fn clamp_epsilon(eps: f64) -> f64 {
    assert!(eps > 0.0 && eps.is_finite(), "epsilon must be positive");
    eps.min(0.5)
}

/// The heavy/light cutoffs derived from `(m̄, t̄, ε)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    /// `2m̄ / (ε t̄)^{1/3}`: any larger degree is heavy outright.
    pub degree_cutoff: f64,
    /// `2 t̄^{2/3} / ε^{1/3}`: a triangle count above this is heavy.
    pub heavy_triangles: f64,
    /// `t̄^{2/3} / (2 ε^{1/3})`: at or below this (with small degree) is light.
    pub light_triangles: f64,
    /// `t̄^{2/3} / ε^{1/3}`: the classifier's decision point for the median estimate.
    pub decision: f64,
}

impl Thresholds {
    pub fn new(advice: Advice, eps: f64) -> Self {
        let eps = clamp_epsilon(eps);
        let m_bar = advice.m_bar as f64;
        let t23 = advice.t_bar.powf(2.0 / 3.0);
        let e13 = eps.cbrt();
        Thresholds {
            degree_cutoff: 2.0 * m_bar / (eps * advice.t_bar).cbrt(),
            heavy_triangles: 2.0 * t23 / e13,
            light_triangles: t23 / (2.0 * e13),
            decision: t23 / e13,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    Heavy,
    Light,
    /// Neither heavy nor light: either verdict is acceptable.
    Borderline,
}

/// Ground-truth heavy/light labels from exact per-vertex triangle counts.
pub fn label_ground_truth(stats: &TriangleStats, g: &Graph, advice: Advice, eps: f64) -> Vec<Label> {
    let th = Thresholds::new(advice, eps);
    (0..g.n())
        .map(|v| {
            let d = g.degree_of(v as u32) as f64;
            let tv = stats.t_v[v] as f64;
            if d > th.degree_cutoff || tv > th.heavy_triangles {
                Label::Heavy
            } else if tv <= th.light_triangles {
                Label::Light
            } else {
                Label::Borderline
            }
        })
        .collect()
}
