//! Instance families from the lower-bound constructions.
//!
//! Every generator returns the graph with its exact triangle count. Bipartite
//! components use the first ids (`L = [0, s)`, `R = [s, 2s)`, and for the
//! double-bipartite family `A, B, C, D` in consecutive blocks of `s`), and
//! isolated vertices fill the tail unless [`GenSpec::shuffle`] relabels
//! everything with a uniform permutation.

use rand::seq::{index, SliceRandom};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::count_ordered;
use crate::graph::{pair_key, Graph, GraphBuilder, VertexId};

const MATCHING_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Clique,
    G1Bipartite,
    G2Matching,
    G2MultiMatching,
    G2PartialMatching,
    G1DoubleBipartite,
    SpecialFour,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Clique,
        Family::G1Bipartite,
        Family::G2Matching,
        Family::G2MultiMatching,
        Family::G2PartialMatching,
        Family::G1DoubleBipartite,
        Family::SpecialFour,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Clique => "clique",
            Family::G1Bipartite => "g1-bipartite",
            Family::G2Matching => "g2-matching",
            Family::G2MultiMatching => "g2-multi-matching",
            Family::G2PartialMatching => "g2-partial-matching",
            Family::G1DoubleBipartite => "g1-double-bipartite",
            Family::SpecialFour => "special-four",
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == name)
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("missing parameter --{0} for this family")]
    Missing(&'static str),
    #[error("could not draw {0} edge-disjoint matchings after {MATCHING_ATTEMPTS} attempts")]
    MatchingRetries(usize),
}

fn invalid(msg: impl Into<String>) -> GenError {
    GenError::Invalid(msg.into())
}

/// Parameters echoed into sidecars; absent fields do not apply to the family.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenParams {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub family: Family,
    pub params: GenParams,
    pub seed: u64,
    #[serde(default)]
    pub shuffle: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenResult {
    pub graph: Graph,
    pub exact_t: u64,
    pub formula_name: &'static str,
    pub family: Family,
    pub params: GenParams,
    /// Edges actually emitted; the double-bipartite families carry `2s²`.
    pub edges_actual: usize,
}

/// Sidecar written next to generated edge lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSidecar {
    pub family: Family,
    pub params: GenParams,
    pub seed: u64,
    pub shuffle: bool,
    pub exact_t: u64,
    pub formula: String,
    pub n: usize,
    pub m: usize,
}

impl GenResult {
    fn new(graph: Graph, exact_t: u64, formula_name: &'static str, family: Family, params: GenParams) -> Self {
        let edges_actual = graph.m();
        GenResult {
            graph,
            exact_t,
            formula_name,
            family,
            params,
            edges_actual,
        }
    }

    pub fn sidecar(&self, seed: u64, shuffle: bool) -> GenSidecar {
        GenSidecar {
            family: self.family,
            params: self.params.clone(),
            seed,
            shuffle,
            exact_t: self.exact_t,
            formula: self.formula_name.to_string(),
            n: self.graph.n(),
            m: self.graph.m(),
        }
    }

    /// Relabels all vertices by a uniform permutation.
    pub fn shuffled<R: Rng + ?Sized>(mut self, rng: &mut R) -> Self {
        let mut perm: Vec<VertexId> = (0..self.graph.n() as VertexId).collect();
        perm.shuffle(rng);
        self.graph = self.graph.relabel(&perm);
        self
    }
}

/// Runs the generator named by `spec` with a ChaCha8 stream seeded from `spec.seed`.
pub fn generate(spec: &GenSpec) -> Result<GenResult, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let p = &spec.params;
    let side = || p.side.ok_or(GenError::Missing("side"));
    let result = match spec.family {
        Family::Clique => gen_clique_family(p.n, p.t.ok_or(GenError::Missing("t"))?, &mut rng)?,
        Family::G1Bipartite => gen_g1_bipartite(p.n, side()?)?,
        Family::G2Matching => gen_g2_matching(p.n, side()?, &mut rng)?,
        Family::G2MultiMatching => {
            gen_g2_multi_matching(p.n, side()?, p.r.ok_or(GenError::Missing("r"))?, &mut rng)?
        }
        Family::G2PartialMatching => {
            gen_g2_partial_matching(p.n, side()?, p.k.ok_or(GenError::Missing("k"))?, &mut rng)?
        }
        Family::G1DoubleBipartite | Family::SpecialFour => gen_special_four(
            p.n,
            side()?,
            p.t.ok_or(GenError::Missing("t"))?,
            spec.family == Family::SpecialFour,
            &mut rng,
        )?,
    };
    Ok(if spec.shuffle {
        result.shuffled(&mut rng)
    } else {
        result
    })
}

fn binomial3(q: u64) -> u64 {
    if q < 3 {
        0
    } else {
        q * (q - 1) * (q - 2) / 6
    }
}

fn integer_cbrt(t: u64) -> u64 {
    let mut q = (t as f64).cbrt().round() as u64;
    while q > 0 && q.saturating_pow(3) > t {
        q -= 1;
    }
    while (q + 1).saturating_pow(3) <= t {
        q += 1;
    }
    q
}

/// A clique on `⌊t^{1/3}⌋` uniformly chosen ids; every other vertex is isolated.
pub fn gen_clique_family<R: Rng + ?Sized>(n: usize, t: u64, rng: &mut R) -> Result<GenResult, GenError> {
    let q = integer_cbrt(t);
    if q < 3 {
        return Err(invalid(format!("clique size floor(t^(1/3)) = {q} is below 3")));
    }
    if (q as usize) > n {
        return Err(invalid(format!("clique size {q} exceeds n = {n}")));
    }
    let mut members: Vec<VertexId> = index::sample(rng, n, q as usize)
        .into_iter()
        .map(|v| v as VertexId)
        .collect();
    members.sort_unstable();
    let mut b = GraphBuilder::new(n);
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            b.add_edge(u, v).expect("distinct clique members");
        }
    }
    let params = GenParams {
        n,
        t: Some(t),
        ..GenParams::default()
    };
    Ok(GenResult::new(b.build(), binomial3(q), "C(q,3)", Family::Clique, params))
}

fn side_params(n: usize, s: usize) -> GenParams {
    GenParams {
        n,
        side: Some(s),
        ..GenParams::default()
    }
}

fn check_side(n: usize, s: usize, need_even: bool) -> Result<(), GenError> {
    if s == 0 {
        return Err(invalid("side must be positive"));
    }
    if need_even && !s.is_multiple_of(2) {
        return Err(invalid(format!("side {s} must be even")));
    }
    if n < 2 * s {
        return Err(invalid(format!("n = {n} is smaller than 2 * side = {}", 2 * s)));
    }
    Ok(())
}

fn left(i: usize) -> VertexId {
    i as VertexId
}

fn right(s: usize, i: usize) -> VertexId {
    (s + i) as VertexId
}

fn complete_bipartite(n: usize, s: usize) -> GraphBuilder {
    let mut b = GraphBuilder::new(n);
    for i in 0..s {
        for j in 0..s {
            b.add_edge(left(i), right(s, j)).expect("fresh edge");
        }
    }
    b
}

/// `K_{s,s}` followed by isolated vertices.
pub fn gen_g1_bipartite(n: usize, s: usize) -> Result<GenResult, GenError> {
    check_side(n, s, false)?;
    let graph = complete_bipartite(n, s).build();
    Ok(GenResult::new(graph, 0, "0", Family::G1Bipartite, side_params(n, s)))
}

/// Draws `count` pairwise edge-disjoint perfect matchings of the bipartite
/// graph `[0, s) × [0, s)`, returned as permutations.
fn disjoint_permutations<R: Rng + ?Sized>(
    s: usize,
    count: usize,
    rng: &mut R,
) -> Result<Vec<Vec<usize>>, GenError> {
    let mut used = vec![vec![false; s]; s];
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let perm = (0..MATCHING_ATTEMPTS)
            .find_map(|_| try_permutation(s, &used, rng))
            .ok_or(GenError::MatchingRetries(count))?;
        for (i, &j) in perm.iter().enumerate() {
            used[i][j] = true;
        }
        out.push(perm);
    }
    Ok(out)
}

fn try_permutation<R: Rng + ?Sized>(s: usize, used: &[Vec<bool>], rng: &mut R) -> Option<Vec<usize>> {
    let mut free: Vec<usize> = (0..s).collect();
    let mut perm = vec![0; s];
    let mut order: Vec<usize> = (0..s).collect();
    order.shuffle(rng);
    for i in order {
        let allowed: Vec<usize> = (0..free.len()).filter(|&p| !used[i][free[p]]).collect();
        if allowed.is_empty() {
            return None;
        }
        let pos = allowed[rng.random_range(0..allowed.len())];
        perm[i] = free.swap_remove(pos);
    }
    Some(perm)
}

/// Draws `count` pairwise edge-disjoint perfect matchings on `s` vertices
/// (`s` even), each as a list of pairs.
fn disjoint_pairings<R: Rng + ?Sized>(
    s: usize,
    count: usize,
    rng: &mut R,
) -> Result<Vec<Vec<(usize, usize)>>, GenError> {
    let mut used = FxHashSet::default();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let pairs = (0..MATCHING_ATTEMPTS)
            .find_map(|_| try_pairing(s, &used, rng))
            .ok_or(GenError::MatchingRetries(count))?;
        for &(a, b) in &pairs {
            used.insert(pair_key(a as VertexId, b as VertexId));
        }
        out.push(pairs);
    }
    Ok(out)
}

fn try_pairing<R: Rng + ?Sized>(
    s: usize,
    used: &FxHashSet<u64>,
    rng: &mut R,
) -> Option<Vec<(usize, usize)>> {
    let mut free: Vec<usize> = (0..s).collect();
    free.shuffle(rng);
    let mut pairs = Vec::with_capacity(s / 2);
    while let Some(a) = free.pop() {
        let allowed: Vec<usize> = (0..free.len())
            .filter(|&p| !used.contains(&pair_key(a as VertexId, free[p] as VertexId)))
            .collect();
        if allowed.is_empty() {
            return None;
        }
        let b = free.swap_remove(allowed[rng.random_range(0..allowed.len())]);
        pairs.push((a, b));
    }
    Some(pairs)
}

fn remove_red_add_blue(
    b: &mut GraphBuilder,
    s: usize,
    red: &[Vec<usize>],
    blue_left: &[Vec<(usize, usize)>],
    blue_right: &[Vec<(usize, usize)>],
) {
    for perm in red {
        for (i, &j) in perm.iter().enumerate() {
            assert!(b.remove_edge(left(i), right(s, j)), "red matchings are disjoint");
        }
    }
    for pairs in blue_left {
        for &(x, y) in pairs {
            b.add_edge(left(x), left(y)).expect("blue matchings are disjoint");
        }
    }
    for pairs in blue_right {
        for &(x, y) in pairs {
            b.add_edge(right(s, x), right(s, y)).expect("blue matchings are disjoint");
        }
    }
}

/// `K_{s,s}` minus a random perfect L–R matching, plus a random perfect
/// matching inside each side. Each of the `s` blue edges closes a triangle
/// with every opposite-side vertex except the two red partners of its ends,
/// so `t = s(s − 2)`.
pub fn gen_g2_matching<R: Rng + ?Sized>(n: usize, s: usize, rng: &mut R) -> Result<GenResult, GenError> {
    check_side(n, s, true)?;
    let red = disjoint_permutations(s, 1, rng)?;
    let blue_left = disjoint_pairings(s, 1, rng)?;
    let blue_right = disjoint_pairings(s, 1, rng)?;
    let mut b = complete_bipartite(n, s);
    remove_red_add_blue(&mut b, s, &red, &blue_left, &blue_right);
    let exact_t = (s * (s - 2)) as u64;
    Ok(GenResult::new(b.build(), exact_t, "s(s-2)", Family::G2Matching, side_params(n, s)))
}

/// The triangle-count band `[r·s·(s − 2r), r·s·(s − 2) + r²·s]`.
pub fn multi_matching_band(s: usize, r: usize) -> (u64, u64) {
    let (s, r) = (s as u64, r as u64);
    (r * s * (s - 2 * r), r * s * (s - 2) + r * r * s)
}

/// `r` disjoint red matchings removed and `r` disjoint blue matchings added
/// on each side. The count is taken from the exact counter and checked
/// against [`multi_matching_band`].
pub fn gen_g2_multi_matching<R: Rng + ?Sized>(
    n: usize,
    s: usize,
    r: usize,
    rng: &mut R,
) -> Result<GenResult, GenError> {
    check_side(n, s, true)?;
    if r == 0 || r > s / 8 && r != 1 {
        return Err(invalid(format!("r = {r} must satisfy 1 <= r <= side/8 = {}", s / 8)));
    }
    if r == 1 {
        let mut out = gen_g2_matching(n, s, rng)?;
        out.family = Family::G2MultiMatching;
        out.params.r = Some(1);
        return Ok(out);
    }
    let red = disjoint_permutations(s, r, rng)?;
    let blue_left = disjoint_pairings(s, r, rng)?;
    let blue_right = disjoint_pairings(s, r, rng)?;
    let mut b = complete_bipartite(n, s);
    remove_red_add_blue(&mut b, s, &red, &blue_left, &blue_right);
    let graph = b.build();
    let exact_t = count_ordered(&graph).t;
    let (lo, hi) = multi_matching_band(s, r);
    assert!(
        (lo..=hi).contains(&exact_t),
        "multi-matching count {exact_t} outside [{lo}, {hi}]"
    );
    let params = GenParams {
        r: Some(r),
        ..side_params(n, s)
    };
    Ok(GenResult::new(graph, exact_t, "count_ordered", Family::G2MultiMatching, params))
}

/// `K_{s,s}` minus `k` red edges `(ℓ_i, r_i)` on random indices
/// `i_1, ..., i_k`, plus blue pairs `(ℓ_{i_1}, ℓ_{i_2}), (ℓ_{i_3}, ℓ_{i_4}), ...`
/// and the same on the right, giving `t = k(s − 2)`.
pub fn gen_g2_partial_matching<R: Rng + ?Sized>(
    n: usize,
    s: usize,
    k: usize,
    rng: &mut R,
) -> Result<GenResult, GenError> {
    check_side(n, s, true)?;
    if !k.is_multiple_of(2) || k < 2 || k > s / 4 {
        return Err(invalid(format!("k = {k} must be even with 2 <= k <= side/4 = {}", s / 4)));
    }
    let idx: Vec<usize> = index::sample(rng, s, k).into_vec();
    let mut b = complete_bipartite(n, s);
    for &i in &idx {
        assert!(b.remove_edge(left(i), right(s, i)));
    }
    for pair in idx.chunks_exact(2) {
        b.add_edge(left(pair[0]), left(pair[1])).expect("fresh blue edge");
        b.add_edge(right(s, pair[0]), right(s, pair[1])).expect("fresh blue edge");
    }
    let exact_t = (k * (s - 2)) as u64;
    let params = GenParams {
        k: Some(k),
        ..side_params(n, s)
    };
    Ok(GenResult::new(b.build(), exact_t, "k(s-2)", Family::G2PartialMatching, params))
}

/// Two `K_{s,s}` components `A–B` and `C–D`, each side cut into `s/t` blocks
/// of size `t`. Block pairs `A_i × B_i` and `C_i × D_i` are removed and
/// `B_i × C_i`, `D_i × A_i` added, which keeps every degree at `s` and leaves
/// the graph triangle-free. With `special`, vertices `a*, b*, c*, d*` in four
/// distinct blocks trade `(a*, b*)`, `(c*, d*)` for `(a*, c*)`, `(b*, d*)`,
/// creating `4t` triangles.
pub fn gen_special_four<R: Rng + ?Sized>(
    n: usize,
    s: usize,
    t: u64,
    special: bool,
    rng: &mut R,
) -> Result<GenResult, GenError> {
    let t_us = t as usize;
    if t == 0 || s == 0 || !s.is_multiple_of(t_us) {
        return Err(invalid(format!("t = {t} must be positive and divide side = {s}")));
    }
    let blocks = s / t_us;
    if blocks < 4 {
        return Err(invalid(format!("side/t = {blocks} must be at least 4")));
    }
    if n < 8 * s {
        return Err(invalid(format!("n = {n} is smaller than 8 * side = {}", 8 * s)));
    }
    let part = |p: usize, i: usize| (p * s + i) as VertexId;
    let (a, bb, c, d) = (0, 1, 2, 3);
    let block = |i: usize| i / t_us;
    let mut b = GraphBuilder::new(n);
    for i in 0..s {
        for j in 0..s {
            if block(i) != block(j) {
                b.add_edge(part(a, i), part(bb, j)).expect("fresh");
                b.add_edge(part(c, i), part(d, j)).expect("fresh");
            } else {
                b.add_edge(part(bb, i), part(c, j)).expect("fresh");
                b.add_edge(part(d, i), part(a, j)).expect("fresh");
            }
        }
    }
    let (family, exact_t, formula) = if special {
        let picks = index::sample(rng, blocks, 4).into_vec();
        let mut pick = |p: usize, blk: usize| part(p, blk * t_us + rng.random_range(0..t_us));
        let (sa, sb, sc, sd) = (pick(a, picks[0]), pick(bb, picks[1]), pick(c, picks[2]), pick(d, picks[3]));
        assert!(b.remove_edge(sa, sb) && b.remove_edge(sc, sd));
        b.add_edge(sa, sc).expect("fresh green edge");
        b.add_edge(sb, sd).expect("fresh green edge");
        (Family::SpecialFour, 4 * t, "4t")
    } else {
        (Family::G1DoubleBipartite, 0, "0")
    };
    let params = GenParams {
        t: Some(t),
        ..side_params(n, s)
    };
    Ok(GenResult::new(b.build(), exact_t, formula, family, params))
}
