mod common;

use proptest::prelude::*;
use tricount::advice::{label_ground_truth, Label};
use tricount::graph::{load_edge_list, random_gnp};
use tricount::lb_gen::{
    gen_g1_bipartite, gen_g2_matching, gen_g2_multi_matching, gen_g2_partial_matching,
    gen_special_four,
};
use tricount::{count_brute, count_ordered, Advice, Graph, QueryError, QueryOracle, VertexId};

use common::rng;

fn small_graph() -> impl Strategy<Value = Graph> {
    (2usize..40, 0.0f64..0.7, any::<u64>()).prop_map(|(n, p, seed)| random_gnp(n, p, &mut rng(seed)))
}

#[derive(Debug, Clone)]
enum Query {
    Degree(usize),
    Neighbor(usize, usize),
    Pair(usize, usize),
}

fn query() -> impl Strategy<Value = Query> {
    prop_oneof![
        any::<usize>().prop_map(Query::Degree),
        (any::<usize>(), 1usize..12).prop_map(|(v, i)| Query::Neighbor(v, i)),
        (any::<usize>(), any::<usize>()).prop_map(|(u, v)| Query::Pair(u, v)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph_structure(g in small_graph(), picks in prop::collection::vec(any::<(u32, u32, u32)>(), 20)) {
        let n = g.n() as u32;
        prop_assert_eq!(g.degrees().sum::<usize>(), 2 * g.m());
        let bound = (2.0 * g.m() as f64).sqrt();
        for v in 0..n {
            prop_assert!(g.forward_degree(v) as f64 <= bound);
        }
        for (a, b, c) in picks {
            let (a, b, c) = (a % n, b % n, c % n);
            prop_assert_eq!(g.has_edge(a, b).unwrap(), g.has_edge(b, a).unwrap());
            if a != b {
                prop_assert!(g.precedes(a, b).unwrap() != g.precedes(b, a).unwrap());
            }
            if a != b && b != c && a != c && g.precedes(a, b).unwrap() && g.precedes(b, c).unwrap() {
                prop_assert!(g.precedes(a, c).unwrap());
            }
        }
    }

    #[test]
    fn edge_list_round_trip(g in small_graph()) {
        let mut buf = Vec::new();
        g.write_edge_list(&mut buf).unwrap();
        let h = load_edge_list(&buf[..]).unwrap();
        prop_assert_eq!(h.n(), g.n());
        prop_assert_eq!(h.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn counters_agree_and_identities_hold(g in small_graph()) {
        let ordered = count_ordered(&g);
        prop_assert_eq!(&ordered, &count_brute(&g));
        prop_assert!(ordered.check_identities(&g).is_ok());
    }

    #[test]
    fn memoized_answers_match_graph(g in small_graph(), queries in prop::collection::vec(query(), 1..200)) {
        let n = g.n();
        let mut o = QueryOracle::unbounded(&g);
        for q in &queries {
            match *q {
                Query::Degree(v) => {
                    let v = (v % n) as VertexId;
                    prop_assert_eq!(o.q_degree(v).unwrap(), g.degree_of(v));
                }
                Query::Neighbor(v, i) => {
                    let v = (v % n) as VertexId;
                    prop_assert_eq!(o.q_neighbor(v, i).unwrap(), g.neighbor(v, i).unwrap());
                }
                Query::Pair(u, v) => {
                    let (u, v) = ((u % n) as VertexId, (v % n) as VertexId);
                    if u == v {
                        prop_assert_eq!(o.q_pair(u, v), Err(QueryError::SamePair(u)));
                    } else {
                        prop_assert_eq!(o.q_pair(u, v).unwrap(), g.contains_edge(u, v));
                    }
                }
            }
        }
        let s = o.stats();
        prop_assert!(s.degree_queries <= n as u64);
        prop_assert!(s.pair_queries <= (n * (n - 1) / 2) as u64);
        // absent answers past d_v are also distinct neighbor queries
        prop_assert!(s.neighbor_queries <= (2 * g.m() + n * 11) as u64);
        // a second pass over the same sequence is free
        let before = o.stats();
        for q in &queries {
            match *q {
                Query::Degree(v) => { o.q_degree((v % n) as VertexId).unwrap(); }
                Query::Neighbor(v, i) => { o.q_neighbor((v % n) as VertexId, i).unwrap(); }
                Query::Pair(u, v) => { let _ = o.q_pair((u % n) as VertexId, (v % n) as VertexId); }
            }
        }
        prop_assert_eq!(o.stats(), before);
    }

    #[test]
    fn cap_is_never_exceeded(g in small_graph(), cap in 0u64..30, queries in prop::collection::vec(query(), 1..200)) {
        let n = g.n();
        let mut o = QueryOracle::new(&g, Some(cap));
        for q in &queries {
            let _ = match *q {
                Query::Degree(v) => o.q_degree((v % n) as VertexId).map(|_| ()),
                Query::Neighbor(v, i) => o.q_neighbor((v % n) as VertexId, i).map(|_| ()),
                Query::Pair(u, v) => o.q_pair((u % n) as VertexId, (v % n) as VertexId).map(|_| ()),
            };
            prop_assert!(o.stats().graph_queries() <= cap);
        }
    }

    #[test]
    fn generators_match_their_counts(seed in any::<u64>(), half in 2usize..10, k_half in 1usize..3) {
        let s = 2 * half;
        let g2 = gen_g2_matching(2 * s, s, &mut rng(seed)).unwrap();
        prop_assert_eq!(count_ordered(&g2.graph).t, g2.exact_t);
        prop_assert!((0..2 * s as VertexId).all(|v| g2.graph.degree_of(v) == s));

        let g1 = gen_g1_bipartite(2 * s + 1, s).unwrap();
        prop_assert_eq!(count_ordered(&g1.graph).t, 0);

        let k = 2 * k_half;
        if k <= s / 4 {
            let p = gen_g2_partial_matching(2 * s, s, k, &mut rng(seed)).unwrap();
            prop_assert_eq!(count_ordered(&p.graph).t, p.exact_t);
            prop_assert!((0..2 * s as VertexId).all(|v| p.graph.degree_of(v) == s));
        }
        if s >= 16 {
            let r = 2;
            let mm = gen_g2_multi_matching(2 * s, s, r, &mut rng(seed)).unwrap();
            prop_assert!((0..2 * s as VertexId).all(|v| mm.graph.degree_of(v) == s));
            prop_assert_eq!(count_ordered(&mm.graph).t, mm.exact_t);
        }
        if s % 4 == 0 {
            let t = (s / 4) as u64;
            let sp = gen_special_four(8 * s, s, t, true, &mut rng(seed)).unwrap();
            prop_assert_eq!(count_ordered(&sp.graph).t, 4 * t);
            prop_assert!((0..4 * s as VertexId).all(|v| sp.graph.degree_of(v) == s));
            let twin = gen_special_four(8 * s, s, t, false, &mut rng(seed)).unwrap();
            prop_assert_eq!(count_ordered(&twin.graph).t, 0);
        }
    }
}

#[test]
fn heavy_vertices_are_few_under_conforming_advice() {
    // at most 12 (εt)^{1/3} vertices are heavy when m̄ >= m/6 and t̄ <= t
    let eps = 0.5;
    for seed in 0..20u64 {
        let g = random_gnp(120, 0.15, &mut rng(seed));
        let stats = count_ordered(&g);
        if stats.t == 0 {
            continue;
        }
        for (m_bar, t_bar) in [(g.m() as u64 / 6 + 1, stats.t as f64), (g.m() as u64, stats.t as f64 / 4.0)] {
            let advice = Advice::new(m_bar.max(1), t_bar);
            let heavy = label_ground_truth(&stats, &g, advice, eps)
                .iter()
                .filter(|&&l| l == Label::Heavy)
                .count();
            assert!(heavy as f64 <= 12.0 * (eps * stats.t as f64).cbrt(), "seed {seed}: {heavy} heavy");
        }
    }
}
