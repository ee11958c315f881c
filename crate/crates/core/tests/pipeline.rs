use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use totref_core::complexes::{compose_check, ezd_complex, graded_exactness, is_minimal, FreeComplexWindow};
use totref_core::factory::{build_special_ring_with_bound, canonical_window};
use totref_core::graph::{four_cycle, special_graph};
use totref_core::grading::artinian_reduction;
use totref_core::lifting::lift_through_sequence;
use totref_core::structure::{find_ezd, EzdStrategy};
use totref_core::{Gf, Graph, ReductionMode};

/// Every permutation prefix, pruned as soon as a vertex has too few earlier
/// neighbours.
fn backtrack(g: &Graph, order: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
    if order.len() == g.n() {
        return true;
    }
    for v in 0..g.n() {
        if used[v] {
            continue;
        }
        if order.len() >= 2 && order.iter().filter(|&&w| g.has_edge(v, w)).count() < 2 {
            continue;
        }
        used[v] = true;
        order.push(v);
        if backtrack(g, order, used) {
            return true;
        }
        order.pop();
        used[v] = false;
    }
    false
}

fn has_build_order(g: &Graph) -> bool {
    backtrack(g, &mut Vec::new(), &mut vec![false; g.n()])
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((refs[i], refs[j]));
            }
        }
    }
    Graph::from_edges(&refs, &edges).unwrap()
}

#[test]
fn build_order_matches_backtracking() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let n = rng.gen_range(3..=8);
        let g = random_graph(&mut rng, n, 0.45);
        let found = g.build_order();
        assert_eq!(found.is_some(), has_build_order(&g), "{g:?}");
        if let Some(o) = found {
            assert!(g.is_build_order(&o));
        }
    }
}

#[test]
fn ten_vertex_graph_has_no_build_order() {
    let g = special_graph();
    assert!(g.build_order().is_none());
    assert!(!has_build_order(&g));
    assert!(has_build_order(&four_cycle()));
}

fn c4_source() -> (totref_core::ArtinianReduction<Gf>, FreeComplexWindow<Gf>) {
    let red = artinian_reduction::<Gf>(&four_cycle(), ReductionMode::CanonicalBipartite, 6).unwrap();
    let r = red.ring().clone();
    let search = find_ezd(&r, &EzdStrategy::Random { trials: 64, seed: 0 }).unwrap();
    let pair = search.pair.expect("the 4-cycle ring has exact zero divisors");
    let w = ezd_complex(&r, &pair, 3).unwrap().with_origin(Some(totref_core::complexes::ChainOrigin {
        reduction: red.spec(),
        stage: 2,
    }));
    (red, w)
}

#[test]
fn four_cycle_lifts_to_rank_four() {
    let (red, w) = c4_source();
    let (top, steps) = lift_through_sequence(&w, &red.chain()).unwrap();
    let ranks: Vec<usize> = std::iter::once(&w).chain(steps.iter().map(|s| &s.window)).map(|w| w.betti(0)).collect();
    assert_eq!(ranks, [1, 2, 4]);
    for s in &steps {
        assert!(compose_check(&s.window).unwrap());
        let rep = graded_exactness(&s.window, None).unwrap();
        assert!(rep.all_exact());
        assert!(is_minimal(&s.window));
    }
    let rep = graded_exactness(&top, None).unwrap();
    assert_eq!(rep.max_degree, 5);
    assert_eq!(top.origin().unwrap().stage, 0);
    assert!(top.periodicity().unwrap().verified);
    let back = FreeComplexWindow::<Gf>::from_json_str(&top.to_json_string()).unwrap();
    assert_eq!(back, top);
}

#[test]
fn factory_window_lifts_to_rank_eight() {
    let sr = build_special_ring_with_bound::<Gf>(6).unwrap();
    let fw = canonical_window(&sr, 2, 2).unwrap();
    let (top, steps) = lift_through_sequence(&fw.window, &sr.reduction().chain()).unwrap();
    assert_eq!(steps.len(), 2);
    assert!(top.betti_numbers().iter().all(|&b| b == 8));
    assert!(compose_check(&top).unwrap());
    let rep = graded_exactness(&top, Some(5)).unwrap();
    assert!(rep.all_exact());
    assert_eq!(rep.max_degree, 5);
}
