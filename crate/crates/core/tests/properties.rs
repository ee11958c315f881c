use std::sync::Arc;

use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use totref_core::complexes::{compose_check, dual, ezd_complex, graded_exactness, is_minimal, FreeComplexWindow};
use totref_core::graph::four_cycle;
use totref_core::grading::{artinian_reduction, reduce_with, stanley_reisner};
use totref_core::lifting::{lift_window, reduce_matrix};
use totref_core::structure::{find_ezd, socle, verify_ezd, wlp_check, yoshino_check, EzdStrategy, TrVerdict};
use totref_core::{Element, Fp, DEFAULT_PRIME, Gf, Graph, Matrix, ReductionMode, Scalar, Subspace};

type Small = Fp<7>;

fn matrix_strategy<const P: u64>(max: usize) -> impl Strategy<Value = Matrix<Fp<P>>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(0..P, r * c)
            .prop_map(move |v| Matrix::from_fn(r, c, |i, j| Fp::<P>::new(v[i * c + j])))
    })
}

fn vectors_strategy(n: usize, max: usize) -> impl Strategy<Value = Vec<Vec<Small>>> {
    proptest::collection::vec(proptest::collection::vec((0..7u64).prop_map(Small::new), n), 0..=max)
}

/// Random graph on `n` vertices from a seed, optionally forced connected.
fn seeded_graph(seed: u64, n: usize, p: f64, connected: bool) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    loop {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(p) {
                    edges.push((refs[i], refs[j]));
                }
            }
        }
        let g = Graph::from_edges(&refs, &edges).unwrap();
        if !connected || g.is_connected() {
            return g;
        }
    }
}

/// Connected bipartite graph with sides `k`, `l`.
fn seeded_bipartite(seed: u64, k: usize, l: usize, p: f64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<String> = (1..=k).map(|i| format!("x{i}")).chain((1..=l).map(|j| format!("y{j}"))).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    loop {
        let edges: Vec<(&str, &str)> = (0..k)
            .flat_map(|i| (0..l).map(move |j| (i, j)))
            .filter(|_| rng.gen_bool(p))
            .map(|(i, j)| (refs[i], refs[k + j]))
            .collect();
        let g = Graph::from_edges(&refs, &edges).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

/// Bipartite graph in which every vertex after the first two has exactly two
/// earlier neighbours, so its canonical reduction has exact zero divisors.
fn seeded_grown(seed: u64, extra: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut xs, mut ys) = (2usize, 2usize);
    let mut edges = vec![(0, 0), (1, 0), (0, 1), (1, 1)];
    for _ in 0..extra {
        if rng.gen_bool(0.5) {
            let mut pick: Vec<usize> = (0..ys).collect();
            pick.shuffle(&mut rng);
            edges.extend(pick[..2].iter().map(|&j| (xs, j)));
            xs += 1;
        } else {
            let mut pick: Vec<usize> = (0..xs).collect();
            pick.shuffle(&mut rng);
            edges.extend(pick[..2].iter().map(|&i| (i, ys)));
            ys += 1;
        }
    }
    let labels: Vec<String> = (1..=xs).map(|i| format!("x{i}")).chain((1..=ys).map(|j| format!("y{j}"))).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let e: Vec<(&str, &str)> = edges.iter().map(|&(i, j)| (refs[i], refs[xs + j])).collect();
    Graph::from_edges(&refs, &e).unwrap()
}

fn acyclic(g: &Graph) -> bool {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(p: &mut [usize], v: usize) -> usize {
        if p[v] == v {
            v
        } else {
            let r = find(p, p[v]);
            p[v] = r;
            r
        }
    }
    for &(a, b) in g.edges() {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_inverses(v in any::<u64>()) {
        let a = Gf::new(v);
        prop_assert_eq!(a.value(), v % DEFAULT_PRIME);
        if !a.is_zero() {
            prop_assert_eq!(a * a.inverse().unwrap(), Gf::one());
        }
    }

    #[test]
    fn rank_is_transpose_invariant(m in matrix_strategy::<7>(6)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn kernel_plus_rank_is_column_count(m in matrix_strategy::<7>(6)) {
        let k = m.kernel_basis();
        prop_assert_eq!(k.dim() + m.rank(), m.cols());
        for v in k.basis() {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_round_trips(m in matrix_strategy::<1_073_741_789>(5), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x: Vec<Gf> = (0..m.cols()).map(|_| Gf::sample(&mut rng)).collect();
        let b = m.mul_vec(&x);
        let y = m.solve(&b).expect("consistent system");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn canonical_bases_are_unique(vs in vectors_strategy(5, 6), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = Subspace::from_vectors(5, vs.clone());
        // rescale, shuffle and add combinations of the generators
        let mut other: Vec<Vec<Small>> = vs
            .iter()
            .map(|v| {
                let c = Small::new(rng.gen_range(1..7));
                v.iter().map(|x| *x * c).collect()
            })
            .collect();
        if vs.len() >= 2 {
            other.push(vs[0].iter().zip(&vs[1]).map(|(a, b)| *a + *b).collect());
        }
        other.shuffle(&mut rng);
        let w = Subspace::from_vectors(5, other);
        prop_assert!(u.equal(&w).unwrap());
        prop_assert_eq!(u.basis(), w.basis());
    }

    #[test]
    fn subspace_dimension_formula(a in vectors_strategy(4, 5), b in vectors_strategy(4, 5)) {
        let (u, v) = (Subspace::from_vectors(4, a), Subspace::from_vectors(4, b));
        let (s, i) = (u.sum(&v).unwrap(), u.intersection(&v).unwrap());
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        prop_assert!(s.contains_subspace(&u) && s.contains_subspace(&v));
        prop_assert!(u.contains_subspace(&i) && v.contains_subspace(&i));
    }

    #[test]
    fn build_orders_validate(seed in any::<u64>(), n in 3usize..9) {
        let g = seeded_graph(seed, n, 0.5, false);
        if let Some(o) = g.build_order() {
            prop_assert!(g.is_build_order(&o));
        }
    }

    #[test]
    fn tree_flag_matches_cycle_detection(seed in any::<u64>(), n in 2usize..9, p in 0.1f64..0.6) {
        let g = seeded_graph(seed, n, p, true);
        let r = g.necessary_conditions().unwrap();
        prop_assert_eq!(r.tree, acyclic(&g));
        prop_assert_eq!(r.tree, g.e() == n - 1);
    }

    #[test]
    fn graph_files_round_trip(seed in any::<u64>(), n in 2usize..8) {
        let g = seeded_graph(seed, n, 0.5, false);
        let text = serde_json::to_string(&g.to_file()).unwrap();
        let back = Graph::from_json(&text).unwrap();
        prop_assert_eq!(back.labels(), g.labels());
        prop_assert_eq!(back.edges(), g.edges());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn stanley_reisner_rings_are_commutative_algebras(seed in any::<u64>(), n in 2usize..7) {
        let g = seeded_graph(seed, n, 0.5, false);
        let r = stanley_reisner::<Small>(&g, 3).unwrap();
        prop_assert_eq!(r.check_axioms(), Ok(()));
    }

    #[test]
    fn disconnecting_pair_rules_out_exact_zero_divisors(seed in any::<u64>(), k in 2usize..5, l in 2usize..5) {
        let g = seeded_bipartite(seed, k, l, 0.6);
        let Ok(red) = artinian_reduction::<Gf>(&g, ReductionMode::CanonicalBipartite, 3) else {
            return Ok(());
        };
        if g.disconnecting_pair().unwrap().is_some() {
            let flip = red.sign_flip().unwrap();
            let s = find_ezd(red.ring(), &EzdStrategy::BipartiteCanonical { flip, trials: 50, seed }).unwrap();
            prop_assert!(s.pair.is_none());
        }
    }

    #[test]
    fn canonical_reduction_squares_vanish(seed in any::<u64>(), k in 2usize..5, l in 2usize..5) {
        let g = seeded_bipartite(seed, k, l, 0.6);
        let Ok(red) = artinian_reduction::<Gf>(&g, ReductionMode::CanonicalBipartite, 3) else {
            return Ok(());
        };
        let r = red.ring();
        let (xs, ys) = g.bipartition().unwrap();
        for side in [xs, ys] {
            for &i in side {
                for &j in side {
                    prop_assert!(r.mul(&red.vertex_image(i), &red.vertex_image(j)).unwrap().is_zero());
                }
            }
        }
        let soc = socle(r).unwrap();
        prop_assert_eq!(soc[r.top_degree()].dim(), r.dim(r.top_degree()));
    }

    #[test]
    fn reduction_order_does_not_matter(seed in any::<u64>(), n in 3usize..7) {
        let g = seeded_graph(seed, n, 0.6, true);
        let amb = Arc::new(stanley_reisner::<Gf>(&g, 3).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f1: Vec<Gf> = (0..n).map(|_| Gf::sample(&mut rng)).collect();
        let f2: Vec<Gf> = (0..n).map(|_| Gf::sample(&mut rng)).collect();
        let mode = ReductionMode::Generic { seed };
        let a = reduce_with(&g, &amb, mode, [f1.clone(), f2.clone()]).unwrap();
        let b = reduce_with(&g, &amb, mode, [f2, f1]).unwrap();
        prop_assert_eq!(a.ring().hilbert(), b.ring().hilbert());
        prop_assert!(a.ring().agrees_with(b.ring()));
    }

    #[test]
    fn found_pairs_are_exact_and_give_wlp(seed in any::<u64>(), extra in 0usize..5) {
        let g = seeded_grown(seed, extra);
        let red = artinian_reduction::<Gf>(&g, ReductionMode::CanonicalBipartite, 3).unwrap();
        let r = red.ring();
        let flip = red.sign_flip().unwrap();
        let pair = find_ezd(r, &EzdStrategy::BipartiteCanonical { flip: flip.clone(), trials: 50, seed })
            .unwrap()
            .pair
            .expect("grown graphs have exact zero divisors");
        prop_assert!(verify_ezd(r, &pair.a, &pair.b).unwrap());
        prop_assert!(wlp_check(r, &pair.a).unwrap());
        prop_assert_eq!(r.mul_map(&pair.a, 1).unwrap().kernel_basis().dim(), 1);
        let flipped = Element { degree: 1, coords: flip.mul_vec(&pair.a.coords) };
        prop_assert!(r.mul(&pair.a, &flipped).unwrap().is_zero());
        prop_assert_ne!(yoshino_check(r).unwrap().verdict, TrVerdict::NoNonFreeTr);

        let w = ezd_complex(r, &pair, 2).unwrap();
        prop_assert!(compose_check(&w).unwrap());
        let rep = graded_exactness(&w, None).unwrap();
        prop_assert!(rep.all_exact() && rep.complete);
        for e in &rep.entries {
            let rank = w.diff(e.index).block_map(r, e.degree).unwrap().rank();
            prop_assert_eq!(e.kernel_dim + rank, w.betti(e.index) * r.dim(e.degree));
        }
        prop_assert_eq!(dual(&dual(&w)), w.clone());
        let back = FreeComplexWindow::<Gf>::from_json_str(&w.to_json_string()).unwrap();
        prop_assert_eq!(back.to_json_string(), w.to_json_string());
    }

    #[test]
    fn corrupting_an_entry_breaks_the_window(seed in any::<u64>(), which in 0usize..5, basis in 0usize..2) {
        let red = artinian_reduction::<Gf>(&four_cycle(), ReductionMode::CanonicalBipartite, 3).unwrap();
        let r = red.ring().clone();
        let pair = find_ezd(&r, &EzdStrategy::Random { trials: 64, seed }).unwrap().pair.unwrap();
        let w = ezd_complex(&r, &pair, 2).unwrap();
        let mut diffs = w.diffs().to_vec();
        let entry = diffs[which].entry(0, 0);
        // a direction off the line of the entry, so the result is not a rescaling
        let e = r.basis_element(1, basis);
        let off = if Subspace::from_vectors(2, vec![entry.coords.clone()]).contains(&e.coords) {
            r.basis_element(1, 1 - basis)
        } else {
            e
        };
        let c = diffs[which].entry_coords_mut(0, 0);
        for (x, y) in c.iter_mut().zip(&off.coords) {
            *x += *y;
        }
        let broken = FreeComplexWindow::new(r.clone(), w.lo(), diffs, w.base_twist()).unwrap();
        let ok = compose_check(&broken).unwrap() && graded_exactness(&broken, None).unwrap().all_exact();
        prop_assert!(!ok);
    }

    #[test]
    fn lifts_reduce_back_and_compose(seed in any::<u64>(), extra in 0usize..3) {
        let g = seeded_grown(seed, extra);
        let red = artinian_reduction::<Gf>(&g, ReductionMode::CanonicalBipartite, 4).unwrap();
        let r = red.ring();
        let flip = red.sign_flip().unwrap();
        let pair = find_ezd(r, &EzdStrategy::BipartiteCanonical { flip, trials: 50, seed }).unwrap().pair.unwrap();
        let w = ezd_complex(r, &pair, 2).unwrap();
        let q = &red.chain()[1];
        let step = lift_window(&w, q).unwrap();
        let s = q.source();
        let x = step.x();
        // periodic sources gain one differential below before lifting
        let src = w.extend_low(1).unwrap();
        prop_assert_eq!(step.lo, src.lo());
        for (k, dt) in step.lifted.iter().enumerate() {
            prop_assert_eq!(&reduce_matrix(dt, q), src.diff(step.lo + k as i64));
        }
        for (k, m) in step.corrections.iter().enumerate() {
            let prod = step.lifted[k].mul(s, &step.lifted[k + 1]).unwrap();
            prop_assert_eq!(prod, m.scale_by(s, x).unwrap());
        }
        prop_assert!(compose_check(&step.window).unwrap());
        prop_assert!(is_minimal(&step.window));
        prop_assert!(graded_exactness(&step.window, None).unwrap().all_exact());
        prop_assert_eq!(step.window.betti(step.window.lo()), 2);
    }
}
