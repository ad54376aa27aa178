//! Randomized checks tying independent code paths together.

use locating_core::coloring::{colorful_vertices, is_locating, product_coloring, Locating};
use locating_core::graph::{build_family, cartesian_product};
use locating_core::latin::{is_locating_latin, LatinRectangle};
use locating_core::solver::{locating_chromatic_number, Solver};
use locating_core::{
    Coloring, ColoringDocument, ColoringMatrix, Family, Graph, SolveBudget, SolveOptions,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn family() -> impl Strategy<Value = (Family, usize)> {
    prop_oneof![
        (2usize..6).prop_map(|n| (Family::Path, n)),
        (3usize..6).prop_map(|n| (Family::Cycle, n)),
        (2usize..5).prop_map(|n| (Family::Complete, n)),
    ]
}

/// Connected graph: a random spanning tree plus random extra edges.
fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, any::<u64>()).prop_map(|(n, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
        let density = rng.gen_range(0.0..0.6);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(density) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges("random", n, edges).unwrap()
    })
}

fn brute_force_chi(g: &Graph) -> u32 {
    let n = g.vertex_count();
    for k in 1..=n as u32 {
        let mut colors = vec![1u32; n];
        loop {
            if let Ok(c) = Coloring::new(colors.clone()) {
                if matches!(is_locating(g, &c), Ok(Locating::Yes)) {
                    return k;
                }
            }
            let mut i = 0;
            while i < n && colors[i] == k {
                colors[i] = 1;
                i += 1;
            }
            if i == n {
                break;
            }
            colors[i] += 1;
        }
    }
    unreachable!()
}

/// Random proper coloring of `K_m □ K_n` over a palette of at least
/// `max(m, n)` symbols, by backtracking over shuffled candidates.
fn random_latin(rng: &mut ChaCha8Rng, m: usize, n: usize) -> ColoringMatrix {
    fn fill(cells: &mut [Vec<u32>], t: usize, s: u32, rng: &mut ChaCha8Rng) -> bool {
        let (m, n) = (cells.len(), cells[0].len());
        if t == m * n {
            return true;
        }
        let (i, j) = (t / n, t % n);
        let mut free: Vec<u32> = (1..=s)
            .filter(|x| !cells[i][..j].contains(x) && !(0..i).any(|r| cells[r][j] == *x))
            .collect();
        free.shuffle(rng);
        for x in free {
            cells[i][j] = x;
            if fill(cells, t + 1, s, rng) {
                return true;
            }
        }
        cells[i][j] = 0;
        false
    }
    let low = m.max(n);
    let s = rng.gen_range(low..=low + 4) as u32;
    let mut cells = vec![vec![0u32; n]; m];
    assert!(fill(&mut cells, 0, s, rng));
    let normalized = Coloring::normalized(&cells.concat()).unwrap();
    ColoringMatrix::from_fn(m, n, |i, j| normalized.color((i - 1) * n + j - 1)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distance_matrix_invariants(a in family(), b in family()) {
        let g = cartesian_product(&build_family(a.0, a.1).unwrap(), &build_family(b.0, b.1).unwrap());
        let d = g.distances().unwrap();
        let n = g.vertex_count();
        for u in 0..n {
            prop_assert_eq!(d.get(u, u), 0);
            for v in 0..n {
                prop_assert_eq!(d.get(u, v), d.get(v, u));
                if u != v {
                    prop_assert!(d.get(u, v) >= 1);
                }
                for w in 0..n {
                    prop_assert!(d.get(u, w) <= d.get(u, v) + d.get(v, w));
                }
            }
        }
    }

    #[test]
    fn product_distance_is_additive(a in family(), b in family()) {
        let (g, h) = (build_family(a.0, a.1).unwrap(), build_family(b.0, b.1).unwrap());
        let gh = cartesian_product(&g, &h);
        let (dg, dh, d) = (g.distances().unwrap(), h.distances().unwrap(), gh.distances().unwrap());
        let k = h.vertex_count();
        for u in 0..gh.vertex_count() {
            for v in 0..gh.vertex_count() {
                prop_assert_eq!(d.get(u, v), dg.get(u / k, v / k) + dh.get(u % k, v % k));
            }
        }
    }

    #[test]
    fn document_round_trip(m in 1usize..6, n in 1usize..6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(1..=(m * n) as u32);
        let raw: Vec<u32> = (0..m * n).map(|i| if (i as u32) < k { i as u32 + 1 } else { rng.gen_range(1..=k) }).collect();
        let cm = ColoringMatrix::from_fn(m, n, |i, j| raw[(i - 1) * n + j - 1]).unwrap();
        let doc = ColoringDocument::new(format!("K{m}xK{n}"), &cm, Some("test".into()));
        let back = ColoringDocument::from_toml(&doc.to_toml()).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.matrix().unwrap(), cm.clone());
        prop_assert_eq!(ColoringMatrix::parse_grid_text(&cm.to_grid_text()).unwrap(), cm);
    }

    #[test]
    fn latin_condition_matches_color_codes(m in 1usize..=5, n in 1usize..=5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cm = random_latin(&mut rng, m, n);
        let g = cartesian_product(
            &build_family(Family::Complete, m).unwrap(),
            &build_family(Family::Complete, n).unwrap(),
        );
        let lr = LatinRectangle::from_coloring(&cm).unwrap();
        prop_assert_eq!(is_locating_latin(&lr), is_locating(&g, &cm.to_coloring()).unwrap().is_yes());
    }

    #[test]
    fn pruning_does_not_change_answers(g in connected_graph(9)) {
        let budget = SolveBudget::default();
        let reference = locating_chromatic_number(&g, &budget).unwrap().value;
        for (symmetry_breaking, colorful_pruning) in [(false, false), (true, false), (false, true)] {
            let options = SolveOptions { symmetry_breaking, colorful_pruning, jobs: 1 };
            let r = Solver::new(&g, &budget).unwrap().with_options(options).chromatic_number().unwrap();
            prop_assert_eq!(r.value, reference);
            prop_assert!(is_locating(&g, &r.witness).unwrap().is_yes());
        }
    }

    #[test]
    fn solver_matches_brute_force(g in connected_graph(6)) {
        let r = locating_chromatic_number(&g, &SolveBudget::default()).unwrap();
        prop_assert_eq!(r.value, brute_force_chi(&g));
        prop_assert!(r.lower_bound <= r.value);
    }

    #[test]
    fn witnesses_have_distinct_colorful_colors(g in connected_graph(9)) {
        let r = locating_chromatic_number(&g, &SolveBudget::default()).unwrap();
        let colorful = colorful_vertices(&g, &r.witness).unwrap();
        let mut colors: Vec<u32> = colorful.iter().map(|&(_, c)| c).collect();
        colors.sort_unstable();
        colors.dedup();
        prop_assert_eq!(colors.len(), colorful.len());
    }

    #[test]
    fn product_of_locating_colorings_is_locating(a in family(), b in family()) {
        let (g, h) = (build_family(a.0, a.1).unwrap(), build_family(b.0, b.1).unwrap());
        let cg = locating_chromatic_number(&g, &SolveBudget::default()).unwrap().witness;
        let ch = locating_chromatic_number(&h, &SolveBudget::default()).unwrap().witness;
        let c = product_coloring(&cg, &ch);
        prop_assert_eq!(c.num_colors(), cg.num_colors() * ch.num_colors());
        prop_assert!(is_locating(&cartesian_product(&g, &h), &c).unwrap().is_yes());
    }
}
