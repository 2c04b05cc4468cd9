use rand::Rng;
use tricolor_core::oracle::{enumerate_min_covers, enumerate_plane_trees, max_matching, nullity_exact};
use tricolor_core::sampler::{rng_from_seed, SamplerConfig, TreeSampler};
use tricolor_core::tricolour::{colour_subtrees, tricolour, Colour};
use tricolor_core::{PlaneTree, WeightFamily};

fn random_trees(family: &str, count: usize, max_n: usize, seed: u64) -> Vec<PlaneTree> {
    let w: WeightFamily = family.parse().unwrap();
    let mut rng = rng_from_seed(seed);
    (0..count)
        .map(|_| {
            let mut n = rng.random_range(1..=max_n);
            if !w.feasible(n, None) {
                n += 1;
            }
            TreeSampler::new(&w, &SamplerConfig::new(n, 0))
                .unwrap()
                .sample(&mut rng)
                .unwrap()
        })
        .collect()
}

#[test]
fn exhaustive_equivalence_up_to_ten() {
    for n in 1..=10 {
        for t in enumerate_plane_trees(n).unwrap() {
            let tc = tricolour(&t);
            let report = enumerate_min_covers(&t).unwrap();
            assert_eq!(tc.colours, report.colours(), "{t}");
            let s = tc.stats().unwrap();
            assert_eq!(s.independence, n - report.cover_size);
            assert_eq!(s.matching, max_matching(&t));
            assert_eq!(s.nullity, nullity_exact(&t).unwrap() as i64);
            // the root's subtree colour is its final colour
            assert_eq!(colour_subtrees(&t)[0], tc.colours[0]);
        }
    }
}

#[test]
fn root_invariance() {
    let mut rng = rng_from_seed(11);
    for t in random_trees("poisson:1", 1000, 200, 1) {
        let base = tricolour(&t);
        let v = rng.random_range(0..t.len());
        let (r, map) = t.reroot(v).unwrap();
        let moved = tricolour(&r);
        for (u, &m) in map.iter().enumerate() {
            assert_eq!(base.colours[u], moved.colours[m]);
        }
    }
}

#[test]
fn identities_on_random_trees() {
    let mut trees = random_trees("poisson:1", 150, 10_000, 2);
    trees.extend(random_trees("geometric:0.5", 150, 10_000, 3));
    trees.extend(random_trees("binary:1,1", 50, 3_000, 4));
    for t in &trees {
        let n = t.len();
        let tc = tricolour(t);
        assert_eq!(tc.n_green + tc.n_orange + tc.n_red, n);
        assert_eq!(tc.n_orange % 2, 0);
        let s = tc.stats().unwrap();
        assert_eq!(s.independence + s.matching, n);
        assert_eq!(s.nullity, n as i64 - 2 * s.matching as i64);
        assert_eq!(s.matching, max_matching(t));
    }
}

#[test]
fn small_random_trees_against_cover_oracle() {
    for t in random_trees("poisson:1", 300, 16, 5) {
        let report = enumerate_min_covers(&t).unwrap();
        let tc = tricolour(&t);
        assert_eq!(tc.colours, report.colours());
        assert_eq!(tc.stats().unwrap().independence, t.len() - report.cover_size);
    }
}

#[test]
fn nullity_matches_adjacency_rank() {
    for t in random_trees("geometric:0.5", 200, 64, 6) {
        let tc = tricolour(&t);
        assert_eq!(tc.stats().unwrap().nullity, nullity_exact(&t).unwrap() as i64);
    }
}

#[test]
fn joining_at_green_vertex_keeps_colours() {
    let left = random_trees("poisson:1", 400, 60, 7);
    let right = random_trees("geometric:0.5", 400, 60, 8);
    let mut rng = rng_from_seed(9);
    let mut joined = 0;
    for (a, b) in left.iter().zip(&right) {
        let ca = tricolour(a);
        let greens: Vec<usize> = (0..a.len()).filter(|&v| ca.colours[v] == Colour::Green).collect();
        if greens.is_empty() {
            continue;
        }
        let va = greens[rng.random_range(0..greens.len())];
        let vb = rng.random_range(0..b.len());
        let na = a.len();
        let mut edges: Vec<(usize, usize)> = a.edges().collect();
        edges.extend(b.edges().map(|(p, c)| (p + na, c + na)));
        edges.push((va, vb + na));
        let (t, map) = PlaneTree::from_edges(na + b.len(), &edges, 0).unwrap();
        let ct = tricolour(&t);
        let cb = tricolour(b);
        for (v, &m) in map.iter().enumerate() {
            let expected = if v < na { ca.colours[v] } else { cb.colours[v - na] };
            assert_eq!(ct.colours[m], expected);
        }
        joined += 1;
    }
    assert!(joined > 200, "only {joined} pairs had a green vertex");
}
