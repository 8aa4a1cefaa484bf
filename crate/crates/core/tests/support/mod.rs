//! Shared oracles for the integration tests: independent brute-force
//! reference computations, kept apart from the library implementations they
//! check.

#![allow(dead_code)]

use clutters::{Clutter, VertexSet};

/// Exhaustive subset oracle: filter all 2^n subsets down to the minimal
/// covers (a cover is minimal iff removing any single vertex uncovers some
/// edge). Canonically sorted.
pub fn brute_force_minimal_covers(clutter: &Clutter) -> Vec<VertexSet> {
    let n = clutter.vertex_count();
    assert!(
        n <= 25,
        "the subset oracle is exponential in the vertex count"
    );
    let covers = |s: VertexSet| clutter.edges().iter().all(|e| e.intersects(s));
    let mut out = Vec::new();
    for bits in 0u128..(1u128 << n) {
        let s = VertexSet::from_bits(bits);
        if covers(s) && s.iter().all(|v| !covers(s.without(v))) {
            out.push(s);
        }
    }
    out.sort();
    out
}

/// Random antichain clutter on `n` vertices with at least one edge,
/// deterministic in the seed.
pub fn random_clutter(n: usize, max_edges: usize, seed: u64) -> Clutter {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    loop {
        let k = rng.random_range(1..=max_edges);
        let mut edges = Vec::new();
        for _ in 0..k {
            let size = rng.random_range(1..=3.min(n));
            let mut e = VertexSet::EMPTY;
            while e.len() < size {
                e = e.with(rng.random_range(0..n));
            }
            edges.push(e);
        }
        let (c, _) = Clutter::new_minimalized(labels.clone(), edges).unwrap();
        if c.edge_count() > 0 {
            return c;
        }
    }
}
