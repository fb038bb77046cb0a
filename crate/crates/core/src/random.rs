//! Seeded random hypertrees for property tests and acceptance runs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::hypergraph::{UniformHypergraph, Vertex};

/// Grows a hypertree edge by edge: each new edge meets one existing vertex
/// and brings `k - 1` fresh ones. Labels are shuffled at the end.
pub fn random_hypertree<R: Rng + ?Sized>(rng: &mut R, k: usize, edges: usize) -> UniformHypergraph {
    let mut list = Vec::with_capacity(edges);
    let mut n = 1;
    for _ in 0..edges {
        list.push(attach(rng, &mut n, k, None));
    }
    shuffle_labels(rng, k, n, list)
}

/// Uniformly random attachment 2-tree with `edges` edges.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, edges: usize) -> UniformHypergraph {
    random_hypertree(rng, 2, edges)
}

/// `T^k` for a random 2-tree `T`, labels shuffled.
pub fn random_power_tree<R: Rng + ?Sized>(rng: &mut R, k: usize, edges: usize) -> UniformHypergraph {
    let powered = random_tree(rng, edges).power(k).expect("k >= 2");
    shuffle_labels(rng, k, powered.n(), powered.edges().to_vec())
}

/// A hypertree guaranteed to contain an edge with at least three vertices of
/// degree two or more, so it is not a power tree. Needs `k >= 3` and
/// `edges >= 4`.
pub fn random_non_power_hypertree<R: Rng + ?Sized>(
    rng: &mut R,
    k: usize,
    edges: usize,
) -> UniformHypergraph {
    assert!(k >= 3 && edges >= 4, "need k >= 3 and at least 4 edges");
    let spine: Vec<Vertex> = (1..=k).collect();
    let mut n = k;
    let mut list = vec![spine.clone()];
    let anchors: Vec<Vertex> = spine.choose_multiple(rng, 3).copied().collect();
    for &a in &anchors {
        list.push(attach(rng, &mut n, k, Some(a)));
    }
    for _ in 4..edges {
        list.push(attach(rng, &mut n, k, None));
    }
    shuffle_labels(rng, k, n, list)
}

/// Disjoint union of `components` random hypertrees with `1..=max_edges`
/// edges each.
pub fn random_hyperforest<R: Rng + ?Sized>(
    rng: &mut R,
    k: usize,
    components: usize,
    max_edges: usize,
) -> (UniformHypergraph, Vec<UniformHypergraph>) {
    let parts: Vec<_> = (0..components)
        .map(|_| {
            let m = rng.gen_range(1..=max_edges);
            random_hypertree(rng, k, m)
        })
        .collect();
    let mut union = parts[0].clone();
    for p in &parts[1..] {
        union = union.disjoint_union(p).expect("same uniformity");
    }
    let shuffled = shuffle_labels(rng, k, union.n(), union.edges().to_vec());
    (shuffled, parts)
}

fn attach<R: Rng + ?Sized>(rng: &mut R, n: &mut usize, k: usize, at: Option<Vertex>) -> Vec<Vertex> {
    let anchor = at.unwrap_or_else(|| rng.gen_range(1..=*n));
    let mut edge = vec![anchor];
    for _ in 1..k {
        *n += 1;
        edge.push(*n);
    }
    edge
}

fn shuffle_labels<R: Rng + ?Sized>(
    rng: &mut R,
    k: usize,
    n: usize,
    edges: Vec<Vec<Vertex>>,
) -> UniformHypergraph {
    let mut perm: Vec<Vertex> = (1..=n).collect();
    perm.shuffle(rng);
    let edges = edges
        .into_iter()
        .map(|e| e.into_iter().map(|v| perm[v - 1]).collect())
        .collect();
    UniformHypergraph::build(k, n, edges).expect("relabeling preserves validity")
}
