//! Canonical k-uniform hypergraphs on the vertex set `1..=n`.
//!
//! Every edge is stored ascending and the edge list is sorted
//! lexicographically, so structurally equal hypergraphs compare equal and
//! serialize to identical bytes.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct UniformHypergraph {
    k: usize,
    n: usize,
    edges: Vec<Vec<Vertex>>,
}

/// A sorted set of vertex labels, e.g. an induced-subgraph selector or the
/// support of an eigenvector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new(members: impl IntoIterator<Item = Vertex>) -> Self {
        let set: BTreeSet<Vertex> = members.into_iter().collect();
        VertexSet(set.into_iter().collect())
    }

    pub fn all(n: usize) -> Self {
        VertexSet((1..=n).collect())
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }
}

/// Result of [`UniformHypergraph::induced`]: the subgraph relabeled onto
/// `1..=|U|`, plus the map back to host labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: UniformHypergraph,
    /// `host_vertex[i - 1]` is the host label of local vertex `i`.
    pub host_vertex: Vec<Vertex>,
}

impl InducedSubgraph {
    pub fn host_set(&self) -> VertexSet {
        VertexSet(self.host_vertex.clone())
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHypergraph {
    k: usize,
    n: usize,
    edges: Vec<Vec<Vertex>>,
}

impl UniformHypergraph {
    /// Validates and canonicalizes. Edges may be given in any order.
    pub fn build(k: usize, n: usize, edges: Vec<Vec<Vertex>>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidUniformity(k));
        }
        if n == 0 {
            return Err(Error::NoVertices);
        }
        let mut canonical = Vec::with_capacity(edges.len());
        for edge in edges {
            let mut sorted = edge.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != k || edge.len() != k {
                return Err(Error::NonUniformEdge {
                    distinct: sorted.len(),
                    edge,
                    k,
                });
            }
            if let Some(&bad) = sorted.iter().find(|&&v| v == 0 || v > n) {
                return Err(Error::VertexOutOfRange { vertex: bad, n });
            }
            canonical.push(sorted);
        }
        canonical.sort_unstable();
        if let Some(w) = canonical.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].clone()));
        }
        Ok(UniformHypergraph {
            k,
            n,
            edges: canonical,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawHypergraph = serde_json::from_str(text)?;
        Self::build(raw.k, raw.n, raw.edges)
    }

    pub fn from_json_bytes(bytes: &[u8]) -> Result<Self> {
        let raw: RawHypergraph = serde_json::from_slice(bytes)?;
        Self::build(raw.k, raw.n, raw.edges)
    }

    /// Canonical compact JSON: `{"k":3,"n":3,"edges":[[1,2,3]]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("hypergraph serialization is infallible")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<Vertex>] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<Vertex> {
        1..=self.n
    }

    /// Degrees indexed by vertex label; slot 0 is unused.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n + 1];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }

    /// Indices of edges containing each vertex; slot 0 is unused.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n + 1];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    }

    /// Connected components as vertex sets; isolated vertices form their own
    /// components. Ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let inc = self.incidence();
        let mut seen = vec![false; self.n + 1];
        let mut out = Vec::new();
        for start in self.vertices() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &ei in &inc[v] {
                    for &u in &self.edges[ei] {
                        if !seen[u] {
                            seen[u] = true;
                            members.push(u);
                            queue.push_back(u);
                        }
                    }
                }
            }
            out.push(VertexSet::new(members));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Connected and Berge-acyclic; for a connected hypergraph this is
    /// exactly `n = m(k-1) + 1`, the vertex/edge count of a tree-shaped
    /// incidence graph.
    pub fn is_hypertree(&self) -> bool {
        self.is_connected() && self.n == self.num_edges() * (self.k - 1) + 1
    }

    /// Disjoint union of hypertrees (isolated vertices allowed).
    pub fn is_hyperforest(&self) -> bool {
        self.n == self.num_edges() * (self.k - 1) + self.components().len()
    }

    /// `H[U]`: the edges of `H` lying entirely inside `U`, relabeled onto
    /// `1..=|U|` in increasing order of host label.
    pub fn induced(&self, subset: &VertexSet) -> Result<InducedSubgraph> {
        if subset.is_empty() {
            return Err(Error::NoVertices);
        }
        let mut local = vec![0usize; self.n + 1];
        for (i, v) in subset.iter().enumerate() {
            if v == 0 || v > self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
            local[v] = i + 1;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| local[v] != 0))
            .map(|e| e.iter().map(|&v| local[v]).collect())
            .collect();
        Ok(InducedSubgraph {
            graph: UniformHypergraph::build(self.k, subset.len(), edges)?,
            host_vertex: subset.as_slice().to_vec(),
        })
    }

    /// The sub-hypergraph `(∪F, F)` for edge indices `F`, relabeled.
    pub fn edge_subgraph(&self, edge_indices: &[usize]) -> InducedSubgraph {
        let span = VertexSet::new(
            edge_indices
                .iter()
                .flat_map(|&i| self.edges[i].iter().copied()),
        );
        let mut local = vec![0usize; self.n + 1];
        for (i, v) in span.iter().enumerate() {
            local[v] = i + 1;
        }
        let edges = edge_indices
            .iter()
            .map(|&i| self.edges[i].iter().map(|&v| local[v]).collect())
            .collect();
        InducedSubgraph {
            graph: UniformHypergraph::build(self.k, span.len().max(1), edges)
                .expect("edge subsets of a valid hypergraph are valid"),
            host_vertex: span.0,
        }
    }

    pub fn pendant_edge_indices(&self) -> Vec<usize> {
        let deg = self.degrees();
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.iter().filter(|&&v| deg[v] == 1).count() == self.k - 1)
            .map(|(i, _)| i)
            .collect()
    }

    /// Edges with exactly `k - 1` vertices of degree one. An isolated edge has
    /// `k` such vertices and is therefore not pendant.
    pub fn pendant_edges(&self) -> Vec<Vec<Vertex>> {
        self.pendant_edge_indices()
            .into_iter()
            .map(|i| self.edges[i].clone())
            .collect()
    }

    /// Pads every edge with `k - self.k` fresh degree-one vertices. New
    /// vertices are numbered after `n`, edge by edge in canonical order.
    pub fn power(&self, k: usize) -> Result<Self> {
        if k < self.k {
            return Err(Error::PowerBelowUniformity { from: self.k, to: k });
        }
        let pad = k - self.k;
        let mut next = self.n;
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let mut grown = e.clone();
                grown.extend((0..pad).map(|_| {
                    next += 1;
                    next
                }));
                grown
            })
            .collect();
        UniformHypergraph::build(k, next, edges)
    }

    /// Structural power-tree test: a hypertree is `T^k` for a 2-tree `T`
    /// iff no edge holds three or more vertices of degree at least two.
    pub fn is_power_tree(&self) -> Result<bool> {
        if !self.is_hypertree() {
            return Err(Error::NotAHypertree);
        }
        let deg = self.degrees();
        Ok(self
            .edges
            .iter()
            .all(|e| e.iter().filter(|&&v| deg[v] >= 2).count() <= 2))
    }

    /// Places `other` after `self`, shifting its labels by `self.n()`.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        if self.k != other.k {
            return Err(Error::InvalidUniformity(other.k));
        }
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .cloned()
            .chain(
                other
                    .edges
                    .iter()
                    .map(|e| e.iter().map(|&v| v + shift).collect()),
            )
            .collect();
        UniformHypergraph::build(self.k, self.n + other.n, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{comb, loose_path, star};
    use crate::paperdata::{fixture_graph, FixtureName};

    fn h3() -> UniformHypergraph {
        fixture_graph(FixtureName::H3)
    }

    #[test]
    fn build_rejects_bad_edges() {
        assert!(matches!(
            UniformHypergraph::build(3, 3, vec![vec![1, 2, 2]]),
            Err(Error::NonUniformEdge { distinct: 2, .. })
        ));
        assert!(matches!(
            UniformHypergraph::build(3, 3, vec![vec![1, 2, 4]]),
            Err(Error::VertexOutOfRange { vertex: 4, n: 3 })
        ));
        assert!(matches!(
            UniformHypergraph::build(3, 3, vec![vec![1, 2, 0]]),
            Err(Error::VertexOutOfRange { vertex: 0, .. })
        ));
        assert!(matches!(
            UniformHypergraph::build(3, 4, vec![vec![1, 2, 3], vec![3, 2, 1]]),
            Err(Error::DuplicateEdge(_))
        ));
        assert!(matches!(
            UniformHypergraph::build(1, 4, vec![]),
            Err(Error::InvalidUniformity(1))
        ));
        assert!(matches!(
            UniformHypergraph::build(3, 0, vec![]),
            Err(Error::NoVertices)
        ));
    }

    #[test]
    fn build_canonicalizes() {
        let a = UniformHypergraph::build(3, 5, vec![vec![5, 4, 3], vec![3, 1, 2]]).unwrap();
        let b = UniformHypergraph::build(3, 5, vec![vec![1, 2, 3], vec![3, 4, 5]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_json(), r#"{"k":3,"n":5,"edges":[[1,2,3],[3,4,5]]}"#);
    }

    #[test]
    fn json_round_trip_and_rejections() {
        let h = h3();
        assert_eq!(UniformHypergraph::from_json(&h.to_json()).unwrap(), h);
        assert!(UniformHypergraph::from_json(r#"{"k":3,"n":3}"#).is_err());
        assert!(UniformHypergraph::from_json(r#"{"k":3,"n":3,"edges":[[1,2,3]],"x":1}"#).is_err());
        assert!(UniformHypergraph::from_json(r#"{"k":-3,"n":3,"edges":[]}"#).is_err());
    }

    #[test]
    fn connectivity() {
        let single = UniformHypergraph::build(3, 3, vec![vec![1, 2, 3]]).unwrap();
        assert!(single.is_connected());
        assert!(h3().is_connected());
        let isolated = UniformHypergraph::build(3, 6, vec![vec![1, 2, 3]]).unwrap();
        assert!(!isolated.is_connected());
        assert_eq!(isolated.components().len(), 4);
    }

    #[test]
    fn hypertree_recognition() {
        assert!(comb(3).is_hypertree());
        assert!(h3().is_hypertree());
        let double = UniformHypergraph::build(3, 4, vec![vec![1, 2, 3], vec![1, 2, 4]]).unwrap();
        assert!(!double.is_hypertree());
        // Berge triangle: connected, but a 3-edge hypertree needs 7 vertices.
        let cycle = UniformHypergraph::build(
            3,
            6,
            vec![vec![1, 2, 3], vec![3, 4, 5], vec![5, 6, 1]],
        )
        .unwrap();
        assert!(!cycle.is_hypertree());
    }

    #[test]
    fn induced_examples() {
        let host = h3();
        let sub = host.induced(&VertexSet::new(1..=9)).unwrap();
        assert_eq!(sub.graph, fixture_graph(FixtureName::H1));
        assert_eq!(host.induced(&VertexSet::all(11)).unwrap().graph, host);
        let point = host.induced(&VertexSet::new([1])).unwrap();
        assert_eq!((point.graph.n(), point.graph.num_edges()), (1, 0));
        assert_eq!(point.host_vertex, vec![1]);
        assert!(host.induced(&VertexSet::new([12])).is_err());
    }

    #[test]
    fn pendant_examples() {
        assert_eq!(
            comb(3).pendant_edges(),
            vec![vec![1, 4, 7], vec![2, 5, 8], vec![3, 6, 9]]
        );
        let single = UniformHypergraph::build(3, 3, vec![vec![1, 2, 3]]).unwrap();
        assert!(single.pendant_edges().is_empty());
    }

    #[test]
    fn pendant_edges_of_h3_match_degree_count() {
        // Oracle: recount degrees directly from the raw edge list.
        let raw = [[1, 2, 3], [1, 4, 7], [2, 5, 8], [3, 6, 9], [1, 10, 11]];
        let mut deg = [0usize; 12];
        for e in &raw {
            for &v in e {
                deg[v] += 1;
            }
        }
        let mut expected: Vec<Vec<usize>> = raw
            .iter()
            .filter(|e| e.iter().filter(|&&v| deg[v] == 1).count() == 2)
            .map(|e| e.to_vec())
            .collect();
        expected.sort();
        assert_eq!(
            expected,
            vec![vec![1, 4, 7], vec![1, 10, 11], vec![2, 5, 8], vec![3, 6, 9]]
        );
        assert_eq!(h3().pendant_edges(), expected);
    }

    #[test]
    fn power_examples() {
        let g = star(3, 2);
        assert_eq!(g.power(2).unwrap(), g);
        let s3 = g.power(3).unwrap();
        assert_eq!(s3.edges(), &[vec![1, 2, 5], vec![1, 3, 6], vec![1, 4, 7]]);
        let mut deg = s3.degrees()[1..].to_vec();
        deg.sort();
        let mut star_deg = star(3, 3).degrees()[1..].to_vec();
        star_deg.sort();
        assert_eq!(deg, star_deg);
        let p = comb(3).power(5).unwrap();
        assert_eq!((p.n(), p.num_edges(), p.k()), (9 + 4 * 2, 4, 5));
        assert!(p.is_hypertree());
        assert!(matches!(
            comb(3).power(2),
            Err(Error::PowerBelowUniformity { from: 3, to: 2 })
        ));
    }

    #[test]
    fn power_tree_examples() {
        assert!(!comb(3).is_power_tree().unwrap());
        assert!(fixture_graph(FixtureName::H2).is_power_tree().unwrap());
        assert!(!h3().is_power_tree().unwrap());
        assert!(loose_path(1, 3).is_power_tree().unwrap());
        assert!(comb(2).is_power_tree().unwrap());
        let double = UniformHypergraph::build(3, 4, vec![vec![1, 2, 3], vec![1, 2, 4]]).unwrap();
        assert!(matches!(double.is_power_tree(), Err(Error::NotAHypertree)));
    }
}
