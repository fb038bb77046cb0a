//! Connected induced subtrees of a hypertree and their matching polynomials.
//!
//! In a hypertree every connected edge set `F` is closed: no other edge lies
//! inside `∪F`. So connected edge sets and connected induced subtrees with at
//! least one edge are in bijection, and enumerating the former (connected
//! vertex sets of the edge-intersection graph) covers the latter.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::UniformHypergraph;
use crate::matching::matching_polynomial;
use crate::poly::AlphaPolynomial;

pub const DEFAULT_MAX_SUBSETS: usize = 1_000_000;

/// Sorted indices into the host's canonical edge list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EdgeSubset(Vec<usize>);

impl EdgeSubset {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        EdgeSubset(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct SubtreeCatalog {
    pub host: UniformHypergraph,
    pub subsets: Vec<EdgeSubset>,
    /// Distinct `φ` values, sorted by degree then coefficients.
    pub polys: Vec<AlphaPolynomial>,
    /// `poly_of[i]` indexes `polys` for `subsets[i]`.
    pub poly_of: Vec<usize>,
}

impl SubtreeCatalog {
    /// Subset indices whose subtree has polynomial `polys[p]`.
    pub fn witnesses(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        self.poly_of
            .iter()
            .enumerate()
            .filter(move |(_, &q)| q == p)
            .map(|(i, _)| i)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let subtrees: Vec<_> = self
            .subsets
            .iter()
            .zip(&self.poly_of)
            .map(|(s, &p)| {
                let edges: Vec<&Vec<usize>> =
                    s.indices().iter().map(|&i| &self.host.edges()[i]).collect();
                serde_json::json!({ "edges": edges, "phi_alpha": self.polys[p] })
            })
            .collect();
        serde_json::json!({ "subtrees": subtrees, "distinct_polys": self.polys })
    }
}

/// Adjacency lists of the edge-intersection graph.
fn edge_adjacency(h: &UniformHypergraph) -> Vec<Vec<usize>> {
    let inc = h.incidence();
    let mut adj = vec![Vec::new(); h.num_edges()];
    for list in &inc {
        for (a, &i) in list.iter().enumerate() {
            for &j in &list[a + 1..] {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    for row in &mut adj {
        row.sort_unstable();
        row.dedup();
    }
    adj
}

pub fn connected_edge_subsets(h: &UniformHypergraph) -> Result<Vec<EdgeSubset>> {
    connected_edge_subsets_capped(h, DEFAULT_MAX_SUBSETS)
}

/// ESU-style enumeration: every connected set is grown from its minimum
/// index, extending only through neighbors that are exclusive to the newest
/// member, so each set is produced exactly once.
pub fn connected_edge_subsets_capped(h: &UniformHypergraph, cap: usize) -> Result<Vec<EdgeSubset>> {
    if !h.is_hypertree() {
        return Err(Error::NotAHypertree);
    }
    let adj = edge_adjacency(h);
    let mut out = Vec::new();

    struct Walk<'a> {
        adj: &'a [Vec<usize>],
        anchor: usize,
        member: Vec<bool>,
        touched: Vec<usize>,
        cap: usize,
    }

    fn extend(w: &mut Walk<'_>, sub: &mut Vec<usize>, mut ext: Vec<usize>, out: &mut Vec<EdgeSubset>) -> Result<()> {
        if out.len() >= w.cap {
            return Err(Error::CatalogTooLarge(w.cap));
        }
        out.push(EdgeSubset::new(sub.clone()));
        while let Some(next) = ext.pop() {
            let mut grown = ext.clone();
            for &u in &w.adj[next] {
                if u > w.anchor && !w.member[u] && w.touched[u] == 0 {
                    grown.push(u);
                }
            }
            w.member[next] = true;
            for &u in &w.adj[next] {
                w.touched[u] += 1;
            }
            sub.push(next);
            extend(w, sub, grown, out)?;
            sub.pop();
            for &u in &w.adj[next] {
                w.touched[u] -= 1;
            }
            w.member[next] = false;
        }
        Ok(())
    }

    let m = h.num_edges();
    for anchor in 0..m {
        let mut walk = Walk {
            adj: &adj,
            anchor,
            member: vec![false; m],
            touched: vec![0; m],
            cap,
        };
        walk.member[anchor] = true;
        for &u in &adj[anchor] {
            walk.touched[u] += 1;
        }
        let ext = adj[anchor].iter().copied().filter(|&u| u > anchor).collect();
        extend(&mut walk, &mut vec![anchor], ext, &mut out)?;
    }
    out.sort();
    Ok(out)
}

/// Whether `H[∪F]` has edge set exactly `F`.
pub fn induced_closure_holds(h: &UniformHypergraph, f: &EdgeSubset) -> bool {
    let mut inside = vec![false; h.n() + 1];
    for &i in f.indices() {
        for &v in &h.edges()[i] {
            inside[v] = true;
        }
    }
    h.edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.iter().all(|&v| inside[v]))
        .map(|(i, _)| i)
        .eq(f.indices().iter().copied())
}

/// An order in which to delete pendant edges from the full edge set so that
/// exactly `F` remains, each deletion pendant in the edge set current at that
/// step. `None` if the greedy peel gets stuck.
pub fn pendant_deletion_sequence(h: &UniformHypergraph, f: &EdgeSubset) -> Option<Vec<usize>> {
    let mut keep = vec![false; h.num_edges()];
    for &i in f.indices() {
        keep[i] = true;
    }
    let mut alive = vec![true; h.num_edges()];
    let mut deg = h.degrees();
    let mut order = Vec::new();
    while alive.iter().zip(&keep).any(|(&a, &k)| a && !k) {
        let pick = (0..h.num_edges()).find(|&i| {
            alive[i]
                && !keep[i]
                && h.edges()[i].iter().filter(|&&v| deg[v] == 1).count() == h.k() - 1
        })?;
        alive[pick] = false;
        for &v in &h.edges()[pick] {
            deg[v] -= 1;
        }
        order.push(pick);
    }
    Some(order)
}

pub fn distinct_matching_polynomials(h: &UniformHypergraph) -> Result<SubtreeCatalog> {
    distinct_matching_polynomials_capped(h, DEFAULT_MAX_SUBSETS)
}

pub fn distinct_matching_polynomials_capped(h: &UniformHypergraph, cap: usize) -> Result<SubtreeCatalog> {
    let subsets = connected_edge_subsets_capped(h, cap)?;
    let per_subset: Vec<AlphaPolynomial> = subsets
        .par_iter()
        .map(|s| matching_polynomial(&h.edge_subgraph(s.indices()).graph))
        .collect::<Result<_>>()?;
    let mut polys = per_subset.clone();
    polys.sort();
    polys.dedup();
    let poly_of = per_subset
        .iter()
        .map(|p| polys.binary_search(p).expect("present after dedup"))
        .collect();
    Ok(SubtreeCatalog {
        host: h.clone(),
        subsets,
        polys,
        poly_of,
    })
}
