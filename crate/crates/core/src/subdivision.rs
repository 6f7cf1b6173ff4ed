//! Edge subdivision and its inverse (suppression of degree-2 vertices).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Where an expanded vertex came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Original vertex of the base graph (same index in base and expanded).
    Branch(usize),
    /// The `position`-th internal vertex (1-based, counted from the lower
    /// endpoint) placed on base edge `edge`.
    Internal { edge: (usize, usize), position: usize },
}

/// A base graph together with its expansion: every base edge (u, v) is
/// replaced by a path with `counts[(u, v)]` internal vertices.
///
/// Expanded indices: base vertices keep their index, internal vertices are
/// appended in lexicographic edge order, positions from the lower endpoint.
#[derive(Debug, Clone)]
pub struct SubdividedGraph {
    pub base: Graph,
    pub counts: BTreeMap<(usize, usize), usize>,
    pub expanded: Graph,
    pub provenance: Vec<Provenance>,
}

impl SubdividedGraph {
    pub fn is_genuine(&self) -> bool {
        self.counts.values().all(|&c| c >= 1)
    }

    /// Expanded indices of the internal vertices on base edge (u, v), in
    /// position order from the lower endpoint.
    pub fn internal_vertices(&self, u: usize, v: usize) -> Vec<usize> {
        let key = (u.min(v), u.max(v));
        self.provenance
            .iter()
            .enumerate()
            .filter(|(_, p)| matches!(p, Provenance::Internal { edge, .. } if *edge == key))
            .map(|(i, _)| i)
            .collect()
    }

    /// The expanded path along base edge (u, v), endpoints included, read
    /// from u to v.
    pub fn edge_path(&self, u: usize, v: usize) -> Vec<usize> {
        let mut internals = self.internal_vertices(u, v);
        if u > v {
            internals.reverse();
        }
        let mut path = vec![u];
        path.extend(internals);
        path.push(v);
        path
    }
}

pub fn subdivide(base: &Graph, counts: &BTreeMap<(usize, usize), usize>) -> Result<SubdividedGraph> {
    let base_edges = base.edges();
    for &(u, v) in counts.keys() {
        if u >= v || !base.has_edge(u, v) {
            return Err(Error::NotABaseEdge(format!("({u}, {v})")));
        }
    }
    let full_counts: BTreeMap<(usize, usize), usize> = base_edges
        .iter()
        .map(|&e| (e, counts.get(&e).copied().unwrap_or(0)))
        .collect();
    let n = base.vertex_count();
    let total: usize = full_counts.values().sum();
    let mut expanded = Graph::empty(n + total);
    let mut provenance: Vec<Provenance> = (0..n).map(Provenance::Branch).collect();
    let mut next = n;
    for (&(u, v), &c) in &full_counts {
        let mut prev = u;
        for pos in 1..=c {
            provenance.push(Provenance::Internal { edge: (u, v), position: pos });
            expanded.add_edge(prev, next)?;
            prev = next;
            next += 1;
        }
        expanded.add_edge(prev, v)?;
    }
    Ok(SubdividedGraph { base: base.clone(), counts: full_counts, expanded, provenance })
}

/// A path of the expanded graph joining two branch vertices through
/// degree-2 internal vertices. `u == v` marks a suppressed loop.
#[derive(Debug, Clone)]
pub struct BranchPath {
    pub u: usize,
    pub v: usize,
    /// Internal expanded vertices, in order from `u` to `v`.
    pub internal: Vec<usize>,
}

/// Multigraph-tolerant view of a subdivision: the branch vertices (degree
/// not equal to 2) and the subdivided paths joining them. Parallel paths and
/// loops are representable here even when the suppressed base would not be a
/// simple graph.
#[derive(Debug, Clone)]
pub struct BranchDecomposition {
    pub branch: Vec<usize>,
    pub paths: Vec<BranchPath>,
}

/// Suppresses all degree-2 vertices of a connected graph.
pub fn branch_decomposition(g: &Graph) -> Result<BranchDecomposition> {
    g.check_subcubic()?;
    let n = g.vertex_count();
    let branch: Vec<usize> = (0..n).filter(|&v| g.degree(v) != 2).collect();
    if !branch.iter().any(|&v| g.degree(v) == 3) {
        return Err(Error::Precondition(
            "no degree-3 vertex: pure path or cycle, handle directly".into(),
        ));
    }
    let is_branch = {
        let mut b = vec![false; n];
        for &v in &branch {
            b[v] = true;
        }
        b
    };
    // walk from every branch vertex along every incident edge; mark the first
    // step of each traversed path so each path is reported once
    let mut used: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    let mut paths = Vec::new();
    for &s in &branch {
        for &first in g.neighbors(s) {
            if used.contains(&(s, first)) {
                continue;
            }
            let mut internal = Vec::new();
            let mut prev = s;
            let mut cur = first;
            while !is_branch[cur] {
                internal.push(cur);
                let next = *g
                    .neighbors(cur)
                    .iter()
                    .find(|&&w| w != prev)
                    .ok_or(Error::Internal("degree-2 vertex with one neighbor".into()))?;
                prev = cur;
                cur = next;
            }
            used.insert((s, first));
            used.insert((cur, prev));
            paths.push(BranchPath { u: s, v: cur, internal });
        }
    }
    Ok(BranchDecomposition { branch, paths })
}

/// Inverts `subdivide`: recovers the simple base graph of a subdivision.
/// Fails when suppression would produce parallel edges or loops; the error
/// names the offending base pair.
pub fn detect_subdivision_structure(g: &Graph) -> Result<SubdividedGraph> {
    detect_subdivision_with_map(g).map(|(sg, _)| sg)
}

/// Like `detect_subdivision_structure`, but also returns the vertex map
/// from the canonical expanded layout back to `g`'s own indices, so
/// colorings computed on `sg.expanded` can be carried over to `g`.
pub fn detect_subdivision_with_map(g: &Graph) -> Result<(SubdividedGraph, Vec<usize>)> {
    let decomp = branch_decomposition(g)?;
    let mut index = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in decomp.branch.iter().enumerate() {
        index[v] = i;
    }
    let mut base = Graph::empty(decomp.branch.len());
    let mut counts = BTreeMap::new();
    for p in &decomp.paths {
        let (bu, bv) = (index[p.u], index[p.v]);
        if bu == bv {
            return Err(Error::Precondition(format!(
                "suppression yields a loop at base vertex {bu}"
            )));
        }
        let key = (bu.min(bv), bu.max(bv));
        if base.has_edge(key.0, key.1) {
            return Err(Error::Precondition(format!(
                "suppression yields parallel edges between base vertices {} and {}",
                key.0, key.1
            )));
        }
        base.add_edge(key.0, key.1)?;
        counts.insert(key, p.internal.len());
    }
    // rebuild through subdivide so provenance and expanded indexing follow
    // the canonical layout
    let sg = subdivide(&base, &counts)?;
    // internal vertices of base edge (bu, bv) run from the lower endpoint,
    // so orient each original path the same way before reading positions
    let mut paths_by_edge: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for p in &decomp.paths {
        let (bu, bv) = (index[p.u], index[p.v]);
        let mut internal = p.internal.clone();
        if bu > bv {
            internal.reverse();
        }
        paths_by_edge.insert((bu.min(bv), bu.max(bv)), internal);
    }
    let map: Vec<usize> = sg
        .provenance
        .iter()
        .map(|p| match p {
            Provenance::Branch(i) => decomp.branch[*i],
            Provenance::Internal { edge, position } => paths_by_edge[edge][position - 1],
        })
        .collect();
    Ok((sg, map))
}
