//! Maximum matching in general graphs (blossom algorithm) and the
//! Edmonds-Gallai decomposition built from a single matching run.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A matching: pairwise disjoint edges of the host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    mate: Vec<Option<usize>>,
}

impl Matching {
    pub fn from_mate(mate: Vec<Option<usize>>) -> Self {
        Matching { mate }
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        self.mate[v]
    }

    pub fn covers(&self, v: usize) -> bool {
        self.mate[v].is_some()
    }

    pub fn len(&self) -> usize {
        self.mate.iter().flatten().count() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (v, m) in self.mate.iter().enumerate() {
            if let Some(w) = m {
                if v < *w {
                    out.push((v, *w));
                }
            }
        }
        out
    }

    pub fn exposed(&self) -> Vec<usize> {
        (0..self.mate.len()).filter(|&v| self.mate[v].is_none()).collect()
    }

    pub fn is_perfect(&self) -> bool {
        self.mate.iter().all(|m| m.is_some())
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        for (v, m) in self.mate.iter().enumerate() {
            if let Some(w) = m {
                if self.mate[*w] != Some(v) {
                    return Err(Error::Internal(format!("mate of {w} is not {v}")));
                }
                if !g.has_edge(v, *w) {
                    return Err(Error::Internal(format!("({v}, {w}) is not a graph edge")));
                }
            }
        }
        Ok(())
    }
}

struct BlossomState<'a> {
    g: &'a Graph,
    mate: Vec<Option<usize>>,
    parent: Vec<Option<usize>>,
    base: Vec<usize>,
    /// outer ("even") vertices of the current alternating forest
    used: Vec<bool>,
}

impl<'a> BlossomState<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.vertex_count();
        BlossomState {
            g,
            mate: vec![None; n],
            parent: vec![None; n],
            base: (0..n).collect(),
            used: vec![false; n],
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let n = self.g.vertex_count();
        let mut seen = vec![false; n];
        loop {
            a = self.base[a];
            seen[a] = true;
            match self.mate[a] {
                None => break,
                Some(m) => match self.parent[m] {
                    None => break,
                    Some(p) => a = p,
                },
            }
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b].expect("inner path vertex is matched")]
                .expect("inner path vertex has a parent");
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize, blossom: &mut [bool]) {
        while self.base[v] != b {
            blossom[self.base[v]] = true;
            let m = self.mate[v].expect("blossom path vertex is matched");
            blossom[self.base[m]] = true;
            self.parent[v] = Some(child);
            child = m;
            v = self.parent[m].expect("blossom path continues");
        }
    }

    /// Alternating BFS from an exposed root. Returns the free endpoint of an
    /// augmenting path if one exists. Neighbors are scanned in index order,
    /// so the result is deterministic.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.vertex_count();
        self.used = vec![false; n];
        self.parent = vec![None; n];
        self.base = (0..n).collect();
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &to in self.g.neighbors(v) {
                if self.base[v] == self.base[to] || self.mate[v] == Some(to) {
                    continue;
                }
                if to == root || matches!(self.mate[to], Some(m) if self.parent[m].is_some()) {
                    // odd cycle: contract the blossom
                    let curbase = self.lca(v, to);
                    let mut blossom = vec![false; n];
                    self.mark_path(v, curbase, to, &mut blossom);
                    self.mark_path(to, curbase, v, &mut blossom);
                    for i in 0..n {
                        if blossom[self.base[i]] {
                            self.base[i] = curbase;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to].is_none() {
                    self.parent[to] = Some(v);
                    match self.mate[to] {
                        None => return Some(to),
                        Some(m) => {
                            if !self.used[m] {
                                self.used[m] = true;
                                queue.push_back(m);
                            }
                        }
                    }
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        loop {
            let pv = self.parent[v].expect("augmenting path reaches the root");
            let next = self.mate[pv];
            self.mate[v] = Some(pv);
            self.mate[pv] = Some(v);
            match next {
                None => break,
                Some(nv) => v = nv,
            }
        }
    }
}

pub fn maximum_matching(g: &Graph) -> Matching {
    let mut st = BlossomState::new(g);
    for root in 0..g.vertex_count() {
        if st.mate[root].is_none() {
            if let Some(end) = st.find_path(root) {
                st.augment(end);
            }
        }
    }
    let m = Matching::from_mate(st.mate.clone());
    debug_assert!(m.validate(g).is_ok());
    m
}

/// For every vertex x, G - x has a perfect matching.
pub fn hypomatchable(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n % 2 == 0 {
        return false;
    }
    (0..n).all(|x| {
        let verts: Vec<usize> = (0..n).filter(|&v| v != x).collect();
        let (h, _) = g.induced(&verts);
        maximum_matching(&h).len() * 2 == n - 1
    })
}

/// The Edmonds-Gallai partition: A is every vertex missed by some maximum
/// matching, B = N(A) \ A, C the rest.
#[derive(Debug, Clone)]
pub struct EGDecomposition {
    pub a: BTreeSet<usize>,
    pub b: BTreeSet<usize>,
    pub c: BTreeSet<usize>,
    /// components of G - B inside A (each factor-critical), sorted vertex lists
    pub odd_components: Vec<Vec<usize>>,
    /// components of G - B inside C (each with a perfect matching)
    pub even_components: Vec<Vec<usize>>,
    pub matching: Matching,
    /// Hall matching of B into distinct odd components
    pub contracted_matching: BTreeMap<usize, usize>,
    /// for each matched B vertex, the odd-component vertex it is matched through
    pub entry_vertex: BTreeMap<usize, usize>,
}

pub fn edmonds_gallai(g: &Graph) -> Result<EGDecomposition> {
    let n = g.vertex_count();
    let mut st = BlossomState::new(g);
    for root in 0..n {
        if st.mate[root].is_none() {
            if let Some(end) = st.find_path(root) {
                st.augment(end);
            }
        }
    }
    // with the matching maximum, the outer vertices of the alternating
    // forests grown from exposed roots are exactly the vertices missed by
    // some maximum matching
    let mut a = BTreeSet::new();
    for root in 0..n {
        if st.mate[root].is_none() {
            let found = st.find_path(root);
            debug_assert!(found.is_none(), "matching was not maximum");
            for v in 0..n {
                if st.used[v] {
                    a.insert(v);
                }
            }
        }
    }
    let matching = Matching::from_mate(st.mate);
    let b: BTreeSet<usize> = a
        .iter()
        .flat_map(|&v| g.neighbors(v).iter().copied())
        .filter(|v| !a.contains(v))
        .collect();
    let c: BTreeSet<usize> =
        (0..n).filter(|v| !a.contains(v) && !b.contains(v)).collect();

    // components of G - B
    let mut odd_components = Vec::new();
    let mut even_components = Vec::new();
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] || b.contains(&s) {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in g.neighbors(u) {
                if !seen[v] && !b.contains(&v) {
                    seen[v] = true;
                    comp.push(v);
                    stack.push(v);
                }
            }
        }
        comp.sort_unstable();
        if comp.iter().all(|v| a.contains(v)) {
            odd_components.push(comp);
        } else if comp.iter().all(|v| c.contains(v)) {
            even_components.push(comp);
        } else {
            return Err(Error::Internal(
                "component of G - B mixes A and C vertices".into(),
            ));
        }
    }

    let (contracted_matching, entry_vertex) =
        hall_match(g, &b, &odd_components)?;

    let d = EGDecomposition {
        a,
        b,
        c,
        odd_components,
        even_components,
        matching,
        contracted_matching,
        entry_vertex,
    };
    if cfg!(debug_assertions) {
        d.validate(g)?;
    }
    Ok(d)
}

/// Bipartite matching (Kuhn) between B and the contracted odd components.
/// Theorem guarantees a matching covering all of B; anything less is an
/// internal error. Deterministic: lowest component id first.
fn hall_match(
    g: &Graph,
    b: &BTreeSet<usize>,
    odd_components: &[Vec<usize>],
) -> Result<(BTreeMap<usize, usize>, BTreeMap<usize, usize>)> {
    let n = g.vertex_count();
    let mut comp_of = vec![usize::MAX; n];
    for (i, comp) in odd_components.iter().enumerate() {
        for &v in comp {
            comp_of[v] = i;
        }
    }
    // adjacency: for each b, the (component id, entry vertex) pairs
    let b_list: Vec<usize> = b.iter().copied().collect();
    let mut adj: Vec<Vec<(usize, usize)>> = Vec::with_capacity(b_list.len());
    for &bv in &b_list {
        let mut pairs: Vec<(usize, usize)> = g
            .neighbors(bv)
            .iter()
            .filter(|&&w| comp_of[w] != usize::MAX)
            .map(|&w| (comp_of[w], w))
            .collect();
        pairs.sort_unstable();
        pairs.dedup_by_key(|p| p.0);
        adj.push(pairs);
    }
    let mut comp_mate: Vec<Option<usize>> = vec![None; odd_components.len()]; // comp -> index into b_list
    fn try_kuhn(
        i: usize,
        adj: &[Vec<(usize, usize)>],
        comp_mate: &mut [Option<usize>],
        visited: &mut [bool],
    ) -> bool {
        for &(cid, _) in &adj[i] {
            if !visited[cid] {
                visited[cid] = true;
                if comp_mate[cid].is_none()
                    || try_kuhn(comp_mate[cid].unwrap(), adj, comp_mate, visited)
                {
                    comp_mate[cid] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    for i in 0..b_list.len() {
        let mut visited = vec![false; odd_components.len()];
        if !try_kuhn(i, &adj, &mut comp_mate, &mut visited) {
            return Err(Error::Internal(format!(
                "Hall matching failed to cover B vertex {}",
                b_list[i]
            )));
        }
    }
    let mut map = BTreeMap::new();
    let mut entry = BTreeMap::new();
    for (cid, who) in comp_mate.iter().enumerate() {
        if let Some(i) = who {
            let bv = b_list[*i];
            map.insert(bv, cid);
            let &(_, w) = adj[*i].iter().find(|&&(c, _)| c == cid).unwrap();
            entry.insert(bv, w);
        }
    }
    Ok((map, entry))
}

/// The Hall matching of B into odd components, as recorded in the
/// decomposition.
pub fn hall_matching_onto_b(d: &EGDecomposition) -> BTreeMap<usize, usize> {
    d.contracted_matching.clone()
}

impl EGDecomposition {
    /// Re-checks every structural invariant against the host graph.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.vertex_count();
        let total = self.a.len() + self.b.len() + self.c.len();
        if total != n || self.a.intersection(&self.b).next().is_some() {
            return Err(Error::Internal("A, B, C do not partition V".into()));
        }
        self.matching.validate(g)?;
        // B = N(A) \ A
        let nb: BTreeSet<usize> = self
            .a
            .iter()
            .flat_map(|&v| g.neighbors(v).iter().copied())
            .filter(|v| !self.a.contains(v))
            .collect();
        if nb != self.b {
            return Err(Error::Internal("B is not N(A) \\ A".into()));
        }
        // odd components factor-critical, even components perfectly matchable
        for comp in &self.odd_components {
            let (h, _) = g.induced(comp);
            if !hypomatchable(&h) {
                return Err(Error::Internal("odd component not factor-critical".into()));
            }
        }
        for comp in &self.even_components {
            let (h, _) = g.induced(comp);
            if maximum_matching(&h).len() * 2 != comp.len() {
                return Err(Error::Internal("even component has no perfect matching".into()));
            }
        }
        // Hall matching: total on B, injective, edge-supported
        let mut used = BTreeSet::new();
        for &bv in &self.b {
            let Some(&cid) = self.contracted_matching.get(&bv) else {
                return Err(Error::Internal(format!("B vertex {bv} unmatched")));
            };
            if !used.insert(cid) {
                return Err(Error::Internal("Hall matching not injective".into()));
            }
            let &w = self
                .entry_vertex
                .get(&bv)
                .ok_or(Error::Internal("missing entry vertex".into()))?;
            if !g.has_edge(bv, w) || !self.odd_components[cid].contains(&w) {
                return Err(Error::Internal("Hall entry edge invalid".into()));
            }
        }
        // Berge: |M| = (n - deficiency)/2 where deficiency = #odd - |B|
        let deficiency = self.odd_components.len() - self.b.len();
        if self.matching.len() != (n - deficiency) / 2 {
            return Err(Error::Internal("matching size disagrees with Berge formula".into()));
        }
        Ok(())
    }

    /// Component ids of odd components not covered by the Hall matching.
    pub fn unsaturated_odd_components(&self) -> Vec<usize> {
        let used: BTreeSet<usize> = self.contracted_matching.values().copied().collect();
        (0..self.odd_components.len()).filter(|i| !used.contains(i)).collect()
    }

    /// Stable text dump for the CLI.
    pub fn to_text(&self) -> String {
        let fmt_set = |s: &BTreeSet<usize>| {
            s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
        };
        let mut out = String::new();
        out.push_str(&format!("A: {}\n", fmt_set(&self.a)));
        out.push_str(&format!("B: {}\n", fmt_set(&self.b)));
        out.push_str(&format!("C: {}\n", fmt_set(&self.c)));
        for (i, comp) in self.odd_components.iter().enumerate() {
            let verts: Vec<String> = comp.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("odd[{i}]: {}\n", verts.join(" ")));
        }
        for (i, comp) in self.even_components.iter().enumerate() {
            let verts: Vec<String> = comp.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("even[{i}]: {}\n", verts.join(" ")));
        }
        let edges: Vec<String> = self
            .matching
            .edges()
            .iter()
            .map(|(u, v)| format!("{u}-{v}"))
            .collect();
        out.push_str(&format!("matching: {}\n", edges.join(" ")));
        for (bv, cid) in &self.contracted_matching {
            out.push_str(&format!("hall: {bv} -> odd[{cid}]\n"));
        }
        out
    }
}
