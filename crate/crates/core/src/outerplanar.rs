//! Ear-by-ear crumby colorings of 2-connected subcubic outerplanar graphs
//! with one prescribed vertex color, plus the cycle-with-attached-trees
//! solver and the generic tree-attachment composition.
//!
//! The 2-connected solver works on the outerplanar embedding: the initial
//! inner face is colored from the cycle table (or the two-face table when the
//! prescribed vertex has degree 3), then the remaining inner faces are added
//! as ears in BFS order over the dual tree, each colored by a row of the ear
//! case ledger. Throughout, property (A) is maintained: no chord shared with
//! an unprocessed face has two blue endpoints.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::generators::attach_by_leaf;
use crate::graph::{Color, Coloring, Graph};
use crate::oracle::{self, Prescription};
use crate::trees;
use crate::verifier::verify_crumby;

/// Outerplanar embedding of a 2-connected graph: the unique Hamiltonian
/// outer cycle, the chords, the inner faces, and the dual tree.
#[derive(Debug, Clone)]
pub struct OuterplanarEmbedding {
    /// Outer face as a cyclic vertex order.
    pub outer_cycle: Vec<usize>,
    /// Edges not on the outer cycle, as sorted pairs.
    pub chords: Vec<(usize, usize)>,
    /// Inner faces as vertex cycles; consecutive entries are adjacent.
    pub inner_faces: Vec<Vec<usize>>,
    /// (face, face, shared chord) adjacencies; these form a tree.
    pub dual_tree: Vec<(usize, usize, (usize, usize))>,
}

/// One ear of an ear decomposition: endpoints `x`, `y` adjacent in the
/// already-built subgraph, internal path `internal` from `x` to `y`.
#[derive(Debug, Clone)]
pub struct Ear {
    pub x: usize,
    pub y: usize,
    pub internal: Vec<usize>,
    /// Index of the inner face this ear completes.
    pub face: usize,
}

/// Ear decomposition rooted at an inner face, ears in BFS order over the
/// dual tree.
#[derive(Debug, Clone)]
pub struct EarDecomposition {
    pub initial: Vec<usize>,
    pub initial_face: usize,
    pub ears: Vec<Ear>,
}

fn norm(a: usize, b: usize) -> (usize, usize) {
    if a < b { (a, b) } else { (b, a) }
}

fn is_two_connected(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n < 3 || !g.is_connected() {
        return false;
    }
    // iterative lowpoint DFS from vertex 0
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut parent = vec![usize::MAX; n];
    let mut child_iter = vec![0usize; n];
    let mut time = 0usize;
    let mut root_children = 0usize;
    let mut stack = vec![0usize];
    disc[0] = 0;
    low[0] = 0;
    time += 1;
    while let Some(&u) = stack.last() {
        if child_iter[u] < g.degree(u) {
            let w = g.neighbors(u)[child_iter[u]];
            child_iter[u] += 1;
            if disc[w] == usize::MAX {
                parent[w] = u;
                disc[w] = time;
                low[w] = time;
                time += 1;
                if u == 0 {
                    root_children += 1;
                }
                stack.push(w);
            } else if w != parent[u] {
                low[u] = low[u].min(disc[w]);
            }
        } else {
            stack.pop();
            let p = parent[u];
            if p != usize::MAX {
                low[p] = low[p].min(low[u]);
                if p != 0 && low[u] >= disc[p] {
                    return false; // p is an articulation point
                }
            }
        }
    }
    root_children <= 1
}

/// Finds the Hamiltonian outer cycle by repeatedly peeling a degree-2
/// vertex (inserting a virtual edge between its neighbors when they are not
/// adjacent) until a bare cycle remains, then re-inserting in reverse.
/// Returns None when the graph cannot be outerplanar.
fn outer_cycle_by_peeling(g: &Graph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    if n < 3 {
        return None;
    }
    let mut adj: Vec<BTreeSet<usize>> =
        (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    let mut ops: Vec<(usize, usize, usize)> = Vec::new();
    let mut remaining = n;
    loop {
        if (0..n).any(|v| alive[v] && adj[v].len() < 2) {
            return None;
        }
        if (0..n).filter(|&v| alive[v]).all(|v| adj[v].len() == 2) {
            break;
        }
        if remaining <= 3 {
            return None;
        }
        let u = (0..n).find(|&v| alive[v] && adj[v].len() == 2)?;
        let mut it = adj[u].iter();
        let a = *it.next().unwrap();
        let b = *it.next().unwrap();
        alive[u] = false;
        remaining -= 1;
        adj[a].remove(&u);
        adj[b].remove(&u);
        adj[u].clear();
        if !adj[a].contains(&b) {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        ops.push((u, a, b));
    }
    let start = (0..n).find(|&v| alive[v])?;
    let mut cycle = vec![start];
    let mut prev = start;
    let mut cur = *adj[start].iter().next().unwrap();
    while cur != start {
        cycle.push(cur);
        let nxt = *adj[cur].iter().find(|&&w| w != prev)?;
        prev = cur;
        cur = nxt;
    }
    if cycle.len() != remaining {
        return None;
    }
    for &(u, a, b) in ops.iter().rev() {
        let k = cycle.len();
        let pa = cycle.iter().position(|&x| x == a)?;
        let pb = cycle.iter().position(|&x| x == b)?;
        if (pa + 1) % k == pb {
            cycle.insert(pb.max(1), u);
            if pb == 0 {
                // b sits at the front; insert at the end instead
                cycle.pop();
                cycle.push(u);
            }
        } else if (pb + 1) % k == pa {
            cycle.insert(pa.max(1), u);
            if pa == 0 {
                cycle.pop();
                cycle.push(u);
            }
        } else {
            return None;
        }
    }
    // canonical form: smallest vertex first, smaller neighbor in position 1
    let k = cycle.len();
    let minpos = (0..k).min_by_key(|&i| cycle[i]).unwrap();
    cycle.rotate_left(minpos);
    if cycle[1] > cycle[k - 1] {
        cycle[1..].reverse();
    }
    // sanity: every consecutive pair must be an edge of g
    for i in 0..k {
        if !g.has_edge(cycle[i], cycle[(i + 1) % k]) {
            return None;
        }
    }
    Some(cycle)
}

/// Three internally vertex-disjoint s-t paths via unit-capacity node-split
/// max flow, or None. Returns the internal vertex sets of the paths.
fn three_disjoint_paths(g: &Graph, s: usize, t: usize) -> Option<[Vec<usize>; 3]> {
    let n = g.vertex_count();
    let src = 2 * s + 1;
    let snk = 2 * t;
    let mut orig: BTreeMap<(usize, usize), i32> = BTreeMap::new();
    for v in 0..n {
        if v != s && v != t {
            orig.insert((2 * v, 2 * v + 1), 1);
        }
    }
    for (u, v) in g.edges() {
        orig.insert((2 * u + 1, 2 * v), 1);
        orig.insert((2 * v + 1, 2 * u), 1);
    }
    let mut res = orig.clone();
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
    for &(a, b) in orig.keys() {
        nbrs[a].push(b);
        nbrs[b].push(a);
        res.entry((b, a)).or_insert(0);
    }
    for l in &mut nbrs {
        l.sort_unstable();
        l.dedup();
    }
    for _ in 0..3 {
        let mut from = vec![usize::MAX; 2 * n];
        from[src] = src;
        let mut queue = VecDeque::from([src]);
        while let Some(a) = queue.pop_front() {
            if a == snk {
                break;
            }
            for &b in &nbrs[a] {
                if from[b] == usize::MAX && res[&(a, b)] > 0 {
                    from[b] = a;
                    queue.push_back(b);
                }
            }
        }
        if from[snk] == usize::MAX {
            return None;
        }
        let mut b = snk;
        while b != src {
            let a = from[b];
            *res.get_mut(&(a, b)).unwrap() -= 1;
            *res.get_mut(&(b, a)).unwrap() += 1;
            b = a;
        }
    }
    // decompose the net flow into 3 paths
    let mut flow: BTreeMap<(usize, usize), i32> = BTreeMap::new();
    for (&(a, b), &c) in &orig {
        let f = c - res[&(a, b)];
        if f > 0 {
            flow.insert((a, b), f);
        }
    }
    let mut paths: Vec<Vec<usize>> = Vec::new();
    for _ in 0..3 {
        let mut internal = Vec::new();
        let mut a = src;
        while a != snk {
            let &(x, b) = flow.iter().find(|(&(x, _), &f)| x == a && f > 0).map(|(k, _)| k)?;
            debug_assert_eq!(x, a);
            *flow.get_mut(&(a, b)).unwrap() -= 1;
            if a % 2 == 0 && b == a + 1 {
                internal.push(a / 2);
            }
            a = b;
        }
        paths.push(internal);
    }
    paths.try_into().ok()
}

/// Builds a NotOuterplanar error with a K4 or K_{2,3} minor witness.
fn not_outerplanar(
    g: &Graph,
    crossing: Option<(&[usize], (usize, usize), (usize, usize))>,
) -> Error {
    let n = g.vertex_count();
    // preferred witness: two branch vertices joined by three internally
    // disjoint paths of length >= 2, i.e. a K_{2,3} subdivision
    for u in 0..n {
        for v in u + 1..n {
            if g.degree(u) >= 3 && g.degree(v) >= 3 && !g.has_edge(u, v) {
                if let Some(paths) = three_disjoint_paths(g, u, v) {
                    let mut sets = vec![vec![u], vec![v]];
                    sets.extend(paths.into_iter());
                    return Error::NotOuterplanar { minor: "K_{2,3}".into(), branch_sets: sets };
                }
            }
        }
    }
    // crossing chords on the outer cycle: contract the four arcs to a K4
    if let Some((outer, (p1, q1), (p2, q2))) = crossing {
        let k = outer.len();
        let (a1, b1, a2, b2) = if p1 < p2 { (p1, p2, q1, q2) } else { (p2, p1, q2, q1) };
        let cuts = [a1, b1, a2, b2];
        let mut sets = Vec::new();
        for i in 0..4 {
            let from = cuts[i];
            let to = cuts[(i + 1) % 4];
            let mut arc = Vec::new();
            let mut p = from;
            while p != to {
                arc.push(outer[p]);
                p = (p + 1) % k;
            }
            sets.push(arc);
        }
        return Error::NotOuterplanar { minor: "K4".into(), branch_sets: sets };
    }
    // a plain K4 subgraph (the one subcubic case the flow search misses)
    if n <= 200 {
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        if g.has_edge(a, b)
                            && g.has_edge(a, c)
                            && g.has_edge(a, d)
                            && g.has_edge(b, c)
                            && g.has_edge(b, d)
                            && g.has_edge(c, d)
                        {
                            return Error::NotOuterplanar {
                                minor: "K4".into(),
                                branch_sets: vec![vec![a], vec![b], vec![c], vec![d]],
                            };
                        }
                    }
                }
            }
        }
    }
    Error::Internal("graph is not outerplanar, but no minor witness was found".into())
}

fn build_faces(
    outer: &[usize],
    cpos: &[(usize, usize)],
) -> (Vec<Vec<usize>>, Vec<(usize, usize, (usize, usize))>) {
    let n = outer.len();
    let mut fwd: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in cpos {
        fwd[a].push(b);
    }
    for l in &mut fwd {
        l.sort_unstable_by(|x, y| y.cmp(x));
    }
    let mut faces = Vec::new();
    let mut dual = Vec::new();
    region(&mut faces, &mut dual, &fwd, outer, 0, n - 1);
    (faces, dual)
}

/// Face bounded from below by the edge or chord (a, b) in cycle positions;
/// recursion on nested chords yields the children and dual-tree edges.
fn region(
    faces: &mut Vec<Vec<usize>>,
    dual: &mut Vec<(usize, usize, (usize, usize))>,
    fwd: &[Vec<usize>],
    outer: &[usize],
    a: usize,
    b: usize,
) -> usize {
    let mut path = vec![a];
    let mut children: Vec<(usize, (usize, usize))> = Vec::new();
    let mut cur = a;
    while cur < b {
        let mut nxt = cur + 1;
        for &t in &fwd[cur] {
            if t <= b && !(cur == a && t == b) {
                nxt = t;
                break;
            }
        }
        if nxt > cur + 1 {
            let child = region(faces, dual, fwd, outer, cur, nxt);
            children.push((child, norm(outer[cur], outer[nxt])));
        }
        path.push(nxt);
        cur = nxt;
    }
    let id = faces.len();
    faces.push(path.into_iter().map(|p| outer[p]).collect());
    for (child, chord) in children {
        dual.push((id, child, chord));
    }
    id
}

/// Recognizes 2-connected outerplanar graphs and returns their embedding.
/// Failure reports either missing 2-connectivity or a K4 / K_{2,3} minor.
pub fn embed_outerplanar(g: &Graph) -> Result<OuterplanarEmbedding> {
    if !g.is_connected() {
        return Err(Error::Precondition("graph must be connected".into()));
    }
    if !is_two_connected(g) {
        return Err(Error::NotTwoConnected);
    }
    let Some(outer) = outer_cycle_by_peeling(g) else {
        return Err(not_outerplanar(g, None));
    };
    let n = outer.len();
    let mut pos = vec![0usize; g.vertex_count()];
    for (i, &v) in outer.iter().enumerate() {
        pos[v] = i;
    }
    let mut cpos: Vec<(usize, usize)> = Vec::new();
    for (u, v) in g.edges() {
        let (a, b) = norm(pos[u], pos[v]);
        if (a + 1) % n != b && (b + 1) % n != a {
            cpos.push((a, b));
        }
    }
    cpos.sort_unstable();
    for i in 0..cpos.len() {
        for j in i + 1..cpos.len() {
            let (a1, b1) = cpos[i];
            let (a2, b2) = cpos[j];
            if (a1 < a2 && a2 < b1 && b1 < b2) || (a2 < a1 && a1 < b2 && b2 < b1) {
                return Err(not_outerplanar(g, Some((&outer, cpos[i], cpos[j]))));
            }
        }
    }
    let (inner_faces, dual_tree) = build_faces(&outer, &cpos);
    debug_assert_eq!(inner_faces.len(), cpos.len() + 1);
    let chords = cpos.iter().map(|&(a, b)| norm(outer[a], outer[b])).collect();
    Ok(OuterplanarEmbedding { outer_cycle: outer, chords, inner_faces, dual_tree })
}

/// Internal path of face `face` between the adjacent vertices `from` and
/// `to`, walked the long way round, excluding both endpoints.
fn face_path(face: &[usize], from: usize, to: usize) -> Vec<usize> {
    let l = face.len();
    let i = face.iter().position(|&v| v == from).expect("endpoint on face");
    let rot: Vec<usize> = (0..l).map(|j| face[(i + j) % l]).collect();
    if rot[1] == to {
        rot[2..].iter().rev().copied().collect()
    } else {
        assert_eq!(rot[l - 1], to, "endpoints must be adjacent on the face");
        rot[1..l - 1].to_vec()
    }
}

/// Ear decomposition starting from an inner face containing `v`; if `v` is
/// a chord endpoint (degree 3), its other face becomes the first ear so that
/// `v` is an endpoint of E_1. Ears follow BFS order over the dual tree.
pub fn ear_decomposition(e: &OuterplanarEmbedding, v: usize) -> EarDecomposition {
    let nf = e.inner_faces.len();
    let mut adj: Vec<Vec<(usize, (usize, usize))>> = vec![Vec::new(); nf];
    for &(f1, f2, ch) in &e.dual_tree {
        adj[f1].push((f2, ch));
        adj[f2].push((f1, ch));
    }
    for l in &mut adj {
        l.sort_unstable();
    }
    let with_v: Vec<usize> =
        (0..nf).filter(|&f| e.inner_faces[f].contains(&v)).collect();
    let root = with_v[0];
    let forced = with_v.get(1).copied();
    let mut seen = vec![false; nf];
    seen[root] = true;
    let mut queue: VecDeque<(usize, (usize, usize))> = VecDeque::new();
    let mut kids: Vec<(usize, (usize, usize))> = adj[root].clone();
    if let Some(f1) = forced {
        kids.sort_unstable_by_key(|&(f, _)| (f != f1, f));
    }
    for (f, ch) in kids {
        seen[f] = true;
        queue.push_back((f, ch));
    }
    let mut ears = Vec::new();
    while let Some((f, (a, b))) = queue.pop_front() {
        ears.push(Ear { x: a, y: b, internal: face_path(&e.inner_faces[f], a, b), face: f });
        for &(nb, ch2) in &adj[f] {
            if !seen[nb] {
                seen[nb] = true;
                queue.push_back((nb, ch2));
            }
        }
    }
    EarDecomposition {
        initial: e.inner_faces[root].clone(),
        initial_face: root,
        ears,
    }
}

/// Crumby coloring of the cycle C_k from the table for k <= 8; larger
/// cycles prepend "rrb".
pub fn cycle_pattern(k: usize) -> String {
    match k {
        3 => "rrb".into(),
        4 => "rrrb".into(),
        5 => "rrrbb".into(),
        6 => "rrbrrb".into(),
        7 => "rrbrrrb".into(),
        8 => "rrrbrrrb".into(),
        _ => {
            assert!(k > 8, "cycles need k >= 3");
            format!("rrb{}", cycle_pattern(k - 3))
        }
    }
}

/// Colors of (w_1, ..., w_k) in the degree-3 start, by k mod 3.
fn table2_w(k: usize) -> String {
    match k % 3 {
        1 => format!("{}r", "rrb".repeat((k - 1) / 3)),
        2 => {
            let c = (k - 2) / 3;
            if c == 0 {
                "br".into()
            } else {
                format!("{}rrrbr", "rrb".repeat(c - 1))
            }
        }
        _ => "rrb".repeat(k / 3),
    }
}

/// Colors of (z_1, ..., z_l) in the degree-3 start; the l = 3d+3 column
/// depends on the k row.
fn table2_z(k: usize, l: usize) -> String {
    match l % 3 {
        1 => format!("{}r", "rrb".repeat((l - 1) / 3)),
        2 => {
            let d = (l - 2) / 3;
            if d == 0 {
                "br".into()
            } else {
                format!("{}rrrbr", "rrb".repeat(d - 1))
            }
        }
        _ => {
            let d = l / 3 - 1;
            if k % 3 == 0 {
                if d == 0 {
                    "brr".into()
                } else {
                    format!("{}rrrbrr", "rrb".repeat(d - 1))
                }
            } else {
                format!("{}rrb", "rrb".repeat(d))
            }
        }
    }
}

/// Internal colors (w_1, ..., w_m) of the merged second ear in the l=3 rr
/// case; m > 6 appends "brr" to the pattern for m - 3.
fn m_pattern(m: usize) -> String {
    match m {
        1 => "r".into(),
        2 => "rr".into(),
        3 => "rrb".into(),
        4 => "rbrr".into(),
        5 => "rrbrr".into(),
        6 => "rrbrrr".into(),
        _ => format!("{}brr", m_pattern(m - 3)),
    }
}

/// The two squares sharing an edge, laid out as the k = l = 2 start sees
/// them: vertex 0 is the prescribed vertex, 1 its chord partner, 2-3 the
/// internal pair of the first face, 4-5 of the second.
pub fn two_square_graph() -> Graph {
    Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 5), (5, 0)]).unwrap()
}

/// Oracle-searched base coloring for the k = l = 2 start with the color of
/// vertex 0 prescribed; the first solution keeping both internal pairs away
/// from all-blue is chosen so property (A) survives.
pub fn two_square_start(color: Color) -> Result<Coloring> {
    let all = oracle::solve_exact_all(&two_square_graph(), &Prescription::one(0, color))?;
    all.into_iter()
        .find(|c| {
            !(c.get(2) == Color::Blue && c.get(3) == Color::Blue)
                && !(c.get(4) == Color::Blue && c.get(5) == Color::Blue)
        })
        .ok_or_else(|| Error::Internal("no property-(A)-safe k=l=2 base coloring".into()))
}

/// Component kind of a blue vertex in the current partial coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlueKind {
    Singleton,
    PairedK2,
}

/// One row of the ear case ledger: the colors assigned to
/// (x, z_1, ..., z_ell, y), applicable when the endpoint statuses match.
/// `x` is always the red endpoint before the ear is added.
#[derive(Debug, Clone, Copy)]
pub struct EarCase {
    pub ell: usize,
    /// y's color before the ear is added.
    pub y_color: Color,
    /// Some(true): row needs x to end a red P3; Some(false): the opposite.
    pub x_red_p3: Option<bool>,
    /// Blue component kind of y, for the rows that split on it.
    pub y_kind: Option<BlueKind>,
    pub pattern: &'static str,
    /// Row applies only when (z_2, z_3) is not a chord to an unprocessed face.
    pub needs_free_z2_z3: bool,
}

pub const EAR_CASES: &[EarCase] = &[
    EarCase { ell: 1, y_color: Color::Blue, x_red_p3: Some(false), y_kind: None, pattern: "rrb", needs_free_z2_z3: false },
    EarCase { ell: 1, y_color: Color::Blue, x_red_p3: Some(true), y_kind: Some(BlueKind::Singleton), pattern: "rbb", needs_free_z2_z3: false },
    // "otherwise, we interchange the color of x and y"
    EarCase { ell: 1, y_color: Color::Blue, x_red_p3: Some(true), y_kind: Some(BlueKind::PairedK2), pattern: "brr", needs_free_z2_z3: false },
    EarCase { ell: 1, y_color: Color::Red, x_red_p3: None, y_kind: None, pattern: "rbr", needs_free_z2_z3: false },
    EarCase { ell: 2, y_color: Color::Blue, x_red_p3: Some(true), y_kind: Some(BlueKind::Singleton), pattern: "brrb", needs_free_z2_z3: false },
    EarCase { ell: 2, y_color: Color::Blue, x_red_p3: Some(true), y_kind: Some(BlueKind::PairedK2), pattern: "brrr", needs_free_z2_z3: false },
    EarCase { ell: 2, y_color: Color::Blue, x_red_p3: Some(false), y_kind: Some(BlueKind::Singleton), pattern: "rrbb", needs_free_z2_z3: false },
    EarCase { ell: 2, y_color: Color::Blue, x_red_p3: Some(false), y_kind: Some(BlueKind::PairedK2), pattern: "rrbr", needs_free_z2_z3: false },
    EarCase { ell: 2, y_color: Color::Red, x_red_p3: Some(false), y_kind: None, pattern: "rrbr", needs_free_z2_z3: false },
    EarCase { ell: 3, y_color: Color::Blue, x_red_p3: None, y_kind: None, pattern: "rbrrb", needs_free_z2_z3: false },
    EarCase { ell: 3, y_color: Color::Red, x_red_p3: Some(false), y_kind: None, pattern: "rrbbr", needs_free_z2_z3: true },
    EarCase { ell: 4, y_color: Color::Blue, x_red_p3: None, y_kind: None, pattern: "rbrrrb", needs_free_z2_z3: false },
    EarCase { ell: 4, y_color: Color::Red, x_red_p3: None, y_kind: None, pattern: "rbrrbr", needs_free_z2_z3: false },
    EarCase { ell: 5, y_color: Color::Blue, x_red_p3: Some(true), y_kind: Some(BlueKind::Singleton), pattern: "brrbrrb", needs_free_z2_z3: false },
    EarCase { ell: 5, y_color: Color::Blue, x_red_p3: Some(true), y_kind: Some(BlueKind::PairedK2), pattern: "brrbrrr", needs_free_z2_z3: false },
    EarCase { ell: 5, y_color: Color::Blue, x_red_p3: Some(false), y_kind: None, pattern: "rrbrrrb", needs_free_z2_z3: false },
    EarCase { ell: 5, y_color: Color::Red, x_red_p3: None, y_kind: None, pattern: "rbrrrbr", needs_free_z2_z3: false },
    EarCase { ell: 6, y_color: Color::Blue, x_red_p3: None, y_kind: None, pattern: "rbrrbrrb", needs_free_z2_z3: false },
    EarCase { ell: 6, y_color: Color::Red, x_red_p3: Some(false), y_kind: None, pattern: "rrbrrrbr", needs_free_z2_z3: false },
];

fn color_of(ch: u8) -> Color {
    if ch == b'r' { Color::Red } else { Color::Blue }
}

/// Partial coloring plus the bookkeeping needed for property (A): which
/// chords still have an unprocessed face on one side.
struct EarSolver<'a> {
    g: &'a Graph,
    emb: &'a OuterplanarEmbedding,
    colors: Vec<Option<Color>>,
    processed: Vec<bool>,
    chord_faces: BTreeMap<(usize, usize), (usize, usize)>,
    chord_set: BTreeSet<(usize, usize)>,
}

impl<'a> EarSolver<'a> {
    fn new(g: &'a Graph, emb: &'a OuterplanarEmbedding) -> Self {
        let mut chord_faces = BTreeMap::new();
        for &(f1, f2, ch) in &emb.dual_tree {
            chord_faces.insert(ch, (f1, f2));
        }
        EarSolver {
            g,
            emb,
            colors: vec![None; g.vertex_count()],
            processed: vec![false; emb.inner_faces.len()],
            chord_faces,
            chord_set: emb.chords.iter().copied().collect(),
        }
    }

    fn set(&mut self, v: usize, c: Color) {
        self.colors[v] = Some(c);
    }

    fn apply(&mut self, verts: &[usize], pattern: &str) {
        debug_assert_eq!(verts.len(), pattern.len());
        for (&v, &ch) in verts.iter().zip(pattern.as_bytes()) {
            self.set(v, color_of(ch));
        }
    }

    fn red_p3_end(&self, v: usize) -> bool {
        if self.colors[v] != Some(Color::Red) {
            return false;
        }
        self.g.neighbors(v).iter().any(|&a| {
            self.colors[a] == Some(Color::Red)
                && self.g.neighbors(a).iter().any(|&b| b != v && self.colors[b] == Some(Color::Red))
        })
    }

    fn blue_kind(&self, v: usize) -> BlueKind {
        let paired =
            self.g.neighbors(v).iter().any(|&a| self.colors[a] == Some(Color::Blue));
        if paired { BlueKind::PairedK2 } else { BlueKind::Singleton }
    }

    /// A chord pending exactly one unprocessed face: a later ear will have
    /// its endpoints.
    fn is_pending(&self, a: usize, b: usize) -> bool {
        match self.chord_faces.get(&norm(a, b)) {
            Some(&(f1, f2)) => self.processed[f1] != self.processed[f2],
            None => false,
        }
    }

    fn snapshot(&self) -> String {
        self.colors
            .iter()
            .map(|c| match c {
                Some(Color::Red) => 'r',
                Some(Color::Blue) => 'b',
                None => '.',
            })
            .collect()
    }

    /// Property (A): no pending chord may have two blue endpoints.
    fn check_property_a(&self) -> Result<()> {
        for (&(a, b), &(f1, f2)) in &self.chord_faces {
            if self.processed[f1] != self.processed[f2]
                && self.colors[a] == Some(Color::Blue)
                && self.colors[b] == Some(Color::Blue)
            {
                return Err(Error::Internal(format!(
                    "property (A) violated on pending chord {a}-{b}"
                )));
            }
        }
        Ok(())
    }

    /// Relaxed per-step predicate: blue degree <= 1, no red P4, and every
    /// red vertex with at least 2 colored neighbors has a red neighbor.
    fn relaxed_check(&self) -> Result<()> {
        for v in 0..self.g.vertex_count() {
            match self.colors[v] {
                Some(Color::Blue) => {
                    let blues = self
                        .g
                        .neighbors(v)
                        .iter()
                        .filter(|&&w| self.colors[w] == Some(Color::Blue))
                        .count();
                    if blues > 1 {
                        return Err(Error::Internal(format!("blue degree {blues} at {v}")));
                    }
                }
                Some(Color::Red) => {
                    let colored = self
                        .g
                        .neighbors(v)
                        .iter()
                        .filter(|&&w| self.colors[w].is_some())
                        .count();
                    let reds = self
                        .g
                        .neighbors(v)
                        .iter()
                        .filter(|&&w| self.colors[w] == Some(Color::Red))
                        .count();
                    if colored >= 2 && reds == 0 {
                        return Err(Error::Internal(format!("red vertex {v} has no red neighbor")));
                    }
                }
                None => {}
            }
        }
        let red = |v: usize| self.colors[v] == Some(Color::Red);
        for a in 0..self.g.vertex_count() {
            if !red(a) {
                continue;
            }
            for &b in self.g.neighbors(a) {
                if !red(b) {
                    continue;
                }
                for &c in self.g.neighbors(b) {
                    if c == a || !red(c) {
                        continue;
                    }
                    for &d in self.g.neighbors(c) {
                        if d != a && d != b && red(d) {
                            return Err(Error::Internal(format!("red P4 {a}-{b}-{c}-{d}")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn checkpoint(&self, label: &str) -> Result<()> {
        self.check_property_a()
            .and_then(|()| self.relaxed_check())
            .map_err(|e| Error::Internal(format!("{label}: {e}; partial coloring {}", self.snapshot())))
    }

    fn start(&mut self, dec: &EarDecomposition, v: usize, color: Color) -> Result<()> {
        if self.g.degree(v) == 2 {
            self.start_cycle(dec, v, color)
        } else {
            self.start_two_faces(dec, v, color)
        }
    }

    fn start_cycle(&mut self, dec: &EarDecomposition, v: usize, color: Color) -> Result<()> {
        let face = &dec.initial;
        let k = face.len();
        let i = face.iter().position(|&w| w == v).unwrap();
        let rot: Vec<usize> = (0..k).map(|j| face[(i + j) % k]).collect();
        self.processed[dec.initial_face] = true;
        if k == 5 {
            // choose an adjacent blue pair that no later ear attaches to
            let pair = if color == Color::Blue {
                // v has degree 2, so its face edges are not chords
                (rot[0], rot[1])
            } else {
                (0..5)
                    .map(|j| (rot[j], rot[(j + 1) % 5]))
                    .find(|&(a, b)| a != v && b != v && !self.chord_set.contains(&norm(a, b)))
                    .ok_or_else(|| {
                        Error::Internal("no chord-free blue pair on the starting C5".into())
                    })?
            };
            for &w in face {
                self.set(w, if w == pair.0 || w == pair.1 { Color::Blue } else { Color::Red });
            }
            return Ok(());
        }
        let pat = cycle_pattern(k).into_bytes();
        let want = if color == Color::Red { b'r' } else { b'b' };
        let off = pat.iter().position(|&c| c == want).unwrap();
        for (j, &w) in rot.iter().enumerate() {
            self.set(w, color_of(pat[(off + j) % k]));
        }
        Ok(())
    }

    fn start_two_faces(&mut self, dec: &EarDecomposition, v: usize, color: Color) -> Result<()> {
        let e1 = dec.ears.first().ok_or_else(|| {
            Error::Internal("degree-3 start without a first ear".into())
        })?;
        if e1.x != v && e1.y != v {
            return Err(Error::Internal("first ear does not end at the prescribed vertex".into()));
        }
        let u = if e1.x == v { e1.y } else { e1.x };
        let w_uv = face_path(&dec.initial, u, v);
        let z_uv: Vec<usize> = if e1.x == u {
            e1.internal.clone()
        } else {
            e1.internal.iter().rev().copied().collect()
        };
        self.processed[dec.initial_face] = true;
        self.processed[e1.face] = true;
        let k = w_uv.len();
        let l = z_uv.len();
        if k == 2 && l == 2 {
            return self.kl2_start(v, u, &w_uv, &z_uv, color);
        }
        let (ar, ab) = if color == Color::Red { (v, u) } else { (u, v) };
        let orient = |seq: &[usize]| -> Vec<usize> {
            // sequences run from the blue anchor towards the red anchor
            if ar == v { seq.to_vec() } else { seq.iter().rev().copied().collect() }
        };
        let w = orient(&w_uv);
        let z = orient(&z_uv);
        self.set(ar, Color::Red);
        self.set(ab, Color::Blue);
        self.apply(&w, &table2_w(k));
        self.apply(&z, &table2_z(k, l));
        Ok(())
    }

    /// The k = l = 2 start (two squares sharing the chord at v); the base
    /// colorings come from the oracle since they are figure-only in print.
    fn kl2_start(
        &mut self,
        v: usize,
        u: usize,
        w: &[usize],
        z: &[usize],
        color: Color,
    ) -> Result<()> {
        let pick = two_square_start(color)?;
        for (vtx, local_idx) in [(v, 0), (u, 1), (w[0], 2), (w[1], 3), (z[0], 4), (z[1], 5)] {
            self.set(vtx, pick.get(local_idx));
        }
        Ok(())
    }

    fn add_ear(&mut self, dec: &EarDecomposition, idx: usize) -> Result<()> {
        let ear = &dec.ears[idx];
        self.processed[ear.face] = true;
        let cx = self.colors[ear.x];
        let cy = self.colors[ear.y];
        let (Some(cx), Some(cy)) = (cx, cy) else {
            return Err(Error::Internal(format!("ear {idx} endpoints not both colored")));
        };
        let forward = ear.internal.clone();
        let backward: Vec<usize> = ear.internal.iter().rev().copied().collect();
        let (x, y, zs) = match (cx, cy) {
            (Color::Blue, Color::Blue) => {
                return Err(Error::Internal(format!(
                    "ear {idx} endpoints {} and {} are both blue",
                    ear.x, ear.y
                )));
            }
            (Color::Red, Color::Blue) => (ear.x, ear.y, forward),
            (Color::Blue, Color::Red) => (ear.y, ear.x, backward),
            (Color::Red, Color::Red) => {
                let (p, q) = (ear.x.min(ear.y), ear.x.max(ear.y));
                let pick = if !self.red_p3_end(p) {
                    p
                } else if !self.red_p3_end(q) {
                    q
                } else {
                    return Err(Error::Internal(format!(
                        "ear {idx}: both red endpoints end a red P3"
                    )));
                };
                if pick == ear.x { (ear.x, ear.y, forward) } else { (ear.y, ear.x, backward) }
            }
        };
        self.apply_ear(x, &zs, y)
    }

    fn apply_ear(&mut self, x: usize, zs: &[usize], y: usize) -> Result<()> {
        let l = zs.len();
        if l >= 7 {
            // start with brr; z_3 takes over the role of x (it sits in a
            // fresh red K2, so it cannot end a red P3)
            self.apply(&zs[..3], "brr");
            return self.apply_ear(zs[2], &zs[3..], y);
        }
        if l == 3
            && self.colors[y] == Some(Color::Red)
            && self.is_pending(zs[1], zs[2])
        {
            return self.apply_merged(zs);
        }
        let x_p3 = self.red_p3_end(x);
        let cy = self.colors[y].unwrap();
        let y_kind = if cy == Color::Blue { Some(self.blue_kind(y)) } else { None };
        let row = EAR_CASES
            .iter()
            .find(|c| {
                c.ell == l
                    && c.y_color == cy
                    && c.x_red_p3.map_or(true, |b| b == x_p3)
                    && c.y_kind.map_or(true, |k| Some(k) == y_kind)
                    && (!c.needs_free_z2_z3 || !self.is_pending(zs[1], zs[2]))
            })
            .ok_or_else(|| {
                Error::Internal(format!(
                    "no ear case for ell={l} y={cy:?} x_p3={x_p3} y_kind={y_kind:?}"
                ))
            })?;
        let mut verts = vec![x];
        verts.extend_from_slice(zs);
        verts.push(y);
        self.apply(&verts, row.pattern);
        Ok(())
    }

    /// The l=3 rr case when a later ear attaches to (z_2, z_3): both faces
    /// are consumed at once with the m-table coloring.
    fn apply_merged(&mut self, zs: &[usize]) -> Result<()> {
        let key = norm(zs[1], zs[2]);
        let &(f1, f2) = self.chord_faces.get(&key).unwrap();
        let fp = if self.processed[f1] { f2 } else { f1 };
        let ws = face_path(&self.emb.inner_faces[fp], zs[1], zs[2]);
        self.processed[fp] = true;
        self.set(zs[0], Color::Blue);
        self.set(zs[1], Color::Red);
        self.set(zs[2], Color::Blue);
        self.apply(&ws, &m_pattern(ws.len()));
        Ok(())
    }

    fn finish(&self, v: usize, color: Color) -> Result<Coloring> {
        let mut out = Vec::with_capacity(self.colors.len());
        for (i, c) in self.colors.iter().enumerate() {
            out.push(c.ok_or_else(|| Error::Internal(format!("vertex {i} left uncolored")))?);
        }
        let coloring = Coloring::new(out);
        let report = verify_crumby(self.g, &coloring)?;
        if !report.ok {
            return Err(Error::Internal(format!(
                "final coloring is not crumby: {}",
                report.to_text().trim()
            )));
        }
        if coloring.get(v) != color {
            return Err(Error::Internal(format!("prescription on vertex {v} was lost")));
        }
        Ok(coloring)
    }
}

/// Crumby coloring of a 2-connected subcubic outerplanar graph with the
/// color of `v` prescribed.
pub fn solve_outerplanar_2conn(g: &Graph, v: usize, color: Color) -> Result<Coloring> {
    g.check_subcubic()?;
    if v >= g.vertex_count() {
        return Err(Error::VertexOutOfRange { index: v, n: g.vertex_count() });
    }
    let emb = embed_outerplanar(g)?;
    let dec = ear_decomposition(&emb, v);
    let mut solver = EarSolver::new(g, &emb);
    solver.start(&dec, v, color)?;
    solver.checkpoint("start")?;
    for i in 0..dec.ears.len() {
        if solver.processed[dec.ears[i].face] {
            continue;
        }
        solver.add_ear(&dec, i)?;
        solver.checkpoint(&format!("ear {i}"))?;
    }
    solver.finish(v, color)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CoreKind {
    K2,
    K13,
}

struct CycleAttachment {
    /// Neighbor of the cycle vertex inside the tree.
    u: usize,
    /// Tree vertices excluding the cycle vertex, sorted.
    comp: Vec<usize>,
    /// Some for K2 / K_{1,3}; None for trees handled by Remark-10 reduction.
    kind: Option<CoreKind>,
}

/// Crumby coloring of a cycle with subcubic trees attached at distinct
/// cycle vertices.
pub fn solve_cycle_with_trees(g: &Graph) -> Result<Coloring> {
    g.check_subcubic()?;
    let n = g.vertex_count();
    if !g.is_connected() {
        return Err(Error::Precondition("graph must be connected".into()));
    }
    if g.edge_count() != n {
        return Err(Error::Precondition("graph is not a cycle with attached trees".into()));
    }
    // peel leaves to expose the unique cycle
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    while let Some(v) = stack.pop() {
        removed[v] = true;
        for &w in g.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    stack.push(w);
                }
            }
        }
    }
    let in_core: Vec<bool> = removed.iter().map(|&r| !r).collect();
    let core: Vec<usize> = (0..n).filter(|&v| in_core[v]).collect();
    if core.len() < 3 {
        return Err(Error::Precondition("graph contains no cycle".into()));
    }
    // walk the cycle from its smallest vertex
    let start = core[0];
    let mut cyc = vec![start];
    let mut prev = start;
    let nexts: Vec<usize> =
        g.neighbors(start).iter().copied().filter(|&w| in_core[w]).collect();
    if nexts.len() != 2 {
        return Err(Error::Precondition("cycle core is not a simple cycle".into()));
    }
    let mut cur = nexts[0].min(nexts[1]);
    while cur != start {
        cyc.push(cur);
        let ns: Vec<usize> =
            g.neighbors(cur).iter().copied().filter(|&w| in_core[w] && w != prev).collect();
        if ns.len() != 1 {
            return Err(Error::Precondition("cycle core is not a simple cycle".into()));
        }
        prev = cur;
        cur = ns[0];
    }
    let k = cyc.len();
    if k != core.len() {
        return Err(Error::Precondition("cycle core is not a simple cycle".into()));
    }
    // attachments
    let mut att: Vec<Option<CycleAttachment>> = Vec::with_capacity(k);
    for &vv in &cyc {
        let off: Vec<usize> =
            g.neighbors(vv).iter().copied().filter(|&w| !in_core[w]).collect();
        match off.first() {
            None => att.push(None),
            Some(&u) => {
                let mut comp = vec![u];
                let mut queue = VecDeque::from([u]);
                let mut seen: BTreeSet<usize> = BTreeSet::from([u, vv]);
                while let Some(a) = queue.pop_front() {
                    for &b in g.neighbors(a) {
                        if seen.insert(b) {
                            comp.push(b);
                            queue.push_back(b);
                        }
                    }
                }
                comp.sort_unstable();
                let kind = if comp.len() == 1 {
                    Some(CoreKind::K2)
                } else if comp.len() == 3
                    && comp.iter().filter(|&&w| g.has_edge(u, w)).count() == 2
                {
                    Some(CoreKind::K13)
                } else {
                    None
                };
                att.push(Some(CycleAttachment { u, comp, kind }));
            }
        }
    }
    let core_kind: Vec<Option<CoreKind>> =
        att.iter().map(|o| o.as_ref().and_then(|a| a.kind)).collect();

    let mut col: Vec<Option<Color>> = vec![None; n];
    let mut walk_start: Option<usize> = None;
    if core_kind.iter().all(|o| o.is_none()) {
        let pat = cycle_pattern(k).into_bytes();
        for (i, &vv) in cyc.iter().enumerate() {
            col[vv] = Some(color_of(pat[i]));
        }
    } else if core_kind.iter().all(|o| o.is_some()) {
        if k % 2 == 0 {
            for (i, &vv) in cyc.iter().enumerate() {
                col[vv] = Some(if i % 2 == 0 { Color::Red } else { Color::Blue });
            }
        } else {
            let j = (0..k)
                .find(|&i| core_kind[i] == core_kind[(i + 1) % k])
                .expect("an odd cycle has an equal adjacent pair");
            let pair = match core_kind[j].unwrap() {
                CoreKind::K2 => Color::Red,
                CoreKind::K13 => Color::Blue,
            };
            col[cyc[j]] = Some(pair);
            col[cyc[(j + 1) % k]] = Some(pair);
            for t in 0..k - 2 {
                let i = (j + 2 + t) % k;
                col[cyc[i]] = Some(if t % 2 == 0 { pair.flip() } else { pair });
            }
        }
    } else {
        let s = (0..k)
            .find(|&i| core_kind[i].is_some() && core_kind[(i + 1) % k].is_none())
            .expect("mixed case has an attached vertex followed by an empty one");
        walk_start = Some(s);
        let mut c = vec![Color::Red; k];
        c[1] = Color::Blue;
        for t in 2..k {
            c[t] = if c[t - 1] == Color::Blue {
                Color::Red
            } else if c[t - 2] == Color::Blue && core_kind[(s + t - 1) % k].is_none() {
                // an empty red vertex needs its support on the cycle
                Color::Red
            } else {
                Color::Blue
            };
        }
        for (t, &cc) in c.iter().enumerate() {
            col[cyc[(s + t) % k]] = Some(cc);
        }
    }

    // complete the K2 / K_{1,3} attachments
    for i in 0..k {
        let Some(a) = &att[i] else { continue };
        let Some(kind) = a.kind else { continue };
        let vv = cyc[i];
        let vc = col[vv].unwrap();
        let red_cycle_nbr = [cyc[(i + 1) % k], cyc[(i + k - 1) % k]]
            .iter()
            .any(|&w| col[w] == Some(Color::Red));
        let leaves: Vec<usize> = a.comp.iter().copied().filter(|&w| w != a.u).collect();
        match (kind, vc) {
            (CoreKind::K2, Color::Red) => {
                col[a.u] = Some(if red_cycle_nbr { Color::Blue } else { Color::Red });
            }
            (CoreKind::K2, Color::Blue) => col[a.u] = Some(Color::Blue),
            (CoreKind::K13, Color::Red) => {
                col[a.u] = Some(Color::Red);
                for &w in &leaves {
                    col[w] = Some(Color::Blue);
                }
            }
            (CoreKind::K13, Color::Blue) => {
                col[a.u] = Some(Color::Red);
                col[leaves[0]] = Some(Color::Red);
                col[leaves[1]] = Some(Color::Blue);
            }
        }
    }

    // Remark-10 reduction for the remaining trees: color the tree neighbor
    // opposite to the cycle vertex and solve the tree on its own
    for i in 0..k {
        let Some(a) = &att[i] else { continue };
        if a.kind.is_some() {
            continue;
        }
        let vv = cyc[i];
        let (t, index) = g.induced(&a.comp);
        let p = Prescription::one(index[a.u], col[vv].unwrap().flip());
        let sol = trees::solve_tree(&t, &p)?.ok_or_else(|| {
            Error::Internal("attachment tree prescription unexpectedly unsatisfiable".into())
        })?;
        for &w in &a.comp {
            col[w] = Some(sol.get(index[w]));
        }
    }

    let mut out = Vec::with_capacity(n);
    for (i, c) in col.iter().enumerate() {
        out.push(c.ok_or_else(|| Error::Internal(format!("vertex {i} left uncolored")))?);
    }
    let mut coloring = Coloring::new(out);
    let report = verify_crumby(g, &coloring)?;
    if report.ok {
        return Ok(coloring);
    }
    // closing the walk can create a red P4 through v_1; the fix recolors
    // v_1 blue and fills its K_{1,3} red
    if let Some(s) = walk_start {
        if let Some(a) = &att[s] {
            if a.kind == Some(CoreKind::K13) {
                let vv = cyc[s];
                coloring.set(vv, Color::Blue);
                for &w in &a.comp {
                    coloring.set(w, Color::Red);
                }
                let report = verify_crumby(g, &coloring)?;
                if report.ok {
                    return Ok(coloring);
                }
            }
        }
    }
    Err(Error::Internal(format!(
        "cycle-with-trees coloring failed verification: {}",
        report.to_text().trim()
    )))
}

/// Extends a crumby coloring of `g` over an attachment tree `t` glued by
/// identifying `leaf` with `at`, per the opposite-color trick. The returned
/// coloring indexes the combined graph the same way as `attach_by_leaf`.
pub fn attach_tree(
    g: &Graph,
    coloring: &Coloring,
    t: &Graph,
    leaf: usize,
    at: usize,
) -> Result<Coloring> {
    let report = verify_crumby(g, coloring)?;
    if !report.ok {
        return Err(Error::Precondition("host coloring is not crumby".into()));
    }
    if at >= g.vertex_count() {
        return Err(Error::VertexOutOfRange { index: at, n: g.vertex_count() });
    }
    t.check_subcubic()?;
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    if leaf >= t.vertex_count() || t.degree(leaf) != 1 {
        return Err(Error::Precondition("attachment vertex must be a leaf of the tree".into()));
    }
    let nt = t.vertex_count();
    if nt == 2 {
        return Err(Error::Precondition("attachment tree K2 needs class-specific handling".into()));
    }
    if nt == 4 && t.max_degree() == 3 {
        return Err(Error::Precondition(
            "attachment tree K_{1,3} needs class-specific handling".into(),
        ));
    }
    let x = t.neighbors(leaf)[0];
    let rest: Vec<usize> = (0..nt).filter(|&w| w != leaf).collect();
    let (tm, index) = t.induced(&rest);
    let p = Prescription::one(index[x], coloring.get(at).flip());
    let sol = trees::solve_tree(&tm, &p)?.ok_or_else(|| {
        Error::Internal("tree prescription unexpectedly unsatisfiable".into())
    })?;
    let mut out: Vec<Color> = coloring.colors().to_vec();
    for &w in &rest {
        out.push(sol.get(index[w]));
    }
    let combined = attach_by_leaf(g, at, t, leaf)?;
    let c = Coloring::new(out);
    let report = verify_crumby(&combined, &c)?;
    if !report.ok {
        return Err(Error::Internal(format!(
            "attached coloring failed verification: {}",
            report.to_text().trim()
        )));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{
        gen_cycle, gen_cycle_with_trees, gen_fan_outerplanar, gen_path, gen_prism,
        gen_random_outerplanar_2conn, gen_random_subcubic_tree, gen_star, Attachment,
    };
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn embed_c5() {
        let e = embed_outerplanar(&gen_cycle(5)).unwrap();
        assert_eq!(e.outer_cycle.len(), 5);
        assert!(e.chords.is_empty());
        assert_eq!(e.inner_faces.len(), 1);
        assert!(e.dual_tree.is_empty());
    }

    #[test]
    fn embed_c4_with_chord() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let e = embed_outerplanar(&g).unwrap();
        assert_eq!(e.chords, vec![(0, 2)]);
        assert_eq!(e.inner_faces.len(), 2);
        assert!(e.inner_faces.iter().all(|f| f.len() == 3));
        assert_eq!(e.dual_tree.len(), 1);
    }

    #[test]
    fn embed_prism_fails_with_k23_minor() {
        match embed_outerplanar(&gen_prism()) {
            Err(Error::NotOuterplanar { minor, branch_sets }) => {
                assert_eq!(minor, "K_{2,3}");
                assert_eq!(branch_sets.len(), 5);
                assert!(branch_sets[2..].iter().all(|s| !s.is_empty()));
            }
            other => panic!("expected NotOuterplanar, got {other:?}"),
        }
    }

    #[test]
    fn embed_k4_fails_with_k4_minor() {
        let g = crate::generators::gen_k4();
        match embed_outerplanar(&g) {
            Err(Error::NotOuterplanar { minor, branch_sets }) => {
                assert_eq!(minor, "K4");
                assert_eq!(branch_sets.len(), 4);
            }
            other => panic!("expected NotOuterplanar, got {other:?}"),
        }
    }

    #[test]
    fn embed_rejects_cut_vertices() {
        assert!(matches!(embed_outerplanar(&gen_path(4)), Err(Error::NotTwoConnected)));
        // two triangles sharing a vertex
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert!(matches!(embed_outerplanar(&g), Err(Error::NotTwoConnected)));
    }

    #[test]
    fn ear_decomposition_shapes() {
        let e = embed_outerplanar(&gen_cycle(6)).unwrap();
        assert!(ear_decomposition(&e, 0).ears.is_empty());

        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let e = embed_outerplanar(&g).unwrap();
        let d = ear_decomposition(&e, 1);
        assert_eq!(d.ears.len(), 1);
        assert_eq!(d.ears[0].internal.len(), 1);

        let fan = gen_fan_outerplanar(&[4, 4, 4, 4, 4], 7).unwrap();
        let e = embed_outerplanar(&fan).unwrap();
        assert_eq!(ear_decomposition(&e, 0).ears.len(), 4);
    }

    #[test]
    fn degree_3_start_vertex_ends_first_ear() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let e = embed_outerplanar(&g).unwrap();
        let d = ear_decomposition(&e, 0);
        assert!(d.ears[0].x == 0 || d.ears[0].y == 0);
    }

    #[test]
    fn cycle_patterns_are_crumby() {
        for k in 3..=100 {
            let pat = cycle_pattern(k);
            assert_eq!(pat.len(), k);
            let c = Coloring::from_rb_string(&pat).unwrap();
            assert!(verify_crumby(&gen_cycle(k), &c).unwrap().ok, "C_{k} pattern {pat}");
            if k != 5 {
                assert!(!pat.as_bytes().windows(2).any(|w| w == b"bb"), "C_{k} pattern {pat}");
            }
        }
    }

    #[test]
    fn solves_cycles_with_any_prescription() {
        for k in 3..=12 {
            let g = gen_cycle(k);
            for v in 0..k {
                for color in [Color::Red, Color::Blue] {
                    let c = solve_outerplanar_2conn(&g, v, color).unwrap();
                    assert_eq!(c.get(v), color);
                }
            }
        }
        for k in [13, 20, 33, 40] {
            let g = gen_cycle(k);
            for v in [0, k / 2] {
                for color in [Color::Red, Color::Blue] {
                    let c = solve_outerplanar_2conn(&g, v, color).unwrap();
                    assert_eq!(c.get(v), color);
                }
            }
        }
    }

    /// Two faces sharing the chord (v, u): cycle v-u-w_1..w_k-v plus the
    /// ear u-z_1..z_l-v.
    fn two_face_graph(k: usize, l: usize) -> Graph {
        let n = 2 + k + l;
        let mut edges = vec![(0usize, 1usize)];
        let mut prev = 1;
        for i in 0..k {
            edges.push((prev, 2 + i));
            prev = 2 + i;
        }
        edges.push((prev, 0));
        prev = 1;
        for i in 0..l {
            edges.push((prev, 2 + k + i));
            prev = 2 + k + i;
        }
        edges.push((prev, 0));
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn degree_3_starts_cover_the_whole_table() {
        for k in 1..=8 {
            for l in 1..=8 {
                let g = two_face_graph(k, l);
                for color in [Color::Red, Color::Blue] {
                    let c = solve_outerplanar_2conn(&g, 0, color)
                        .unwrap_or_else(|e| panic!("k={k} l={l} {color:?}: {e}"));
                    assert_eq!(c.get(0), color);
                }
            }
        }
    }

    #[test]
    fn merged_ear_case_fires() {
        // outer cycle 0..7 with chords (0,6) and (2,5): prescribing blue on
        // vertex 7 makes 0 and 6 a red ear pair whose middle edge (2,5) is
        // a chord, so the two remaining faces are consumed in one step
        let g = Graph::from_edges(
            8,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 0), (0, 6), (2, 5)],
        )
        .unwrap();
        let c = solve_outerplanar_2conn(&g, 7, Color::Blue).unwrap();
        assert_eq!(c.get(7), Color::Blue);
        assert_eq!(c.get(3), Color::Red);
        assert_eq!(c.get(4), Color::Red);
        assert_eq!(c.get(5), Color::Blue);
    }

    #[test]
    fn long_ears_reduce() {
        // triangle 0-1-2 plus an ear with 7 internal vertices over (0, 1)
        let mut edges = vec![(0, 1), (1, 2), (2, 0)];
        let mut prev = 0;
        for z in 3..10 {
            edges.push((prev, z));
            prev = z;
        }
        edges.push((prev, 1));
        let g = Graph::from_edges(10, &edges).unwrap();
        for v in [2, 5] {
            for color in [Color::Red, Color::Blue] {
                let c = solve_outerplanar_2conn(&g, v, color).unwrap();
                assert_eq!(c.get(v), color);
            }
        }
    }

    /// Every ledger row, checked on a synthetic ear whose endpoint statuses
    /// match the row's applicability predicate.
    #[test]
    fn ledger_rows_are_locally_valid() {
        for case in EAR_CASES {
            let ell = case.ell;
            let x = 0usize;
            let y = ell + 1;
            let mut edges = vec![(x, y)];
            for i in 0..=ell {
                edges.push((i, i + 1));
            }
            let wx = ell + 2;
            let mut next = ell + 3;
            edges.push((x, wx));
            let mut fixed: Vec<(usize, Color)> = vec![(wx, Color::Red)];
            if case.x_red_p3 == Some(true) {
                let a = next;
                next += 1;
                edges.push((wx, a));
                fixed.push((a, Color::Red));
            }
            let wy = next;
            next += 1;
            edges.push((y, wy));
            match (case.y_color, case.y_kind) {
                (Color::Blue, Some(BlueKind::PairedK2)) => fixed.push((wy, Color::Blue)),
                (Color::Blue, _) => {
                    let wy2 = next;
                    next += 1;
                    edges.push((wy, wy2));
                    fixed.push((wy, Color::Red));
                    fixed.push((wy2, Color::Red));
                }
                (Color::Red, _) => fixed.push((wy, Color::Blue)),
            }
            let g = Graph::from_edges(next, &edges).unwrap();
            let mut colors = vec![Color::Red; next];
            colors[y] = case.y_color;
            for &(v, c) in &fixed {
                colors[v] = c;
            }
            for (i, &ch) in case.pattern.as_bytes().iter().enumerate() {
                colors[i] = color_of(ch);
            }
            let c = Coloring::new(colors);
            let report = verify_crumby(&g, &c).unwrap();
            assert!(report.ok, "row {case:?}: {}", report.to_text().trim());
        }
    }

    #[test]
    fn random_outerplanar_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x07e5);
        for seed in 0..300u64 {
            let n = 4 + (seed as usize * 7) % 57;
            let g = gen_random_outerplanar_2conn(n, seed).unwrap();
            let v = rng.gen_range(0..g.vertex_count());
            let color = if rng.gen_bool(0.5) { Color::Red } else { Color::Blue };
            let c = solve_outerplanar_2conn(&g, v, color)
                .unwrap_or_else(|e| panic!("seed {seed}: {e}"));
            assert_eq!(c.get(v), color);
        }
    }

    #[test]
    fn oracle_agrees_on_small_instances() {
        for seed in 0..30u64 {
            let g = gen_random_outerplanar_2conn(6 + (seed as usize) % 8, seed).unwrap();
            let v = (seed as usize) % g.vertex_count();
            for color in [Color::Red, Color::Blue] {
                let c = solve_outerplanar_2conn(&g, v, color).unwrap();
                assert!(verify_crumby(&g, &c).unwrap().ok);
                let o = oracle::solve_exact(&g, &Prescription::one(v, color), 100_000_000)
                    .unwrap();
                assert!(o.is_sat(), "oracle disagrees on seed {seed}");
            }
        }
    }

    #[test]
    fn cycle_with_trees_examples() {
        // C6 with a pendant vertex everywhere
        let atts: BTreeMap<usize, Attachment> =
            (0..6).map(|i| (i, Attachment::K2)).collect();
        let g = gen_cycle_with_trees(6, &atts).unwrap();
        let c = solve_cycle_with_trees(&g).unwrap();
        assert!(verify_crumby(&g, &c).unwrap().ok);

        let g = gen_cycle(5);
        let c = solve_cycle_with_trees(&g).unwrap();
        assert!(verify_crumby(&g, &c).unwrap().ok);

        let atts = BTreeMap::from([
            (0, Attachment::K13),
            (3, Attachment::K13),
            (5, Attachment::K2),
        ]);
        let g = gen_cycle_with_trees(7, &atts).unwrap();
        let c = solve_cycle_with_trees(&g).unwrap();
        assert!(verify_crumby(&g, &c).unwrap().ok);
    }

    #[test]
    fn cycle_with_trees_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xc1c1e);
        for case in 0..200u64 {
            let k = rng.gen_range(3..=12);
            let mut atts = BTreeMap::new();
            for i in 0..k {
                match rng.gen_range(0..5) {
                    0 => {
                        atts.insert(i, Attachment::K2);
                    }
                    1 => {
                        atts.insert(i, Attachment::K13);
                    }
                    2 => {
                        let t = gen_random_subcubic_tree(rng.gen_range(4..9), case * 31 + i as u64);
                        let leaf = (0..t.vertex_count()).find(|&v| t.degree(v) == 1).unwrap();
                        atts.insert(i, Attachment::Tree { tree: t, leaf });
                    }
                    _ => {}
                }
            }
            let g = gen_cycle_with_trees(k, &atts).unwrap();
            let c = solve_cycle_with_trees(&g)
                .unwrap_or_else(|e| panic!("case {case} (k={k}): {e}"));
            assert!(verify_crumby(&g, &c).unwrap().ok);
        }
    }

    #[test]
    fn attach_tree_examples() {
        let g = gen_cycle(6);
        let host = Coloring::from_rb_string("rrbrrb").unwrap();
        // P3 by its leaf at a red vertex
        let c = attach_tree(&g, &host, &gen_path(3), 0, 0).unwrap();
        assert_eq!(c.len(), 8);
        // P4 at a blue vertex
        let c = attach_tree(&g, &host, &gen_path(4), 0, 2).unwrap();
        assert_eq!(c.len(), 9);
        // K2 and K_{1,3} are routed back to the caller
        assert!(matches!(
            attach_tree(&g, &host, &gen_path(2), 0, 0),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            attach_tree(&g, &host, &gen_star(3), 1, 0),
            Err(Error::Precondition(_))
        ));
    }
}
