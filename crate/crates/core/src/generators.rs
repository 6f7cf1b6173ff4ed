//! Deterministic instance generators for the graph classes handled by the
//! solvers. Every randomized generator takes an explicit seed.

use std::collections::BTreeMap;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::subdivision::{subdivide, SubdividedGraph};

pub fn gen_path(n: usize) -> Graph {
    let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn gen_cycle(k: usize) -> Graph {
    assert!(k >= 3, "cycle needs at least 3 vertices");
    let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    Graph::from_edges(k, &edges).unwrap()
}

pub fn gen_k4() -> Graph {
    Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
}

/// Two triangles {0,1,2} and {3,4,5} joined by the matching i - i+3.
pub fn gen_prism() -> Graph {
    Graph::from_edges(
        6,
        &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
    )
    .unwrap()
}

pub fn gen_star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    Graph::from_edges(leaves + 1, &edges).unwrap()
}

/// Subdivision of K4 with the given internal-vertex counts on the edges
/// (AB, AC, AD, BC, BD, CD), where A,B,C,D are vertices 0..4.
pub fn gen_k4_subdivided(counts: &[usize; 6]) -> SubdividedGraph {
    let keys = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let map: BTreeMap<_, _> = keys.iter().copied().zip(counts.iter().copied()).collect();
    subdivide(&gen_k4(), &map).expect("K4 edges are valid keys")
}

/// Random subcubic tree grown by attaching each new vertex to a uniformly
/// random vertex of degree < 3.
pub fn gen_random_subcubic_tree(n: usize, seed: u64) -> Graph {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for v in 1..n {
        let candidates: Vec<usize> = (0..v).filter(|&u| g.degree(u) < 3).collect();
        let u = *candidates.choose(&mut rng).expect("a tree vertex always has room");
        g.add_edge(u, v).unwrap();
    }
    g
}

/// Random connected subcubic graph: a random subcubic tree plus extra edges
/// between non-adjacent vertices that still have degree room.
pub fn gen_random_subcubic_connected(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = gen_random_subcubic_tree(n, seed.wrapping_add(0x5eed));
    let extra = if n >= 3 { rng.gen_range(0..=n / 2) } else { 0 };
    for _ in 0..extra {
        let candidates: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |w| (u, w)))
            .filter(|&(u, w)| g.degree(u) < 3 && g.degree(w) < 3 && !g.has_edge(u, w))
            .collect();
        let Some(&(u, w)) = candidates.choose(&mut rng) else { break };
        g.add_edge(u, w).unwrap();
    }
    g
}

/// Random cubic graph via the configuration model with rejection.
pub fn gen_random_cubic(n: usize, seed: u64) -> Result<Graph> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::Precondition(format!(
            "cubic graphs need even n >= 4, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: loop {
        let mut stubs: Vec<usize> = (0..n).flat_map(|v| [v, v, v]).collect();
        stubs.shuffle(&mut rng);
        let mut g = Graph::empty(n);
        for pair in stubs.chunks(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || g.has_edge(u, v) {
                continue 'attempt;
            }
            g.add_edge(u, v).unwrap();
        }
        return Ok(g);
    }
}

/// 2-connected subcubic outerplanar graph built ear by ear: start from a
/// cycle of size `face_sizes[0]`, then for each further face size f add an
/// ear with f - 2 internal vertices over a random outer-cycle edge whose
/// endpoints both still have degree 2.
pub fn gen_fan_outerplanar(face_sizes: &[usize], seed: u64) -> Result<Graph> {
    if face_sizes.is_empty() || face_sizes.iter().any(|&f| f < 3) {
        return Err(Error::Precondition("face sizes must all be >= 3".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k0 = face_sizes[0];
    let mut g = gen_cycle(k0);
    let mut outer: Vec<usize> = (0..k0).collect();
    for &f in &face_sizes[1..] {
        let ell = f - 2;
        let spots: Vec<usize> = (0..outer.len())
            .filter(|&i| {
                let x = outer[i];
                let y = outer[(i + 1) % outer.len()];
                g.degree(x) == 2 && g.degree(y) == 2
            })
            .collect();
        let Some(&i) = spots.choose(&mut rng) else {
            return Err(Error::Precondition(
                "no outer edge with two degree-2 endpoints left".into(),
            ));
        };
        let x = outer[i];
        let y = outer[(i + 1) % outer.len()];
        let start = g.vertex_count();
        let mut bigger = Graph::empty(start + ell);
        for (u, v) in g.edges() {
            bigger.add_edge(u, v).unwrap();
        }
        let mut prev = x;
        for z in start..start + ell {
            bigger.add_edge(prev, z).unwrap();
            prev = z;
        }
        bigger.add_edge(prev, y).unwrap();
        g = bigger;
        // the old edge (x, y) becomes a chord; reroute the outer cycle
        let insert_at = i + 1;
        let new_path: Vec<usize> = (start..start + ell).collect();
        outer.splice(insert_at..insert_at, new_path);
    }
    Ok(g)
}

/// Random 2-connected subcubic outerplanar graph on roughly `n` vertices.
pub fn gen_random_outerplanar_2conn(n: usize, seed: u64) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Precondition("need n >= 3".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut faces = vec![rng.gen_range(3..=(n.min(8)))];
    let mut total = faces[0];
    while total < n {
        let f = rng.gen_range(3..=8usize);
        faces.push(f);
        total += f - 2;
    }
    // ear placement can run out of room on pathological rolls; retry with
    // fresh face sizes
    for retry in 0..100 {
        match gen_fan_outerplanar(&faces, seed.wrapping_add(retry)) {
            Ok(g) => return Ok(g),
            Err(_) => {
                faces = vec![rng.gen_range(4..=(n.min(8)).max(4))];
                let mut t = faces[0];
                while t < n {
                    let f = rng.gen_range(4..=8usize);
                    faces.push(f);
                    t += f - 2;
                }
            }
        }
    }
    Err(Error::Internal("could not place ears after 100 retries".into()))
}

/// Tree attachment for `gen_cycle_with_trees`.
#[derive(Debug, Clone)]
pub enum Attachment {
    /// A pendant vertex (the tree K2, one leaf identified with the cycle vertex).
    K2,
    /// K_{1,3} attached by one of its leaves: the cycle vertex gains a
    /// neighbor of degree 3 carrying two further leaves.
    K13,
    /// Arbitrary subcubic tree attached by the given leaf.
    Tree { tree: Graph, leaf: usize },
}

/// Cycle C_k with trees attached at the given positions. Each attachment
/// identifies one leaf of the tree with its cycle vertex, so a tree on t
/// vertices adds t - 1 new vertices.
pub fn gen_cycle_with_trees(k: usize, attachments: &BTreeMap<usize, Attachment>) -> Result<Graph> {
    if k < 3 {
        return Err(Error::Precondition("cycle needs k >= 3".into()));
    }
    if let Some(&p) = attachments.keys().find(|&&p| p >= k) {
        return Err(Error::VertexOutOfRange { index: p, n: k });
    }
    let mut g = gen_cycle(k);
    for (&pos, att) in attachments {
        let (tree, leaf) = match att {
            Attachment::K2 => (gen_path(2), 0),
            Attachment::K13 => (gen_star(3), 1),
            Attachment::Tree { tree, leaf } => {
                if tree.degree(*leaf) != 1 {
                    return Err(Error::Precondition(format!(
                        "attachment vertex {leaf} is not a leaf"
                    )));
                }
                (tree.clone(), *leaf)
            }
        };
        tree.check_subcubic()?;
        g = attach_by_leaf(&g, pos, &tree, leaf)?;
    }
    g.check_subcubic()?;
    Ok(g)
}

/// Identifies `leaf` of `tree` with vertex `at` of `g`. Tree vertices other
/// than the leaf are appended after the existing vertices in index order.
pub fn attach_by_leaf(g: &Graph, at: usize, tree: &Graph, leaf: usize) -> Result<Graph> {
    let n = g.vertex_count();
    let t = tree.vertex_count();
    let mut out = Graph::empty(n + t - 1);
    for (u, v) in g.edges() {
        out.add_edge(u, v)?;
    }
    // map: leaf -> at, others -> appended slots in index order
    let mut map = vec![0usize; t];
    let mut next = n;
    for v in 0..t {
        if v == leaf {
            map[v] = at;
        } else {
            map[v] = next;
            next += 1;
        }
    }
    for (u, v) in tree.edges() {
        out.add_edge(map[u], map[v])?;
    }
    Ok(out)
}

/// Enumerates every isomorphism class of subcubic trees on `n` vertices,
/// exactly once, by leaf growth with canonical-form rejection.
pub fn enumerate_trees(n: usize) -> Vec<Graph> {
    assert!(n >= 1);
    let mut level: Vec<Graph> = vec![Graph::empty(1)];
    for _ in 1..n {
        let mut seen = std::collections::HashSet::new();
        let mut next_level = Vec::new();
        for t in &level {
            let m = t.vertex_count();
            for u in 0..m {
                if t.degree(u) >= 3 {
                    continue;
                }
                let mut bigger = Graph::empty(m + 1);
                for (a, b) in t.edges() {
                    bigger.add_edge(a, b).unwrap();
                }
                bigger.add_edge(u, m).unwrap();
                if seen.insert(tree_canonical_form(&bigger)) {
                    next_level.push(bigger);
                }
            }
        }
        level = next_level;
    }
    level
}

/// AHU canonical encoding of a free tree, rooted at its centroid (or the
/// smaller-encoded of the two centroids).
pub fn tree_canonical_form(t: &Graph) -> String {
    let centroids = tree_centroids(t);
    centroids
        .iter()
        .map(|&c| ahu_encode(t, c, usize::MAX))
        .min()
        .expect("a tree has at least one centroid")
}

fn tree_centroids(t: &Graph) -> Vec<usize> {
    let n = t.vertex_count();
    if n == 1 {
        return vec![0];
    }
    // subtree sizes by iterative post-order from vertex 0
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    let mut stack = vec![0usize];
    let mut visited = vec![false; n];
    visited[0] = true;
    while let Some(u) = stack.pop() {
        order.push(u);
        for &v in t.neighbors(u) {
            if !visited[v] {
                visited[v] = true;
                parent[v] = u;
                stack.push(v);
            }
        }
    }
    let mut size = vec![1usize; n];
    for &u in order.iter().rev() {
        if parent[u] != usize::MAX {
            size[parent[u]] += size[u];
        }
    }
    let mut best = n;
    let mut centroids = Vec::new();
    for v in 0..n {
        let mut heaviest = n - size[v];
        for &w in t.neighbors(v) {
            if parent[w] == v {
                heaviest = heaviest.max(size[w]);
            }
        }
        use std::cmp::Ordering::*;
        match heaviest.cmp(&best) {
            Less => {
                best = heaviest;
                centroids = vec![v];
            }
            Equal => centroids.push(v),
            Greater => {}
        }
    }
    centroids
}

fn ahu_encode(t: &Graph, v: usize, parent: usize) -> String {
    let mut children: Vec<String> = t
        .neighbors(v)
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| ahu_encode(t, w, v))
        .collect();
    children.sort();
    format!("({})", children.concat())
}
