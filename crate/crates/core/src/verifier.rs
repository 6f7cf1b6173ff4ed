//! The crumby predicate and its violation reports.
//!
//! A coloring is crumby when every blue vertex has at most one blue
//! neighbor, every red vertex has at least one red neighbor, and the
//! red-induced subgraph contains no path with 3 edges (a P4 subgraph, not
//! merely an induced one).

use crate::error::{Error, Result};
use crate::graph::{Color, Coloring, Graph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Blue vertex with two or more blue neighbors.
    BlueDegreeExceeded { vertex: usize, blue_neighbors: Vec<usize> },
    /// Red vertex without a red neighbor.
    RedIsolated { vertex: usize },
    /// Four red vertices forming a 3-edge path.
    RedP4 { path: [usize; 4] },
    /// Component whose shape is outside the star/triangle/singleton/edge
    /// taxonomy (only reported by the shape-based cross-check).
    BadComponentShape { component: Vec<usize> },
}

impl Violation {
    pub fn witness(&self) -> Vec<usize> {
        match self {
            Violation::BlueDegreeExceeded { vertex, blue_neighbors } => {
                let mut w = vec![*vertex];
                w.extend(blue_neighbors);
                w
            }
            Violation::RedIsolated { vertex } => vec![*vertex],
            Violation::RedP4 { path } => path.to_vec(),
            Violation::BadComponentShape { component } => component.clone(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Violation::BlueDegreeExceeded { .. } => "BlueDegreeExceeded",
            Violation::RedIsolated { .. } => "RedIsolated",
            Violation::RedP4 { .. } => "RedP4",
            Violation::BadComponentShape { .. } => "BadComponentShape",
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifierReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl VerifierReport {
    /// One line per violation: "kind v1 v2 ...".
    pub fn to_text(&self) -> String {
        if self.ok {
            return "OK\n".to_string();
        }
        let mut out = String::new();
        for v in &self.violations {
            out.push_str(v.kind());
            for w in v.witness() {
                out.push_str(&format!(" {w}"));
            }
            out.push('\n');
        }
        out
    }
}

pub fn verify_crumby(g: &Graph, c: &Coloring) -> Result<VerifierReport> {
    if c.len() != g.vertex_count() {
        return Err(Error::SizeMismatch { coloring: c.len(), graph: g.vertex_count() });
    }
    let mut violations = Vec::new();
    for v in 0..g.vertex_count() {
        match c.get(v) {
            Color::Blue => {
                let blue_neighbors: Vec<usize> = g
                    .neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&w| c.get(w) == Color::Blue)
                    .collect();
                if blue_neighbors.len() >= 2 {
                    violations.push(Violation::BlueDegreeExceeded { vertex: v, blue_neighbors });
                }
            }
            Color::Red => {
                if !g.neighbors(v).iter().any(|&w| c.get(w) == Color::Red) {
                    violations.push(Violation::RedIsolated { vertex: v });
                }
            }
        }
    }
    violations.extend(red_p4_violations(g, c));
    Ok(VerifierReport { ok: violations.is_empty(), violations })
}

/// All red 3-edge paths, each reported once (lexicographically smaller of
/// the two traversal directions).
fn red_p4_violations(g: &Graph, c: &Coloring) -> Vec<Violation> {
    let mut out = Vec::new();
    for a in 0..g.vertex_count() {
        if c.get(a) != Color::Red {
            continue;
        }
        for &b in g.neighbors(a) {
            if c.get(b) != Color::Red {
                continue;
            }
            for &x in g.neighbors(b) {
                if x == a || c.get(x) != Color::Red {
                    continue;
                }
                for &y in g.neighbors(x) {
                    if y == a || y == b || c.get(y) != Color::Red {
                        continue;
                    }
                    if [a, b, x, y] < [y, x, b, a] {
                        out.push(Violation::RedP4 { path: [a, b, x, y] });
                    }
                }
            }
        }
    }
    out
}

/// Shape of one monochromatic component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentShape {
    /// Red star K_{1,s}, s in 1..=3 (a red K2 is RedStar(1)).
    RedStar(usize),
    RedTriangle,
    BlueSingleton,
    BlueEdge,
    Other,
}

#[derive(Debug, Clone)]
pub struct ShapedComponent {
    pub vertices: Vec<usize>,
    pub color: Color,
    pub shape: ComponentShape,
}

/// Classifies every monochromatic component. A coloring is crumby exactly
/// when no component is `Other` — this is an independent route to the same
/// predicate as `verify_crumby` and is cross-checked against it in tests.
pub fn component_shapes(g: &Graph, c: &Coloring) -> Result<Vec<ShapedComponent>> {
    if c.len() != g.vertex_count() {
        return Err(Error::SizeMismatch { coloring: c.len(), graph: g.vertex_count() });
    }
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let color = c.get(s);
        let mut comp = vec![s];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in g.neighbors(u) {
                if !seen[v] && c.get(v) == color {
                    seen[v] = true;
                    comp.push(v);
                    stack.push(v);
                }
            }
        }
        comp.sort_unstable();
        let shape = classify_component(g, c, &comp, color);
        out.push(ShapedComponent { vertices: comp, color, shape });
    }
    Ok(out)
}

fn classify_component(g: &Graph, c: &Coloring, comp: &[usize], color: Color) -> ComponentShape {
    let mono_degree = |v: usize| {
        g.neighbors(v)
            .iter()
            .filter(|&&w| c.get(w) == color && comp.contains(&w))
            .count()
    };
    match color {
        Color::Blue => match comp.len() {
            1 => ComponentShape::BlueSingleton,
            2 => ComponentShape::BlueEdge,
            _ => ComponentShape::Other,
        },
        Color::Red => {
            let degs: Vec<usize> = comp.iter().map(|&v| mono_degree(v)).collect();
            let internal_edges: usize = degs.iter().sum::<usize>() / 2;
            if comp.len() == 3 && internal_edges == 3 {
                return ComponentShape::RedTriangle;
            }
            // star K_{1,s}: one center of degree s, s leaves of degree 1
            let s = comp.len() - 1;
            if (1..=3).contains(&s)
                && internal_edges == s
                && degs.iter().filter(|&&d| d == s).count() >= 1
                && degs.iter().all(|&d| d == 1 || d == s)
            {
                return ComponentShape::RedStar(s);
            }
            ComponentShape::Other
        }
    }
}

/// Shape-based acceptance: ok iff every component is a red star (1..=3
/// leaves), a red triangle, a blue singleton or a blue edge.
pub fn shapes_accept(g: &Graph, c: &Coloring) -> Result<bool> {
    Ok(component_shapes(g, c)?
        .iter()
        .all(|sc| sc.shape != ComponentShape::Other))
}

/// Endpoint discipline of a path-coloring pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternPurpose {
    /// Both path endpoints red, each with a blue path-neighbor.
    EndpointsSingletonRed,
    /// Both path endpoints in a red K2 (red neighbor, next vertex blue or absent).
    EndpointsInRedK2,
    /// One endpoint singleton red, the other in a red K2 (either orientation).
    MixedSingletonAndK2,
}

/// End status of a red endpoint in a standalone-path pattern.
fn endpoint_in_red_k2(colors: &[Color], end: usize) -> bool {
    let (n1, n2) = if end == 0 { (1, 2) } else { (end - 1, end.wrapping_sub(2)) };
    colors.get(n1) == Some(&Color::Red)
        && colors.get(n2).map_or(true, |&c| c == Color::Blue)
}

fn endpoint_singleton_red(colors: &[Color], end: usize) -> bool {
    let n1 = if end == 0 { 1 } else { end - 1 };
    colors.get(n1) == Some(&Color::Blue)
}

/// Checks a path pattern for use on a subdivided edge: blue degree and red
/// P4 conditions hold along the standalone path, every interior red vertex
/// has a red neighbor, both endpoints are red, and the endpoint structure
/// matches the stated purpose.
pub fn validate_pattern(pattern: &str, purpose: PatternPurpose) -> bool {
    let Ok(col) = Coloring::from_rb_string(&pattern.to_lowercase()) else {
        return false;
    };
    let k = col.len();
    if k < 3 {
        return false;
    }
    let colors = col.colors();
    if colors[0] != Color::Red || colors[k - 1] != Color::Red {
        return false;
    }
    // blue degree, interior red support, red P4 along the path
    let mut red_run = 0usize;
    let mut blue_run = 0usize;
    for i in 0..k {
        match colors[i] {
            Color::Red => {
                red_run += 1;
                blue_run = 0;
                if red_run >= 4 {
                    return false;
                }
                let has_red_neighbor = (i > 0 && colors[i - 1] == Color::Red)
                    || (i + 1 < k && colors[i + 1] == Color::Red);
                if i != 0 && i != k - 1 && !has_red_neighbor {
                    return false;
                }
            }
            Color::Blue => {
                blue_run += 1;
                red_run = 0;
                if blue_run >= 3 {
                    return false;
                }
            }
        }
    }
    let first_k2 = endpoint_in_red_k2(colors, 0);
    let last_k2 = endpoint_in_red_k2(colors, k - 1);
    let first_single = endpoint_singleton_red(colors, 0);
    let last_single = endpoint_singleton_red(colors, k - 1);
    match purpose {
        PatternPurpose::EndpointsSingletonRed => first_single && last_single,
        PatternPurpose::EndpointsInRedK2 => first_k2 && last_k2,
        PatternPurpose::MixedSingletonAndK2 => {
            (first_single && last_k2) || (first_k2 && last_single)
        }
    }
}
