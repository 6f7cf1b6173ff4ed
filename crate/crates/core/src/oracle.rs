//! Exhaustive backtracking search for crumby colorings. This is the ground
//! truth every constructive solver is tested against.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Color, Coloring, Graph};

/// Partial prescription of vertex colors that any solution must extend.
#[derive(Debug, Clone, Default)]
pub struct Prescription {
    pub fixed: BTreeMap<usize, Color>,
}

impl Prescription {
    pub fn empty() -> Self {
        Prescription::default()
    }

    pub fn one(v: usize, c: Color) -> Self {
        Prescription { fixed: BTreeMap::from([(v, c)]) }
    }

    pub fn check(&self, g: &Graph) -> Result<()> {
        for &v in self.fixed.keys() {
            if v >= g.vertex_count() {
                return Err(Error::VertexOutOfRange { index: v, n: g.vertex_count() });
            }
        }
        Ok(())
    }
}

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Sat(Coloring),
    Unsat,
    BudgetExceeded { nodes: u64 },
}

impl SolveOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveOutcome::Sat(_))
    }

    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            SolveOutcome::Sat(c) => Some(c),
            _ => None,
        }
    }
}

struct Searcher<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    colors: Vec<Option<Color>>,
    nodes: u64,
    budget: u64,
}

impl<'a> Searcher<'a> {
    fn new(g: &'a Graph, budget: u64) -> Self {
        let order = g.bfs_order();
         
        Searcher { g, order, colors: vec![None; g.vertex_count()], nodes: 0, budget }
    }

    /// Sound local checks after tentatively coloring `v`.
    fn consistent(&self, v: usize) -> bool {
        let c = self.colors[v].unwrap();
        match c {
            Color::Blue => {
                // v itself, and each already-blue neighbor, must keep blue
                // degree <= 1
                let blue_deg = |u: usize| {
                    self.g
                        .neighbors(u)
                        .iter()
                        .filter(|&&w| self.colors[w] == Some(Color::Blue))
                        .count()
                };
                if blue_deg(v) >= 2 {
                    return false;
                }
                for &w in self.g.neighbors(v) {
                    if self.colors[w] == Some(Color::Blue) && blue_deg(w) >= 2 {
                        return false;
                    }
                }
            }
            Color::Red => {
                // no red P4 among decided vertices through v
                if self.red_p4_through(v) {
                    return false;
                }
            }
        }
        // red vertices whose whole neighborhood is now decided must have a
        // red neighbor; only v and its neighbors can newly complete
        for u in std::iter::once(v).chain(self.g.neighbors(v).iter().copied()) {
            if self.colors[u] == Some(Color::Red)
                && self.g.neighbors(u).iter().all(|&w| self.colors[w].is_some())
                && !self
                    .g
                    .neighbors(u)
                    .iter()
                    .any(|&w| self.colors[w] == Some(Color::Red))
            {
                return false;
            }
        }
        true
    }

    fn red_p4_through(&self, v: usize) -> bool {
        // any decided red path on 4 vertices containing v; v can sit at
        // either an end or an interior position, so search paths from every
        // red neighbor chain through v
        let red = |u: usize| self.colors[u] == Some(Color::Red);
        let red_neighbors = |u: usize| {
            self.g.neighbors(u).iter().copied().filter(|&w| red(w)).collect::<Vec<_>>()
        };
        // center edge (v, w): extend one step each side
        for w in red_neighbors(v) {
            for a in red_neighbors(v) {
                if a == w {
                    continue;
                }
                for b in red_neighbors(w) {
                    if b != v && b != a {
                        return true; // a - v - w - b
                    }
                }
            }
        }
        // v at the end: v - w - x - y
        for w in red_neighbors(v) {
            for x in red_neighbors(w) {
                if x == v {
                    continue;
                }
                for y in red_neighbors(x) {
                    if y != v && y != w {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Returns false when the budget ran out.
    fn search(
        &mut self,
        pos: usize,
        p: &Prescription,
        emit: &mut dyn FnMut(&Coloring) -> bool,
        stop: &mut bool,
    ) -> bool {
        if *stop {
            return true;
        }
        if pos == self.order.len() {
            let coloring =
                Coloring::new(self.colors.iter().map(|c| c.unwrap()).collect());
            debug_assert!(crate::verifier::verify_crumby(self.g, &coloring).unwrap().ok);
            if !emit(&coloring) {
                *stop = true;
            }
            return true;
        }
        let v = self.order[pos];
        let choices: &[Color] = match p.fixed.get(&v) {
            Some(&c) => match c {
                Color::Red => &[Color::Red],
                Color::Blue => &[Color::Blue],
            },
            None => &[Color::Red, Color::Blue],
        };
        for &c in choices {
            self.nodes += 1;
            if self.nodes > self.budget {
                return false;
            }
            self.colors[v] = Some(c);
            if self.consistent(v) {
                if !self.search(pos + 1, p, emit, stop) {
                    self.colors[v] = None;
                    return false;
                }
                if *stop {
                    self.colors[v] = None;
                    return true;
                }
            }
            self.colors[v] = None;
        }
        true
    }
}

/// First crumby coloring extending `p` in the fixed branching order
/// (BFS vertex order, red tried before blue), or Unsat, or BudgetExceeded.
pub fn solve_exact(g: &Graph, p: &Prescription, budget: u64) -> Result<SolveOutcome> {
    solve_exact_counted(g, p, budget).map(|(o, _)| o)
}

/// Like `solve_exact`, but also reports how many search nodes were explored.
pub fn solve_exact_counted(
    g: &Graph,
    p: &Prescription,
    budget: u64,
) -> Result<(SolveOutcome, u64)> {
    p.check(g)?;
    let mut s = Searcher::new(g, budget);
    let mut found: Option<Coloring> = None;
    let mut stop = false;
    let completed = s.search(
        0,
        p,
        &mut |c| {
            found = Some(c.clone());
            false
        },
        &mut stop,
    );
    let outcome = match found {
        Some(c) => SolveOutcome::Sat(c),
        None if completed => SolveOutcome::Unsat,
        None => SolveOutcome::BudgetExceeded { nodes: s.nodes },
    };
    Ok((outcome, s.nodes))
}

/// Exact number of (labeled) crumby colorings.
pub fn count_colorings(g: &Graph) -> u64 {
    let mut s = Searcher::new(g, u64::MAX);
    let mut count = 0u64;
    let mut stop = false;
    s.search(0, &Prescription::empty(), &mut |_| {
        count += 1;
        true
    }, &mut stop);
    count
}

/// All crumby colorings extending `p`, in branching order.
pub fn solve_exact_all(g: &Graph, p: &Prescription) -> Result<Vec<Coloring>> {
    p.check(g)?;
    let mut s = Searcher::new(g, u64::MAX);
    let mut all = Vec::new();
    let mut stop = false;
    s.search(0, p, &mut |c| {
        all.push(c.clone());
        true
    }, &mut stop);
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_cycle, gen_k4, gen_path, gen_prism};
    use crate::verifier::verify_crumby;

    /// Pruning-free reference: try all 2^n colorings through the verifier.
    pub fn brute_force_all(g: &Graph) -> Vec<Coloring> {
        let n = g.vertex_count();
        assert!(n <= 20);
        let mut out = Vec::new();
        for mask in 0u32..1 << n {
            let colors: Vec<Color> = (0..n)
                .map(|v| if mask >> v & 1 == 1 { Color::Blue } else { Color::Red })
                .collect();
            let c = Coloring::new(colors);
            if verify_crumby(g, &c).unwrap().ok {
                out.push(c);
            }
        }
        out
    }

    #[test]
    fn prism_is_unsat() {
        let out = solve_exact(&gen_prism(), &Prescription::empty(), DEFAULT_BUDGET).unwrap();
        assert_eq!(out, SolveOutcome::Unsat);
        assert_eq!(count_colorings(&gen_prism()), 0);
    }

    #[test]
    fn p3_with_blue_middle_is_unsat() {
        let out = solve_exact(
            &gen_path(3),
            &Prescription::one(1, Color::Blue),
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(out, SolveOutcome::Unsat);
    }

    #[test]
    fn c5_is_sat() {
        let out = solve_exact(&gen_cycle(5), &Prescription::empty(), DEFAULT_BUDGET).unwrap();
        let c = out.coloring().expect("C5 has a crumby coloring");
        assert!(verify_crumby(&gen_cycle(5), c).unwrap().ok);
    }

    #[test]
    fn single_edge_colorings() {
        // rr is a red K2; bb is a blue edge with no red vertex at all, which
        // the zero-red vacuousness rule accepts; rb and br have an isolated
        // red vertex
        let k2 = gen_path(2);
        let all = solve_exact_all(&k2, &Prescription::empty()).unwrap();
        let strings: Vec<String> = all.iter().map(|c| c.to_rb_string()).collect();
        assert_eq!(strings, vec!["rr".to_string(), "bb".to_string()]);
    }

    #[test]
    fn single_vertex_must_be_blue() {
        let g = Graph::empty(1);
        let all = solve_exact_all(&g, &Prescription::empty()).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].to_rb_string(), "b");
    }

    #[test]
    fn c3_solutions_are_all_red_or_one_blue() {
        let all = solve_exact_all(&gen_cycle(3), &Prescription::empty()).unwrap();
        let mut strings: Vec<String> = all.iter().map(|c| c.to_rb_string()).collect();
        strings.sort();
        let mut expected: Vec<String> =
            brute_force_all(&gen_cycle(3)).iter().map(|c| c.to_rb_string()).collect();
        expected.sort();
        assert_eq!(strings, expected);
        assert!(strings.contains(&"rrr".to_string()));
        assert_eq!(strings.iter().filter(|s| s.contains('b')).count(), 3);
    }

    #[test]
    fn k4_is_sat_with_red_triangle() {
        let all = solve_exact_all(&gen_k4(), &Prescription::empty()).unwrap();
        assert!(!all.is_empty());
        // a red triangle plus one blue vertex is among the solutions
        assert!(all
            .iter()
            .any(|c| c.colors().iter().filter(|&&x| x == Color::Blue).count() == 1));
    }

    #[test]
    fn oracle_matches_brute_force_on_small_graphs() {
        use crate::generators::*;
        let graphs = vec![
            gen_path(4),
            gen_path(7),
            gen_cycle(4),
            gen_cycle(7),
            gen_prism(),
            gen_k4(),
            gen_star(3),
            gen_random_subcubic_tree(9, 3),
            gen_random_cubic(8, 5).unwrap(),
        ];
        for g in graphs {
            let mut a: Vec<String> = solve_exact_all(&g, &Prescription::empty())
                .unwrap()
                .iter()
                .map(|c| c.to_rb_string())
                .collect();
            a.sort();
            let mut b: Vec<String> =
                brute_force_all(&g).iter().map(|c| c.to_rb_string()).collect();
            b.sort();
            assert_eq!(a, b, "mismatch on graph with {} vertices", g.vertex_count());
        }
    }

    #[test]
    fn prescription_is_respected() {
        let g = gen_cycle(6);
        for v in 0..6 {
            for c in [Color::Red, Color::Blue] {
                let out = solve_exact(&g, &Prescription::one(v, c), DEFAULT_BUDGET).unwrap();
                if let SolveOutcome::Sat(col) = out {
                    assert_eq!(col.get(v), c);
                }
            }
        }
    }

    #[test]
    fn determinism_of_first_solution() {
        let g = gen_cycle(8);
        let a = solve_exact(&g, &Prescription::empty(), DEFAULT_BUDGET).unwrap();
        let b = solve_exact(&g, &Prescription::empty(), DEFAULT_BUDGET).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn budget_exceeded_is_reported() {
        let g = crate::generators::gen_random_cubic(16, 1).unwrap();
        let out = solve_exact(&g, &Prescription::empty(), 3).unwrap();
        assert!(matches!(out, SolveOutcome::BudgetExceeded { nodes } if nodes > 3));
    }
}
