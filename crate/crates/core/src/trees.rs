//! Crumby coloring of subcubic trees by a bottom-up dynamic program.
//!
//! In a crumby-colored tree every red component is a star K_{1,s} with
//! s in 1..=3 (trees have no triangles, and a connected graph without a
//! 3-edge path is a star or a triangle). The DP tracks, per vertex, which
//! boundary role the vertex can play toward its parent; the state machine
//! below encodes exactly the star decomposition. Counting-mode agreement
//! with the exhaustive oracle (see tests) is the guard that the machine is
//! complete, not merely sound.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Color, Coloring, Graph};
use crate::oracle::Prescription;

/// Boundary role of a vertex toward its (possible) parent.
///
/// The state is a function of the subtree coloring: a vertex's color, its
/// blue children, and the shape of its red children determine it uniquely.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TreeState {
    /// Blue, no blue child; parent may be blue or red.
    BFree,
    /// Blue with exactly one blue (BFree) child; parent must be red or absent.
    BPair,
    /// Red with no red child; requires a red parent (invalid at the root).
    RPend,
    /// Red star center with k RPend children (k in 1..=3); parent blue,
    /// absent, or red (the parent then becomes RLeaf).
    RCtr(usize),
    /// Red with exactly one red child, a star center; parent blue or absent.
    RLeaf,
}

pub const ALL_STATES: [TreeState; 7] = [
    TreeState::BFree,
    TreeState::BPair,
    TreeState::RPend,
    TreeState::RCtr(1),
    TreeState::RCtr(2),
    TreeState::RCtr(3),
    TreeState::RLeaf,
];

impl TreeState {
    pub fn color(self) -> Color {
        match self {
            TreeState::BFree | TreeState::BPair => Color::Blue,
            _ => Color::Red,
        }
    }

    /// Acceptable as the state of a root (no parent).
    pub fn root_ok(self) -> bool {
        self != TreeState::RPend
    }
}

/// Child-class a parent demands, used by the transition rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ChildClass {
    /// {BFree}
    FreeBlue,
    /// {BFree, BPair}
    AnyBlue,
    /// {RCtr(1..3), RLeaf}
    ClosedRed,
    /// {RPend}
    PendRed,
    /// {RCtr(1..3)}
    CenterRed,
}

fn in_class(s: TreeState, class: ChildClass) -> bool {
    match class {
        ChildClass::FreeBlue => s == TreeState::BFree,
        ChildClass::AnyBlue => matches!(s, TreeState::BFree | TreeState::BPair),
        ChildClass::ClosedRed => matches!(s, TreeState::RCtr(_) | TreeState::RLeaf),
        ChildClass::PendRed => s == TreeState::RPend,
        ChildClass::CenterRed => matches!(s, TreeState::RCtr(_)),
    }
}

/// Transition rule for a parent state: `special` children (exactly
/// `special_count` of them) take the special class, all others the default.
struct Rule {
    state: TreeState,
    special: Option<ChildClass>,
    special_count: usize,
    default: ChildClass,
}

fn rules() -> Vec<Rule> {
    vec![
        Rule { state: TreeState::BFree, special: None, special_count: 0, default: ChildClass::ClosedRed },
        Rule {
            state: TreeState::BPair,
            special: Some(ChildClass::FreeBlue),
            special_count: 1,
            default: ChildClass::ClosedRed,
        },
        Rule { state: TreeState::RPend, special: None, special_count: 0, default: ChildClass::AnyBlue },
        Rule {
            state: TreeState::RCtr(1),
            special: Some(ChildClass::PendRed),
            special_count: 1,
            default: ChildClass::AnyBlue,
        },
        Rule {
            state: TreeState::RCtr(2),
            special: Some(ChildClass::PendRed),
            special_count: 2,
            default: ChildClass::AnyBlue,
        },
        Rule {
            state: TreeState::RCtr(3),
            special: Some(ChildClass::PendRed),
            special_count: 3,
            default: ChildClass::AnyBlue,
        },
        Rule {
            state: TreeState::RLeaf,
            special: Some(ChildClass::CenterRed),
            special_count: 1,
            default: ChildClass::AnyBlue,
        },
    ]
}

struct TreeDp<'a> {
    g: &'a Graph,
    root: usize,
    /// children in increasing index order; parent[root] = usize::MAX
    children: Vec<Vec<usize>>,
    post_order: Vec<usize>,
    /// per vertex, per state: number of subtree colorings realizing it
    counts: Vec<BTreeMap<TreeState, u64>>,
}

impl<'a> TreeDp<'a> {
    fn build(g: &'a Graph, root: usize, p: &Prescription) -> Result<Self> {
        if !g.is_tree() {
            return Err(Error::NotATree);
        }
        g.check_subcubic()?;
        p.check(g)?;
        let n = g.vertex_count();
        let mut parent = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(u) = stack.pop() {
            order.push(u);
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = u;
                    stack.push(v);
                }
            }
        }
        let mut children = vec![Vec::new(); n];
        for v in 0..n {
            if v != root {
                children[parent[v]].push(v);
            }
        }
        let post_order: Vec<usize> = order.iter().rev().copied().collect();

        let mut dp = TreeDp { g, root, children, post_order, counts: vec![BTreeMap::new(); n] };
        dp.run(p);
        Ok(dp)
    }

    fn allowed_color(p: &Prescription, v: usize, c: Color) -> bool {
        p.fixed.get(&v).map_or(true, |&fc| fc == c)
    }

    fn run(&mut self, p: &Prescription) {
        for &v in &self.post_order.clone() {
            let mut table = BTreeMap::new();
            for rule in rules() {
                if !Self::allowed_color(p, v, rule.state.color()) {
                    continue;
                }
                if let Some(ways) = self.ways_for(v, &rule) {
                    if ways > 0 {
                        table.insert(rule.state, ways);
                    }
                }
            }
            self.counts[v] = table;
        }
    }

    /// Number of ways the children of `v` can realize `rule`. Exactly
    /// `special_count` children in the special class, the rest in the
    /// default class; computed by a small knapsack over the children.
    fn ways_for(&self, v: usize, rule: &Rule) -> Option<u64> {
        let kids = &self.children[v];
        // per child: (ways in special class, ways in default class)
        let mut acc = vec![0u64; rule.special_count + 1];
        acc[0] = 1;
        for &c in kids {
            let special_ways: u64 = match rule.special {
                Some(class) => self.class_ways(c, class),
                None => 0,
            };
            let default_ways: u64 = self.class_ways(c, rule.default);
            let mut next = vec![0u64; rule.special_count + 1];
            for (used, &w) in acc.iter().enumerate() {
                if w == 0 {
                    continue;
                }
                next[used] = next[used].saturating_add(w.saturating_mul(default_ways));
                if used < rule.special_count {
                    next[used + 1] =
                        next[used + 1].saturating_add(w.saturating_mul(special_ways));
                }
            }
            acc = next;
        }
        Some(acc[rule.special_count])
    }

    fn class_ways(&self, v: usize, class: ChildClass) -> u64 {
        self.counts[v]
            .iter()
            .filter(|(s, _)| in_class(**s, class))
            .fold(0u64, |a, (_, &w)| a.saturating_add(w))
    }

    fn feasible(&self, v: usize) -> Vec<TreeState> {
        self.counts[v].keys().copied().collect()
    }

    fn root_total(&self) -> u64 {
        self.counts[self.root]
            .iter()
            .filter(|(s, _)| s.root_ok())
            .fold(0u64, |a, (_, &w)| a.saturating_add(w))
    }

    /// Deterministic reconstruction: red root states first, then the
    /// state-order; per child the lexicographically smallest workable state.
    fn reconstruct(&self) -> Option<Coloring> {
        let root_states = self.feasible(self.root);
        let chosen = root_states
            .iter()
            .copied()
            .filter(|s| s.root_ok())
            .max_by_key(|s| (s.color() == Color::Red, std::cmp::Reverse(*s)))?;
        let mut colors = vec![Color::Red; self.g.vertex_count()];
        self.assign(self.root, chosen, &mut colors);
        Some(Coloring::new(colors))
    }

    fn assign(&self, v: usize, state: TreeState, colors: &mut [Color]) {
        colors[v] = state.color();
        let rule = rules().into_iter().find(|r| r.state == state).expect("state has a rule");
        let kids = &self.children[v];
        // children that can only serve the special class must take it; fill
        // the remainder with the lowest-index flexible children
        let mut special_flags = vec![false; kids.len()];
        if let Some(class) = rule.special {
            let mut remaining = rule.special_count;
            let can_special: Vec<bool> =
                kids.iter().map(|&c| self.class_ways(c, class) > 0).collect();
            let can_default: Vec<bool> =
                kids.iter().map(|&c| self.class_ways(c, rule.default) > 0).collect();
            for i in 0..kids.len() {
                if can_special[i] && !can_default[i] {
                    special_flags[i] = true;
                    remaining = remaining.checked_sub(1).expect("DP feasibility");
                }
            }
            for i in 0..kids.len() {
                if remaining == 0 {
                    break;
                }
                if can_special[i] && !special_flags[i] {
                    special_flags[i] = true;
                    remaining -= 1;
                }
            }
            assert_eq!(remaining, 0, "reconstruction ran out of special children");
        }
        for (i, &c) in kids.iter().enumerate() {
            let class = if special_flags[i] { rule.special.unwrap() } else { rule.default };
            let child_state = self
                .feasible(c)
                .into_iter()
                .find(|&s| in_class(s, class))
                .expect("DP feasibility");
            self.assign(c, child_state, colors);
        }
    }
}

fn pick_root(g: &Graph, p: &Prescription) -> usize {
    p.fixed.keys().next().copied().unwrap_or(0).min(g.vertex_count().saturating_sub(1))
}

/// Exact decision and construction: a crumby coloring of the subcubic tree
/// `t` extending `p`, or None when none exists.
pub fn solve_tree(t: &Graph, p: &Prescription) -> Result<Option<Coloring>> {
    let dp = TreeDp::build(t, pick_root(t, p), p)?;
    match dp.reconstruct() {
        Some(c) => {
            debug_assert!(crate::verifier::verify_crumby(t, &c)?.ok);
            Ok(Some(c))
        }
        None => Ok(None),
    }
}

/// Number of crumby colorings of `t` extending `p`, by the DP in counting
/// mode. Saturates at `u64::MAX` for very large trees.
pub fn count_tree_colorings(t: &Graph, p: &Prescription) -> Result<u64> {
    let dp = TreeDp::build(t, pick_root(t, p), p)?;
    Ok(dp.root_total())
}

/// Per-vertex feasible state sets, for debugging and for tree-attachment
/// logic elsewhere.
pub fn tree_state_table(
    t: &Graph,
    root: usize,
    p: &Prescription,
) -> Result<Vec<Vec<TreeState>>> {
    let dp = TreeDp::build(t, root, p)?;
    Ok((0..t.vertex_count()).map(|v| dp.feasible(v)).collect())
}
