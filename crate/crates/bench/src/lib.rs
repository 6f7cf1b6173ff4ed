//! Shared instance builders for the solver benchmarks.

use std::collections::BTreeMap;

use crumby::generators::{
    gen_cycle_with_trees, gen_random_cubic, gen_random_outerplanar_2conn,
    gen_random_subcubic_tree, Attachment,
};
use crumby::subdivision::subdivide;
use crumby::Graph;

pub fn tree_instance(n: usize) -> Graph {
    gen_random_subcubic_tree(n, 0xbe9c)
}

pub fn one_subdivision_instance(n: usize) -> crumby::SubdividedGraph {
    let base = gen_random_cubic(n, 0xbe9c).expect("even n >= 4");
    let counts: BTreeMap<(usize, usize), usize> =
        base.edges().into_iter().map(|e| (e, 1)).collect();
    subdivide(&base, &counts).expect("valid subdivision")
}

pub fn outerplanar_instance(n: usize) -> Graph {
    gen_random_outerplanar_2conn(n, 0xbe9c).expect("n >= 3")
}

pub fn cycle_with_trees_instance(k: usize) -> Graph {
    let attachments: BTreeMap<usize, Attachment> = (0..k)
        .step_by(3)
        .map(|i| {
            let a = match i % 9 {
                0 => Attachment::K2,
                3 => Attachment::K13,
                _ => {
                    let tree = gen_random_subcubic_tree(5, i as u64);
                    let leaf = (0..5).find(|&v| tree.degree(v) == 1).unwrap();
                    Attachment::Tree { tree, leaf }
                }
            };
            (i, a)
        })
        .collect();
    gen_cycle_with_trees(k, &attachments).expect("valid instance")
}
