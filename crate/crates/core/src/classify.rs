//! Dispatch classification for the CLI: detects which constructive solver
//! applies to an input graph.
//!
//! The priority order is fixed: Tree, K4Subdivision, OneSubdivisionOfCubic,
//! DeepSubdivision, GenuineSubdivision, TwoConnectedOuterplanar,
//! CycleWithTrees, Unknown. Earlier tags win because their solvers are the
//! most specialized; a graph carrying several structures (for example S(K4),
//! which is both a K4 subdivision and a 1-subdivision of a cubic graph)
//! dispatches to the earliest match. A caller-supplied hint overrides
//! detection when the graph actually has the hinted structure.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::outerplanar::embed_outerplanar;
use crate::subdivision::detect_subdivision_structure;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphClass {
    Tree,
    OneSubdivisionOfCubic,
    GenuineSubdivision,
    DeepSubdivision,
    TwoConnectedOuterplanar,
    CycleWithTrees,
    K4Subdivision,
    Unknown,
}

impl GraphClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            GraphClass::Tree => "tree",
            GraphClass::OneSubdivisionOfCubic => "one-subdivision",
            GraphClass::GenuineSubdivision => "genuine-subdivision",
            GraphClass::DeepSubdivision => "deep-subdivision",
            GraphClass::TwoConnectedOuterplanar => "outerplanar",
            GraphClass::CycleWithTrees => "cycle-with-trees",
            GraphClass::K4Subdivision => "k4-subdivision",
            GraphClass::Unknown => "unknown",
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GraphClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tree" => Ok(GraphClass::Tree),
            "one-subdivision" => Ok(GraphClass::OneSubdivisionOfCubic),
            "genuine-subdivision" => Ok(GraphClass::GenuineSubdivision),
            "deep-subdivision" => Ok(GraphClass::DeepSubdivision),
            "outerplanar" => Ok(GraphClass::TwoConnectedOuterplanar),
            "cycle-with-trees" => Ok(GraphClass::CycleWithTrees),
            "k4-subdivision" => Ok(GraphClass::K4Subdivision),
            "unknown" => Ok(GraphClass::Unknown),
            other => Err(Error::Precondition(format!("unknown graph class '{other}'"))),
        }
    }
}

/// Fixed dispatch priority, most specialized first.
pub const CLASS_PRIORITY: [GraphClass; 8] = [
    GraphClass::Tree,
    GraphClass::K4Subdivision,
    GraphClass::OneSubdivisionOfCubic,
    GraphClass::DeepSubdivision,
    GraphClass::GenuineSubdivision,
    GraphClass::TwoConnectedOuterplanar,
    GraphClass::CycleWithTrees,
    GraphClass::Unknown,
];

/// Whether `g` has the structure of `class`, independent of priority.
pub fn matches_class(g: &Graph, class: GraphClass) -> bool {
    if class == GraphClass::Unknown {
        return true;
    }
    if !g.is_subcubic() {
        return false;
    }
    match class {
        GraphClass::Tree => g.is_tree(),
        GraphClass::K4Subdivision => detect_subdivision_structure(g)
            .map(|sg| {
                sg.base.vertex_count() == 4
                    && sg.base.edge_count() == 6
                    && sg.base.is_cubic()
            })
            .unwrap_or(false),
        GraphClass::OneSubdivisionOfCubic => detect_subdivision_structure(g)
            .map(|sg| sg.base.is_cubic() && sg.counts.values().all(|&c| c == 1))
            .unwrap_or(false),
        GraphClass::DeepSubdivision => detect_subdivision_structure(g)
            .map(|sg| sg.base.is_cubic() && sg.counts.values().all(|&c| c >= 2))
            .unwrap_or(false),
        GraphClass::GenuineSubdivision => detect_subdivision_structure(g)
            .map(|sg| sg.is_genuine())
            .unwrap_or(false),
        GraphClass::TwoConnectedOuterplanar => embed_outerplanar(g).is_ok(),
        GraphClass::CycleWithTrees => {
            g.is_connected() && g.edge_count() == g.vertex_count()
        }
        GraphClass::Unknown => true,
    }
}

/// Classifies `g` by the first matching tag in priority order. A hint wins
/// when it is consistent with the graph's structure; an inconsistent hint
/// is an error.
pub fn classify(g: &Graph, hint: Option<GraphClass>) -> Result<GraphClass> {
    if let Some(h) = hint {
        if matches_class(g, h) {
            return Ok(h);
        }
        return Err(Error::InconsistentHint { hint: h.to_string() });
    }
    Ok(CLASS_PRIORITY
        .into_iter()
        .find(|&c| matches_class(g, c))
        .unwrap_or(GraphClass::Unknown))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{
        gen_cycle, gen_cycle_with_trees, gen_k4, gen_k4_subdivided, gen_path, gen_prism,
        gen_random_cubic, Attachment,
    };
    use crate::subdivision::subdivide;
    use std::collections::BTreeMap;

    #[test]
    fn trees_win() {
        assert_eq!(classify(&gen_path(5), None).unwrap(), GraphClass::Tree);
    }

    #[test]
    fn k4_subdivision_beats_one_subdivision() {
        let g = gen_k4_subdivided(&[1; 6]).expanded;
        assert_eq!(classify(&g, None).unwrap(), GraphClass::K4Subdivision);
        // but the hint is consistent, so it overrides
        assert_eq!(
            classify(&g, Some(GraphClass::OneSubdivisionOfCubic)).unwrap(),
            GraphClass::OneSubdivisionOfCubic
        );
        assert_eq!(classify(&gen_k4(), None).unwrap(), GraphClass::K4Subdivision);
    }

    #[test]
    fn prism_is_unknown() {
        assert_eq!(classify(&gen_prism(), None).unwrap(), GraphClass::Unknown);
        assert!(matches!(
            classify(&gen_prism(), Some(GraphClass::Tree)),
            Err(Error::InconsistentHint { .. })
        ));
    }

    #[test]
    fn subdivision_tags() {
        let prism = gen_prism();
        let ones: BTreeMap<_, _> = prism.edges().into_iter().map(|e| (e, 1)).collect();
        let g = subdivide(&prism, &ones).unwrap().expanded;
        assert_eq!(classify(&g, None).unwrap(), GraphClass::OneSubdivisionOfCubic);

        let twos: BTreeMap<_, _> = prism.edges().into_iter().map(|e| (e, 2)).collect();
        let g = subdivide(&prism, &twos).unwrap().expanded;
        assert_eq!(classify(&g, None).unwrap(), GraphClass::DeepSubdivision);

        let mut mixed = ones.clone();
        mixed.insert((0, 1), 3);
        let g = subdivide(&prism, &mixed).unwrap().expanded;
        assert_eq!(classify(&g, None).unwrap(), GraphClass::GenuineSubdivision);

        let cubic = gen_random_cubic(8, 5).unwrap();
        let ones: BTreeMap<_, _> = cubic.edges().into_iter().map(|e| (e, 1)).collect();
        let g = subdivide(&cubic, &ones).unwrap().expanded;
        assert_eq!(classify(&g, None).unwrap(), GraphClass::OneSubdivisionOfCubic);
    }

    #[test]
    fn outerplanar_and_cycles() {
        assert_eq!(classify(&gen_cycle(6), None).unwrap(), GraphClass::TwoConnectedOuterplanar);
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert_eq!(classify(&g, None).unwrap(), GraphClass::TwoConnectedOuterplanar);
        let atts = BTreeMap::from([(0, Attachment::K2)]);
        let g = gen_cycle_with_trees(6, &atts).unwrap();
        assert_eq!(classify(&g, None).unwrap(), GraphClass::CycleWithTrees);
    }

    #[test]
    fn class_names_round_trip() {
        for c in CLASS_PRIORITY {
            assert_eq!(c.as_str().parse::<GraphClass>().unwrap(), c);
        }
        assert!("nope".parse::<GraphClass>().is_err());
    }
}
