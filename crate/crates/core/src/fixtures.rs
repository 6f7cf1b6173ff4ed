//! Frozen data tables: path patterns, cycle patterns, the path-case rows
//! for K4 subdivisions, the two-square start colorings, and the 729 reduced
//! K4 base solutions.
//!
//! Transcribed entries live as code constants in their home modules and are
//! re-validated here; oracle-generated entries are frozen in plain-text
//! files under `fixtures/` and can be rebuilt with
//! `cargo run -p crumby --example regen_fixtures`, which must produce a
//! clean diff on an unmodified tree.
//!
//! The K4 base file has one line per counts vector,
//! `c1 c2 c3 c4 c5 c6 : colorstring`, counts in the edge order AB, AC, AD,
//! BC, BD, CD on branch vertices A=0, B=1, C=2, D=3. The color string lists
//! vertices in the canonical subdivision layout: branch vertices first,
//! then the internal vertices of each edge in the same edge order, each path
//! read from its lower-labeled endpoint.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::generators::gen_cycle;
use crate::graph::{Color, Coloring};
use crate::k4sub::{
    all_base_vectors, path_case_row_coloring, prime_base_cache, K4SubdivisionVector,
    K4_PATH_CASE_ROWS,
};
use crate::oracle::{self, Prescription};
use crate::outerplanar::{cycle_pattern, two_square_graph, two_square_start};
use crate::subdivisions::{path_pattern, PathPattern};
use crate::verifier::{validate_pattern, verify_crumby, PatternPurpose};

pub const K4_BASE_FILE: &str = include_str!("../fixtures/k4_base_solutions.txt");
pub const TWO_SQUARE_FILE: &str = include_str!("../fixtures/two_square_starts.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureProvenance {
    TranscribedFromPaper,
    OracleGenerated,
}

#[derive(Debug, Clone)]
pub struct CycleFixture {
    pub k: usize,
    pub colors: String,
    pub provenance: FixtureProvenance,
}

#[derive(Debug, Clone)]
pub struct PathCaseFixture {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub colors: String,
    pub provenance: FixtureProvenance,
}

#[derive(Debug, Clone)]
pub struct TwoSquareFixture {
    pub prescribed: Color,
    pub coloring: Coloring,
    pub provenance: FixtureProvenance,
}

#[derive(Debug, Clone)]
pub struct K4BaseFixture {
    pub counts: [usize; 6],
    pub coloring: Coloring,
    pub provenance: FixtureProvenance,
}

/// All frozen tables, validated entry by entry at load time.
pub struct FixtureSet {
    pub path_patterns: Vec<(PathPattern, FixtureProvenance)>,
    pub cycle_patterns: Vec<CycleFixture>,
    pub path_cases: Vec<PathCaseFixture>,
    pub two_square_starts: Vec<TwoSquareFixture>,
    pub k4_bases: Vec<K4BaseFixture>,
}

impl FixtureSet {
    pub fn k4_base_map(&self) -> BTreeMap<[usize; 6], Coloring> {
        self.k4_bases.iter().map(|f| (f.counts, f.coloring.clone())).collect()
    }

    /// Installs the 729 base solutions into the K4 solver's cache.
    pub fn install_k4_cache(&self) -> Result<()> {
        prime_base_cache(&self.k4_base_map())
    }
}

const ALL_PURPOSES: [PatternPurpose; 3] = [
    PatternPurpose::EndpointsSingletonRed,
    PatternPurpose::EndpointsInRedK2,
    PatternPurpose::MixedSingletonAndK2,
];

fn transcribed_tables() -> Result<(
    Vec<(PathPattern, FixtureProvenance)>,
    Vec<CycleFixture>,
    Vec<PathCaseFixture>,
)> {
    let mut path_patterns = Vec::new();
    for k in 3..=8 {
        for purpose in ALL_PURPOSES {
            let p = path_pattern(k, purpose);
            if validate_pattern(&p.colors, purpose) != p.attainable {
                return Err(Error::Precondition(format!(
                    "path pattern table ({k}, {purpose:?}): attainability flag disagrees \
                     with the validator"
                )));
            }
            path_patterns.push((p, FixtureProvenance::TranscribedFromPaper));
        }
    }
    let mut cycle_patterns = Vec::new();
    for k in 3..=8 {
        let colors = cycle_pattern(k);
        let c = Coloring::from_rb_string(&colors)?;
        if !verify_crumby(&gen_cycle(k), &c)?.ok {
            return Err(Error::Precondition(format!("cycle table (k = {k}): not crumby")));
        }
        cycle_patterns.push(CycleFixture {
            k,
            colors,
            provenance: FixtureProvenance::TranscribedFromPaper,
        });
    }
    let mut path_cases = Vec::new();
    for &(i, j, k, row) in &K4_PATH_CASE_ROWS {
        let (sg, col) = path_case_row_coloring(i, j, k, row)?;
        if !verify_crumby(&sg.expanded, &col)?.ok {
            return Err(Error::Precondition(format!(
                "path-case table row ({i}, {j}, {k}): not crumby"
            )));
        }
        path_cases.push(PathCaseFixture {
            i,
            j,
            k,
            colors: row.to_string(),
            provenance: FixtureProvenance::TranscribedFromPaper,
        });
    }
    Ok((path_patterns, cycle_patterns, path_cases))
}

fn validate_two_square(f: &TwoSquareFixture) -> Result<()> {
    let g = two_square_graph();
    if !verify_crumby(&g, &f.coloring)?.ok
        || f.coloring.get(0) != f.prescribed
        || (f.coloring.get(2) == Color::Blue && f.coloring.get(3) == Color::Blue)
        || (f.coloring.get(4) == Color::Blue && f.coloring.get(5) == Color::Blue)
    {
        return Err(Error::Precondition(format!(
            "two-square start ({}): invalid entry",
            f.prescribed.to_char()
        )));
    }
    Ok(())
}

fn validate_k4_base(f: &K4BaseFixture) -> Result<()> {
    let v = K4SubdivisionVector(f.counts);
    if !v.is_base() {
        return Err(Error::Precondition(format!(
            "K4 base table {:?}: counts above 2",
            f.counts
        )));
    }
    let sg = v.to_subdivided();
    if !verify_crumby(&sg.expanded, &f.coloring)?.ok {
        return Err(Error::Precondition(format!(
            "K4 base table {:?}: coloring is not crumby",
            f.counts
        )));
    }
    Ok(())
}

fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn parse_two_square_file(text: &str) -> Result<Vec<TwoSquareFixture>> {
    let mut out = Vec::new();
    for line in data_lines(text) {
        let (tag, colors) = line
            .split_once(':')
            .ok_or_else(|| Error::Precondition(format!("two-square fixture line '{line}'")))?;
        let prescribed = tag
            .trim()
            .chars()
            .next()
            .and_then(Color::from_char)
            .ok_or_else(|| Error::Precondition(format!("bad two-square tag in '{line}'")))?;
        out.push(TwoSquareFixture {
            prescribed,
            coloring: Coloring::from_rb_string(colors.trim())?,
            provenance: FixtureProvenance::OracleGenerated,
        });
    }
    if out.len() != 2 {
        return Err(Error::Precondition(format!(
            "two-square fixture file has {} entries, expected 2",
            out.len()
        )));
    }
    Ok(out)
}

fn parse_k4_base_file(text: &str) -> Result<Vec<K4BaseFixture>> {
    let mut out = Vec::new();
    for line in data_lines(text) {
        let (head, colors) = line
            .split_once(':')
            .ok_or_else(|| Error::Precondition(format!("K4 base fixture line '{line}'")))?;
        let nums: Vec<usize> = head
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Precondition(format!("bad count '{t}' in '{line}'")))
            })
            .collect::<Result<_>>()?;
        let counts: [usize; 6] = nums
            .try_into()
            .map_err(|_| Error::Precondition(format!("K4 base line needs 6 counts: '{line}'")))?;
        out.push(K4BaseFixture {
            counts,
            coloring: Coloring::from_rb_string(colors.trim())?,
            provenance: FixtureProvenance::OracleGenerated,
        });
    }
    let expected: Vec<[usize; 6]> = all_base_vectors().iter().map(|v| v.0).collect();
    let got: Vec<[usize; 6]> = out.iter().map(|f| f.counts).collect();
    if got != expected {
        return Err(Error::Precondition(
            "K4 base fixture file must list all 729 vectors in lexicographic order".into(),
        ));
    }
    Ok(out)
}

/// Loads every fixture table and validates each entry.
pub fn load_fixtures() -> Result<FixtureSet> {
    let (path_patterns, cycle_patterns, path_cases) = transcribed_tables()?;
    let two_square_starts = parse_two_square_file(TWO_SQUARE_FILE)?;
    for f in &two_square_starts {
        validate_two_square(f)?;
    }
    let k4_bases = parse_k4_base_file(K4_BASE_FILE)?;
    for f in &k4_bases {
        validate_k4_base(f)?;
    }
    Ok(FixtureSet { path_patterns, cycle_patterns, path_cases, two_square_starts, k4_bases })
}

/// Loads the fixtures and primes the K4 base cache in one step.
pub fn install_fixtures() -> Result<FixtureSet> {
    let fs = load_fixtures()?;
    fs.install_k4_cache()?;
    Ok(fs)
}

/// Recomputes the oracle-generated tables from scratch (transcribed tables
/// are rebuilt from their code constants). Deterministic, so the rendered
/// files must match the frozen copies byte for byte.
pub fn regenerate_fixtures() -> Result<FixtureSet> {
    let (path_patterns, cycle_patterns, path_cases) = transcribed_tables()?;
    let mut two_square_starts = Vec::new();
    for prescribed in [Color::Red, Color::Blue] {
        let f = TwoSquareFixture {
            prescribed,
            coloring: two_square_start(prescribed)?,
            provenance: FixtureProvenance::OracleGenerated,
        };
        validate_two_square(&f)?;
        two_square_starts.push(f);
    }
    let mut k4_bases = Vec::new();
    for v in all_base_vectors() {
        let sg = v.to_subdivided();
        let outcome =
            oracle::solve_exact(&sg.expanded, &Prescription::empty(), oracle::DEFAULT_BUDGET)?;
        let coloring = outcome.coloring().cloned().ok_or_else(|| {
            Error::Internal(format!("reduced K4 instance {:?} is unsolvable", v.0))
        })?;
        let f = K4BaseFixture {
            counts: v.0,
            coloring,
            provenance: FixtureProvenance::OracleGenerated,
        };
        validate_k4_base(&f)?;
        k4_bases.push(f);
    }
    Ok(FixtureSet { path_patterns, cycle_patterns, path_cases, two_square_starts, k4_bases })
}

pub fn render_two_square_file(entries: &[TwoSquareFixture]) -> String {
    let mut out = String::from(
        "# Two-square start colorings: prescribed color of vertex 0 : coloring of the\n\
         # 6-vertex double square (0-1 the shared edge, 2-3 and 4-5 the face pairs).\n\
         # Oracle-generated; rebuild with `cargo run -p crumby --example regen_fixtures`.\n",
    );
    for f in entries {
        out.push_str(&format!("{} : {}\n", f.prescribed.to_char(), f.coloring.to_rb_string()));
    }
    out
}

pub fn render_k4_base_file(entries: &[K4BaseFixture]) -> String {
    let mut out = String::from(
        "# Reduced K4 subdivision base solutions, one line per counts vector\n\
         # (edge order AB AC AD BC BD CD; vertices A=0 B=1 C=2 D=3, then the internal\n\
         # vertices of each edge in the same order, paths read from the lower endpoint).\n\
         # Oracle-generated; rebuild with `cargo run -p crumby --example regen_fixtures`.\n",
    );
    for f in entries {
        let counts =
            f.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
        out.push_str(&format!("{counts} : {}\n", f.coloring.to_rb_string()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn load_validates_everything() {
        let fs = load_fixtures().unwrap();
        assert_eq!(fs.path_patterns.len(), 18);
        assert_eq!(fs.cycle_patterns.len(), 6);
        assert_eq!(fs.path_cases.len(), 27);
        assert_eq!(fs.two_square_starts.len(), 2);
        assert_eq!(fs.k4_bases.len(), 729);
        assert!(fs
            .k4_bases
            .iter()
            .all(|f| f.provenance == FixtureProvenance::OracleGenerated));
    }

    #[test]
    fn pinned_cells() {
        let fs = load_fixtures().unwrap();
        let cell = fs
            .path_patterns
            .iter()
            .find(|(p, _)| p.k == 5 && p.purpose == PatternPurpose::EndpointsInRedK2)
            .unwrap();
        assert_eq!(cell.0.colors, "rrbrr");
        assert!(cell.0.attainable);
        let c7 = fs.cycle_patterns.iter().find(|c| c.k == 7).unwrap();
        assert_eq!(c7.colors, "rrbrrrb");
    }

    #[test]
    fn cache_priming_round_trips() {
        let fs = load_fixtures().unwrap();
        fs.install_k4_cache().unwrap();
        let v = K4SubdivisionVector([2, 1, 0, 1, 2, 1]);
        let cached = crate::k4sub::solve_k4_base(&v).unwrap();
        let frozen = &fs.k4_bases.iter().find(|f| f.counts == v.0).unwrap().coloring;
        assert_eq!(cached.to_rb_string(), frozen.to_rb_string());
    }

    #[test]
    fn regenerate_matches_frozen_copy() {
        let fs = regenerate_fixtures().unwrap();
        assert_eq!(render_two_square_file(&fs.two_square_starts), TWO_SQUARE_FILE);
        assert_eq!(render_k4_base_file(&fs.k4_bases), K4_BASE_FILE);
    }

    #[test]
    fn corrupted_entries_are_rejected() {
        let mut bad = parse_two_square_file(TWO_SQUARE_FILE).unwrap();
        let flipped = bad[0].coloring.get(0).flip();
        bad[0].coloring.set(0, flipped);
        assert!(validate_two_square(&bad[0]).is_err());
        assert!(parse_k4_base_file("0 0 0 : rrrb\n").is_err());
    }
}
