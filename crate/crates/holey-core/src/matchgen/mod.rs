//! (Near-)perfect matchings: domino placements, deterministic exhaustive
//! enumeration, axis reflections and the union-multigraph decomposition.

mod enumerate;
mod reflect;

pub use enumerate::{
    count_brute, count_brute_perfect, enumerate_near_perfect, enumerate_perfect, MatchingStream,
    ENUMERATION_CAP,
};
pub use reflect::{
    reflect_cell, reflect_matching, union_decompose, verify_reflection_structure, Axis,
    ComponentKind, ReflectionReport, UnionComponent, UnionDecomposition,
};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Cell, GridSpec};

/// Two orthogonally adjacent cells, stored with the lexicographically
/// smaller cell first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Domino {
    a: Cell,
    b: Cell,
}

impl Domino {
    pub fn new(x: Cell, y: Cell) -> Result<Self> {
        let adjacent = (x.row == y.row && x.col.abs_diff(y.col) == 1)
            || (x.col == y.col && x.row.abs_diff(y.row) == 1);
        if !adjacent {
            return Err(Error::NotAdjacent(x, y));
        }
        Ok(if x <= y {
            Self { a: x, b: y }
        } else {
            Self { a: y, b: x }
        })
    }

    pub fn a(self) -> Cell {
        self.a
    }

    pub fn b(self) -> Cell {
        self.b
    }

    pub fn cells(self) -> [Cell; 2] {
        [self.a, self.b]
    }

    pub fn covers(self, cell: Cell) -> bool {
        self.a == cell || self.b == cell
    }

    /// The other endpoint, if `cell` is one of the two.
    pub fn other(self, cell: Cell) -> Option<Cell> {
        if self.a == cell {
            Some(self.b)
        } else if self.b == cell {
            Some(self.a)
        } else {
            None
        }
    }

    /// Apply a cell map and re-canonicalize.
    pub(crate) fn map(self, f: impl Fn(Cell) -> Cell) -> Result<Self> {
        Domino::new(f(self.a), f(self.b))
    }
}

impl fmt::Display for Domino {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

impl FromStr for Domino {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once('-')
            .ok_or_else(|| Error::ParseMatching(s.to_owned()))?;
        Domino::new(a.trim().parse()?, b.trim().parse()?)
    }
}

impl<'de> Deserialize<'de> for Domino {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Repr {
            a: Cell,
            b: Cell,
        }
        let repr = Repr::deserialize(deserializer)?;
        Domino::new(repr.a, repr.b).map_err(serde::de::Error::custom)
    }
}

/// A set of disjoint dominoes, near-perfect when a hole cell is present.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Matching {
    dominoes: BTreeSet<Domino>,
    hole: Option<Cell>,
}

impl Matching {
    pub fn new(dominoes: impl IntoIterator<Item = Domino>, hole: Option<Cell>) -> Result<Self> {
        let mut covered = BTreeSet::new();
        let mut set = BTreeSet::new();
        for d in dominoes {
            for cell in d.cells() {
                if !covered.insert(cell) {
                    return Err(Error::Overlap(cell));
                }
            }
            set.insert(d);
        }
        if let Some(h) = hole {
            if covered.contains(&h) {
                return Err(Error::Overlap(h));
            }
        }
        Ok(Self {
            dominoes: set,
            hole,
        })
    }

    /// Construct from dominoes already known to be disjoint.
    pub(crate) fn from_parts_unchecked(dominoes: &[Domino], hole: Option<Cell>) -> Self {
        Self {
            dominoes: dominoes.iter().copied().collect(),
            hole,
        }
    }

    pub fn dominoes(&self) -> &BTreeSet<Domino> {
        &self.dominoes
    }

    pub fn hole(&self) -> Option<Cell> {
        self.hole
    }

    pub fn len(&self) -> usize {
        self.dominoes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dominoes.is_empty()
    }

    /// Map from each covered cell to its domino.
    pub fn cover_map(&self) -> BTreeMap<Cell, Domino> {
        let mut map = BTreeMap::new();
        for &d in &self.dominoes {
            for cell in d.cells() {
                map.insert(cell, d);
            }
        }
        map
    }

    /// Check that this matching exactly covers `spec`, leaving only the hole
    /// (if any) uncovered.
    pub fn validate_for(&self, spec: GridSpec) -> Result<()> {
        let mut covered = BTreeSet::new();
        for &d in &self.dominoes {
            for cell in d.cells() {
                spec.check_contains(cell)?;
                if !covered.insert(cell) {
                    return Err(Error::Overlap(cell));
                }
            }
        }
        if let Some(h) = self.hole {
            spec.check_contains(h)?;
            if covered.contains(&h) {
                return Err(Error::Overlap(h));
            }
        }
        for cell in spec.cells() {
            if Some(cell) != self.hole && !covered.contains(&cell) {
                return Err(Error::Uncovered(cell));
            }
        }
        Ok(())
    }

    /// Emit the line-oriented text format: an optional `hole: r,c` header
    /// followed by one `r1,c1-r2,c2` line per domino.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(h) = self.hole {
            out.push_str(&format!("hole: {h}\n"));
        }
        for d in &self.dominoes {
            out.push_str(&format!("{d}\n"));
        }
        out
    }

    pub fn parse_text(s: &str) -> Result<Self> {
        let mut hole = None;
        let mut dominoes = Vec::new();
        for line in s.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("hole:") {
                if hole.is_some() {
                    return Err(Error::ParseMatching(line.to_owned()));
                }
                hole = Some(rest.trim().parse()?);
            } else {
                dominoes.push(line.parse()?);
            }
        }
        Matching::new(dominoes, hole)
    }

    /// Parse either the text format or its JSON alternative (sniffed by the
    /// leading character).
    pub fn parse(s: &str) -> Result<Self> {
        let body = s.trim_start();
        if body.starts_with('{') {
            serde_json::from_str(s).map_err(|e| Error::ParseMatching(e.to_string()))
        } else if body.starts_with('[') {
            // bare array of dominoes: a perfect matching
            let dominoes: Vec<Domino> =
                serde_json::from_str(s).map_err(|e| Error::ParseMatching(e.to_string()))?;
            Matching::new(dominoes, None)
        } else {
            Self::parse_text(s)
        }
    }
}

impl<'de> Deserialize<'de> for Matching {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Repr {
            dominoes: Vec<Domino>,
            #[serde(default)]
            hole: Option<Cell>,
        }
        let repr = Repr::deserialize(deserializer)?;
        Matching::new(repr.dominoes, repr.hole).map_err(serde::de::Error::custom)
    }
}
