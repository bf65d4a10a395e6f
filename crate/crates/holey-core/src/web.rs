//! Spanning webs on the odd-white sublattice.
//!
//! A near-perfect matching induces a directed graph on the odd white
//! vertices: each covered odd white cell sends one arc two cells along its
//! domino's line. The graph is functional except at the hole, its cycles
//! pair matchings off under reversal, and its spanning in-trees biject with
//! matchings, which is what the parity and mod-4 scanners exploit.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::grid::{Cell, GridSpec, WhiteParity};
use crate::linalg::spanning_tree_count;
use crate::matchgen::{Domino, Matching};
use crate::profile::count_all_holes_jobs;
use crate::BigCount;

/// Directed graph on the odd white cells of a grid; every vertex has
/// out-degree at most one, with out-degree zero exactly at uncovered
/// vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WebGraph {
    grid: GridSpec,
    hole: Cell,
    arcs: BTreeMap<Cell, Option<Cell>>,
}

impl WebGraph {
    /// Assemble a web from explicit arcs. Keys must be exactly the odd white
    /// cells; targets must be two apart in the same row or column.
    pub fn from_arcs(
        grid: GridSpec,
        hole: Cell,
        arcs: BTreeMap<Cell, Option<Cell>>,
    ) -> Result<Self> {
        grid.require_odd_odd()?;
        grid.check_contains(hole)?;
        let expected: BTreeSet<Cell> = grid.odd_white_cells().collect();
        let keys: BTreeSet<Cell> = arcs.keys().copied().collect();
        if keys != expected {
            return Err(Error::InvalidMatching(
                "web vertices must be exactly the odd white cells".into(),
            ));
        }
        for (&from, &to) in &arcs {
            if let Some(to) = to {
                grid.check_contains(to)?;
                if !lattice_adjacent(from, to) {
                    return Err(Error::InvalidMatching(format!(
                        "arc {from}->{to} does not connect odd white neighbors"
                    )));
                }
            }
        }
        Ok(Self { grid, hole, arcs })
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    /// The uncovered cell of the originating matching (any color class).
    pub fn hole(&self) -> Cell {
        self.hole
    }

    pub fn arcs(&self) -> &BTreeMap<Cell, Option<Cell>> {
        &self.arcs
    }

    pub fn out(&self, v: Cell) -> Option<Cell> {
        self.arcs.get(&v).copied().flatten()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Cell> + '_ {
        self.arcs.keys().copied()
    }

    /// Dimensions of the odd-white lattice: `((r+1)/2, (c+1)/2)`.
    pub fn web_dims(&self) -> (usize, usize) {
        ((self.grid.rows() + 1) / 2, (self.grid.cols() + 1) / 2)
    }

    pub fn is_acyclic(&self) -> bool {
        find_cycles(self).is_empty()
    }
}

/// Two odd white cells two apart in the same row or column.
fn lattice_adjacent(a: Cell, b: Cell) -> bool {
    (a.row == b.row && a.col.abs_diff(b.col) == 2) || (a.col == b.col && a.row.abs_diff(b.row) == 2)
}

fn midpoint(a: Cell, b: Cell) -> Cell {
    Cell::new((a.row + b.row) / 2, (a.col + b.col) / 2)
}

/// The spanning web of a near-perfect matching: for each covered odd white
/// vertex `w1` with domino `(w1, b)`, the arc runs from `w1` to the other
/// neighbor of `b` along the same line.
pub fn web_from_matching(spec: GridSpec, m: &Matching) -> Result<WebGraph> {
    spec.require_odd_odd()?;
    m.validate_for(spec)?;
    let hole = m.hole().ok_or(Error::MissingHole)?;
    let cover = m.cover_map();
    let mut arcs = BTreeMap::new();
    for w1 in spec.odd_white_cells() {
        let arc = match cover.get(&w1) {
            Some(d) => {
                let b = d.other(w1).expect("cover map pairs w1 with its domino");
                let w2 = Cell::new(2 * b.row - w1.row, 2 * b.col - w1.col);
                debug_assert!(spec.contains(w2));
                Some(w2)
            }
            None => {
                if w1 != hole {
                    return Err(Error::Uncovered(w1));
                }
                None
            }
        };
        arcs.insert(w1, arc);
    }
    Ok(WebGraph {
        grid: spec,
        hole,
        arcs,
    })
}

/// A directed cycle of a web, with the grid cells strictly inside its curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WebCycle {
    /// Cycle vertices in arc order, rotated to start at the smallest.
    pub vertices: Vec<Cell>,
    pub enclosed: BTreeSet<Cell>,
    pub encloses_hole: bool,
}

/// All directed cycles of the web (vertex-disjoint, since the graph is
/// functional), each annotated with its enclosed region.
pub fn find_cycles(web: &WebGraph) -> Vec<WebCycle> {
    let mut state: BTreeMap<Cell, u8> = web.vertices().map(|v| (v, 0)).collect();
    let mut cycles = Vec::new();
    for start in web.vertices() {
        if state[&start] != 0 {
            continue;
        }
        let mut path = Vec::new();
        let mut cur = Some(start);
        while let Some(v) = cur {
            match state[&v] {
                0 => {
                    state.insert(v, 1);
                    path.push(v);
                    cur = web.out(v);
                }
                1 => {
                    let pos = path.iter().position(|&x| x == v).expect("v is on the path");
                    cycles.push(make_cycle(web, &path[pos..]));
                    break;
                }
                _ => break,
            }
        }
        for v in path {
            state.insert(v, 2);
        }
    }
    cycles
}

fn make_cycle(web: &WebGraph, cells: &[Cell]) -> WebCycle {
    let min = cells
        .iter()
        .enumerate()
        .min_by_key(|(_, &c)| c)
        .map(|(i, _)| i)
        .expect("cycle is nonempty");
    let mut vertices = Vec::with_capacity(cells.len());
    vertices.extend_from_slice(&cells[min..]);
    vertices.extend_from_slice(&cells[..min]);
    let enclosed = enclosed_region(web.grid, &vertices);
    let encloses_hole = enclosed.contains(&web.hole);
    WebCycle {
        vertices,
        enclosed,
        encloses_hole,
    }
}

/// Grid cells strictly inside the closed curve through the cycle's vertices,
/// by even-odd ray casting against the curve's vertical segments.
fn enclosed_region(grid: GridSpec, vertices: &[Cell]) -> BTreeSet<Cell> {
    let n = vertices.len();
    let mut on_curve = BTreeSet::new();
    let mut vertical_segments = Vec::new();
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        on_curve.insert(a);
        on_curve.insert(midpoint(a, b));
        if a.col == b.col {
            vertical_segments.push((a.col, a.row.min(b.row), a.row.max(b.row)));
        }
    }
    grid.cells()
        .filter(|cell| {
            if on_curve.contains(cell) {
                return false;
            }
            let crossings = vertical_segments
                .iter()
                .filter(|&&(col, lo, hi)| col > cell.col && lo <= cell.row && cell.row < hi)
                .count();
            crossings % 2 == 1
        })
        .collect()
}

/// Rule for picking the cycle the reversal involution acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleRule {
    /// The cycle containing the lexicographically smallest vertex. Stable
    /// under reversal even when cycles are not nested.
    LexMin,
    /// The cycle with the smallest enclosed region (ties broken
    /// lexicographically); coincides with the nesting order when all cycles
    /// surround the hole.
    Innermost,
}

/// Reverse the canonical cycle of the matching's web, exchanging matched and
/// unmatched edges along the corresponding alternating grid cycle. A
/// fixed-point-free involution on the matchings with cyclic webs.
pub fn reverse_canonical_cycle(spec: GridSpec, m: &Matching) -> Result<Matching> {
    reverse_cycle_with_rule(spec, m, CycleRule::LexMin)
}

pub fn reverse_cycle_with_rule(spec: GridSpec, m: &Matching, rule: CycleRule) -> Result<Matching> {
    let web = web_from_matching(spec, m)?;
    let cycles = find_cycles(&web);
    let chosen = match rule {
        CycleRule::LexMin => cycles.iter().min_by_key(|c| c.vertices[0]),
        CycleRule::Innermost => cycles
            .iter()
            .min_by_key(|c| (c.enclosed.len(), c.vertices[0])),
    }
    .ok_or(Error::NoCycle)?;

    let verts = &chosen.vertices;
    let mut dominoes: BTreeSet<Domino> = m.dominoes().clone();
    for i in 0..verts.len() {
        let w1 = verts[i];
        let w2 = verts[(i + 1) % verts.len()];
        let b = midpoint(w1, w2);
        let old = Domino::new(w1, b)?;
        if !dominoes.remove(&old) {
            return Err(Error::InvalidMatching(format!(
                "expected cycle domino {old} in the matching"
            )));
        }
        dominoes.insert(Domino::new(w2, b)?);
    }
    let reversed = Matching::new(dominoes, m.hole())?;
    debug_assert!(reversed.validate_for(spec).is_ok());
    Ok(reversed)
}

/// Reconstruct the unique near-perfect matching whose web is the given
/// spanning in-tree rooted at `hole`: arc dominoes are placed directly and
/// the residual region is completed by repeatedly matching forced
/// (degree-one) cells, which certifies uniqueness as it goes.
pub fn matching_from_tree(spec: GridSpec, hole: Cell, tree: &WebGraph) -> Result<Matching> {
    spec.require_odd_odd()?;
    spec.check_contains(hole)?;
    if tree.grid() != spec {
        return Err(Error::NotASpanningTree(format!(
            "web is on a {} grid, expected {}",
            tree.grid(),
            spec
        )));
    }
    if hole.white_parity() != Some(WhiteParity::Odd) {
        return Err(Error::NotASpanningTree(format!(
            "root {hole} is not an odd white cell"
        )));
    }

    // Roots and out-degrees: exactly the hole may lack an out-arc.
    let vertex_count = tree.arcs().len();
    for (&v, &out) in tree.arcs() {
        match out {
            None if v == hole => {}
            None => {
                return Err(Error::NotASpanningTree(format!(
                    "vertex {v} has out-degree zero but is not the root"
                )))
            }
            Some(_) => {}
        }
    }
    if tree.out(hole).is_some() {
        return Err(Error::NotASpanningTree(format!(
            "root {hole} must have out-degree zero"
        )));
    }
    // Every vertex must reach the root without revisiting (no cycles).
    for start in tree.vertices() {
        let mut cur = start;
        let mut steps = 0;
        while let Some(next) = tree.out(cur) {
            cur = next;
            steps += 1;
            if steps > vertex_count {
                return Err(Error::NotASpanningTree(format!(
                    "cycle reachable from {start}"
                )));
            }
        }
        if cur != hole {
            return Err(Error::NotASpanningTree(format!(
                "walk from {start} ends at {cur}, not the root"
            )));
        }
    }

    let mut dominoes = Vec::new();
    let mut covered = BTreeSet::new();
    for (&w1, &out) in tree.arcs() {
        let Some(w2) = out else { continue };
        let b = midpoint(w1, w2);
        let d = Domino::new(w1, b)?;
        for cell in d.cells() {
            if !covered.insert(cell) {
                return Err(Error::Overlap(cell));
            }
        }
        dominoes.push(d);
    }

    // Forced completion of the residual region (blacks not used as arc
    // midpoints plus all even white cells).
    let mut residual: BTreeSet<Cell> = spec
        .cells()
        .filter(|c| *c != hole && !covered.contains(c))
        .collect();
    while !residual.is_empty() {
        let mut forced = None;
        for &cell in &residual {
            let mut nbrs = spec.neighbors(cell).filter(|n| residual.contains(n));
            match (nbrs.next(), nbrs.next()) {
                (None, _) => return Err(Error::TreeCompletionFailed(cell)),
                (Some(only), None) => {
                    forced = Some((cell, only));
                    break;
                }
                _ => {}
            }
        }
        let Some((a, b)) = forced else {
            let stuck = *residual.iter().next().expect("residual is nonempty");
            return Err(Error::TreeCompletionFailed(stuck));
        };
        residual.remove(&a);
        residual.remove(&b);
        dominoes.push(Domino::new(a, b)?);
    }

    let matching = Matching::new(dominoes, Some(hole))?;
    matching.validate_for(spec)?;
    Ok(matching)
}

/// One white hole's record in a parity scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityEntry {
    pub hole: Cell,
    pub class: WhiteParity,
    pub count: BigCount,
    pub ok: bool,
}

/// Parity invariance scan: odd white holes all share the parity of the
/// spanning-tree count of the odd-white lattice, and even white holes have
/// even counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityScan {
    pub grid: GridSpec,
    pub tree_count: BigCount,
    pub entries: Vec<ParityEntry>,
    pub pass: bool,
}

pub fn scan_parity_invariance(spec: GridSpec) -> Result<ParityScan> {
    scan_parity_invariance_jobs(spec, 1)
}

pub fn scan_parity_invariance_jobs(spec: GridSpec, jobs: usize) -> Result<ParityScan> {
    spec.require_odd_odd()?;
    let census = count_all_holes_jobs(spec, jobs)?;
    let (wr, wc) = ((spec.rows() + 1) / 2, (spec.cols() + 1) / 2);
    let tree_count = spanning_tree_count(wr, wc)?.value;
    let tree_odd = tree_count.is_odd();
    let mut entries = Vec::new();
    let mut pass = true;
    for (hole, count) in &census.per_hole {
        let class = hole.white_parity().expect("census holds white holes only");
        let ok = match class {
            WhiteParity::Odd => count.is_odd() == tree_odd,
            WhiteParity::Even => count.is_even(),
        };
        pass &= ok;
        entries.push(ParityEntry {
            hole: *hole,
            class,
            count: count.clone(),
            ok,
        });
    }
    Ok(ParityScan {
        grid: spec,
        tree_count,
        entries,
        pass,
    })
}

/// One white hole's record in a mod-4 scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mod4Entry {
    pub hole: Cell,
    pub class: WhiteParity,
    pub count: BigCount,
    pub mod4: u8,
}

/// Residues mod 4 per white hole, with the observations the mod-4
/// conjectures speak to: whether the odd-white residue is uniform and
/// whether every even-white count is divisible by 4. `exemption` marks
/// grids with `r = c = 3 (mod 4)`, where divisibility may fail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mod4Scan {
    pub grid: GridSpec,
    pub entries: Vec<Mod4Entry>,
    pub odd_uniform: bool,
    pub odd_residue: Option<u8>,
    pub even_divisible: bool,
    pub exemption: bool,
}

pub fn scan_mod4(spec: GridSpec) -> Result<Mod4Scan> {
    scan_mod4_jobs(spec, 1)
}

pub fn scan_mod4_jobs(spec: GridSpec, jobs: usize) -> Result<Mod4Scan> {
    spec.require_odd_odd()?;
    let census = count_all_holes_jobs(spec, jobs)?;
    let mut entries = Vec::new();
    let mut odd_residue: Option<u8> = None;
    let mut odd_uniform = true;
    let mut even_divisible = true;
    for (hole, count) in &census.per_hole {
        let class = hole.white_parity().expect("census holds white holes only");
        let mod4 = (count % BigCount::from(4u32))
            .to_u8()
            .expect("residue fits in u8");
        match class {
            WhiteParity::Odd => match odd_residue {
                None => odd_residue = Some(mod4),
                Some(r) if r != mod4 => odd_uniform = false,
                _ => {}
            },
            WhiteParity::Even => {
                if mod4 != 0 {
                    even_divisible = false;
                }
            }
        }
        entries.push(Mod4Entry {
            hole: *hole,
            class,
            count: count.clone(),
            mod4,
        });
    }
    Ok(Mod4Scan {
        grid: spec,
        entries,
        odd_uniform,
        odd_residue,
        even_divisible,
        exemption: spec.rows() % 4 == 3 && spec.cols() % 4 == 3,
    })
}
