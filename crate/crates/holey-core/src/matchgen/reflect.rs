//! Axis reflections of matchings and the union-multigraph decomposition
//! behind the divisibility arguments: the union of a matching with its
//! mirror image splits into alternating cycles plus one path between the
//! two holes, and grouping matchings by that data yields fibers of size
//! exactly `2^k` on the odd square.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{Cell, GridSpec};
use crate::matchgen::{enumerate_near_perfect, Domino, Matching, ENUMERATION_CAP};

/// A reflection axis of the rectangle. Diagonal axes require a square grid;
/// `Vertical` mirrors columns and `Horizontal` mirrors rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    MainDiagonal,
    AntiDiagonal,
    Vertical,
    Horizontal,
}

impl Axis {
    pub fn requires_square(self) -> bool {
        matches!(self, Axis::MainDiagonal | Axis::AntiDiagonal)
    }

    pub fn is_diagonal(self) -> bool {
        self.requires_square()
    }

    fn validate(self, spec: GridSpec) -> Result<()> {
        if self.requires_square() && !spec.is_square() {
            return Err(Error::DiagonalOnRectangle(spec.rows(), spec.cols()));
        }
        Ok(())
    }

    /// Image of a cell, assuming the axis is valid for `spec`.
    pub(crate) fn map(self, spec: GridSpec, cell: Cell) -> Cell {
        let (r, c) = (spec.rows(), spec.cols());
        match self {
            Axis::MainDiagonal => Cell::new(cell.col, cell.row),
            Axis::AntiDiagonal => Cell::new(r + 1 - cell.col, c + 1 - cell.row),
            Axis::Vertical => Cell::new(cell.row, c + 1 - cell.col),
            Axis::Horizontal => Cell::new(r + 1 - cell.row, cell.col),
        }
    }

    /// Whether `cell` lies on the axis line.
    pub fn contains(self, spec: GridSpec, cell: Cell) -> bool {
        match self {
            Axis::MainDiagonal => cell.row == cell.col,
            Axis::AntiDiagonal => cell.row + cell.col == spec.rows() + 1,
            Axis::Vertical => spec.cols() % 2 == 1 && cell.col == (spec.cols() + 1) / 2,
            Axis::Horizontal => spec.rows() % 2 == 1 && cell.row == (spec.rows() + 1) / 2,
        }
    }
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Axis::MainDiagonal => "main_diagonal",
            Axis::AntiDiagonal => "anti_diagonal",
            Axis::Vertical => "vertical",
            Axis::Horizontal => "horizontal",
        })
    }
}

/// Mirror image of a cell across an axis of the grid.
pub fn reflect_cell(spec: GridSpec, cell: Cell, axis: Axis) -> Result<Cell> {
    axis.validate(spec)?;
    spec.check_contains(cell)?;
    Ok(axis.map(spec, cell))
}

/// Mirror image of a matching; an involution that maps the hole to the
/// mirrored hole.
pub fn reflect_matching(spec: GridSpec, m: &Matching, axis: Axis) -> Result<Matching> {
    axis.validate(spec)?;
    for &d in m.dominoes() {
        spec.check_contains(d.a())?;
        spec.check_contains(d.b())?;
    }
    if let Some(h) = m.hole() {
        spec.check_contains(h)?;
    }
    let hole = m.hole().map(|h| axis.map(spec, h));
    let dominoes = m
        .dominoes()
        .iter()
        .map(|d| d.map(|cell| axis.map(spec, cell)))
        .collect::<Result<Vec<_>>>()?;
    Matching::new(dominoes, hole)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Cycle,
    Path,
}

/// One component of the union multigraph: its cells in traversal order, how
/// many of them lie on the chosen axis, and whether the component is
/// axis-symmetric as a cell set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionComponent {
    pub kind: ComponentKind,
    pub cells: Vec<Cell>,
    pub axis_cells: usize,
    pub symmetric: bool,
}

/// Decomposition of `M ∪ M'` into alternating cycles and the hole-to-hole
/// path. Doubled edges (the same domino in both matchings) appear as genuine
/// length-2 cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionDecomposition {
    pub components: Vec<UnionComponent>,
}

impl UnionDecomposition {
    pub fn path(&self) -> Option<&UnionComponent> {
        self.components
            .iter()
            .find(|c| c.kind == ComponentKind::Path)
    }

    pub fn cycles(&self) -> impl Iterator<Item = &UnionComponent> {
        self.components
            .iter()
            .filter(|c| c.kind == ComponentKind::Cycle)
    }
}

/// Decompose the spanning multigraph with edge set `M ∪ M'`, where the holes
/// of the two matchings are mirror images of each other across `axis`.
pub fn union_decompose(
    spec: GridSpec,
    m: &Matching,
    m_prime: &Matching,
    axis: Axis,
) -> Result<UnionDecomposition> {
    axis.validate(spec)?;
    m.validate_for(spec)?;
    m_prime.validate_for(spec)?;
    let h = m.hole().ok_or(Error::MissingHole)?;
    let h_prime = m_prime.hole().ok_or(Error::MissingHole)?;
    let expected = axis.map(spec, h);
    if h_prime != expected {
        return Err(Error::HoleMismatch {
            expected,
            found: h_prime,
        });
    }
    if h == h_prime {
        return Err(Error::HoleOnAxis(h));
    }

    // Edge instances, deterministically ordered; a domino present in both
    // matchings contributes two parallel instances.
    let mut edges: Vec<Domino> = Vec::with_capacity(m.len() + m_prime.len());
    edges.extend(m.dominoes().iter().copied());
    edges.extend(m_prime.dominoes().iter().copied());
    edges.sort_unstable();
    let mut adjacency: BTreeMap<Cell, Vec<usize>> = BTreeMap::new();
    for (id, d) in edges.iter().enumerate() {
        for cell in d.cells() {
            adjacency.entry(cell).or_default().push(id);
        }
    }
    let mut used = vec![false; edges.len()];

    let walk = |start: Cell, used: &mut Vec<bool>| -> Vec<Cell> {
        let mut cells = vec![start];
        let mut cur = start;
        while let Some(&edge) = adjacency[&cur].iter().find(|&&e| !used[e]) {
            used[edge] = true;
            cur = edges[edge].other(cur).expect("edge is incident to cur");
            if cur == start {
                break;
            }
            cells.push(cur);
        }
        cells
    };

    let mut components = Vec::new();
    let path_cells = walk(h, &mut used);
    components.push(make_component(spec, axis, ComponentKind::Path, path_cells));
    for (&cell, incident) in &adjacency {
        if incident.iter().any(|&e| !used[e]) {
            let cells = walk(cell, &mut used);
            components.push(make_component(spec, axis, ComponentKind::Cycle, cells));
        }
    }
    Ok(UnionDecomposition { components })
}

fn make_component(
    spec: GridSpec,
    axis: Axis,
    kind: ComponentKind,
    cells: Vec<Cell>,
) -> UnionComponent {
    let axis_cells = cells.iter().filter(|&&c| axis.contains(spec, c)).count();
    let mirrored: std::collections::BTreeSet<Cell> =
        cells.iter().map(|&c| axis.map(spec, c)).collect();
    let original: std::collections::BTreeSet<Cell> = cells.iter().copied().collect();
    UnionComponent {
        kind,
        cells,
        axis_cells,
        symmetric: mirrored == original,
    }
}

/// Exhaustive verification of the reflection argument for one hole of an odd
/// square: every axis-meeting cycle is symmetric and meets the axis exactly
/// twice, the path meets it exactly once, the number of axis-meeting cycles
/// is `k` for every matching, and the fibers of `M -> (S, X)` all have size
/// `2^k`.
#[derive(Debug, Clone)]
pub struct ReflectionReport {
    pub matchings: u64,
    pub k: usize,
    pub expected_fiber: u64,
    /// fiber size -> number of fibers of that size
    pub fiber_sizes: BTreeMap<u64, u64>,
    /// observed axis-meeting cycle count -> number of matchings
    pub axis_cycle_counts: BTreeMap<usize, u64>,
    pub asymmetric_axis_cycles: u64,
    pub axis_cycles_bad_meet: u64,
    pub paths_bad_meet: u64,
    pub pass: bool,
}

pub fn verify_reflection_structure(
    spec: GridSpec,
    hole: Cell,
    axis: Axis,
) -> Result<ReflectionReport> {
    if !spec.is_square() || !spec.odd_odd() {
        return Err(Error::NotOddSquare(spec.rows(), spec.cols()));
    }
    if !axis.is_diagonal() {
        return Err(Error::NonDiagonalAxis);
    }
    spec.check_contains(hole)?;
    if axis.contains(spec, hole) {
        return Err(Error::HoleOnAxis(hole));
    }
    let k = spec.square_k().expect("odd square");
    let expected_fiber = 1u64 << k;

    // Key: the union multigraph S as a domino multiset, plus X, the edges of
    // M that avoid every axis-meeting component.
    type FiberKey = (Vec<(Domino, u8)>, Vec<Domino>);
    let mut fibers: BTreeMap<FiberKey, u64> = BTreeMap::new();
    let mut report = ReflectionReport {
        matchings: 0,
        k,
        expected_fiber,
        fiber_sizes: BTreeMap::new(),
        axis_cycle_counts: BTreeMap::new(),
        asymmetric_axis_cycles: 0,
        axis_cycles_bad_meet: 0,
        paths_bad_meet: 0,
        pass: false,
    };

    for m in enumerate_near_perfect(spec, hole)? {
        report.matchings += 1;
        if report.matchings > ENUMERATION_CAP {
            return Err(Error::EnumerationCap(ENUMERATION_CAP));
        }
        let m_prime = reflect_matching(spec, &m, axis)?;
        let decomp = union_decompose(spec, &m, &m_prime, axis)?;

        let mut axis_cycles = 0usize;
        let mut component_of: BTreeMap<Cell, usize> = BTreeMap::new();
        let mut component_meets = Vec::with_capacity(decomp.components.len());
        for (i, comp) in decomp.components.iter().enumerate() {
            for &cell in &comp.cells {
                component_of.insert(cell, i);
            }
            component_meets.push(comp.axis_cells > 0);
            match comp.kind {
                ComponentKind::Cycle if comp.axis_cells > 0 => {
                    axis_cycles += 1;
                    if !comp.symmetric {
                        report.asymmetric_axis_cycles += 1;
                    }
                    if comp.axis_cells != 2 {
                        report.axis_cycles_bad_meet += 1;
                    }
                }
                ComponentKind::Path if comp.axis_cells != 1 => {
                    report.paths_bad_meet += 1;
                }
                _ => {}
            }
        }
        *report.axis_cycle_counts.entry(axis_cycles).or_insert(0) += 1;

        let mut union_multiset: BTreeMap<Domino, u8> = BTreeMap::new();
        for &d in m.dominoes().iter().chain(m_prime.dominoes()) {
            *union_multiset.entry(d).or_insert(0) += 1;
        }
        let s_key: Vec<(Domino, u8)> = union_multiset.into_iter().collect();
        let x_key: Vec<Domino> = m
            .dominoes()
            .iter()
            .copied()
            .filter(|d| !component_meets[component_of[&d.a()]])
            .collect();
        *fibers.entry((s_key, x_key)).or_insert(0) += 1;
    }

    for &size in fibers.values() {
        *report.fiber_sizes.entry(size).or_insert(0) += 1;
    }
    report.pass = report.asymmetric_axis_cycles == 0
        && report.axis_cycles_bad_meet == 0
        && report.paths_bad_meet == 0
        && report.axis_cycle_counts.keys().all(|&n| n == k)
        && report.fiber_sizes.keys().all(|&s| s == expected_fiber);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize) -> GridSpec {
        GridSpec::square(n).unwrap()
    }

    fn cell(r: usize, c: usize) -> Cell {
        Cell::new(r, c)
    }

    fn dom(a: (usize, usize), b: (usize, usize)) -> Domino {
        Domino::new(cell(a.0, a.1), cell(b.0, b.1)).unwrap()
    }

    #[test]
    fn reflect_matching_example() {
        // Transposing each domino of a 3x3 matching with hole (1,1).
        let m = Matching::new(
            [
                dom((1, 2), (1, 3)),
                dom((2, 1), (3, 1)),
                dom((2, 2), (2, 3)),
                dom((3, 2), (3, 3)),
            ],
            Some(cell(1, 1)),
        )
        .unwrap();
        let image = reflect_matching(g(3), &m, Axis::MainDiagonal).unwrap();
        let expected = Matching::new(
            [
                dom((2, 1), (3, 1)),
                dom((1, 2), (1, 3)),
                dom((2, 2), (3, 2)),
                dom((2, 3), (3, 3)),
            ],
            Some(cell(1, 1)),
        )
        .unwrap();
        assert_eq!(image, expected);
        // involution
        assert_eq!(
            reflect_matching(g(3), &image, Axis::MainDiagonal).unwrap(),
            m
        );
    }

    #[test]
    fn reflect_hole_coordinates() {
        assert_eq!(
            reflect_cell(g(3), cell(1, 3), Axis::MainDiagonal).unwrap(),
            cell(3, 1)
        );
        assert_eq!(
            reflect_cell(g(5), cell(1, 1), Axis::AntiDiagonal).unwrap(),
            cell(5, 5)
        );
        assert_eq!(
            reflect_cell(GridSpec::new(3, 5).unwrap(), cell(1, 2), Axis::Vertical).unwrap(),
            cell(1, 4)
        );
        assert!(
            reflect_cell(GridSpec::new(3, 5).unwrap(), cell(1, 1), Axis::MainDiagonal).is_err()
        );
    }

    #[test]
    fn reflection_is_involution_on_all_matchings() {
        let spec = g(3);
        for axis in [
            Axis::MainDiagonal,
            Axis::AntiDiagonal,
            Axis::Vertical,
            Axis::Horizontal,
        ] {
            for m in enumerate_near_perfect(spec, cell(1, 1)).unwrap() {
                let image = reflect_matching(spec, &m, axis).unwrap();
                assert_eq!(reflect_matching(spec, &image, axis).unwrap(), m);
            }
        }
    }

    #[test]
    fn union_degrees_and_path_endpoints() {
        let spec = g(3);
        let h = cell(1, 3);
        for m in enumerate_near_perfect(spec, h).unwrap() {
            let m_prime = reflect_matching(spec, &m, Axis::MainDiagonal).unwrap();
            let d = union_decompose(spec, &m, &m_prime, Axis::MainDiagonal).unwrap();
            // every cell in exactly one component
            let mut all: Vec<Cell> = d.components.iter().flat_map(|c| c.cells.clone()).collect();
            all.sort_unstable();
            let total: Vec<Cell> = spec.cells().collect();
            assert_eq!(all, total);
            let path = d.path().unwrap();
            assert_eq!(path.cells.first(), Some(&h));
            assert_eq!(path.cells.last(), Some(&cell(3, 1)));
        }
    }

    #[test]
    fn doubled_edges_form_two_cycles() {
        // Two matchings of the 3x3 grid with anti-diagonal holes (1,1) and
        // (3,3) sharing the dominoes (1,2)-(1,3) and (3,1)-(3,2): the shared
        // dominoes must show up as genuine length-2 cycles.
        let spec = g(3);
        let m = Matching::new(
            [
                dom((1, 2), (1, 3)),
                dom((2, 1), (2, 2)),
                dom((3, 1), (3, 2)),
                dom((2, 3), (3, 3)),
            ],
            Some(cell(1, 1)),
        )
        .unwrap();
        let m_prime = Matching::new(
            [
                dom((1, 2), (1, 3)),
                dom((1, 1), (2, 1)),
                dom((2, 2), (2, 3)),
                dom((3, 1), (3, 2)),
            ],
            Some(cell(3, 3)),
        )
        .unwrap();
        let d = union_decompose(spec, &m, &m_prime, Axis::AntiDiagonal).unwrap();
        let two_cycles: Vec<_> = d.cycles().filter(|c| c.cells.len() == 2).collect();
        assert_eq!(two_cycles.len(), 2);
    }

    #[test]
    fn union_rejects_fixed_hole() {
        let spec = g(3);
        let h = cell(2, 2);
        let m = enumerate_near_perfect(spec, h).unwrap().next().unwrap();
        let m_prime = reflect_matching(spec, &m, Axis::MainDiagonal).unwrap();
        assert_eq!(
            union_decompose(spec, &m, &m_prime, Axis::MainDiagonal),
            Err(Error::HoleOnAxis(h))
        );
    }

    #[test]
    fn five_by_five_cycle_and_path_meets() {
        // k = 2 cycles meet the main diagonal and the path meets it once,
        // for every matching with hole (1,3).
        let spec = g(5);
        let h = cell(1, 3);
        for m in enumerate_near_perfect(spec, h).unwrap() {
            let m_prime = reflect_matching(spec, &m, Axis::MainDiagonal).unwrap();
            let d = union_decompose(spec, &m, &m_prime, Axis::MainDiagonal).unwrap();
            let meeting: Vec<_> = d.cycles().filter(|c| c.axis_cells > 0).collect();
            assert_eq!(meeting.len(), 2);
            assert_eq!(d.path().unwrap().axis_cells, 1);
        }
    }

    #[test]
    fn three_by_three_single_meeting_cycle() {
        let spec = g(3);
        for m in enumerate_near_perfect(spec, cell(1, 3)).unwrap() {
            let m_prime = reflect_matching(spec, &m, Axis::MainDiagonal).unwrap();
            let d = union_decompose(spec, &m, &m_prime, Axis::MainDiagonal).unwrap();
            assert_eq!(d.cycles().filter(|c| c.axis_cells > 0).count(), 1);
        }
    }

    #[test]
    fn reflection_structure_3x3() {
        let report = verify_reflection_structure(g(3), cell(1, 3), Axis::MainDiagonal).unwrap();
        assert!(report.pass);
        assert_eq!(report.matchings, 4);
        assert_eq!(report.fiber_sizes, BTreeMap::from([(2, 2)]));
    }

    #[test]
    fn reflection_structure_5x5() {
        let report = verify_reflection_structure(g(5), cell(1, 3), Axis::MainDiagonal).unwrap();
        assert!(report.pass);
        assert_eq!(
            report.fiber_sizes.keys().copied().collect::<Vec<_>>(),
            vec![4]
        );
        let report = verify_reflection_structure(g(5), cell(1, 1), Axis::AntiDiagonal).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn reflection_structure_rejects_hole_on_axis() {
        assert!(matches!(
            verify_reflection_structure(g(3), cell(1, 1), Axis::MainDiagonal),
            Err(Error::HoleOnAxis(_))
        ));
    }
}
