//! Lattice geometry: grid dimensions, checkerboard coloring, hole
//! classification, symmetry orbits and closed-form parity predicates.
//!
//! Coordinates are 1-based with `(1,1)` the bottom-left corner; rows grow
//! upward and columns grow to the right. All serialization uses this
//! convention.

use std::fmt;
use std::str::FromStr;

use num_integer::gcd;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Checkerboard color of a cell, with the convention that `(1,1)` (and hence
/// every corner of an odd-by-odd grid) is white.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    White,
    Black,
}

/// Parity class of a white cell: `Odd` when both coordinates are odd, `Even`
/// when both are even. White cells on the boundary of an odd-by-odd grid are
/// always odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WhiteParity {
    Odd,
    Even,
}

impl fmt::Display for WhiteParity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WhiteParity::Odd => "odd",
            WhiteParity::Even => "even",
        })
    }
}

/// Position of a hole on an odd square, up to the square's symmetry group.
///
/// The four classes are mutually exclusive and exhaustive for white cells,
/// with orbit sizes 1, 4, 4 and 8 respectively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HoleClass {
    Center,
    DiagonalNonCenter,
    AxisNonCenter,
    Generic,
}

impl HoleClass {
    /// Size of the symmetry orbit of any hole in this class.
    pub fn orbit_size(self) -> usize {
        match self {
            HoleClass::Center => 1,
            HoleClass::DiagonalNonCenter | HoleClass::AxisNonCenter => 4,
            HoleClass::Generic => 8,
        }
    }
}

impl fmt::Display for HoleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HoleClass::Center => "center",
            HoleClass::DiagonalNonCenter => "diagonal_non_center",
            HoleClass::AxisNonCenter => "axis_non_center",
            HoleClass::Generic => "generic",
        })
    }
}

/// Parity verdict for a single-hole count: `Zero` signals a black hole, for
/// which the count vanishes by the coloring argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HoleParity {
    Odd,
    Even,
    Zero,
}

/// A 1-based lattice coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }

    pub fn color(self) -> Color {
        if (self.row + self.col) % 2 == 0 {
            Color::White
        } else {
            Color::Black
        }
    }

    pub fn is_white(self) -> bool {
        self.color() == Color::White
    }

    /// White-parity class, or `None` for black cells.
    pub fn white_parity(self) -> Option<WhiteParity> {
        match (self.row % 2, self.col % 2) {
            (1, 1) => Some(WhiteParity::Odd),
            (0, 0) => Some(WhiteParity::Even),
            _ => None,
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.row, self.col)
    }
}

impl FromStr for Cell {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseCell(s.to_owned());
        let (r, c) = s.split_once(',').ok_or_else(bad)?;
        let row: usize = r.trim().parse().map_err(|_| bad())?;
        let col: usize = c.trim().parse().map_err(|_| bad())?;
        if row == 0 || col == 0 {
            return Err(bad());
        }
        Ok(Cell::new(row, col))
    }
}

/// Rectangle dimensions; the universe every operation runs in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridSpec {
    rows: usize,
    cols: usize,
}

impl GridSpec {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyGrid);
        }
        Ok(Self { rows, cols })
    }

    pub fn square(n: usize) -> Result<Self> {
        Self::new(n, n)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn area(&self) -> usize {
        self.rows * self.cols
    }

    pub fn odd_odd(&self) -> bool {
        self.rows % 2 == 1 && self.cols % 2 == 1
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// `k` with side `2k+1`, for odd squares.
    pub fn square_k(&self) -> Option<usize> {
        (self.is_square() && self.odd_odd()).then(|| (self.rows - 1) / 2)
    }

    /// The central cell of an odd-by-odd grid.
    pub fn center(&self) -> Option<Cell> {
        self.odd_odd()
            .then(|| Cell::new((self.rows + 1) / 2, (self.cols + 1) / 2))
    }

    pub fn contains(&self, cell: Cell) -> bool {
        (1..=self.rows).contains(&cell.row) && (1..=self.cols).contains(&cell.col)
    }

    pub fn check_contains(&self, cell: Cell) -> Result<()> {
        if self.contains(cell) {
            Ok(())
        } else {
            Err(Error::OutOfBounds {
                cell,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn require_odd_odd(&self) -> Result<()> {
        if self.odd_odd() {
            Ok(())
        } else {
            Err(Error::NotOddOdd(self.rows, self.cols))
        }
    }

    /// All cells in row-major order from `(1,1)`.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        let cols = self.cols;
        (1..=self.rows).flat_map(move |r| (1..=cols).map(move |c| Cell::new(r, c)))
    }

    pub fn white_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells().filter(|cell| cell.is_white())
    }

    /// Odd white cells, i.e. both coordinates odd.
    pub fn odd_white_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        let cols = self.cols;
        (1..=self.rows)
            .step_by(2)
            .flat_map(move |r| (1..=cols).step_by(2).map(move |c| Cell::new(r, c)))
    }

    /// In-bounds orthogonal neighbors of `cell`.
    pub fn neighbors(&self, cell: Cell) -> impl Iterator<Item = Cell> + '_ {
        let (r, c) = (cell.row, cell.col);
        let candidates = [
            (r.wrapping_sub(1), c),
            (r + 1, c),
            (r, c.wrapping_sub(1)),
            (r, c + 1),
        ];
        let spec = *self;
        candidates
            .into_iter()
            .map(|(row, col)| Cell::new(row, col))
            .filter(move |n| spec.contains(*n))
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

/// Number of odd white cells of an odd-by-odd grid: `(r+1)(c+1)/4`.
pub fn odd_white_count(spec: GridSpec) -> usize {
    (spec.rows() + 1) * (spec.cols() + 1) / 4
}

/// Number of even white cells of an odd-by-odd grid: `(r-1)(c-1)/4`.
pub fn even_white_count(spec: GridSpec) -> usize {
    (spec.rows() - 1) * (spec.cols() - 1) / 4
}

/// Classify a white hole of an odd square by its position relative to the
/// square's symmetry axes.
pub fn classify_hole(spec: GridSpec, h: Cell) -> Result<HoleClass> {
    if !spec.is_square() || !spec.odd_odd() {
        return Err(Error::NotOddSquare(spec.rows(), spec.cols()));
    }
    spec.check_contains(h)?;
    if !h.is_white() {
        return Err(Error::NotWhite(h));
    }
    let n = spec.rows();
    let mid = (n + 1) / 2;
    if h.row == mid && h.col == mid {
        return Ok(HoleClass::Center);
    }
    if h.row == h.col || h.row + h.col == n + 1 {
        return Ok(HoleClass::DiagonalNonCenter);
    }
    if h.row == mid || h.col == mid {
        return Ok(HoleClass::AxisNonCenter);
    }
    Ok(HoleClass::Generic)
}

/// Images of `h` under the grid's full symmetry group: the dihedral group of
/// order 8 for squares, order 4 for proper rectangles. Sorted and deduplicated.
pub fn hole_orbit(spec: GridSpec, h: Cell) -> Result<Vec<Cell>> {
    spec.check_contains(h)?;
    let fr = spec.rows() + 1 - h.row;
    let fc = spec.cols() + 1 - h.col;
    let mut orbit = vec![
        Cell::new(h.row, h.col),
        Cell::new(fr, h.col),
        Cell::new(h.row, fc),
        Cell::new(fr, fc),
    ];
    if spec.is_square() {
        orbit.extend([
            Cell::new(h.col, h.row),
            Cell::new(fc, h.row),
            Cell::new(h.col, fr),
            Cell::new(fc, fr),
        ]);
    }
    orbit.sort_unstable();
    orbit.dedup();
    Ok(orbit)
}

/// Partition the white cells into symmetry orbits. Entries are
/// `(representative, members)` with the representative the minimal member,
/// sorted by representative.
pub fn white_orbits(spec: GridSpec) -> Vec<(Cell, Vec<Cell>)> {
    let mut orbits = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for cell in spec.white_cells() {
        if seen.contains(&cell) {
            continue;
        }
        let orbit = hole_orbit(spec, cell).expect("white cell is in bounds");
        seen.extend(orbit.iter().copied());
        orbits.push((orbit[0], orbit));
    }
    orbits
}

/// Parity of the count with hole `h`, by the closed-form criterion: odd iff
/// (i) `r` or `c` is 1 mod 4, (ii) `gcd(r+1, c+1) = 2`, and (iii) `h` is an
/// odd white cell. Black holes yield `Zero` (the count vanishes).
pub fn hole_parity(spec: GridSpec, h: Cell) -> Result<HoleParity> {
    spec.require_odd_odd()?;
    spec.check_contains(h)?;
    if !h.is_white() {
        return Ok(HoleParity::Zero);
    }
    let (r, c) = (spec.rows(), spec.cols());
    let odd = (r % 4 == 1 || c % 4 == 1)
        && gcd(r + 1, c + 1) == 2
        && h.white_parity() == Some(WhiteParity::Odd);
    Ok(if odd {
        HoleParity::Odd
    } else {
        HoleParity::Even
    })
}

/// True iff the count with hole `h` is odd.
pub fn parity_predicate_hole(spec: GridSpec, h: Cell) -> Result<bool> {
    Ok(hole_parity(spec, h)? == HoleParity::Odd)
}

/// True iff the total count over all holes is odd: both `r` and `c`
/// congruent to 1 mod 4 and `gcd(r+1, c+1) = 2`.
pub fn parity_predicate_total(spec: GridSpec) -> Result<bool> {
    spec.require_odd_odd()?;
    let (r, c) = (spec.rows(), spec.cols());
    Ok(r % 4 == 1 && c % 4 == 1 && gcd(r + 1, c + 1) == 2)
}
