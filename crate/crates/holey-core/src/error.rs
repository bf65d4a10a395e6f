use thiserror::Error;

use crate::grid::Cell;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grid dimensions must be at least 1x1")]
    EmptyGrid,
    #[error("cell {cell} is outside the {rows}x{cols} grid")]
    OutOfBounds {
        cell: Cell,
        rows: usize,
        cols: usize,
    },
    #[error("operation requires an odd-by-odd grid, got {0}x{1}")]
    NotOddOdd(usize, usize),
    #[error("operation requires an odd square grid, got {0}x{1}")]
    NotOddSquare(usize, usize),
    #[error("cell {0} is not white")]
    NotWhite(Cell),
    #[error("cells {0} and {1} are not orthogonally adjacent")]
    NotAdjacent(Cell, Cell),
    #[error("cell {0} is covered more than once")]
    Overlap(Cell),
    #[error("cell {0} is neither covered nor the hole")]
    Uncovered(Cell),
    #[error("matching has no hole")]
    MissingHole,
    #[error("expected hole {expected}, found {found}")]
    HoleMismatch { expected: Cell, found: Cell },
    #[error("diagonal reflection requires a square grid, got {0}x{1}")]
    DiagonalOnRectangle(usize, usize),
    #[error("hole {0} is fixed by the reflection axis")]
    HoleOnAxis(Cell),
    #[error("reflection-structure verification requires a diagonal axis")]
    NonDiagonalAxis,
    #[error("enumeration aborted after {0} matchings")]
    EnumerationCap(u64),
    #[error("{0}x{1} grid is too large for exhaustive enumeration")]
    EnumerationTooLarge(usize, usize),
    #[error("profile width {width} exceeds the limit {limit}; set HOLEY_MAX_PROFILE to raise it")]
    ProfileTooWide { width: usize, limit: usize },
    #[error("Laplacian minor side {side} exceeds the limit {limit}")]
    MatrixTooLarge { side: usize, limit: usize },
    #[error("construction requires r and c congruent to 3 mod 4, got {0}x{1}")]
    CaseAPrecondition(usize, usize),
    #[error(
        "construction requires odd f > 1 dividing gcd(r+1, c+1); got f = {f} for {rows}x{cols}"
    )]
    CaseBPrecondition { rows: usize, cols: usize, f: usize },
    #[error("product formula value {value:e} is ambiguous (distance {distance:e} from the nearest integer); higher precision required")]
    RoundingAmbiguous { value: f64, distance: f64 },
    #[error("hole {0} is not the middle cell of the first row")]
    NotFoldHole(Cell),
    #[error("web has no directed cycle")]
    NoCycle,
    #[error("not a spanning in-tree: {0}")]
    NotASpanningTree(String),
    #[error("tree completion failed at cell {0}")]
    TreeCompletionFailed(Cell),
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("invalid cell {0:?}: expected \"row,col\" with positive integers")]
    ParseCell(String),
    #[error("invalid matching line {0:?}")]
    ParseMatching(String),
}
