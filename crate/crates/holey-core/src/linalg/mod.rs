//! Exact linear algebra: evenness certificates over GF(2), spanning-tree
//! counts over the integers, and the product-formula cross-check.
//!
//! A certificate here is a nonempty vertex set in which every vertex of the
//! graph has an even number of neighbors; one exists if and only if the
//! perfect-matching count is even. Both closed-form constructions below
//! produce all-black sets, so they remain certificates after removing any
//! white cells.

mod gf2;
mod kasteleyn;
mod tree;

pub use kasteleyn::kasteleyn_count;
pub use tree::{spanning_tree_count, TreeCount, MAX_TREE_SIDE};

use std::collections::BTreeSet;

use num_integer::gcd;

use crate::error::{Error, Result};
use crate::grid::{Cell, GridSpec};

/// A nonempty evenness certificate, optionally relative to a grid with one
/// cell removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateSet {
    pub cells: BTreeSet<Cell>,
    pub excluded: Option<Cell>,
}

/// Closed-form certificate for `r = c = 3 (mod 4)`: the four neighbors of
/// every cell with both coordinates 2 mod 4. All members are black, so the
/// set stays a certificate after any white cell is removed.
pub fn construct_certificate_case_a(rows: usize, cols: usize) -> Result<CertificateSet> {
    if rows % 4 != 3 || cols % 4 != 3 {
        return Err(Error::CaseAPrecondition(rows, cols));
    }
    let mut cells = BTreeSet::new();
    for i in (2..rows).step_by(4) {
        for j in (2..cols).step_by(4) {
            cells.insert(Cell::new(i + 1, j));
            cells.insert(Cell::new(i - 1, j));
            cells.insert(Cell::new(i, j - 1));
            cells.insert(Cell::new(i, j + 1));
        }
    }
    Ok(CertificateSet {
        cells,
        excluded: None,
    })
}

/// Closed-form certificate when some odd `f > 1` divides `gcd(r+1, c+1)`:
/// partition the grid into `(2f-1) x (2f-1)` blocks separated by single
/// empty rows and columns (block centers at `f, 3f, 5f, ...`), and take in
/// each block the `4(f-1)` cells at Manhattan distance `f` from its center.
pub fn construct_certificate_case_b(rows: usize, cols: usize, f: usize) -> Result<CertificateSet> {
    let spec = GridSpec::new(rows, cols)?;
    spec.require_odd_odd()?;
    if f % 2 == 0 || f <= 1 || gcd(rows + 1, cols + 1) % f != 0 {
        return Err(Error::CaseBPrecondition { rows, cols, f });
    }
    let mut cells = BTreeSet::new();
    let blocks_down = (rows + 1) / (2 * f);
    let blocks_across = (cols + 1) / (2 * f);
    for bi in 0..blocks_down {
        for bj in 0..blocks_across {
            let center = Cell::new(f * (2 * bi + 1), f * (2 * bj + 1));
            for dr in 1..f {
                let dc = f - dr;
                cells.insert(Cell::new(center.row + dr, center.col + dc));
                cells.insert(Cell::new(center.row + dr, center.col - dc));
                cells.insert(Cell::new(center.row - dr, center.col + dc));
                cells.insert(Cell::new(center.row - dr, center.col - dc));
            }
        }
    }
    Ok(CertificateSet {
        cells,
        excluded: None,
    })
}

/// True iff `cert` is nonempty, within bounds, avoids the removed cell, and
/// every remaining vertex has an even number of neighbors in it.
pub fn verify_certificate(spec: GridSpec, removed: Option<Cell>, cert: &CertificateSet) -> bool {
    if cert.cells.is_empty() {
        return false;
    }
    for &cell in &cert.cells {
        if !spec.contains(cell) || Some(cell) == removed {
            return false;
        }
    }
    for v in spec.cells() {
        if Some(v) == removed {
            continue;
        }
        let in_set = spec
            .neighbors(v)
            .filter(|n| Some(*n) != removed && cert.cells.contains(n))
            .count();
        if in_set % 2 == 1 {
            return false;
        }
    }
    true
}

/// Search for a certificate of the grid minus `removed`: a nonzero vector in
/// the GF(2) nullspace of the adjacency matrix. `None` means the nullspace
/// is trivial, i.e. the matching count is odd.
pub fn find_certificate(spec: GridSpec, removed: Option<Cell>) -> Result<Option<CertificateSet>> {
    if let Some(cell) = removed {
        spec.check_contains(cell)?;
    }
    let vertices: Vec<Cell> = spec.cells().filter(|&c| Some(c) != removed).collect();
    let index: std::collections::BTreeMap<Cell, usize> =
        vertices.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let n = vertices.len();
    let mut matrix = gf2::BitMatrix::zeros(n, n);
    for (i, &v) in vertices.iter().enumerate() {
        for nb in spec.neighbors(v) {
            if let Some(&j) = index.get(&nb) {
                matrix.set(i, j);
            }
        }
    }
    Ok(matrix.nullspace_vector().map(|x| CertificateSet {
        cells: vertices
            .iter()
            .zip(&x)
            .filter_map(|(&c, &bit)| bit.then_some(c))
            .collect(),
        excluded: removed,
    }))
}
