//! Bit-packed Gaussian elimination over GF(2).

pub(crate) struct BitMatrix {
    n_rows: usize,
    n_cols: usize,
    rows: Vec<Vec<u64>>,
}

impl BitMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        let words = n_cols.div_ceil(64).max(1);
        Self {
            n_rows,
            n_cols,
            rows: vec![vec![0; words]; n_rows],
        }
    }

    pub fn set(&mut self, r: usize, c: usize) {
        self.rows[r][c / 64] |= 1 << (c % 64);
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r][c / 64] >> (c % 64) & 1 == 1
    }

    /// Gauss-Jordan elimination with pivots in column order; returns the
    /// first free-variable basis vector of the nullspace, or `None` when the
    /// matrix has full column rank.
    pub fn nullspace_vector(mut self) -> Option<Vec<bool>> {
        let mut pivot_row_of_col = vec![None; self.n_cols];
        let mut rank = 0;
        for c in 0..self.n_cols {
            let Some(pr) = (rank..self.n_rows).find(|&r| self.get(r, c)) else {
                continue;
            };
            self.rows.swap(rank, pr);
            let pivot = self.rows[rank].clone();
            for r in 0..self.n_rows {
                if r != rank && self.get(r, c) {
                    for (w, p) in self.rows[r].iter_mut().zip(&pivot) {
                        *w ^= p;
                    }
                }
            }
            pivot_row_of_col[c] = Some(rank);
            rank += 1;
        }
        let free = (0..self.n_cols).find(|&c| pivot_row_of_col[c].is_none())?;
        let mut x = vec![false; self.n_cols];
        x[free] = true;
        for (c, pivot_row) in pivot_row_of_col.iter().enumerate() {
            if let Some(pr) = pivot_row {
                x[c] = self.get(*pr, free);
            }
        }
        Some(x)
    }
}
