//! Spanning-tree counts of grid graphs by the Matrix-Tree theorem, with the
//! Laplacian minor determinant computed by fraction-free (Bareiss) integer
//! elimination so intermediate values stay exact.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::BigCount;

/// Cap on the Laplacian minor side `m*n - 1`.
pub const MAX_TREE_SIDE: usize = 400;

/// Exact spanning-tree count of the `m x n` grid graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeCount {
    pub value: BigCount,
    pub dims: (usize, usize),
}

pub fn spanning_tree_count(m: usize, n: usize) -> Result<TreeCount> {
    if m == 0 || n == 0 {
        return Err(Error::EmptyGrid);
    }
    let vertices = m * n;
    let side = vertices - 1;
    if side > MAX_TREE_SIDE {
        return Err(Error::MatrixTooLarge {
            side,
            limit: MAX_TREE_SIDE,
        });
    }
    if side == 0 {
        return Ok(TreeCount {
            value: BigCount::from(1u32),
            dims: (m, n),
        });
    }
    // Laplacian with the last row and column deleted.
    let idx = |r: usize, c: usize| r * n + c;
    let mut minor = vec![vec![BigInt::zero(); side]; side];
    for r in 0..m {
        for c in 0..n {
            let i = idx(r, c);
            if i >= side {
                continue;
            }
            let mut degree = 0;
            for (rr, cc) in [
                (r.wrapping_sub(1), c),
                (r + 1, c),
                (r, c.wrapping_sub(1)),
                (r, c + 1),
            ] {
                if rr < m && cc < n {
                    degree += 1;
                    let j = idx(rr, cc);
                    if j < side {
                        minor[i][j] = BigInt::from(-1);
                    }
                }
            }
            minor[i][i] = BigInt::from(degree);
        }
    }
    let det = bareiss_determinant(minor);
    debug_assert!(!det.is_negative(), "Laplacian minor determinant is >= 0");
    Ok(TreeCount {
        value: det.magnitude().clone(),
        dims: (m, n),
    })
}

/// Fraction-free elimination; every intermediate entry is an exact integer
/// and each division is exact.
fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = std::mem::take(&mut a[n - 1][n - 1]);
    if sign < 0 {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trees(m: usize, n: usize) -> BigCount {
        spanning_tree_count(m, n).unwrap().value
    }

    /// Brute-force oracle: count edge subsets of size mn-1 that connect the
    /// grid. Only viable for mn <= 12.
    fn trees_brute(m: usize, n: usize) -> u64 {
        let v = m * n;
        let idx = |r: usize, c: usize| r * n + c;
        let mut edges = Vec::new();
        for r in 0..m {
            for c in 0..n {
                if c + 1 < n {
                    edges.push((idx(r, c), idx(r, c + 1)));
                }
                if r + 1 < m {
                    edges.push((idx(r, c), idx(r + 1, c)));
                }
            }
        }
        let e = edges.len();
        assert!(e <= 20, "oracle limited to small grids");
        let mut count = 0;
        for mask in 0u32..1 << e {
            if mask.count_ones() as usize != v - 1 {
                continue;
            }
            // union-find connectivity
            let mut parent: Vec<usize> = (0..v).collect();
            fn find(parent: &mut Vec<usize>, x: usize) -> usize {
                if parent[x] != x {
                    let root = find(parent, parent[x]);
                    parent[x] = root;
                }
                parent[x]
            }
            let mut acyclic = true;
            for (i, &(a, b)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra == rb {
                        acyclic = false;
                        break;
                    }
                    parent[ra] = rb;
                }
            }
            if acyclic {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn known_values() {
        assert_eq!(trees(1, 1), BigCount::from(1u32));
        assert_eq!(trees(2, 2), BigCount::from(4u32));
        assert_eq!(trees(2, 3), BigCount::from(15u32));
        assert_eq!(trees(3, 3), BigCount::from(192u32));
        // https://oeis.org/A007341
        assert_eq!(trees(4, 4), BigCount::from(100352u32));
        assert_eq!(trees(5, 5), BigCount::from(557568000u64));
    }

    #[test]
    fn matches_brute_force_enumeration() {
        for (m, n) in [
            (1, 1),
            (1, 4),
            (2, 2),
            (2, 3),
            (3, 3),
            (2, 4),
            (3, 4),
            (2, 5),
        ] {
            assert_eq!(trees(m, n), BigCount::from(trees_brute(m, n)), "{m}x{n}");
        }
    }

    #[test]
    fn transpose_invariant() {
        for (m, n) in [(2, 3), (3, 4), (2, 5), (4, 5)] {
            assert_eq!(trees(m, n), trees(n, m));
        }
    }

    #[test]
    fn guard_rejects_huge_grids() {
        assert!(matches!(
            spanning_tree_count(21, 21),
            Err(Error::MatrixTooLarge { .. })
        ));
        assert!(spanning_tree_count(0, 3).is_err());
    }
}
