//! Exact matching counts by broken-profile bitmask dynamic programming.
//!
//! The sweep runs along the smaller dimension, so a count costs
//! `O(r * c * 2^min(r,c))` big-integer additions. The hole cell is treated
//! as pre-covered at its step of the transition; there is no graph surgery.
//! Accumulators are exact big integers throughout.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};
use std::thread;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::grid::{hole_orbit, white_orbits, Cell, GridSpec};
use crate::BigCount;

/// Default cap on the profile width (the smaller grid dimension). The
/// environment variable `HOLEY_MAX_PROFILE` overrides it.
pub const DEFAULT_MAX_PROFILE: usize = 30;

fn profile_limit() -> usize {
    static LIMIT: OnceLock<usize> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var("HOLEY_MAX_PROFILE")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_MAX_PROFILE)
    })
}

fn memo() -> &'static Mutex<HashMap<(usize, usize), BigCount>> {
    static MEMO: OnceLock<Mutex<HashMap<(usize, usize), BigCount>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Exact number of domino tilings of an `m x n` rectangle; zero for odd
/// area. Memoized on `(min, max)` since tilings are transpose-invariant.
pub fn count_perfect(m: usize, n: usize) -> Result<BigCount> {
    if m == 0 || n == 0 {
        return Err(Error::EmptyGrid);
    }
    if (m * n) % 2 == 1 {
        return Ok(BigCount::zero());
    }
    let key = (m.min(n), m.max(n));
    if let Some(v) = memo().lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let v = count_profile(key.0, key.1, None)?;
    memo().lock().unwrap().insert(key, v.clone());
    Ok(v)
}

/// Exact number of near-perfect matchings of an odd-by-odd grid with the
/// given hole; zero when the hole is black.
pub fn count_with_hole(spec: GridSpec, hole: Cell) -> Result<BigCount> {
    spec.require_odd_odd()?;
    spec.check_contains(hole)?;
    if !hole.is_white() {
        return Ok(BigCount::zero());
    }
    let (width, length, pos) = if spec.rows() <= spec.cols() {
        (spec.rows(), spec.cols(), (hole.col - 1, hole.row - 1))
    } else {
        (spec.cols(), spec.rows(), (hole.row - 1, hole.col - 1))
    };
    count_profile(width, length, Some(pos))
}

/// Column-sweep DP. `blocked` is the pre-covered cell as (column, offset)
/// in the oriented frame.
fn count_profile(width: usize, length: usize, blocked: Option<(usize, usize)>) -> Result<BigCount> {
    let limit = profile_limit().min(usize::BITS as usize - 1);
    if width > limit {
        return Err(Error::ProfileTooWide { width, limit });
    }
    let states = 1usize << width;
    let mut dp = vec![BigCount::zero(); states];
    dp[0] = BigCount::from(1u32);
    for j in 0..length {
        for i in 0..width {
            let hole_here = blocked == Some((j, i));
            let mut next = vec![BigCount::zero(); states];
            for (s, v) in dp.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                if s & (1 << i) != 0 {
                    // already covered by a protruding domino; a hole must
                    // stay uncovered, so such states die here
                    if !hole_here {
                        next[s & !(1 << i)] += v;
                    }
                } else if hole_here {
                    next[s] += v;
                } else {
                    if j + 1 < length {
                        next[s | (1 << i)] += v;
                    }
                    if i + 1 < width && s & (1 << (i + 1)) == 0 {
                        next[s | (1 << (i + 1))] += v;
                    }
                }
            }
            dp = next;
        }
    }
    Ok(std::mem::take(&mut dp[0]))
}

/// Per-hole counts for every white hole, plus their sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoleCensus {
    pub per_hole: BTreeMap<Cell, BigCount>,
    pub total: BigCount,
}

/// Count every white hole of an odd-by-odd grid, computing one
/// representative per symmetry orbit and replicating across the orbit.
pub fn count_all_holes(spec: GridSpec) -> Result<HoleCensus> {
    count_all_holes_jobs(spec, 1)
}

/// Like [`count_all_holes`] with up to `jobs` worker threads. The result is
/// identical for any job count.
pub fn count_all_holes_jobs(spec: GridSpec, jobs: usize) -> Result<HoleCensus> {
    spec.require_odd_odd()?;
    let orbits = white_orbits(spec);
    let reps: Vec<Cell> = orbits.iter().map(|(rep, _)| *rep).collect();
    let counts = map_counts(spec, &reps, jobs)?;
    let mut per_hole = BTreeMap::new();
    let mut total = BigCount::zero();
    for ((_, members), (_, count)) in orbits.iter().zip(&counts) {
        for &cell in members {
            per_hole.insert(cell, count.clone());
            total += count;
        }
    }
    Ok(HoleCensus { per_hole, total })
}

fn map_counts(spec: GridSpec, holes: &[Cell], jobs: usize) -> Result<Vec<(Cell, BigCount)>> {
    if jobs <= 1 || holes.len() <= 1 {
        return holes
            .iter()
            .map(|&h| count_with_hole(spec, h).map(|c| (h, c)))
            .collect();
    }
    let chunk = holes.len().div_ceil(jobs);
    let results: Vec<Result<Vec<(Cell, BigCount)>>> = thread::scope(|scope| {
        let handles: Vec<_> = holes
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    part.iter()
                        .map(|&h| count_with_hole(spec, h).map(|c| (h, c)))
                        .collect()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut out = Vec::with_capacity(holes.len());
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

/// Count of near-perfect matchings that are symmetric about the middle
/// column, for the hole in the middle of the first row: the middle column is
/// forced to vertical dominoes and each half tiles independently, so this
/// equals `count_perfect(r, (c-1)/2)`.
pub fn count_symmetric_fold(spec: GridSpec, h_star: Cell) -> Result<BigCount> {
    spec.require_odd_odd()?;
    let mid = Cell::new(1, (spec.cols() + 1) / 2);
    if h_star != mid {
        return Err(Error::NotFoldHole(h_star));
    }
    if spec.cols() == 1 {
        // the forced all-vertical column is the single symmetric matching
        return Ok(BigCount::from(1u32));
    }
    count_perfect(spec.rows(), (spec.cols() - 1) / 2)
}

/// Orbit representative (minimal cell) for a hole.
pub fn orbit_representative(spec: GridSpec, hole: Cell) -> Result<Cell> {
    Ok(hole_orbit(spec, hole)?[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matchgen::{count_brute, count_brute_perfect, enumerate_near_perfect};
    use crate::matchgen::{reflect_matching, Axis};

    fn g(r: usize, c: usize) -> GridSpec {
        GridSpec::new(r, c).unwrap()
    }

    fn big(v: u64) -> BigCount {
        BigCount::from(v)
    }

    #[test]
    fn perfect_examples() {
        assert_eq!(count_perfect(2, 2).unwrap(), big(2));
        assert_eq!(count_perfect(1, 2).unwrap(), big(1));
        assert_eq!(count_perfect(8, 8).unwrap(), big(12_988_816));
        assert_eq!(count_perfect(3, 3).unwrap(), BigCount::zero());
        assert!(count_perfect(0, 4).is_err());
    }

    #[test]
    fn perfect_matches_brute_force() {
        for m in 1..=6 {
            for n in 1..=6 {
                assert_eq!(
                    count_perfect(m, n).unwrap(),
                    count_brute_perfect(g(m, n)).unwrap(),
                    "{m}x{n}"
                );
            }
        }
    }

    #[test]
    fn hole_examples() {
        assert_eq!(count_with_hole(g(3, 3), Cell::new(2, 2)).unwrap(), big(2));
        assert_eq!(count_with_hole(g(3, 3), Cell::new(1, 1)).unwrap(), big(4));
        // black hole counts zero rather than erroring
        assert_eq!(
            count_with_hole(g(3, 3), Cell::new(1, 2)).unwrap(),
            BigCount::zero()
        );
        // Tenner at 5x5: the center count is 4 times an odd square
        assert_eq!(count_with_hole(g(5, 5), Cell::new(3, 3)).unwrap(), big(196));
    }

    #[test]
    fn hole_counts_match_brute_force() {
        for (r, c) in [(1, 1), (1, 5), (3, 3), (3, 5), (5, 5), (5, 3)] {
            let spec = g(r, c);
            for h in spec.cells() {
                assert_eq!(
                    count_with_hole(spec, h).unwrap(),
                    count_brute(spec, h).unwrap(),
                    "{r}x{c} hole {h}"
                );
            }
        }
    }

    #[test]
    fn census_3x3() {
        let census = count_all_holes(g(3, 3)).unwrap();
        assert_eq!(census.total, big(18));
        assert_eq!(census.per_hole.len(), 5);
        assert_eq!(census.per_hole[&Cell::new(1, 1)], big(4));
        assert_eq!(census.per_hole[&Cell::new(2, 2)], big(2));
    }

    #[test]
    fn census_1x1_and_5x5() {
        let census = count_all_holes(g(1, 1)).unwrap();
        assert_eq!(census.total, big(1));
        assert_eq!(census.per_hole[&Cell::new(1, 1)], big(1));

        // total is 4 times an odd number
        let census = count_all_holes(g(5, 5)).unwrap();
        assert_eq!(census.total, big(2180));
        assert_eq!(census.per_hole[&Cell::new(1, 1)], big(192));
        assert_eq!(census.per_hole[&Cell::new(2, 2)], big(112));
    }

    #[test]
    fn census_sum_consistency_and_jobs_identical() {
        let spec = g(5, 7);
        let census = count_all_holes(spec).unwrap();
        let direct: BigCount = spec
            .white_cells()
            .map(|h| count_with_hole(spec, h).unwrap())
            .sum();
        assert_eq!(census.total, direct);
        assert_eq!(count_all_holes_jobs(spec, 4).unwrap(), census);
    }

    #[test]
    fn orbit_invariance() {
        for (r, c) in [(5, 5), (7, 9), (9, 9)] {
            let spec = g(r, c);
            for (rep, members) in white_orbits(spec) {
                let base = count_with_hole(spec, rep).unwrap();
                for m in members {
                    assert_eq!(count_with_hole(spec, m).unwrap(), base, "{r}x{c} {m}");
                }
            }
        }
    }

    #[test]
    fn fold_examples() {
        assert_eq!(
            count_symmetric_fold(g(3, 5), Cell::new(1, 3)).unwrap(),
            big(3)
        );
        assert_eq!(
            count_symmetric_fold(g(1, 5), Cell::new(1, 3)).unwrap(),
            big(1)
        );
        assert_eq!(
            count_symmetric_fold(g(7, 5), Cell::new(1, 3)).unwrap(),
            big(21)
        );
        assert_eq!(
            count_symmetric_fold(g(1, 1), Cell::new(1, 1)).unwrap(),
            big(1)
        );
        assert!(matches!(
            count_symmetric_fold(g(3, 5), Cell::new(1, 1)),
            Err(Error::NotFoldHole(_))
        ));
    }

    #[test]
    fn fold_equals_filtered_enumeration() {
        // the symmetric-fold count really is the number of matchings fixed
        // by the vertical reflection
        for (r, c) in [(3, 5), (5, 5), (3, 9)] {
            let spec = g(r, c);
            let h = Cell::new(1, (c + 1) / 2);
            let symmetric = enumerate_near_perfect(spec, h)
                .unwrap()
                .filter(|m| reflect_matching(spec, m, Axis::Vertical).unwrap() == *m)
                .count();
            assert_eq!(
                count_symmetric_fold(spec, h).unwrap(),
                big(symmetric as u64),
                "{r}x{c}"
            );
        }
    }

    #[test]
    fn fold_parity_agreement() {
        for (r, c) in [(3, 5), (7, 5), (3, 9), (1, 5)] {
            let spec = g(r, c);
            let h = Cell::new(1, (c + 1) / 2);
            let full = count_with_hole(spec, h).unwrap();
            let fold = count_symmetric_fold(spec, h).unwrap();
            assert_eq!(full.bit(0), fold.bit(0), "{r}x{c}");
        }
    }

    #[test]
    fn parity_agreement_with_predicate() {
        use crate::grid::parity_predicate_hole;
        for r in (1..=9).step_by(2) {
            for c in (1..=9).step_by(2) {
                let spec = g(r, c);
                for h in spec.white_cells() {
                    let count = count_with_hole(spec, h).unwrap();
                    assert_eq!(
                        count.bit(0),
                        parity_predicate_hole(spec, h).unwrap(),
                        "{r}x{c} {h}"
                    );
                }
            }
        }
    }

    #[test]
    fn profile_guard() {
        let limit = profile_limit().min(usize::BITS as usize - 1);
        assert!(matches!(
            count_profile(limit + 1, limit + 2, None),
            Err(Error::ProfileTooWide { .. })
        ));
    }
}
