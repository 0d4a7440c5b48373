//! Independent exact-rank oracle: fraction-free Gaussian elimination
//! (Bareiss) over big integers.
//!
//! This module never looks at the classification predicate — it answers
//! rank/solvability questions for an explicitly given matrix, so it can
//! certify (or refute) the closed-form criterion. Determinism: rows are
//! scaled by the LCM of their denominators, pivots are chosen as the first
//! nonzero entry scanning down each column in order, and ties never arise.
//!
//! Every intermediate division in the elimination is checked to be exact;
//! a nonzero remainder would mean the algorithm's invariant broke, so it
//! panics rather than silently degrading.

use num::{BigInt, Integer, One, Zero};

use crate::rational::{int, Rational};
use crate::wedge::RationalMatrix;
use crate::{Error, Result};

/// Rank plus the pivot columns the elimination settled on (ascending).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankResult {
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Unique,
    Many,
    Infeasible,
}

/// Outcome of solving `M x = rhs`. `solution` is present iff the status is
/// not `Infeasible`; under `Many` it is one particular solution (free
/// coordinates set to zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub solution: Option<Vec<Rational>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Exact rank of a matrix.
pub fn rank<K>(m: &RationalMatrix<K>) -> RankResult {
    let mut grid = to_integer_grid(&m.dense_rows());
    let pivots = eliminate(&mut grid, m.ncols());
    RankResult {
        rank: pivots.len(),
        pivot_cols: pivots.iter().map(|&(_, c)| c).collect(),
    }
}

/// Exact rank of dense rational rows (used for coframe invertibility).
pub(crate) fn dense_rank(rows: &[Vec<Rational>]) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut grid = to_integer_grid(rows);
    eliminate(&mut grid, ncols).len()
}

/// Solve `M x = rhs` exactly.
pub fn solve<K>(m: &RationalMatrix<K>, rhs: &[Rational]) -> Result<SolveResult> {
    if rhs.len() != m.nrows() {
        return Err(Error::domain(format!(
            "rhs length {} does not match {} rows",
            rhs.len(),
            m.nrows()
        )));
    }
    let mut rows = m.dense_rows();
    for (row, b) in rows.iter_mut().zip(rhs) {
        row.push(b.clone());
    }
    let ncols = m.ncols();
    let mut grid = to_integer_grid(&rows);
    let pivots = eliminate(&mut grid, ncols);
    if !feasible(&grid, &pivots, ncols) {
        return Ok(SolveResult {
            status: SolveStatus::Infeasible,
            solution: None,
        });
    }
    let solution = back_substitute(&grid, &pivots, ncols, ncols);
    let status = if pivots.len() == ncols {
        SolveStatus::Unique
    } else {
        SolveStatus::Many
    };
    Ok(SolveResult {
        status,
        solution: Some(solution),
    })
}

/// One-sided inverse: `Left` gives `B` with `B·M = I` (exists iff `M` has
/// full column rank), `Right` gives `B` with `M·B = I` (full row rank).
/// Row/column key vectors of the result are swapped relative to `M`.
pub fn one_sided_inverse<K: Clone + Ord>(
    m: &RationalMatrix<K>,
    side: Side,
) -> Option<RationalMatrix<K>> {
    match side {
        Side::Right => right_inverse_impl(m),
        // B·M = I  <=>  Mᵀ·Bᵀ = I: reuse the right-inverse path on Mᵀ.
        Side::Left => right_inverse_impl(&m.transpose()).map(|y| y.transpose()),
    }
}

fn right_inverse_impl<K: Clone + Ord>(m: &RationalMatrix<K>) -> Option<RationalMatrix<K>> {
    let nrows = m.nrows();
    let ncols = m.ncols();
    let mut rows = m.dense_rows();
    for (i, row) in rows.iter_mut().enumerate() {
        for j in 0..nrows {
            row.push(if i == j { int(1) } else { int(0) });
        }
    }
    let mut grid = to_integer_grid(&rows);
    let pivots = eliminate(&mut grid, ncols);
    if pivots.len() < nrows {
        return None; // not full row rank: some unit vector is unreachable
    }
    let mut out = RationalMatrix::new(m.col_keys().to_vec(), m.row_keys().to_vec());
    for j in 0..nrows {
        let col = back_substitute(&grid, &pivots, ncols, ncols + j);
        for (i, v) in col.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Some(out)
}

/// Clear denominators row by row: multiply each row by the LCM of its
/// entries' denominators. Row scaling changes neither rank nor solution
/// sets (augmented entries are scaled together with their row).
fn to_integer_grid(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let mut scale = BigInt::one();
            for v in row {
                scale = scale.lcm(v.denom());
            }
            row.iter()
                .map(|v| v.numer() * (&scale / v.denom()))
                .collect()
        })
        .collect()
}

/// Fraction-free elimination on the first `main_cols` columns; augmented
/// columns (if any) are carried along. Returns the pivot positions
/// `(row, col)` in elimination order; the grid is left in echelon form.
fn eliminate(grid: &mut [Vec<BigInt>], main_cols: usize) -> Vec<(usize, usize)> {
    let nrows = grid.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut prev = BigInt::one();
    let mut next_row = 0usize;
    for col in 0..main_cols {
        if next_row == nrows {
            break;
        }
        let Some(pivot_row) = (next_row..nrows).find(|&r| !grid[r][col].is_zero()) else {
            continue; // column already zero below; skipping keeps entries exact
        };
        grid.swap(next_row, pivot_row);
        let (upper, lower) = grid.split_at_mut(next_row + 1);
        let pivot = &upper[next_row];
        let total = pivot.len();
        for row in lower.iter_mut() {
            let lead = std::mem::replace(&mut row[col], BigInt::zero());
            for j in (col + 1)..total {
                let val = &pivot[col] * &row[j] - &lead * &pivot[j];
                let (q, r) = val.div_rem(&prev);
                assert!(r.is_zero(), "fraction-free elimination lost exactness");
                row[j] = q;
            }
        }
        prev = pivot[col].clone();
        pivots.push((next_row, col));
        next_row += 1;
    }
    pivots
}

/// After elimination, rows below the last pivot are zero in every main
/// column; the system is feasible iff their augmented entries vanish too.
fn feasible(grid: &[Vec<BigInt>], pivots: &[(usize, usize)], main_cols: usize) -> bool {
    grid.iter()
        .skip(pivots.len())
        .all(|row| row[main_cols..].iter().all(|v| v.is_zero()))
}

fn back_substitute(
    grid: &[Vec<BigInt>],
    pivots: &[(usize, usize)],
    main_cols: usize,
    aug_col: usize,
) -> Vec<Rational> {
    let mut x = vec![int(0); main_cols];
    for &(r, c) in pivots.iter().rev() {
        let mut acc = Rational::from(grid[r][aug_col].clone());
        for j in (c + 1)..main_cols {
            if grid[r][j].is_zero() || x[j].is_zero() {
                continue;
            }
            acc -= Rational::from(grid[r][j].clone()) * x[j].clone();
        }
        x[c] = acc / Rational::from(grid[r][c].clone());
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn from_rows(rows: &[&[Rational]]) -> RationalMatrix<usize> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = RationalMatrix::new((0..nrows).collect(), (0..ncols).collect());
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    #[test]
    fn rank_of_zero_and_identity() {
        let z = RationalMatrix::new(vec![0usize, 1, 2], vec![0usize, 1]);
        assert_eq!(rank(&z).rank, 0);
        let id = RationalMatrix::identity(vec![0usize, 1, 2]);
        let r = rank(&id);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivot_cols, vec![0, 1, 2]);
    }

    #[test]
    fn rank_sees_exact_cancellation() {
        // Rows are parallel only under exact arithmetic: det = 1/12 - 1/12.
        let m = from_rows(&[&[ratio(1, 2), ratio(1, 3)], &[ratio(1, 4), ratio(1, 6)]]);
        assert_eq!(rank(&m).rank, 1);
    }

    #[test]
    fn rank_with_column_skips() {
        let m = from_rows(&[&[int(0), int(2), int(1)], &[int(0), int(4), int(3)]]);
        let r = rank(&m);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivot_cols, vec![1, 2]);
    }

    #[test]
    fn rank_equals_rank_of_transpose() {
        let m = from_rows(&[
            &[int(1), int(2), int(3)],
            &[int(2), int(4), int(6)],
            &[int(0), int(1), int(1)],
            &[int(1), int(3), int(4)],
        ]);
        assert_eq!(rank(&m).rank, 2);
        assert_eq!(rank(&m.transpose()).rank, 2);
    }

    #[test]
    fn solve_unique_many_infeasible() {
        let m = from_rows(&[&[int(2), int(0)], &[int(0), int(3)]]);
        let r = solve(&m, &[int(1), int(1)]).unwrap();
        assert_eq!(r.status, SolveStatus::Unique);
        assert_eq!(r.solution.unwrap(), vec![ratio(1, 2), ratio(1, 3)]);

        let wide = from_rows(&[&[int(1), int(1)]]);
        let r = solve(&wide, &[int(2)]).unwrap();
        assert_eq!(r.status, SolveStatus::Many);
        let x = r.solution.unwrap();
        assert_eq!(x[0].clone() + x[1].clone(), int(2));

        let tall = from_rows(&[&[int(1)], &[int(1)]]);
        let r = solve(&tall, &[int(1), int(2)]).unwrap();
        assert_eq!(r.status, SolveStatus::Infeasible);
        assert!(r.solution.is_none());

        assert!(solve(&tall, &[int(1)]).is_err()); // rhs length mismatch
    }

    #[test]
    fn solve_residual_is_exactly_zero() {
        let m = from_rows(&[
            &[ratio(1, 2), int(1), int(0)],
            &[int(1), int(0), ratio(-2, 3)],
        ]);
        let rhs = [ratio(5, 6), int(-1)];
        let sol = solve(&m, &rhs).unwrap().solution.unwrap();
        for (i, row) in m.dense_rows().iter().enumerate() {
            let lhs: Rational = row
                .iter()
                .zip(&sol)
                .map(|(a, x)| a.clone() * x.clone())
                .sum();
            assert_eq!(lhs, rhs[i]);
        }
    }

    #[test]
    fn one_sided_inverses() {
        // full column rank, tall: left inverse exists, right does not
        let tall = from_rows(&[&[int(1)], &[int(1)]]);
        let b = one_sided_inverse(&tall, Side::Left).unwrap();
        assert!(b.multiply(&tall).unwrap().is_identity());
        assert!(one_sided_inverse(&tall, Side::Right).is_none());

        // full row rank, wide: right inverse exists, left does not
        let wide = from_rows(&[&[int(1), int(1)]]);
        let b = one_sided_inverse(&wide, Side::Right).unwrap();
        assert!(wide.multiply(&b).unwrap().is_identity());
        assert!(one_sided_inverse(&wide, Side::Left).is_none());

        // rank deficient square: neither
        let sq = from_rows(&[&[int(1), int(1)], &[int(1), int(1)]]);
        assert!(one_sided_inverse(&sq, Side::Left).is_none());
        assert!(one_sided_inverse(&sq, Side::Right).is_none());

        // invertible square with fractions: both sides, and they agree
        let m = from_rows(&[&[ratio(1, 2), int(1)], &[int(0), int(3)]]);
        let l = one_sided_inverse(&m, Side::Left).unwrap();
        let r = one_sided_inverse(&m, Side::Right).unwrap();
        assert!(l.multiply(&m).unwrap().is_identity());
        assert!(m.multiply(&r).unwrap().is_identity());
        assert_eq!(l, r);
    }

    #[test]
    fn dense_rank_helper() {
        assert_eq!(dense_rank(&[vec![int(1), int(2)], vec![int(2), int(4)]]), 1);
        assert_eq!(dense_rank(&[]), 0);
    }
}
