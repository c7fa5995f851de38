//! Stability: no proper subspace of `V` contains `Im i` and is invariant
//! under `B1` and `B2`.

use nalgebra::DMatrix;
use num_traits::Zero;

use super::data::{AdhmData, AdhmScalar, GaussianRational, C64};
use crate::linalg;

/// Relative singular-value threshold for floating rank decisions.
pub const STABILITY_RANK_TOL: f64 = 1e-9;

/// Column rank, exact for exact scalars and thresholded for floats.
pub trait ColumnRank: AdhmScalar {
    fn column_rank(m: &DMatrix<Self>) -> usize;
}

impl ColumnRank for GaussianRational {
    fn column_rank(m: &DMatrix<Self>) -> usize {
        let rows = m.row_iter().map(|row| row.iter().cloned().collect()).collect();
        linalg::exact_rank(rows)
    }
}

impl ColumnRank for C64 {
    /// Singular values above `STABILITY_RANK_TOL · max(1, σ_max)` count.
    fn column_rank(m: &DMatrix<Self>) -> usize {
        if m.is_empty() {
            return 0;
        }
        let sv = m.clone().svd(false, false).singular_values;
        let scale = sv.iter().copied().fold(1.0, f64::max);
        sv.iter().filter(|&&s| s > STABILITY_RANK_TOL * scale).count()
    }
}

/// Dimension of the smallest subspace containing `Im i` and closed under
/// `B1`, `B2`, obtained by growing the Krylov matrix
/// `[i, B1 i, B2 i, B1 B1 i, ...]` until its rank stops increasing.
pub fn invariant_closure_dim<T: ColumnRank>(d: &AdhmData<T>) -> usize {
    let n = d.n();
    if n == 0 {
        return 0;
    }
    let mut span = d.i().clone();
    let mut frontier = d.i().clone();
    let mut rank = T::column_rank(&span);
    loop {
        let next = hstack(&[d.b1() * &frontier, d.b2() * &frontier]);
        let grown = hstack(&[span.clone(), next.clone()]);
        let new_rank = T::column_rank(&grown);
        if new_rank == rank || rank == n {
            return rank.min(n);
        }
        span = grown;
        frontier = next;
        rank = new_rank;
    }
}

/// `true` iff the closure of `Im i` under `B1`, `B2` is all of `V`.
/// The empty datum (`n = 0`) is stable.
pub fn stability_check<T: ColumnRank>(d: &AdhmData<T>) -> bool {
    invariant_closure_dim(d) == d.n()
}

pub(crate) fn hstack<T: AdhmScalar>(blocks: &[DMatrix<T>]) -> DMatrix<T> {
    let nrows = blocks.first().map_or(0, |b| b.nrows());
    let ncols = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = DMatrix::from_element(nrows, ncols, T::zero());
    let mut col = 0;
    for b in blocks {
        out.view_mut((0, col), (nrows, b.ncols())).copy_from(b);
        col += b.ncols();
    }
    out
}

pub(crate) fn vstack<T: AdhmScalar>(blocks: &[DMatrix<T>]) -> DMatrix<T> {
    let ncols = blocks.first().map_or(0, |b| b.ncols());
    let nrows = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = DMatrix::from_element(nrows, ncols, T::zero());
    let mut row = 0;
    for b in blocks {
        out.view_mut((row, 0), (b.nrows(), ncols)).copy_from(b);
        row += b.nrows();
    }
    out
}

pub(crate) fn is_exactly_zero<T: AdhmScalar>(m: &DMatrix<T>) -> bool {
    m.iter().all(Zero::is_zero)
}
