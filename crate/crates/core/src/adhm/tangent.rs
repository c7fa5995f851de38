//! Real dimension of the hyper-Kähler quotient at a point of the level set.

use nalgebra::DMatrix;
use serde::Serialize;

use super::data::{frobenius, AdhmData, C64};
use super::flow::level_residual;
use super::AdhmError;

/// Default relative singular-value threshold for the rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TangentReport {
    /// `dim ker(dμ_R ⊕ dμ_C) - dim(U(V)-orbit)`, real.
    pub dimension: usize,
    pub kernel_dim: usize,
    pub orbit_dim: usize,
    /// Smallest relative singular value counted as nonzero, and largest
    /// counted as zero, over both rank decisions.
    pub smallest_kept: f64,
    pub largest_dropped: f64,
}

/// Real columns: each complex coordinate `c` contributes the directions
/// `e_c` and `√-1 e_c`.
fn real_columns(n: usize, r: usize) -> Vec<AdhmData<C64>> {
    let count = 2 * n * n + 2 * n * r;
    (0..count)
        .flat_map(|idx| {
            [C64::new(1.0, 0.0), C64::new(0.0, 1.0)]
                .map(|v| AdhmData::coordinate_vector(n, r, idx, v))
        })
        .collect()
}

/// A real basis of `u(V)`: `√-1 E_kk`, `E_kl - E_lk`, `√-1 (E_kl + E_lk)`.
fn unitary_lie_basis(n: usize) -> Vec<DMatrix<C64>> {
    let mut out = Vec::new();
    let unit = |a: usize, b: usize, v: C64| {
        let mut m = DMatrix::<C64>::zeros(n, n);
        m[(a, b)] = v;
        m
    };
    for a in 0..n {
        out.push(unit(a, a, C64::new(0.0, 1.0)));
        for b in a + 1..n {
            out.push(unit(a, b, C64::new(1.0, 0.0)) - unit(b, a, C64::new(1.0, 0.0)));
            out.push(unit(a, b, C64::new(0.0, 1.0)) + unit(b, a, C64::new(0.0, 1.0)));
        }
    }
    out
}

fn flatten(parts: &[&DMatrix<C64>]) -> Vec<f64> {
    parts
        .iter()
        .flat_map(|m| m.iter().flat_map(|z| [z.re, z.im]).collect::<Vec<_>>())
        .collect()
}

fn columns_to_matrix(cols: &[Vec<f64>]) -> DMatrix<f64> {
    let nrows = cols.first().map_or(0, Vec::len);
    DMatrix::from_fn(nrows, cols.len(), |a, b| cols[b][a])
}

struct RankDecision {
    rank: usize,
    smallest_kept: f64,
    largest_dropped: f64,
}

fn decide_rank(m: &DMatrix<f64>, tol: f64) -> Result<RankDecision, AdhmError> {
    let sv = crate::linalg::singular_values(m);
    let scale = sv.first().copied().unwrap_or(0.0).max(1.0);
    let mut decision = RankDecision {
        rank: 0,
        smallest_kept: f64::INFINITY,
        largest_dropped: 0.0,
    };
    for s in sv {
        let rel = s / scale;
        if rel > tol / 10.0 && rel < tol * 10.0 {
            return Err(AdhmError::IllConditionedRank { value: rel, tol });
        }
        if rel >= tol * 10.0 {
            decision.rank += 1;
            decision.smallest_kept = decision.smallest_kept.min(rel);
        } else {
            decision.largest_dropped = decision.largest_dropped.max(rel);
        }
    }
    Ok(decision)
}

/// Real dimension of `(μ_C⁻¹(0) ∩ μ_R⁻¹(-ζ_R)) / U(V)` at `d`, computed as
/// the nullity of the real-linear map `δ ↦ (dμ_R(δ), dμ_C(δ))` minus the
/// rank of the infinitesimal `u(V)`-action.
///
/// `d` must lie on the level set to within `rank_tol`. A singular value
/// within a factor 10 of `rank_tol` (relative to the largest one) makes the
/// rank decision ambiguous and is reported as an error.
pub fn tangent_dimension(
    d: &AdhmData<C64>,
    zeta_r: f64,
    rank_tol: f64,
) -> Result<TangentReport, AdhmError> {
    let mu_c = frobenius(&d.mu_complex());
    let mu_r = level_residual(d, zeta_r);
    if mu_c > rank_tol || mu_r > rank_tol {
        return Err(AdhmError::NotOnLevelSet { mu_c, mu_r });
    }
    let (n, r) = (d.n(), d.r());
    let directions = real_columns(n, r);
    let differential: Vec<Vec<f64>> = directions
        .iter()
        .map(|delta| flatten(&[&d.d_mu_real(delta), &d.d_mu_complex(delta)]))
        .collect();
    let orbit: Vec<Vec<f64>> = unitary_lie_basis(n)
        .iter()
        .map(|xi| {
            let v = d.infinitesimal_gauge(xi);
            flatten(&[v.b1(), v.b2(), v.i(), v.j()])
        })
        .collect();
    let diff_rank = decide_rank(&columns_to_matrix(&differential), rank_tol)?;
    let orbit_rank = decide_rank(&columns_to_matrix(&orbit), rank_tol)?;
    let kernel_dim = directions.len() - diff_rank.rank;
    Ok(TangentReport {
        dimension: kernel_dim - orbit_rank.rank,
        kernel_dim,
        orbit_dim: orbit_rank.rank,
        smallest_kept: diff_rank.smallest_kept.min(orbit_rank.smallest_kept),
        largest_dropped: diff_rank.largest_dropped.max(orbit_rank.largest_dropped),
    })
}
