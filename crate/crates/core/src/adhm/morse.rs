//! Torus weights of the tangent space at a fixed point and the Morse index
//! of `F = ‖B1‖² + ε‖B2‖² + ‖i‖² + ε‖j‖²`.
//!
//! The tangent space at a fixed point is `ker dμ_C / gl(V)·x`. Both maps
//! are equivariant for the torus acting on a coordinate by its weight, so
//! the quotient splits into weight spaces `T(a, b)` whose dimensions are
//! computed one weight at a time with exact ranks. `F` is the moment map of
//! the circle in direction `(1, ε)`, hence its Hessian is negative exactly
//! on the `T(a, b)` with `a + ε b < 0`.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_traits::{One, Zero};
use serde::Serialize;

use super::data::{AdhmData, GaussianRational};
use super::fixed::fixed_point_data;
use super::AdhmError;
use crate::linalg::exact_rank;
use crate::partitions::Partition;
use crate::BigRational;

/// Default `ε` for the torus potential.
pub const DEFAULT_EPS: f64 = 0.01;

type Weight = (i32, i32);

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MorseReport {
    /// Real Morse index.
    pub index: u32,
    /// Complex dimension of each nonzero weight space `T(a, b)`.
    pub tangent_weights: Vec<(Weight, usize)>,
}

/// Weights of the coordinates of a datum, in the order of
/// [`AdhmData::coordinates`], at a fixed point with cell weights `w`.
fn coordinate_weights(w: &[Weight], r: usize) -> Vec<Weight> {
    let n = w.len();
    let mut out = Vec::with_capacity(2 * n * n + 2 * n * r);
    // B1 entry (to, from) shifts by (1 + k_from - k_to, l_from - l_to)
    for to in 0..n {
        for from in 0..n {
            out.push((1 + w[from].0 - w[to].0, w[from].1 - w[to].1));
        }
    }
    for to in 0..n {
        for from in 0..n {
            out.push((w[from].0 - w[to].0, 1 + w[from].1 - w[to].1));
        }
    }
    for to in 0..n {
        for _ in 0..r {
            out.push((1 - w[to].0, -w[to].1));
        }
    }
    for _ in 0..r {
        for from in 0..n {
            out.push((w[from].0, 1 + w[from].1));
        }
    }
    out
}

fn matrix_entries(m: &DMatrix<GaussianRational>) -> Vec<GaussianRational> {
    m.row_iter().flat_map(|row| row.iter().cloned().collect::<Vec<_>>()).collect()
}

/// Complex dimensions of the weight spaces of the tangent space at `data`
/// (a fixed point with basis weights `w`), keyed by weight.
pub fn tangent_weight_spaces(
    data: &AdhmData<GaussianRational>,
    w: &[Weight],
) -> BTreeMap<Weight, usize> {
    let (n, r) = (data.n(), data.r());
    let coord_w = coordinate_weights(w, r);
    let unit = GaussianRational::new(BigRational::one(), BigRational::zero());

    // images of every coordinate direction under dμ_C
    let dmu: Vec<Vec<GaussianRational>> = (0..coord_w.len())
        .map(|idx| {
            let delta = AdhmData::coordinate_vector(n, r, idx, unit.clone());
            matrix_entries(&data.d_mu_complex(&delta))
        })
        .collect();
    // images of every elementary ξ = E_{to,from} under the gauge action
    let mut gauge: Vec<(Weight, Vec<GaussianRational>)> = Vec::new();
    for to in 0..n {
        for from in 0..n {
            let mut xi = DMatrix::<GaussianRational>::zeros(n, n);
            xi[(to, from)] = unit.clone();
            let weight = (w[from].0 - w[to].0, w[from].1 - w[to].1);
            gauge.push((weight, data.infinitesimal_gauge(&xi).coordinates()));
        }
    }

    let mut spaces = BTreeMap::new();
    let mut weights: Vec<Weight> = coord_w.clone();
    weights.sort();
    weights.dedup();
    for weight in weights {
        let cols: Vec<usize> = (0..coord_w.len()).filter(|&c| coord_w[c] == weight).collect();
        let dmu_rows: Vec<Vec<GaussianRational>> = cols.iter().map(|&c| dmu[c].clone()).collect();
        let gauge_rows: Vec<Vec<GaussianRational>> = gauge
            .iter()
            .filter(|(gw, _)| *gw == weight)
            .map(|(_, v)| v.clone())
            .collect();
        let dim = cols.len() - exact_rank(dmu_rows) - exact_rank(gauge_rows);
        if dim > 0 {
            spaces.insert(weight, dim);
        }
    }
    spaces
}

/// Morse index of `F` at the fixed point labelled by `p`, from the torus
/// weights of the tangent space.
///
/// Fails if some tangent weight pairs to zero with `(1, ε)`, in which case
/// `ε` is not generic for this fixed point.
pub fn morse_index_numeric(p: &Partition, eps: f64) -> Result<MorseReport, AdhmError> {
    if !(eps > 0.0) {
        return Err(AdhmError::InvalidOptions("eps must be positive".into()));
    }
    let fp = fixed_point_data(p);
    let spaces = tangent_weight_spaces(&fp.data, &fp.weights.weights);
    let total: usize = spaces.values().sum();
    if total != 2 * fp.data.n() {
        return Err(AdhmError::Degenerate(format!(
            "tangent space has complex dimension {total}, expected {}",
            2 * fp.data.n()
        )));
    }
    let mut negative = 0;
    for (&(a, b), &dim) in &spaces {
        let pairing = a as f64 + eps * b as f64;
        if pairing.abs() < 1e-12 {
            return Err(AdhmError::NonGenericEps { eps, weight: (a, b) });
        }
        if pairing < 0.0 {
            negative += dim;
        }
    }
    Ok(MorseReport {
        index: 2 * negative as u32,
        tangent_weights: spaces.into_iter().collect(),
    })
}
