//! Torus fixed points of `Hilb^n(C^2)` and their weight decompositions.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_traits::One;

use super::data::{AdhmData, AdhmScalar, GaussianRational, C64};
use crate::partitions::{young_cells, Cell, Partition};

/// Weight `(k, l)` of each basis vector of `V`: `λ(t1, t2)` acts on it by
/// `t1^k t2^l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusWeights {
    pub weights: Vec<(i32, i32)>,
}

impl TorusWeights {
    /// `λ(t1, t2)` as a diagonal matrix.
    pub fn lambda(&self, t1: C64, t2: C64) -> DMatrix<C64> {
        let diag: Vec<C64> = self
            .weights
            .iter()
            .map(|&(k, l)| t1.powi(k) * t2.powi(l))
            .collect();
        DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag))
    }

    /// Checks that `B1` raises `k` by one, `B2` raises `l` by one, `i`
    /// lands in weight `(1, 0)` and `j` vanishes off weight `(0, -1)`.
    pub fn is_consistent<T: AdhmScalar>(&self, d: &AdhmData<T>) -> bool {
        let w = &self.weights;
        if w.len() != d.n() {
            return false;
        }
        let maps_between = |m: &DMatrix<T>, shift: (i32, i32)| {
            (0..d.n()).all(|to| {
                (0..d.n()).all(|from| {
                    m[(to, from)].is_zero()
                        || (w[to].0 - w[from].0, w[to].1 - w[from].1) == shift
                })
            })
        };
        let i_ok = (0..d.n()).all(|a| (0..d.r()).all(|b| d.i()[(a, b)].is_zero() || w[a] == (1, 0)));
        let j_ok = (0..d.r()).all(|a| (0..d.n()).all(|b| d.j()[(a, b)].is_zero() || w[b] == (0, -1)));
        maps_between(d.b1(), (1, 0)) && maps_between(d.b2(), (0, 1)) && i_ok && j_ok
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixedPoint {
    pub partition: Partition,
    pub cells: Vec<Cell>,
    pub data: AdhmData<GaussianRational>,
    pub weights: TorusWeights,
}

/// The fixed point labelled by `p` (with `r = 1`): `V` has one basis vector
/// per cell of [`young_cells`], `B1` moves `(k, l)` to `(k+1, l)` and `B2`
/// moves it to `(k, l+1)` (or to zero outside the diagram), `i` sends the
/// generator of `W` to `(1, 0)`, and `j = 0`.
pub fn fixed_point_data(p: &Partition) -> FixedPoint {
    let cells = young_cells(p);
    let n = cells.len();
    let index: BTreeMap<Cell, usize> = cells.iter().enumerate().map(|(a, &c)| (c, a)).collect();
    let one = GaussianRational::one();
    let mut b1 = DMatrix::<GaussianRational>::zeros(n, n);
    let mut b2 = DMatrix::<GaussianRational>::zeros(n, n);
    let mut i = DMatrix::<GaussianRational>::zeros(n, 1);
    for (from, c) in cells.iter().enumerate() {
        if let Some(&to) = index.get(&Cell { k: c.k + 1, l: c.l }) {
            b1[(to, from)] = one.clone();
        }
        if let Some(&to) = index.get(&Cell { k: c.k, l: c.l + 1 }) {
            b2[(to, from)] = one.clone();
        }
    }
    if let Some(&origin) = index.get(&Cell { k: 1, l: 0 }) {
        i[(origin, 0)] = one;
    }
    let j = DMatrix::<GaussianRational>::zeros(1, n);
    let data = AdhmData::new(b1, b2, i, j).expect("shapes agree by construction");
    let weights = TorusWeights {
        weights: cells.iter().map(|c| (c.k as i32, c.l as i32)).collect(),
    };
    FixedPoint {
        partition: p.clone(),
        cells,
        data,
        weights,
    }
}
