//! The Clifford algebra on `F = Λ*V`, `V = ⊕ Q dx^i`:
//! `ψ_i -> dx^i ∧`, `ψ*_i -> ι(∂/∂x_i)`, `c -> 1`.

use std::fmt;

use num_rational::BigRational;

use super::{check_mode, sign, State};

/// A wedge `dx^{i_1} ∧ ... ∧ dx^{i_k}` with `i_1 > ... > i_k >= 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FermionKey(Vec<u32>);

impl FermionKey {
    pub fn vacuum() -> Self {
        FermionKey::default()
    }

    /// Returns `None` unless `indices` is strictly decreasing and positive.
    pub fn new(indices: Vec<u32>) -> Option<Self> {
        let ok = indices.windows(2).all(|w| w[0] > w[1]) && indices.iter().all(|&i| i >= 1);
        ok.then_some(FermionKey(indices))
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    /// `Σ i_k`, the eigenvalue of `d`.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for FermionKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (idx, i) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str("∧")?;
            }
            write!(f, "dx{i}")?;
        }
        Ok(())
    }
}

/// An element of the fermionic Fock space `F`.
pub type FermionicState = State<FermionKey>;

impl State<FermionKey> {
    pub fn vacuum() -> Self {
        State::basis(FermionKey::vacuum())
    }

    /// The wedge of the given indices in the order listed,
    /// `dx^{j_1} ∧ dx^{j_2} ∧ ...`, normalized with the permutation sign.
    pub fn wedge(indices: &[u32]) -> Self {
        indices
            .iter()
            .rev()
            .fold(Self::vacuum(), |s, &i| s.apply_psi(i))
    }

    /// `ψ_i s = dx^i ∧ s`.
    pub fn apply_psi(&self, i: u32) -> Self {
        check_mode(i);
        self.map_basis(|k| {
            // keys are decreasing: dx^i moves past every larger index
            let pos = k.0.partition_point(|&x| x > i);
            if k.0.get(pos) == Some(&i) {
                return None;
            }
            let mut v = k.0.clone();
            v.insert(pos, i);
            Some((FermionKey(v), sign(pos)))
        })
    }

    /// `ψ*_i s = ι(∂/∂x_i) s`; removing the factor in slot `p` (from 0)
    /// carries the sign `(-1)^p`.
    pub fn apply_psi_star(&self, i: u32) -> Self {
        check_mode(i);
        self.map_basis(|k| {
            let pos = k.0.iter().position(|&x| x == i)?;
            let mut v = k.0.clone();
            v.remove(pos);
            Some((FermionKey(v), sign(pos)))
        })
    }

    /// `d(dx^{i_1} ∧ ... ∧ dx^{i_k}) = (Σ i_k) dx^{i_1} ∧ ... ∧ dx^{i_k}`.
    pub fn apply_d(&self) -> Self {
        self.map_basis(|k| {
            let w = k.weight();
            (w > 0).then(|| (k.clone(), BigRational::from_integer(w.into())))
        })
    }

    /// All wedges of weight exactly `w` (partitions of `w` into distinct
    /// parts).
    pub fn weight_basis(w: u32) -> Vec<FermionKey> {
        crate::partitions::enumerate(w)
            .into_iter()
            .filter(|p| p.has_distinct_parts())
            .map(|p| FermionKey(p.parts().to_vec()))
            .collect()
    }

    pub fn basis_up_to(max_weight: u32) -> Vec<FermionKey> {
        (0..=max_weight).flat_map(Self::weight_basis).collect()
    }
}
