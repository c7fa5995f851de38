//! The super-Fock space generated by a basis of classes of a surface.
//!
//! Each class `a` with cohomological degree `deg a` contributes, for every
//! mode `i >= 1`, a creation operator (the `F_i^a` correspondence) and an
//! annihilation operator (`E_i^a`). Even classes give a Heisenberg pair,
//! odd classes a Clifford pair. A basis vector is a monomial in the even
//! creation operators times an ordered wedge of odd ones, applied to the
//! vacuum; creating in mode `i` shifts the bidegree by
//! `(i, 2(i - 1) + deg a)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{check_mode, sign, AlgebraError, State};
use crate::series::{BivariateSeries, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// A basis class of the surface: label, and cohomological degree in
/// `0..=4`. The parity is that of the degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratorSpec {
    class_id: u32,
    cohomological_degree: u8,
}

impl GeneratorSpec {
    pub fn new(class_id: u32, cohomological_degree: u8) -> Result<Self, AlgebraError> {
        if cohomological_degree > 4 {
            return Err(AlgebraError::InvalidDegree(cohomological_degree));
        }
        Ok(GeneratorSpec {
            class_id,
            cohomological_degree,
        })
    }

    pub fn class_id(&self) -> u32 {
        self.class_id
    }

    pub fn degree(&self) -> u8 {
        self.cohomological_degree
    }

    pub fn parity(&self) -> Parity {
        if self.cohomological_degree % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(&self) -> bool {
        self.parity() == Parity::Odd
    }

    /// Homological degree added by one creation operator in mode `i`.
    pub fn degree_shift(&self, i: u32) -> u32 {
        2 * (i - 1) + self.cohomological_degree as u32
    }
}

/// A creation operator `(class, mode)`. The derived order is the canonical
/// order of odd factors: lexicographic on `(class_id, mode)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub class: GeneratorSpec,
    pub mode: u32,
}

/// A basis vector: even slots with positive multiplicities, and a strictly
/// increasing list of odd slots (the wedge in canonical order).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuperKey {
    even: BTreeMap<Slot, u32>,
    odd: Vec<Slot>,
}

impl SuperKey {
    pub fn vacuum() -> Self {
        SuperKey::default()
    }

    pub fn even(&self) -> &BTreeMap<Slot, u32> {
        &self.even
    }

    pub fn odd(&self) -> &[Slot] {
        &self.odd
    }

    /// `(n-weight, homological degree)`.
    pub fn bidegree(&self) -> (u32, u32) {
        let even = self
            .even
            .iter()
            .map(|(s, &e)| (s.mode * e, s.class.degree_shift(s.mode) * e));
        let odd = self.odd.iter().map(|s| (s.mode, s.class.degree_shift(s.mode)));
        even.chain(odd)
            .fold((0, 0), |(n, k), (dn, dk)| (n + dn, k + dk))
    }
}

impl fmt::Display for SuperKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.even.is_empty() && self.odd.is_empty() {
            return f.write_str("|0>");
        }
        let mut first = true;
        for (s, e) in &self.even {
            if !first {
                f.write_str("·")?;
            }
            first = false;
            write!(f, "q[{},{}]", s.class.class_id, s.mode)?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        for (idx, s) in self.odd.iter().enumerate() {
            if idx > 0 {
                f.write_str("∧")?;
            } else if !first {
                f.write_str("·")?;
            }
            first = false;
            write!(f, "ψ[{},{}]", s.class.class_id, s.mode)?;
        }
        f.write_str("|0>")
    }
}

pub type SuperFockState = State<SuperKey>;

/// The constants `c_i` in `[E_i^a, F_i^a] = c_i`.
///
/// Only `c_1 = 1` and `c_2 = -2` are known; every other mode must be set
/// explicitly before an annihilation operator in that mode is used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralCharges {
    c: BTreeMap<u32, i64>,
}

impl Default for CentralCharges {
    fn default() -> Self {
        CentralCharges {
            c: BTreeMap::from([(1, 1), (2, -2)]),
        }
    }
}

impl CentralCharges {
    /// No charges set at all.
    pub fn empty() -> Self {
        CentralCharges { c: BTreeMap::new() }
    }

    pub fn with(mut self, i: u32, value: i64) -> Result<Self, AlgebraError> {
        self.set(i, value)?;
        Ok(self)
    }

    pub fn set(&mut self, i: u32, value: i64) -> Result<(), AlgebraError> {
        if value == 0 {
            return Err(AlgebraError::ZeroCentralCharge(i));
        }
        check_mode(i);
        self.c.insert(i, value);
        Ok(())
    }

    pub fn get(&self, i: u32) -> Result<i64, AlgebraError> {
        self.c
            .get(&i)
            .copied()
            .ok_or(AlgebraError::CentralChargeUndefined(i))
    }

    pub fn defined_modes(&self) -> impl Iterator<Item = u32> + '_ {
        self.c.keys().copied()
    }
}

impl State<SuperKey> {
    pub fn vacuum() -> Self {
        State::basis(SuperKey::vacuum())
    }

    /// Applies the creation operator of class `g` in mode `i`.
    pub fn create(&self, g: &GeneratorSpec, i: u32) -> Self {
        check_mode(i);
        let slot = Slot { class: *g, mode: i };
        self.map_basis(|k| {
            let mut key = k.clone();
            if g.is_odd() {
                let pos = key.odd.partition_point(|s| *s < slot);
                if key.odd.get(pos) == Some(&slot) {
                    return None;
                }
                key.odd.insert(pos, slot);
                Some((key, sign(pos)))
            } else {
                *key.even.entry(slot).or_insert(0) += 1;
                Some((key, BigRational::one()))
            }
        })
    }

    /// Applies the annihilation operator of class `g` in mode `i`: `c_i`
    /// times the derivative (even) or signed contraction (odd) in that
    /// slot.
    pub fn annihilate(
        &self,
        g: &GeneratorSpec,
        i: u32,
        charges: &CentralCharges,
    ) -> Result<Self, AlgebraError> {
        check_mode(i);
        let c = BigRational::from_integer(charges.get(i)?.into());
        let slot = Slot { class: *g, mode: i };
        Ok(self.map_basis(|k| {
            let mut key = k.clone();
            if g.is_odd() {
                let pos = key.odd.iter().position(|s| *s == slot)?;
                key.odd.remove(pos);
                Some((key, sign(pos) * &c))
            } else {
                let e = key.even.get(&slot).copied()?;
                if e == 1 {
                    key.even.remove(&slot);
                } else {
                    key.even.insert(slot, e - 1);
                }
                Some((key, BigRational::from_integer(e.into()) * &c))
            }
        }))
    }

    /// Bidegrees of all stored keys.
    pub fn bidegrees(&self) -> Vec<(u32, u32)> {
        self.terms().keys().map(SuperKey::bidegree).collect()
    }
}

/// Every basis key of n-weight at most `max_weight` for the given classes,
/// ordered by key.
pub fn super_basis(gens: &[GeneratorSpec], max_weight: u32) -> Vec<SuperKey> {
    let slots: Vec<Slot> = gens
        .iter()
        .flat_map(|&g| (1..=max_weight).map(move |mode| Slot { class: g, mode }))
        .collect();

    fn rec(slots: &[Slot], budget: u32, key: &mut SuperKey, out: &mut Vec<SuperKey>) {
        let Some((slot, rest)) = slots.split_first() else {
            out.push(key.clone());
            return;
        };
        rec(rest, budget, key, out);
        let max_exp = if slot.class.is_odd() { 1 } else { budget / slot.mode };
        for e in 1..=max_exp.min(budget / slot.mode) {
            if slot.class.is_odd() {
                key.odd.push(*slot);
            } else {
                key.even.insert(*slot, e);
            }
            rec(rest, budget - e * slot.mode, key, out);
            if slot.class.is_odd() {
                key.odd.pop();
            } else {
                key.even.remove(slot);
            }
        }
    }

    let mut out = Vec::new();
    rec(&slots, max_weight, &mut SuperKey::vacuum(), &mut out);
    out.sort();
    out
}

/// `counts[n][k]` = number of keys of bidegree `(n, k)`, `n <= order`.
fn bigraded_counts(keys: &[SuperKey], order: usize) -> Vec<Vec<BigInt>> {
    let mut counts: Vec<Vec<BigInt>> = vec![Vec::new(); order + 1];
    for key in keys {
        let (n, k) = key.bidegree();
        let row = &mut counts[n as usize];
        if row.len() <= k as usize {
            row.resize(k as usize + 1, BigInt::from(0));
        }
        row[k as usize] += 1;
    }
    counts
}

fn counts_to_series(counts: Vec<Vec<BigInt>>, order: usize) -> BivariateSeries {
    BivariateSeries::from_coeffs(order, counts.into_iter().map(Poly::from_coeffs).collect())
}

/// Bigraded dimension of the super-Fock space, `Σ dim(n, k) q^n t^k`, to
/// order `order`.
///
/// The basis of each single-class Fock space is enumerated explicitly and
/// its keys are binned by bidegree; the basis of the full space is the
/// product of these bases, so the full table is the bigraded convolution of
/// the single-class tables. Classes of equal degree share one table.
pub fn super_character(gens: &[GeneratorSpec], order: usize) -> BivariateSeries {
    let mut cache: BTreeMap<u8, BivariateSeries> = BTreeMap::new();
    let mut acc = BivariateSeries::one(order);
    for g in gens {
        let table = cache.entry(g.degree()).or_insert_with(|| {
            let keys = super_basis(&[*g], order as u32);
            counts_to_series(bigraded_counts(&keys, order), order)
        });
        acc = acc.mul(table);
    }
    acc
}

/// [`super_character`] by enumerating the whole basis at once. Exponential
/// in the number of classes; meant for small cross-checks.
pub fn super_character_brute_force(gens: &[GeneratorSpec], order: usize) -> BivariateSeries {
    let keys = super_basis(gens, order as u32);
    counts_to_series(bigraded_counts(&keys, order), order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn even(id: u32, deg: u8) -> GeneratorSpec {
        GeneratorSpec::new(id, deg).unwrap()
    }

    #[test]
    fn create_even_on_vacuum() {
        let g = even(0, 2);
        let s = SuperFockState::vacuum().create(&g, 1);
        assert_eq!(s.len(), 1);
        assert_eq!(s.bidegrees(), vec![(1, 2)]);
    }

    #[test]
    fn create_odd_twice_vanishes() {
        let g = even(0, 1);
        let base = SuperFockState::vacuum().create(&even(1, 0), 2);
        assert!(base.create(&g, 3).create(&g, 3).is_zero());
        assert!(!base.create(&g, 3).create(&g, 2).is_zero());
    }

    #[test]
    fn even_creations_commute() {
        let (g1, g2) = (even(0, 0), even(1, 2));
        let v = SuperFockState::vacuum().create(&even(2, 1), 1);
        assert_eq!(v.create(&g1, 2).create(&g2, 1), v.create(&g2, 1).create(&g1, 2));
    }

    #[test]
    fn odd_creations_anticommute() {
        let (g1, g2) = (even(0, 1), even(1, 3));
        let v = SuperFockState::vacuum();
        assert_eq!(v.create(&g1, 2).create(&g2, 1), -&v.create(&g2, 1).create(&g1, 2));
    }

    #[test]
    fn annihilate_after_create_gives_charge() {
        let g = even(0, 0);
        let ch = CentralCharges::default();
        let v = SuperFockState::vacuum();
        assert_eq!(v.create(&g, 1).annihilate(&g, 1, &ch).unwrap(), v);
        let two = BigRational::from_integer((-2).into());
        assert_eq!(v.create(&g, 2).annihilate(&g, 2, &ch).unwrap(), v.scale(&two));
        assert!(v.create(&even(1, 2), 2).annihilate(&g, 1, &ch).unwrap().is_zero());
    }

    #[test]
    fn missing_charge_is_an_error() {
        let g = even(0, 0);
        let v = SuperFockState::vacuum().create(&g, 3);
        let err = v.annihilate(&g, 3, &CentralCharges::default()).unwrap_err();
        assert_eq!(err, AlgebraError::CentralChargeUndefined(3));
        assert_eq!(err.to_string(), "central charge undefined for mode 3");
        let ch = CentralCharges::default().with(3, 3).unwrap();
        assert!(v.annihilate(&g, 3, &ch).is_ok());
        assert!(CentralCharges::default().with(4, 0).is_err());
    }

    #[test]
    fn generator_validation() {
        assert!(GeneratorSpec::new(0, 5).is_err());
        assert_eq!(even(0, 3).parity(), Parity::Odd);
        assert_eq!(even(0, 4).parity(), Parity::Even);
    }

    #[test]
    fn creation_shifts_bidegree() {
        let gens = [even(0, 0), even(1, 2), even(2, 1)];
        for key in super_basis(&gens, 4) {
            let (n, k) = key.bidegree();
            for g in &gens {
                for i in 1..=3 {
                    let s = SuperFockState::basis(key.clone()).create(g, i);
                    for bd in s.bidegrees() {
                        assert_eq!(bd, (n + i, k + g.degree_shift(i)));
                    }
                }
            }
        }
    }

    #[test]
    fn character_single_odd_generator_counts_distinct_partitions() {
        let series = super_character(&[even(0, 1)], 6);
        let at_one = series.at_t_one();
        assert_eq!(at_one[6], BigInt::from(4));
    }

    #[test]
    fn empty_generator_list_has_character_one() {
        assert_eq!(super_character(&[], 5), BivariateSeries::one(5));
    }

    #[test]
    fn factorized_character_matches_brute_force() {
        let gens = [even(0, 0), even(1, 2), even(2, 1), even(3, 3)];
        assert_eq!(super_character(&gens, 6), super_character_brute_force(&gens, 6));
    }

    #[test]
    fn key_display() {
        let s = SuperFockState::vacuum().create(&even(1, 1), 2).create(&even(0, 0), 1);
        assert_eq!(s.to_string(), "q[0,1]·ψ[1,2]|0>");
    }
}
