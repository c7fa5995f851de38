use std::collections::btree_map::{BTreeMap, Entry};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

/// A finite linear combination of basis keys with exact rational
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct State<K: Ord> {
    terms: BTreeMap<K, BigRational>,
}

impl<K: Ord> Default for State<K> {
    fn default() -> Self {
        State {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> State<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: K) -> Self {
        Self::term(key, BigRational::one())
    }

    pub fn term(key: K, coeff: BigRational) -> Self {
        let mut s = Self::zero();
        s.add_term(key, coeff);
        s
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, BigRational)>) -> Self {
        let mut s = Self::zero();
        for (k, c) in terms {
            s.add_term(k, c);
        }
        s
    }

    pub fn terms(&self) -> &BTreeMap<K, BigRational> {
        &self.terms
    }

    pub fn coeff(&self, key: &K) -> BigRational {
        self.terms.get(key).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, key: K, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        State {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c * factor))
                .collect(),
        }
    }

    /// Linear extension of a map on basis keys. `f` returns the image of a
    /// single key as a signed/scaled key, or `None` for zero.
    pub(crate) fn map_basis(&self, f: impl Fn(&K) -> Option<(K, BigRational)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            if let Some((image, factor)) = f(k) {
                out.add_term(image, c * factor);
            }
        }
        out
    }

    /// First key (in key order) where the two states differ, with both
    /// coefficients.
    pub fn first_difference(&self, other: &Self) -> Option<(K, BigRational, BigRational)> {
        let diff = self - other;
        diff.terms
            .into_iter()
            .next()
            .map(|(k, _)| (k.clone(), self.coeff(&k), other.coeff(&k)))
    }

    /// A random combination of `basis` with small nonzero rational
    /// coefficients on a random subset of up to `max_terms` keys.
    pub fn random_combination<R: Rng>(basis: &[K], max_terms: usize, rng: &mut R) -> Self {
        let mut s = Self::zero();
        if basis.is_empty() {
            return s;
        }
        let terms = rng.gen_range(1..=max_terms.max(1));
        for _ in 0..terms {
            let key = basis[rng.gen_range(0..basis.len())].clone();
            let mut num: i64 = rng.gen_range(-9..=9);
            if num == 0 {
                num = 1;
            }
            let den: i64 = rng.gen_range(1..=5);
            s.add_term(key, BigRational::new(num.into(), den.into()));
        }
        s
    }
}

impl<K: Ord + Clone> Add for &State<K> {
    type Output = State<K>;

    fn add(self, rhs: &State<K>) -> State<K> {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl<K: Ord + Clone> Sub for &State<K> {
    type Output = State<K>;

    fn sub(self, rhs: &State<K>) -> State<K> {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), -c);
        }
        out
    }
}

impl<K: Ord + Clone> Neg for &State<K> {
    type Output = State<K>;

    fn neg(self) -> State<K> {
        self.scale(&-BigRational::one())
    }
}

impl<K: Ord + Clone> Add for State<K> {
    type Output = State<K>;
    fn add(self, rhs: State<K>) -> State<K> {
        &self + &rhs
    }
}

impl<K: Ord + Clone> Sub for State<K> {
    type Output = State<K>;
    fn sub(self, rhs: State<K>) -> State<K> {
        &self - &rhs
    }
}

impl<K: Ord + Clone + fmt::Display> fmt::Display for State<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (k, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{k}")?;
            } else {
                write!(f, "({c})·{k}")?;
            }
        }
        Ok(())
    }
}
