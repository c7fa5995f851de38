//! The Heisenberg algebra on `R = Q[x_1, x_2, ...]`:
//! `p_i -> a ∂/∂x_i`, `q_i -> x_i`, `c -> a`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{check_mode, AlgebraError, State};

/// A monomial `x_1^{e_1} x_2^{e_2} ...`, stored as mode -> nonzero exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BosonKey(BTreeMap<u32, u32>);

impl BosonKey {
    /// The monomial 1.
    pub fn vacuum() -> Self {
        BosonKey::default()
    }

    /// Builds a monomial from `(mode, exponent)` pairs; zero exponents are
    /// dropped and repeated modes accumulate.
    pub fn new(factors: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (mode, exp) in factors {
            check_mode(mode);
            if exp > 0 {
                *map.entry(mode).or_insert(0) += exp;
            }
        }
        BosonKey(map)
    }

    pub fn exponent(&self, mode: u32) -> u32 {
        self.0.get(&mode).copied().unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0.iter().map(|(&m, &e)| (m, e))
    }

    /// `Σ_j j e_j`, the eigenvalue of `d0`.
    pub fn weight(&self) -> u32 {
        self.0.iter().map(|(m, e)| m * e).sum()
    }

    /// Total degree `Σ_j e_j`.
    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }
}

impl fmt::Display for BosonKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (idx, (m, e)) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str("·")?;
            }
            if *e == 1 {
                write!(f, "x{m}")?;
            } else {
                write!(f, "x{m}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial in the bosonic Fock space `R`.
pub type BosonicState = State<BosonKey>;

/// The nonzero scalar `a` by which the centre `c` acts on `R`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CentralScalar(BigRational);

impl CentralScalar {
    pub fn new(a: BigRational) -> Result<Self, AlgebraError> {
        if a.is_zero() {
            return Err(AlgebraError::ZeroCentralScalar);
        }
        Ok(CentralScalar(a))
    }

    pub fn from_integer(a: i64) -> Result<Self, AlgebraError> {
        CentralScalar::new(BigRational::from_integer(a.into()))
    }

    pub fn one() -> Self {
        CentralScalar(BigRational::one())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

impl State<BosonKey> {
    pub fn vacuum() -> Self {
        State::basis(BosonKey::vacuum())
    }

    pub fn monomial(factors: impl IntoIterator<Item = (u32, u32)>) -> Self {
        State::basis(BosonKey::new(factors))
    }

    /// `q_i s = x_i s`.
    pub fn apply_q(&self, i: u32) -> Self {
        check_mode(i);
        self.map_basis(|k| {
            let mut m = k.0.clone();
            *m.entry(i).or_insert(0) += 1;
            Some((BosonKey(m), BigRational::one()))
        })
    }

    /// `p_i s = a ∂s/∂x_i`.
    pub fn apply_p(&self, i: u32, a: &CentralScalar) -> Self {
        check_mode(i);
        self.map_basis(|k| {
            let e = k.exponent(i);
            if e == 0 {
                return None;
            }
            let mut m = k.0.clone();
            if e == 1 {
                m.remove(&i);
            } else {
                m.insert(i, e - 1);
            }
            Some((BosonKey(m), a.value() * BigRational::from_integer(e.into())))
        })
    }

    /// `d0 = Σ_j j x_j ∂/∂x_j`: scales each monomial by its weight.
    pub fn apply_d0(&self) -> Self {
        self.map_basis(|k| {
            let w = k.weight();
            (w > 0).then(|| (k.clone(), BigRational::from_integer(w.into())))
        })
    }

    /// All monomials of weight exactly `w`.
    pub fn weight_basis(w: u32) -> Vec<BosonKey> {
        crate::partitions::enumerate(w)
            .into_iter()
            .map(|p| BosonKey::new(p.parts().iter().map(|&m| (m, 1))))
            .collect()
    }

    /// All monomials of weight at most `max_weight`, ordered by weight.
    pub fn basis_up_to(max_weight: u32) -> Vec<BosonKey> {
        (0..=max_weight).flat_map(Self::weight_basis).collect()
    }
}

/// The symmetric bilinear form with `B(1, 1) = 1` for which `p_i` is adjoint
/// to `q_i`: distinct monomials are orthogonal and
/// `B(x^e, x^e) = a^{Σ e_k} Π e_k!`.
pub fn bilinear_b(s: &BosonicState, t: &BosonicState, a: &CentralScalar) -> BigRational {
    let mut acc = BigRational::zero();
    for (k, cs) in s.terms() {
        let ct = t.coeff(k);
        if ct.is_zero() {
            continue;
        }
        let norm = k
            .factors()
            .map(|(_, e)| BigRational::from_integer(factorial(e)))
            .fold(num_traits::pow(a.value().clone(), k.degree() as usize), |x, y| x * y);
        acc += cs * ct * norm;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn mono(f: &[(u32, u32)]) -> BosonicState {
        BosonicState::monomial(f.iter().copied())
    }

    #[test]
    fn q_examples() {
        assert_eq!(BosonicState::vacuum().apply_q(1), mono(&[(1, 1)]));
        assert_eq!(mono(&[(2, 1)]).apply_q(2), mono(&[(2, 2)]));
        let s = &mono(&[(1, 1)]).scale(&r(2)) - &mono(&[(3, 1)]);
        let expected = &mono(&[(1, 1), (3, 1)]).scale(&r(2)) - &mono(&[(3, 2)]);
        assert_eq!(s.apply_q(3), expected);
    }

    #[test]
    fn p_examples() {
        let one = CentralScalar::one();
        assert_eq!(mono(&[(1, 2)]).apply_p(1, &one), mono(&[(1, 1)]).scale(&r(2)));
        assert!(mono(&[(1, 1)]).apply_p(2, &one).is_zero());
        let three = CentralScalar::from_integer(3).unwrap();
        assert_eq!(mono(&[(1, 1), (2, 1)]).apply_p(1, &three), mono(&[(2, 1)]).scale(&r(3)));
    }

    #[test]
    fn d0_examples() {
        assert_eq!(mono(&[(1, 2), (3, 1)]).apply_d0(), mono(&[(1, 2), (3, 1)]).scale(&r(5)));
        assert!(BosonicState::vacuum().apply_d0().is_zero());
        let s = &mono(&[(2, 1)]) + &mono(&[(1, 2)]);
        assert_eq!(s.apply_d0(), s.scale(&r(2)));
    }

    #[test]
    fn bilinear_examples() {
        let one = CentralScalar::one();
        let two = CentralScalar::from_integer(2).unwrap();
        let x1x2 = mono(&[(1, 1), (2, 1)]);
        assert_eq!(bilinear_b(&x1x2, &x1x2, &one), r(1));
        assert_eq!(bilinear_b(&mono(&[(1, 2)]), &mono(&[(1, 2)]), &two), r(8));
        assert_eq!(bilinear_b(&mono(&[(1, 1)]), &mono(&[(2, 1)]), &one), r(0));
        let v = BosonicState::vacuum();
        assert_eq!(bilinear_b(&v, &v, &two), r(1));
    }

    #[test]
    fn zero_scalar_rejected() {
        assert_eq!(CentralScalar::from_integer(0), Err(AlgebraError::ZeroCentralScalar));
    }

    #[test]
    fn weight_basis_sizes() {
        let sizes: Vec<usize> = (0..=6).map(|w| BosonicState::weight_basis(w).len()).collect();
        assert_eq!(sizes, vec![1, 1, 2, 3, 5, 7, 11]);
        for w in 0..=6 {
            assert!(BosonicState::weight_basis(w).iter().all(|k| k.weight() == w));
        }
    }

    #[test]
    fn display() {
        assert_eq!(mono(&[(1, 2), (3, 1)]).to_string(), "x1^2·x3");
        assert_eq!(BosonicState::vacuum().to_string(), "1");
        assert_eq!(mono(&[(2, 1)]).scale(&r(-3)).to_string(), "(-3)·x2");
    }

    #[test]
    #[should_panic(expected = "mode index")]
    fn mode_zero_panics() {
        BosonicState::vacuum().apply_q(0);
    }
}
