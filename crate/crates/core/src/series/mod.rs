//! Truncated bivariate power series in `q` with polynomial-in-`t`
//! coefficients, and the generating functions built from them.

mod poly;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{super_character, GeneratorSpec};

pub use poly::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series not invertible: constant term is {0}, expected 1")]
    NotInvertible(Poly),
    #[error("beyond truncation: requested q^{n} from a series of order {order}")]
    BeyondTruncation { n: usize, order: usize },
    #[error("malformed Betti profile: {0}")]
    MalformedProfile(String),
}

/// `Σ_{n=0}^{N} q^n P_n(t)` with `N = order`; everything of `q`-degree
/// above the order is discarded.
///
/// Binary operations on series of different orders truncate to the smaller
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateSeries {
    order: usize,
    coeffs: Vec<Poly>,
}

impl BivariateSeries {
    pub fn zero(order: usize) -> Self {
        BivariateSeries {
            order,
            coeffs: vec![Poly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        BivariateSeries::monomial(order, Poly::one(), 0)
    }

    /// `p(t) q^n`, or zero when `n` exceeds the order.
    pub fn monomial(order: usize, p: Poly, n: usize) -> Self {
        let mut s = BivariateSeries::zero(order);
        if n <= order {
            s.coeffs[n] = p;
        }
        s
    }

    /// Builds a series from its `q`-coefficients, padding with zeros or
    /// truncating to `order + 1` entries.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<Poly>) -> Self {
        coeffs.resize(order + 1, Poly::zero());
        BivariateSeries { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Coefficient of `q^n`; fails past the truncation order.
    pub fn extract_poincare(&self, n: usize) -> Result<&Poly, SeriesError> {
        self.coeffs.get(n).ok_or(SeriesError::BeyondTruncation {
            n,
            order: self.order,
        })
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        BivariateSeries {
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let coeffs = (0..=order)
            .map(|n| &self.coeffs[n] + &other.coeffs[n])
            .collect();
        BivariateSeries { order, coeffs }
    }

    /// Cauchy product truncated to the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = BivariateSeries::zero(order);
        for (a, x) in self.coeffs.iter().enumerate().take(order + 1) {
            if x.is_zero() {
                continue;
            }
            for (b, y) in other.coeffs.iter().enumerate().take(order + 1 - a) {
                if !y.is_zero() {
                    out.coeffs[a + b] = &out.coeffs[a + b] + &(x * y);
                }
            }
        }
        out
    }

    /// `self^k` by repeated truncated multiplication.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = BivariateSeries::one(self.order);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse to the same order.
    ///
    /// Only series whose `q^0` coefficient is the constant polynomial 1 are
    /// accepted, so the inverse stays integral.
    pub fn geom_inverse(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0] != Poly::one() {
            return Err(SeriesError::NotInvertible(self.coeffs[0].clone()));
        }
        let mut inv = BivariateSeries::one(self.order);
        for n in 1..=self.order {
            let mut acc = Poly::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() && !inv.coeffs[n - k].is_zero() {
                    acc = &acc + &(&self.coeffs[k] * &inv.coeffs[n - k]);
                }
            }
            inv.coeffs[n] = -&acc;
        }
        Ok(inv)
    }

    /// Evaluates every coefficient at `t = -1`.
    pub fn euler_generating(&self) -> Vec<BigInt> {
        let minus_one = BigInt::from(-1);
        self.coeffs.iter().map(|p| p.eval(&minus_one)).collect()
    }

    /// Evaluates every coefficient at `t = 1`.
    pub fn at_t_one(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(Poly::total).collect()
    }
}

impl fmt::Display for BivariateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "({p})")?,
                1 => write!(f, "({p})q")?,
                _ => write!(f, "({p})q^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order + 1)
    }
}

/// Betti numbers `(b0, b1, b2, b3, b4)` of a surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BettiProfile(pub [u32; 5]);

impl BettiProfile {
    pub const PLANE: BettiProfile = BettiProfile([1, 0, 0, 0, 0]);
    pub const K3: BettiProfile = BettiProfile([1, 0, 22, 0, 1]);

    pub fn new(b: [u32; 5]) -> Self {
        BettiProfile(b)
    }

    pub fn get(&self, degree: usize) -> u32 {
        self.0[degree]
    }

    /// `Σ b_i t^i`, the Poincaré polynomial of the surface itself.
    pub fn poincare(&self) -> Poly {
        Poly::from_coeffs(self.0.iter().map(|&b| BigInt::from(b)).collect())
    }

    /// One generator per basis class: `b_i` classes of cohomological
    /// degree `i`, with consecutive class ids starting at 0.
    pub fn generators(&self) -> Vec<GeneratorSpec> {
        let mut gens = Vec::new();
        for (degree, &count) in self.0.iter().enumerate() {
            for _ in 0..count {
                gens.push(GeneratorSpec::new(gens.len() as u32, degree as u8).expect("degree <= 4"));
            }
        }
        gens
    }
}

impl fmt::Display for BettiProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e] = self.0;
        write!(f, "{a},{b},{c},{d},{e}")
    }
}

impl FromStr for BettiProfile {
    type Err = SeriesError;

    /// Parses five comma-separated non-negative integers.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let values = s
            .split(',')
            .map(|x| x.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| SeriesError::MalformedProfile(format!("{s:?}: {e}")))?;
        let b: [u32; 5] = values.try_into().map_err(|v: Vec<u32>| {
            SeriesError::MalformedProfile(format!("expected 5 entries, got {}", v.len()))
        })?;
        Ok(BettiProfile(b))
    }
}

/// `(1 + sign * t^t_degree q^m)` as a series of the given order.
fn binomial_factor(order: usize, sign: i64, t_degree: usize, m: usize) -> BivariateSeries {
    BivariateSeries::one(order).add(&BivariateSeries::monomial(
        order,
        Poly::monomial(sign, t_degree),
        m,
    ))
}

/// Expands Göttsche's product
///
/// ```text
/// Π_m (1 + t^{2m-1} q^m)^{b1} (1 + t^{2m+1} q^m)^{b3}
///     / ((1 - t^{2m-2} q^m)^{b0} (1 - t^{2m} q^m)^{b2} (1 - t^{2m+2} q^m)^{b4})
/// ```
///
/// to order `order`. Factors with `m > order` are `1 + O(q^{order+1})`.
pub fn goettsche(betti: &BettiProfile, order: usize) -> BivariateSeries {
    let mut acc = BivariateSeries::one(order);
    for m in 1..=order {
        let numerators = [(betti.get(1), 2 * m - 1), (betti.get(3), 2 * m + 1)];
        for (exp, t_degree) in numerators {
            if exp > 0 {
                acc = acc.mul(&binomial_factor(order, 1, t_degree, m).pow(exp));
            }
        }
        let denominators = [
            (betti.get(0), 2 * m - 2),
            (betti.get(2), 2 * m),
            (betti.get(4), 2 * m + 2),
        ];
        for (exp, t_degree) in denominators {
            if exp > 0 {
                let inverse = binomial_factor(order, -1, t_degree, m)
                    .geom_inverse()
                    .expect("constant term is 1");
                acc = acc.mul(&inverse.pow(exp));
            }
        }
    }
    acc
}

/// A power series in `q` alone, truncated at `order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnivariateSeries {
    pub coeffs: Vec<BigInt>,
}

impl UnivariateSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }
}

fn univariate(s: &BivariateSeries) -> UnivariateSeries {
    UnivariateSeries {
        coeffs: s.at_t_one(),
    }
}

/// `tr_R q^{d0} = Π_j 1/(1 - q^j)` to order `order`.
pub fn heisenberg_character(order: usize) -> UnivariateSeries {
    let mut acc = BivariateSeries::one(order);
    for j in 1..=order {
        let inv = binomial_factor(order, -1, 0, j)
            .geom_inverse()
            .expect("constant term is 1");
        acc = acc.mul(&inv);
    }
    univariate(&acc)
}

/// `tr_F q^d = Π_j (1 + q^j)` to order `order`.
pub fn clifford_character(order: usize) -> UnivariateSeries {
    let mut acc = BivariateSeries::one(order);
    for j in 1..=order {
        acc = acc.mul(&binomial_factor(order, 1, 0, j));
    }
    univariate(&acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientMismatch {
    pub n: usize,
    pub fock: Poly,
    pub goettsche: Poly,
}

/// Outcome of comparing the Fock-space character with Göttsche's product.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub betti: BettiProfile,
    pub order: usize,
    pub fock: BivariateSeries,
    pub goettsche: BivariateSeries,
    pub first_mismatch: Option<CoefficientMismatch>,
}

impl IdentityReport {
    pub fn equal(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Counts the basis of the super-Fock space generated by the classes of
/// `betti` and compares bidegree by bidegree with [`goettsche`].
pub fn character_matches_goettsche(betti: &BettiProfile, order: usize) -> IdentityReport {
    let fock = super_character(&betti.generators(), order);
    let product = goettsche(betti, order);
    let first_mismatch = fock
        .coeffs()
        .iter()
        .zip(product.coeffs())
        .enumerate()
        .find(|(_, (a, b))| a != b)
        .map(|(n, (a, b))| CoefficientMismatch {
            n,
            fock: a.clone(),
            goettsche: b.clone(),
        });
    IdentityReport {
        betti: *betti,
        order,
        fock,
        goettsche: product,
        first_mismatch,
    }
}
