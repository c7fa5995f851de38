//! The monad `V(-1) --σ--> V ⊕ V ⊕ W --τ--> V(1)` on `P²`.
//!
//! ```text
//! σ = ( B1 z0 - z1 )      τ = ( -(B2 z0 - z2),  B1 z0 - z1,  i z0 )
//!     ( B2 z0 - z2 )
//!     (     j z0   )
//! ```

use nalgebra::DMatrix;

use super::data::{AdhmData, AdhmScalar};
use super::stability::{hstack, is_exactly_zero, vstack};

/// `σ` and `τ` as their coefficient matrices of `z0, z1, z2`.
#[derive(Clone, Debug, PartialEq)]
pub struct MonadMaps<T: AdhmScalar> {
    /// `(2n + r) × n` blocks.
    pub sigma: [DMatrix<T>; 3],
    /// `n × (2n + r)` blocks.
    pub tau: [DMatrix<T>; 3],
}

impl<T: AdhmScalar> MonadMaps<T> {
    /// `σ` evaluated at the point `[z0 : z1 : z2]`.
    pub fn sigma_at(&self, z: &[T; 3]) -> DMatrix<T> {
        linear_combination(&self.sigma, z)
    }

    pub fn tau_at(&self, z: &[T; 3]) -> DMatrix<T> {
        linear_combination(&self.tau, z)
    }

    /// Coefficients of `τσ` as a quadratic form, keyed by monomial:
    /// `z0², z0z1, z0z2, z1², z1z2, z2²`.
    pub fn tau_sigma(&self) -> Vec<(&'static str, DMatrix<T>)> {
        let (s, t) = (&self.sigma, &self.tau);
        let pure = |a: usize| &t[a] * &s[a];
        let mixed = |a: usize, b: usize| &t[a] * &s[b] + &t[b] * &s[a];
        vec![
            ("z0^2", pure(0)),
            ("z0*z1", mixed(0, 1)),
            ("z0*z2", mixed(0, 2)),
            ("z1^2", pure(1)),
            ("z1*z2", mixed(1, 2)),
            ("z2^2", pure(2)),
        ]
    }
}

fn linear_combination<T: AdhmScalar>(ms: &[DMatrix<T>; 3], z: &[T; 3]) -> DMatrix<T> {
    &ms[0] * z[0].clone() + &ms[1] * z[1].clone() + &ms[2] * z[2].clone()
}

/// The monad of a datum, exactly as displayed above.
pub fn monad_maps<T: AdhmScalar>(d: &AdhmData<T>) -> MonadMaps<T> {
    let (n, r) = (d.n(), d.r());
    let id = DMatrix::<T>::identity(n, n);
    let minus_id = -id.clone();
    let zn = DMatrix::<T>::zeros(n, n);
    let z_rn = DMatrix::<T>::zeros(r, n);
    let z_nr = DMatrix::<T>::zeros(n, r);
    let sigma = [
        vstack(&[d.b1().clone(), d.b2().clone(), d.j().clone()]),
        vstack(&[minus_id.clone(), zn.clone(), z_rn.clone()]),
        vstack(&[zn.clone(), minus_id.clone(), z_rn]),
    ];
    let tau = [
        hstack(&[-d.b2().clone(), d.b1().clone(), d.i().clone()]),
        hstack(&[zn.clone(), minus_id, z_nr.clone()]),
        hstack(&[id, zn, z_nr]),
    ];
    MonadMaps { sigma, tau }
}

/// Result of expanding `τσ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexCheck<T: AdhmScalar> {
    pub coefficients: Vec<(&'static str, DMatrix<T>)>,
}

impl<T: AdhmScalar> ComplexCheck<T> {
    /// Every coefficient vanishes exactly.
    pub fn is_complex(&self) -> bool {
        self.coefficients.iter().all(|(_, m)| is_exactly_zero(m))
    }

    /// Monomials with a nonzero coefficient.
    pub fn nonzero_terms(&self) -> Vec<&'static str> {
        self.coefficients
            .iter()
            .filter(|(_, m)| !is_exactly_zero(m))
            .map(|(name, _)| *name)
            .collect()
    }
}

pub fn expand_tau_sigma<T: AdhmScalar>(d: &AdhmData<T>) -> ComplexCheck<T> {
    ComplexCheck {
        coefficients: monad_maps(d).tau_sigma(),
    }
}

/// `τσ ≡ 0` as a polynomial identity in `z0, z1, z2`. The `z0²`
/// coefficient is `μ_C` and the others cancel identically.
pub fn check_complex<T: AdhmScalar>(d: &AdhmData<T>) -> bool {
    expand_tau_sigma(d).is_complex()
}
