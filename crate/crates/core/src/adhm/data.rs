use std::fmt::Debug;
use std::ops::Neg;

use nalgebra::{DMatrix, Scalar};
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, NumAssign, ToPrimitive};

use super::AdhmError;

/// Complex double precision.
pub type C64 = Complex<f64>;

/// Exact complex scalars: Gaussian rationals.
pub type GaussianRational = Complex<BigRational>;

/// Scalars an ADHM datum can be built from.
pub trait AdhmScalar: Scalar + Num + NumAssign + Neg<Output = Self> + Debug {
    fn conjugate(&self) -> Self;
    fn from_i64(x: i64) -> Self;
}

impl AdhmScalar for C64 {
    fn conjugate(&self) -> Self {
        self.conj()
    }

    fn from_i64(x: i64) -> Self {
        C64::new(x as f64, 0.0)
    }
}

impl AdhmScalar for GaussianRational {
    fn conjugate(&self) -> Self {
        self.conj()
    }

    fn from_i64(x: i64) -> Self {
        Complex::new(BigRational::from_integer(x.into()), BigRational::from_integer(0.into()))
    }
}

/// Conjugate transpose.
pub fn adjoint<T: AdhmScalar>(m: &DMatrix<T>) -> DMatrix<T> {
    m.map(|x| x.conjugate()).transpose()
}

pub(crate) fn commutator<T: AdhmScalar>(a: &DMatrix<T>, b: &DMatrix<T>) -> DMatrix<T> {
    a * b - b * a
}

/// An ADHM datum `(B1, B2, i, j)` with `B1, B2 ∈ End(V)`, `i ∈ Hom(W, V)`
/// and `j ∈ Hom(V, W)`, where `dim V = n` and `dim W = r`.
///
/// `j` goes from `V` to `W`: the composite `ij` in the complex moment map
/// only makes sense as an endomorphism of `V` with this typing.
#[derive(Clone, Debug, PartialEq)]
pub struct AdhmData<T: AdhmScalar> {
    n: usize,
    r: usize,
    b1: DMatrix<T>,
    b2: DMatrix<T>,
    i: DMatrix<T>,
    j: DMatrix<T>,
}

impl<T: AdhmScalar> AdhmData<T> {
    pub fn new(
        b1: DMatrix<T>,
        b2: DMatrix<T>,
        i: DMatrix<T>,
        j: DMatrix<T>,
    ) -> Result<Self, AdhmError> {
        let n = b1.nrows();
        let r = i.ncols();
        let shapes = [
            ("B1", b1.shape(), (n, n)),
            ("B2", b2.shape(), (n, n)),
            ("i", i.shape(), (n, r)),
            ("j", j.shape(), (r, n)),
        ];
        for (name, got, want) in shapes {
            if got != want {
                return Err(AdhmError::Shape {
                    name,
                    got,
                    expected: want,
                });
            }
        }
        Ok(AdhmData { n, r, b1, b2, i, j })
    }

    pub fn zero(n: usize, r: usize) -> Self {
        AdhmData {
            n,
            r,
            b1: DMatrix::zeros(n, n),
            b2: DMatrix::zeros(n, n),
            i: DMatrix::zeros(n, r),
            j: DMatrix::zeros(r, n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn b1(&self) -> &DMatrix<T> {
        &self.b1
    }

    pub fn b2(&self) -> &DMatrix<T> {
        &self.b2
    }

    pub fn i(&self) -> &DMatrix<T> {
        &self.i
    }

    pub fn j(&self) -> &DMatrix<T> {
        &self.j
    }

    /// `μ_C = [B1, B2] + ij`.
    pub fn mu_complex(&self) -> DMatrix<T> {
        commutator(&self.b1, &self.b2) + &self.i * &self.j
    }

    /// `μ_R = [B1, B1†] + [B2, B2†] + ii† - j†j`.
    pub fn mu_real(&self) -> DMatrix<T> {
        commutator(&self.b1, &adjoint(&self.b1)) + commutator(&self.b2, &adjoint(&self.b2))
            + &self.i * adjoint(&self.i)
            - adjoint(&self.j) * &self.j
    }

    /// The quaternionic structure `J(B1, B2, i, j) = (-B2†, B1†, -j†, i†)`.
    pub fn quaternion_j(&self) -> Self {
        AdhmData {
            n: self.n,
            r: self.r,
            b1: -adjoint(&self.b2),
            b2: adjoint(&self.b1),
            i: -adjoint(&self.j),
            j: adjoint(&self.i),
        }
    }

    /// `(t1 B1, t2 B2, t1 i, t2 j)`.
    pub fn torus_act(&self, t1: &T, t2: &T) -> Self {
        AdhmData {
            n: self.n,
            r: self.r,
            b1: &self.b1 * t1.clone(),
            b2: &self.b2 * t2.clone(),
            i: &self.i * t1.clone(),
            j: &self.j * t2.clone(),
        }
    }

    /// `(g B1 g⁻¹, g B2 g⁻¹, g i, j g⁻¹)` given `g` and its inverse.
    pub fn gauge(&self, g: &DMatrix<T>, g_inv: &DMatrix<T>) -> Self {
        AdhmData {
            n: self.n,
            r: self.r,
            b1: g * &self.b1 * g_inv,
            b2: g * &self.b2 * g_inv,
            i: g * &self.i,
            j: &self.j * g_inv,
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        AdhmData {
            n: self.n,
            r: self.r,
            b1: &self.b1 * s.clone(),
            b2: &self.b2 * s.clone(),
            i: &self.i * s.clone(),
            j: &self.j * s.clone(),
        }
    }

    /// Number of complex coordinates, `2n² + 2nr`.
    pub fn coordinate_count(&self) -> usize {
        2 * self.n * self.n + 2 * self.n * self.r
    }

    /// All entries: `B1`, `B2`, `i`, `j`, each row by row.
    pub fn coordinates(&self) -> Vec<T> {
        [&self.b1, &self.b2, &self.i, &self.j]
            .iter()
            .flat_map(|m| m.row_iter().flat_map(|row| row.iter().cloned().collect::<Vec<_>>()).collect::<Vec<_>>())
            .collect()
    }

    /// The datum of shape `(n, r)` whose only nonzero coordinate (in the
    /// order of [`Self::coordinates`]) is `value` at `idx`.
    pub fn coordinate_vector(n: usize, r: usize, idx: usize, value: T) -> Self {
        let mut d = AdhmData::zero(n, r);
        let mut rest = idx;
        for m in [&mut d.b1, &mut d.b2, &mut d.i, &mut d.j] {
            let len = m.len();
            if rest < len {
                let cols = m.ncols();
                m[(rest / cols, rest % cols)] = value;
                break;
            }
            rest -= len;
        }
        assert!(idx < 2 * n * n + 2 * n * r, "coordinate index {idx} out of range");
        d
    }

    /// Derivative of `μ_C` at `self` in the direction `delta`:
    /// `[δB1, B2] + [B1, δB2] + δi j + i δj`.
    pub fn d_mu_complex(&self, delta: &Self) -> DMatrix<T> {
        commutator(&delta.b1, &self.b2)
            + commutator(&self.b1, &delta.b2)
            + &delta.i * &self.j
            + &self.i * &delta.j
    }

    /// Derivative of `μ_R` at `self` in the direction `delta`.
    pub fn d_mu_real(&self, delta: &Self) -> DMatrix<T> {
        let term = |b: &DMatrix<T>, db: &DMatrix<T>| {
            commutator(db, &adjoint(b)) + commutator(b, &adjoint(db))
        };
        term(&self.b1, &delta.b1)
            + term(&self.b2, &delta.b2)
            + &delta.i * adjoint(&self.i)
            + &self.i * adjoint(&delta.i)
            - adjoint(&delta.j) * &self.j
            - adjoint(&self.j) * &delta.j
    }

    /// Infinitesimal action of `ξ ∈ gl(V)`: `([ξ, B1], [ξ, B2], ξ i, -j ξ)`.
    pub fn infinitesimal_gauge(&self, xi: &DMatrix<T>) -> Self {
        AdhmData {
            n: self.n,
            r: self.r,
            b1: commutator(xi, &self.b1),
            b2: commutator(xi, &self.b2),
            i: xi * &self.i,
            j: -(&self.j * xi),
        }
    }

    pub fn is_zero(&self) -> bool {
        [&self.b1, &self.b2, &self.i, &self.j]
            .iter()
            .all(|m| m.iter().all(|x| x.is_zero()))
    }
}

impl AdhmData<GaussianRational> {
    pub fn to_float(&self) -> AdhmData<C64> {
        let conv = |m: &DMatrix<GaussianRational>| {
            m.map(|z| {
                C64::new(
                    z.re.to_f64().expect("finite"),
                    z.im.to_f64().expect("finite"),
                )
            })
        };
        AdhmData {
            n: self.n,
            r: self.r,
            b1: conv(&self.b1),
            b2: conv(&self.b2),
            i: conv(&self.i),
            j: conv(&self.j),
        }
    }
}

/// Frobenius norm of a complex matrix.
pub fn frobenius(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

impl AdhmData<C64> {
    /// `‖B1‖² + ‖B2‖² + ‖i‖² + ‖j‖²`.
    pub fn norm_sqr(&self) -> f64 {
        [&self.b1, &self.b2, &self.i, &self.j]
            .iter()
            .map(|m| frobenius(m).powi(2))
            .sum()
    }

    /// `F = ‖B1‖² + ε‖B2‖² + ‖i‖² + ε‖j‖²`, the torus moment map paired
    /// with the generic direction `(1, ε)`.
    pub fn torus_potential(&self, eps: f64) -> f64 {
        frobenius(&self.b1).powi(2)
            + eps * frobenius(&self.b2).powi(2)
            + frobenius(&self.i).powi(2)
            + eps * frobenius(&self.j).powi(2)
    }

    /// Largest entrywise distance to another datum of the same shape.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let pairs = [
            (&self.b1, &other.b1),
            (&self.b2, &other.b2),
            (&self.i, &other.i),
            (&self.j, &other.j),
        ];
        pairs
            .iter()
            .flat_map(|(a, b)| a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()))
            .fold(0.0, f64::max)
    }
}
