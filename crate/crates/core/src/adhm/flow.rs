//! Moving a stable datum to the level set `μ_R = -ζ_R · Id` inside its
//! `GL(V)`-orbit.
//!
//! The flow minimizes the Kempf–Ness functional
//! `Φ(g) = ½‖g·x‖² + ζ_R log|det g|` over `GL(V)/U(V)`. Along
//! `g -> exp(sξ) g` with `ξ` hermitian its derivative is
//! `tr(ξ (μ_R(g·x) + ζ_R))`, so the gradient is the hermitian matrix
//! `H = μ_R + ζ_R Id` and each step replaces `g` by `exp(-ηH) g`. The step
//! `η` is chosen by backtracking on `Φ`.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::data::{adjoint, frobenius, AdhmData, C64};
use super::stability::stability_check;
use super::AdhmError;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowOptions {
    /// Level `ζ_R`; must be negative.
    pub zeta_r: f64,
    /// Initial step length.
    pub step: f64,
    pub max_iter: usize,
    /// Target for `‖μ_R + ζ_R Id‖_F`.
    pub tol: f64,
}

impl Default for FlowOptions {
    fn default() -> Self {
        FlowOptions {
            zeta_r: -1.0,
            step: 0.25,
            max_iter: 10_000,
            tol: 1e-8,
        }
    }
}

impl FlowOptions {
    pub fn validate(&self) -> Result<(), AdhmError> {
        let bad = |msg: &str| Err(AdhmError::InvalidOptions(msg.to_string()));
        if !(self.zeta_r < 0.0) {
            return bad("zeta_r must be negative");
        }
        if !(self.step > 0.0) {
            return bad("step must be positive");
        }
        if self.max_iter == 0 {
            return bad("max_iter must be positive");
        }
        if !(self.tol > 0.0) {
            return bad("tol must be positive");
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct FlowResult {
    /// The accumulated gauge transformation.
    pub g: DMatrix<C64>,
    /// `g · d`.
    pub data: AdhmData<C64>,
    /// `‖μ_R(g·d) + ζ_R Id‖_F`.
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// `‖μ_R(d) + ζ_R Id‖_F`.
pub fn level_residual(d: &AdhmData<C64>, zeta_r: f64) -> f64 {
    frobenius(&gradient(d, zeta_r))
}

fn gradient(d: &AdhmData<C64>, zeta_r: f64) -> DMatrix<C64> {
    let n = d.n();
    d.mu_real() + DMatrix::<C64>::identity(n, n) * C64::new(zeta_r, 0.0)
}

/// `exp(s H)` for hermitian `H`.
fn hermitian_exp(h: &DMatrix<C64>, s: f64) -> DMatrix<C64> {
    // symmetrize away rounding before the eigensolver
    let h = (h + adjoint(h)) * C64::new(0.5, 0.0);
    let eig = h.symmetric_eigen();
    let exp_diag = eig.eigenvalues.map(|x| C64::new((s * x).exp(), 0.0));
    &eig.eigenvectors * DMatrix::from_diagonal(&exp_diag) * adjoint(&eig.eigenvectors)
}

/// Runs the flow from `d`. Requires `μ_C(d) = 0` within `opts.tol` and a
/// stable datum; otherwise no point of the orbit reaches the level set.
/// Running out of iterations is reported through `converged = false`.
pub fn kempf_ness_flow(d: &AdhmData<C64>, opts: &FlowOptions) -> Result<FlowResult, AdhmError> {
    opts.validate()?;
    let mu_c = frobenius(&d.mu_complex());
    if mu_c > opts.tol {
        return Err(AdhmError::ComplexMomentNonzero(mu_c));
    }
    if !stability_check(d) {
        return Err(AdhmError::Unstable);
    }
    let n = d.n();
    let c = -opts.zeta_r;
    let mut y = d.clone();
    let mut g = DMatrix::<C64>::identity(n, n);
    let mut h = gradient(&y, opts.zeta_r);
    let mut residual = frobenius(&h);
    let mut eta = opts.step;
    let mut iterations = 0;

    while residual > opts.tol && iterations < opts.max_iter {
        iterations += 1;
        let norm_y = y.norm_sqr();
        let trace_h = h.trace().re;
        let grad_sq = residual * residual;
        let mut accepted = None;
        while eta > 1e-18 {
            let e = hermitian_exp(&h, -eta);
            let e_inv = hermitian_exp(&h, eta);
            let y_new = y.gauge(&e, &e_inv);
            let h_new = gradient(&y_new, opts.zeta_r);
            let res_new = frobenius(&h_new);
            let decrease = 0.5 * (y_new.norm_sqr() - norm_y) + c * eta * trace_h;
            let armijo = decrease <= -1e-4 * eta * grad_sq;
            // below rounding of Φ the functional cannot arbitrate; fall back
            // to monotone residual
            let in_noise = eta * grad_sq < 1e-11 * (1.0 + norm_y);
            if armijo || (in_noise && res_new < residual) {
                accepted = Some((e, y_new, h_new, res_new));
                break;
            }
            eta *= 0.5;
        }
        let Some((e, y_new, h_new, res_new)) = accepted else {
            break;
        };
        g = e * g;
        y = y_new;
        h = h_new;
        residual = res_new;
        eta = (eta * 1.5).min(1e3);
    }

    Ok(FlowResult {
        g,
        data: y,
        residual,
        iterations,
        converged: residual <= opts.tol,
    })
}

fn random_complex<R: Rng>(rng: &mut R) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

const MAX_SAMPLING_ATTEMPTS: usize = 100;

/// A stable datum with `μ_C = 0` exactly: diagonal `B1`, `B2` with pairwise
/// distinct joint eigenvalues (`n` distinct points of `C²`), `i` with all
/// entries bounded away from zero, and `j = 0`. Deterministic in `seed`.
pub fn random_stable_data(n: usize, r: usize, seed: u64) -> Result<AdhmData<C64>, AdhmError> {
    if n == 0 || r == 0 {
        return Err(AdhmError::InvalidOptions("random data needs n >= 1 and r >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_SAMPLING_ATTEMPTS {
        let points: Vec<(C64, C64)> = (0..n)
            .map(|_| (random_complex(&mut rng), random_complex(&mut rng)))
            .collect();
        let separated = points.iter().enumerate().all(|(a, p)| {
            points[a + 1..]
                .iter()
                .all(|q| ((p.0 - q.0).norm_sqr() + (p.1 - q.1).norm_sqr()).sqrt() > 0.05)
        });
        let i = DMatrix::from_fn(n, r, |_, _| {
            let z = random_complex(&mut rng);
            // keep |z| >= 0.1 so every row of i is visibly nonzero
            if z.norm() < 0.1 {
                z + C64::new(0.5, 0.0)
            } else {
                z
            }
        });
        if !separated {
            continue;
        }
        let b1 = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(n, points.iter().map(|p| p.0)));
        let b2 = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(n, points.iter().map(|p| p.1)));
        let d = AdhmData::new(b1, b2, i, DMatrix::zeros(r, n))?;
        if stability_check(&d) {
            return Ok(d);
        }
    }
    Err(AdhmError::SamplingFailed(MAX_SAMPLING_ATTEMPTS))
}

/// A seeded invertible matrix `1 + A/2` with `A` uniform in the unit box,
/// resampled until `|det| >= 0.1`.
pub fn random_gl(n: usize, seed: u64) -> (DMatrix<C64>, DMatrix<C64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let g = DMatrix::<C64>::identity(n, n)
            + DMatrix::from_fn(n, n, |_, _| random_complex(&mut rng) * 0.5);
        if g.determinant().norm() >= 0.1 {
            let inv = g.clone().try_inverse().expect("determinant bounded away from zero");
            return (g, inv);
        }
    }
}

/// Values invariant under `U(V)`: traces of all words of length 1 to 4 in
/// `B1, B2, B1†, B2†`, followed by the entries of `i†i`.
pub fn unitary_invariants(d: &AdhmData<C64>) -> Vec<C64> {
    let letters = [d.b1().clone(), d.b2().clone(), adjoint(d.b1()), adjoint(d.b2())];
    let mut out = Vec::new();
    let mut words: Vec<DMatrix<C64>> = vec![DMatrix::identity(d.n(), d.n())];
    for _ in 0..4 {
        words = words
            .iter()
            .flat_map(|w| letters.iter().map(move |l| w * l))
            .collect();
        out.extend(words.iter().map(|w| w.trace()));
    }
    out.extend((adjoint(d.i()) * d.i()).iter().copied());
    out
}

/// `tr(B^k)` for `k = 1..=n`; these determine the spectrum of `B`.
pub fn power_traces(b: &DMatrix<C64>) -> Vec<C64> {
    let mut p = DMatrix::<C64>::identity(b.nrows(), b.ncols());
    (0..b.nrows())
        .map(|_| {
            p = &p * b;
            p.trace()
        })
        .collect()
}

/// Largest `|a_k - b_k| / max(1, |a_k|)`.
pub fn max_relative_gap(a: &[C64], b: &[C64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm() / x.norm().max(1.0))
        .fold(0.0, f64::max)
}
