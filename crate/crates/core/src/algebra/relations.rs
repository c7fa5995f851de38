//! Exact verification of the defining relations on explicit samples.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::boson::{bilinear_b, BosonKey, BosonicState, CentralScalar};
use super::fermion::{FermionKey, FermionicState};
use super::superfock::{CentralCharges, GeneratorSpec, SuperFockState};
use super::{AlgebraError, State};
use crate::linalg;

/// The first place where the two sides of a relation disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// Index into the sample list.
    pub sample: usize,
    /// Basis key whose coefficients differ.
    pub term: String,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sample #{}: coefficient of {} is {} on the left, {} on the right",
            self.sample, self.term, self.lhs, self.rhs
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationOutcome {
    pub relation: String,
    pub checked: usize,
    pub counterexample: Option<Counterexample>,
}

impl RelationOutcome {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationReport {
    pub outcomes: Vec<RelationOutcome>,
}

impl RelationReport {
    pub fn holds(&self) -> bool {
        self.outcomes.iter().all(RelationOutcome::holds)
    }

    pub fn first_failure(&self) -> Option<&RelationOutcome> {
        self.outcomes.iter().find(|o| !o.holds())
    }

    pub fn merge(&mut self, other: RelationReport) {
        self.outcomes.extend(other.outcomes);
    }
}

fn compare<K: Ord + Clone + fmt::Display>(
    relation: String,
    samples: usize,
    mut sides: impl FnMut(usize) -> Result<(State<K>, State<K>), AlgebraError>,
) -> Result<RelationOutcome, AlgebraError> {
    for idx in 0..samples {
        let (lhs, rhs) = sides(idx)?;
        if let Some((key, l, r)) = lhs.first_difference(&rhs) {
            return Ok(RelationOutcome {
                relation,
                checked: idx + 1,
                counterexample: Some(Counterexample {
                    sample: idx,
                    term: key.to_string(),
                    lhs: l.to_string(),
                    rhs: r.to_string(),
                }),
            });
        }
    }
    Ok(RelationOutcome {
        relation,
        checked: samples,
        counterexample: None,
    })
}

fn delta(i: u32, j: u32) -> BigRational {
    if i == j {
        BigRational::one()
    } else {
        BigRational::zero()
    }
}

/// Which relation family to evaluate, with its operands.
#[derive(Clone, Copy, Debug)]
pub enum RelationCheck<'a> {
    /// `[p_i, p_j] = 0`, `[q_i, q_j] = 0`, `[p_i, q_j] = δ_ij a`.
    Boson {
        i: u32,
        j: u32,
        a: &'a CentralScalar,
        samples: &'a [BosonicState],
    },
    /// `{ψ_i, ψ_j} = 0`, `{ψ*_i, ψ*_j} = 0`, `{ψ_i, ψ*_j} = δ_ij`.
    Fermion {
        i: u32,
        j: u32,
        samples: &'a [FermionicState],
    },
    /// With `ε = (-1)^{deg g · deg h}`:
    /// `E_i^g E_j^h = ε E_j^h E_i^g`, `F_i^g F_j^h = ε F_j^h F_i^g`,
    /// `E_i^g F_j^h = ε F_j^h E_i^g + δ_gh δ_ij c_i`.
    Super {
        i: u32,
        j: u32,
        g: GeneratorSpec,
        h: GeneratorSpec,
        samples: &'a [SuperFockState],
        charges: &'a CentralCharges,
    },
}

/// Evaluates both sides of each relation of the family on every sample,
/// exactly, and reports the first differing coefficient.
pub fn commutator_check(check: RelationCheck<'_>) -> Result<RelationReport, AlgebraError> {
    let mut outcomes = Vec::new();
    match check {
        RelationCheck::Boson { i, j, a, samples } => {
            outcomes.push(compare(format!("[p{i}, p{j}] = 0"), samples.len(), |k| {
                let s = &samples[k];
                Ok((s.apply_p(j, a).apply_p(i, a), s.apply_p(i, a).apply_p(j, a)))
            })?);
            outcomes.push(compare(format!("[q{i}, q{j}] = 0"), samples.len(), |k| {
                let s = &samples[k];
                Ok((s.apply_q(j).apply_q(i), s.apply_q(i).apply_q(j)))
            })?);
            let central = a.value() * delta(i, j);
            outcomes.push(compare(
                format!("[p{i}, q{j}] = δ({i},{j})·a"),
                samples.len(),
                |k| {
                    let s = &samples[k];
                    let lhs = &s.apply_q(j).apply_p(i, a) - &s.apply_p(i, a).apply_q(j);
                    Ok((lhs, s.scale(&central)))
                },
            )?);
        }
        RelationCheck::Fermion { i, j, samples } => {
            outcomes.push(compare(format!("ψ{i}ψ{j} + ψ{j}ψ{i} = 0"), samples.len(), |k| {
                let s = &samples[k];
                let lhs = &s.apply_psi(j).apply_psi(i) + &s.apply_psi(i).apply_psi(j);
                Ok((lhs, FermionicState::zero()))
            })?);
            outcomes.push(compare(
                format!("ψ*{i}ψ*{j} + ψ*{j}ψ*{i} = 0"),
                samples.len(),
                |k| {
                    let s = &samples[k];
                    let lhs = &s.apply_psi_star(j).apply_psi_star(i)
                        + &s.apply_psi_star(i).apply_psi_star(j);
                    Ok((lhs, FermionicState::zero()))
                },
            )?);
            let central = delta(i, j);
            outcomes.push(compare(
                format!("ψ{i}ψ*{j} + ψ*{j}ψ{i} = δ({i},{j})"),
                samples.len(),
                |k| {
                    let s = &samples[k];
                    let lhs = &s.apply_psi_star(j).apply_psi(i) + &s.apply_psi(i).apply_psi_star(j);
                    Ok((lhs, s.scale(&central)))
                },
            )?);
        }
        RelationCheck::Super {
            i,
            j,
            g,
            h,
            samples,
            charges,
        } => {
            let eps = super::sign((g.degree() as usize) * (h.degree() as usize));
            let (a, b) = (g.class_id(), h.class_id());
            outcomes.push(compare(
                format!("E[{a},{i}]E[{b},{j}] = ±E[{b},{j}]E[{a},{i}]"),
                samples.len(),
                |k| {
                    let s = &samples[k];
                    let lhs = s.annihilate(&h, j, charges)?.annihilate(&g, i, charges)?;
                    let rhs = s.annihilate(&g, i, charges)?.annihilate(&h, j, charges)?;
                    Ok((lhs, rhs.scale(&eps)))
                },
            )?);
            outcomes.push(compare(
                format!("F[{a},{i}]F[{b},{j}] = ±F[{b},{j}]F[{a},{i}]"),
                samples.len(),
                |k| {
                    let s = &samples[k];
                    let lhs = s.create(&h, j).create(&g, i);
                    let rhs = s.create(&g, i).create(&h, j);
                    Ok((lhs, rhs.scale(&eps)))
                },
            )?);
            let central = if g == h && i == j {
                BigRational::from_integer(charges.get(i)?.into())
            } else {
                BigRational::zero()
            };
            outcomes.push(compare(
                format!("E[{a},{i}]F[{b},{j}] = ±F[{b},{j}]E[{a},{i}] + δ·c{i}"),
                samples.len(),
                |k| {
                    let s = &samples[k];
                    let lhs = s.create(&h, j).annihilate(&g, i, charges)?;
                    let swapped = s.annihilate(&g, i, charges)?.create(&h, j);
                    Ok((lhs, &swapped.scale(&eps) + &s.scale(&central)))
                },
            )?);
        }
    }
    Ok(RelationReport { outcomes })
}

/// `[d0, q_j] = j q_j` and `[d0, p_j] = -j p_j` on every sample.
pub fn check_boson_derivation(
    j: u32,
    a: &CentralScalar,
    samples: &[BosonicState],
) -> RelationReport {
    let jj = BigRational::from_integer(j.into());
    let outcomes = vec![
        compare(format!("[d0, q{j}] = {j}·q{j}"), samples.len(), |k| {
            let s = &samples[k];
            let lhs = &s.apply_q(j).apply_d0() - &s.apply_d0().apply_q(j);
            Ok((lhs, s.apply_q(j).scale(&jj)))
        }),
        compare(format!("[d0, p{j}] = -{j}·p{j}"), samples.len(), |k| {
            let s = &samples[k];
            let lhs = &s.apply_p(j, a).apply_d0() - &s.apply_d0().apply_p(j, a);
            Ok((lhs, s.apply_p(j, a).scale(&-&jj)))
        }),
    ];
    RelationReport {
        outcomes: outcomes.into_iter().map(|o| o.expect("infallible")).collect(),
    }
}

/// `[d, ψ_j] = j ψ_j` and `[d, ψ*_j] = -j ψ*_j` on every sample.
pub fn check_fermion_derivation(j: u32, samples: &[FermionicState]) -> RelationReport {
    let jj = BigRational::from_integer(j.into());
    let outcomes = vec![
        compare(format!("[d, ψ{j}] = {j}·ψ{j}"), samples.len(), |k| {
            let s = &samples[k];
            let lhs = &s.apply_psi(j).apply_d() - &s.apply_d().apply_psi(j);
            Ok((lhs, s.apply_psi(j).scale(&jj)))
        }),
        compare(format!("[d, ψ*{j}] = -{j}·ψ*{j}"), samples.len(), |k| {
            let s = &samples[k];
            let lhs = &s.apply_psi_star(j).apply_d() - &s.apply_d().apply_psi_star(j);
            Ok((lhs, s.apply_psi_star(j).scale(&-&jj)))
        }),
    ];
    RelationReport {
        outcomes: outcomes.into_iter().map(|o| o.expect("infallible")).collect(),
    }
}

fn scalar_outcome(
    relation: String,
    checked: usize,
    failure: Option<(usize, String, BigRational, BigRational)>,
) -> RelationOutcome {
    RelationOutcome {
        relation,
        checked,
        counterexample: failure.map(|(sample, term, l, r)| Counterexample {
            sample,
            term,
            lhs: l.to_string(),
            rhs: r.to_string(),
        }),
    }
}

/// `B(q_i s, t) = B(s, p_i t)` for every pair drawn from `samples`.
pub fn check_adjointness(i: u32, a: &CentralScalar, samples: &[BosonicState]) -> RelationOutcome {
    let mut checked = 0;
    for (x, s) in samples.iter().enumerate() {
        for (y, t) in samples.iter().enumerate() {
            checked += 1;
            let lhs = bilinear_b(&s.apply_q(i), t, a);
            let rhs = bilinear_b(s, &t.apply_p(i, a), a);
            if lhs != rhs {
                let idx = x * samples.len() + y;
                return scalar_outcome(
                    format!("B(q{i}s, t) = B(s, p{i}t)"),
                    checked,
                    Some((idx, format!("({s}, {t})"), lhs, rhs)),
                );
            }
        }
    }
    scalar_outcome(format!("B(q{i}s, t) = B(s, p{i}t)"), checked, None)
}

/// The form determined by `B(1, 1) = 1` and adjointness alone:
/// `B(x_i m, t) = B(m, p_i t)`, peeled one factor at a time.
fn form_from_adjointness(m: &BosonKey, t: &BosonicState, a: &CentralScalar) -> BigRational {
    match m.factors().next() {
        None => t.coeff(&BosonKey::vacuum()),
        Some((mode, exp)) => {
            let rest = BosonKey::new(m.factors().map(|(md, e)| if md == mode { (md, e - 1) } else { (md, e) }));
            debug_assert!(exp >= 1);
            form_from_adjointness(&rest, &t.apply_p(mode, a), a)
        }
    }
}

/// On every pair of monomials of weight at most `max_weight`, checks
/// [`bilinear_b`] against the form derived from adjointness, and on the
/// diagonal against `a^{Σ e_k} Π e_k!`.
pub fn check_bilinear_closed_form(max_weight: u32, a: &CentralScalar) -> RelationOutcome {
    let basis = BosonicState::basis_up_to(max_weight);
    let relation = format!("B(x^e, x^f) = δ(e,f)·a^|e|·Π e_k!  (weight ≤ {max_weight})");
    let mut checked = 0;
    for (x, m) in basis.iter().enumerate() {
        for (y, n) in basis.iter().enumerate() {
            checked += 1;
            let s = BosonicState::basis(m.clone());
            let t = BosonicState::basis(n.clone());
            let via_form = bilinear_b(&s, &t, a);
            let via_adjoint = form_from_adjointness(m, &t, a);
            let closed = if m == n {
                let fact: BigRational = m
                    .factors()
                    .flat_map(|(_, e)| 1..=e)
                    .map(|k| BigRational::from_integer(k.into()))
                    .fold(BigRational::one(), |acc, k| acc * k);
                num_traits::pow(a.value().clone(), m.degree() as usize) * fact
            } else {
                BigRational::zero()
            };
            if via_form != closed || via_adjoint != closed {
                let bad = if via_form != closed { via_form } else { via_adjoint };
                return scalar_outcome(
                    relation,
                    checked,
                    Some((x * basis.len() + y, format!("({m}, {n})"), bad, closed)),
                );
            }
        }
    }
    scalar_outcome(relation, checked, None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FockKind {
    Boson,
    Fermion,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpan {
    pub weight: u32,
    /// Number of creation words of this weight applied to the vacuum.
    pub words: usize,
    /// Rank of the resulting states.
    pub rank: usize,
    /// Dimension of the weight space, counted independently.
    pub dimension: u64,
    /// Whether every produced state is homogeneous of this weight.
    pub homogeneous: bool,
}

impl WeightSpan {
    pub fn is_basis(&self) -> bool {
        self.homogeneous && self.words == self.rank && self.rank as u64 == self.dimension
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanReport {
    pub kind: FockKind,
    pub cutoff: u32,
    pub weights: Vec<WeightSpan>,
}

impl SpanReport {
    pub fn holds(&self) -> bool {
        self.weights.iter().all(WeightSpan::is_basis)
    }

    pub fn total(&self) -> usize {
        self.weights.iter().map(|w| w.words).sum()
    }
}

/// Creation words in normal order: non-increasing mode sequences summing
/// to `w` (strictly decreasing if `strict`).
fn creation_words(w: u32, strict: bool) -> Vec<Vec<u32>> {
    fn rec(rem: u32, max: u32, strict: bool, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for m in (1..=rem.min(max)).rev() {
            cur.push(m);
            let next_max = if strict { m - 1 } else { m };
            rec(rem - m, next_max, strict, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(w, w, strict, &mut Vec::new(), &mut out);
    out
}

/// Number of exponent vectors `(e_1, ..., e_w)` with `Σ j e_j = w`, each
/// `e_j <= max_exp`, by direct enumeration over the vectors.
fn count_exponent_vectors(w: u32, max_exp: u32) -> u64 {
    fn rec(mode: u32, rem: u32, max_exp: u32) -> u64 {
        if rem == 0 {
            return 1;
        }
        if mode == 0 {
            return 0;
        }
        (0..=max_exp.min(rem / mode))
            .map(|e| rec(mode - 1, rem - e * mode, max_exp))
            .sum()
    }
    rec(w, w, max_exp)
}

fn rank_of<K: Ord + Clone>(states: &[State<K>]) -> usize {
    let keys: std::collections::BTreeSet<&K> = states.iter().flat_map(|s| s.terms().keys()).collect();
    let rows: Vec<Vec<BigRational>> = states
        .iter()
        .map(|s| keys.iter().map(|k| s.coeff(k)).collect())
        .collect();
    linalg::exact_rank(rows)
}

/// Applies every creation word of weight `<= cutoff` to the vacuum and
/// checks, weight by weight, that the results are linearly independent and
/// as many as the dimension of the weight space.
pub fn highest_weight_span(kind: FockKind, cutoff: u32) -> SpanReport {
    let weights = (0..=cutoff)
        .map(|w| match kind {
            FockKind::Boson => {
                let states: Vec<BosonicState> = creation_words(w, false)
                    .iter()
                    .map(|word| word.iter().rev().fold(BosonicState::vacuum(), |s, &m| s.apply_q(m)))
                    .collect();
                WeightSpan {
                    weight: w,
                    words: states.len(),
                    rank: rank_of(&states),
                    dimension: count_exponent_vectors(w, u32::MAX),
                    homogeneous: states
                        .iter()
                        .all(|s| s.terms().keys().all(|k: &BosonKey| k.weight() == w)),
                }
            }
            FockKind::Fermion => {
                let states: Vec<FermionicState> = creation_words(w, true)
                    .iter()
                    .map(|word| word.iter().rev().fold(FermionicState::vacuum(), |s, &m| s.apply_psi(m)))
                    .collect();
                WeightSpan {
                    weight: w,
                    words: states.len(),
                    rank: rank_of(&states),
                    dimension: count_exponent_vectors(w, 1),
                    homogeneous: states
                        .iter()
                        .all(|s| s.terms().keys().all(|k: &FermionKey| k.weight() == w)),
                }
            }
        })
        .collect();
    SpanReport {
        kind,
        cutoff,
        weights,
    }
}

/// The basis states themselves followed by `random` seeded random
/// combinations of them.
pub fn random_samples<K: Ord + Clone>(basis: &[K], random: usize, seed: u64) -> Vec<State<K>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    basis
        .iter()
        .cloned()
        .map(State::basis)
        .chain((0..random).map(|_| State::random_combination(basis, 6, &mut rng)))
        .collect()
}
