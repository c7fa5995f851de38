//! Named check suites, each a list of pass/fail lines with the first
//! counterexample where one exists.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::adhm::{
    check_complex, fixed_point_data, kempf_ness_flow, morse_index_numeric, random_stable_data,
    stability_check, tangent_dimension, tangent_weight_spaces, FlowOptions,
};
use crate::algebra::{
    check_adjointness, check_bilinear_closed_form, check_boson_derivation,
    check_fermion_derivation, commutator_check, highest_weight_span, random_samples, super_basis,
    BosonicState, CentralCharges, CentralScalar, FermionicState, FockKind, GeneratorSpec,
    RelationCheck, RelationOutcome, RelationReport,
};
use crate::partitions::{self, enumerate, morse_index, poincare_c2};
use crate::series::{
    character_matches_goettsche, clifford_character, goettsche, heisenberg_character,
    BettiProfile,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Relations,
    Characters,
    Identity,
    Appendix,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::Characters => "characters",
            Suite::Identity => "identity",
            Suite::Appendix => "appendix",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Weight cutoff for basis states in the relation checks.
    pub max_weight: u32,
    /// Modes `1..=modes` for the relation checks.
    pub modes: u32,
    /// Random combinations added to the basis samples.
    pub random_samples: usize,
    /// Central scalar `a` of the Heisenberg representation.
    pub central_scalar: i64,
    pub betti: BettiProfile,
    pub order: usize,
    pub nmax: u32,
    pub flow: FlowOptions,
    pub flow_seeds: u64,
    pub rank_tol: f64,
    pub eps: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            max_weight: 6,
            modes: 6,
            random_samples: 100,
            central_scalar: 1,
            betti: BettiProfile::PLANE,
            order: 10,
            nmax: 6,
            flow: FlowOptions::default(),
            flow_seeds: 5,
            rank_tol: crate::adhm::DEFAULT_RANK_TOL,
            eps: crate::adhm::DEFAULT_EPS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn run(suite: Suite, opts: &VerifyOptions) -> SuiteReport {
    let checks = match suite {
        Suite::Relations => relations(opts),
        Suite::Characters => characters(opts),
        Suite::Identity => identity(opts),
        Suite::Appendix => appendix(opts),
    };
    SuiteReport { suite, checks }
}

/// Folds a family of relation reports into one line.
fn relation_line(name: String, reports: impl IntoIterator<Item = RelationReport>) -> Check {
    let mut all = RelationReport::default();
    for r in reports {
        all.merge(r);
    }
    outcome_line(name, &all.outcomes)
}

fn outcome_line(name: String, outcomes: &[RelationOutcome]) -> Check {
    let checked: usize = outcomes.iter().map(|o| o.checked).sum();
    match outcomes.iter().find(|o| !o.holds()) {
        None => Check::new(name, true, format!("{} relations, {checked} evaluations", outcomes.len())),
        Some(o) => Check::new(
            name,
            false,
            format!("{}: {}", o.relation, o.counterexample.as_ref().expect("failing outcome")),
        ),
    }
}

fn relations(opts: &VerifyOptions) -> Vec<Check> {
    let modes = 1..=opts.modes;
    let w = opts.max_weight;
    let mut checks = Vec::new();
    let a = match CentralScalar::from_integer(opts.central_scalar) {
        Ok(a) => a,
        Err(e) => return vec![Check::new("central scalar", false, e.to_string())],
    };

    let bosons = random_samples(&BosonicState::basis_up_to(w), opts.random_samples, opts.seed);
    let mut reports = Vec::new();
    for i in modes.clone() {
        for j in modes.clone() {
            reports.push(
                commutator_check(RelationCheck::Boson { i, j, a: &a, samples: &bosons })
                    .expect("bosonic relations do not fail"),
            );
        }
        reports.push(check_boson_derivation(i, &a, &bosons));
    }
    checks.push(relation_line(format!("Heisenberg relations, weight ≤ {w}"), reports));

    let fermions = random_samples(&FermionicState::basis_up_to(w), opts.random_samples, opts.seed);
    let mut reports = Vec::new();
    for i in modes.clone() {
        for j in modes.clone() {
            reports.push(
                commutator_check(RelationCheck::Fermion { i, j, samples: &fermions })
                    .expect("fermionic relations do not fail"),
            );
        }
        reports.push(check_fermion_derivation(i, &fermions));
    }
    checks.push(relation_line(format!("Clifford relations, weight ≤ {w}"), reports));

    let basis = random_samples(&BosonicState::basis_up_to(w.min(6)), 0, opts.seed);
    let adjoint: Vec<RelationOutcome> = modes.clone().map(|i| check_adjointness(i, &a, &basis)).collect();
    checks.push(outcome_line(format!("adjointness of q_i and p_i, weight ≤ {}", w.min(6)), &adjoint));
    checks.push(outcome_line(
        "bilinear form closed form".to_string(),
        &[check_bilinear_closed_form(w.min(6), &a)],
    ));

    for kind in [FockKind::Boson, FockKind::Fermion] {
        let span = highest_weight_span(kind, w);
        let bad = span.weights.iter().find(|s| !s.is_basis());
        checks.push(Check::new(
            format!("{kind:?} Fock space spanned from the vacuum, weight ≤ {w}"),
            bad.is_none(),
            match bad {
                None => format!("{} creation words", span.total()),
                Some(s) => format!(
                    "weight {}: {} words, rank {}, dimension {}",
                    s.weight, s.words, s.rank, s.dimension
                ),
            },
        ));
    }

    checks.push(super_relations(opts));
    checks
}

/// Super-Fock relations for one even degree-0, one even degree-2 and one
/// odd degree-1 class, with `c3 = 3` set on top of the default charges.
fn super_relations(opts: &VerifyOptions) -> Check {
    let name = format!("super-Fock relations with c3 = 3, weight ≤ {}", opts.max_weight);
    let gens = [
        GeneratorSpec::new(0, 0).expect("valid degree"),
        GeneratorSpec::new(1, 2).expect("valid degree"),
        GeneratorSpec::new(2, 1).expect("valid degree"),
    ];
    let charges = CentralCharges::default().with(3, 3).expect("nonzero charge");
    let samples = random_samples(&super_basis(&gens, opts.max_weight), opts.random_samples, opts.seed);
    let mut reports = Vec::new();
    for g in gens {
        for h in gens {
            for i in charges.defined_modes() {
                for j in charges.defined_modes() {
                    match commutator_check(RelationCheck::Super {
                        i,
                        j,
                        g,
                        h,
                        samples: &samples,
                        charges: &charges,
                    }) {
                        Ok(r) => reports.push(r),
                        Err(e) => return Check::new(name, false, e.to_string()),
                    }
                }
            }
        }
    }
    relation_line(name, reports)
}

fn first_series_mismatch(a: &[BigInt], b: &[u64]) -> Option<usize> {
    a.iter().zip(b).position(|(x, y)| *x != BigInt::from(*y))
}

fn characters(opts: &VerifyOptions) -> Vec<Check> {
    let order = opts.order;
    let counts: Vec<u64> = (0..=order as u32).map(partitions::count).collect();
    let distinct: Vec<u64> = (0..=order as u32)
        .map(|n| enumerate(n).iter().filter(|p| p.has_distinct_parts()).count() as u64)
        .collect();
    let h = heisenberg_character(order);
    let c = clifford_character(order);
    let line = |name: String, got: &[BigInt], want: &[u64]| match first_series_mismatch(got, want) {
        None => Check::new(name, true, format!("{} coefficients", want.len())),
        Some(n) => Check::new(name, false, format!("q^{n}: {} vs {}", got[n], want[n])),
    };
    vec![
        line(format!("Heisenberg character = partition counts, order {order}"), &h.coeffs, &counts),
        line(format!("Clifford character = distinct-part counts, order {order}"), &c.coeffs, &distinct),
    ]
}

fn identity(opts: &VerifyOptions) -> Vec<Check> {
    let report = character_matches_goettsche(&opts.betti, opts.order);
    let mut checks = vec![Check::new(
        format!("super-Fock character = Göttsche product, betti {}, order {}", opts.betti, opts.order),
        report.equal(),
        match &report.first_mismatch {
            None => format!("{} coefficients", opts.order + 1),
            Some(m) => format!("q^{}: {} vs {}", m.n, m.fock, m.goettsche),
        },
    )];
    if opts.betti == BettiProfile::PLANE {
        checks.push(plane_betti_check(opts.order as u32));
    }
    checks
}

/// Betti numbers of `Hilb^n(C^2)` from partition counts against the
/// product for the plane.
fn plane_betti_check(nmax: u32) -> Check {
    let product = goettsche(&BettiProfile::PLANE, nmax as usize);
    let bad = (1..=nmax).find(|&n| product.extract_poincare(n as usize).ok() != Some(&poincare_c2(n)));
    Check::new(
        format!("Betti numbers of Hilb^n(C^2) from partitions, n ≤ {nmax}"),
        bad.is_none(),
        match bad {
            None => format!("{nmax} polynomials"),
            Some(n) => format!("n = {n}: {} vs product", poincare_c2(n)),
        },
    )
}

fn appendix(opts: &VerifyOptions) -> Vec<Check> {
    let nmax = opts.nmax;
    let mut checks = Vec::new();

    let mut bad = None;
    let mut total = 0;
    for n in 0..=nmax {
        for p in enumerate(n) {
            total += 1;
            let fp = fixed_point_data(&p);
            let mu_zero = fp.data.mu_complex().iter().all(num_traits::Zero::is_zero);
            if !(mu_zero && stability_check(&fp.data) && check_complex(&fp.data) && fp.weights.is_consistent(&fp.data)) {
                bad.get_or_insert(p);
            }
        }
    }
    checks.push(Check::new(
        format!("fixed points: μ_C = 0, stable, τσ = 0, n ≤ {nmax}"),
        bad.is_none(),
        match bad {
            None => format!("{total} partitions"),
            Some(p) => format!("fails at {p}"),
        },
    ));

    checks.push(plane_betti_check(nmax));

    let bad = (1..=nmax).find(|&n| {
        let mut hist = vec![0u64; n as usize];
        for p in enumerate(n) {
            hist[(morse_index(&p) / 2) as usize] += 1;
        }
        hist != partitions::betti_c2(n)
    });
    checks.push(Check::new(
        format!("Morse indices count Betti numbers, n ≤ {nmax}"),
        bad.is_none(),
        bad.map(|n| format!("n = {n}")).unwrap_or_default(),
    ));

    let bad = (0..=nmax).flat_map(enumerate).find(|p| {
        let fp = fixed_point_data(p);
        tangent_weight_spaces(&fp.data, &fp.weights.weights).values().sum::<usize>() != 2 * p.n() as usize
    });
    checks.push(Check::new(
        format!("fixed-point tangent spaces have dimension 2n, n ≤ {nmax}"),
        bad.is_none(),
        bad.map(|p| format!("fails at {p}")).unwrap_or_default(),
    ));

    let mut mismatches = Vec::new();
    for p in (0..=nmax.min(3)).flat_map(enumerate) {
        match morse_index_numeric(&p, opts.eps) {
            Ok(m) if m.index == morse_index(&p) => {}
            Ok(m) => mismatches.push(format!("{p}: numeric {} vs formula {}", m.index, morse_index(&p))),
            Err(e) => mismatches.push(format!("{p}: {e}")),
        }
    }
    checks.push(Check::new(
        format!("numeric Morse index = 2n - 2·parts, n ≤ {}, eps = {}", nmax.min(3), opts.eps),
        mismatches.is_empty(),
        mismatches.join("; "),
    ));

    let mut failures = Vec::new();
    let mut runs = 0;
    for n in 1..=nmax.min(4) as usize {
        for seed in opts.seed..opts.seed + opts.flow_seeds {
            runs += 1;
            let outcome = random_stable_data(n, 1, seed).and_then(|d| kempf_ness_flow(&d, &opts.flow));
            match outcome {
                Ok(res) if res.converged => {}
                Ok(res) => failures.push(format!("n={n} seed={seed}: residual {:e}", res.residual)),
                Err(e) => failures.push(format!("n={n} seed={seed}: {e}")),
            }
        }
    }
    checks.push(Check::new(
        format!("flow reaches the level set, n ≤ {}", nmax.min(4)),
        failures.is_empty(),
        if failures.is_empty() { format!("{runs} runs") } else { failures.join("; ") },
    ));

    let mut failures = Vec::new();
    for (n, r) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        let dim = random_stable_data(n, r, opts.seed)
            .and_then(|d| kempf_ness_flow(&d, &opts.flow))
            .and_then(|res| tangent_dimension(&res.data, opts.flow.zeta_r, opts.rank_tol));
        match dim {
            Ok(t) if t.dimension == 4 * n * r => {}
            Ok(t) => failures.push(format!("(n, r) = ({n}, {r}): {} vs {}", t.dimension, 4 * n * r)),
            Err(e) => failures.push(format!("(n, r) = ({n}, {r}): {e}")),
        }
    }
    checks.push(Check::new(
        "tangent dimension = 4nr",
        failures.is_empty(),
        failures.join("; "),
    ));
    checks
}
