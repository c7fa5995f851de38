//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::time::{Duration, Instant};

use hilbfock::adhm::{
    check_complex, expand_tau_sigma, fixed_point_data, kempf_ness_flow, monad_maps,
    morse_index_numeric, random_gl, random_stable_data, stability_check, tangent_dimension,
    unitary_invariants, AdhmData, FlowOptions, GaussianRational, C64,
};
use hilbfock::algebra::{
    bilinear_b, check_boson_derivation, check_fermion_derivation, commutator_check,
    random_samples, super_basis, BosonKey, BosonicState, CentralCharges, CentralScalar,
    FermionicState, GeneratorSpec, RelationCheck, RelationReport,
};
use hilbfock::partitions::{enumerate, poincare_c2, Partition};
use hilbfock::series::{
    character_matches_goettsche, clifford_character, heisenberg_character, BettiProfile,
};
use hilbfock::{BigInt, BigRational};
use nalgebra::DMatrix;
use num_traits::{One, Zero};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn first_failure(report: &RelationReport) -> Result<(), String> {
    match report.first_failure() {
        None => Ok(()),
        Some(o) => Err(format!("{}: {}", o.relation, o.counterexample.as_ref().unwrap())),
    }
}

fn rational(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

// 1
fn heisenberg_and_clifford_relations() -> Outcome {
    let mut evaluations = 0;
    for a in [1, -3] {
        let a = CentralScalar::from_integer(a).unwrap();
        let samples = random_samples(&BosonicState::basis_up_to(8), 100, 2024);
        for i in 1..=8 {
            for j in 1..=8 {
                let r = commutator_check(RelationCheck::Boson { i, j, a: &a, samples: &samples }).unwrap();
                first_failure(&r)?;
                // the central term directly, on every sample
                for s in &samples {
                    let lhs = s.apply_q(j).apply_p(i, &a) - s.apply_p(i, &a).apply_q(j);
                    let rhs = if i == j { s.scale(a.value()) } else { BosonicState::zero() };
                    ensure(lhs == rhs, || format!("[p{i}, q{j}] on {s}"))?;
                    evaluations += 1;
                }
            }
            first_failure(&check_boson_derivation(i, &a, &samples))?;
        }
    }
    let samples = random_samples(&FermionicState::basis_up_to(8), 100, 2024);
    for i in 1..=8 {
        for j in 1..=8 {
            let r = commutator_check(RelationCheck::Fermion { i, j, samples: &samples }).unwrap();
            first_failure(&r)?;
            for s in &samples {
                let lhs = s.apply_psi_star(j).apply_psi(i) + s.apply_psi(i).apply_psi_star(j);
                let rhs = if i == j { s.clone() } else { FermionicState::zero() };
                ensure(lhs == rhs, || format!("{{ψ{i}, ψ*{j}}} on {s}"))?;
                evaluations += 1;
            }
        }
        first_failure(&check_fermion_derivation(i, &samples))?;
    }
    Ok(format!("modes ≤ 8, weight ≤ 8 plus 100 random samples, {evaluations} central-term evaluations"))
}

/// `B(x^e, t)` from `B(1, 1) = 1` and adjointness alone: move each `x_i`
/// across as `p_i` and read off the vacuum coefficient.
fn form_by_adjointness(m: &BosonKey, t: &BosonicState, a: &CentralScalar) -> BigRational {
    let mut t = t.clone();
    for (mode, e) in m.factors() {
        for _ in 0..e {
            t = t.apply_p(mode, a);
        }
    }
    t.coeff(&BosonKey::vacuum())
}

// 2
fn adjointness_and_closed_form() -> Outcome {
    let basis = BosonicState::basis_up_to(6);
    let mut pairs = 0;
    for a in [1, 5] {
        let a = CentralScalar::from_integer(a).unwrap();
        for m in &basis {
            let s = BosonicState::basis(m.clone());
            for n in &basis {
                let t = BosonicState::basis(n.clone());
                pairs += 1;
                for i in 1..=6 {
                    ensure(
                        bilinear_b(&s.apply_q(i), &t, &a) == bilinear_b(&s, &t.apply_p(i, &a), &a),
                        || format!("adjointness of q{i} at ({m}, {n})"),
                    )?;
                }
                let closed = if m == n {
                    let mut v = BigRational::one();
                    for (_, e) in m.factors() {
                        for k in 1..=e {
                            v *= a.value() * rational(k as i64);
                        }
                    }
                    v
                } else {
                    BigRational::zero()
                };
                ensure(bilinear_b(&s, &t, &a) == closed, || format!("closed form at ({m}, {n})"))?;
                ensure(form_by_adjointness(m, &t, &a) == closed, || format!("adjointness oracle at ({m}, {n})"))?;
            }
        }
    }
    Ok(format!("{} monomials, {pairs} pairs, modes ≤ 6, a ∈ {{1, 5}}", basis.len()))
}

/// `p(n)` by Euler's pentagonal recurrence.
fn partition_numbers(order: usize) -> Vec<i64> {
    let mut p = vec![0i64; order + 1];
    p[0] = 1;
    for n in 1..=order as i64 {
        let mut acc = 0;
        for k in 1i64.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * p[(n - g1) as usize];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= n {
                acc += sign * p[(n - g2) as usize];
            }
        }
        p[n as usize] = acc;
    }
    p
}

/// Partitions into distinct parts, each part used at most once.
fn distinct_part_numbers(order: usize) -> Vec<i64> {
    let mut q = vec![0i64; order + 1];
    q[0] = 1;
    for part in 1..=order {
        for n in (part..=order).rev() {
            q[n] += q[n - part];
        }
    }
    q
}

// 3
fn characters() -> Outcome {
    let start = Instant::now();
    let h = heisenberg_character(20);
    let c = clifford_character(20);
    let elapsed = start.elapsed();
    let p = partition_numbers(20);
    let q = distinct_part_numbers(20);
    for n in 0..=20 {
        ensure(h.coeffs[n] == BigInt::from(p[n]), || format!("Heisenberg q^{n}: {} vs {}", h.coeffs[n], p[n]))?;
        ensure(c.coeffs[n] == BigInt::from(q[n]), || format!("Clifford q^{n}: {} vs {}", c.coeffs[n], q[n]))?;
    }
    ensure(elapsed <= Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("order 20 in {elapsed:?}"))
}

/// `Π_m (1 - q^m)^{-e}` to order `order`, the value of the Göttsche
/// product at `t = -1`.
fn euler_product(e: i64, order: usize) -> Vec<BigInt> {
    let mut s = vec![BigInt::zero(); order + 1];
    s[0] = BigInt::one();
    for m in 1..=order {
        for _ in 0..e.unsigned_abs() {
            if e > 0 {
                // multiply by 1/(1 - q^m)
                for n in m..=order {
                    let prev = s[n - m].clone();
                    s[n] += prev;
                }
            } else {
                for n in (m..=order).rev() {
                    let prev = s[n - m].clone();
                    s[n] -= prev;
                }
            }
        }
    }
    s
}

// 4
fn central_identity() -> Outcome {
    let profiles = [[1, 0, 0, 0, 0], [1, 0, 1, 0, 1], [1, 4, 6, 4, 1], [1, 0, 22, 0, 1]];
    let start = Instant::now();
    for b in profiles {
        let report = character_matches_goettsche(&BettiProfile(b), 10);
        if let Some(m) = &report.first_mismatch {
            return Err(format!("{b:?} at q^{}: {} vs {}", m.n, m.fock, m.goettsche));
        }
        let e = b[0] as i64 - b[1] as i64 + b[2] as i64 - b[3] as i64 + b[4] as i64;
        ensure(report.fock.euler_generating() == euler_product(e, 10), || {
            format!("{b:?}: Euler specialization differs from Π(1-q^m)^-{e}")
        })?;
    }
    let elapsed = start.elapsed();
    let k3: Vec<BigInt> = [1, 24, 324, 3200].into_iter().map(BigInt::from).collect();
    ensure(euler_product(24, 3) == k3, || "K3 Euler numbers".into())?;
    ensure(elapsed <= Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("4 profiles to q^10 in {elapsed:?}"))
}

// 5
fn plane_betti_numbers() -> Outcome {
    const N: usize = 12;
    const T: usize = 2 * N + 1;
    // Π_{m ≥ 1} 1/(1 - t^{2m-2} q^m) as a dense table [q][t]
    let mut table = vec![[0i64; T]; N + 1];
    table[0][0] = 1;
    for m in 1..=N {
        let shift = 2 * m - 2;
        for n in m..=N {
            for d in shift..T {
                table[n][d] += table[n - m][d - shift];
            }
        }
    }
    for n in 1..=N {
        let p = poincare_c2(n as u32);
        for (d, want) in table[n].iter().enumerate() {
            ensure(p.coeff(d) == BigInt::from(*want), || format!("n = {n}, t^{d}: {} vs {want}", p.coeff(d)))?;
        }
    }
    Ok(format!("n ≤ {N}"))
}

fn gaussian(re: i64, im: i64) -> GaussianRational {
    GaussianRational::new(rational(re), rational(im))
}

// 6
fn fixed_points() -> Outcome {
    let all: Vec<Partition> = (0..=6).flat_map(enumerate).collect();
    ensure(all.len() == 30, || format!("{} partitions", all.len()))?;
    let points = [[gaussian(1, 0), gaussian(2, -1), gaussian(-3, 4)], [gaussian(0, 2), gaussian(5, 0), gaussian(1, 1)]];
    for p in &all {
        let fp = fixed_point_data(p);
        ensure(fp.data.mu_complex().iter().all(Zero::is_zero), || format!("{p}: μ_C ≠ 0"))?;
        ensure(stability_check(&fp.data), || format!("{p}: unstable"))?;
        ensure(check_complex(&fp.data), || format!("{p}: τσ ≠ 0, terms {:?}", expand_tau_sigma(&fp.data).nonzero_terms()))?;
        let maps = monad_maps(&fp.data);
        for z in &points {
            let ts = maps.tau_at(z) * maps.sigma_at(z);
            ensure(ts.iter().all(Zero::is_zero), || format!("{p}: τσ ≠ 0 at {z:?}"))?;
        }
    }
    Ok("30 partitions, 0 ≤ n ≤ 6, exact".into())
}

fn residual_by_hand(d: &AdhmData<C64>, zeta_r: f64) -> f64 {
    let adj = |m: &DMatrix<C64>| m.adjoint();
    let comm = |m: &DMatrix<C64>| m * adj(m) - adj(m) * m;
    let mu = comm(d.b1()) + comm(d.b2()) + d.i() * adj(d.i()) - adj(d.j()) * d.j();
    (mu + DMatrix::<C64>::identity(d.n(), d.n()) * C64::new(zeta_r, 0.0)).norm()
}

/// Eigenvalues of `B1 B1† + B2 B2†` and `‖i‖²`: a few unitary invariants
/// computed without the library.
fn invariants_by_hand(d: &AdhmData<C64>) -> Vec<f64> {
    let h = d.b1() * d.b1().adjoint() + d.b2() * d.b2().adjoint();
    let mut ev: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev.push(d.i().norm_squared());
    ev
}

// 7
fn kempf_ness() -> Outcome {
    let opts = FlowOptions::default();
    let mut worst_iters = 0;
    let mut worst_gap: f64 = 0.0;
    for n in 1..=4 {
        for seed in 0..5 {
            let d = random_stable_data(n, 1, seed).map_err(|e| e.to_string())?;
            let a = kempf_ness_flow(&d, &opts).map_err(|e| e.to_string())?;
            ensure(a.converged && a.iterations <= 10_000, || {
                format!("n={n} seed={seed}: residual {:e} after {} iterations", a.residual, a.iterations)
            })?;
            let res = residual_by_hand(&a.data, opts.zeta_r);
            ensure(res <= 1e-8, || format!("n={n} seed={seed}: recomputed residual {res:e}"))?;
            let g_inv = a.g.clone().try_inverse().ok_or("singular g")?;
            ensure(d.gauge(&a.g, &g_inv).max_abs_diff(&a.data) <= 1e-9, || {
                format!("n={n} seed={seed}: output is not g·d")
            })?;
            worst_iters = worst_iters.max(a.iterations);

            let (h, h_inv) = random_gl(n, 1000 + seed);
            let b = kempf_ness_flow(&d.gauge(&h, &h_inv), &opts).map_err(|e| e.to_string())?;
            ensure(b.converged, || format!("n={n} seed={seed}: restart did not converge"))?;
            let (ia, ib) = (unitary_invariants(&a.data), unitary_invariants(&b.data));
            for (x, y) in ia.iter().zip(&ib) {
                worst_gap = worst_gap.max((x - y).norm() / x.norm().max(1.0));
            }
            for (x, y) in invariants_by_hand(&a.data).iter().zip(invariants_by_hand(&b.data)) {
                worst_gap = worst_gap.max((x - y).abs() / x.abs().max(1.0));
            }
            ensure(worst_gap <= 1e-6, || format!("n={n} seed={seed}: invariants differ by {worst_gap:e}"))?;
        }
    }
    Ok(format!("20 runs, at most {worst_iters} iterations, invariant gap {worst_gap:.1e}"))
}

// 8
fn tangent_dimensions() -> Outcome {
    let mut found = Vec::new();
    for (n, r) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        let d = random_stable_data(n, r, 0).map_err(|e| e.to_string())?;
        let flowed = kempf_ness_flow(&d, &FlowOptions::default()).map_err(|e| e.to_string())?;
        let t = tangent_dimension(&flowed.data, -1.0, 1e-6).map_err(|e| format!("({n}, {r}): {e}"))?;
        ensure(t.dimension == 4 * n * r, || format!("({n}, {r}): {} vs {}", t.dimension, 4 * n * r))?;
        found.push(format!("({n},{r})→{}", t.dimension));
    }
    Ok(found.join(" "))
}

// 9
fn morse_indices() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for p in (1..=3).flat_map(enumerate) {
        let formula = 2 * p.n() - 2 * p.len() as u32;
        match morse_index_numeric(&p, 0.01) {
            Ok(m) => {
                ok &= m.index == formula;
                lines.push(format!("{p}: {} vs {formula}", m.index));
            }
            Err(e) => {
                ok = false;
                lines.push(format!("{p}: {e}"));
            }
        }
    }
    if ok {
        Ok(lines.join(", "))
    } else {
        Err(format!("numeric vs 2n - 2·parts: {}", lines.join(", ")))
    }
}

// 10
fn super_relations() -> Outcome {
    let gens = [
        GeneratorSpec::new(0, 0).unwrap(),
        GeneratorSpec::new(1, 2).unwrap(),
        GeneratorSpec::new(2, 1).unwrap(),
    ];
    let defaults = CentralCharges::default();
    ensure(defaults.get(1) == Ok(1) && defaults.get(2) == Ok(-2), || "default charges".into())?;
    ensure(defaults.get(3).is_err(), || "c3 defined by default".into())?;
    let charges = defaults.with(3, 3).map_err(|e| e.to_string())?;
    let basis = super_basis(&gens, 6);
    ensure(basis.iter().all(|k| k.bidegree().0 <= 6), || "basis exceeds weight 6".into())?;
    let samples = random_samples(&basis, 0, 0);
    let mut relations = 0;
    for g in gens {
        for h in gens {
            for i in 1..=3 {
                for j in 1..=3 {
                    let r = commutator_check(RelationCheck::Super { i, j, g, h, samples: &samples, charges: &charges })
                        .map_err(|e| e.to_string())?;
                    first_failure(&r)?;
                    relations += r.outcomes.len();
                }
            }
        }
    }
    Ok(format!("{relations} relations on {} basis states", basis.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Heisenberg and Clifford relations", heisenberg_and_clifford_relations),
        ("adjointness and closed form of B", adjointness_and_closed_form),
        ("character identities", characters),
        ("Fock character = Göttsche product", central_identity),
        ("Betti numbers of Hilb^n(C^2)", plane_betti_numbers),
        ("ADHM fixed points", fixed_points),
        ("Kempf-Ness flow", kempf_ness),
        ("tangent dimension 4nr", tangent_dimensions),
        ("Morse index 2n - 2·parts", morse_indices),
        ("super-Fock relations", super_relations),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2}  {name} ({detail}) [{secs:.2}s]", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2}  {name}: {detail} [{secs:.2}s]", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
