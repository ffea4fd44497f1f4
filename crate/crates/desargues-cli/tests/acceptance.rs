//! Acceptance suite. One test per criterion; each prints a PASS line with
//! its measured runtime when it succeeds. Run with `--nocapture` to see the
//! lines:
//!
//! ```text
//! cargo test -p desargues-cli --test acceptance -- --nocapture
//! ```

use std::process::Command;
use std::time::{Duration, Instant};

use desargues_core::boolean::{self, BooleanConfig};
use desargues_core::desargues::{
    derive_config, desargues_check, generate_desarguesian, generate_generic,
};
use desargues_core::exact::{ExactMatrix, GaussianRational};
use desargues_core::lattice::{dim_formula_check, modularity_check, Subspace};
use desargues_core::measure::{eigenstate_check, run_experiment_pair, StateVector};
use desargues_core::{tolerances, worked_example, ComplexFloat, GroundSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_desargues"))
}

fn pass(name: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    assert!(
        elapsed < budget,
        "{name} took {elapsed:?}, budget {budget:?}"
    );
    println!("PASS {name} ({elapsed:?})");
}

/// Criterion 1: the worked example reproduces every reference value — exact
/// ranks, center and cross-point rays up to exact scale, all four projector
/// tables within 5e-5, probabilities within their quoted precision and
/// collapsed rays at fidelity 1 - 1e-6 — in under a second.
#[test]
fn criterion_1_worked_example_golden_run() {
    let started = Instant::now();

    let checks = worked_example::run_reference_checks();
    for check in &checks {
        assert!(check.pass, "{}: {}", check.name, check.detail);
    }

    // the same run through the command-line surface
    let output = binary().arg("paper-example").output().expect("binary runs");
    assert_eq!(output.status.code(), Some(0), "paper-example exit code");
    let report: serde_json::Value =
        serde_json::from_slice(&output.stdout).expect("report is valid JSON");
    assert_eq!(report["all_pass"], true);

    pass("criterion 1: worked-example golden run", started, Duration::from_secs(1));
}

/// Criterion 2: exhaustive scan of the 2^18 raw tuples at n = 3 shows zero
/// implication violations and yields converse counterexamples for n = 2 and
/// n = 3, single-threaded, in under a minute.
#[test]
fn criterion_2_boolean_exhaustive_verification() {
    let started = Instant::now();

    let report3 = boolean::exhaustive_scan(GroundSet::new(3).unwrap()).unwrap();
    assert_eq!(report3.violations, 0);
    // 8·7·6 distinct ordered triples per triplet
    assert_eq!(report3.total, 336 * 336);
    let ce3 = report3.converse_counterexample.expect("n = 3 counterexample");
    let (input3, _) = ce3.to_input().unwrap();
    let d3 = boolean::derive(&input3);
    assert!(!boolean::antecedent(&d3) && boolean::consequent(&d3));

    let report2 = boolean::exhaustive_scan(GroundSet::new(2).unwrap()).unwrap();
    assert_eq!(report2.violations, 0);
    let ce2 = report2.converse_counterexample.expect("n = 2 counterexample");
    let (input2, _) = ce2.to_input().unwrap();
    let d2 = boolean::derive(&input2);
    assert!(!boolean::antecedent(&d2) && boolean::consequent(&d2));

    pass("criterion 2: boolean exhaustive scan", started, Duration::from_secs(60));
}

/// Criterion 3: the three-element golden example produces circuit outputs
/// C3 = {3} and frakB3 = {1,2} exactly.
#[test]
fn criterion_3_boolean_golden_example() {
    let started = Instant::now();

    let config: BooleanConfig = serde_json::from_str(
        r#"{"ground":["1","2","3"],"A":[["1"],["2"],["3"]],"Aprime":[["1","3"],["2","3"],[]]}"#,
    )
    .unwrap();
    let (input, labels) = config.to_input().unwrap();
    let derived = boolean::derive(&input);
    let circuit1 = boolean::antecedent_circuit(&input);
    let circuit2 = boolean::consequent_circuit(&input);
    assert_eq!(boolean::subset_labels(&circuit1, &labels), vec!["3"]);
    assert_eq!(boolean::subset_labels(&circuit2, &labels), vec!["1", "2"]);
    assert_eq!(circuit1, derived.c(2));
    assert_eq!(circuit2, derived.frak_b(2));

    pass("criterion 3: boolean golden example", started, Duration::from_secs(5));
}

fn random_subspace(rng: &mut ChaCha8Rng, d: usize) -> Subspace {
    let k = rng.gen_range(0..=d);
    let vectors: Vec<Vec<GaussianRational>> = (0..k)
        .map(|_| {
            (0..d)
                .map(|_| GaussianRational::from_integers(rng.gen_range(-3..=3), rng.gen_range(-3..=3)))
                .collect()
        })
        .collect();
    Subspace::from_vectors(d, &vectors).unwrap()
}

/// Criterion 4: 1000 random pairs and triples per dimension in {3,4,5,6}
/// satisfy, as exact equalities: the dimension formula, modularity, the
/// orthocomplement identities, the projector laws, agreement of the two
/// meet routes, and the order/absorption characterization — plus one stored
/// counterexample showing the lattice is not distributive.
#[test]
fn criterion_4_lattice_property_suite() {
    let started = Instant::now();
    let budget = Duration::from_secs(120);

    let mut rng = ChaCha8Rng::seed_from_u64(0xD15A);
    for d in [3usize, 4, 5, 6] {
        let identity = ExactMatrix::identity(d);
        for _ in 0..1000 {
            let a = random_subspace(&mut rng, d);
            let b = random_subspace(&mut rng, d);

            // dimension formula
            assert!(dim_formula_check(&a, &b).unwrap());

            // orthocomplement suite
            let ac = a.orthocomplement();
            let bc = b.orthocomplement();
            assert!(a.meet(&ac).unwrap().is_zero());
            assert!(a.join(&ac).unwrap().is_full());
            assert_eq!(ac.orthocomplement(), a);
            assert_eq!(a.meet(&b).unwrap().orthocomplement(), ac.join(&bc).unwrap());
            assert_eq!(a.join(&b).unwrap().orthocomplement(), ac.meet(&bc).unwrap());

            // projector laws
            let p = a.projector();
            let m = p.matrix();
            assert_eq!(&m.mul(m).unwrap(), m);
            assert!(m.is_hermitian());
            assert_eq!(
                m.trace(),
                GaussianRational::from_integers(a.dim() as i64, 0)
            );
            let pc = ac.projector();
            assert!(m.mul(pc.matrix()).unwrap().is_zero());
            assert_eq!(m.add(pc.matrix()).unwrap(), identity);

            // the two meet routes agree exactly
            assert_eq!(a.meet(&b).unwrap(), a.meet_via_complements(&b).unwrap());

            // order is projector absorption
            assert_eq!(
                a.leq(&b).unwrap(),
                b.projector().absorbs(&a.projector()).unwrap()
            );

            // modularity with the precondition h1 ≺ h3 forced by joining
            let h1 = random_subspace(&mut rng, d);
            let h2 = random_subspace(&mut rng, d);
            let h3 = h1.join(&random_subspace(&mut rng, d)).unwrap();
            assert!(modularity_check(&h1, &h2, &h3).unwrap());
        }
    }

    // stored distributivity counterexample
    let gi = |x: i64| GaussianRational::from_integers(x, 0);
    let e1 = Subspace::from_vectors(2, &[vec![gi(1), gi(0)]]).unwrap();
    let e2 = Subspace::from_vectors(2, &[vec![gi(0), gi(1)]]).unwrap();
    let diag = Subspace::from_vectors(2, &[vec![gi(1), gi(1)]]).unwrap();
    let lhs = e1.meet(&e2.join(&diag).unwrap()).unwrap();
    let rhs = e1.meet(&e2).unwrap().join(&e1.meet(&diag).unwrap()).unwrap();
    assert_ne!(lhs, rhs, "distributivity must fail");

    pass("criterion 4: lattice property suite", started, budget);
}

/// Criterion 5: 200 Desarguesian configurations (seeds 0..199, dimensions
/// cycling {3,5,7}) are all concurrent, collinear and satisfy both
/// absorption identities; 200 generic ones keep the equivalence; and the
/// stored commuting-but-not-absorbing pair shows absorption is strictly
/// stronger than commutation.
#[test]
fn criterion_5_desargues_property_suite() {
    let started = Instant::now();
    let budget = Duration::from_secs(120);

    for seed in 0..200u64 {
        let d = [3, 5, 7][(seed % 3) as usize];
        let config = generate_desarguesian(seed, d).unwrap();
        let report = desargues_check(&config).unwrap();
        assert!(report.concurrent, "desarguesian seed {seed} d {d}");
        assert!(report.collinear, "desarguesian seed {seed} d {d}");
        assert!(report.equivalence_ok, "desarguesian seed {seed} d {d}");
        assert!(report.absorption_lhs, "desarguesian seed {seed} d {d}");
        assert!(report.absorption_rhs, "desarguesian seed {seed} d {d}");
    }

    for seed in 0..200u64 {
        let d = [3, 5, 7][(seed % 3) as usize];
        let config = generate_generic(seed, d).unwrap();
        let report = desargues_check(&config).unwrap();
        assert!(report.equivalence_ok, "generic seed {seed} d {d}");
    }

    // commutation does not imply absorption
    let gi = |x: i64| GaussianRational::from_integers(x, 0);
    let p1 = Subspace::from_vectors(3, &[vec![gi(1), gi(0), gi(0)]])
        .unwrap()
        .projector();
    let p2 = Subspace::from_vectors(3, &[vec![gi(0), gi(1), gi(0)]])
        .unwrap()
        .projector();
    assert!(p1.commutes_with(&p2).unwrap());
    assert!(!p1.absorbs(&p2).unwrap() && !p2.absorbs(&p1).unwrap());

    pass("criterion 5: desargues property suite", started, budget);
}

fn random_state(rng: &mut ChaCha8Rng, d: usize) -> StateVector {
    loop {
        let amps: Vec<ComplexFloat> = (0..d)
            .map(|_| ComplexFloat::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-3 {
            continue;
        }
        return StateVector::new(amps.iter().map(|a| a / norm).collect()).unwrap();
    }
}

/// Criterion 6: on 20 Desarguesian configurations with 20 random states
/// each, every state whose two first-stage probabilities exceed 1e-6 comes
/// out with both unchanged flags true, and the collapsed state of each
/// experiment is an eigenstate of its second projector.
#[test]
fn criterion_6_selective_correlation_suite() {
    let started = Instant::now();
    let budget = Duration::from_secs(60);

    let mut rng = ChaCha8Rng::seed_from_u64(0x5E1F);
    let mut checked_states = 0usize;
    for seed in 0..20u64 {
        let d = [3, 4, 5, 6][(seed % 4) as usize];
        let config = generate_desarguesian(seed, d).unwrap();
        let derived = derive_config(&config).unwrap();
        let second1 = derived.cross_line(2).projector();
        let second2 = derived
            .cross_point(0)
            .join(derived.cross_point(1))
            .unwrap()
            .projector();
        for _ in 0..20 {
            let s = random_state(&mut rng, d);
            let pair = match run_experiment_pair(&config, &s) {
                Ok(pair) => pair,
                Err(_) => continue, // zero-probability branch: no collapse defined
            };
            if pair.exp1[0].probability > 1e-6 && pair.exp2[0].probability > 1e-6 {
                assert!(pair.unchanged1, "seed {seed}");
                assert!(pair.unchanged2, "seed {seed}");
                assert!(eigenstate_check(&pair.exp1[0], &second1), "seed {seed}");
                assert!(eigenstate_check(&pair.exp2[0], &second2), "seed {seed}");
                checked_states += 1;
            }
        }
    }
    assert!(checked_states > 300, "only {checked_states} states were checkable");

    pass("criterion 6: selective-correlation suite", started, budget);
}

/// Criterion 7: `generate` with fixed kind, seed and dimension writes
/// byte-identical files across runs.
#[test]
fn criterion_7_generator_determinism() {
    let started = Instant::now();

    let dir = tempfile::tempdir().unwrap();
    for kind in ["desarguesian", "generic"] {
        let first = dir.path().join(format!("{kind}-a.json"));
        let second = dir.path().join(format!("{kind}-b.json"));
        for out in [&first, &second] {
            let status = binary()
                .args([
                    "generate",
                    "--kind",
                    kind,
                    "--seed",
                    "7",
                    "--dim",
                    "5",
                    "--out",
                ])
                .arg(out)
                .status()
                .expect("binary runs");
            assert!(status.success());
        }
        let a = std::fs::read(&first).unwrap();
        let b = std::fs::read(&second).unwrap();
        assert!(!a.is_empty());
        assert_eq!(a, b, "{kind} output must be byte-identical");
    }

    pass("criterion 7: generator determinism", started, Duration::from_secs(30));
}

/// The tolerances named by the criteria are pinned in code.
#[test]
fn tolerance_constants_are_pinned() {
    assert_eq!(tolerances::PROJECTOR_TABLE, 5e-5);
    assert_eq!(tolerances::REFERENCE_DECIMAL, 1e-3);
    assert_eq!(tolerances::UNIT_PROBABILITY, 1e-9);
    assert_eq!(tolerances::COLLAPSE_FIDELITY, 1e-6);
    assert_eq!(tolerances::RAY_FIDELITY, 1e-9);
    assert_eq!(tolerances::ZERO_PROBABILITY, 1e-12);
}
