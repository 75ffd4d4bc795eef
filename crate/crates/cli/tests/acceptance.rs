//! Acceptance criteria. Each criterion prints one `PASS`/`FAIL` line; the
//! test fails if any criterion fails.
//!
//! Run with `cargo test -p peres-cli --test acceptance -- --nocapture`.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use peres_core::io::{parse, serialize, CircuitDocument};
use peres_core::simulation::{
    dense_unitary, exponent_simulate, root_of_not, truth_table, DenseMatrix, Unitary2,
};
use peres_core::synthesis::{
    alpha_table, converter_peres_to_toffoli, converter_toffoli_to_peres, iterative_polarity_flip,
    synth_barenco_toffoli, synth_peres, synth_toffoli, synth_zero_polarity,
};
use peres_core::verification::{
    activation_set, check_equivalence_with, exponent_sum, spec_output, CheckOptions,
    GateFamilySpec,
};
use peres_core::{ActivationVector, BitString, Circuit, Gate, ZeroPolarityMode};

const DENSE_TOL: f64 = 1e-9;
const ROOT_TOL: f64 = 1e-12;
const SEED: u64 = 20_130_401;

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED)
}

fn random_activation(rng: &mut ChaCha8Rng, n: usize) -> ActivationVector {
    let mask = rng.gen_range(1..(1u64 << n));
    ActivationVector::new(BitString::from_mask(mask, n).unwrap()).unwrap()
}

/// Exponent simulator only, every basis input for n ≤ 6.
fn exhaustive() -> CheckOptions {
    CheckOptions { exhaustive_max_n: 6, dense_max_width: None, ..CheckOptions::default() }
}

fn cost_anchors(corpus: &mut Vec<Circuit>) {
    let peres2 = synth_peres(2, &ActivationVector::all_ones(2)).unwrap();
    let barenco3 = synth_barenco_toffoli(3, &ActivationVector::all_ones(3)).unwrap();
    let toffoli3 = synth_toffoli(3, &ActivationVector::all_ones(3)).unwrap();
    assert_eq!(peres2.quantum_cost(), 4);
    assert_eq!(barenco3.quantum_cost(), 13);
    assert_eq!(toffoli3.quantum_cost(), 13);
    corpus.extend([peres2, barenco3, toffoli3]);
}

fn cost_formulas(corpus: &mut Vec<Circuit>) {
    let mut rng = rng();
    for n in 1..=10usize {
        for _ in 0..5 {
            let a = random_activation(&mut rng, n);
            let peres = synth_peres(n, &a).unwrap();
            let toffoli = synth_toffoli(n, &a).unwrap();
            let barenco = synth_barenco_toffoli(n, &a).unwrap();
            assert_eq!(peres.quantum_cost(), (1 << (n + 1)) - n - 2, "peres n={n} a={a}");
            assert_eq!(toffoli.quantum_cost(), (1 << (n + 1)) - 3, "toffoli n={n} a={a}");
            assert_eq!(barenco.quantum_cost(), (1 << (n + 1)) - 3, "barenco n={n} a={a}");
            assert_eq!(peres.target_controlled_count(), (1 << n) - 1, "n={n}");
            assert_eq!(peres.control_feynman_count(), (1 << n) - 1 - n, "n={n}");
            assert_eq!(peres.gate_census().total(), peres.quantum_cost());
            if n >= 2 {
                let census = peres.gate_census();
                assert_eq!(census.controlled_count(), (1 << n) - 1);
                assert_eq!(census.feynman_count, (1 << n) - 1 - n);
            }
            corpus.extend([peres, toffoli, barenco]);
        }
    }
}

fn functional_correctness(corpus: &mut Vec<Circuit>) {
    let opts = exhaustive();
    for n in 1..=5 {
        for a in ActivationVector::all_nonzero(n) {
            let peres = synth_peres(n, &a).unwrap();
            let toffoli = synth_toffoli(n, &a).unwrap();
            let r = check_equivalence_with(&peres, &GateFamilySpec::peres(n, a).unwrap(), &opts).unwrap();
            assert!(r.passed(), "peres n={n} a={a}: {r}");
            let r = check_equivalence_with(&toffoli, &GateFamilySpec::toffoli(n, a).unwrap(), &opts).unwrap();
            assert!(r.passed(), "toffoli n={n} a={a}: {r}");
            corpus.extend([peres, toffoli]);
        }
    }
}

fn oracle_permutation(spec: &GateFamilySpec) -> Vec<u64> {
    BitString::all(spec.n() + 1)
        .map(|input| spec_output(spec, &input).unwrap().lex_index())
        .collect()
}

fn dense_vs_exponent(corpus: &mut Vec<Circuit>) {
    let mut rng = rng();
    let mut worst = 0.0f64;
    for n in 2..=5 {
        let mut activations = vec![ActivationVector::all_ones(n)];
        activations.extend((0..3).map(|_| random_activation(&mut rng, n)));
        let mut cases: Vec<(Circuit, GateFamilySpec)> = Vec::new();
        for a in activations {
            cases.push((synth_peres(n, &a).unwrap(), GateFamilySpec::peres(n, a).unwrap()));
            cases.push((synth_toffoli(n, &a).unwrap(), GateFamilySpec::toffoli(n, a).unwrap()));
            cases.push((synth_barenco_toffoli(n, &a).unwrap(), GateFamilySpec::toffoli(n, a).unwrap()));
        }
        cases.push((
            synth_zero_polarity(n, ZeroPolarityMode::OrGate).unwrap(),
            GateFamilySpec::or_gate(n).unwrap(),
        ));
        cases.push((
            synth_zero_polarity(n, ZeroPolarityMode::AndComplemented).unwrap(),
            GateFamilySpec::and_complemented(n).unwrap(),
        ));
        for (c, spec) in cases {
            let oracle = oracle_permutation(&spec);
            let table = truth_table(&c).unwrap();
            assert_eq!(table.permutation(), Some(&oracle[..]), "{}", c.label());
            let dev = dense_unitary(&c)
                .unwrap()
                .max_deviation(&DenseMatrix::from_permutation(&oracle));
            assert!(dev <= DENSE_TOL, "{}: deviation {dev}", c.label());
            worst = worst.max(dev);
            corpus.push(c);
        }
    }
    println!("      max dense deviation {worst:.3e}");
}

fn exponent_identity(_: &mut Vec<Circuit>) {
    let mut rng = rng();
    for n in 1..=10usize {
        let controls: Vec<BitString> = if n <= 8 {
            BitString::all(n).collect()
        } else {
            Vec::new()
        };
        for a in ActivationVector::all_nonzero(n) {
            let sampled: Vec<BitString>;
            let cs: &[BitString] = if n <= 8 {
                &controls
            } else {
                let mut set: BTreeSet<BitString> = (0..16)
                    .map(|_| BitString::from_mask(rng.gen_range(0..(1u64 << n)), n).unwrap())
                    .collect();
                set.extend([a.bits(), BitString::zeros(n), BitString::ones(n)]);
                sampled = set.into_iter().collect();
                &sampled
            };
            for c in cs {
                let expected = if *c == a.bits() { 1i64 << (n - 1) } else { 0 };
                assert_eq!(exponent_sum(&a, c).unwrap(), expected, "n={n} a={a} c={c}");
            }
        }
    }
    let ones = ActivationVector::all_ones(4);
    assert_eq!(exponent_sum(&ones, &ones.bits()).unwrap(), 8);
    let c = synth_peres(4, &ones).unwrap();
    let sim = exponent_simulate(&c, &ones.bits().push(false)).unwrap();
    assert_eq!(sim.exponent, 8);
    let sim = exponent_simulate(&c, &"11100".parse().unwrap()).unwrap();
    assert_eq!(sim.exponent, 0);
}

fn mixed_polarity(corpus: &mut Vec<Circuit>) {
    for n in 2..=5 {
        let table = alpha_table(n).unwrap();
        let base = synth_peres(n, &ActivationVector::all_ones(n)).unwrap();
        for a in ActivationVector::all_nonzero(n) {
            let direct = synth_peres(n, &a).unwrap();
            assert_eq!(activation_set(&direct).unwrap(), BTreeSet::from([a.bits()]), "n={n} a={a}");
            let flipped = (1..=n)
                .filter(|&i| !a.get(i))
                .fold(base.clone(), |c, i| iterative_polarity_flip(&c, &table, i).unwrap());
            assert_eq!(flipped, direct, "n={n} a={a}");
            corpus.push(flipped);
        }
    }
}

fn zero_polarity(corpus: &mut Vec<Circuit>) {
    for n in 2..=5 {
        let or = synth_zero_polarity(n, ZeroPolarityMode::OrGate).unwrap();
        for input in BitString::all(n + 1) {
            let out = peres_core::simulation::simulate_basis(&or, &input).unwrap().bits().unwrap();
            let any = input.prefix(n).iter().any(|b| b);
            assert_eq!(out.get(n + 1), input.get(n + 1) ^ any, "n={n} input={input}");
        }
        let and = synth_zero_polarity(n, ZeroPolarityMode::AndComplemented).unwrap();
        assert_eq!(activation_set(&and).unwrap(), BTreeSet::from([BitString::zeros(n)]));
        corpus.extend([or, and]);
    }
}

fn converters(corpus: &mut Vec<Circuit>) {
    let opts = exhaustive();
    let mut rng = rng();
    for n in 2..=6 {
        let t2p = converter_toffoli_to_peres(n).unwrap();
        let p2t = converter_peres_to_toffoli(n).unwrap();
        let round = t2p.compose(&p2t).unwrap();
        assert!(truth_table(&round).unwrap().is_identity(), "n={n}");

        let mut activations = vec![ActivationVector::all_ones(n)];
        activations.extend((0..3).map(|_| random_activation(&mut rng, n)));
        for a in activations {
            let c = synth_peres(n, &a).unwrap().compose(&p2t).unwrap();
            assert_eq!(c.quantum_cost(), (1 << (n + 1)) - 3);
            let r = check_equivalence_with(&c, &GateFamilySpec::toffoli(n, a).unwrap(), &opts).unwrap();
            assert!(r.passed(), "n={n} a={a}: {r}");
            corpus.push(c);
        }
        corpus.extend([t2p, p2t, round]);
    }
}

fn root_algebra(_: &mut Vec<Circuit>) {
    for kappa in [1u64, 2, 4, 8, 16, 32] {
        let v = root_of_not(kappa).unwrap();
        let power = v.pow(kappa);
        assert!(power.max_deviation(&Unitary2::NOT) <= ROOT_TOL, "kappa {kappa}");
        assert!((v * v.adjoint()).max_deviation(&Unitary2::IDENTITY) <= ROOT_TOL, "kappa {kappa}");
    }
}

fn run_verify(args: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_peres"))
        .args(args)
        .output()
        .expect("run peres binary")
        .status
        .code()
        .expect("exit code")
}

fn serialization(corpus: &[Circuit]) {
    assert!(!corpus.is_empty());
    for c in corpus {
        let back = parse(&serialize(c)).unwrap();
        assert_eq!(&back, c, "{}", c.label());
        let doc = CircuitDocument::from_circuit(c, None).unwrap();
        assert_eq!(&CircuitDocument::from_json(&doc.to_json()).unwrap().to_circuit().unwrap(), c);
    }
    println!("      {} circuits round-tripped", corpus.len());

    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("peres3.txt");
    let c = synth_peres(3, &"101".parse().unwrap()).unwrap();
    std::fs::write(&good, serialize(&c)).unwrap();

    // Corrupt: turn the last controlled root into its adjoint.
    let last_root = c
        .gates()
        .iter()
        .rposition(|g| matches!(g, Gate::ControlledRoot { .. }))
        .unwrap();
    let corrupted = Circuit::from_gates(
        3,
        c.gates().iter().enumerate().map(|(i, g)| if i == last_root { g.adjoint() } else { *g }),
    )
    .unwrap();
    let bad = dir.path().join("corrupted.txt");
    std::fs::write(&bad, serialize(&corrupted)).unwrap();

    let good = good.to_str().unwrap();
    let bad = bad.to_str().unwrap();
    let base = ["verify", "--family", "peres", "--n", "3", "--activation", "101", "--circuit"];
    assert_eq!(run_verify(&[&base[..], &[good]].concat()), 0);
    assert_eq!(run_verify(&[&base[..], &[bad]].concat()), 1);
    assert_eq!(run_verify(&["verify", "--family", "peres", "--circuit", good]), 2);
}

#[test]
fn acceptance_criteria() {
    type Criterion = fn(&mut Vec<Circuit>);
    let criteria: [(&str, Criterion); 9] = [
        ("1  cost anchors 4 / 13 / 13", cost_anchors),
        ("2  cost formulas n=1..10", cost_formulas),
        ("3  exhaustive functional correctness n=1..5", functional_correctness),
        ("4  dense unitary vs exponent simulator n=2..5", dense_vs_exponent),
        ("5  exponent identity n=1..10", exponent_identity),
        ("6  mixed-polarity activation sets and iterative flips", mixed_polarity),
        ("7  zero-polarity OR / complemented AND", zero_polarity),
        ("8  converter round trips and Peres-to-Toffoli cascade", converters),
        ("9  root-of-NOT algebra", root_algebra),
    ];
    let mut corpus = Vec::new();
    let mut failed = Vec::new();
    for (name, criterion) in criteria {
        let start = std::time::Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(|| criterion(&mut corpus))).is_ok();
        println!("{} {name} ({:.2?})", if ok { "PASS" } else { "FAIL" }, start.elapsed());
        if !ok {
            failed.push(name);
        }
    }
    let name = "10 serialization round trips and verify exit codes";
    let ok = catch_unwind(AssertUnwindSafe(|| serialization(&corpus))).is_ok();
    println!("{} {name}", if ok { "PASS" } else { "FAIL" });
    if !ok {
        failed.push(name);
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
