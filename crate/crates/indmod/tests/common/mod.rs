//! Shared helpers for the integration suites: seeded random model
//! generators and naive re-implementations used as independent oracles.

#![allow(dead_code)]

use std::collections::BTreeSet;

use indmod::{Bound, GenFn, InductionModel, Multilinear, PieceCase, Piecewise, SetSpec};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All k-tuples over a carrier, materialized. Deliberately naive; used by
/// oracles that must not share the engine's enumeration code.
pub fn all_tuples(carrier: &[u64], k: usize) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::with_capacity(out.len() * carrier.len());
        for t in &out {
            for &c in carrier {
                let mut t2 = t.clone();
                t2.push(c);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// One level of the naive trace: power, closure, new elements.
pub type NaiveLevel = (BTreeSet<u64>, BTreeSet<u64>, BTreeSet<u64>);

/// Naive bounded fixpoint: recomputes every power from scratch over all
/// tuples of the previous closure, with no frontier optimization.
pub fn naive_trace(model: &InductionModel, bound: &Bound) -> Vec<NaiveLevel> {
    let base = model.base.materialize(bound.cap).expect("non-empty base");
    let k = model.gen.arity();
    let mut levels: Vec<NaiveLevel> = vec![(base.clone(), base.clone(), base)];
    for i in 1..=bound.cutoff {
        let prev_closure = levels[i as usize - 1].1.clone();
        let carrier: Vec<u64> = prev_closure.iter().copied().collect();
        let mut power = BTreeSet::new();
        for t in all_tuples(&carrier, k) {
            let v = model.gen.eval(&t).expect("oracle models stay in range");
            if v >= 1 && v as u64 <= bound.cap {
                power.insert(v as u64);
            }
        }
        let newly: BTreeSet<u64> = power.difference(&prev_closure).copied().collect();
        let closure: BTreeSet<u64> = prev_closure.union(&power).copied().collect();
        let stop = newly.is_empty();
        levels.push((power, closure, newly));
        if stop {
            break;
        }
    }
    levels
}

/// Multilinear evaluation the slow way: explicit sum of products in i128.
pub fn naive_multilinear_eval(m: &Multilinear, args: &[u64]) -> i128 {
    let mut acc: i128 = 0;
    for (vars, c) in m.coeffs() {
        let mut term = c as i128;
        for &v in vars {
            term *= args[v as usize - 1] as i128;
        }
        acc += term;
    }
    acc
}

pub fn multilinear(arity: usize, entries: &[(&[u8], i64)]) -> GenFn {
    GenFn::multilinear(arity, entries.iter().map(|(v, c)| (v.to_vec(), *c))).unwrap()
}

/// Random multilinear function with the given arity and coefficients drawn
/// from `[-span, span]`.
pub fn random_multilinear(rng: &mut ChaCha8Rng, arity: usize, span: i64) -> GenFn {
    loop {
        let mut entries: Vec<(Vec<u8>, i64)> = Vec::new();
        for subset in 0u32..(1 << arity) {
            if rng.gen_bool(0.5) {
                let vars: Vec<u8> = (1..=arity as u8)
                    .filter(|i| subset >> (i - 1) & 1 == 1)
                    .collect();
                let c = rng.gen_range(-span..=span);
                entries.push((vars, c));
            }
        }
        let f = GenFn::multilinear(arity, entries).unwrap();
        if f.as_multilinear().unwrap().coeffs().count() > 0 {
            return f;
        }
    }
}

/// Random additive function, never the identity.
pub fn random_additive(rng: &mut ChaCha8Rng, max_arity: usize) -> GenFn {
    loop {
        let k = rng.gen_range(1..=max_arity);
        let mut entries: Vec<(Vec<u8>, i64)> = Vec::new();
        let a0 = rng.gen_range(-3..=3);
        if a0 != 0 {
            entries.push((vec![], a0));
        }
        for i in 1..=k as u8 {
            let c = loop {
                let c = rng.gen_range(-3i64..=3);
                if c != 0 {
                    break c;
                }
            };
            entries.push((vec![i], c));
        }
        let f = GenFn::multilinear(k, entries).unwrap();
        if !indmod::structure::is_identity(&f) {
            return f;
        }
    }
}

/// Random multiplicative function, never the identity.
pub fn random_multiplicative(rng: &mut ChaCha8Rng, max_arity: usize) -> GenFn {
    loop {
        let k = rng.gen_range(1..=max_arity);
        let mut entries: Vec<(Vec<u8>, i64)> = Vec::new();
        let full: Vec<u8> = (1..=k as u8).collect();
        let leading = loop {
            let c = rng.gen_range(-3i64..=3);
            if c != 0 {
                break c;
            }
        };
        for subset in 0u32..(1 << k) - 1 {
            if rng.gen_bool(0.4) {
                let vars: Vec<u8> = (1..=k as u8)
                    .filter(|i| subset >> (i - 1) & 1 == 1)
                    .collect();
                entries.push((vars, rng.gen_range(-3..=3)));
            }
        }
        entries.push((full, leading));
        let f = GenFn::multilinear(k, entries).unwrap();
        if !indmod::structure::is_identity(&f) {
            return f;
        }
    }
}

/// Random base set with elements inside `[1, hi]`.
pub fn random_base(rng: &mut ChaCha8Rng, hi: u64) -> SetSpec {
    match rng.gen_range(0..4) {
        0 => {
            let len = rng.gen_range(1..=4usize);
            let mut elems = BTreeSet::new();
            while elems.len() < len {
                elems.insert(rng.gen_range(1..=hi));
            }
            SetSpec::finite(elems).unwrap()
        }
        1 => {
            let len = rng.gen_range(1..=3usize);
            let mut excl = BTreeSet::new();
            while excl.len() < len {
                excl.insert(rng.gen_range(1..=hi));
            }
            SetSpec::cofinite(excl).unwrap()
        }
        2 => SetSpec::primes(rng.gen_bool(0.5)),
        _ => {
            let lo = rng.gen_range(1..=hi);
            let len = rng.gen_range(0..=4);
            SetSpec::interval(lo, lo + len).unwrap()
        }
    }
}

/// Random model with a multilinear generating function (arity at most 2,
/// small coefficients): the population used by the definition-equivalence
/// suites.
pub fn random_small_model(rng: &mut ChaCha8Rng, base_hi: u64) -> InductionModel {
    let arity = rng.gen_range(1..=2usize);
    InductionModel::new(random_base(rng, base_hi), random_multilinear(rng, arity, 3))
}

/// The piecewise function of the worked two-step example: 10 at 1 and 5,
/// otherwise x - 1.
pub fn drop_with_jumps() -> GenFn {
    GenFn::Piecewise(
        Piecewise::new(
            1,
            vec![
                PieceCase {
                    coord: 1,
                    equals: 1,
                    body: Multilinear::constant(1, 10),
                },
                PieceCase {
                    coord: 1,
                    equals: 5,
                    body: Multilinear::constant(1, 10),
                },
            ],
            Multilinear::affine(1, 1, 1, -1).unwrap(),
        )
        .unwrap(),
    )
}

pub fn example_third_model() -> InductionModel {
    InductionModel::new(SetSpec::cofinite([2]).unwrap(), drop_with_jumps())
}

pub fn basic_model() -> InductionModel {
    InductionModel::basic()
}

pub fn double_step_model() -> InductionModel {
    InductionModel::new(
        SetSpec::finite([2]).unwrap(),
        multilinear(1, &[(&[1], 1), (&[], 2)]),
    )
}

pub fn prime_induction_model() -> InductionModel {
    InductionModel::new(SetSpec::primes(true), multilinear(2, &[(&[1, 2], 1)]))
}

pub fn backward_primes_model() -> InductionModel {
    InductionModel::new(SetSpec::primes(false), GenFn::predecessor())
}

pub fn block_five_model() -> InductionModel {
    InductionModel::new(
        SetSpec::interval(1, 5).unwrap(),
        multilinear(1, &[(&[1], 1), (&[], 5)]),
    )
}

// ---- hand-written relation builders (clipped to a bound) ---------------

use indmod::reduction::{Provenance, ReductionRelation};
use std::collections::BTreeMap;

fn relation(entries: BTreeMap<u64, BTreeSet<u64>>) -> ReductionRelation {
    ReductionRelation {
        entries,
        provenance: Provenance::UserSupplied,
        heuristic: false,
    }
}

/// `R(x) = {2, 4, ..., 2x}` for the doubling pair, clipped to the cap.
pub fn doubling_relation(domain: &BTreeSet<u64>, cap: u64) -> ReductionRelation {
    let entries = domain
        .iter()
        .map(|&x| {
            let image: BTreeSet<u64> = (1..=x).map(|i| 2 * i).filter(|&v| v <= cap).collect();
            (x, image)
        })
        .collect();
    relation(entries)
}

/// `R(x) = {x/2, x/2 - 1, ..., 1}` for the halving direction.
pub fn halving_relation(domain: &BTreeSet<u64>) -> ReductionRelation {
    let entries = domain.iter().map(|&x| (x, (1..=x / 2).collect())).collect();
    relation(entries)
}

/// The block relation between backward induction over the primes and the
/// five-block successor model: the base block maps to the primes, and block
/// `n` maps to the primes together with every descent of length at most `n`.
/// (Stated with descents only, the first block fails the step equation: the
/// step image of the primes necessarily retains the primes themselves.)
pub fn prime_block_relation(domain: &BTreeSet<u64>, cap: u64) -> ReductionRelation {
    let primes: BTreeSet<u64> = (1..=cap).filter(|&x| indmod::num::is_prime(x)).collect();
    let entries = domain
        .iter()
        .map(|&x| {
            let n = if x <= 5 { 0 } else { (x - 1) / 5 };
            let mut image = primes.clone();
            for &p in &primes {
                for i in 1..=n {
                    if p > i {
                        image.insert(p - i);
                    }
                }
            }
            (x, image)
        })
        .collect();
    relation(entries)
}

/// `R(x) = Cl_{x-1}` of the source model's trace.
pub fn closure_prefix_relation(
    domain: &BTreeSet<u64>,
    source_trace: &indmod::engine::ClosureTrace,
) -> ReductionRelation {
    let entries = domain
        .iter()
        .map(|&x| (x, source_trace.closure_at(x as usize - 1).clone()))
        .collect();
    relation(entries)
}

/// The prime-factor-counting relation: 1 maps to {1}, everything else to
/// the prefix `[1, Omega(x)]`.
pub fn omega_relation(domain: &BTreeSet<u64>) -> ReductionRelation {
    let entries = domain
        .iter()
        .map(|&x| {
            let image: BTreeSet<u64> = if x == 1 {
                [1].into()
            } else {
                (1..=indmod::num::prime_omega(x)).collect()
            };
            (x, image)
        })
        .collect();
    relation(entries)
}

// ---- golden-file command list -------------------------------------------

/// Every fixture command the golden suite pins: name, argv, expected exit.
pub fn golden_commands() -> Vec<(&'static str, Vec<&'static str>, i32)> {
    vec![
        (
            "analyze-base2-succ",
            vec!["analyze", "fixtures/base2-succ.json", "--bound", "10"],
            1,
        ),
        (
            "analyze-ex-third",
            vec![
                "analyze",
                "fixtures/ex-equiv-third.json",
                "--bound",
                "20",
                "--cap",
                "20",
            ],
            0,
        ),
        (
            "analyze-backward-primes",
            vec![
                "analyze",
                "fixtures/backward-primes.json",
                "--bound",
                "50",
                "--cap",
                "120",
            ],
            0,
        ),
        (
            "analyze-prime-induction-json",
            vec![
                "analyze",
                "fixtures/prime-induction.json",
                "--bound",
                "30",
                "--cap",
                "30",
                "--format",
                "json",
            ],
            0,
        ),
        (
            "classify-prime-induction",
            vec!["classify", "fixtures/prime-induction.json"],
            0,
        ),
        (
            "classify-first-principle",
            vec!["classify", "fixtures/first-principle.json"],
            0,
        ),
        (
            "classify-identity",
            vec!["classify", "fixtures/identity.json"],
            1,
        ),
        (
            "classify-projection",
            vec!["classify", "fixtures/projection.json"],
            1,
        ),
        (
            "construct-s-additive",
            vec![
                "construct-s",
                "fixtures/set-three.json",
                "--structure",
                "additive",
                "--arity",
                "2",
            ],
            0,
        ),
        (
            "construct-s-multiplicative",
            vec![
                "construct-s",
                "fixtures/set-two-five.json",
                "--structure",
                "multiplicative",
                "--arity",
                "2",
                "--bound",
                "40",
            ],
            0,
        ),
        (
            "construct-s-unary-impossible",
            vec![
                "construct-s",
                "fixtures/set-two-five.json",
                "--structure",
                "additive",
                "--arity",
                "1",
            ],
            1,
        ),
        (
            "construct-b-prime-induction",
            vec!["construct-b", "fixtures/prime-induction.json"],
            0,
        ),
        (
            "reduce-third-to-first",
            vec![
                "reduce",
                "fixtures/ex-equiv-third.json",
                "fixtures/first-principle.json",
            ],
            0,
        ),
        (
            "reduce-first-to-third",
            vec![
                "reduce",
                "fixtures/first-principle.json",
                "fixtures/ex-equiv-third.json",
            ],
            1,
        ),
        (
            "reduce-strong-form",
            vec![
                "reduce",
                "fixtures/strong-form.json",
                "fixtures/first-principle.json",
            ],
            0,
        ),
        (
            "verify-doubling",
            vec![
                "verify-reduction",
                "fixtures/base2-step2.json",
                "fixtures/first-principle.json",
                "fixtures/r-doubling.json",
                "--bound",
                "20",
                "--cap",
                "20",
            ],
            0,
        ),
        (
            "plan-third-to-first",
            vec![
                "plan",
                "fixtures/ex-equiv-third.json",
                "fixtures/first-principle.json",
                "--bound",
                "12",
                "--cap",
                "12",
            ],
            0,
        ),
    ]
}

pub fn workspace_root() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap()
}

/// Runs the CLI binary from the workspace root; returns (stdout, stderr,
/// exit code).
pub fn run_cli(args: &[&str]) -> (Vec<u8>, Vec<u8>, i32) {
    let exe = env!("CARGO_BIN_EXE_indmod");
    let out = std::process::Command::new(exe)
        .args(args)
        .current_dir(workspace_root())
        .output()
        .expect("binary runs");
    (out.stdout, out.stderr, out.status.code().unwrap_or(-1))
}
