//! The worked reduction examples: injective versions, hand-written
//! relations, plan emission, and the places where bounded semantics or the
//! pinned tuple tie-break genuinely matter.

mod common;

use indmod::engine::closure_trace;
use indmod::plan::emit_proof_plan;
use indmod::reduction::{
    build_reduction, decide_reducible, injective_closure_trace, injective_version,
    verify_reduction, Verdict,
};
use indmod::{Bound, ExtNat};

use common::*;

#[test]
fn basic_model_is_already_injective() {
    let m = basic_model();
    let b = Bound::new(20, 20, 32).unwrap();
    let (table, inj_trace) = injective_closure_trace(&m, &b).unwrap();
    for x in 2..=20u64 {
        assert_eq!(table.canonical(x), Some(&[x - 1][..]));
    }
    // The injective restriction changes nothing: same levels, same closure.
    let trace = closure_trace(&m, &b).unwrap();
    assert_eq!(inj_trace.levels.len(), trace.levels.len());
    for i in 1..trace.levels.len() {
        assert_eq!(inj_trace.levels[i].newly, trace.levels[i].newly);
    }
    assert_eq!(inj_trace.closure(), trace.closure());
}

#[test]
fn worked_example_single_injective_entry() {
    let m = example_third_model();
    let b = Bound::new(20, 20, 16).unwrap();
    let table = injective_version(&m, &b).unwrap();
    let entries: Vec<(u64, &[u64])> = table.entries().collect();
    assert_eq!(entries, vec![(2, &[3u64][..])]);
}

#[test]
fn product_model_levels_against_naive_oracle() {
    let m = prime_induction_model();
    let b = Bound::new(30, 30, 16).unwrap();
    let trace = closure_trace(&m, &b).unwrap();
    // Independent naive recomputation pins the smallest-power values.
    let slow = naive_trace(&m, &b);
    let level_of = |x: u64| -> u32 {
        slow.iter()
            .position(|(_, _, newly)| newly.contains(&x))
            .expect("reached") as u32
    };
    assert_eq!(level_of(4), 1);
    assert_eq!(level_of(8), 2);
    assert_eq!(level_of(12), 2);
    assert_eq!(trace.smallest_power(4), Some(1));
    assert_eq!(trace.smallest_power(8), Some(2));
    assert_eq!(trace.smallest_power(12), Some(2));
    // Canonical tuple for 4 over the base: products scan lexicographically.
    let table = injective_version(&m, &b).unwrap();
    assert_eq!(table.canonical(4), Some(&[2u64, 2][..]));
}

#[test]
fn recipe_relation_matches_doubling_formula() {
    let b = Bound::default();
    let m1 = double_step_model();
    let m2 = basic_model();
    let built = build_reduction(&m1, &m2, &b, false).unwrap();
    let cl2 = closure_trace(&m2, &b).unwrap().closure().clone();
    let formula = doubling_relation(&cl2, b.cap);
    assert_eq!(built.entries, formula.entries);
}

#[test]
fn omega_relation_verifies_at_factor_depth() {
    // The prefix [1, Omega(x)] grows only logarithmically in x, so the
    // coverage condition needs the cap to reach 2^N. N = 3, M = 8 is the
    // largest clean window.
    let b = Bound::new(3, 8, 16).unwrap();
    let m1 = basic_model();
    let m2 = prime_induction_model();
    let cl2 = closure_trace(&m2, &b).unwrap().closure().clone();
    assert_eq!(cl2, (1..=8).collect());
    let r = omega_relation(&cl2);
    let report = verify_reduction(&m1, &m2, &r, &b).unwrap();
    assert!(report.passed(), "{}", report.failure_summary());

    let plan = emit_proof_plan(&m1, &m2, &r, &b).unwrap();
    assert_eq!(plan.base.prove_p_on, vec![1]);
    assert_eq!(plan.base.establish_q_on, vec![1, 2, 3, 5, 7]);
    let xs: Vec<u64> = plan.steps.iter().map(|s| s.x).collect();
    assert_eq!(xs, vec![4, 6, 8]);
    // The step for 8 consumes the level-1 square: Q(2) and Q(4) give Q(8).
    let step8 = plan.steps.iter().find(|s| s.x == 8).unwrap();
    assert_eq!(step8.tuple, vec![2, 4]);
    assert_eq!(plan.conclusion.covered, vec![1, 2, 3]);
}

#[test]
fn omega_relation_depends_on_tuple_choice_past_sixteen() {
    // At 16 the only tuple over the level-1 closure is (4, 4); the
    // prefix-union then reaches Omega 3 where Omega(16) = 4. A prime-factor
    // split would satisfy the equation, but the tie-break is pinned to the
    // lexicographically smallest tuple.
    let b = Bound::new(4, 16, 16).unwrap();
    let m1 = basic_model();
    let m2 = prime_induction_model();
    let cl2 = closure_trace(&m2, &b).unwrap().closure().clone();
    let r = omega_relation(&cl2);
    let report = verify_reduction(&m1, &m2, &r, &b).unwrap();
    assert!(!report.step_compatibility.passed);
    assert!(report
        .step_compatibility
        .failures
        .iter()
        .any(|f| f.x == 16 && f.tuple == vec![4, 4]));
}

#[test]
fn block_and_backward_models_compare_finitely_at_the_cap() {
    // Unbounded, both models take countably many steps and are equivalent.
    // Inside a cap both saturate: the prime descents finish within the
    // largest prime gap, the five-blocks within cap/5 levels, and the
    // bounded comparison decides reducibility from those finite counts.
    let b = Bound::new(60, 140, 64).unwrap();
    let m1 = backward_primes_model();
    let m2 = block_five_model();
    let d = decide_reducible(&m1, &m2, &b).unwrap();
    assert!(d.n1.is_finite() && d.n2.is_finite());
    assert_eq!(d.n2, ExtNat::Finite(28));
    assert!(d.reducible.holds());
    let r = build_reduction(&m1, &m2, &b, false).unwrap();
    let report = verify_reduction(&m1, &m2, &r, &b).unwrap();
    assert!(report.passed(), "{}", report.failure_summary());
}

#[test]
fn negative_direction_of_worked_example() {
    let b = Bound::default();
    let d = decide_reducible(&basic_model(), &example_third_model(), &b).unwrap();
    assert_eq!(d.n2, ExtNat::Finite(2));
    assert_eq!(d.reducible, Verdict::No);
    assert!(matches!(
        build_reduction(&basic_model(), &example_third_model(), &b, false),
        Err(indmod::Error::NotReducible { .. })
    ));
}

#[test]
fn presumed_equality_at_tight_cutoff_still_builds() {
    // At cutoff 4 the descent chain (true step count 8) and the successor
    // model both report at-least-4; they compare as presumed-equal and the
    // recipe still produces a verifiable relation for the traced window.
    let m1 = cofinite_chain(8);
    let m2 = basic_model();
    let tight = Bound::new(20, 20, 4).unwrap();
    let d = decide_reducible(&m1, &m2, &tight).unwrap();
    assert_eq!((d.n1, d.n2), (ExtNat::AtLeast(4), ExtNat::AtLeast(4)));
    assert!(matches!(
        d.reducible,
        Verdict::Yes {
            presumed_infinite: true
        }
    ));
    let r = build_reduction(&m1, &m2, &tight, false).unwrap();
    assert!(!r.heuristic);
    let report = verify_reduction(&m1, &m2, &r, &tight).unwrap();
    assert!(report.passed(), "{}", report.failure_summary());
    // A wider cutoff settles the comparison for real.
    let wide = Bound::new(20, 20, 16).unwrap();
    let d = decide_reducible(&m1, &m2, &wide).unwrap();
    assert_eq!(d.n1, ExtNat::Finite(8));
    assert!(d.reducible.holds());
}

/// Base excludes `2..=j`; stepping down refills them one per level, so the
/// step count is exactly `j`.
fn cofinite_chain(j: u64) -> indmod::InductionModel {
    indmod::InductionModel::new(
        indmod::SetSpec::cofinite(2..=j).unwrap(),
        indmod::GenFn::predecessor(),
    )
}
