//! Injective versions of generating functions, reducibility decisions via
//! step-count comparison, construction of reduction relations by the
//! step-count recipe, and verification of user-supplied relations.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::engine::{closure_trace, for_each_tuple, ClosureTrace, Generating};
use crate::error::{Error, Result};
use crate::model::{Bound, ExtNat, InductionModel, StepOrder};

/// Canonical generating tuples: for every closure element outside the base,
/// the lexicographically smallest tuple over the previous closure level that
/// generates it. The derived injective function maps exactly these tuples to
/// their values and everything else to 0 (discarded by the engine).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InjTable {
    arity: usize,
    by_value: BTreeMap<u64, Vec<u64>>,
    #[serde(skip)]
    by_tuple: BTreeMap<Vec<u64>, u64>,
}

impl InjTable {
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// The canonical tuple generating `x`, if `x` lies outside the base.
    pub fn canonical(&self, x: u64) -> Option<&[u64]> {
        self.by_value.get(&x).map(Vec::as_slice)
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, &[u64])> {
        self.by_value.iter().map(|(x, t)| (*x, t.as_slice()))
    }
}

impl Generating for InjTable {
    fn arity(&self) -> usize {
        self.arity
    }
    fn apply(&self, args: &[u64]) -> Result<i64> {
        Ok(self.by_tuple.get(args).map(|&x| x as i64).unwrap_or(0))
    }
}

/// Builds the canonical-tuple table from a model's trace.
///
/// Elements new at level `i` are claimed by the first tuple over the level
/// `i - 1` closure that evaluates to them, in lexicographic order, which
/// makes the choice reproducible.
pub fn injective_version_from_trace(
    model: &InductionModel,
    trace: &ClosureTrace,
) -> Result<InjTable> {
    let k = model.gen.arity();
    let mut by_value: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    let mut by_tuple: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
    for i in 1..trace.levels.len() {
        let targets = &trace.levels[i].newly;
        if targets.is_empty() {
            continue;
        }
        let carrier: Vec<u64> = trace.levels[i - 1].closure.iter().copied().collect();
        let mut unclaimed = targets.len();
        for_each_tuple(&carrier, k, &mut |args| {
            let v = model.gen.eval(args)?;
            if v >= 1 && targets.contains(&(v as u64)) {
                let x = v as u64;
                if let std::collections::btree_map::Entry::Vacant(slot) = by_value.entry(x) {
                    slot.insert(args.to_vec());
                    by_tuple.insert(args.to_vec(), x);
                    unclaimed -= 1;
                    if unclaimed == 0 {
                        return Ok(ControlFlow::Break(()));
                    }
                }
            }
            Ok(ControlFlow::Continue(()))
        })?;
        debug_assert_eq!(unclaimed, 0, "every new element has a generating tuple");
    }
    Ok(InjTable {
        arity: k,
        by_value,
        by_tuple,
    })
}

/// Canonical-tuple table for a model at a bound.
pub fn injective_version(model: &InductionModel, bound: &Bound) -> Result<InjTable> {
    let trace = closure_trace(model, bound)?;
    injective_version_from_trace(model, &trace)
}

/// The injective table together with the trace of the model run under it.
pub fn injective_closure_trace(
    model: &InductionModel,
    bound: &Bound,
) -> Result<(InjTable, ClosureTrace)> {
    let trace = closure_trace(model, bound)?;
    let table = injective_version_from_trace(model, &trace)?;
    let base = model.base.materialize(bound.cap)?;
    let inj_trace = crate::engine::closure_trace_with(&base, &table, bound)?;
    Ok((table, inj_trace))
}

/// Three-valued verdict for a bounded comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// Holds; `presumed_infinite` marks the reading of two cutoff step
    /// counts as equal infinite cardinals.
    Yes {
        presumed_infinite: bool,
    },
    No,
    /// Not decidable at this cutoff.
    Unknown,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Yes { .. })
    }
}

/// Outcome of the step-count criterion for a model pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReductionDecision {
    pub n1: ExtNat,
    pub n2: ExtNat,
    pub reducible: Verdict,
    pub equivalent: Verdict,
}

/// Decides whether the first model reduces to the second by comparing step
/// counts: reducible iff `n1 <= n2`, equivalent iff both directions hold.
pub fn decide_reducible(
    m1: &InductionModel,
    m2: &InductionModel,
    bound: &Bound,
) -> Result<ReductionDecision> {
    let n1 = closure_trace(m1, bound)?.stabilized_at;
    let n2 = closure_trace(m2, bound)?.stabilized_at;
    let verdict = |order: StepOrder| match order {
        StepOrder::Decided(true) => Verdict::Yes {
            presumed_infinite: false,
        },
        StepOrder::Decided(false) => Verdict::No,
        StepOrder::BothPresumedInfinite => Verdict::Yes {
            presumed_infinite: true,
        },
        StepOrder::Unknown => Verdict::Unknown,
    };
    let le12 = verdict(n1.le(&n2));
    let le21 = verdict(n2.le(&n1));
    let equivalent = match (le12, le21) {
        (Verdict::No, _) | (_, Verdict::No) => Verdict::No,
        (
            Verdict::Yes {
                presumed_infinite: a,
            },
            Verdict::Yes {
                presumed_infinite: b,
            },
        ) => Verdict::Yes {
            presumed_infinite: a || b,
        },
        _ => Verdict::Unknown,
    };
    Ok(ReductionDecision {
        n1,
        n2,
        reducible: le12,
        equivalent,
    })
}

/// Where a relation came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    StepCountRecipe,
    UserSupplied,
}

/// A relation from the (bounded) closure of the target model to subsets of
/// the source model's closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionRelation {
    pub entries: BTreeMap<u64, BTreeSet<u64>>,
    pub provenance: Provenance,
    /// Set when the relation was built under an undecided step-count
    /// comparison on explicit request.
    pub heuristic: bool,
}

impl ReductionRelation {
    pub fn image(&self, x: u64) -> Option<&BTreeSet<u64>> {
        self.entries.get(&x)
    }

    /// Parse from the documented JSON form: either a bare list of
    /// `{x, set}` pairs or an object wrapping that list.
    pub fn parse(text: &str) -> Result<Self> {
        let wire: wire::RelationWire = serde_json::from_str(text)?;
        wire.try_into()
    }

    /// Serialize to the documented JSON form (pretty, trailing newline).
    pub fn serialize(&self) -> String {
        let wire: wire::RelationFile = self.into();
        let mut s = serde_json::to_string_pretty(&wire).expect("relation serialization");
        s.push('\n');
        s
    }
}

/// The pinned rule for choosing canonical generating tuples. Relations and
/// plans built here can depend on the choice, so they carry it.
pub const TIE_BREAK: &str = "lexicographic-smallest-tuple";

mod wire {
    use super::*;

    #[derive(Serialize, Deserialize)]
    pub struct RelationEntry {
        pub x: u64,
        pub set: Vec<u64>,
    }

    #[derive(Serialize, Deserialize)]
    pub struct RelationFile {
        pub provenance: Provenance,
        /// Canonical-tuple rule the relation was built or verified under.
        #[serde(default = "default_tie_break")]
        pub tie_break: String,
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        pub heuristic: bool,
        pub entries: Vec<RelationEntry>,
    }

    fn default_tie_break() -> String {
        TIE_BREAK.to_string()
    }

    /// Accepts both the wrapped file form and a bare entry list.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub enum RelationWire {
        File(RelationFile),
        Bare(Vec<RelationEntry>),
    }

    impl TryFrom<RelationWire> for ReductionRelation {
        type Error = Error;
        fn try_from(w: RelationWire) -> Result<ReductionRelation> {
            let (entries, provenance, heuristic) = match w {
                RelationWire::File(f) => (f.entries, f.provenance, f.heuristic),
                RelationWire::Bare(entries) => (entries, Provenance::UserSupplied, false),
            };
            let mut map = BTreeMap::new();
            for e in entries {
                if map.insert(e.x, e.set.into_iter().collect()).is_some() {
                    return Err(Error::Schema {
                        message: format!("duplicate relation entry for x = {}", e.x),
                        position: None,
                    });
                }
            }
            Ok(ReductionRelation {
                entries: map,
                provenance,
                heuristic,
            })
        }
    }

    impl From<&ReductionRelation> for RelationFile {
        fn from(r: &ReductionRelation) -> Self {
            RelationFile {
                provenance: r.provenance,
                tie_break: default_tie_break(),
                heuristic: r.heuristic,
                entries: r
                    .entries
                    .iter()
                    .map(|(x, set)| RelationEntry {
                        x: *x,
                        set: set.iter().copied().collect(),
                    })
                    .collect(),
            }
        }
    }
}

/// Traces and materialized sets shared by build, verify and plan emission.
pub(crate) struct ReductionContext {
    pub trace1: ClosureTrace,
    pub inj2: InjTable,
    pub inj_trace2: ClosureTrace,
    pub base1: BTreeSet<u64>,
    pub base2: BTreeSet<u64>,
    pub cl2: BTreeSet<u64>,
    pub bound: Bound,
}

impl ReductionContext {
    pub fn new(m1: &InductionModel, m2: &InductionModel, bound: &Bound) -> Result<Self> {
        let trace1 = closure_trace(m1, bound)?;
        let trace2 = closure_trace(m2, bound)?;
        let inj2 = injective_version_from_trace(m2, &trace2)?;
        let base2 = m2.base.materialize(bound.cap)?;
        let inj_trace2 = crate::engine::closure_trace_with(&base2, &inj2, bound)?;
        let base1 = m1.base.materialize(bound.cap)?;
        let cl2 = trace2.closure().clone();
        Ok(Self {
            trace1,
            inj2,
            inj_trace2,
            base1,
            base2,
            cl2,
            bound: *bound,
        })
    }
}

/// Builds the step-count recipe relation: base elements map to the source
/// base, and every element new at level `i` of the injective trace maps to
/// the source closure at level `i` (saturating at the final closure).
///
/// Refused when the step counts compare the wrong way; an undecided
/// comparison requires `allow_undecided` and marks the result heuristic.
pub fn build_reduction(
    m1: &InductionModel,
    m2: &InductionModel,
    bound: &Bound,
    allow_undecided: bool,
) -> Result<ReductionRelation> {
    let decision = decide_reducible(m1, m2, bound)?;
    let heuristic = match decision.reducible {
        Verdict::Yes { .. } => false,
        Verdict::No => {
            return Err(Error::NotReducible {
                n1: decision.n1.to_string(),
                n2: decision.n2.to_string(),
            })
        }
        Verdict::Unknown => {
            if !allow_undecided {
                return Err(Error::UndecidedReduction {
                    detail: format!("n(m1) = {}, n(m2) = {}", decision.n1, decision.n2),
                });
            }
            true
        }
    };

    let ctx = ReductionContext::new(m1, m2, bound)?;
    let mut entries: BTreeMap<u64, BTreeSet<u64>> = BTreeMap::new();
    for (i, level) in ctx.inj_trace2.levels.iter().enumerate() {
        let image = ctx.trace1.closure_at(i).clone();
        for &x in &level.newly {
            entries.insert(x, image.clone());
        }
    }
    Ok(ReductionRelation {
        entries,
        provenance: Provenance::StepCountRecipe,
        heuristic,
    })
}

/// One element's worth of condition-3 mismatch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepFailure {
    pub x: u64,
    pub tuple: Vec<u64>,
    pub expected: Vec<u64>,
    pub actual: Vec<u64>,
}

/// Outcome of a set-equality condition with capped counterexample lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetCondition {
    pub passed: bool,
    pub missing: Vec<u64>,
    pub extra: Vec<u64>,
}

/// Outcome of the per-element step condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepConditionReport {
    pub passed: bool,
    pub checked: u64,
    pub failures: Vec<StepFailure>,
}

/// Verification report for the three conditions of a reduction relation.
/// All comparisons are made inside the universe prefix `[1, N]`; the sets
/// themselves are computed on the full `[1, M]` cap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub closure_coverage: SetCondition,
    pub base_mapping: SetCondition,
    pub step_compatibility: StepConditionReport,
    pub warnings: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.closure_coverage.passed && self.base_mapping.passed && self.step_compatibility.passed
    }

    pub fn failure_summary(&self) -> String {
        let mut parts = Vec::new();
        if !self.closure_coverage.passed {
            parts.push("closure coverage".to_string());
        }
        if !self.base_mapping.passed {
            parts.push("base mapping".to_string());
        }
        if !self.step_compatibility.passed {
            let xs: Vec<String> = self
                .step_compatibility
                .failures
                .iter()
                .map(|f| f.x.to_string())
                .collect();
            parts.push(format!("step compatibility at x = {}", xs.join(", ")));
        }
        if parts.is_empty() {
            "all conditions hold".to_string()
        } else {
            parts.join("; ")
        }
    }
}

const COUNTEREXAMPLE_CAP: usize = 10;

fn set_condition(actual: &BTreeSet<u64>, expected: &BTreeSet<u64>, universe: u64) -> SetCondition {
    let clip = |s: &BTreeSet<u64>| -> BTreeSet<u64> {
        s.iter().copied().filter(|&x| x <= universe).collect()
    };
    let actual = clip(actual);
    let expected = clip(expected);
    let missing: Vec<u64> = expected
        .difference(&actual)
        .copied()
        .take(COUNTEREXAMPLE_CAP)
        .collect();
    let extra: Vec<u64> = actual
        .difference(&expected)
        .copied()
        .take(COUNTEREXAMPLE_CAP)
        .collect();
    SetCondition {
        passed: missing.is_empty() && extra.is_empty(),
        missing,
        extra,
    }
}

/// Checks the three reduction conditions for a relation, reporting
/// counterexamples instead of failing fast.
pub fn verify_reduction(
    m1: &InductionModel,
    m2: &InductionModel,
    relation: &ReductionRelation,
    bound: &Bound,
) -> Result<VerifyReport> {
    let ctx = ReductionContext::new(m1, m2, bound)?;
    verify_with_context(m1, &ctx, relation)
}

pub(crate) fn verify_with_context(
    m1: &InductionModel,
    ctx: &ReductionContext,
    relation: &ReductionRelation,
) -> Result<VerifyReport> {
    let n = ctx.bound.universe;
    let mut warnings = Vec::new();

    // Totality on the bounded closure of the target model.
    let missing_entries: Vec<u64> = ctx
        .cl2
        .iter()
        .copied()
        .filter(|x| !relation.entries.contains_key(x))
        .collect();
    if !missing_entries.is_empty() {
        let shown: Vec<String> = missing_entries
            .iter()
            .take(COUNTEREXAMPLE_CAP)
            .map(u64::to_string)
            .collect();
        return Err(Error::RelationNotTotal {
            missing: shown.join(", "),
        });
    }
    for (&x, image) in &relation.entries {
        if !ctx.cl2.contains(&x) {
            warnings.push(format!(
                "entry for {x} lies outside the bounded closure of the target model; ignored"
            ));
        } else if image.is_empty() {
            warnings.push(format!("image of {x} is empty"));
        }
    }

    // Condition 1: the union of all images is the source closure.
    let mut union_all: BTreeSet<u64> = BTreeSet::new();
    for &x in &ctx.cl2 {
        union_all.extend(relation.entries[&x].iter().copied());
    }
    let closure_coverage = set_condition(&union_all, ctx.trace1.closure(), n);

    // Condition 2: the union of base images is the source base.
    let mut union_base: BTreeSet<u64> = BTreeSet::new();
    for &x in &ctx.base2 {
        union_base.extend(relation.entries[&x].iter().copied());
    }
    let base_mapping = set_condition(&union_base, &ctx.base1, n);

    // Condition 3: for each non-base element with canonical tuple n_x,
    // R(x) must equal S1(U) union U where U joins the images of the tuple's
    // coordinates.
    let k1 = m1.gen.arity();
    let mut failures = Vec::new();
    let mut checked = 0u64;
    let mut image_cache: BTreeMap<Vec<u64>, BTreeSet<u64>> = BTreeMap::new();
    for &x in ctx.cl2.difference(&ctx.base2) {
        let tuple = ctx.inj2.canonical(x).ok_or_else(|| Error::Schema {
            message: format!("no canonical tuple recorded for closure element {x}"),
            position: None,
        })?;
        let mut premise_union: BTreeSet<u64> = BTreeSet::new();
        for &c in tuple {
            premise_union.extend(relation.entries.get(&c).into_iter().flatten().copied());
        }
        let key: Vec<u64> = premise_union.iter().copied().collect();
        let expected = match image_cache.get(&key) {
            Some(s) => s.clone(),
            None => {
                let mut s = apply_to_set(&m1.gen, &key, k1, ctx.bound.cap)?;
                s.extend(premise_union.iter().copied());
                image_cache.insert(key, s.clone());
                s
            }
        };
        checked += 1;
        let cond = set_condition(relation.entries.get(&x).expect("total"), &expected, n);
        if !cond.passed && failures.len() < COUNTEREXAMPLE_CAP {
            failures.push(StepFailure {
                x,
                tuple: tuple.to_vec(),
                expected: expected.iter().copied().filter(|&v| v <= n).collect(),
                actual: relation.entries[&x]
                    .iter()
                    .copied()
                    .filter(|&v| v <= n)
                    .collect(),
            });
        }
    }
    let step_compatibility = StepConditionReport {
        passed: failures.is_empty(),
        checked,
        failures,
    };

    Ok(VerifyReport {
        closure_coverage,
        base_mapping,
        step_compatibility,
        warnings,
    })
}

/// Image of a set under a generating function, clipped to `[1, cap]`.
fn apply_to_set(
    gen: &crate::genfn::GenFn,
    carrier: &[u64],
    k: usize,
    cap: u64,
) -> Result<BTreeSet<u64>> {
    let mut out = BTreeSet::new();
    for_each_tuple(carrier, k, &mut |args| {
        let v = gen.eval(args)?;
        if v >= 1 && v as u64 <= cap {
            out.insert(v as u64);
        }
        Ok(ControlFlow::Continue(()))
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfn::GenFn;
    use crate::sets::SetSpec;

    fn bound(n: u64, m: u64, c: u32) -> Bound {
        Bound::new(n, m, c).unwrap()
    }

    fn double_step() -> InductionModel {
        InductionModel::new(
            SetSpec::finite([2]).unwrap(),
            GenFn::multilinear(1, [(vec![1], 1), (vec![], 2)]).unwrap(),
        )
    }

    fn example_third() -> InductionModel {
        InductionModel::new(
            SetSpec::cofinite([2]).unwrap(),
            crate::fixtures::drop_with_jumps(),
        )
    }

    #[test]
    fn successor_injective_table() {
        let m = InductionModel::basic();
        let b = bound(10, 10, 16);
        let table = injective_version(&m, &b).unwrap();
        for x in 2..=10u64 {
            assert_eq!(table.canonical(x), Some(&[x - 1][..]));
        }
        assert_eq!(table.canonical(1), None);
    }

    #[test]
    fn example_third_injective_table() {
        let m = example_third();
        let b = bound(20, 20, 16);
        let table = injective_version(&m, &b).unwrap();
        let entries: Vec<(u64, &[u64])> = table.entries().collect();
        assert_eq!(entries, vec![(2, &[3u64][..])]);
    }

    #[test]
    fn prime_products_canonical_tuple() {
        let m = InductionModel::new(
            SetSpec::primes(true),
            GenFn::multilinear(2, [(vec![1, 2], 1)]).unwrap(),
        );
        let table = injective_version(&m, &bound(30, 30, 16)).unwrap();
        assert_eq!(table.canonical(4), Some(&[2u64, 2][..]));
    }

    #[test]
    fn decide_example_pairs() {
        let b = Bound::default();
        let third = example_third();
        let basic = InductionModel::basic();

        let d = decide_reducible(&third, &basic, &b).unwrap();
        assert_eq!(d.n1, ExtNat::Finite(2));
        assert!(d.reducible.holds());
        assert_eq!(d.equivalent, Verdict::No);

        let d = decide_reducible(&basic, &third, &b).unwrap();
        assert_eq!(d.reducible, Verdict::No);

        let d = decide_reducible(&double_step(), &basic, &b).unwrap();
        assert!(d.reducible.holds());
        assert!(matches!(
            d.equivalent,
            Verdict::Yes {
                presumed_infinite: true
            }
        ));
    }

    #[test]
    fn recipe_relation_for_example_third() {
        let b = bound(20, 20, 16);
        let m1 = example_third();
        let m2 = InductionModel::basic();
        let r = build_reduction(&m1, &m2, &b, false).unwrap();
        // Base of m2 maps to base of m1.
        let everything_but_two: BTreeSet<u64> = (1..=20u64).filter(|&x| x != 2).collect();
        assert_eq!(r.image(1), Some(&everything_but_two));
        // All later elements map to the saturated closure.
        let all: BTreeSet<u64> = (1..=20).collect();
        assert_eq!(r.image(2), Some(&all));
        assert_eq!(r.image(17), Some(&all));
        let report = verify_reduction(&m1, &m2, &r, &b).unwrap();
        assert!(report.passed(), "{}", report.failure_summary());
    }

    #[test]
    fn self_reduction_of_basic() {
        let b = bound(12, 12, 20);
        let m = InductionModel::basic();
        let r = build_reduction(&m, &m, &b, false).unwrap();
        for x in 1..=12u64 {
            let expected: BTreeSet<u64> = (1..=x).collect();
            assert_eq!(r.image(x), Some(&expected), "x = {x}");
        }
        let report = verify_reduction(&m, &m, &r, &b).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn doubling_relation_from_recipe() {
        let b = bound(20, 20, 32);
        let m1 = double_step();
        let m2 = InductionModel::basic();
        let r = build_reduction(&m1, &m2, &b, false).unwrap();
        // R(x) = {2, 4, ..., 2x} clipped.
        for x in 1..=10u64 {
            let expected: BTreeSet<u64> = (1..=x).map(|i| 2 * i).collect();
            assert_eq!(r.image(x), Some(&expected), "x = {x}");
        }
        let report = verify_reduction(&m1, &m2, &r, &b).unwrap();
        assert!(report.passed(), "{}", report.failure_summary());
    }

    #[test]
    fn build_refuses_wrong_direction() {
        let b = Bound::default();
        let err =
            build_reduction(&InductionModel::basic(), &example_third(), &b, false).unwrap_err();
        assert!(matches!(err, Error::NotReducible { .. }));
    }

    #[test]
    fn mutated_relation_fails_condition_three() {
        let b = bound(20, 20, 16);
        let m1 = example_third();
        let m2 = InductionModel::basic();
        let mut r = build_reduction(&m1, &m2, &b, false).unwrap();
        r.entries.insert(2, BTreeSet::new());
        let report = verify_reduction(&m1, &m2, &r, &b).unwrap();
        assert!(!report.step_compatibility.passed);
        assert_eq!(report.step_compatibility.failures[0].x, 2);
        // An emptied image also surfaces as a warning.
        assert!(report.warnings.iter().any(|w| w.contains("empty")));
    }

    #[test]
    fn non_total_relation_is_an_error() {
        let b = bound(10, 10, 16);
        let m = InductionModel::basic();
        let mut r = build_reduction(&m, &m, &b, false).unwrap();
        r.entries.remove(&5);
        assert!(matches!(
            verify_reduction(&m, &m, &r, &b),
            Err(Error::RelationNotTotal { .. })
        ));
    }

    #[test]
    fn relation_file_round_trip() {
        let b = bound(10, 10, 16);
        let m = InductionModel::basic();
        let r = build_reduction(&m, &m, &b, false).unwrap();
        let parsed = ReductionRelation::parse(&r.serialize()).unwrap();
        assert_eq!(parsed, r);

        let bare = r#"[{"x": 1, "set": [1, 2]}, {"x": 2, "set": [3]}]"#;
        let parsed = ReductionRelation::parse(bare).unwrap();
        assert_eq!(parsed.provenance, Provenance::UserSupplied);
        assert_eq!(parsed.entries.len(), 2);
    }
}
