//! Proof-conversion plans: given a verified reduction relation, emit the
//! obligations that transport a proof of a property from the source model to
//! the target model via the conjunction statement `Q`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Bound, InductionModel};
use crate::reduction::{verify_with_context, ReductionContext, ReductionRelation};
use crate::render::compress_set;

/// The base-case obligation: proving `P` on the source base establishes `Q`
/// on every target base element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseObligation {
    /// Target base elements `Q` is established on.
    pub establish_q_on: Vec<u64>,
    /// Source base elements `P` must be proven on.
    pub prove_p_on: Vec<u64>,
}

/// One induction-step obligation: from `Q` on the premises (the coordinates
/// of the canonical generating tuple), conclude `Q(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepObligation {
    pub level: u32,
    pub x: u64,
    pub tuple: Vec<u64>,
    pub premises: Vec<u64>,
}

/// The closing argument: the union of all images covers the source closure,
/// so `Q` everywhere yields `P` everywhere (within the bounded universe).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Conclusion {
    pub covered: Vec<u64>,
    pub note: String,
}

/// A complete proof-conversion plan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofPlan {
    pub source: String,
    pub target: String,
    pub q_definition: String,
    /// Canonical-tuple rule the step obligations depend on.
    pub tie_break: String,
    pub base: BaseObligation,
    pub steps: Vec<StepObligation>,
    pub conclusion: Conclusion,
}

/// Emits the plan for a relation that has already been verified; unverified
/// or failing relations are refused.
pub fn emit_proof_plan(
    m1: &InductionModel,
    m2: &InductionModel,
    relation: &ReductionRelation,
    bound: &Bound,
) -> Result<ProofPlan> {
    let ctx = ReductionContext::new(m1, m2, bound)?;
    let report = verify_with_context(m1, &ctx, relation)?;
    if !report.passed() {
        return Err(Error::UnverifiedRelation {
            detail: report.failure_summary(),
        });
    }

    let base = BaseObligation {
        establish_q_on: ctx.base2.iter().copied().collect(),
        prove_p_on: ctx.base1.iter().copied().collect(),
    };

    let mut steps: Vec<StepObligation> = Vec::new();
    for &x in ctx.cl2.difference(&ctx.base2) {
        let tuple = ctx
            .inj2
            .canonical(x)
            .expect("verified relations have canonical tuples");
        let level = ctx
            .inj_trace2
            .smallest_power(x)
            .expect("closure elements carry a level");
        let mut premises: Vec<u64> = tuple.to_vec();
        premises.sort_unstable();
        premises.dedup();
        steps.push(StepObligation {
            level,
            x,
            tuple: tuple.to_vec(),
            premises,
        });
    }
    steps.sort_by_key(|s| (s.level, s.x));

    let covered: Vec<u64> = ctx
        .trace1
        .closure()
        .iter()
        .copied()
        .filter(|&v| v <= bound.universe)
        .collect();
    let conclusion = Conclusion {
        covered,
        note: format!(
            "the images of R jointly cover the source closure within [1,{}], \
             so Q on the target closure yields P there",
            bound.universe
        ),
    };

    Ok(ProofPlan {
        source: m1.to_string(),
        target: m2.to_string(),
        q_definition: "Q(n) := AND of P(x) over x in R(n)".to_string(),
        tie_break: crate::reduction::TIE_BREAK.to_string(),
        base,
        steps,
        conclusion,
    })
}

impl fmt::Display for ProofPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "proof plan: transport P from {} to {}",
            self.source, self.target
        )?;
        writeln!(f, "definition: {}", self.q_definition)?;
        writeln!(f, "canonical tuples: {}", self.tie_break)?;
        writeln!(
            f,
            "base case: prove P on {} (establishes Q on {})",
            compress_set(self.base.prove_p_on.iter().copied()),
            compress_set(self.base.establish_q_on.iter().copied()),
        )?;
        writeln!(f, "induction steps ({}):", self.steps.len())?;
        let mut current_level = None;
        for step in &self.steps {
            if current_level != Some(step.level) {
                current_level = Some(step.level);
                writeln!(f, "  level {}:", step.level)?;
            }
            let tuple: Vec<String> = step.tuple.iter().map(u64::to_string).collect();
            let premises: Vec<String> = step.premises.iter().map(|p| format!("Q({p})")).collect();
            writeln!(
                f,
                "    from {} conclude Q({})   [x = S_inj({})]",
                premises.join(" and "),
                step.x,
                tuple.join(",")
            )?;
        }
        writeln!(
            f,
            "conclusion: P holds on {}; {}",
            compress_set(self.conclusion.covered.iter().copied()),
            self.conclusion.note
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Bound;
    use crate::reduction::build_reduction;
    use crate::sets::SetSpec;

    #[test]
    fn plan_for_self_reduction() {
        let b = Bound::new(8, 8, 16).unwrap();
        let m = InductionModel::basic();
        let r = build_reduction(&m, &m, &b, false).unwrap();
        let plan = emit_proof_plan(&m, &m, &r, &b).unwrap();
        assert_eq!(plan.base.establish_q_on, vec![1]);
        assert_eq!(plan.base.prove_p_on, vec![1]);
        assert_eq!(plan.steps.len(), 7);
        assert_eq!(plan.steps[0].x, 2);
        assert_eq!(plan.steps[0].tuple, vec![1]);
        assert_eq!(plan.conclusion.covered, (1..=8).collect::<Vec<u64>>());
    }

    #[test]
    fn plan_refuses_failing_relation() {
        let b = Bound::new(8, 8, 16).unwrap();
        let m = InductionModel::basic();
        let mut r = build_reduction(&m, &m, &b, false).unwrap();
        r.entries.insert(3, Default::default());
        assert!(matches!(
            emit_proof_plan(&m, &m, &r, &b),
            Err(Error::UnverifiedRelation { .. })
        ));
    }

    #[test]
    fn plan_references_only_relation_elements() {
        let b = Bound::new(12, 12, 20).unwrap();
        let m1 = InductionModel::new(
            SetSpec::cofinite([2]).unwrap(),
            crate::fixtures::drop_with_jumps(),
        );
        let m2 = InductionModel::basic();
        let r = build_reduction(&m1, &m2, &b, false).unwrap();
        let plan = emit_proof_plan(&m1, &m2, &r, &b).unwrap();
        for step in &plan.steps {
            assert!(r.entries.contains_key(&step.x));
            for p in &step.premises {
                assert!(r.entries.contains_key(p));
            }
        }
    }
}
