//! Bounded-semantics fixpoint engine: powers of the generating function,
//! closures, difference sets, smallest-power indices, step counts and
//! coverage verdicts.
//!
//! All set computations live inside `[1, cap]`. A generated value outside
//! that range is discarded, exactly as values outside the naturals are
//! discarded in the unbounded setting. Values in `(universe, cap]` still
//! participate as tuple inputs.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::genfn::GenFn;
use crate::model::{Bound, ExtNat, InductionModel};

/// Anything usable as a generating function by the engine. Implemented by
/// [`GenFn`] and by table-driven functions such as injective versions.
pub trait Generating {
    fn arity(&self) -> usize;
    fn apply(&self, args: &[u64]) -> Result<i64>;
}

impl Generating for GenFn {
    fn arity(&self) -> usize {
        GenFn::arity(self)
    }
    fn apply(&self, args: &[u64]) -> Result<i64> {
        self.eval(args)
    }
}

/// One level of a closure trace: the power set `S^i`, the closure `Cl_i`,
/// and the genuinely new elements `D_i` (with `D_0` taken to be the base).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Level {
    pub power: BTreeSet<u64>,
    pub closure: BTreeSet<u64>,
    #[serde(rename = "new")]
    pub newly: BTreeSet<u64>,
}

/// Level-by-level record of a bounded fixpoint run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureTrace {
    pub bound: Bound,
    pub levels: Vec<Level>,
    /// Smallest power containing each closure element.
    pub l_table: std::collections::BTreeMap<u64, u32>,
    /// `finite(i)` for the first level with an empty difference set, or
    /// `at_least(cutoff)` when the cutoff was exhausted first.
    pub stabilized_at: ExtNat,
}

impl ClosureTrace {
    /// Final closure of the run.
    pub fn closure(&self) -> &BTreeSet<u64> {
        &self
            .levels
            .last()
            .expect("trace has at least level 0")
            .closure
    }

    /// `Cl_i`, saturating at the final closure beyond the traced levels.
    pub fn closure_at(&self, i: usize) -> &BTreeSet<u64> {
        let idx = i.min(self.levels.len() - 1);
        &self.levels[idx].closure
    }

    /// Smallest power index for `x`, if `x` was reached.
    pub fn smallest_power(&self, x: u64) -> Option<u32> {
        self.l_table.get(&x).copied()
    }
}

/// Coverage verdict for the universe prefix, relative to bounded semantics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NimVerdict {
    pub covered: bool,
    pub missing: BTreeSet<u64>,
    pub caveat: String,
}

fn caveat(bound: &Bound) -> String {
    format!(
        "verdict relative to bounded semantics: sets clipped to [1,{}], universe [1,{}], cutoff {}",
        bound.cap, bound.universe, bound.cutoff
    )
}

/// Runs the bounded fixpoint for a model.
///
/// Levels are computed until the difference set is empty or the cutoff is
/// reached; the cutoff case is reported in `stabilized_at`, never silently
/// treated as infinite.
pub fn closure_trace(model: &InductionModel, bound: &Bound) -> Result<ClosureTrace> {
    let base = model.base.materialize(bound.cap)?;
    closure_trace_with(&base, &model.gen, bound)
}

/// Same as [`closure_trace`], for any [`Generating`] implementation and an
/// already-materialized base.
pub fn closure_trace_with(
    base: &BTreeSet<u64>,
    gen: &dyn Generating,
    bound: &Bound,
) -> Result<ClosureTrace> {
    if base.is_empty() {
        return Err(Error::EmptyBase { cap: bound.cap });
    }
    debug_assert!(base.iter().all(|&x| 1 <= x && x <= bound.cap));
    let k = gen.arity();

    let mut levels = vec![Level {
        power: base.clone(),
        closure: base.clone(),
        newly: base.clone(),
    }];
    let mut l_table: std::collections::BTreeMap<u64, u32> = base.iter().map(|&x| (x, 0)).collect();

    let mut stabilized_at = ExtNat::AtLeast(bound.cutoff);
    for i in 1..=bound.cutoff {
        let prev = &levels[i as usize - 1];
        let carrier: Vec<u64> = prev.closure.iter().copied().collect();

        // Semi-naive step: S^i adds only values of tuples that touch the
        // previous difference set; tuples entirely inside Cl_{i-2} already
        // contributed to S^{i-1}.
        let mut fresh: BTreeSet<u64> = BTreeSet::new();
        let mut visit = |args: &[u64]| -> Result<ControlFlow<()>> {
            let v = gen.apply(args)?;
            if v >= 1 && v as u64 <= bound.cap {
                fresh.insert(v as u64);
            }
            Ok(ControlFlow::Continue(()))
        };
        if i == 1 {
            for_each_tuple(&carrier, k, &mut visit)?;
        } else {
            let delta: Vec<u64> = prev.newly.iter().copied().collect();
            let old: Vec<u64> = prev.closure.difference(&prev.newly).copied().collect();
            for_each_delta_tuple(&old, &delta, &carrier, k, &mut visit)?;
        }

        let power: BTreeSet<u64> = if i == 1 {
            fresh
        } else {
            levels[i as usize - 1]
                .power
                .union(&fresh)
                .copied()
                .collect()
        };
        let prev = &levels[i as usize - 1];
        let newly: BTreeSet<u64> = power.difference(&prev.closure).copied().collect();
        let closure: BTreeSet<u64> = prev.closure.union(&newly).copied().collect();
        for &x in &newly {
            l_table.entry(x).or_insert(i);
        }
        let empty = newly.is_empty();
        levels.push(Level {
            power,
            closure,
            newly,
        });
        if empty {
            stabilized_at = ExtNat::Finite(i as u64);
            break;
        }
    }

    Ok(ClosureTrace {
        bound: *bound,
        levels,
        l_table,
        stabilized_at,
    })
}

/// Number of steps of the model under bounded semantics: the first level
/// with an empty difference set, or `at_least(cutoff)`.
pub fn step_count(model: &InductionModel, bound: &Bound) -> Result<ExtNat> {
    Ok(closure_trace(model, bound)?.stabilized_at)
}

/// Checks whether the closure covers the whole universe prefix `[1, N]`.
pub fn is_nim_bounded(model: &InductionModel, bound: &Bound) -> Result<NimVerdict> {
    let trace = closure_trace(model, bound)?;
    Ok(nim_verdict(&trace))
}

/// Coverage verdict straight from an existing trace.
pub fn nim_verdict(trace: &ClosureTrace) -> NimVerdict {
    let cl = trace.closure();
    let missing: BTreeSet<u64> = (1..=trace.bound.universe)
        .filter(|x| !cl.contains(x))
        .collect();
    NimVerdict {
        covered: missing.is_empty(),
        missing,
        caveat: caveat(&trace.bound),
    }
}

/// Least `G` within `[1, cap]` that contains the base and is closed under
/// images landing in `[1, cap]`. Computed by chaotic iteration over all
/// tuples, independently of the level-by-level trace.
pub fn minimal_closed_superset(model: &InductionModel, bound: &Bound) -> Result<BTreeSet<u64>> {
    let mut g = model.base.materialize(bound.cap)?;
    let k = model.gen.arity();
    loop {
        let snapshot: Vec<u64> = g.iter().copied().collect();
        let mut grew = false;
        for_each_tuple(&snapshot, k, &mut |args| {
            let v = model.gen.eval(args)?;
            if v >= 1 && v as u64 <= bound.cap && g.insert(v as u64) {
                grew = true;
            }
            Ok(ControlFlow::Continue(()))
        })?;
        if !grew {
            return Ok(g);
        }
    }
}

/// Exhaustive check of the least-fixpoint characterization on a tiny cap:
/// every subset `G` of `[1, cap]` that contains the base and is closed under
/// in-range images must contain the computed closure, and the closure itself
/// must be such a `G`.
pub fn exhaustive_g_oracle(model: &InductionModel, bound: &Bound) -> Result<bool> {
    const MAX_CAP: u64 = 14;
    if bound.cap > MAX_CAP {
        return Err(Error::CapTooLargeForEnumeration {
            max: MAX_CAP,
            got: bound.cap,
        });
    }
    let m = bound.cap as u32;
    let base = model.base.materialize(bound.cap)?;
    let cl = closure_trace(model, bound)?.closure().clone();
    let to_mask = |s: &BTreeSet<u64>| -> u32 { s.iter().map(|&x| 1u32 << (x - 1)).sum() };
    let base_mask = to_mask(&base);
    let cl_mask = to_mask(&cl);

    // Every in-range application, as (coordinates-used mask, value bit).
    let universe: Vec<u64> = (1..=bound.cap).collect();
    let mut apps: BTreeSet<(u32, u32)> = BTreeSet::new();
    for_each_tuple(&universe, model.gen.arity(), &mut |args| {
        let v = model.gen.eval(args)?;
        if v >= 1 && v as u64 <= bound.cap {
            let used: u32 = args.iter().map(|&x| 1u32 << (x - 1)).fold(0, |a, b| a | b);
            apps.insert((used, 1u32 << (v - 1)));
        }
        Ok(ControlFlow::Continue(()))
    })?;
    let closed = |g: u32| -> bool {
        apps.iter()
            .all(|&(used, vbit)| used & !g != 0 || g & vbit != 0)
    };

    // Closure must itself satisfy both conditions.
    if base_mask & !cl_mask != 0 || !closed(cl_mask) {
        return Ok(false);
    }
    for g in 0u32..(1u32 << m) {
        if base_mask & !g != 0 {
            continue;
        }
        if closed(g) && cl_mask & !g != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Calls `visit` with every `k`-tuple over `carrier`, in lexicographic order
/// of positions into the sorted carrier. The visitor may break out early.
pub fn for_each_tuple(
    carrier: &[u64],
    k: usize,
    visit: &mut dyn FnMut(&[u64]) -> Result<ControlFlow<()>>,
) -> Result<()> {
    if carrier.is_empty() {
        return Ok(());
    }
    let mut idx = vec![0usize; k];
    let mut args = vec![carrier[0]; k];
    loop {
        if visit(&args)?.is_break() {
            return Ok(());
        }
        // Odometer increment over positions.
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(());
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < carrier.len() {
                args[pos] = carrier[idx[pos]];
                break;
            }
            idx[pos] = 0;
            args[pos] = carrier[0];
        }
    }
}

/// Calls `visit` with every `k`-tuple over `full` that touches `delta` in at
/// least one position. Each qualifying tuple is visited exactly once: tuples
/// are grouped by the first position holding a `delta` element, with earlier
/// positions drawn from `old` (= full minus delta) and later ones from `full`.
fn for_each_delta_tuple(
    old: &[u64],
    delta: &[u64],
    full: &[u64],
    k: usize,
    visit: &mut dyn FnMut(&[u64]) -> Result<ControlFlow<()>>,
) -> Result<()> {
    if delta.is_empty() {
        return Ok(());
    }
    let mut args = vec![0u64; k];
    for first in 0..k {
        if fill_positions(old, delta, full, first, 0, &mut args, visit)?.is_break() {
            return Ok(());
        }
    }
    Ok(())
}

fn fill_positions(
    old: &[u64],
    delta: &[u64],
    full: &[u64],
    first: usize,
    pos: usize,
    args: &mut Vec<u64>,
    visit: &mut dyn FnMut(&[u64]) -> Result<ControlFlow<()>>,
) -> Result<ControlFlow<()>> {
    if pos == args.len() {
        return visit(args);
    }
    let choices: &[u64] = match pos.cmp(&first) {
        std::cmp::Ordering::Less => old,
        std::cmp::Ordering::Equal => delta,
        std::cmp::Ordering::Greater => full,
    };
    for &x in choices {
        args[pos] = x;
        if fill_positions(old, delta, full, first, pos + 1, args, visit)?.is_break() {
            return Ok(ControlFlow::Break(()));
        }
    }
    Ok(ControlFlow::Continue(()))
}
