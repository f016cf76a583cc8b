//! Induction models `<B, S>`, bounded-analysis parameters, and the
//! extended-natural step counts produced under bounded semantics.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genfn::GenFn;
use crate::sets::SetSpec;

/// A base set paired with a generating function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InductionModel {
    pub base: SetSpec,
    pub gen: GenFn,
    /// Optional free-form annotation carried through (de)serialization.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl InductionModel {
    pub fn new(base: SetSpec, gen: GenFn) -> Self {
        Self {
            base,
            gen,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// The basic model: base `{1}` with the successor function.
    pub fn basic() -> Self {
        Self::new(SetSpec::finite([1]).expect("valid"), GenFn::successor())
    }
}

impl fmt::Display for InductionModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.base, self.gen)
    }
}

/// Parse a model from its JSON document form.
pub fn parse_model(text: &str) -> Result<InductionModel> {
    Ok(serde_json::from_str(text)?)
}

/// Serialize a model to its JSON document form (pretty-printed, trailing
/// newline, stable field order).
pub fn serialize_model(model: &InductionModel) -> String {
    let mut s = serde_json::to_string_pretty(model).expect("model serialization cannot fail");
    s.push('\n');
    s
}

/// Bounded-semantics parameters: all set computations are clipped to
/// `[1, cap]`, verdicts are stated for the universe `[1, universe]`, and the
/// fixpoint iteration stops after `cutoff` levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    /// `N`: the prefix of the naturals verdicts talk about.
    pub universe: u64,
    /// `M`: the materialization cap; generated values above it are discarded.
    pub cap: u64,
    /// Maximum number of fixpoint levels before the step count is reported as
    /// `at_least(cutoff)`.
    pub cutoff: u32,
}

impl Bound {
    pub const DEFAULT_UNIVERSE: u64 = 60;
    pub const DEFAULT_CUTOFF: u32 = 64;

    pub fn new(universe: u64, cap: u64, cutoff: u32) -> Result<Self> {
        if universe < 1 {
            return Err(Error::InvalidBound("universe must be >= 1".into()));
        }
        if cap < universe {
            return Err(Error::InvalidBound(format!(
                "cap {cap} must be >= universe {universe}"
            )));
        }
        if cutoff < 1 {
            return Err(Error::InvalidBound("cutoff must be >= 1".into()));
        }
        Ok(Self {
            universe,
            cap,
            cutoff,
        })
    }

    /// Default cap for a universe: `2N + 16`, which leaves headroom for
    /// values above `N` to participate as tuple inputs (desk-scale prime gaps
    /// included).
    pub fn for_universe(universe: u64) -> Self {
        Self {
            universe,
            cap: 2 * universe + 16,
            cutoff: Self::DEFAULT_CUTOFF,
        }
    }
}

impl Default for Bound {
    fn default() -> Self {
        Self::for_universe(Self::DEFAULT_UNIVERSE)
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "N={} M={} cutoff={}",
            self.universe, self.cap, self.cutoff
        )
    }
}

/// A step count under bounded semantics: either an exactly determined finite
/// value, or `at_least(cutoff)` when the iteration was still producing new
/// elements at the cutoff (presumed countably infinite, never silently
/// treated as such).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum ExtNat {
    Finite(u64),
    AtLeast(u32),
}

/// Outcome of a three-valued `<=` comparison between step counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOrder {
    /// Decided within the bound.
    Decided(bool),
    /// Both counts hit their cutoffs; they compare as equal under the
    /// presumed-infinite reading.
    BothPresumedInfinite,
    /// Not decidable at these cutoffs.
    Unknown,
}

impl ExtNat {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtNat::Finite(_))
    }

    /// Three-valued `self <= other`.
    ///
    /// `finite(a) <= at_least(c)` is decided (true) only when `a <= c`;
    /// `at_least(c) <= finite(b)` is decided (false) only when `b <= c`;
    /// two `at_least` values compare as equal-presumed-infinite.
    pub fn le(&self, other: &ExtNat) -> StepOrder {
        match (self, other) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => StepOrder::Decided(a <= b),
            (ExtNat::Finite(a), ExtNat::AtLeast(c)) => {
                if *a <= *c as u64 {
                    StepOrder::Decided(true)
                } else {
                    StepOrder::Unknown
                }
            }
            (ExtNat::AtLeast(c), ExtNat::Finite(b)) => {
                if *b <= *c as u64 {
                    StepOrder::Decided(false)
                } else {
                    StepOrder::Unknown
                }
            }
            (ExtNat::AtLeast(_), ExtNat::AtLeast(_)) => StepOrder::BothPresumedInfinite,
        }
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(n) => write!(f, "{n}"),
            ExtNat::AtLeast(c) => write!(f, ">={c} (presumed omega)"),
        }
    }
}
