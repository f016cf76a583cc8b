//! Symbolic base sets and their exact materialization on a bounded prefix of
//! the naturals.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::is_prime;

/// Symbolic description of a base set `B`. The four variants cover every base
/// set this tool works with; membership is exactly decidable for all of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
#[serde(try_from = "wire::SetSpecWire")]
pub enum SetSpec {
    /// An explicit finite set, strictly sorted, all elements >= 1.
    Finite { elements: Vec<u64> },
    /// The naturals minus a finite exclusion list (strictly sorted, >= 1).
    Cofinite { excluded: Vec<u64> },
    /// The primes, optionally together with 1.
    Primes { include_one: bool },
    /// The contiguous range `[lo, hi]`.
    Interval { lo: u64, hi: u64 },
}

impl SetSpec {
    pub fn finite(elements: impl IntoIterator<Item = u64>) -> Result<Self> {
        let spec = SetSpec::Finite {
            elements: elements.into_iter().collect(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn cofinite(excluded: impl IntoIterator<Item = u64>) -> Result<Self> {
        let spec = SetSpec::Cofinite {
            excluded: excluded.into_iter().collect(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn primes(include_one: bool) -> Self {
        SetSpec::Primes { include_one }
    }

    pub fn interval(lo: u64, hi: u64) -> Result<Self> {
        let spec = SetSpec::Interval { lo, hi };
        spec.validate()?;
        Ok(spec)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        let check_sorted = |list: &[u64], what: &str| -> Result<()> {
            if list.is_empty() {
                return Err(Error::InvalidSetSpec(format!("{what} list is empty")));
            }
            let mut prev = 0u64;
            for &x in list {
                if x == 0 {
                    return Err(Error::InvalidSetSpec(format!(
                        "{what} list contains 0; naturals start at 1"
                    )));
                }
                if x <= prev {
                    return Err(Error::InvalidSetSpec(format!(
                        "{what} list must be strictly sorted"
                    )));
                }
                prev = x;
            }
            Ok(())
        };
        match self {
            SetSpec::Finite { elements } => check_sorted(elements, "element"),
            SetSpec::Cofinite { excluded } => check_sorted(excluded, "excluded"),
            SetSpec::Primes { .. } => Ok(()),
            SetSpec::Interval { lo, hi } => {
                if *lo == 0 {
                    Err(Error::InvalidSetSpec("interval lo must be >= 1".into()))
                } else if lo > hi {
                    Err(Error::InvalidSetSpec(format!(
                        "interval [{lo},{hi}] is empty"
                    )))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Exact membership test.
    pub fn contains(&self, x: u64) -> bool {
        if x == 0 {
            return false;
        }
        match self {
            SetSpec::Finite { elements } => elements.binary_search(&x).is_ok(),
            SetSpec::Cofinite { excluded } => excluded.binary_search(&x).is_err(),
            SetSpec::Primes { include_one } => (x == 1 && *include_one) || is_prime(x),
            SetSpec::Interval { lo, hi } => (*lo..=*hi).contains(&x),
        }
    }

    /// Whether the described set is infinite (as a subset of the naturals).
    pub fn is_infinite(&self) -> bool {
        matches!(self, SetSpec::Cofinite { .. } | SetSpec::Primes { .. })
    }

    /// Smallest element of the set.
    pub fn min_element(&self) -> u64 {
        self.nth_element(0)
    }

    /// Second-smallest element, if the set has one.
    pub fn second_min_element(&self) -> Option<u64> {
        match self {
            SetSpec::Finite { elements } => elements.get(1).copied(),
            SetSpec::Interval { lo, hi } => (hi > lo).then(|| lo + 1),
            _ => Some(self.nth_element(1)),
        }
    }

    fn nth_element(&self, n: usize) -> u64 {
        match self {
            SetSpec::Finite { elements } => elements[n],
            SetSpec::Interval { lo, .. } => lo + n as u64,
            _ => {
                let mut seen = 0usize;
                let mut x = 1u64;
                loop {
                    if self.contains(x) {
                        seen += 1;
                        if seen > n {
                            return x;
                        }
                    }
                    x += 1;
                }
            }
        }
    }

    /// Exactly `{ x in [1, cap] : x in self }`; an empty result is an error
    /// because it signals an unusable base at this cap.
    pub fn materialize(&self, cap: u64) -> Result<BTreeSet<u64>> {
        assert!(cap >= 1, "cap must be >= 1");
        let set: BTreeSet<u64> = (1..=cap).filter(|&x| self.contains(x)).collect();
        if set.is_empty() {
            return Err(Error::EmptyBase { cap });
        }
        Ok(set)
    }
}

impl fmt::Display for SetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetSpec::Finite { elements } => {
                let parts: Vec<String> = elements.iter().map(u64::to_string).collect();
                write!(f, "{{{}}}", parts.join(","))
            }
            SetSpec::Cofinite { excluded } => {
                let parts: Vec<String> = excluded.iter().map(u64::to_string).collect();
                write!(f, "N\\{{{}}}", parts.join(","))
            }
            SetSpec::Primes { include_one: true } => write!(f, "P+{{1}}"),
            SetSpec::Primes { include_one: false } => write!(f, "P"),
            SetSpec::Interval { lo, hi } => write!(f, "[{lo},{hi}]"),
        }
    }
}

mod wire {
    use super::*;

    // Mirror of SetSpec used only to run validation on deserialize.
    #[derive(Deserialize)]
    #[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
    pub enum SetSpecWire {
        Finite { elements: Vec<u64> },
        Cofinite { excluded: Vec<u64> },
        Primes { include_one: bool },
        Interval { lo: u64, hi: u64 },
    }

    impl TryFrom<SetSpecWire> for SetSpec {
        type Error = Error;
        fn try_from(w: SetSpecWire) -> Result<SetSpec> {
            let spec = match w {
                SetSpecWire::Finite { elements } => SetSpec::Finite { elements },
                SetSpecWire::Cofinite { excluded } => SetSpec::Cofinite { excluded },
                SetSpecWire::Primes { include_one } => SetSpec::Primes { include_one },
                SetSpecWire::Interval { lo, hi } => SetSpec::Interval { lo, hi },
            };
            spec.validate()?;
            Ok(spec)
        }
    }
}
