//! Symbolic k-ary generating functions over the naturals with exact integer
//! evaluation.
//!
//! Three shapes are supported: multilinear integer polynomials (at most one
//! occurrence of each variable per monomial), piecewise functions whose guards
//! pin one coordinate to a constant, and the composition of a unary function
//! with the minimum coordinate.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monomial is identified by the strictly increasing list of 1-based
/// variable indices it multiplies; the empty list is the constant term.
pub type VarSet = Vec<u8>;

/// Multilinear integer polynomial in `arity` variables.
///
/// Coefficients are kept in a canonical sparse table: zero coefficients are
/// absent and variable lists are strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multilinear {
    arity: usize,
    coeffs: BTreeMap<VarSet, i64>,
}

impl Multilinear {
    pub fn new(arity: usize, entries: impl IntoIterator<Item = (VarSet, i64)>) -> Result<Self> {
        if arity == 0 {
            return Err(Error::InvalidGenFn("arity must be at least 1".into()));
        }
        if arity > u8::MAX as usize {
            return Err(Error::InvalidGenFn(format!(
                "arity {arity} exceeds the supported maximum of {}",
                u8::MAX
            )));
        }
        let mut coeffs = BTreeMap::new();
        for (vars, c) in entries {
            let mut prev = 0u8;
            for &v in &vars {
                if v == 0 || v as usize > arity {
                    return Err(Error::InvalidGenFn(format!(
                        "variable index {v} out of range for arity {arity}"
                    )));
                }
                if v <= prev {
                    return Err(Error::InvalidGenFn(format!(
                        "variable list {vars:?} is not strictly increasing"
                    )));
                }
                prev = v;
            }
            if coeffs.insert(vars.clone(), c).is_some() {
                return Err(Error::InvalidGenFn(format!(
                    "duplicate coefficient entry for variables {vars:?}"
                )));
            }
        }
        coeffs.retain(|_, c| *c != 0);
        Ok(Self { arity, coeffs })
    }

    /// Constant polynomial `c` in `arity` variables.
    pub fn constant(arity: usize, c: i64) -> Self {
        Self::new(arity, [(vec![], c)]).expect("constant is always valid")
    }

    /// The affine polynomial `a1*x_i + a0`.
    pub fn affine(arity: usize, var: u8, a1: i64, a0: i64) -> Result<Self> {
        Self::new(arity, [(vec![var], a1), (vec![], a0)])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn coeff(&self, vars: &[u8]) -> i64 {
        self.coeffs.get(vars).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&VarSet, i64)> {
        self.coeffs.iter().map(|(k, v)| (k, *v))
    }

    pub fn eval(&self, args: &[u64]) -> Result<i64> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: args.len(),
            });
        }
        let overflow = || Error::Overflow {
            context: format!("{self}"),
        };
        let mut acc: i64 = 0;
        for (vars, &c) in &self.coeffs {
            let mut term: i64 = c;
            for &v in vars {
                let x = i64::try_from(args[v as usize - 1]).map_err(|_| overflow())?;
                term = term.checked_mul(x).ok_or_else(overflow)?;
            }
            acc = acc.checked_add(term).ok_or_else(overflow)?;
        }
        Ok(acc)
    }

    /// Sum of all coefficients, i.e. the value at the all-ones tuple.
    pub fn coeff_sum(&self) -> Option<i64> {
        self.coeffs
            .values()
            .try_fold(0i64, |a, &c| a.checked_add(c))
    }
}

impl fmt::Display for Multilinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        // Degree-descending, then lexicographic by variable list.
        let mut terms: Vec<(&VarSet, i64)> = self.coeffs.iter().map(|(k, v)| (k, *v)).collect();
        terms.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(b.0)));
        for (i, (vars, c)) in terms.iter().enumerate() {
            let (sign, mag) = if *c < 0 { ("-", -*c) } else { ("+", *c) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if mag != 1 {
                    write!(f, "{mag}*")?;
                }
                let names: Vec<String> = vars.iter().map(|v| format!("x{v}")).collect();
                write!(f, "{}", names.join("*"))?;
            }
        }
        Ok(())
    }
}

/// One guarded case of a piecewise function: applies when the designated
/// coordinate equals the constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceCase {
    pub coord: u8,
    pub equals: u64,
    pub body: Multilinear,
}

/// Piecewise function: the first matching case wins, otherwise the default.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piecewise {
    arity: usize,
    cases: Vec<PieceCase>,
    default: Multilinear,
}

impl Piecewise {
    pub fn new(arity: usize, cases: Vec<PieceCase>, default: Multilinear) -> Result<Self> {
        if default.arity() != arity {
            return Err(Error::InvalidGenFn(format!(
                "default body has arity {}, expected {arity}",
                default.arity()
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for case in &cases {
            if case.coord == 0 || case.coord as usize > arity {
                return Err(Error::InvalidGenFn(format!(
                    "guard coordinate {} out of range for arity {arity}",
                    case.coord
                )));
            }
            if case.body.arity() != arity {
                return Err(Error::InvalidGenFn(format!(
                    "case body has arity {}, expected {arity}",
                    case.body.arity()
                )));
            }
            if !seen.insert((case.coord, case.equals)) {
                return Err(Error::InvalidGenFn(format!(
                    "duplicate guard (x{} = {})",
                    case.coord, case.equals
                )));
            }
        }
        Ok(Self {
            arity,
            cases,
            default,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn cases(&self) -> &[PieceCase] {
        &self.cases
    }

    pub fn default_body(&self) -> &Multilinear {
        &self.default
    }

    pub fn eval(&self, args: &[u64]) -> Result<i64> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: args.len(),
            });
        }
        for case in &self.cases {
            if args[case.coord as usize - 1] == case.equals {
                return case.body.eval(args);
            }
        }
        self.default.eval(args)
    }
}

impl fmt::Display for Piecewise {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for case in &self.cases {
            write!(f, "x{}={} -> {}; ", case.coord, case.equals, case.body)?;
        }
        write!(f, "else -> {}}}", self.default)
    }
}

/// Symbolic generating function `S: N^k -> Z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "wire::GenFnWire", into = "wire::GenFnWire")]
pub enum GenFn {
    Multilinear(Multilinear),
    Piecewise(Piecewise),
    /// A unary function applied to the minimum coordinate of a k-tuple.
    MinCompose {
        arity: usize,
        inner: Box<GenFn>,
    },
}

impl GenFn {
    pub fn multilinear(
        arity: usize,
        entries: impl IntoIterator<Item = (VarSet, i64)>,
    ) -> Result<Self> {
        Ok(GenFn::Multilinear(Multilinear::new(arity, entries)?))
    }

    /// Unary `x + 1`.
    pub fn successor() -> Self {
        GenFn::Multilinear(Multilinear::affine(1, 1, 1, 1).expect("valid"))
    }

    /// Unary `x - 1`.
    pub fn predecessor() -> Self {
        GenFn::Multilinear(Multilinear::affine(1, 1, 1, -1).expect("valid"))
    }

    pub fn min_compose(arity: usize, inner: GenFn) -> Result<Self> {
        if arity == 0 {
            return Err(Error::InvalidGenFn("arity must be at least 1".into()));
        }
        if inner.arity() != 1 {
            return Err(Error::InvalidGenFn(format!(
                "min-composed inner function must be unary, got arity {}",
                inner.arity()
            )));
        }
        Ok(GenFn::MinCompose {
            arity,
            inner: Box::new(inner),
        })
    }

    pub fn arity(&self) -> usize {
        match self {
            GenFn::Multilinear(m) => m.arity(),
            GenFn::Piecewise(p) => p.arity(),
            GenFn::MinCompose { arity, .. } => *arity,
        }
    }

    pub fn as_multilinear(&self) -> Option<&Multilinear> {
        match self {
            GenFn::Multilinear(m) => Some(m),
            _ => None,
        }
    }

    /// Exact value of the function at a tuple of naturals.
    pub fn eval(&self, args: &[u64]) -> Result<i64> {
        debug_assert!(args.iter().all(|&a| a >= 1), "coordinates must be naturals");
        match self {
            GenFn::Multilinear(m) => m.eval(args),
            GenFn::Piecewise(p) => p.eval(args),
            GenFn::MinCompose { arity, inner } => {
                if args.len() != *arity {
                    return Err(Error::ArityMismatch {
                        expected: *arity,
                        got: args.len(),
                    });
                }
                let m = *args.iter().min().expect("arity >= 1");
                inner.eval(&[m])
            }
        }
    }
}

impl fmt::Display for GenFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenFn::Multilinear(m) => write!(f, "{m}"),
            GenFn::Piecewise(p) => write!(f, "{p}"),
            GenFn::MinCompose { arity, inner } => {
                write!(f, "min_compose(arity={arity}, inner={inner})")
            }
        }
    }
}

/// Wire representation of [`GenFn`] matching the documented model-file schema.
mod wire {
    use super::*;

    #[derive(Serialize, Deserialize)]
    pub struct CoeffEntry {
        pub vars: Vec<u8>,
        pub c: i64,
    }

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct CaseWire {
        pub coord: u8,
        pub equals: u64,
        pub body: MultilinearWire,
    }

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct MultilinearWire {
        pub arity: usize,
        pub coeffs: Vec<CoeffEntry>,
    }

    #[derive(Serialize, Deserialize)]
    #[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
    pub enum GenFnWire {
        Multilinear(MultilinearWire),
        Piecewise {
            arity: usize,
            cases: Vec<CaseWire>,
            default: MultilinearWire,
        },
        MinCompose {
            arity: usize,
            inner: Box<GenFnWire>,
        },
    }

    impl TryFrom<MultilinearWire> for Multilinear {
        type Error = Error;
        fn try_from(w: MultilinearWire) -> Result<Self> {
            Multilinear::new(w.arity, w.coeffs.into_iter().map(|e| (e.vars, e.c)))
        }
    }

    impl From<&Multilinear> for MultilinearWire {
        fn from(m: &Multilinear) -> Self {
            MultilinearWire {
                arity: m.arity(),
                coeffs: m
                    .coeffs()
                    .map(|(vars, c)| CoeffEntry {
                        vars: vars.clone(),
                        c,
                    })
                    .collect(),
            }
        }
    }

    impl TryFrom<GenFnWire> for GenFn {
        type Error = Error;
        fn try_from(w: GenFnWire) -> Result<Self> {
            match w {
                GenFnWire::Multilinear(m) => Ok(GenFn::Multilinear(m.try_into()?)),
                GenFnWire::Piecewise {
                    arity,
                    cases,
                    default,
                } => {
                    let cases = cases
                        .into_iter()
                        .map(|c| {
                            Ok(PieceCase {
                                coord: c.coord,
                                equals: c.equals,
                                body: c.body.try_into()?,
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Ok(GenFn::Piecewise(Piecewise::new(
                        arity,
                        cases,
                        default.try_into()?,
                    )?))
                }
                GenFnWire::MinCompose { arity, inner } => {
                    GenFn::min_compose(arity, (*inner).try_into()?)
                }
            }
        }
    }

    impl From<GenFn> for GenFnWire {
        fn from(g: GenFn) -> Self {
            match g {
                GenFn::Multilinear(m) => GenFnWire::Multilinear((&m).into()),
                GenFn::Piecewise(p) => GenFnWire::Piecewise {
                    arity: p.arity(),
                    cases: p
                        .cases()
                        .iter()
                        .map(|c| CaseWire {
                            coord: c.coord,
                            equals: c.equals,
                            body: (&c.body).into(),
                        })
                        .collect(),
                    default: p.default_body().into(),
                },
                GenFn::MinCompose { arity, inner } => GenFnWire::MinCompose {
                    arity,
                    inner: Box::new((*inner).into()),
                },
            }
        }
    }
}
