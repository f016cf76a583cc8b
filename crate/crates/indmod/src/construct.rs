//! Constructive recipes: a generating function for a given base set (general,
//! additive, multiplicative, each with k-ary lifts) and a base set for a
//! given generating function.
//!
//! Constant choices follow fixed tie-breaks so that repeated runs construct
//! identical models: the additive recipes use the smallest base element, the
//! multiplicative ones the second-smallest, and the base-for-function recipe
//! scans tuples lexicographically.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::genfn::{GenFn, Multilinear, PieceCase, Piecewise};
use crate::model::InductionModel;
use crate::sets::SetSpec;

/// Which recipe produced a construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "recipe", rename_all = "kebab-case")]
pub enum Recipe {
    /// `x + 1`, available whenever the base contains 1.
    Successor,
    /// Piecewise wrap: the minimum `b` maps to 1, `b - 1` jumps to `b + 1`,
    /// everything else steps up.
    FiniteWraparound,
    /// `x - 1` from an infinite base.
    Backward,
    /// A unary recipe applied to the minimum coordinate of a k-tuple.
    MinLift { inner: Box<Recipe> },
    /// Unary affine recipe under the containment/infinitude condition.
    AdditiveUnary,
    /// `(x, y) -> x - y + (q + 1)`.
    AdditiveBinary,
    /// `x_1 + ... + x_{k-1} - (k-1) x_k + (q + 1)`.
    AdditiveKary,
    /// `(x, y) -> x y + y - q y + 1`.
    MultiplicativeBinary,
    /// `x_1...x_k + x_{k-1} x_k + x_k - q x_k + 1 - q x_2...x_k`.
    MultiplicativeKary,
    /// Base = naturals minus one witnessed value of the function.
    ComplementBase,
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Successor => write!(f, "successor"),
            Recipe::FiniteWraparound => write!(f, "finite-wraparound"),
            Recipe::Backward => write!(f, "backward"),
            Recipe::MinLift { inner } => write!(f, "min-lift({inner})"),
            Recipe::AdditiveUnary => write!(f, "additive-unary"),
            Recipe::AdditiveBinary => write!(f, "additive-binary"),
            Recipe::AdditiveKary => write!(f, "additive-kary"),
            Recipe::MultiplicativeBinary => write!(f, "multiplicative-binary"),
            Recipe::MultiplicativeKary => write!(f, "multiplicative-kary"),
            Recipe::ComplementBase => write!(f, "complement-base"),
        }
    }
}

/// A constructed model together with the recipe and the constants it chose.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionResult {
    pub model: InductionModel,
    #[serde(flatten)]
    pub recipe: Recipe,
    pub params: BTreeMap<String, i64>,
}

fn params(entries: &[(&str, i64)]) -> BTreeMap<String, i64> {
    entries.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn wraparound(b: u64) -> Result<GenFn> {
    debug_assert!(b >= 2);
    let cases = vec![
        PieceCase {
            coord: 1,
            equals: b,
            body: Multilinear::constant(1, 1),
        },
        PieceCase {
            coord: 1,
            equals: b - 1,
            body: Multilinear::constant(1, b as i64 + 1),
        },
    ];
    Ok(GenFn::Piecewise(Piecewise::new(
        1,
        cases,
        Multilinear::affine(1, 1, 1, 1)?,
    )?))
}

/// General (structure-free) generating function for a base set.
///
/// Unary recipe: successor when 1 is in the base, the wraparound for other
/// finite bases, stepping down for infinite ones. For `k > 1` the unary
/// recipe is applied to the minimum coordinate.
pub fn construct_s_general(base: &SetSpec, k: usize) -> Result<ConstructionResult> {
    if k == 0 {
        return Err(Error::InvalidGenFn("arity must be at least 1".into()));
    }
    let (gen, recipe, mut p) = if base.contains(1) {
        (GenFn::successor(), Recipe::Successor, params(&[]))
    } else if !base.is_infinite() {
        let b = base.min_element();
        (
            wraparound(b)?,
            Recipe::FiniteWraparound,
            params(&[("b", b as i64)]),
        )
    } else {
        (GenFn::predecessor(), Recipe::Backward, params(&[]))
    };
    p.insert("k".to_string(), k as i64);
    let (gen, recipe) = if k == 1 {
        (gen, recipe)
    } else {
        (
            GenFn::min_compose(k, gen)?,
            Recipe::MinLift {
                inner: Box::new(recipe),
            },
        )
    };
    Ok(ConstructionResult {
        model: InductionModel::new(base.clone(), gen),
        recipe,
        params: p,
    })
}

/// Generating function with additive structure for a base set.
///
/// Unary case requires the base to contain 1 or be infinite (a monotone
/// affine map cannot cover the naturals otherwise). Binary and higher-arity
/// cases work for every non-empty base, with `q` the smallest base element.
pub fn construct_s_additive(base: &SetSpec, k: usize) -> Result<ConstructionResult> {
    match k {
        0 => Err(Error::InvalidGenFn("arity must be at least 1".into())),
        1 => {
            let gen = if base.contains(1) {
                GenFn::successor()
            } else if base.is_infinite() {
                GenFn::predecessor()
            } else {
                return Err(Error::UnaryAdditiveImpossible {
                    base: base.to_string(),
                });
            };
            Ok(ConstructionResult {
                model: InductionModel::new(base.clone(), gen),
                recipe: Recipe::AdditiveUnary,
                params: params(&[("k", 1)]),
            })
        }
        _ => {
            let q = base.min_element() as i64;
            let mut entries: Vec<(Vec<u8>, i64)> = vec![(vec![], q + 1)];
            for i in 1..k as u8 {
                entries.push((vec![i], 1));
            }
            entries.push((vec![k as u8], -((k as i64) - 1)));
            let gen = GenFn::multilinear(k, entries)?;
            Ok(ConstructionResult {
                model: InductionModel::new(base.clone(), gen),
                recipe: if k == 2 {
                    Recipe::AdditiveBinary
                } else {
                    Recipe::AdditiveKary
                },
                params: params(&[("k", k as i64), ("q", q)]),
            })
        }
    }
}

/// Generating function with multiplicative structure for a base set with at
/// least two elements; `q` is the second-smallest element so that stepping
/// `S(q, y) = y + 1` reaches `q - 1` from the smaller element.
pub fn construct_s_multiplicative(base: &SetSpec, k: usize) -> Result<ConstructionResult> {
    if k < 2 {
        return Err(Error::MultiplicativeArity { got: k });
    }
    let p = base.min_element();
    let q = base
        .second_min_element()
        .ok_or(Error::SingletonMultiplicative)? as i64;

    // Coefficients may collide (k = 3 puts the pair term and the -q tail on
    // the same monomial), so accumulate before building.
    let mut acc: BTreeMap<Vec<u8>, i64> = BTreeMap::new();
    let mut add = |vars: Vec<u8>, c: i64| {
        *acc.entry(vars).or_insert(0) += c;
    };
    if k == 2 {
        add(vec![1, 2], 1);
        add(vec![2], 1 - q);
        add(vec![], 1);
    } else {
        add((1..=k as u8).collect(), 1);
        add(vec![k as u8 - 1, k as u8], 1);
        add(vec![k as u8], 1 - q);
        add(vec![], 1);
        add((2..=k as u8).collect(), -q);
    }
    let gen = GenFn::multilinear(k, acc)?;
    Ok(ConstructionResult {
        model: InductionModel::new(base.clone(), gen),
        recipe: if k == 2 {
            Recipe::MultiplicativeBinary
        } else {
            Recipe::MultiplicativeKary
        },
        params: params(&[("k", k as i64), ("p", p as i64), ("q", q)]),
    })
}

/// Base set for a given generating function: scan tuples lexicographically
/// for a value `a` in the naturals outside the tuple's coordinates, then take
/// the complement of `{a}`. One application of the function restores `a`, so
/// the model saturates in two steps.
pub fn construct_b_for_s(gen: &GenFn, search_cap: u64) -> Result<ConstructionResult> {
    assert!(search_cap >= 1, "search cap must be >= 1");
    // Unlike the plain self-loop search, the witness value must itself be a
    // natural: a tuple escaping through a value below 1 (x - 1 at (1) gives
    // 0) cannot serve as the excluded element.
    let witness =
        first_natural_escape(gen, search_cap)?.ok_or(Error::NoBaseWitness { cap: search_cap })?;
    let a = witness.value as u64;
    let base = SetSpec::cofinite([a])?;
    let mut p = params(&[("a", witness.value)]);
    for (i, &x) in witness.tuple.iter().enumerate() {
        p.insert(format!("x{}", i + 1), x as i64);
    }
    Ok(ConstructionResult {
        model: InductionModel::new(base, gen.clone()),
        recipe: Recipe::ComplementBase,
        params: p,
    })
}

fn first_natural_escape(gen: &GenFn, cap: u64) -> Result<Option<crate::structure::Witness>> {
    let carrier: Vec<u64> = (1..=cap).collect();
    let mut found = None;
    crate::engine::for_each_tuple(&carrier, gen.arity(), &mut |args| {
        let v = gen.eval(args)?;
        if v >= 1 && !args.contains(&(v as u64)) {
            found = Some(crate::structure::Witness {
                tuple: args.to_vec(),
                value: v,
            });
            return Ok(ControlFlow::Break(()));
        }
        Ok(ControlFlow::Continue(()))
    })?;
    Ok(found)
}
