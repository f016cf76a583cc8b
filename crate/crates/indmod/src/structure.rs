//! Classification of generating functions (additive / multiplicative
//! structure) and non-self-loop witnesses, both by bounded search and by the
//! analytic constructions.
//!
//! A self-loop function maps every tuple into its own coordinates, so it can
//! never generate anything new. The property quantifies over all tuples:
//! search can refute it but never confirm it, which is why the search result
//! is "witness" or "none up to cap", never "is a self-loop".

use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::genfn::{GenFn, Multilinear};
use crate::num::smallest_prime_not_dividing;

/// A tuple together with its value, exhibiting `value` outside the tuple's
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub tuple: Vec<u64>,
    pub value: i64,
}

impl Witness {
    /// True when the value genuinely lies outside the coordinates.
    pub fn escapes(&self) -> bool {
        self.value < 1 || !self.tuple.contains(&(self.value as u64))
    }
}

/// Structural classification plus the outcome of a bounded self-loop search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub additive: bool,
    pub multiplicative: bool,
    pub self_loop_witness: Option<Witness>,
    pub search_exhausted_to: u64,
}

/// Structural flags only (no search performed).
pub fn classify(f: &GenFn) -> StructureReport {
    let (additive, multiplicative) = match f.as_multilinear() {
        Some(m) => (is_additive(m), is_multiplicative(m)),
        None => (false, false),
    };
    StructureReport {
        additive,
        multiplicative,
        self_loop_witness: None,
        search_exhausted_to: 0,
    }
}

/// Classification together with a self-loop search up to `search_cap`.
pub fn structure_report(f: &GenFn, search_cap: u64) -> Result<StructureReport> {
    let mut report = classify(f);
    report.self_loop_witness = self_loop_search(f, search_cap)?;
    report.search_exhausted_to = search_cap;
    Ok(report)
}

fn is_additive(m: &Multilinear) -> bool {
    let k = m.arity();
    for (vars, c) in m.coeffs() {
        if vars.len() >= 2 && c != 0 {
            return false;
        }
    }
    (1..=k as u8).all(|i| m.coeff(&[i]) != 0)
}

fn is_multiplicative(m: &Multilinear) -> bool {
    let full: Vec<u8> = (1..=m.arity() as u8).collect();
    m.coeff(&full) != 0
}

/// Is `f` literally the identity `x -> x`? The identity is the only unary
/// self-loop, and the one function both structural witness constructions
/// must refuse.
pub fn is_identity(f: &GenFn) -> bool {
    match f.as_multilinear() {
        Some(m) => {
            m.arity() == 1 && m.coeff(&[1]) == 1 && m.coeffs().all(|(v, _)| v.as_slice() == [1u8])
        }
        None => false,
    }
}

/// Lexicographically smallest tuple in `[1, cap]^k` whose value escapes its
/// coordinates, or `None` if the search range is exhausted.
pub fn self_loop_search(f: &GenFn, cap: u64) -> Result<Option<Witness>> {
    assert!(cap >= 1, "search cap must be >= 1");
    let k = f.arity();
    let carrier: Vec<u64> = (1..=cap).collect();
    let mut found: Option<Witness> = None;
    crate::engine::for_each_tuple(&carrier, k, &mut |args| {
        let v = f.eval(args)?;
        if v < 1 || !args.contains(&(v as u64)) {
            found = Some(Witness {
                tuple: args.to_vec(),
                value: v,
            });
            return Ok(ControlFlow::Break(()));
        }
        Ok(ControlFlow::Continue(()))
    })?;
    Ok(found)
}

/// Analytic witness for an additive function.
///
/// Case analysis on the coefficient sum: if it differs from 1, the all-ones
/// tuple already escapes; otherwise some coefficient lies outside {0, 1} and
/// placing a 2 at its position gives value `1 + a_l`, outside {1, 2}. When
/// the only such coefficient is the constant term (every variable
/// coefficient equals 1), there is no position to bump; the all-twos tuple
/// evaluates to `2 - a_0 != 2` and completes the case split.
pub fn additive_witness(f: &GenFn) -> Result<Witness> {
    let m = f
        .as_multilinear()
        .filter(|m| is_additive(m))
        .ok_or(Error::StructurePrecondition { needed: "additive" })?;
    if is_identity(f) {
        return Err(Error::IdentityFunction);
    }
    let k = m.arity();
    let sum = m.coeff_sum().ok_or_else(|| Error::Overflow {
        context: format!("{f}"),
    })?;

    let tuple: Vec<u64>;
    if sum != 1 {
        tuple = vec![1; k];
    } else if let Some(l) = (1..=k as u8).find(|&i| {
        let c = m.coeff(&[i]);
        c != 0 && c != 1
    }) {
        let mut t = vec![1u64; k];
        t[l as usize - 1] = 2;
        tuple = t;
    } else {
        // All variable coefficients are 1, so a_0 = 1 - k is the lone
        // coefficient outside {0, 1} (k >= 2 here; k = 1 is the identity).
        tuple = vec![2; k];
    }
    let value = f.eval(&tuple)?;
    let w = Witness { tuple, value };
    debug_assert!(w.escapes());
    Ok(w)
}

/// Analytic witness for a multiplicative function: a diagonal tuple
/// `(m, ..., m)` chosen by cases on the constant term.
///
/// Writing `g(x)` for the sum of `a_I x^(|I|-1)` over non-empty `I`, the
/// diagonal value is `a_0 + m * g(m)`. For `a_0` outside {0, 1} pick a prime
/// not dividing `a_0`; for `a_0 = 1` take `m = 2`; for `a_0 = 0` search the
/// smallest `m` with `g(m) != 1`, which exists because `g - 1` is a nonzero
/// polynomial of degree below the arity (the unary identity is the single
/// exception and is refused).
pub fn multiplicative_witness(f: &GenFn) -> Result<Witness> {
    const M_SEARCH_CAP: u64 = 10_000;
    let ml = f.as_multilinear().filter(|m| is_multiplicative(m)).ok_or(
        Error::StructurePrecondition {
            needed: "multiplicative",
        },
    )?;
    if is_identity(f) {
        return Err(Error::IdentityFunction);
    }
    let k = ml.arity();
    let a0 = ml.coeff(&[]);

    let m: u64 = if a0 != 0 && a0 != 1 {
        smallest_prime_not_dividing(a0)
    } else if a0 == 1 {
        2
    } else {
        (1..=M_SEARCH_CAP)
            .find(|&m| diagonal_g(ml, m) != Some(1))
            .ok_or(Error::StructurePrecondition {
                needed: "multiplicative with g != 1 somewhere",
            })?
    };
    let tuple = vec![m; k];
    let value = f.eval(&tuple)?;
    let w = Witness { tuple, value };
    debug_assert!(w.escapes());
    Ok(w)
}

/// `g(m)` for the diagonal decomposition `f(m,...,m) = a_0 + m * g(m)`;
/// `None` on overflow.
fn diagonal_g(ml: &Multilinear, m: u64) -> Option<i64> {
    let m = i64::try_from(m).ok()?;
    let mut acc: i64 = 0;
    for (vars, c) in ml.coeffs() {
        if vars.is_empty() {
            continue;
        }
        let mut term = c;
        for _ in 1..vars.len() {
            term = term.checked_mul(m)?;
        }
        acc = acc.checked_add(term)?;
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfn::{Multilinear, PieceCase, Piecewise};

    fn multilinear(arity: usize, entries: &[(&[u8], i64)]) -> GenFn {
        GenFn::multilinear(arity, entries.iter().map(|(v, c)| (v.to_vec(), *c))).unwrap()
    }

    /// Coordinate projection S(x, y) = y: a non-unary self-loop. Equality
    /// guards cannot express max, so this is the polynomial self-loop fixture.
    fn projection() -> GenFn {
        multilinear(2, &[(&[2], 1)])
    }

    #[test]
    fn classify_additive_example() {
        let f = multilinear(2, &[(&[1], 1), (&[2], -1), (&[], 4)]);
        let r = classify(&f);
        assert!(r.additive && !r.multiplicative);
    }

    #[test]
    fn classify_multiplicative_example() {
        let f = multilinear(2, &[(&[1, 2], 1), (&[1], -1), (&[2], -1), (&[], 3)]);
        let r = classify(&f);
        assert!(!r.additive && r.multiplicative);
    }

    #[test]
    fn unary_affine_is_both() {
        let f = multilinear(1, &[(&[1], 2), (&[], 5)]);
        let r = classify(&f);
        assert!(r.additive && r.multiplicative);
    }

    #[test]
    fn piecewise_is_neither() {
        let pw = GenFn::Piecewise(
            Piecewise::new(
                1,
                vec![PieceCase {
                    coord: 1,
                    equals: 1,
                    body: Multilinear::constant(1, 10),
                }],
                Multilinear::affine(1, 1, 1, 1).unwrap(),
            )
            .unwrap(),
        );
        let r = classify(&pw);
        assert!(!r.additive && !r.multiplicative);
    }

    #[test]
    fn identity_search_finds_nothing() {
        let f = multilinear(1, &[(&[1], 1)]);
        assert!(is_identity(&f));
        assert!(self_loop_search(&f, 30).unwrap().is_none());
        assert!(matches!(additive_witness(&f), Err(Error::IdentityFunction)));
        assert!(matches!(
            multiplicative_witness(&f),
            Err(Error::IdentityFunction)
        ));
    }

    #[test]
    fn projection_search_finds_nothing() {
        let f = projection();
        assert!(self_loop_search(&f, 12).unwrap().is_none());
    }

    #[test]
    fn successor_witness() {
        let f = GenFn::successor();
        let w = self_loop_search(&f, 20).unwrap().unwrap();
        assert_eq!((w.tuple.as_slice(), w.value), (&[1u64][..], 2));
    }

    #[test]
    fn additive_witness_cases() {
        // Sum != 1: all-ones.
        let f = GenFn::successor();
        let w = additive_witness(&f).unwrap();
        assert_eq!((w.tuple.as_slice(), w.value), (&[1u64][..], 2));

        // Sum = 1, a0 != 0, bump the coefficient outside {0,1}.
        let f = multilinear(2, &[(&[1], 1), (&[2], -1), (&[], 1)]);
        let w = additive_witness(&f).unwrap();
        assert_eq!((w.tuple.as_slice(), w.value), (&[1u64, 2][..], 0));

        // Sum = 1, a0 = 0.
        let f = multilinear(2, &[(&[1], 2), (&[2], -1)]);
        let w = additive_witness(&f).unwrap();
        assert_eq!((w.tuple.as_slice(), w.value), (&[2u64, 1][..], 3));

        // Sum = 1 with every variable coefficient 1: all-twos fallback.
        let f = multilinear(2, &[(&[1], 1), (&[2], 1), (&[], -1)]);
        let w = additive_witness(&f).unwrap();
        assert_eq!((w.tuple.as_slice(), w.value), (&[2u64, 2][..], 3));
        assert!(w.escapes());
    }

    #[test]
    fn multiplicative_witness_cases() {
        // a0 = 0: search m with g(m) != 1.
        let f = multilinear(2, &[(&[1, 2], 1)]);
        let w = multiplicative_witness(&f).unwrap();
        assert_eq!((w.tuple.as_slice(), w.value), (&[2u64, 2][..], 4));

        // a0 = 1: all-twos.
        let f = multilinear(2, &[(&[1, 2], 1), (&[], 1)]);
        let w = multiplicative_witness(&f).unwrap();
        assert_eq!((w.tuple.as_slice(), w.value), (&[2u64, 2][..], 5));

        // a0 outside {0,1}: smallest prime not dividing it.
        let f = multilinear(2, &[(&[1, 2], 1), (&[], 3)]);
        let w = multiplicative_witness(&f).unwrap();
        assert_eq!((w.tuple.as_slice(), w.value), (&[2u64, 2][..], 7));
    }

    #[test]
    fn classify_ignores_entry_order() {
        let a = multilinear(2, &[(&[1], 1), (&[2], -1), (&[], 4)]);
        let b = multilinear(2, &[(&[], 4), (&[2], -1), (&[1], 1)]);
        assert_eq!(classify(&a), classify(&b));
    }

    #[test]
    fn witness_preconditions() {
        let pw = GenFn::min_compose(2, GenFn::successor()).unwrap();
        assert!(matches!(
            additive_witness(&pw),
            Err(Error::StructurePrecondition { .. })
        ));
        assert!(matches!(
            multiplicative_witness(&pw),
            Err(Error::StructurePrecondition { .. })
        ));
    }
}
