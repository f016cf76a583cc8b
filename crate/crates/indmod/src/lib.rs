//! Analysis toolkit for induction models over the naturals.
//!
//! An induction model pairs a base set `B` with a k-ary generating function
//! `S`. This crate computes bounded closures, step counts and coverage
//! verdicts for such models; classifies generating functions and produces
//! non-self-loop witnesses; constructs generating functions for given bases
//! (and bases for given functions); and decides, builds and verifies
//! reductions between models, emitting proof-conversion plans.
//!
//! All set computations run under bounded semantics: values are clipped to a
//! cap `M`, verdicts are stated for a universe prefix `[1, N]`, and fixpoint
//! iteration stops at a cutoff. Every verdict records that caveat; a step
//! count that hits the cutoff is reported as `at_least(cutoff)` rather than
//! silently treated as infinite.

pub mod construct;
pub mod engine;
pub mod error;
pub mod genfn;
pub mod model;
pub mod num;
pub mod plan;
pub mod reduction;
pub mod render;
pub mod sets;
pub mod structure;

pub use error::{Error, Result};
pub use genfn::{GenFn, Multilinear, PieceCase, Piecewise};
pub use model::{parse_model, serialize_model, Bound, ExtNat, InductionModel, StepOrder};
pub use sets::SetSpec;


#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// The running piecewise example: 10 when x is 1 or 5, otherwise x - 1.
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
                Multilinear::affine(1, 1, 1, -1).expect("valid"),
            )
            .expect("valid"),
        )
    }
}
