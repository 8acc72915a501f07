//! Exact computations with finite group actions: permutation groups and their
//! subgroup lattices, skeletal G-sets, a strictly associative span calculus,
//! Burnside rings and hom groups, finite permutative categories with exhaustive
//! coherence validation, and Mackey functors assembled from all of the above.
//!
//! Everything is integer-exact and deterministic: canonical orderings are fixed
//! once (elements lexicographically by image list, subgroups by order then
//! element list, span classes by stabilizer class then leg images) so that equal
//! inputs always produce byte-identical outputs.

pub mod abelian;
pub mod burnside;
pub mod functor;
pub mod group;
pub mod gset;
pub mod io;
pub mod perm;
pub mod permcat;
pub mod span;

use thiserror::Error;

/// Resource limits shared by the expensive enumerations.
///
/// `group_order` bounds element closure; the `permcat_*` caps bound the inputs
/// and outputs of hom-category enumeration; `monoid_elements` bounds explicit
/// element tables built from abelian group presentations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    pub group_order: usize,
    pub permcat_objects: usize,
    pub permcat_morphisms: usize,
    pub monoid_elements: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            group_order: 10080,
            permcat_objects: 8,
            permcat_morphisms: 64,
            monoid_elements: 64,
        }
    }
}

impl Caps {
    /// Override every numeric limit with `n`.
    pub fn uniform(n: usize) -> Self {
        Caps {
            group_order: n,
            permcat_objects: n,
            permcat_morphisms: n,
            monoid_elements: n,
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a permutation of 1..{degree}: {reason}")]
    InvalidPermutation { degree: usize, reason: String },
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("resource cap `{cap}` exceeded: limit {limit}, needed at least {needed}")]
    CapExceeded {
        cap: &'static str,
        limit: usize,
        needed: usize,
    },
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("map is not equivariant: generator {generator} moves {point} to incompatible images")]
    NotEquivariant { generator: usize, point: usize },
    #[error("action is not a homomorphism: fails at generator {generator}, element {element}")]
    NotAction { generator: usize, element: usize },
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("validation failed:\n{0}")]
    ValidationFailed(String),
    #[error("Mackey axioms violated:\n{}", .0.join("\n"))]
    MackeyInvalid(Vec<String>),
}

pub type Result<T> = std::result::Result<T, Error>;
