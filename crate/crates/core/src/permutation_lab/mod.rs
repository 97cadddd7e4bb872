//! Combinatorial ground truth: colored permutations, exhaustive and
//! constructive enumerators, weights, and the sign-reversing involutions and
//! insertion bijection as executable maps.

mod bijection;
mod colored;
mod cycles;
mod enumerate;
mod structured;
mod weights;

use thiserror::Error;

pub use bijection::{insert_bijection, remove_bijection};
pub use colored::{
    cycle_size_filter, is_callan, is_id_poly_cauchy, is_poly_cauchy, BoundMode, ColoredPermutation, Entry,
};
pub use cycles::{
    canonical_cycles, canonicalize, cycles_from_word, flatten_cycles, left_to_right_maxima, next_permutation,
    one_line_from_cycles, Cycles,
};
pub use enumerate::{
    arrangements, count_brute, enumerate_augmented, enumerate_augmented_with, enumerate_brute, enumerate_brute_with,
    enumerate_partial, enumerate_partial_with, generate_constructive, generate_constructive_with, partial_weight_sum,
    AugmentedPC, PartialPC,
};
pub use structured::{
    enumerate_configs, enumerate_configs_with, involution_phi, involution_phi_r, orbit_statistics, set_partitions,
    Involution, OrbitStatistics, StructuredConfig,
};
pub use weights::{weight_q, weight_rho_q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabError {
    #[error("size limit exceeded: {what} needs {size} but the limit is {limit}")]
    SizeLimit { what: &'static str, size: usize, limit: usize },
    #[error("malformed colored permutation: {0}")]
    Malformed(String),
    #[error("not a poly-Cauchy permutation: {0}")]
    NotPolyCauchy(String),
    #[error("insertion index {i} is outside 1..={max}")]
    InvalidIndex { i: usize, max: usize },
    #[error("{0} is not in the image of the insertion map")]
    NotInImage(String),
    #[error("{0}")]
    Invalid(String),
}

/// Default cap on `n + k` for exhaustive enumerations.
pub const BRUTE_LIMIT: usize = 9;
/// Cap on `n + k` for partial permutations.
pub const PARTIAL_LIMIT: usize = 7;

/// Refuses enumerations whose size exceeds a cap. `SizeGuard::unlimited()`
/// lifts the cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeGuard {
    limit: Option<usize>,
}

impl SizeGuard {
    pub fn new(limit: usize) -> Self {
        SizeGuard { limit: Some(limit) }
    }

    pub fn unlimited() -> Self {
        SizeGuard { limit: None }
    }

    pub fn check(&self, what: &'static str, size: usize) -> Result<(), LabError> {
        match self.limit {
            Some(limit) if size > limit => Err(LabError::SizeLimit { what, size, limit }),
            _ => Ok(()),
        }
    }
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard::new(BRUTE_LIMIT)
    }
}
