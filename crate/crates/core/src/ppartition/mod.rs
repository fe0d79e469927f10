//! Barred integers, posets, P-partitions and their correspondence with
//! shelf and riffle shuffle outcomes.

mod barred;
mod outcome;
mod partition;
mod poset;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use barred::{rel_len, rel_lp, BarredInt};
pub use outcome::{
    enumerate_riffle_outcomes, ppartition_from_shelf_outcome, riffle_outcome_to_ppartition,
    riffle_ppartition_to_outcome, shelf_outcome_from_ppartition, RiffleVariant, ShuffleOutcome,
    WeakComposition,
};
pub use partition::{
    bottom_deal_permutation, enumerate_bounded, is_p_partition, sorting_permutation,
    verify_fundamental_theorem, PPartition, ENUMERATION_CAP,
};
pub use poset::{all_posets, Poset};

use crate::perm::Statistic;

/// Image restriction on P-partitions.
///
/// `All` is the unrestricted (left enriched) family, `Nonzero` excludes `0`
/// (enriched), `Positive` allows only nonbarred values `>= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    All,
    Nonzero,
    Positive,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::All, Mode::Nonzero, Mode::Positive];

    /// The statistic chain order polynomials depend on in this mode.
    pub fn statistic(self) -> Statistic {
        match self {
            Mode::All => Statistic::Lpk,
            Mode::Nonzero => Statistic::Pk,
            Mode::Positive => Statistic::Des,
        }
    }

    /// Alphabet size with `|v| <= m`: `2m+1`, `2m`, `m`.
    pub fn base(self, m: u64) -> u64 {
        match self {
            Mode::All => 2 * m + 1,
            Mode::Nonzero => 2 * m,
            Mode::Positive => m,
        }
    }

    /// The admissible values with `|v| <= m`, in increasing order.
    pub fn alphabet(self, m: u64) -> Vec<BarredInt> {
        let ranks: Vec<u64> = match self {
            Mode::All => (0..=2 * m).collect(),
            Mode::Nonzero => (1..=2 * m).collect(),
            Mode::Positive => (1..=m).map(|k| 2 * k).collect(),
        };
        ranks.into_iter().map(BarredInt::from_rank).collect()
    }

    pub fn admits(self, v: BarredInt) -> bool {
        match self {
            Mode::All => true,
            Mode::Nonzero => v.rank() != 0,
            Mode::Positive => !v.is_barred() && v.magnitude() >= 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::All => "all",
            Mode::Nonzero => "nonzero",
            Mode::Positive => "positive",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
