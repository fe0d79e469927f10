//! Shuffle outcomes as (weak composition, permutation) pairs and their
//! bijections with bounded P-partitions of the antichain.
//!
//! Composition parts are indexed by the value alphabet of the mode in
//! increasing order: `(0, 1-, 1, 2-, 2, ...)` for `All`, `(1-, 1, ...)` for
//! `Nonzero`, `(1, 2, ...)` for `Positive`. For shelf shuffles part `k`
//! counts placements of that kind (`1-` = top of shelf 1, `1` = bottom of
//! shelf 1, `0` = shelf 0). For riffle shuffles part `k` is the size of
//! pile `k`; piles carrying a barred value are reversed.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::barred::BarredInt;
use super::partition::{sorting_permutation, PPartition};
use super::poset::Poset;
use super::Mode;
use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeakComposition {
    parts: Vec<usize>,
}

impl WeakComposition {
    pub fn new(parts: Vec<usize>) -> Self {
        Self { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// All weak compositions of `n` into `k` parts, lexicographic.
    pub fn all(n: usize, k: usize) -> Vec<WeakComposition> {
        fn rec(n: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<WeakComposition>) {
            if k == 1 {
                prefix.push(n);
                out.push(WeakComposition::new(prefix.clone()));
                prefix.pop();
                return;
            }
            for a in 0..=n {
                prefix.push(a);
                rec(n - a, k - 1, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        match k {
            0 if n == 0 => out.push(WeakComposition::new(vec![])),
            0 => {}
            _ => rec(n, k, &mut Vec::with_capacity(k), &mut out),
        }
        out
    }
}

impl fmt::Display for WeakComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A shuffle outcome: the composition together with the deck order
/// (top to bottom, one-line notation).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ShuffleOutcome {
    pub composition: WeakComposition,
    pub permutation: Permutation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RiffleVariant {
    /// `m` piles, none reversed.
    Classic,
    /// `2m` piles, odd piles reversed.
    DownUp,
    /// `2m+1` piles, even piles reversed.
    UpDown,
}

impl RiffleVariant {
    pub fn mode(self) -> Mode {
        match self {
            RiffleVariant::Classic => Mode::Positive,
            RiffleVariant::DownUp => Mode::Nonzero,
            RiffleVariant::UpDown => Mode::All,
        }
    }

    /// The cards of each pile listed top to bottom, before riffling.
    pub fn piles(self, composition: &WeakComposition) -> Vec<Vec<usize>> {
        let values = self.mode().alphabet(parts_to_m(composition.parts().len(), self.mode()));
        let mut start = 0;
        composition
            .parts()
            .iter()
            .zip(values)
            .map(|(&a, v)| {
                let mut pile: Vec<usize> = (start + 1..=start + a).collect();
                if v.is_barred() {
                    pile.reverse();
                }
                start += a;
                pile
            })
            .collect()
    }

    /// The pile poset: one chain per pile, ordered as the pile sits.
    pub fn pile_poset(self, composition: &WeakComposition) -> Poset {
        Poset::disjoint_chains(composition.total(), &self.piles(composition))
            .expect("piles are disjoint chains")
    }
}

fn parts_to_m(len: usize, mode: Mode) -> u64 {
    let len = len as u64;
    match mode {
        Mode::All => len.saturating_sub(1) / 2,
        Mode::Nonzero => len / 2,
        Mode::Positive => len,
    }
}

fn m_from_composition(c: &WeakComposition, mode: Mode) -> Result<u64> {
    let len = c.parts().len();
    let m = parts_to_m(len, mode);
    if mode.base(m) as usize != len {
        return Err(Error::InvalidForMode {
            mode: mode.to_string(),
            detail: format!("composition with {len} parts"),
        });
    }
    Ok(m)
}

fn check_values(f: &PPartition, m: u64, mode: Mode) -> Result<()> {
    for (idx, &v) in f.values().iter().enumerate() {
        if !mode.admits(v) {
            return Err(Error::InvalidForMode {
                mode: mode.to_string(),
                detail: format!("value {v} at position {}", idx + 1),
            });
        }
        if v.magnitude() > m {
            return Err(Error::OutOfBounds {
                position: idx + 1,
                value: v.to_string(),
                m,
            });
        }
    }
    Ok(())
}

fn value_counts(f: &PPartition, m: u64, mode: Mode) -> WeakComposition {
    let alphabet = mode.alphabet(m);
    WeakComposition::new(
        alphabet
            .iter()
            .map(|a| f.values().iter().filter(|&&v| v == *a).count())
            .collect(),
    )
}

/// The value of each card label `1..n` when labels are handed out in
/// consecutive blocks of the composition.
fn block_values(c: &WeakComposition, m: u64, mode: Mode) -> Vec<BarredInt> {
    mode.alphabet(m)
        .into_iter()
        .zip(c.parts())
        .flat_map(|(v, &a)| std::iter::repeat_n(v, a))
        .collect()
}

/// Card `i` goes to shelf `|f(i)|`, on top if `f(i)` is barred, beneath
/// otherwise. The deck order is `sorting_permutation(f)`.
pub fn shelf_outcome_from_ppartition(f: &PPartition, m: u64, mode: Mode) -> Result<ShuffleOutcome> {
    check_values(f, m, mode)?;
    Ok(ShuffleOutcome {
        composition: value_counts(f, m, mode),
        permutation: sorting_permutation(f),
    })
}

/// Recovers the placement sequence from an outcome. The `k`-th smallest
/// value goes to the card in deck position `k`.
pub fn ppartition_from_shelf_outcome(outcome: &ShuffleOutcome, mode: Mode) -> Result<PPartition> {
    let m = m_from_composition(&outcome.composition, mode)?;
    let pi = &outcome.permutation;
    if outcome.composition.total() != pi.len() {
        return Err(Error::SizeMismatch {
            left: outcome.composition.total(),
            right: pi.len(),
        });
    }
    let sorted_values = block_values(&outcome.composition, m, mode);
    let mut values = vec![BarredInt::ZERO; pi.len()];
    for (pos, &v) in sorted_values.iter().enumerate() {
        values[pi.apply(pos + 1) - 1] = v;
    }
    let f = PPartition::new(values);
    if sorting_permutation(&f) != *pi {
        return Err(Error::InvalidParameter(format!(
            "deck {pi} is not reachable with placement counts {}",
            outcome.composition
        )));
    }
    Ok(f)
}

/// Riffle outcome `(A, σ)` to the P-partition with image multiset given by
/// `A` and sorting permutation `σ⁻¹`: the card at position `i` of the deck
/// came from a pile with value `f(i)`.
pub fn riffle_outcome_to_ppartition(
    composition: &WeakComposition,
    sigma: &Permutation,
    variant: RiffleVariant,
) -> Result<PPartition> {
    let mode = variant.mode();
    let m = m_from_composition(composition, mode)?;
    if composition.total() != sigma.len() {
        return Err(Error::SizeMismatch {
            left: composition.total(),
            right: sigma.len(),
        });
    }
    let pile_value = block_values(composition, m, mode);
    let f = PPartition::new(
        sigma
            .images()
            .iter()
            .map(|&card| pile_value[card - 1])
            .collect(),
    );
    if sorting_permutation(&f) != sigma.inverse() {
        return Err(Error::NotLinearExtension(sigma.to_string()));
    }
    Ok(f)
}

pub fn riffle_ppartition_to_outcome(f: &PPartition, m: u64, variant: RiffleVariant) -> Result<ShuffleOutcome> {
    let mode = variant.mode();
    check_values(f, m, mode)?;
    Ok(ShuffleOutcome {
        composition: value_counts(f, m, mode),
        permutation: sorting_permutation(f).inverse(),
    })
}

/// Every `(A, σ)` with `σ ∈ ℒ(P_A)`, by direct enumeration of compositions
/// and interleavings.
pub fn enumerate_riffle_outcomes(n: usize, m: u64, variant: RiffleVariant) -> Vec<ShuffleOutcome> {
    let parts = variant.mode().base(m) as usize;
    WeakComposition::all(n, parts)
        .into_iter()
        .flat_map(|a| {
            variant
                .pile_poset(&a)
                .linear_extensions()
                .into_iter()
                .map(move |sigma| ShuffleOutcome {
                    composition: a.clone(),
                    permutation: sigma,
                })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::ppartition::{enumerate_bounded, Poset};

    fn f(s: &str) -> PPartition {
        s.parse().unwrap()
    }

    #[test]
    fn lazy_table_example() {
        // placements 1t,1b,2t,0,1b,2b,2t,0,1t
        let g = f("1- 1 2- 0 1 2 2- 0 1-");
        let out = shelf_outcome_from_ppartition(&g, 2, Mode::All).unwrap();
        assert_eq!(out.permutation.to_string(), "489125736");
        assert_eq!(out.composition.parts(), &[2, 2, 2, 2, 1]);
        assert_eq!(ppartition_from_shelf_outcome(&out, Mode::All).unwrap(), g);
    }

    #[test]
    fn shelf_bounds_and_modes() {
        assert!(matches!(
            shelf_outcome_from_ppartition(&f("0 3"), 2, Mode::All),
            Err(Error::OutOfBounds { position: 2, .. })
        ));
        assert!(shelf_outcome_from_ppartition(&f("0 1"), 2, Mode::Nonzero).is_err());
        assert!(shelf_outcome_from_ppartition(&f("1- 1"), 2, Mode::Positive).is_err());
        let zero = shelf_outcome_from_ppartition(&PPartition::constant(4, BarredInt::ZERO), 1, Mode::All).unwrap();
        assert!(zero.permutation.is_identity());
        assert_eq!(zero.composition.parts(), &[4, 0, 0]);
    }

    #[test]
    fn shelf_round_trip_exhaustive() {
        for mode in Mode::ALL {
            let all = enumerate_bounded(&Poset::antichain(4), 1, mode).unwrap();
            assert_eq!(all.len() as u64, mode.base(1).pow(4));
            let mut seen = HashSet::new();
            for g in all {
                let out = shelf_outcome_from_ppartition(&g, 1, mode).unwrap();
                assert_eq!(ppartition_from_shelf_outcome(&out, mode).unwrap(), g);
                assert!(seen.insert(out));
            }
        }
    }

    #[test]
    fn unreachable_shelf_outcome_rejected() {
        // one card on bottom of shelf 0 and one on top of shelf 1 cannot give 21
        let out = ShuffleOutcome {
            composition: WeakComposition::new(vec![2, 0, 0]),
            permutation: "21".parse().unwrap(),
        };
        assert!(ppartition_from_shelf_outcome(&out, Mode::All).is_err());
    }

    #[test]
    fn up_down_pile_poset_image() {
        let a = WeakComposition::new(vec![3, 4, 3, 4, 2]);
        let piles = RiffleVariant::UpDown.piles(&a);
        assert_eq!(piles[1], vec![7, 6, 5, 4]);
        assert_eq!(piles[0], vec![1, 2, 3]);
        let poset = RiffleVariant::UpDown.pile_poset(&a);
        assert!(poset.lt(7, 4) && poset.lt(1, 3) && !poset.lt(3, 4));
        // any interleaving: take piles one after another
        let sigma = Permutation::new(piles.concat()).unwrap();
        let g = riffle_outcome_to_ppartition(&a, &sigma, RiffleVariant::UpDown).unwrap();
        let mut image: Vec<String> = g.values().iter().map(|v| v.to_string()).collect();
        image.sort_by_key(|s| s.parse::<BarredInt>().unwrap());
        assert_eq!(
            image.join(" "),
            "0 0 0 1- 1- 1- 1- 1 1 1 2- 2- 2- 2- 2 2"
        );
        assert_eq!(sorting_permutation(&g), sigma.inverse());
    }

    #[test]
    fn classic_single_pile() {
        let a = WeakComposition::new(vec![5]);
        let g = riffle_outcome_to_ppartition(&a, &Permutation::identity(5), RiffleVariant::Classic).unwrap();
        assert_eq!(g, PPartition::constant(5, BarredInt::plain(1)));
        assert_eq!(
            riffle_outcome_to_ppartition(&a, &"21345".parse().unwrap(), RiffleVariant::Classic),
            Err(Error::NotLinearExtension("21345".into()))
        );
    }

    #[test]
    fn riffle_bijection_exhaustive() {
        for variant in [RiffleVariant::UpDown, RiffleVariant::DownUp, RiffleVariant::Classic] {
            for m in 1..=2 {
                let outcomes = enumerate_riffle_outcomes(4, m, variant);
                let mode = variant.mode();
                assert_eq!(outcomes.len() as u64, mode.base(m).pow(4), "{variant:?}");
                let images: HashSet<PPartition> = outcomes
                    .iter()
                    .map(|o| riffle_outcome_to_ppartition(&o.composition, &o.permutation, variant).unwrap())
                    .collect();
                let expected: HashSet<PPartition> =
                    enumerate_bounded(&Poset::antichain(4), m, mode).unwrap().into_iter().collect();
                assert_eq!(images, expected);
                for o in &outcomes {
                    let g = riffle_outcome_to_ppartition(&o.composition, &o.permutation, variant).unwrap();
                    assert_eq!(&riffle_ppartition_to_outcome(&g, m, variant).unwrap(), o);
                }
            }
        }
    }

    #[test]
    fn weak_composition_counts() {
        assert_eq!(WeakComposition::all(10, 3).len(), 66);
        assert_eq!(WeakComposition::all(0, 0).len(), 1);
        assert!(WeakComposition::all(2, 0).is_empty());
    }
}
