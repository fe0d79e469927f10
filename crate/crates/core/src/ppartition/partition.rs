use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::barred::{rel_len, rel_lp, BarredInt};
use super::poset::Poset;
use super::Mode;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::report::Report;

/// Bounded enumeration refuses inputs with `(2m+1)^n` above this.
pub const ENUMERATION_CAP: u128 = 10_000_000;

/// A map `{1..n} → BarredInt`, `values[i-1] = f(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PPartition {
    values: Vec<BarredInt>,
}

impl PPartition {
    pub fn new(values: Vec<BarredInt>) -> Self {
        Self { values }
    }

    pub fn constant(n: usize, v: BarredInt) -> Self {
        Self { values: vec![v; n] }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// `f(i)` for `1 <= i <= n`.
    pub fn get(&self, i: usize) -> BarredInt {
        self.values[i - 1]
    }

    pub fn values(&self) -> &[BarredInt] {
        &self.values
    }

    /// `max |f(i)|`, or 0 when empty.
    pub fn bound(&self) -> u64 {
        self.values.iter().map(|v| v.magnitude()).max().unwrap_or(0)
    }
}

/// Two-line notation: card labels on the first line, values beneath.
impl fmt::Display for PPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top: Vec<String> = (1..=self.n()).map(|i| i.to_string()).collect();
        let bottom: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        let width = top
            .iter()
            .chain(&bottom)
            .map(|s| s.len())
            .max()
            .unwrap_or(1);
        let row = |cells: &[String]| {
            cells
                .iter()
                .map(|c| format!("{c:>width$}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(f, "{}\n{}", row(&top), row(&bottom))
    }
}

impl FromStr for PPartition {
    type Err = Error;

    /// Accepts two-line notation, or just the value row.
    fn from_str(s: &str) -> Result<Self> {
        let lines: Vec<&str> = s.lines().filter(|l| !l.trim().is_empty()).collect();
        let (labels, values) = match lines.as_slice() {
            [values] => (None, *values),
            [labels, values] => (Some(*labels), *values),
            _ => return Err(Error::Parse("expected one or two lines".into())),
        };
        let values: Vec<BarredInt> = values
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_>>()?;
        if let Some(labels) = labels {
            let labels: Vec<&str> = labels.split_whitespace().collect();
            let expected: Vec<String> = (1..=values.len()).map(|i| i.to_string()).collect();
            if labels != expected {
                return Err(Error::Parse("label row must be 1 2 ... n".into()));
            }
        }
        Ok(PPartition::new(values))
    }
}

/// Whether `f` is a P-partition of `poset` with image allowed by `mode`.
///
/// Only covering pairs are checked; transitivity of `⋖⁺`/`⋖ᵉ` along a
/// chain covers the rest.
pub fn is_p_partition(f: &PPartition, poset: &Poset, mode: Mode) -> Result<bool> {
    if f.n() != poset.n() {
        return Err(Error::SizeMismatch {
            left: f.n(),
            right: poset.n(),
        });
    }
    if !f.values.iter().all(|&v| mode.admits(v)) {
        return Ok(false);
    }
    Ok(poset
        .covers()
        .into_iter()
        .all(|(i, j)| pair_ok(i, j, f.get(i), f.get(j))))
}

fn pair_ok(i: usize, j: usize, fi: BarredInt, fj: BarredInt) -> bool {
    if i < j {
        rel_lp(fi, fj)
    } else {
        rel_len(fi, fj)
    }
}

/// The unique `π` with `f ∈ 𝒜(π)`: sort labels by value, nonbarred ties
/// ascending, barred ties descending.
pub fn sorting_permutation(f: &PPartition) -> Permutation {
    let mut labels: Vec<usize> = (1..=f.n()).collect();
    labels.sort_by_key(|&i| {
        let v = f.get(i);
        let tie = if v.is_barred() { -(i as i64) } else { i as i64 };
        (v, tie)
    });
    Permutation::from_images_unchecked(labels)
}

/// Deck order when cards are dealt `n, ..., 1` (from the bottom). Within a
/// value class the tie-breaking of [`sorting_permutation`] is reversed.
pub fn bottom_deal_permutation(f: &PPartition) -> Permutation {
    let mut labels: Vec<usize> = (1..=f.n()).collect();
    labels.sort_by_key(|&i| {
        let v = f.get(i);
        let tie = if v.is_barred() { i as i64 } else { -(i as i64) };
        (v, tie)
    });
    Permutation::from_images_unchecked(labels)
}

/// All P-partitions of `poset` with `|f(i)| <= m` and image allowed by
/// `mode`, in lexicographic order of the value vector.
pub fn enumerate_bounded(poset: &Poset, m: u64, mode: Mode) -> Result<Vec<PPartition>> {
    let n = poset.n();
    let space = (2 * m as u128 + 1).checked_pow(n as u32);
    if space.is_none_or(|s| s > ENUMERATION_CAP) {
        return Err(Error::CapExceeded {
            what: format!("(2·{m}+1)^{n}"),
            limit: ENUMERATION_CAP,
        });
    }
    let alphabet = mode.alphabet(m);
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fill(poset, &alphabet, &mut current, &mut out);
    Ok(out)
}

fn fill(poset: &Poset, alphabet: &[BarredInt], current: &mut Vec<BarredInt>, out: &mut Vec<PPartition>) {
    let j = current.len() + 1;
    if j > poset.n() {
        out.push(PPartition::new(current.clone()));
        return;
    }
    for &v in alphabet {
        let consistent = (1..j).all(|i| {
            let fi = current[i - 1];
            (!poset.lt(i, j) || pair_ok(i, j, fi, v)) && (!poset.lt(j, i) || pair_ok(j, i, v, fi))
        });
        if consistent {
            current.push(v);
            fill(poset, alphabet, current, out);
            current.pop();
        }
    }
}

/// Checks that the bounded P-partitions of `poset` are the disjoint union
/// of those of its linear extensions.
pub fn verify_fundamental_theorem(poset: &Poset, m: u64, mode: Mode) -> Result<Report> {
    let mut report = Report::new(
        "fundamental-theorem",
        format!("n={}, m={m}, mode={mode}", poset.n()),
    );
    let whole: HashSet<PPartition> = enumerate_bounded(poset, m, mode)?.into_iter().collect();
    let mut union: HashSet<PPartition> = HashSet::new();
    for ext in poset.linear_extensions() {
        for f in enumerate_bounded(&Poset::chain(&ext), m, mode)? {
            let sorted_by_ext = sorting_permutation(&f) == ext;
            report.record(sorted_by_ext, || format!("{f:?} in 𝒜({ext}) but sorts to another chain"));
            let fresh = union.insert(f.clone());
            report.record(fresh, || format!("{f:?} lies in two chains"));
        }
    }
    report.record(union == whole, || {
        format!("|𝒜(P)| = {}, union of chains has {}", whole.len(), union.len())
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> PPartition {
        s.parse().unwrap()
    }

    #[test]
    fn sorting_permutation_worked_example() {
        let g = f("1- 0 0 2- 1- 1 0 2 2");
        assert_eq!(sorting_permutation(&g).to_string(), "237516489");
        assert_eq!(bottom_deal_permutation(&g).to_string(), "732156498");
    }

    #[test]
    fn sorting_ties() {
        assert!(sorting_permutation(&PPartition::constant(4, BarredInt::ZERO)).is_identity());
        let barred = PPartition::constant(3, BarredInt::barred(1).unwrap());
        assert_eq!(sorting_permutation(&barred).to_string(), "321");
        let zero = PPartition::constant(3, BarredInt::ZERO);
        assert_eq!(bottom_deal_permutation(&zero).to_string(), "321");
        let strict = f("0 1- 1 2-");
        assert_eq!(sorting_permutation(&strict), bottom_deal_permutation(&strict));
        assert!(sorting_permutation(&strict).is_identity());
    }

    #[test]
    fn two_line_notation() {
        let g = f("1- 0 0 2- 1- 1 0 2 2");
        let text = g.to_string();
        assert_eq!(text, " 1  2  3  4  5  6  7  8  9\n1-  0  0 2- 1-  1  0  2  2");
        assert_eq!(text.parse::<PPartition>().unwrap(), g);
        assert!("2 1\n0 0".parse::<PPartition>().is_err());
    }

    #[test]
    fn membership_examples() {
        let p = Poset::from_relations(3, &[(1, 2), (3, 2)]).unwrap();
        assert!(is_p_partition(&f("0 1- 1-"), &p, Mode::All).unwrap());
        // 1 <_P 2 naturally labeled: barred tie forbidden
        assert!(!is_p_partition(&f("1- 1- 1-"), &p, Mode::All).unwrap());
        assert!(is_p_partition(&f("2 0 1"), &Poset::antichain(3), Mode::All).unwrap());
        assert!(!is_p_partition(&f("2 0 1"), &Poset::antichain(3), Mode::Nonzero).unwrap());
        assert!(!is_p_partition(&f("2 1- 1"), &Poset::antichain(3), Mode::Positive).unwrap());
        assert!(is_p_partition(&f("0 0"), &p, Mode::All).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_bounded(&Poset::antichain(2), 1, Mode::All).unwrap().len(), 9);
        assert_eq!(enumerate_bounded(&Poset::antichain(3), 2, Mode::Positive).unwrap().len(), 8);
        let chain = Poset::chain(&Permutation::identity(2));
        assert_eq!(enumerate_bounded(&chain, 1, Mode::All).unwrap().len(), 5);
        assert!(matches!(
            enumerate_bounded(&Poset::antichain(20), 1, Mode::All),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn enumeration_matches_filtered_brute_force() {
        let p = Poset::from_relations(3, &[(1, 2), (3, 2)]).unwrap();
        for mode in Mode::ALL {
            let fast = enumerate_bounded(&p, 2, mode).unwrap();
            let brute: Vec<PPartition> = enumerate_bounded(&Poset::antichain(3), 2, Mode::All)
                .unwrap()
                .into_iter()
                .filter(|g| is_p_partition(g, &p, mode).unwrap())
                .collect();
            assert_eq!(fast, brute, "{mode}");
        }
    }

    #[test]
    fn worked_poset_union() {
        let p = Poset::from_relations(3, &[(1, 2), (3, 2)]).unwrap();
        let r = verify_fundamental_theorem(&p, 1, Mode::All).unwrap();
        assert!(r.passed(), "{r}");
    }
}
