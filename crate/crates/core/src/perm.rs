//! Permutations of `{1..n}` in one-line notation and the statistics the
//! shuffle probabilities are indexed by.
//!
//! Composition is `(s ∘ t)(i) = s(t(i))`. The decomposition identities for
//! all three order-polynomial families hold under this convention; the
//! `composition_convention_validates_decompositions` test checks them at
//! `n = 3, 4` and `orderpoly::verify_decomposition` exposes the same check.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its one-line notation (1-indexed images).
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation {
                    n,
                    detail: format!("image {v} out of range"),
                });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPermutation {
                    n,
                    detail: format!("image {v} repeated"),
                });
            }
        }
        Ok(Self { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Self::new(images.clone()).is_ok());
        Self { images }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (1..=n).collect(),
        }
    }

    pub fn decreasing(n: usize) -> Self {
        Self {
            images: (1..=n).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `π(i)` for `1 <= i <= n`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(Self {
            images: other.images.iter().map(|&j| self.images[j - 1]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Self { images: inv }
    }

    /// Positions `i` (1-indexed) with `π(i) > π(i+1)`.
    pub fn descent_set(&self) -> Vec<usize> {
        self.images
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn descents(&self) -> usize {
        self.images.windows(2).filter(|w| w[0] > w[1]).count()
    }

    pub fn peaks(&self) -> usize {
        self.images
            .windows(3)
            .filter(|w| w[0] < w[1] && w[1] > w[2])
            .count()
    }

    /// Peaks of `0 π(1) π(2) ... π(n)`.
    pub fn left_peaks(&self) -> usize {
        let first = match self.images.as_slice() {
            [a, b, ..] if a > b => 1,
            _ => 0,
        };
        self.peaks() + first
    }

    pub fn statistic(&self, stat: Statistic) -> usize {
        match stat {
            Statistic::Lpk => self.left_peaks(),
            Statistic::Pk => self.peaks(),
            Statistic::Des => self.descents(),
        }
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &v)| v == i + 1)
            .count()
    }

    pub fn cycle_type(&self) -> CycleType {
        let n = self.len();
        let mut visited = vec![false; n + 1];
        let mut counts = BTreeMap::new();
        for start in 1..=n {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut cur = start;
            while !visited[cur] {
                visited[cur] = true;
                cur = self.images[cur - 1];
                len += 1;
            }
            *counts.entry(len).or_insert(0) += 1;
        }
        CycleType { counts }
    }

    /// Lexicographic successor in place; `false` once the last permutation
    /// has been passed (and `self` wraps to the identity).
    pub fn next_lexicographic(&mut self) -> bool {
        let a = &mut self.images;
        let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
            a.reverse();
            return false;
        };
        let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).unwrap();
        a.swap(i - 1, j);
        a[i..].reverse();
        true
    }

    /// Rank in lexicographic order among all of `S_n`.
    pub fn lex_rank(&self) -> usize {
        let n = self.len();
        let mut rank = 0;
        let mut fact = vec![1usize; n + 1];
        for k in 1..=n {
            fact[k] = fact[k - 1] * k;
        }
        for i in 0..n {
            let smaller = self.images[i + 1..]
                .iter()
                .filter(|&&v| v < self.images[i])
                .count();
            rank += smaller * fact[n - 1 - i];
        }
        rank
    }
}

/// All of `S_n` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut current = Some(Permutation::identity(n));
    std::iter::from_fn(move || {
        let out = current.take()?;
        let mut next = out.clone();
        if next.next_lexicographic() {
            current = Some(next);
        }
        Some(out)
    })
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.images {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Compact digits (`"237516489"`) for `n <= 9`, comma-separated otherwise.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let images: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("unexpected character {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(images)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The statistic that indexes a family of order polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    Lpk,
    Pk,
    Des,
}

impl Statistic {
    /// Largest attainable value on `S_n`: `⌊n/2⌋`, `⌊(n-1)/2⌋`, `n-1`.
    pub fn max_value(self, n: usize) -> usize {
        match self {
            Statistic::Lpk => n / 2,
            Statistic::Pk => n.saturating_sub(1) / 2,
            Statistic::Des => n.saturating_sub(1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Statistic::Lpk => "lpk",
            Statistic::Pk => "pk",
            Statistic::Des => "des",
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Cycle type as `length -> number of cycles of that length` (no zero entries).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    counts: BTreeMap<usize, usize>,
}

impl CycleType {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_counts(counts: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let counts = counts
            .into_iter()
            .filter(|&(len, c)| len > 0 && c > 0)
            .fold(BTreeMap::new(), |mut acc, (len, c)| {
                *acc.entry(len).or_insert(0) += c;
                acc
            });
        Self { counts }
    }

    pub fn from_parts(parts: &[usize]) -> Self {
        Self::from_counts(parts.iter().map(|&p| (p, 1)))
    }

    /// `N_i`.
    pub fn count(&self, len: usize) -> usize {
        self.counts.get(&len).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<usize, usize> {
        &self.counts
    }

    /// `Σ i·N_i`.
    pub fn size(&self) -> usize {
        self.counts.iter().map(|(len, c)| len * c).sum()
    }

    /// Cycle lengths, largest first.
    pub fn parts(&self) -> Vec<usize> {
        let mut parts: Vec<usize> = self
            .counts
            .iter()
            .flat_map(|(&len, &c)| std::iter::repeat_n(len, c))
            .collect();
        parts.reverse();
        parts
    }

    /// Multiset union (product of the cycle monomials).
    pub fn merge(&self, other: &CycleType) -> CycleType {
        let mut counts = self.counts.clone();
        for (&len, &c) in &other.counts {
            *counts.entry(len).or_insert(0) += c;
        }
        CycleType { counts }
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts().iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Serialize for CycleType {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts().serialize(serializer)
    }
}
