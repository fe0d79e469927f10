use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of `0 < 1- < 1 < 2- < 2 < ...`, where `k-` is the barred `k`.
///
/// Stored by rank: `rank = 2·magnitude - [barred]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BarredInt {
    rank: u64,
}

impl BarredInt {
    pub const ZERO: BarredInt = BarredInt { rank: 0 };

    pub fn plain(magnitude: u64) -> Self {
        Self { rank: 2 * magnitude }
    }

    /// Barred `k`; `k = 0` has no barred form.
    pub fn barred(magnitude: u64) -> Result<Self> {
        if magnitude == 0 {
            return Err(Error::Parse("0 has no barred form".into()));
        }
        Ok(Self {
            rank: 2 * magnitude - 1,
        })
    }

    pub fn from_rank(rank: u64) -> Self {
        Self { rank }
    }

    pub fn rank(self) -> u64 {
        self.rank
    }

    /// `|v|`, with `|k-| = k`.
    pub fn magnitude(self) -> u64 {
        self.rank.div_ceil(2)
    }

    pub fn is_barred(self) -> bool {
        self.rank % 2 == 1
    }
}

/// `a ⋖⁺ b`: `a < b`, or `a = b` nonbarred. Used on naturally labeled pairs.
pub fn rel_lp(a: BarredInt, b: BarredInt) -> bool {
    a < b || (a == b && !a.is_barred())
}

/// `a ⋖ᵉ b`: `a < b`, or `a = b` barred. Used on unnaturally labeled pairs.
pub fn rel_len(a: BarredInt, b: BarredInt) -> bool {
    a < b || (a == b && a.is_barred())
}

impl fmt::Display for BarredInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_barred() {
            write!(f, "{}-", self.magnitude())
        } else {
            write!(f, "{}", self.magnitude())
        }
    }
}

impl FromStr for BarredInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (digits, barred) = match s.strip_suffix('-') {
            Some(d) => (d, true),
            None => (s, false),
        };
        let k: u64 = digits
            .parse()
            .map_err(|e| Error::Parse(format!("barred integer {s:?}: {e}")))?;
        if barred {
            BarredInt::barred(k)
        } else {
            Ok(BarredInt::plain(k))
        }
    }
}

impl Serialize for BarredInt {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BarredInt {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BarredInt {
        s.parse().unwrap()
    }

    #[test]
    fn rank_order() {
        let seq = ["0", "1-", "1", "2-", "2", "3-"];
        for (r, s) in seq.iter().enumerate() {
            assert_eq!(b(s).rank(), r as u64);
            assert_eq!(b(s).to_string(), *s);
        }
        assert!(b("1-") < b("1") && b("1") < b("2-"));
        assert_eq!(b("2-").magnitude(), 2);
        assert_eq!(b("0").magnitude(), 0);
        assert!("0-".parse::<BarredInt>().is_err());
        assert!("x".parse::<BarredInt>().is_err());
    }

    #[test]
    fn relations() {
        assert!(rel_lp(b("0"), b("0")));
        assert!(!rel_lp(b("1-"), b("1-")));
        assert!(rel_lp(b("1-"), b("1")));
        assert!(rel_len(b("1-"), b("1-")));
        assert!(!rel_len(b("0"), b("0")));
        assert!(!rel_len(b("2"), b("1")));
        assert!(!rel_lp(b("2"), b("1")));
    }
}
