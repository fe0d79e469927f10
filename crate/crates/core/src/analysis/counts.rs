use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::perm::Statistic;

/// `counts[k] = |{π ∈ S_n : stat(π) = k}|` for `0 <= k <= k_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub n: usize,
    pub kind: Statistic,
    counts: Vec<BigInt>,
}

impl CountTable {
    pub fn get(&self, k: usize) -> BigInt {
        self.counts.get(k).cloned().unwrap_or_default()
    }

    pub fn counts(&self) -> &[BigInt] {
        &self.counts
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.counts.iter().enumerate()
    }

    pub fn total(&self) -> BigInt {
        self.counts.iter().sum()
    }
}

type Cache = HashMap<(usize, Statistic), Arc<CountTable>>;

/// Shared, memoized table for `(n, kind)`.
pub fn count_table(n: usize, kind: Statistic) -> Arc<CountTable> {
    static CACHE: OnceLock<RwLock<Cache>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.read().expect("count cache poisoned").get(&(n, kind)) {
        return t.clone();
    }
    let table = Arc::new(build(n, kind));
    cache
        .write()
        .expect("count cache poisoned")
        .entry((n, kind))
        .or_insert(table)
        .clone()
}

pub fn lpk_counts(n: usize) -> Arc<CountTable> {
    count_table(n, Statistic::Lpk)
}

pub fn pk_counts(n: usize) -> Arc<CountTable> {
    count_table(n, Statistic::Pk)
}

/// Eulerian numbers.
pub fn des_counts(n: usize) -> Arc<CountTable> {
    count_table(n, Statistic::Des)
}

fn build(n: usize, kind: Statistic) -> CountTable {
    // each row from S_1 = {1}; S_0 has the single empty permutation
    let mut row = vec![BigInt::one()];
    for size in 2..=n {
        let len = kind.max_value(size) + 1;
        let prev = |k: usize| row.get(k).cloned().unwrap_or_else(BigInt::zero);
        let next: Vec<BigInt> = (0..len)
            .map(|k| {
                let below = if k == 0 { BigInt::zero() } else { prev(k - 1) };
                let (stay, rise) = match kind {
                    // l(n,k) = (2k+1) l(n-1,k) + (n+1-2k) l(n-1,k-1)
                    Statistic::Lpk => (2 * k + 1, (size + 1).saturating_sub(2 * k)),
                    // p(n,k) = (2k+2) p(n-1,k) + (n-2k) p(n-1,k-1)
                    Statistic::Pk => (2 * k + 2, size.saturating_sub(2 * k)),
                    // A(n,k) = (k+1) A(n-1,k) + (n-k) A(n-1,k-1)
                    Statistic::Des => (k + 1, size - k),
                };
                prev(k) * stay + below * rise
            })
            .collect();
        row = next;
    }
    CountTable { n, kind, counts: row }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::factorial;
    use crate::perm::all_permutations;

    fn ints(t: &CountTable) -> Vec<u64> {
        t.counts().iter().map(|c| c.try_into().unwrap()).collect()
    }

    #[test]
    fn small_tables() {
        assert_eq!(ints(&lpk_counts(2)), vec![1, 1]);
        assert_eq!(ints(&lpk_counts(4)), vec![1, 18, 5]);
        assert_eq!(ints(&des_counts(3)), vec![1, 4, 1]);
        assert_eq!(ints(&pk_counts(3)), vec![4, 2]);
        assert_eq!(ints(&des_counts(1)), vec![1]);
        assert_eq!(ints(&lpk_counts(0)), vec![1]);
    }

    #[test]
    fn recurrences_match_exhaustive_counts() {
        for n in 1..=9 {
            for kind in [Statistic::Lpk, Statistic::Pk, Statistic::Des] {
                let mut brute = vec![0u64; kind.max_value(n) + 1];
                for p in all_permutations(n) {
                    brute[p.statistic(kind)] += 1;
                }
                assert_eq!(ints(&count_table(n, kind)), brute, "n={n} {kind}");
            }
        }
    }

    #[test]
    fn totals_up_to_52() {
        for n in 0..=52 {
            for kind in [Statistic::Lpk, Statistic::Pk, Statistic::Des] {
                let t = count_table(n, kind);
                assert_eq!(t.total(), factorial(n));
                assert!(t.counts().iter().all(|c| c > &BigInt::zero()));
            }
            assert_eq!(lpk_counts(n).get(0), BigInt::one());
        }
    }

    #[test]
    fn cache_returns_shared_table() {
        assert!(Arc::ptr_eq(&lpk_counts(30), &lpk_counts(30)));
    }
}
