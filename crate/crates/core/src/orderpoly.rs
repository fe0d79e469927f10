//! Order polynomials of chains in closed form, and exhaustive checks of
//! the identities they satisfy.
//!
//! For a chain `π ∈ S_n` the number of bounded π-partitions depends only
//! on one statistic of `π`:
//!
//! ```text
//! Ω_π(m)  = 4^lpk Σ_a C(n+m-a, n)   C(n-2·lpk, a-lpk)
//! Ω*_π(m) = 2·4^pk Σ_a C(n-1+m-a, n) C(n-1-2·pk, a-pk)
//! Ω⁺_π(m) = C(n-1+m-des, n)
//! ```
//!
//! The sums run over `k <= a <= n-k` (resp. `n-1-k`), the support of the
//! second binomial, so every argument stays nonnegative.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numeric::binomial;
use crate::perm::{all_permutations, Permutation};
use crate::ppartition::{Mode, Poset};
use crate::report::Report;

/// Largest `n` for which the `n!`-sized checks run.
pub const EXHAUSTIVE_CAP: usize = 7;

/// A chain order polynomial value, or the statement that no permutation in
/// `S_n` has the requested statistic (in which case the count is zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainCount {
    Value(BigInt),
    OutOfRange,
}

impl ChainCount {
    pub fn value(&self) -> BigInt {
        match self {
            ChainCount::Value(v) => v.clone(),
            ChainCount::OutOfRange => BigInt::zero(),
        }
    }

    pub fn is_out_of_range(&self) -> bool {
        matches!(self, ChainCount::OutOfRange)
    }
}

fn pow4(k: usize) -> BigInt {
    num_traits::pow(BigInt::from(4), k)
}

/// `Ω(n, k; m)` for chains with `k` left peaks (unrestricted image).
pub fn op_lazy(n: usize, k: usize, m: u64) -> ChainCount {
    if k > n / 2 {
        return ChainCount::OutOfRange;
    }
    let (n, k, m) = (n as i64, k as i64, m as i64);
    let sum: BigInt = (k..=n - k)
        .map(|a| binomial(n + m - a, n) * binomial(n - 2 * k, a - k))
        .sum();
    ChainCount::Value(pow4(k as usize) * sum)
}

/// `Ω*(n, k; m)` for chains with `k` peaks (image avoids 0).
pub fn op_star(n: usize, k: usize, m: u64) -> ChainCount {
    if n == 0 {
        return if k == 0 { ChainCount::Value(BigInt::from(1)) } else { ChainCount::OutOfRange };
    }
    if k > (n - 1) / 2 {
        return ChainCount::OutOfRange;
    }
    let (n, k, m) = (n as i64, k as i64, m as i64);
    let sum: BigInt = (k..=n - 1 - k)
        .map(|a| binomial(n - 1 + m - a, n) * binomial(n - 1 - 2 * k, a - k))
        .sum();
    ChainCount::Value(2 * pow4(k as usize) * sum)
}

/// `Ω⁺(n, k; m)` for chains with `k` descents (positive nonbarred image).
pub fn op_plus(n: usize, k: usize, m: u64) -> ChainCount {
    if n == 0 {
        return if k == 0 { ChainCount::Value(BigInt::from(1)) } else { ChainCount::OutOfRange };
    }
    if k > n - 1 {
        return ChainCount::OutOfRange;
    }
    let (n, k, m) = (n as i64, k as i64, m as i64);
    ChainCount::Value(binomial(n - 1 + m - k, n))
}

pub fn chain_count(mode: Mode, n: usize, k: usize, m: u64) -> ChainCount {
    match mode {
        Mode::All => op_lazy(n, k, m),
        Mode::Nonzero => op_star(n, k, m),
        Mode::Positive => op_plus(n, k, m),
    }
}

/// `Ω_π(m)` in the given mode.
pub fn order_polynomial(p: &Permutation, m: u64, mode: Mode) -> BigInt {
    chain_count(mode, p.len(), p.statistic(mode.statistic()), m).value()
}

/// Order polynomial of an arbitrary poset as a sum over its linear extensions.
pub fn op_poset(poset: &Poset, m: u64, mode: Mode) -> BigInt {
    poset
        .linear_extensions()
        .iter()
        .map(|p| order_polynomial(p, m, mode))
        .sum()
}

/// The bound of the single shuffle equivalent to a `k` then `l` shuffle:
/// `2kl+k+l`, `2kl`, `kl`.
pub fn combined_parameter(mode: Mode, k: u64, l: u64) -> u64 {
    match mode {
        Mode::All => 2 * k * l + k + l,
        Mode::Nonzero => 2 * k * l,
        Mode::Positive => k * l,
    }
}

fn check_cap(n: usize) -> Result<()> {
    if n > EXHAUSTIVE_CAP {
        return Err(Error::CapExceeded {
            what: format!("n = {n} for an exhaustive check"),
            limit: EXHAUSTIVE_CAP as u128,
        });
    }
    Ok(())
}

/// Checks `Ω_π(K) = Σ_{στ=π} Ω_σ(k) Ω_τ(l)` for every `π ∈ S_n`, with
/// `K = combined_parameter(mode, k, l)`.
pub fn verify_decomposition(n: usize, k: u64, l: u64, mode: Mode) -> Result<Report> {
    verify_decomposition_with(n, k, l, mode, &|n, s, m| chain_count(mode, n, s, m).value())
}

/// [`verify_decomposition`] with the chain formula supplied by the caller,
/// as `formula(n, statistic, m)`.
pub fn verify_decomposition_with(
    n: usize,
    k: u64,
    l: u64,
    mode: Mode,
    formula: &dyn Fn(usize, usize, u64) -> BigInt,
) -> Result<Report> {
    check_cap(n)?;
    let stat = mode.statistic();
    let big_m = combined_parameter(mode, k, l);
    let perms: Vec<Permutation> = all_permutations(n).collect();
    let value = |p: &Permutation, m| formula(n, p.statistic(stat), m);
    let left: Vec<BigInt> = perms.iter().map(|p| value(p, k)).collect();
    let right: Vec<BigInt> = perms.iter().map(|p| value(p, l)).collect();
    let mut rhs = vec![BigInt::zero(); perms.len()];
    for (s, a) in perms.iter().zip(&left) {
        if a.is_zero() {
            continue;
        }
        for (t, b) in perms.iter().zip(&right) {
            if b.is_zero() {
                continue;
            }
            let st = s.compose(t)?;
            rhs[st.lex_rank()] += a * b;
        }
    }
    let mut report = Report::new(
        "decomposition",
        format!("n={n}, k={k}, l={l}, mode={mode}"),
    );
    for (p, r) in perms.iter().zip(&rhs) {
        let lhs = value(p, big_m);
        report.record(&lhs == r, || format!("π={p}: Ω(K={big_m}) = {lhs}, convolution = {r}"));
    }
    Ok(report)
}

/// Checks `Ω(n,k;m) >= Ω(n,k+1;m)` for `0 <= k <= k_max`, where the value
/// one past the range is zero.
pub fn check_monotonicity(n: usize, m: u64, mode: Mode) -> Report {
    check_monotonicity_with(n, m, mode, &|n, k, m| chain_count(mode, n, k, m).value())
}

pub fn check_monotonicity_with(
    n: usize,
    m: u64,
    mode: Mode,
    formula: &dyn Fn(usize, usize, u64) -> BigInt,
) -> Report {
    let mut report = Report::new("monotonicity", format!("n={n}, m={m}, mode={mode}"));
    let kmax = mode.statistic().max_value(n);
    for k in 0..=kmax {
        let (a, b) = (formula(n, k, m), formula(n, k + 1, m));
        report.record(a >= b, || format!("k={k}: {a} < {b}"));
    }
    report
}

/// Checks `Σ_k (class size) · Ω(n,k;m) = base^n`, the antichain count.
pub fn check_antichain_total(n: usize, m: u64, mode: Mode) -> Report {
    let table = crate::analysis::count_table(n, mode.statistic());
    let total: BigInt = table
        .iter()
        .map(|(k, count)| count * chain_count(mode, n, k, m).value())
        .sum();
    let expected = crate::numeric::pow(mode.base(m), n);
    let mut report = Report::new("antichain-total", format!("n={n}, m={m}, mode={mode}"));
    report.record(total == expected, || format!("Σ = {total}, expected {expected}"));
    report
}
