use std::fmt::Write as _;

use clap::ValueEnum;
use num_bigint::BigInt;
use serde_json::json;

use shuffle_lab::analysis::{
    expected_fixed_points, expected_fixed_points_exhaustive, verify_cycle_distribution, verify_joint_lpk_cycle,
};
use shuffle_lab::model::group_algebra_product_check;
use shuffle_lab::orderpoly::{
    chain_count, check_antichain_total, check_monotonicity_with, op_lazy, verify_decomposition_with,
};
use shuffle_lab::perm::all_permutations;
use shuffle_lab::ppartition::{all_posets, enumerate_bounded, verify_fundamental_theorem};
use shuffle_lab::{Error, Mode, Model, Poset, Report};

use crate::Format;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Decomposition,
    Monotonicity,
    Totals,
    Product,
    Posets,
    Oracle,
    Cycles,
    FixedPoints,
    Joint,
}

impl Suite {
    const ALL: [Suite; 9] = [
        Suite::Decomposition,
        Suite::Monotonicity,
        Suite::Totals,
        Suite::Product,
        Suite::Posets,
        Suite::Oracle,
        Suite::Cycles,
        Suite::FixedPoints,
        Suite::Joint,
    ];

    /// Default `(n, m)` ranges and the largest `n` accepted.
    fn limits(self) -> (usize, u64, usize) {
        match self {
            Suite::Decomposition => (5, 3, 7),
            Suite::Monotonicity => (8, 5, 200),
            Suite::Totals => (8, 4, 200),
            Suite::Product => (6, 2, 6),
            Suite::Posets => (5, 2, 5),
            Suite::Oracle => (6, 3, 7),
            Suite::Cycles => (6, 3, 7),
            Suite::FixedPoints => (6, 3, 7),
            Suite::Joint => (5, 3, 6),
        }
    }

    fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

/// The lazy chain formula with `4^k` replaced by `5^k`.
fn corrupted(n: usize, k: usize, m: u64) -> BigInt {
    op_lazy(n, k, m).value() / num_traits::pow(BigInt::from(4), k) * num_traits::pow(BigInt::from(5), k)
}

fn formula(mode: Mode, corrupt: bool) -> impl Fn(usize, usize, u64) -> BigInt {
    move |n, k, m| {
        if corrupt && mode == Mode::All {
            corrupted(n, k, m)
        } else {
            chain_count(mode, n, k, m).value()
        }
    }
}

fn run_suite(suite: Suite, n_max: usize, m_max: u64, corrupt: bool) -> shuffle_lab::Result<Report> {
    let mut r = Report::new(suite.name(), format!("n<={n_max}, m<={m_max}"));
    match suite {
        Suite::Decomposition => {
            for mode in Mode::ALL {
                let f = formula(mode, corrupt);
                for n in 1..=n_max {
                    for k in 0..=m_max {
                        for l in 0..=m_max {
                            r.absorb(verify_decomposition_with(n, k, l, mode, &f)?);
                        }
                    }
                }
            }
        }
        Suite::Monotonicity => {
            for mode in Mode::ALL {
                let f = formula(mode, corrupt);
                for n in 1..=n_max {
                    for m in 0..=m_max {
                        r.absorb(check_monotonicity_with(n, m, mode, &f));
                    }
                }
            }
        }
        Suite::Totals => {
            for mode in Mode::ALL {
                for n in 1..=n_max {
                    for m in 0..=m_max {
                        r.absorb(check_antichain_total(n, m, mode));
                    }
                }
            }
        }
        Suite::Product => {
            for model in Model::ALL {
                for n in 1..=n_max {
                    for k in 1..=m_max {
                        for l in 1..=m_max {
                            r.absorb(group_algebra_product_check(n, k, l, model)?);
                        }
                    }
                }
            }
            r.absorb(group_algebra_product_check(n_max, 10, 10, Model::ShelfLazy)?);
        }
        Suite::Posets => {
            for n in 1..=n_max {
                for poset in all_posets(n) {
                    for mode in Mode::ALL {
                        for m in 0..=m_max {
                            r.absorb(verify_fundamental_theorem(&poset, m, mode)?);
                        }
                    }
                }
            }
        }
        Suite::Oracle => {
            for n in 1..=n_max {
                for p in all_permutations(n) {
                    let chain = Poset::chain(&p);
                    for mode in Mode::ALL {
                        for m in 0..=m_max {
                            let count = BigInt::from(enumerate_bounded(&chain, m, mode)?.len());
                            let closed = chain_count(mode, n, p.statistic(mode.statistic()), m).value();
                            r.record(count == closed, || format!("π={p} {mode} m={m}: {closed} vs {count}"));
                        }
                    }
                }
            }
        }
        Suite::Cycles => {
            for n in 1..=n_max {
                for m in 1..=m_max {
                    r.absorb(verify_cycle_distribution(n, m)?);
                }
            }
        }
        Suite::FixedPoints => {
            for n in 1..=n_max {
                for m in 1..=m_max {
                    let (a, b) = (expected_fixed_points(n, m), expected_fixed_points_exhaustive(n, m)?);
                    r.record(a == b, || format!("n={n} m={m}: {a} vs {b}"));
                }
            }
        }
        Suite::Joint => {
            for n in 1..=n_max {
                r.absorb(verify_joint_lpk_cycle(n, m_max)?);
            }
        }
    }
    Ok(r)
}

pub fn run(only: Option<Suite>, n: Option<usize>, m: Option<u64>, corrupt: bool) -> shuffle_lab::Result<Vec<Report>> {
    let suites = match only {
        Some(s) => vec![s],
        None => Suite::ALL.to_vec(),
    };
    suites
        .into_iter()
        .map(|suite| {
            let (n_default, m_default, cap) = suite.limits();
            let n_max = n.unwrap_or(n_default);
            if n_max == 0 || n_max > cap {
                return Err(Error::CapExceeded {
                    what: format!("--n {n_max} for suite {}", suite.name()),
                    limit: cap as u128,
                });
            }
            run_suite(suite, n_max, m.unwrap_or(m_default), corrupt)
        })
        .collect()
}

pub fn render(reports: &[Report], format: Format) -> String {
    match format {
        Format::Json => crate::json_text(&json!(reports)),
        Format::Csv => {
            let mut s = String::from("check,params,cases,passed,failure\n");
            for r in reports {
                let failure = r.failure.as_deref().unwrap_or("").replace('"', "\"\"");
                writeln!(s, "{},\"{}\",{},{},\"{failure}\"", r.check, r.params, r.cases, r.passed()).unwrap();
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                writeln!(s, "{r}").unwrap();
            }
            s
        }
    }
}
