//! Statistic count tables, distances to uniformity, and cycle structure.

mod counts;
mod cycles;
mod distance;

pub use counts::{count_table, des_counts, lpk_counts, pk_counts, CountTable};
pub use cycles::{
    cycle_distribution, cycle_distribution_exhaustive, expected_fixed_points,
    expected_fixed_points_exhaustive, f_im, mobius, verify_cycle_distribution,
    verify_joint_lpk_cycle, CycleSeries, SERIES_CAP,
};
pub use distance::{
    asymptotic_compare, linf_distance, linf_distance_full, sep_distance, sep_distance_full,
    tv_distance, tv_table, AsymptoticReport, TvCell, TABLE_M_VALUES,
};
