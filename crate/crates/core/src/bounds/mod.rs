//! Exact evaluation of the finite bounds: the local-lemma threshold, tower
//! functions, and two certified inequalities.

pub mod binom;
pub mod interval;
pub mod lll;
pub mod tower;

pub use binom::big_binomial;
pub use interval::{
    check_lemma_comput, lemma_sides, parse_rational, FixedPoint, Interval, LemmaSides,
};
pub use lll::{inverse_probability, is_threshold, lll_condition, lll_threshold, LllParams};
pub use tower::{
    btower, btower_with, check_bt_dominates_t, check_central_binomial_two_thirds, log2_big, tower,
    tower_with, TowerValue, DEFAULT_BIT_BUDGET,
};
