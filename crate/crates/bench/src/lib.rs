//! Fixtures shared by the benchmarks.

use daisylab::coloring::random_coloring;
use daisylab::{Coloring, ColoringHeader};

/// A seeded power coloring of `P([n])`.
pub fn power(n: u32, colors: u16, seed: u64) -> Coloring {
    random_coloring(&ColoringHeader::power(n, colors), seed).expect("within caps")
}

/// A seeded coloring of the `u`-sets of `[n]`.
pub fn uniform(n: u32, u: u32, colors: u16, seed: u64) -> Coloring {
    random_coloring(&ColoringHeader::uniform(n, u, colors), seed).expect("within caps")
}
