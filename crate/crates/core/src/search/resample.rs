//! Constructive local-lemma search: Moser–Tardos resampling over the
//! events "the daisy `D_r(K, M)` is monochromatic".

use num_bigint::BigUint;
use serde::Serialize;

use crate::bounds::big_binomial;
use crate::coloring::{
    draw_color, random_coloring, seeded_rng, Coloring, ColoringHeader, RngInfo, RNG_ALGORITHM,
};
use crate::daisy::{Daisy, DaisySpec};
use crate::error::{ensure, Result};
use crate::ground::binomial;
use crate::verify::find_mono_daisy;

#[derive(Clone, Debug, PartialEq)]
pub enum ResampleOutcome {
    /// A coloring with no monochromatic `(r, m)`-daisy, verified.
    Success {
        coloring: Coloring,
        rounds: u64,
    },
    Failure {
        rounds: u64,
    },
}

impl ResampleOutcome {
    pub fn rounds(&self) -> u64 {
        match self {
            ResampleOutcome::Success { rounds, .. } | ResampleOutcome::Failure { rounds } => {
                *rounds
            }
        }
    }

    pub fn is_success(&self) -> bool {
        matches!(self, ResampleOutcome::Success { .. })
    }
}

/// Starts from `random_coloring(power(n, ℓ), seed)`; while some
/// `(r, m)`-daisy is monochromatic, redraws the colors of all `C(m, r)`
/// edges of the first one found. The same generator stream continues
/// through the resamples, so the run is a function of the seed.
pub fn moser_tardos(
    r: u32,
    m: u32,
    colors: u16,
    n: u32,
    seed: u64,
    max_rounds: u64,
) -> Result<ResampleOutcome> {
    let spec = DaisySpec::any(r, m)?;
    ensure!(colors >= 1, "need at least one color");
    let mut coloring = random_coloring(&ColoringHeader::power(n, colors), seed)?;
    // Replay the initial draws so resampling continues the same stream.
    let mut rng = seeded_rng(seed);
    for _ in 0..coloring.len() {
        draw_color(&mut rng, colors);
    }
    let mut rounds = 0u64;
    loop {
        let Some(w) = find_mono_daisy(&coloring, &spec)? else {
            coloring.set_rng(Some(RngInfo {
                algorithm: RNG_ALGORITHM.to_string(),
                seed,
            }));
            return Ok(ResampleOutcome::Success { coloring, rounds });
        };
        if rounds >= max_rounds {
            return Ok(ResampleOutcome::Failure { rounds });
        }
        rounds += 1;
        let daisy = Daisy::new(w.kernel, w.universe, r)?;
        for edge in daisy.edges() {
            coloring.set_color(edge, draw_color(&mut rng, colors))?;
        }
    }
}

/// Number of `(r, m)`-daisies (any kernel) on `[n]`: `C(n, m) 2^(n - m)`.
pub fn daisy_event_count(m: u32, n: u32) -> u64 {
    if m > n {
        return 0;
    }
    binomial(n, m) << (n - m)
}

/// The dependency bound `C(m, r) C(k + r, r) C(n - k - r, m - r)` on the
/// number of `(r, m, k)`-daisies sharing an edge with a fixed one (counted
/// once per shared edge).
pub fn dependency_degree(r: u32, m: u32, k: u32, n: u32) -> Result<BigUint> {
    ensure!(m >= r && r >= 1, "need m >= r >= 1");
    ensure!(n >= k + m, "need n >= k + m");
    Ok(big_binomial(m as u64, r as u64)
        * big_binomial((k + r) as u64, r as u64)
        * big_binomial((n - k - r) as u64, (m - r) as u64))
}

/// Summary row for reports.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ResampleSummary {
    pub success: bool,
    pub rounds: u64,
    pub events: u64,
}
