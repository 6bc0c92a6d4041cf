//! Exhaustive search for monochromatic daisies and level-homogeneous
//! superdaisies.
//!
//! Kernels are scanned by size, then in colex order; for each kernel the
//! universe is grown one element at a time (largest element first, so the
//! scan visits universes in colex order) and abandoned as soon as two
//! petals of one level disagree in color.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::daisy::{DaisySpec, KernelFilter};
use crate::error::{ensure, Result};
use crate::ground::{enumerate_subsets, SetMask};

/// A monochromatic instance: one color for a daisy, or one color per level
/// (`colors[i - 1]` for petal size `i`) for a level-homogeneous superdaisy.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub kernel: SetMask,
    pub universe: SetMask,
    pub colors: Vec<u64>,
}

struct UniverseSearch<'a> {
    coloring: &'a Coloring,
    kernel: SetMask,
    m: u32,
    levels: RangeInclusive<u32>,
    refs: Vec<Option<u64>>,
}

impl UniverseSearch<'_> {
    /// Extends the partial universe `u` by `e` (smaller than everything in
    /// `u`), checking every new petal. On failure the references set by
    /// this call are rolled back.
    fn extend(&mut self, u: SetMask, e: u32, fresh: &mut Vec<u32>) -> bool {
        let size = u.len() + 1;
        let base = self.kernel.union(SetMask::singleton(e));
        for level in self.levels.clone() {
            if level > size {
                break;
            }
            for q in enumerate_subsets(u, level - 1) {
                let color = self.coloring.color(base.union(q));
                match self.refs[level as usize] {
                    None => {
                        self.refs[level as usize] = Some(color);
                        fresh.push(level);
                    }
                    Some(c) if c != color => {
                        self.rollback(fresh);
                        return false;
                    }
                    Some(_) => {}
                }
            }
        }
        true
    }

    fn rollback(&mut self, fresh: &mut Vec<u32>) {
        for level in fresh.drain(..) {
            self.refs[level as usize] = None;
        }
    }

    fn grow(&mut self, u: SetMask, pool: SetMask) -> Option<SetMask> {
        if u.len() == self.m {
            return Some(u);
        }
        let need = self.m - u.len();
        let mut below = SetMask::EMPTY;
        let mut fresh = Vec::new();
        for e in pool.elements() {
            if below.len() + 1 >= need && self.extend(u, e, &mut fresh) {
                if let Some(found) = self.grow(u.union(SetMask::singleton(e)), below) {
                    return Some(found);
                }
                self.rollback(&mut fresh);
            }
            below = below.union(SetMask::singleton(e));
        }
        None
    }

    fn run(&mut self, available: SetMask, simple: bool) -> Option<SetMask> {
        let mut below = SetMask::EMPTY;
        let mut fresh = Vec::new();
        for top in available.elements() {
            let pool = if simple {
                let floor = self
                    .kernel
                    .intersection(SetMask::interval(1, top - 1))
                    .max_element()
                    .unwrap_or(0);
                below.difference(SetMask::interval(1, floor))
            } else {
                below
            };
            if pool.len() + 1 >= self.m && self.extend(SetMask::EMPTY, top, &mut fresh) {
                if let Some(found) = self.grow(SetMask::singleton(top), pool) {
                    return Some(found);
                }
                self.rollback(&mut fresh);
            }
            below = below.union(SetMask::singleton(top));
        }
        None
    }
}

fn check_shape(c: &Coloring, spec: &DaisySpec, superdaisy: bool) -> Result<()> {
    if let Some(u) = c.uniformity() {
        ensure!(!superdaisy, "superdaisy search needs a power coloring");
        match spec.kernel.fixed_size() {
            Some(k) => ensure!(
                k + spec.r == u,
                "uniform coloring of {u}-sets cannot host edges of size {}",
                k + spec.r
            ),
            None => {
                return Err(crate::Error::Contract(format!(
                    "kernel filter {} needs a power coloring",
                    spec.kernel
                )))
            }
        }
    }
    Ok(())
}

fn scan(c: &Coloring, spec: &DaisySpec, levels: RangeInclusive<u32>) -> Option<Witness> {
    let n = c.n();
    let mut search = UniverseSearch {
        coloring: c,
        kernel: SetMask::EMPTY,
        m: spec.m,
        levels: levels.clone(),
        refs: vec![None; spec.r as usize + 1],
    };
    for k in spec.kernel.kernel_sizes(n, spec.m) {
        for kernel in enumerate_subsets(SetMask::full(n), k) {
            search.kernel = kernel;
            if let Some(universe) = search.run(kernel.complement(n), spec.kernel.requires_simple())
            {
                let colors = levels
                    .clone()
                    .map(|l| search.refs[l as usize].expect("level colored"))
                    .collect();
                return Some(Witness {
                    kernel,
                    universe,
                    colors,
                });
            }
        }
    }
    None
}

/// First monochromatic daisy matching `spec`, in (kernel size, kernel
/// colex, universe colex) order.
///
/// Accepts power colorings with any filter, and uniform colorings of
/// `(k + r)`-sets with a filter that fixes the kernel size to `k`.
pub fn find_mono_daisy(c: &Coloring, spec: &DaisySpec) -> Result<Option<Witness>> {
    check_shape(c, spec, false)?;
    Ok(scan(c, spec, spec.r..=spec.r))
}

/// First level-homogeneous `(r, m)`-superdaisy of a power coloring.
pub fn find_level_homogeneous(c: &Coloring, r: u32, m: u32) -> Result<Option<Witness>> {
    find_level_homogeneous_with(c, &DaisySpec::any(r, m)?)
}

/// [`find_level_homogeneous`] restricted to the kernels `spec` admits.
pub fn find_level_homogeneous_with(c: &Coloring, spec: &DaisySpec) -> Result<Option<Witness>> {
    check_shape(c, spec, true)?;
    Ok(scan(c, spec, 1..=spec.r))
}

/// Replays a witness: shape, kernel filter, and every claimed level's
/// color. A one-color witness is read as a daisy; an `r`-color witness as
/// a superdaisy (the two coincide for `r = 1`).
pub fn verify_witness(c: &Coloring, spec: &DaisySpec, w: &Witness) -> bool {
    let n = c.n();
    let shape_ok = w.kernel.fits(n)
        && w.universe.fits(n)
        && w.kernel.is_disjoint(w.universe)
        && w.universe.len() == spec.m
        && spec.kernel.admits(w.kernel, w.universe);
    if !shape_ok {
        return false;
    }
    let levels: Vec<u32> = if w.colors.len() == 1 {
        vec![spec.r]
    } else if w.colors.len() == spec.r as usize {
        (1..=spec.r).collect()
    } else {
        return false;
    };
    levels.iter().zip(&w.colors).all(|(&level, &color)| {
        enumerate_subsets(w.universe, level).all(|p| {
            let edge = w.kernel.union(p);
            c.covers(edge) && c.color(edge) == color
        })
    })
}

/// Convenience for [`KernelFilter::Any`] daisies.
pub fn has_mono_daisy(c: &Coloring, r: u32, m: u32) -> Result<bool> {
    Ok(find_mono_daisy(c, &DaisySpec::new(r, m, KernelFilter::Any)?)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{random_coloring, ColoringHeader, Domain};
    use crate::construct::size_parity_coloring;

    fn set(v: &[u32]) -> SetMask {
        SetMask::from_elements(v.iter().copied())
    }

    #[test]
    fn level_coloring_always_has_a_daisy() {
        let c = size_parity_coloring(6).unwrap();
        for (r, m) in [(1, 2), (2, 3), (2, 5), (3, 4)] {
            let spec = DaisySpec::any(r, m).unwrap();
            let w = find_mono_daisy(&c, &spec).unwrap().expect("witness");
            assert!(verify_witness(&c, &spec, &w));
            // first in order: empty kernel, colex-least universe
            assert_eq!(w.kernel, SetMask::EMPTY);
            assert_eq!(w.universe, SetMask::full(m));
        }
    }

    #[test]
    fn hand_built_coloring_has_no_r1_m3_daisy() {
        let mut c = Coloring::zeros(4, Domain::Power, 2).unwrap();
        c.set_color(set(&[3]), 1).unwrap();
        c.set_color(set(&[4]), 1).unwrap();
        for pair in [[1, 3], [1, 4], [2, 3], [2, 4]] {
            c.set_color(set(&pair), 1).unwrap();
        }
        let spec = DaisySpec::any(1, 3).unwrap();
        assert_eq!(find_mono_daisy(&c, &spec).unwrap(), None);
    }

    #[test]
    fn too_small_ground_has_nothing() {
        let c = size_parity_coloring(3).unwrap();
        assert_eq!(
            find_mono_daisy(&c, &DaisySpec::any(2, 4).unwrap()).unwrap(),
            None
        );
        assert_eq!(find_level_homogeneous(&c, 2, 4).unwrap(), None);
    }

    #[test]
    fn parity_levels_alternate() {
        let c = size_parity_coloring(5).unwrap();
        let w = find_level_homogeneous(&c, 3, 4).unwrap().unwrap();
        assert_eq!(w.colors, vec![1, 0, 1]);
        assert!(verify_witness(&c, &DaisySpec::any(3, 4).unwrap(), &w));
    }

    #[test]
    fn degenerate_superdaisy_domain() {
        // n = m = r: only K = ∅, M = [m]; homogeneous iff each level is constant.
        let mut c = Coloring::zeros(3, Domain::Power, 2).unwrap();
        c.set_color(set(&[1, 2, 3]), 1).unwrap();
        assert!(find_level_homogeneous(&c, 3, 3).unwrap().is_some());
        c.set_color(set(&[1, 2]), 1).unwrap();
        assert!(find_level_homogeneous(&c, 3, 3).unwrap().is_none());
    }

    #[test]
    fn recolored_witness_is_rejected() {
        let mut c = size_parity_coloring(5).unwrap();
        let spec = DaisySpec::any(2, 3).unwrap();
        let w = find_mono_daisy(&c, &spec).unwrap().unwrap();
        let edge = w.kernel.union(w.universe.window(1, 2));
        c.set_color(edge, 1 - c.color(edge) as u8).unwrap();
        assert!(!verify_witness(&c, &spec, &w));
    }

    #[test]
    fn simple_filter_rejects_interleaved_kernel() {
        let c = Coloring::zeros(5, Domain::Power, 2).unwrap();
        let spec = DaisySpec::new(1, 2, KernelFilter::Simple(None)).unwrap();
        let w = Witness {
            kernel: set(&[3]),
            universe: set(&[2, 4]),
            colors: vec![0],
        };
        assert!(!verify_witness(&c, &spec, &w));
        let any = DaisySpec::any(1, 2).unwrap();
        assert!(verify_witness(&c, &any, &w));
    }

    #[test]
    fn mode_mismatch_is_a_contract_error() {
        let c = random_coloring(&ColoringHeader::uniform(6, 3, 2), 1).unwrap();
        assert!(find_mono_daisy(&c, &DaisySpec::any(2, 3).unwrap()).is_err());
        let spec = DaisySpec::new(2, 3, KernelFilter::FixedSize(2)).unwrap();
        assert!(find_mono_daisy(&c, &spec).is_err());
        let spec = DaisySpec::new(2, 3, KernelFilter::FixedSize(1)).unwrap();
        assert!(find_mono_daisy(&c, &spec).is_ok());
        assert!(find_level_homogeneous_with(&c, &spec).is_err());
    }

    #[test]
    fn simple_search_stays_inside_gaps() {
        let c = random_coloring(&ColoringHeader::power(9, 2), 17).unwrap();
        let spec = DaisySpec::new(1, 3, KernelFilter::Simple(None)).unwrap();
        if let Some(w) = find_mono_daisy(&c, &spec).unwrap() {
            assert!(verify_witness(&c, &spec, &w));
        }
    }
}
