//! Daisies, superdaisies and the kernel filters used to select them.
//!
//! A daisy `D_r(K, M)` is the set system `{K ∪ P : P ⊆ M, |P| = r}` for
//! disjoint `K` (the kernel) and `M` (the universe of petals).

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Result};
use crate::ground::{binomial, enumerate_subsets, SetMask, Subsets};

/// `D_r(K, M)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Daisy {
    pub kernel: SetMask,
    pub universe: SetMask,
    pub petal_size: u32,
}

impl Daisy {
    pub fn new(kernel: SetMask, universe: SetMask, petal_size: u32) -> Result<Daisy> {
        ensure!(petal_size >= 1, "petal size must be at least 1");
        ensure!(
            kernel.is_disjoint(universe),
            "kernel {kernel} meets universe {universe}"
        );
        ensure!(
            petal_size <= universe.len(),
            "petal size {petal_size} exceeds universe size {}",
            universe.len()
        );
        Ok(Daisy {
            kernel,
            universe,
            petal_size,
        })
    }

    pub fn edge_count(&self) -> u64 {
        binomial(self.universe.len(), self.petal_size)
    }

    /// Uniformity of the edges, `|K| + r`.
    pub fn edge_size(&self) -> u32 {
        self.kernel.len() + self.petal_size
    }

    /// `K ∪ P` for every petal `P`, petals in colex order.
    pub fn edges(&self) -> impl Iterator<Item = SetMask> + '_ {
        let kernel = self.kernel;
        enumerate_subsets(self.universe, self.petal_size).map(move |p| kernel.union(p))
    }

    /// The `K = K0 ∪ K1` split with `K0 < M < K1`, if the daisy is simple.
    pub fn simple_split(&self) -> Option<(SetMask, SetMask)> {
        simple_split(self.kernel, self.universe)
    }

    pub fn is_simple(&self) -> bool {
        self.simple_split().is_some()
    }

    /// The largest run of universe elements lying between two consecutive
    /// kernel elements (leftmost run on ties), as a simple daisy with the
    /// same kernel. Its universe has at least `ceil(|M| / (|K| + 1))`
    /// elements, and every edge of it is an edge of `self`.
    ///
    /// `None` when that run has fewer than `r` elements (no petal fits);
    /// this cannot happen once `ceil(|M| / (|K| + 1)) >= r`.
    pub fn simple_core(&self) -> Option<Daisy> {
        let mut best = SetMask::EMPTY;
        let mut run = SetMask::EMPTY;
        let span = self.kernel.union(self.universe);
        for e in span.elements() {
            if self.kernel.contains(e) {
                if run.len() > best.len() {
                    best = run;
                }
                run = SetMask::EMPTY;
            } else {
                run = run.union(SetMask::singleton(e));
            }
        }
        if run.len() > best.len() {
            best = run;
        }
        (best.len() >= self.petal_size).then_some(Daisy {
            kernel: self.kernel,
            universe: best,
            petal_size: self.petal_size,
        })
    }
}

/// Splits `kernel` into the parts below `min(universe)` and above
/// `max(universe)`; `None` if some kernel element falls inside the span.
pub fn simple_split(kernel: SetMask, universe: SetMask) -> Option<(SetMask, SetMask)> {
    let (Some(lo), Some(hi)) = (universe.min_element(), universe.max_element()) else {
        return Some((kernel, SetMask::EMPTY));
    };
    let below = kernel.intersection(SetMask::interval(1, lo - 1));
    let above = kernel.intersection(SetMask::interval(hi + 1, 64));
    (below.union(above) == kernel).then_some((below, above))
}

/// `D_{<=r}(K, M)`: every `X` with `K ⊆ X ⊆ K ∪ M` and `|X| <= |K| + r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Superdaisy {
    pub kernel: SetMask,
    pub universe: SetMask,
    pub max_petal: u32,
}

impl Superdaisy {
    pub fn new(kernel: SetMask, universe: SetMask, max_petal: u32) -> Result<Superdaisy> {
        ensure!(max_petal >= 1, "maximum petal size must be at least 1");
        ensure!(
            kernel.is_disjoint(universe),
            "kernel {kernel} meets universe {universe}"
        );
        ensure!(
            max_petal <= universe.len(),
            "maximum petal size exceeds universe size"
        );
        Ok(Superdaisy {
            kernel,
            universe,
            max_petal,
        })
    }

    /// The daisy of petal size `i`, for `1 <= i <= r`.
    pub fn level(&self, i: u32) -> Daisy {
        assert!((1..=self.max_petal).contains(&i));
        Daisy {
            kernel: self.kernel,
            universe: self.universe,
            petal_size: i,
        }
    }

    /// The kernel followed by every level, smallest first.
    pub fn members(&self) -> impl Iterator<Item = SetMask> + '_ {
        (0..=self.max_petal).flat_map(move |i| {
            enumerate_subsets(self.universe, i).map(move |p| self.kernel.union(p))
        })
    }

    pub fn member_count(&self) -> u64 {
        (0..=self.max_petal)
            .map(|i| binomial(self.universe.len(), i))
            .sum()
    }
}

/// Which kernels a daisy family admits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind", content = "k")]
pub enum KernelFilter {
    Any,
    Empty,
    FixedSize(u32),
    /// Simple daisies, optionally with a fixed kernel size.
    Simple(Option<u32>),
}

impl KernelFilter {
    /// Parses `any`, `empty`, `k=K`, `simple` or `simple-k=K`.
    pub fn parse(s: &str) -> Result<KernelFilter> {
        let parse_k = |v: &str| {
            v.parse::<u32>()
                .map_err(|_| crate::Error::Contract(format!("bad kernel size in {s:?}")))
        };
        Ok(match s {
            "any" => KernelFilter::Any,
            "empty" => KernelFilter::Empty,
            "simple" => KernelFilter::Simple(None),
            _ => {
                if let Some(v) = s.strip_prefix("simple-k=") {
                    KernelFilter::Simple(Some(parse_k(v)?))
                } else if let Some(v) = s.strip_prefix("k=") {
                    KernelFilter::FixedSize(parse_k(v)?)
                } else {
                    return Err(crate::Error::Contract(format!(
                        "unknown kernel filter {s:?}"
                    )));
                }
            }
        })
    }

    pub fn fixed_size(self) -> Option<u32> {
        match self {
            KernelFilter::Empty => Some(0),
            KernelFilter::FixedSize(k) | KernelFilter::Simple(Some(k)) => Some(k),
            _ => None,
        }
    }

    pub fn requires_simple(self) -> bool {
        matches!(self, KernelFilter::Simple(_))
    }

    /// Kernel sizes that can host a disjoint universe of size `m` in `[n]`.
    pub fn kernel_sizes(self, n: u32, m: u32) -> RangeInclusive<u32> {
        let none = RangeInclusive::new(1, 0);
        if m > n {
            return none;
        }
        let max = n - m;
        match self.fixed_size() {
            Some(k) if k <= max => k..=k,
            Some(_) => none,
            None => 0..=max,
        }
    }

    pub fn admits(self, kernel: SetMask, universe: SetMask) -> bool {
        if let Some(k) = self.fixed_size() {
            if kernel.len() != k {
                return false;
            }
        }
        !self.requires_simple() || simple_split(kernel, universe).is_some()
    }
}

impl std::fmt::Display for KernelFilter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KernelFilter::Any => write!(f, "any"),
            KernelFilter::Empty => write!(f, "empty"),
            KernelFilter::FixedSize(k) => write!(f, "k={k}"),
            KernelFilter::Simple(None) => write!(f, "simple"),
            KernelFilter::Simple(Some(k)) => write!(f, "simple-k={k}"),
        }
    }
}

/// Parameters of a daisy family: petal size `r`, universe size `m`, and a
/// kernel filter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DaisySpec {
    pub r: u32,
    pub m: u32,
    pub kernel: KernelFilter,
}

impl DaisySpec {
    pub fn new(r: u32, m: u32, kernel: KernelFilter) -> Result<DaisySpec> {
        ensure!(r >= 1, "petal size r must be at least 1");
        ensure!(m >= r, "universe size m={m} is below petal size r={r}");
        Ok(DaisySpec { r, m, kernel })
    }

    pub fn any(r: u32, m: u32) -> Result<DaisySpec> {
        DaisySpec::new(r, m, KernelFilter::Any)
    }

    /// Every admitted `(K, M)` on `[n]`: kernel sizes ascending, kernels in
    /// colex order, universes in colex order.
    pub fn placements(&self, n: u32) -> Placements {
        Placements::new(*self, n)
    }
}

/// Iterator over the `(kernel, universe)` pairs a spec admits on `[n]`.
pub struct Placements {
    spec: DaisySpec,
    n: u32,
    sizes: std::ops::RangeInclusive<u32>,
    kernels: Option<Subsets>,
    kernel: SetMask,
    universes: Option<Subsets>,
}

impl Placements {
    fn new(spec: DaisySpec, n: u32) -> Placements {
        Placements {
            spec,
            n,
            sizes: spec.kernel.kernel_sizes(n, spec.m),
            kernels: None,
            kernel: SetMask::EMPTY,
            universes: None,
        }
    }
}

impl Iterator for Placements {
    type Item = (SetMask, SetMask);

    fn next(&mut self) -> Option<(SetMask, SetMask)> {
        loop {
            if let Some(universes) = self.universes.as_mut() {
                for universe in universes.by_ref() {
                    if self.spec.kernel.admits(self.kernel, universe) {
                        return Some((self.kernel, universe));
                    }
                }
                self.universes = None;
            }
            if let Some(kernels) = self.kernels.as_mut() {
                if let Some(kernel) = kernels.next() {
                    self.kernel = kernel;
                    self.universes =
                        Some(enumerate_subsets(kernel.complement(self.n), self.spec.m));
                    continue;
                }
                self.kernels = None;
            }
            let k = self.sizes.next()?;
            self.kernels = Some(enumerate_subsets(SetMask::full(self.n), k));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u32]) -> SetMask {
        SetMask::from_elements(v.iter().copied())
    }

    #[test]
    fn empty_kernel_daisy_is_complete_graph() {
        let d = Daisy::new(SetMask::EMPTY, set(&[1, 2, 3]), 2).unwrap();
        let edges: Vec<_> = d.edges().collect();
        assert_eq!(edges, vec![set(&[1, 2]), set(&[1, 3]), set(&[2, 3])]);
    }

    #[test]
    fn kernel_is_added_to_each_petal() {
        let d = Daisy::new(set(&[5]), set(&[1, 2, 3]), 2).unwrap();
        let edges: Vec<_> = d.edges().collect();
        assert_eq!(
            edges,
            vec![set(&[1, 2, 5]), set(&[1, 3, 5]), set(&[2, 3, 5])]
        );
        let d = Daisy::new(set(&[2]), set(&[1, 3, 4, 5]), 3).unwrap();
        assert_eq!(d.edges().count(), 4);
        assert!(d.edges().all(|e| e.len() == 4));
    }

    #[test]
    fn invalid_daisies_rejected() {
        assert!(Daisy::new(set(&[1]), set(&[1, 2]), 1).is_err());
        assert!(Daisy::new(SetMask::EMPTY, set(&[1, 2]), 0).is_err());
        assert!(Daisy::new(SetMask::EMPTY, set(&[1, 2]), 3).is_err());
        assert!(DaisySpec::new(0, 3, KernelFilter::Any).is_err());
        assert!(DaisySpec::new(3, 2, KernelFilter::Any).is_err());
    }

    #[test]
    fn simple_checks() {
        let d = Daisy::new(set(&[1, 9]), set(&[3, 4, 5]), 2).unwrap();
        assert_eq!(d.simple_split(), Some((set(&[1]), set(&[9]))));
        let d = Daisy::new(set(&[4]), set(&[3, 5]), 1).unwrap();
        assert!(!d.is_simple());
        let d = Daisy::new(SetMask::EMPTY, set(&[2, 7]), 1).unwrap();
        assert_eq!(d.simple_split(), Some((SetMask::EMPTY, SetMask::EMPTY)));
    }

    #[test]
    fn simple_core_examples() {
        let d = Daisy::new(set(&[3]), set(&[1, 2, 4, 5, 6]), 2).unwrap();
        assert_eq!(d.simple_core().unwrap().universe, set(&[4, 5, 6]));
        let d = Daisy::new(SetMask::EMPTY, set(&[2, 4, 8]), 2).unwrap();
        assert_eq!(d.simple_core(), Some(d));
        let d = Daisy::new(set(&[2, 4]), set(&[1, 3, 5]), 2).unwrap();
        assert_eq!(d.simple_core(), None);
        let d = Daisy::new(set(&[2, 5]), set(&[1, 3, 4, 6]), 1).unwrap();
        assert_eq!(d.simple_core().unwrap().universe, set(&[3, 4]));
        // leftmost of two equal runs
        let d = Daisy::new(set(&[3]), set(&[1, 2, 4, 5]), 1).unwrap();
        assert_eq!(d.simple_core().unwrap().universe, set(&[1, 2]));
    }

    #[test]
    fn superdaisy_counts() {
        let s = Superdaisy::new(set(&[1]), set(&[2, 3, 4, 5]), 2).unwrap();
        assert_eq!(s.member_count(), 1 + 4 + 6);
        assert_eq!(s.members().count() as u64, s.member_count());
        assert!(s.members().all(|x| set(&[1]).is_subset(x) && x.len() <= 3));
    }

    #[test]
    fn filter_parsing_round_trips() {
        for f in ["any", "empty", "k=2", "simple", "simple-k=1"] {
            assert_eq!(KernelFilter::parse(f).unwrap().to_string(), f);
        }
        assert!(KernelFilter::parse("kernel").is_err());
    }

    #[test]
    fn placement_counts() {
        // ANY: C(n, m) * 2^(n - m)
        let spec = DaisySpec::any(2, 3).unwrap();
        assert_eq!(spec.placements(5).count(), 10 * 4);
        let spec = DaisySpec::new(1, 2, KernelFilter::FixedSize(1)).unwrap();
        assert_eq!(spec.placements(4).count(), 4 * 3);
        assert_eq!(DaisySpec::any(2, 5).unwrap().placements(4).count(), 0);
    }
}
