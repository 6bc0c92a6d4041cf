//! Exhaustive decision of small daisy Ramsey numbers.
//!
//! The relevant sets (those that can be edges of an admitted daisy) are
//! colored one at a time in (size, colex) order. Every event, a daisy or a
//! superdaisy given as groups of edge indices, is attached to its largest
//! edge index; after assigning that set the event is checked and the
//! branch pruned if it became monochromatic. The first relevant set is
//! fixed to color 0, which is sound under global color permutation.

use std::collections::HashMap;
use std::ops::RangeInclusive;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::coloring::{Coloring, Domain};
use crate::daisy::{DaisySpec, KernelFilter};
use crate::error::{ensure, Error, Result};
use crate::ground::{enumerate_subsets, SetMask};
use crate::verify::{find_level_homogeneous_with, find_mono_daisy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Daisy,
    Superdaisy,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamseyQuery {
    pub spec: DaisySpec,
    pub colors: u16,
    pub variant: Variant,
    pub n_range: RangeInclusive<u32>,
}

impl RamseyQuery {
    pub fn new(
        spec: DaisySpec,
        colors: u16,
        variant: Variant,
        n_range: RangeInclusive<u32>,
    ) -> Result<Self> {
        ensure!(colors >= 2, "need at least two colors");
        ensure!(colors <= 256, "at most 256 colors");
        ensure!(!n_range.is_empty(), "empty ground size range");
        Ok(RamseyQuery {
            spec,
            colors,
            variant,
            n_range,
        })
    }

    /// Whether certificates are colorings of `(k + r)`-sets.
    fn uniform_uniformity(&self) -> Option<u32> {
        match (self.variant, self.spec.kernel) {
            (Variant::Daisy, KernelFilter::FixedSize(k) | KernelFilter::Simple(Some(k))) => {
                Some(k + self.spec.r)
            }
            _ => None,
        }
    }
}

/// Limits on one search. `None` means unlimited.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub time: Option<Duration>,
    pub nodes: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Budget {
        Budget::default()
    }

    pub fn seconds(s: f64) -> Budget {
        Budget {
            time: Some(Duration::from_secs_f64(s)),
            nodes: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Proof {
    /// The pruned search tree was exhausted after visiting this many nodes.
    Exhaustion { nodes: u64 },
    /// Implied by unavoidability at a smaller ground size (a coloring of
    /// `[n]` restricts to `[n0]`, and every daisy there is one here).
    Monotone { from: u32 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Avoidable { certificate: Coloring, nodes: u64 },
    Unavoidable(Proof),
    Unknown { nodes: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroundOutcome {
    pub n: u32,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome {
    pub per_n: Vec<GroundOutcome>,
    /// The least unavoidable `n`, when the range brackets it.
    pub value: Option<u32>,
}

/// The search problem for one ground size.
pub struct Instance {
    pub n: u32,
    pub sets: Vec<SetMask>,
    /// Events whose largest edge index is `i`, each a list of groups that
    /// must all be monochromatic for the event to occur.
    ending_at: Vec<Vec<Vec<Vec<u32>>>>,
    colors: u8,
    uniform: Option<u32>,
}

impl Instance {
    pub fn build(q: &RamseyQuery, n: u32) -> Result<Instance> {
        let spec = q.spec;
        let levels: RangeInclusive<u32> = match q.variant {
            Variant::Daisy => spec.r..=spec.r,
            Variant::Superdaisy => 1..=spec.r,
        };
        let kernel_sizes = spec.kernel.kernel_sizes(n, spec.m);
        let mut sizes: Vec<u32> = Vec::new();
        if let Some(u) = q.uniform_uniformity() {
            if u <= n {
                sizes.push(u);
            }
        } else {
            for k in kernel_sizes.clone() {
                for l in levels.clone() {
                    sizes.push(k + l);
                }
            }
            sizes.sort_unstable();
            sizes.dedup();
        }
        let mut sets = Vec::new();
        for &s in &sizes {
            sets.extend(enumerate_subsets(SetMask::full(n), s));
        }
        let index: HashMap<SetMask, u32> = sets
            .iter()
            .enumerate()
            .map(|(i, &s)| (s, i as u32))
            .collect();
        let mut ending_at: Vec<Vec<Vec<Vec<u32>>>> = vec![Vec::new(); sets.len()];
        for (kernel, universe) in spec.placements(n) {
            let groups: Vec<Vec<u32>> = levels
                .clone()
                .map(|l| {
                    enumerate_subsets(universe, l)
                        .map(|p| index[&kernel.union(p)])
                        .collect()
                })
                .collect();
            let last = groups
                .iter()
                .flatten()
                .copied()
                .max()
                .expect("nonempty event");
            ending_at[last as usize].push(groups);
        }
        Ok(Instance {
            n,
            sets,
            ending_at,
            colors: q.colors as u8,
            uniform: q.uniform_uniformity(),
        })
    }

    pub fn relevant_count(&self) -> usize {
        self.sets.len()
    }

    pub fn event_count(&self) -> usize {
        self.ending_at.iter().map(Vec::len).sum()
    }

    /// Whether assigning index `i` (with all lower indices assigned) makes
    /// some event occur.
    #[inline]
    fn violates(&self, i: usize, colors: &[u8]) -> bool {
        self.ending_at[i].iter().any(|groups| {
            groups.iter().all(|g| {
                let c = colors[g[0] as usize];
                g.iter().all(|&e| colors[e as usize] == c)
            })
        })
    }

    fn certificate(&self, assignment: &[u8]) -> Result<Coloring> {
        let mut c = match self.uniform {
            Some(u) => Coloring::zeros(self.n, Domain::Uniform(u), self.colors as u16)?,
            None => Coloring::zeros(self.n, Domain::Power, self.colors as u16)?,
        };
        for (&set, &color) in self.sets.iter().zip(assignment) {
            c.set_color(set, color)?;
        }
        Ok(c)
    }
}

struct Control {
    deadline: Option<Instant>,
    node_limit: Option<u64>,
    nodes: AtomicU64,
    out_of_budget: AtomicBool,
    /// Least prefix index that produced a certificate.
    best: AtomicUsize,
}

impl Control {
    fn charge(&self, local: &mut u64) -> bool {
        *local += 1;
        if *local & 0x3ff == 0 {
            let total = self.nodes.fetch_add(0x400, Ordering::Relaxed) + 0x400;
            let over_nodes = self.node_limit.is_some_and(|l| total > l);
            let over_time = self.deadline.is_some_and(|d| Instant::now() >= d);
            if over_nodes || over_time {
                self.out_of_budget.store(true, Ordering::Relaxed);
            }
        }
        !self.out_of_budget.load(Ordering::Relaxed)
    }

    fn flush(&self, local: u64) {
        self.nodes.fetch_add(local & 0x3ff, Ordering::Relaxed);
    }
}

enum Step {
    Found,
    Exhausted,
    Aborted,
}

struct Walker<'a> {
    inst: &'a Instance,
    ctl: &'a Control,
    /// Prefix index this walker is serving; aborts once a lower one wins.
    ticket: usize,
    local: u64,
    colors: Vec<u8>,
}

impl Walker<'_> {
    fn dfs(&mut self, depth: usize, stop_at: usize, sink: &mut dyn FnMut(&[u8]) -> bool) -> Step {
        if depth == stop_at {
            return if sink(&self.colors[..depth]) {
                Step::Found
            } else {
                Step::Exhausted
            };
        }
        let palette = if depth == 0 { 1 } else { self.inst.colors };
        for color in 0..palette {
            if !self.ctl.charge(&mut self.local)
                || self.ctl.best.load(Ordering::Relaxed) < self.ticket
            {
                return Step::Aborted;
            }
            self.colors[depth] = color;
            if self.inst.violates(depth, &self.colors) {
                continue;
            }
            match self.dfs(depth + 1, stop_at, sink) {
                Step::Exhausted => {}
                other => return other,
            }
        }
        Step::Exhausted
    }
}

/// Search settings for [`exact_ramsey`].
#[derive(Clone, Copy, Debug)]
pub struct ExactOptions {
    pub budget: Budget,
    pub threads: usize,
    /// Depth at which the tree is cut into independent subtrees.
    pub split_depth: usize,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            budget: Budget::unlimited(),
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            split_depth: 16,
        }
    }
}

enum Decision {
    Certificate(Vec<u8>, u64),
    Exhausted(u64),
    Unknown(u64),
}

fn decide(inst: &Instance, opts: &ExactOptions, start: Instant) -> Decision {
    let ctl = Control {
        deadline: opts.budget.time.map(|t| start + t),
        node_limit: opts.budget.nodes,
        nodes: AtomicU64::new(0),
        out_of_budget: AtomicBool::new(false),
        best: AtomicUsize::new(usize::MAX),
    };
    let total = inst.relevant_count();
    let split = opts.split_depth.min(total);

    // Phase 1: valid prefixes of length `split`, in lexicographic order.
    let mut prefixes: Vec<Vec<u8>> = Vec::new();
    let mut walker = Walker {
        inst,
        ctl: &ctl,
        ticket: 0,
        local: 0,
        colors: vec![0; total],
    };
    let step = walker.dfs(0, split, &mut |p| {
        prefixes.push(p.to_vec());
        false
    });
    ctl.flush(walker.local);
    if matches!(step, Step::Aborted) {
        return Decision::Unknown(ctl.nodes.load(Ordering::Relaxed));
    }
    if split == total {
        let nodes = ctl.nodes.load(Ordering::Relaxed);
        return match prefixes.into_iter().next() {
            Some(first) => Decision::Certificate(first, nodes),
            None => Decision::Exhausted(nodes),
        };
    }

    // Phase 2: subtrees on a worker pool; the least prefix index wins.
    let next = AtomicUsize::new(0);
    let found: Mutex<Option<(usize, Vec<u8>)>> = Mutex::new(None);
    let threads = opts.threads.max(1).min(prefixes.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| {
                let mut walker = Walker {
                    inst,
                    ctl: &ctl,
                    ticket: 0,
                    local: 0,
                    colors: vec![0; total],
                };
                loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= prefixes.len() || ctl.best.load(Ordering::Relaxed) < i {
                        break;
                    }
                    if ctl.out_of_budget.load(Ordering::Relaxed) {
                        break;
                    }
                    walker.ticket = i;
                    walker.colors[..split].copy_from_slice(&prefixes[i]);
                    let mut leaf = None;
                    let step = walker.dfs(split, total, &mut |c| {
                        leaf = Some(c.to_vec());
                        true
                    });
                    if let (Step::Found, Some(leaf)) = (step, leaf) {
                        let mut slot = found.lock().expect("result lock");
                        if slot.as_ref().is_none_or(|(j, _)| i < *j) {
                            *slot = Some((i, leaf));
                        }
                        ctl.best.fetch_min(i, Ordering::Relaxed);
                    }
                }
                ctl.flush(walker.local);
            });
        }
    });
    let nodes = ctl.nodes.load(Ordering::Relaxed);
    match found.into_inner().expect("result lock") {
        // Least among finished prefixes; only a budget stop can leave a
        // lower prefix unfinished.
        Some((_, leaf)) => Decision::Certificate(leaf, nodes),
        None if ctl.out_of_budget.load(Ordering::Relaxed) => Decision::Unknown(nodes),
        None => Decision::Exhausted(nodes),
    }
}

/// Re-checks a certificate with the verifier.
fn certificate_is_clean(q: &RamseyQuery, c: &Coloring) -> Result<bool> {
    Ok(match q.variant {
        Variant::Daisy => find_mono_daisy(c, &q.spec)?.is_none(),
        Variant::Superdaisy => find_level_homogeneous_with(c, &q.spec)?.is_none(),
    })
}

/// Decides avoidability for every `n` in the query range.
///
/// Avoidable verdicts carry the lexicographically least certificate (in
/// relevant-set order), re-verified; unavoidable ones come from exhausting
/// the pruned tree, or by monotonicity once a smaller `n` was unavoidable.
/// Budget exhaustion yields `Unknown`, never a guess.
pub fn exact_ramsey(q: &RamseyQuery, opts: &ExactOptions) -> Result<SearchOutcome> {
    let start = Instant::now();
    let mut per_n = Vec::new();
    let mut first_unavoidable: Option<u32> = None;
    for n in q.n_range.clone() {
        if let Some(from) = first_unavoidable {
            per_n.push(GroundOutcome {
                n,
                verdict: Verdict::Unavoidable(Proof::Monotone { from }),
            });
            continue;
        }
        let inst = Instance::build(q, n)?;
        let verdict = match decide(&inst, opts, start) {
            Decision::Certificate(assignment, nodes) => {
                let certificate = inst.certificate(&assignment)?;
                if !certificate_is_clean(q, &certificate)? {
                    return Err(Error::Internal(format!(
                        "certificate at n={n} failed re-verification"
                    )));
                }
                Verdict::Avoidable { certificate, nodes }
            }
            Decision::Exhausted(nodes) => {
                first_unavoidable = Some(n);
                Verdict::Unavoidable(Proof::Exhaustion { nodes })
            }
            Decision::Unknown(nodes) => Verdict::Unknown { nodes },
        };
        per_n.push(GroundOutcome { n, verdict });
    }
    let value = first_unavoidable.filter(|&n0| {
        n0 <= q.spec.m
            || per_n
                .iter()
                .any(|o| o.n + 1 == n0 && matches!(o.verdict, Verdict::Avoidable { .. }))
    });
    Ok(SearchOutcome { per_n, value })
}
