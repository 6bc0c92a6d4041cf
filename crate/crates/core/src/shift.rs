//! Shift graphs, exact chromatic numbers of small graphs, and arc colorings
//! without long monochromatic directed paths.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::coloring::Coloring;
use crate::error::{ensure, Error, Result};
use crate::ground::{binomial, colex_rank, enumerate_subsets, SetMask};

/// Largest vertex or arc count `build_shift_graph` will materialize.
pub const MAX_SHIFT_SIZE: u64 = 1 << 24;
/// Vertex cap of the exact chromatic solver.
pub const MAX_EXACT_VERTICES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", try_from = "RawDigraph")]
pub struct Digraph {
    vertex_count: u32,
    arcs: Vec<[u32; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<u64>>,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct RawDigraph {
    vertex_count: u32,
    arcs: Vec<[u32; 2]>,
    #[serde(default)]
    labels: Option<Vec<u64>>,
}

impl TryFrom<RawDigraph> for Digraph {
    type Error = Error;

    fn try_from(raw: RawDigraph) -> Result<Digraph> {
        Digraph::new(raw.vertex_count, raw.arcs, raw.labels)
    }
}

impl Digraph {
    pub fn new(
        vertex_count: u32,
        arcs: Vec<[u32; 2]>,
        labels: Option<Vec<u64>>,
    ) -> Result<Digraph> {
        for &[u, v] in &arcs {
            ensure!(u != v, "self-loop at vertex {u}");
            ensure!(
                u < vertex_count && v < vertex_count,
                "arc ({u}, {v}) leaves [0, {vertex_count})"
            );
        }
        if let Some(l) = &labels {
            ensure!(
                l.len() == vertex_count as usize,
                "{} labels for {vertex_count} vertices",
                l.len()
            );
        }
        Ok(Digraph {
            vertex_count,
            arcs,
            labels,
        })
    }

    /// Both orientations of every pair of distinct vertices.
    pub fn complete_symmetric(vertex_count: u32) -> Digraph {
        let mut arcs = Vec::new();
        for u in 0..vertex_count {
            for v in 0..vertex_count {
                if u != v {
                    arcs.push([u, v]);
                }
            }
        }
        Digraph {
            vertex_count,
            arcs,
            labels: None,
        }
    }

    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }

    pub fn arcs(&self) -> &[[u32; 2]] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn labels(&self) -> Option<&[u64]> {
        self.labels.as_deref()
    }
}

/// `Sh(n, r)`: vertex `i` is the `r`-set of colex rank `i`, and arc `j`
/// joins `{x_1..x_r}` to `{x_2..x_{r+1}}` for the `(r + 1)`-set of colex
/// rank `j`.
pub fn build_shift_graph(n: u32, r: u32) -> Result<Digraph> {
    ensure!(r >= 1 && r <= n, "need 1 <= r <= n, got r = {r}, n = {n}");
    ensure!(n <= 64, "ground size {n} exceeds 64");
    let vertices = binomial(n, r);
    let arc_count = binomial(n, r + 1);
    if vertices > MAX_SHIFT_SIZE || arc_count > MAX_SHIFT_SIZE {
        return Err(Error::Capacity(format!(
            "Sh({n}, {r}) has {vertices} vertices and {arc_count} arcs"
        )));
    }
    if r == n {
        return Ok(Digraph {
            vertex_count: 1,
            arcs: Vec::new(),
            labels: Some(vec![0]),
        });
    }
    let arcs = enumerate_subsets(SetMask::full(n), r + 1)
        .map(|chain| {
            let top = SetMask::singleton(chain.max_element().expect("nonempty"));
            let bottom = SetMask::singleton(chain.min_element().expect("nonempty"));
            [
                colex_rank(chain.difference(top)) as u32,
                colex_rank(chain.difference(bottom)) as u32,
            ]
        })
        .collect();
    Ok(Digraph {
        vertex_count: vertices as u32,
        arcs,
        labels: Some((0..vertices).collect()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VertexColoring {
    pub colors: Vec<u32>,
    pub color_count: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ArcColoring {
    pub colors: Vec<u32>,
    pub color_count: u32,
}

/// Proper for the underlying undirected graph.
pub fn is_proper(g: &Digraph, vc: &VertexColoring) -> bool {
    vc.colors.len() == g.vertex_count as usize
        && vc.colors.iter().all(|&c| c < vc.color_count)
        && g.arcs
            .iter()
            .all(|&[u, v]| vc.colors[u as usize] != vc.colors[v as usize])
}

fn adjacency(g: &Digraph) -> Vec<u64> {
    let mut adj = vec![0u64; g.vertex_count as usize];
    for &[u, v] in &g.arcs {
        adj[u as usize] |= 1 << v;
        adj[v as usize] |= 1 << u;
    }
    adj
}

fn greedy_clique(adj: &[u64]) -> u32 {
    let mut best = 0;
    for start in 0..adj.len() {
        let mut clique = 1u64 << start;
        let mut candidates = adj[start];
        while candidates != 0 {
            // most connected candidate first
            let v = (0..adj.len())
                .filter(|&v| candidates >> v & 1 == 1)
                .max_by_key(|&v| ((adj[v] & candidates).count_ones(), std::cmp::Reverse(v)))
                .expect("nonempty");
            clique |= 1 << v;
            candidates &= adj[v];
        }
        best = best.max(clique.count_ones());
    }
    best
}

struct Dsatur<'a> {
    adj: &'a [u64],
    colors: Vec<Option<u32>>,
    /// `used[v]` has bit `c` set when a neighbour of `v` has color `c`.
    used: Vec<u64>,
}

impl Dsatur<'_> {
    fn pick(&self) -> Option<usize> {
        let uncolored: u64 = self
            .colors
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_none())
            .fold(0, |acc, (v, _)| acc | 1 << v);
        (0..self.adj.len())
            .filter(|&v| self.colors[v].is_none())
            .max_by_key(|&v| {
                (
                    self.used[v].count_ones(),
                    (self.adj[v] & uncolored).count_ones(),
                    std::cmp::Reverse(v),
                )
            })
    }

    fn assign(&mut self, v: usize, c: Option<u32>) {
        self.colors[v] = c;
        self.used = vec![0; self.adj.len()];
        for (u, cu) in self.colors.iter().enumerate() {
            if let Some(cu) = cu {
                let mut nb = self.adj[u];
                while nb != 0 {
                    let w = nb.trailing_zeros() as usize;
                    self.used[w] |= 1 << cu;
                    nb &= nb - 1;
                }
            }
        }
    }

    fn solve(&mut self, k: u32, opened: u32) -> bool {
        let Some(v) = self.pick() else { return true };
        // A fresh color is interchangeable with any other fresh color.
        for c in 0..k.min(opened + 1) {
            if self.used[v] >> c & 1 == 0 {
                self.assign(v, Some(c));
                if self.solve(k, opened.max(c + 1)) {
                    return true;
                }
                self.assign(v, None);
            }
        }
        false
    }
}

/// Chromatic number of the underlying undirected graph, with a coloring
/// attaining it. Tries `k = clique bound, clique bound + 1, ...`.
pub fn chromatic_number_exact(g: &Digraph) -> Result<(u32, VertexColoring)> {
    let n = g.vertex_count as usize;
    if n > MAX_EXACT_VERTICES {
        return Err(Error::Capacity(format!(
            "{n} vertices exceed the exact solver cap of {MAX_EXACT_VERTICES}"
        )));
    }
    if n == 0 {
        return Ok((
            0,
            VertexColoring {
                colors: Vec::new(),
                color_count: 0,
            },
        ));
    }
    let adj = adjacency(g);
    let mut k = greedy_clique(&adj);
    loop {
        let mut s = Dsatur {
            adj: &adj,
            colors: vec![None; n],
            used: vec![0; n],
        };
        if s.solve(k, 0) {
            let colors = s
                .colors
                .into_iter()
                .map(|c| c.expect("all colored"))
                .collect();
            let vc = VertexColoring {
                colors,
                color_count: k,
            };
            debug_assert!(is_proper(g, &vc));
            return Ok((k, vc));
        }
        k += 1;
    }
}

/// Reads color `c` as a vector in `[t - 1]^d`, most significant coordinate
/// first, entries `0..t - 1`.
pub fn lattice_point(mut c: u32, t: u32, d: u32) -> Vec<u32> {
    let base = t - 1;
    let mut point = vec![0; d as usize];
    for slot in point.iter_mut().rev() {
        *slot = c % base;
        c /= base;
    }
    point
}

/// Colors arc `(x, y)` by the first coordinate `j` (1-based) where the
/// lattice points of the classes of `x` and `y` differ: `2(j - 1)` when it
/// increases, `2(j - 1) + 1` when it decreases.
pub fn lattice_path_coloring(
    g: &Digraph,
    vc: &VertexColoring,
    t: u32,
    d: u32,
) -> Result<ArcColoring> {
    ensure!(t >= 2 && d >= 1, "need t >= 2 and d >= 1");
    let cells = (t as u64 - 1)
        .checked_pow(d)
        .filter(|&c| c <= u32::MAX as u64);
    let Some(cells) = cells else {
        return Err(Error::Capacity(format!("[{}]^{d} is too large", t - 1)));
    };
    ensure!(is_proper(g, vc), "vertex coloring is not proper");
    ensure!(
        vc.colors.iter().all(|&c| (c as u64) < cells),
        "vertex colors must lie in [0, {cells})"
    );
    let points: Vec<Vec<u32>> = vc.colors.iter().map(|&c| lattice_point(c, t, d)).collect();
    let colors = g
        .arcs
        .iter()
        .map(|&[u, v]| {
            let (a, b) = (&points[u as usize], &points[v as usize]);
            let j = (0..d as usize)
                .find(|&j| a[j] != b[j])
                .expect("proper coloring separates endpoints");
            2 * j as u32 + u32::from(a[j] > b[j])
        })
        .collect();
    Ok(ArcColoring {
        colors,
        color_count: 2 * d,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PathLength {
    Finite(u64),
    /// The color class contains a directed cycle.
    Infinite,
}

impl fmt::Display for PathLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathLength::Finite(v) => write!(f, "{v}"),
            PathLength::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for PathLength {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PathLength::Finite(v) => s.serialize_u64(*v),
            PathLength::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// Vertex count of the longest directed path inside each color class.
/// A class without arcs still has one-vertex paths.
pub fn longest_mono_dipath(g: &Digraph, ac: &ArcColoring) -> Result<Vec<PathLength>> {
    ensure!(
        ac.colors.len() == g.arcs.len(),
        "{} arc colors for {} arcs",
        ac.colors.len(),
        g.arcs.len()
    );
    ensure!(
        ac.colors.iter().all(|&c| c < ac.color_count),
        "arc color out of range"
    );
    let n = g.vertex_count as usize;
    let mut out = Vec::with_capacity(ac.color_count as usize);
    for color in 0..ac.color_count {
        let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut indegree = vec![0usize; n];
        for (&[u, v], &c) in g.arcs.iter().zip(&ac.colors) {
            if c == color {
                out_arcs[u as usize].push(v as usize);
                indegree[v as usize] += 1;
            }
        }
        let mut longest = vec![1u64; n];
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut done = 0;
        while let Some(u) = queue.pop_front() {
            done += 1;
            for &v in &out_arcs[u] {
                longest[v] = longest[v].max(longest[u] + 1);
                indegree[v] -= 1;
                if indegree[v] == 0 {
                    queue.push_back(v);
                }
            }
        }
        out.push(if done < n {
            PathLength::Infinite
        } else {
            PathLength::Finite(longest.into_iter().max().unwrap_or(0))
        });
    }
    Ok(out)
}

/// Reads a coloring of `r`-sets as an arc coloring of `Sh(n, r - 1)`: the
/// arc of the chain `x_1 < ... < x_r` takes the color of `{x_1, ..., x_r}`.
pub fn vertex_coloring_as_arc_coloring(n: u32, r: u32, c: &Coloring) -> Result<ArcColoring> {
    ensure!(r >= 2 && r < n, "need 2 <= r < n");
    ensure!(
        c.n() == n && c.uniformity() == Some(r),
        "need a coloring of the {r}-subsets of [{n}]"
    );
    let Ok(color_count) = u32::try_from(c.total_colors()) else {
        return Err(Error::Capacity(
            "too many colors for an arc coloring".into(),
        ));
    };
    // Arc i of Sh(n, r - 1) is the r-chain of colex rank i.
    let colors = (0..c.len()).map(|i| c.color_at(i) as u32).collect();
    Ok(ArcColoring {
        colors,
        color_count,
    })
}
