//! Brute-force oracles. They share no search code with the library: every
//! (K, M) placement is listed from raw bitmasks and every edge is read.

#![allow(dead_code)]

use daisylab::coloring::Coloring;
use daisylab::ground::SetMask;

pub fn popcount(x: u64) -> u32 {
    x.count_ones()
}

pub fn elements_desc(x: u64) -> Vec<u32> {
    (1..=64).rev().filter(|&e| x >> (e - 1) & 1 == 1).collect()
}

/// All `u`-subsets of `[n]`, sorted by the colex definition: compare the
/// largest elements first.
pub fn colex_listing(n: u32, u: u32) -> Vec<u64> {
    let mut sets: Vec<u64> = (0..1u64 << n).filter(|&x| popcount(x) == u).collect();
    sets.sort_by_key(|&x| elements_desc(x));
    sets
}

pub fn pascal(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let mut row = vec![1u128];
    for i in 1..=n as usize {
        let mut next = vec![1u128; i + 1];
        for j in 1..i {
            next[j] = row[j - 1] + row[j];
        }
        row = next;
    }
    row[k as usize]
}

/// Submasks of `x` with exactly `size` bits.
pub fn submasks_of_size(x: u64, size: u32) -> Vec<u64> {
    let mut out = Vec::new();
    let mut s = x;
    loop {
        if popcount(s) == size {
            out.push(s);
        }
        if s == 0 {
            break;
        }
        s = (s - 1) & x;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kernels {
    Any,
    Size(u32),
    /// Kernel of the given size (or any) with no element inside the span of M.
    Simple(Option<u32>),
}

pub fn is_simple(k: u64, m: u64) -> bool {
    if m == 0 {
        return true;
    }
    let lo = m.trailing_zeros();
    let hi = 63 - m.leading_zeros();
    (lo..=hi).all(|b| k >> b & 1 == 0)
}

/// Every `(K, M)` on `[n]` with `|M| = m` that the kernel rule admits.
pub fn placements(n: u32, m: u32, kernels: Kernels) -> Vec<(u64, u64)> {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut out = Vec::new();
    for k in 0..=full {
        let ok = match kernels {
            Kernels::Any => true,
            Kernels::Size(s) => popcount(k) == s,
            Kernels::Simple(s) => s.is_none_or(|s| popcount(k) == s),
        };
        if !ok {
            continue;
        }
        for u in submasks_of_size(full & !k, m) {
            if matches!(kernels, Kernels::Simple(_)) && !is_simple(k, u) {
                continue;
            }
            out.push((k, u));
        }
    }
    out
}

fn level_color(c: &Coloring, k: u64, u: u64, level: u32) -> Option<u64> {
    let mut color = None;
    for p in submasks_of_size(u, level) {
        let x = c.color(SetMask(k | p));
        match color {
            None => color = Some(x),
            Some(y) if y != x => return None,
            _ => {}
        }
    }
    color
}

/// Placements whose `r`-level is monochromatic.
pub fn mono_daisies(c: &Coloring, r: u32, m: u32, kernels: Kernels) -> Vec<(u64, u64)> {
    placements(c.n(), m, kernels)
        .into_iter()
        .filter(|&(k, u)| {
            let size = popcount(k) + r;
            match c.uniformity() {
                Some(w) if w != size => false,
                _ => level_color(c, k, u, r).is_some(),
            }
        })
        .collect()
}

/// Placements whose levels `1..=r` are each monochromatic.
pub fn level_homogeneous(c: &Coloring, r: u32, m: u32, kernels: Kernels) -> Vec<(u64, u64)> {
    placements(c.n(), m, kernels)
        .into_iter()
        .filter(|&(k, u)| (1..=r).all(|l| level_color(c, k, u, l).is_some()))
        .collect()
}

/// The 2-colorings of the pairs of `[5]` with no monochromatic triangle,
/// as tables in colex order of the pairs.
pub fn triangle_free_pair_colorings_of_5() -> Vec<Coloring> {
    let pairs = colex_listing(5, 2);
    let triples = colex_listing(5, 3);
    let mut out = Vec::new();
    for bits in 0u32..1 << pairs.len() {
        let color = |p: u64| bits >> pairs.iter().position(|&q| q == p).unwrap() & 1;
        let mono = triples.iter().any(|&t| {
            let sides: Vec<u32> = submasks_of_size(t, 2).into_iter().map(color).collect();
            sides.iter().all(|&s| s == sides[0])
        });
        if !mono {
            let table = (0..pairs.len()).map(|i| (bits >> i & 1) as u8).collect();
            out.push(Coloring::uniform(5, 2, 2, table).unwrap());
        }
    }
    out
}

/// The pair coloring of `[5]`: cycle 1-2-3-4-5-1 in color 0, diagonals 1.
pub fn pentagon_coloring() -> Coloring {
    Coloring::uniform_from_fn(5, 2, 2, |x| {
        let e = x.to_vec();
        let gap = e[1] - e[0];
        u8::from(!(gap == 1 || gap == 4))
    })
    .unwrap()
}

/// Undirected adjacency lists of a digraph given by arcs.
pub fn undirected(vertices: usize, arcs: &[[u32; 2]]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); vertices];
    for &[u, v] in arcs {
        adj[u as usize].push(v as usize);
        adj[v as usize].push(u as usize);
    }
    adj
}

/// Plain backtracking: is the graph `k`-colorable?
pub fn colorable(adj: &[Vec<usize>], k: u32) -> bool {
    fn go(v: usize, adj: &[Vec<usize>], k: u32, color: &mut Vec<u32>) -> bool {
        if v == adj.len() {
            return true;
        }
        for c in 0..k {
            if adj[v].iter().all(|&w| w >= v || color[w] != c) {
                color[v] = c;
                if go(v + 1, adj, k, color) {
                    return true;
                }
            }
        }
        false
    }
    go(0, adj, k, &mut vec![u32::MAX; adj.len()])
}

pub fn chromatic_oracle(adj: &[Vec<usize>]) -> u32 {
    (0..=adj.len() as u32).find(|&k| colorable(adj, k)).unwrap()
}

/// Longest simple directed path (vertex count) inside one color class, by
/// DFS over all simple paths. Returns `None` if the class has a cycle.
pub fn longest_path_oracle(
    vertices: usize,
    arcs: &[[u32; 2]],
    colors: &[u32],
    color: u32,
) -> Option<u64> {
    let mut out = vec![Vec::new(); vertices];
    for (&[u, v], &c) in arcs.iter().zip(colors) {
        if c == color {
            out[u as usize].push(v as usize);
        }
    }
    fn dfs(v: usize, out: &[Vec<usize>], on_path: &mut Vec<bool>, cyclic: &mut bool) -> u64 {
        on_path[v] = true;
        let mut best = 1;
        for &w in &out[v] {
            if on_path[w] {
                *cyclic = true;
            } else {
                best = best.max(1 + dfs(w, out, on_path, cyclic));
            }
        }
        on_path[v] = false;
        best
    }
    let mut cyclic = false;
    let mut best = if vertices == 0 { 0 } else { 1 };
    for v in 0..vertices {
        best = best.max(dfs(v, &out, &mut vec![false; vertices], &mut cyclic));
    }
    (!cyclic).then_some(best)
}
