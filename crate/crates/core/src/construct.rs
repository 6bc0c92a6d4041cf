//! Coloring-to-coloring transforms that turn clique-free colorings into
//! daisy-free (or superdaisy-free) ones, plus the complementary coloring.

use crate::coloring::{Coloring, Domain};
use crate::error::{ensure, Result};
use crate::ground::{enumerate_subsets, SetMask};

fn require_power(c: &Coloring, what: &str) -> Result<()> {
    ensure!(c.is_power(), "{what} needs a power coloring");
    Ok(())
}

fn require_uniform(c: &Coloring, u: u32, what: &str) -> Result<()> {
    ensure!(
        c.uniformity() == Some(u),
        "{what} needs a uniform coloring of {u}-sets, got {:?}",
        c.domain()
    );
    ensure!(
        c.product() == 1,
        "{what} needs a single-coordinate base coloring"
    );
    Ok(())
}

/// `ψ(X) = φ([n] \ X)`, applied to every coordinate.
pub fn complement_transform(c: &Coloring) -> Result<Coloring> {
    require_power(c, "complement_transform")?;
    let full = SetMask::full(c.n()).bits() as usize;
    let layers = c
        .layers()
        .iter()
        .map(|layer| (0..layer.len()).map(|i| layer[full ^ i]).collect())
        .collect();
    Coloring::from_layers(c.n(), Domain::Power, c.colors(), layers)
}

/// `φ(X) = |X| mod 2`.
pub fn size_parity_coloring(n: u32) -> Result<Coloring> {
    ensure!(n >= 1, "n must be positive");
    Coloring::power_from_fn(n, 2, |x| (x.len() % 2) as u8)
}

/// `ψ(X) = Σ_{R ⊆ X, |R| = r} φ(R) mod ℓ` (zero when `|X| < r`), for an
/// `ℓ`-coloring `φ` of the `r`-sets.
///
/// Computed as a subset-sum transform over `P([n])`.
pub fn parity_superdaisy_coloring(base: &Coloring) -> Result<Coloring> {
    let r = base.uniformity().unwrap_or(0);
    ensure!(
        r >= 1,
        "parity_superdaisy_coloring needs a uniform base coloring"
    );
    require_uniform(base, r, "parity_superdaisy_coloring")?;
    let n = base.n();
    let ell = base.colors() as u32;
    let mut acc = Coloring::zeros(n, Domain::Power, base.colors())?;
    let mut sums = vec![0u32; acc.len()];
    for (i, x) in enumerate_subsets(SetMask::full(n), r).enumerate() {
        sums[x.bits() as usize] = base.layer(0)[i] as u32;
    }
    for bit in 0..n {
        let b = 1usize << bit;
        for mask in 0..sums.len() {
            if mask & b != 0 {
                sums[mask] = (sums[mask] + sums[mask ^ b]) % ell;
            }
        }
    }
    for (i, s) in sums.into_iter().enumerate() {
        acc.set_at_raw(i, s as u8);
    }
    Ok(acc)
}

/// The kernel-reduced color `ψ_K(P) = Σ_{J ⊆ K, |J| = r - |P|} φ(J ∪ P) mod ℓ`
/// (zero when `|K ∪ P| < r`), for the base `φ` of a parity superdaisy
/// coloring. Defined for `|P| <= r`.
pub fn kernel_reduced_color(base: &Coloring, kernel: SetMask, petal: SetMask) -> Result<u8> {
    let r = base.uniformity().unwrap_or(0);
    require_uniform(base, r, "kernel_reduced_color")?;
    ensure!(
        kernel.is_disjoint(petal),
        "kernel and petal must be disjoint"
    );
    ensure!(petal.len() <= r, "petal size {} exceeds r={r}", petal.len());
    ensure!(
        kernel.union(petal).fits(base.n()),
        "sets outside [{}]",
        base.n()
    );
    if kernel.len() + petal.len() < r {
        return Ok(0);
    }
    let ell = base.colors() as u32;
    let sum = enumerate_subsets(kernel, r - petal.len())
        .map(|j| base.color(j.union(petal)) as u32)
        .fold(0u32, |a, c| (a + c) % ell);
    Ok(sum as u8)
}

/// `ψ(X)_i = φ({x_1, ..., x_i})` for `X = {x_1 < ... < x_r}`: an
/// `ℓ^r`-coloring of the `r`-sets, stored as `r` coordinate tables.
pub fn prefix_vector_coloring(base: &Coloring, r: u32) -> Result<Coloring> {
    require_power(base, "prefix_vector_coloring")?;
    ensure!(
        base.product() == 1,
        "prefix_vector_coloring needs a single-coordinate base"
    );
    ensure!(r >= 1 && r <= base.n(), "need 1 <= r <= n");
    let n = base.n();
    let sets: Vec<SetMask> = enumerate_subsets(SetMask::full(n), r).collect();
    let layers = (1..=r)
        .map(|i| {
            sets.iter()
                .map(|x| base.color(x.window(1, i)) as u8)
                .collect()
        })
        .collect();
    Coloring::from_layers(n, Domain::Uniform(r), base.colors(), layers)
}

/// Block sums over consecutive `r`-windows: for `X = {x_1 < ... < x_t}`,
/// coordinate `i` (1-based) is `Σ φ({x_s, ..., x_{s+r-1}}) mod ℓ` over
/// `1 <= s <= t - r + 1` with `s ≡ i (mod r)`. Sets with fewer than `r`
/// elements get the all-zero color.
pub fn block_sum_coloring(base: &Coloring) -> Result<Coloring> {
    let r = base.uniformity().unwrap_or(0);
    ensure!(r >= 1, "block_sum_coloring needs a uniform base coloring");
    require_uniform(base, r, "block_sum_coloring")?;
    let n = base.n();
    let ell = base.colors() as u32;
    let mut layers = vec![vec![0u8; 1usize << n]; r as usize];
    let mut elems = Vec::with_capacity(n as usize);
    for mask in 0..(1u64 << n) {
        let x = SetMask(mask);
        let t = x.len();
        if t < r {
            continue;
        }
        elems.clear();
        elems.extend(x.elements());
        let mut sums = vec![0u32; r as usize];
        for s in 1..=(t - r + 1) {
            let block = SetMask::from_elements(
                elems[(s - 1) as usize..(s - 1 + r) as usize]
                    .iter()
                    .copied(),
            );
            let coord = ((s - 1) % r) as usize;
            sums[coord] = (sums[coord] + base.color(block) as u32) % ell;
        }
        for (coord, s) in sums.into_iter().enumerate() {
            layers[coord][mask as usize] = s as u8;
        }
    }
    Coloring::from_layers(n, Domain::Power, base.colors(), layers)
}

/// `ψ({x_1 < ... < x_{k+r}}) = φ({x_{k+1}, ..., x_r})` for a coloring `φ` of
/// the `(r - k)`-sets.
pub fn middle_window_coloring(base: &Coloring, k: u32, r: u32) -> Result<Coloring> {
    ensure!(r > k, "need r > k");
    require_uniform(base, r - k, "middle_window_coloring")?;
    let n = base.n();
    ensure!(k + r <= n, "k + r exceeds n");
    Coloring::uniform_from_fn(n, k + r, base.colors(), |x| {
        base.color(x.window(k + 1, r)) as u8
    })
}

/// `φ'(X) = φ(X ∪ {n-k+1, ..., n})` on the `r`-sets of `[n - k]`, for a
/// coloring `φ` of the `(k + r)`-sets of `[n]`.
pub fn kernel_pinning(base: &Coloring, k: u32) -> Result<Coloring> {
    let u = base.uniformity().unwrap_or(0);
    require_uniform(base, u, "kernel_pinning")?;
    ensure!(u >= k, "uniformity {u} is below the pinned kernel size {k}");
    let n = base.n();
    let r = u - k;
    ensure!(n - k >= r, "need n - k >= r");
    let pinned = pinned_kernel(n, k);
    Coloring::uniform_from_fn(n - k, r, base.colors(), |x| {
        base.color(x.union(pinned)) as u8
    })
}

/// `{n-k+1, ..., n}`.
pub fn pinned_kernel(n: u32, k: u32) -> SetMask {
    SetMask::interval(n - k + 1, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{random_coloring, ColoringHeader};

    fn set(v: &[u32]) -> SetMask {
        SetMask::from_elements(v.iter().copied())
    }

    #[test]
    fn complement_is_an_involution() {
        let c = random_coloring(&ColoringHeader::power(7, 3).with_product(2), 4).unwrap();
        assert_eq!(
            complement_transform(&complement_transform(&c).unwrap()).unwrap(),
            c
        );
        let p = complement_transform(&size_parity_coloring(3).unwrap()).unwrap();
        for mask in 0..8u64 {
            assert_eq!(p.color(SetMask(mask)), ((mask.count_ones() + 1) % 2) as u64);
        }
    }

    #[test]
    fn parity_values() {
        let p = size_parity_coloring(4).unwrap();
        assert_eq!(p.color(SetMask::EMPTY), 0);
        assert_eq!(p.color(set(&[1, 2, 3])), 1);
    }

    #[test]
    fn parity_superdaisy_small_sums() {
        let zero = Coloring::zeros(5, Domain::Uniform(2), 2).unwrap();
        let psi = parity_superdaisy_coloring(&zero).unwrap();
        assert!(psi.layer(0).iter().all(|&c| c == 0));

        let base = Coloring::uniform_from_fn(3, 2, 2, |x| (x == set(&[1, 2])) as u8).unwrap();
        let psi = parity_superdaisy_coloring(&base).unwrap();
        assert_eq!(psi.color(set(&[1, 2])), 1);
        assert_eq!(psi.color(set(&[1, 2, 3])), 1);
        assert_eq!(psi.color(set(&[1, 3])), 0);
        assert_eq!(psi.color(set(&[2, 3])), 0);
        assert_eq!(psi.color(set(&[1])), 0);
    }

    #[test]
    fn parity_superdaisy_matches_direct_sum() {
        let base = random_coloring(&ColoringHeader::uniform(7, 3, 3), 12).unwrap();
        let psi = parity_superdaisy_coloring(&base).unwrap();
        for mask in 0..(1u64 << 7) {
            let x = SetMask(mask);
            let direct: u64 = if x.len() >= 3 {
                enumerate_subsets(x, 3).map(|r| base.color(r)).sum::<u64>() % 3
            } else {
                0
            };
            assert_eq!(psi.color(x), direct, "{x}");
        }
    }

    #[test]
    fn kernel_reduced_single_term_and_empty_kernel() {
        let base = random_coloring(&ColoringHeader::uniform(6, 3, 2), 3).unwrap();
        assert_eq!(
            kernel_reduced_color(&base, SetMask::EMPTY, set(&[1, 2])).unwrap(),
            0
        );
        let petal = set(&[2, 5]);
        assert_eq!(
            kernel_reduced_color(&base, set(&[4]), petal).unwrap() as u64,
            base.color(set(&[2, 4, 5]))
        );
        assert!(kernel_reduced_color(&base, set(&[2]), petal).is_err());
    }

    #[test]
    fn prefix_vector_coordinates() {
        let base = random_coloring(&ColoringHeader::power(6, 2), 9).unwrap();
        let one = prefix_vector_coloring(&base, 1).unwrap();
        for e in 1..=6 {
            assert_eq!(one.color(set(&[e])), base.color(set(&[e])));
        }
        let two = prefix_vector_coloring(&base, 2).unwrap();
        for x in enumerate_subsets(SetMask::full(6), 2) {
            let lo = x.min_element().unwrap();
            assert_eq!(two.coordinate(x, 0) as u64, base.color(set(&[lo])));
            assert_eq!(two.coordinate(x, 1) as u64, base.color(x));
        }
    }

    #[test]
    fn block_sum_small_cases() {
        let base = random_coloring(&ColoringHeader::uniform(6, 2, 2), 5).unwrap();
        let psi = block_sum_coloring(&base).unwrap();
        let x = set(&[2, 5]);
        assert_eq!(psi.product_color(x).0, vec![base.color(x) as u8, 0]);
        let x = set(&[1, 3, 6]);
        assert_eq!(
            psi.product_color(x).0,
            vec![
                base.color(set(&[1, 3])) as u8,
                base.color(set(&[3, 6])) as u8
            ]
        );
        assert_eq!(psi.product_color(set(&[4])).0, vec![0, 0]);
        // four elements: blocks s = 1, 3 land on coordinate 1, s = 2 on coordinate 2
        let x = set(&[1, 2, 4, 6]);
        let s13 = (base.color(set(&[1, 2])) + base.color(set(&[4, 6]))) % 2;
        assert_eq!(
            psi.product_color(x).0,
            vec![s13 as u8, base.color(set(&[2, 4])) as u8]
        );
    }

    #[test]
    fn middle_window_examples() {
        let base = random_coloring(&ColoringHeader::uniform(7, 3, 2), 1).unwrap();
        assert_eq!(middle_window_coloring(&base, 0, 3).unwrap(), base);
        let base = random_coloring(&ColoringHeader::uniform(7, 2, 2), 2).unwrap();
        let psi = middle_window_coloring(&base, 1, 3).unwrap();
        assert_eq!(psi.color(set(&[1, 3, 4, 7])), base.color(set(&[3, 4])));
    }

    #[test]
    fn kernel_pinning_examples() {
        let base = random_coloring(&ColoringHeader::uniform(6, 2, 2), 7).unwrap();
        assert_eq!(kernel_pinning(&base, 0).unwrap(), base);
        let base = random_coloring(&ColoringHeader::uniform(5, 3, 2), 7).unwrap();
        let pinned = kernel_pinning(&base, 1).unwrap();
        assert_eq!(pinned.n(), 4);
        assert_eq!(pinned.color(set(&[1, 3])), base.color(set(&[1, 3, 5])));
    }
}
