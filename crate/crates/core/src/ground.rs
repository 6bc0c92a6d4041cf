//! Subsets of the ground set `[n] = {1, ..., n}` as bit masks, plus
//! colexicographic ranking and enumeration of fixed-size subsets.
//!
//! Elements are 1-indexed everywhere in the public API; element `i` lives
//! in bit `i - 1`. For sets of equal size, colex order coincides with the
//! numeric order of the masks, which the enumerators rely on.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{ensure, Result};

/// Largest ground set a mask can address.
pub const MAX_GROUND: u32 = 64;

/// A subset of `[n]`, element `i` stored in bit `i - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SetMask(pub u64);

impl SetMask {
    pub const EMPTY: SetMask = SetMask(0);

    /// `[n]` itself.
    pub fn full(n: u32) -> SetMask {
        debug_assert!(n <= MAX_GROUND);
        if n >= 64 {
            SetMask(u64::MAX)
        } else {
            SetMask((1u64 << n) - 1)
        }
    }

    /// The interval `{lo, ..., hi}`; empty when `lo > hi`.
    pub fn interval(lo: u32, hi: u32) -> SetMask {
        if lo > hi || hi == 0 {
            return SetMask::EMPTY;
        }
        let lo = lo.max(1);
        SetMask(SetMask::full(hi).0 & !SetMask::full(lo - 1).0)
    }

    pub fn singleton(element: u32) -> SetMask {
        debug_assert!((1..=MAX_GROUND).contains(&element));
        SetMask(1u64 << (element - 1))
    }

    /// Builds a mask from 1-indexed elements. Panics on an element outside `1..=64`.
    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> SetMask {
        elements
            .into_iter()
            .fold(SetMask::EMPTY, |acc, e| acc.union(SetMask::singleton(e)))
    }

    /// Checked variant of [`SetMask::from_elements`] against a ground size.
    pub fn try_from_elements(elements: &[u32], n: u32) -> Result<SetMask> {
        let mut mask = SetMask::EMPTY;
        for &e in elements {
            ensure!(e >= 1 && e <= n, "element {e} outside [1, {n}]");
            ensure!(!mask.contains(e), "duplicate element {e}");
            mask = mask.union(SetMask::singleton(e));
        }
        Ok(mask)
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, element: u32) -> bool {
        (1..=64).contains(&element) && self.0 >> (element - 1) & 1 == 1
    }

    #[inline]
    pub fn union(self, other: SetMask) -> SetMask {
        SetMask(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: SetMask) -> SetMask {
        SetMask(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: SetMask) -> SetMask {
        SetMask(self.0 & !other.0)
    }

    #[inline]
    pub fn is_disjoint(self, other: SetMask) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn is_subset(self, other: SetMask) -> bool {
        self.0 & !other.0 == 0
    }

    /// `[n] \ self`.
    #[inline]
    pub fn complement(self, n: u32) -> SetMask {
        SetMask::full(n).difference(self)
    }

    /// True iff every element lies in `[n]`.
    #[inline]
    pub fn fits(self, n: u32) -> bool {
        self.is_subset(SetMask::full(n))
    }

    pub fn min_element(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    pub fn max_element(self) -> Option<u32> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros())
    }

    /// Elements in ascending order, 1-indexed.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.elements().collect()
    }

    /// The `i`-th smallest element (1-indexed position).
    pub fn nth_element(self, position: u32) -> Option<u32> {
        self.elements().nth(position.checked_sub(1)? as usize)
    }

    /// The sub-mask formed by the elements at positions `from..=to` (1-indexed,
    /// ascending order).
    pub fn window(self, from: u32, to: u32) -> SetMask {
        SetMask::from_elements(
            self.elements()
                .enumerate()
                .filter(|(i, _)| (*i as u32 + 1) >= from && (*i as u32 + 1) <= to)
                .map(|(_, e)| e),
        )
    }
}

impl fmt::Debug for SetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

impl fmt::Display for SetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for SetMask {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elements())
    }
}

impl<'de> Deserialize<'de> for SetMask {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let elements = Vec::<u32>::deserialize(deserializer)?;
        SetMask::try_from_elements(&elements, MAX_GROUND).map_err(serde::de::Error::custom)
    }
}

/// Ascending iterator over the elements of a mask.
#[derive(Clone)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = u32;

    #[inline]
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() + 1;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

fn pascal() -> &'static [[u64; 65]; 65] {
    static TABLE: OnceLock<Box<[[u64; 65]; 65]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Box::new([[0u64; 65]; 65]);
        for n in 0..=64 {
            t[n][0] = 1;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1].saturating_add(if k < n { t[n - 1][k] } else { 0 });
            }
        }
        t
    })
}

/// `C(n, k)` for `n <= 64`; zero when `k > n`.
#[inline]
pub fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    pascal()[n as usize][k as usize]
}

/// Colex rank of a set: `sum_i C(x_i - 1, i)` over its ascending elements.
#[inline]
pub fn colex_rank(x: SetMask) -> u64 {
    x.elements()
        .enumerate()
        .map(|(i, e)| binomial(e - 1, i as u32 + 1))
        .sum()
}

/// Inverse of [`colex_rank`] for `u`-subsets. `rank` must be below `C(64, u)`.
pub fn colex_unrank(mut rank: u64, u: u32) -> SetMask {
    let mut mask = SetMask::EMPTY;
    let mut hi = MAX_GROUND;
    for i in (1..=u).rev() {
        // Largest c with C(c, i) <= rank; elements are c + 1.
        let mut c = i - 1;
        while c + 1 < hi && binomial(c + 1, i) <= rank {
            c += 1;
        }
        rank -= binomial(c, i);
        mask = mask.union(SetMask::singleton(c + 1));
        hi = c;
    }
    mask
}

/// Checked colex rank of a `u`-subset of `[n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ColexRank {
    pub rank: u64,
    pub uniformity: u32,
    pub n: u32,
}

impl ColexRank {
    pub fn of(x: SetMask, u: u32, n: u32) -> Result<ColexRank> {
        ensure!(n <= MAX_GROUND, "ground size {n} exceeds {MAX_GROUND}");
        ensure!(
            x.len() == u,
            "set {x} has size {} but uniformity is {u}",
            x.len()
        );
        ensure!(x.fits(n), "set {x} is not inside [{n}]");
        Ok(ColexRank {
            rank: colex_rank(x),
            uniformity: u,
            n,
        })
    }

    pub fn new(rank: u64, u: u32, n: u32) -> Result<ColexRank> {
        ensure!(n <= MAX_GROUND, "ground size {n} exceeds {MAX_GROUND}");
        ensure!(u <= n, "uniformity {u} exceeds ground size {n}");
        ensure!(
            rank < binomial(n, u),
            "rank {rank} out of range for C({n},{u})"
        );
        Ok(ColexRank {
            rank,
            uniformity: u,
            n,
        })
    }

    pub fn unrank(self) -> SetMask {
        colex_unrank(self.rank, self.uniformity)
    }
}

/// Iterator over the `u`-subsets of a ground mask in colex order.
///
/// Runs Gosper's successor on the compressed positions `0..|ground|` and
/// scatters each result back onto the ground elements; the scatter is
/// monotone, so colex order is preserved.
#[derive(Clone)]
pub struct Subsets {
    ground: [u8; 64],
    size: u32,
    current: u128,
    limit: u128,
    done: bool,
}

impl Subsets {
    fn scatter(&self, compressed: u128) -> SetMask {
        let mut bits = compressed as u64;
        let mut out = 0u64;
        while bits != 0 {
            let pos = bits.trailing_zeros() as usize;
            out |= 1u64 << self.ground[pos];
            bits &= bits - 1;
        }
        SetMask(out)
    }
}

impl Iterator for Subsets {
    type Item = SetMask;

    fn next(&mut self) -> Option<SetMask> {
        if self.done {
            return None;
        }
        let out = self.scatter(self.current);
        if self.current == 0 {
            self.done = true;
        } else {
            let c = self.current;
            let lowest = c & c.wrapping_neg();
            let ripple = c + lowest;
            let next = (((ripple ^ c) >> 2) / lowest) | ripple;
            if next >= self.limit {
                self.done = true;
            } else {
                self.current = next;
            }
        }
        Some(out)
    }
}

/// All `u`-subsets of `ground`, in colex order. Yields exactly
/// `C(|ground|, u)` sets; `u > |ground|` is a caller bug.
pub fn enumerate_subsets(ground: SetMask, u: u32) -> Subsets {
    let g = ground.len();
    assert!(u <= g, "cannot choose {u} elements from a set of size {g}");
    let mut positions = [0u8; 64];
    for (i, e) in ground.elements().enumerate() {
        positions[i] = (e - 1) as u8;
    }
    Subsets {
        ground: positions,
        size: u,
        current: if u == 0 { 0 } else { (1u128 << u) - 1 },
        limit: 1u128 << g,
        done: false,
    }
}

impl Subsets {
    pub fn subset_size(&self) -> u32 {
        self.size
    }
}

/// Every subset of `ground` (including the empty set and `ground`), in
/// ascending mask order.
pub fn all_submasks(ground: SetMask) -> impl Iterator<Item = SetMask> {
    // Walks submasks upward via (s - ground) & ground.
    let g = ground.0;
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let s = next?;
        next = if s == g {
            None
        } else {
            Some(s.wrapping_sub(g) & g)
        };
        Some(SetMask(s))
    })
}
