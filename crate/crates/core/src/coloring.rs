//! Colorings of `P([n])` (power mode) or of `[n]^(u)` (uniform mode), with
//! optional factored storage for product colorings `[ℓ]^r`, and the
//! on-disk coloring format.
//!
//! # File format
//!
//! One UTF-8 JSON header line terminated by `\n`, then the raw payload:
//! one byte per entry, `product` blocks back to back (coordinate 1 first).
//! Power mode stores entries in ascending mask order, uniform mode in
//! ascending colex rank.
//!
//! ```text
//! {"format":"daisylab-coloring","version":1,"n":3,"mode":"power","colors":2,"order":"mask"}
//! <8 bytes>
//! ```

use std::fs;
use std::io::Write;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::ground::{binomial, colex_rank, colex_unrank, SetMask, MAX_GROUND};

pub const FORMAT_TAG: &str = "daisylab-coloring";
pub const FORMAT_VERSION: u32 = 1;

/// Power-mode colorings store `2^n` entries.
pub const MAX_POWER_N: u32 = 30;
/// Hard cap on the entries of one coordinate table.
pub const MAX_ENTRIES: u64 = 1 << 30;
/// Name recorded in file headers for [`random_coloring`].
pub const RNG_ALGORITHM: &str = "xoshiro256**";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Power,
    Uniform,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Order {
    Mask,
    Colex,
}

/// Seed provenance of a random coloring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RngInfo {
    pub algorithm: String,
    pub seed: u64,
}

fn one() -> u32 {
    1
}

fn is_one(v: &u32) -> bool {
    *v == 1
}

/// The JSON first line of a coloring file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoringHeader {
    pub format: String,
    pub version: u32,
    pub n: u32,
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub uniformity: Option<u32>,
    pub colors: u16,
    pub order: Order,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub product: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rng: Option<RngInfo>,
}

impl ColoringHeader {
    pub fn power(n: u32, colors: u16) -> ColoringHeader {
        ColoringHeader {
            format: FORMAT_TAG.to_string(),
            version: FORMAT_VERSION,
            n,
            mode: Mode::Power,
            uniformity: None,
            colors,
            order: Order::Mask,
            product: 1,
            rng: None,
        }
    }

    pub fn uniform(n: u32, uniformity: u32, colors: u16) -> ColoringHeader {
        ColoringHeader {
            mode: Mode::Uniform,
            uniformity: Some(uniformity),
            order: Order::Colex,
            ..ColoringHeader::power(n, colors)
        }
    }

    pub fn with_product(mut self, product: u32) -> ColoringHeader {
        self.product = product;
        self
    }

    /// Checks tag, version, mode/order consistency and the size caps;
    /// returns the number of entries per coordinate block.
    pub fn validate(&self) -> Result<u64> {
        ensure!(
            self.format == FORMAT_TAG,
            "unknown format tag {:?}",
            self.format
        );
        ensure!(
            self.version == FORMAT_VERSION,
            "unsupported version {}",
            self.version
        );
        ensure!(
            (1..=256).contains(&self.colors),
            "colors must be in 1..=256, got {}",
            self.colors
        );
        ensure!(self.product >= 1, "product must be at least 1");
        if let Some(rng) = &self.rng {
            ensure!(!rng.algorithm.is_empty(), "empty rng algorithm name");
        }
        match self.mode {
            Mode::Power => {
                ensure!(self.order == Order::Mask, "power mode requires mask order");
                ensure!(self.uniformity.is_none(), "power mode takes no uniformity");
                if self.n > MAX_POWER_N {
                    return Err(Error::Capacity(format!(
                        "power mode supports n <= {MAX_POWER_N}, got {}",
                        self.n
                    )));
                }
                Ok(1u64 << self.n)
            }
            Mode::Uniform => {
                ensure!(
                    self.order == Order::Colex,
                    "uniform mode requires colex order"
                );
                let Some(u) = self.uniformity else {
                    return Err(Error::Contract("uniform mode requires a uniformity".into()));
                };
                if self.n > MAX_GROUND {
                    return Err(Error::Capacity(format!(
                        "uniform mode supports n <= {MAX_GROUND}, got {}",
                        self.n
                    )));
                }
                ensure!(u <= self.n, "uniformity {u} exceeds n={}", self.n);
                let len = binomial(self.n, u);
                if len > MAX_ENTRIES {
                    return Err(Error::Capacity(format!(
                        "C({}, {u}) = {len} entries",
                        self.n
                    )));
                }
                Ok(len)
            }
        }
    }
}

/// Domain of a coloring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    /// Every subset of `[n]`.
    Power,
    /// Every `u`-subset of `[n]`.
    Uniform(u32),
}

/// A total coloring of its domain by `colors` colors, possibly factored
/// into several coordinate tables (`ψ(X) = (ψ(X)_1, ..., ψ(X)_r)`).
///
/// The scalar color of a product coloring is its mixed-radix encoding,
/// coordinate 1 most significant. Equality ignores the rng metadata.
#[derive(Clone, Debug)]
pub struct Coloring {
    n: u32,
    domain: Domain,
    colors: u16,
    layers: Vec<Vec<u8>>,
    rng: Option<RngInfo>,
}

impl PartialEq for Coloring {
    fn eq(&self, other: &Coloring) -> bool {
        self.n == other.n
            && self.domain == other.domain
            && self.colors == other.colors
            && self.layers == other.layers
    }
}

impl Eq for Coloring {}

fn domain_len(n: u32, domain: Domain) -> Result<usize> {
    let header = match domain {
        Domain::Power => ColoringHeader::power(n, 2),
        Domain::Uniform(u) => ColoringHeader::uniform(n, u, 2),
    };
    Ok(header.validate()? as usize)
}

impl Coloring {
    /// A constant coloring with `product` coordinates.
    pub fn constant(
        n: u32,
        domain: Domain,
        colors: u16,
        product: u32,
        color: u8,
    ) -> Result<Coloring> {
        ensure!((1..=256).contains(&colors), "colors must be in 1..=256");
        ensure!(
            (color as u16) < colors,
            "color {color} outside [0, {colors})"
        );
        ensure!(product >= 1, "product must be at least 1");
        let len = domain_len(n, domain)?;
        Ok(Coloring {
            n,
            domain,
            colors,
            layers: vec![vec![color; len]; product as usize],
            rng: None,
        })
    }

    pub fn zeros(n: u32, domain: Domain, colors: u16) -> Result<Coloring> {
        Coloring::constant(n, domain, colors, 1, 0)
    }

    /// Wraps raw coordinate tables after checking length and range.
    pub fn from_layers(
        n: u32,
        domain: Domain,
        colors: u16,
        layers: Vec<Vec<u8>>,
    ) -> Result<Coloring> {
        ensure!((1..=256).contains(&colors), "colors must be in 1..=256");
        ensure!(
            !layers.is_empty(),
            "at least one coordinate table is required"
        );
        let len = domain_len(n, domain)?;
        for (i, layer) in layers.iter().enumerate() {
            ensure!(
                layer.len() == len,
                "table {i} has {} entries, expected {len}",
                layer.len()
            );
            if let Some(bad) = layer.iter().find(|&&c| c as u16 >= colors) {
                return Err(Error::Contract(format!(
                    "entry {bad} outside [0, {colors})"
                )));
            }
        }
        Ok(Coloring {
            n,
            domain,
            colors,
            layers,
            rng: None,
        })
    }

    pub fn power(n: u32, colors: u16, table: Vec<u8>) -> Result<Coloring> {
        Coloring::from_layers(n, Domain::Power, colors, vec![table])
    }

    pub fn uniform(n: u32, uniformity: u32, colors: u16, table: Vec<u8>) -> Result<Coloring> {
        Coloring::from_layers(n, Domain::Uniform(uniformity), colors, vec![table])
    }

    /// Builds a power coloring from a function of the set.
    pub fn power_from_fn(n: u32, colors: u16, f: impl Fn(SetMask) -> u8) -> Result<Coloring> {
        let mut c = Coloring::zeros(n, Domain::Power, colors)?;
        for (i, slot) in c.layers[0].iter_mut().enumerate() {
            *slot = f(SetMask(i as u64));
        }
        c.check_range()?;
        Ok(c)
    }

    /// Builds a uniform coloring from a function of the set.
    pub fn uniform_from_fn(
        n: u32,
        u: u32,
        colors: u16,
        f: impl Fn(SetMask) -> u8,
    ) -> Result<Coloring> {
        let mut c = Coloring::zeros(n, Domain::Uniform(u), colors)?;
        for (i, slot) in c.layers[0].iter_mut().enumerate() {
            *slot = f(colex_unrank(i as u64, u));
        }
        c.check_range()?;
        Ok(c)
    }

    fn check_range(&self) -> Result<()> {
        for layer in &self.layers {
            if let Some(bad) = layer.iter().find(|&&c| c as u16 >= self.colors) {
                return Err(Error::Contract(format!(
                    "entry {bad} outside [0, {})",
                    self.colors
                )));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn is_power(&self) -> bool {
        self.domain == Domain::Power
    }

    pub fn uniformity(&self) -> Option<u32> {
        match self.domain {
            Domain::Power => None,
            Domain::Uniform(u) => Some(u),
        }
    }

    /// Colors per coordinate (`ℓ`).
    pub fn colors(&self) -> u16 {
        self.colors
    }

    /// Number of coordinates.
    pub fn product(&self) -> u32 {
        self.layers.len() as u32
    }

    /// `ℓ^product`, the size of the scalar color alphabet.
    pub fn total_colors(&self) -> u128 {
        (self.colors as u128).pow(self.product())
    }

    pub fn rng(&self) -> Option<&RngInfo> {
        self.rng.as_ref()
    }

    pub fn set_rng(&mut self, rng: Option<RngInfo>) {
        self.rng = rng;
    }

    pub fn len(&self) -> usize {
        self.layers[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn layer(&self, i: usize) -> &[u8] {
        &self.layers[i]
    }

    pub fn layers(&self) -> &[Vec<u8>] {
        &self.layers
    }

    /// Whether the coloring assigns a color to `x`.
    pub fn covers(&self, x: SetMask) -> bool {
        x.fits(self.n)
            && match self.domain {
                Domain::Power => true,
                Domain::Uniform(u) => x.len() == u,
            }
    }

    /// Table index of `x`: its mask (power) or its colex rank (uniform).
    #[inline]
    pub fn index_of(&self, x: SetMask) -> usize {
        debug_assert!(self.covers(x), "{x} not in domain");
        match self.domain {
            Domain::Power => x.bits() as usize,
            Domain::Uniform(_) => colex_rank(x) as usize,
        }
    }

    /// The set stored at table index `i`.
    pub fn set_at(&self, i: usize) -> SetMask {
        match self.domain {
            Domain::Power => SetMask(i as u64),
            Domain::Uniform(u) => colex_unrank(i as u64, u),
        }
    }

    /// Scalar color at a table index.
    #[inline]
    pub fn color_at(&self, i: usize) -> u64 {
        if self.layers.len() == 1 {
            return self.layers[0][i] as u64;
        }
        self.layers.iter().fold(0u64, |acc, layer| {
            acc * self.colors as u64 + layer[i] as u64
        })
    }

    /// Scalar color of `x` (mixed-radix over the coordinates).
    #[inline]
    pub fn color(&self, x: SetMask) -> u64 {
        self.color_at(self.index_of(x))
    }

    /// Coordinate `i` (0-based) of the color of `x`.
    pub fn coordinate(&self, x: SetMask, i: usize) -> u8 {
        self.layers[i][self.index_of(x)]
    }

    /// All coordinates of the color of `x`.
    pub fn product_color(&self, x: SetMask) -> ProductColor {
        let idx = self.index_of(x);
        ProductColor(self.layers.iter().map(|l| l[idx]).collect())
    }

    pub fn set_color(&mut self, x: SetMask, color: u8) -> Result<()> {
        ensure!(
            self.product() == 1,
            "set_color needs a single-coordinate coloring"
        );
        ensure!(
            (color as u16) < self.colors,
            "color {color} outside [0, {})",
            self.colors
        );
        ensure!(self.covers(x), "{x} is outside the domain");
        let idx = self.index_of(x);
        self.layers[0][idx] = color;
        Ok(())
    }

    pub(crate) fn set_at_raw(&mut self, i: usize, color: u8) {
        self.layers[0][i] = color;
    }

    /// Single-coordinate view of coordinate `i`.
    pub fn coordinate_coloring(&self, i: usize) -> Coloring {
        Coloring {
            n: self.n,
            domain: self.domain,
            colors: self.colors,
            layers: vec![self.layers[i].clone()],
            rng: None,
        }
    }

    /// Mixed-radix scalar encoding into one table with `ℓ^r` colors;
    /// requires `ℓ^r <= 256`.
    pub fn flatten(&self) -> Result<Coloring> {
        let total = self.total_colors();
        ensure!(
            total <= 256,
            "ℓ^r = {total} exceeds 256; keep factored storage"
        );
        let table = (0..self.len()).map(|i| self.color_at(i) as u8).collect();
        Ok(Coloring {
            n: self.n,
            domain: self.domain,
            colors: total as u16,
            layers: vec![table],
            rng: self.rng.clone(),
        })
    }

    pub fn header(&self) -> ColoringHeader {
        let base = match self.domain {
            Domain::Power => ColoringHeader::power(self.n, self.colors),
            Domain::Uniform(u) => ColoringHeader::uniform(self.n, u, self.colors),
        };
        ColoringHeader {
            product: self.product(),
            rng: self.rng.clone(),
            ..base
        }
    }

    /// Serialized file bytes.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec(&self.header()).expect("header serializes");
        out.push(b'\n');
        for layer in &self.layers {
            out.extend_from_slice(layer);
        }
        out
    }

    /// Parses file bytes; offsets in errors are absolute byte positions.
    pub fn from_bytes(bytes: &[u8]) -> Result<Coloring> {
        let Some(newline) = bytes.iter().position(|&b| b == b'\n') else {
            return Err(Error::Format {
                offset: bytes.len() as u64,
                reason: "missing header line".into(),
            });
        };
        let header: ColoringHeader =
            serde_json::from_slice(&bytes[..newline]).map_err(|e| Error::Format {
                offset: e.column().saturating_sub(1) as u64,
                reason: format!("malformed header: {e}"),
            })?;
        let per_block = header.validate().map_err(|e| match e {
            Error::Contract(reason) | Error::Capacity(reason) => {
                Error::Format { offset: 0, reason }
            }
            other => other,
        })? as usize;
        let start = newline + 1;
        let payload = &bytes[start..];
        let expected = per_block * header.product as usize;
        if payload.len() < expected {
            return Err(Error::Format {
                offset: bytes.len() as u64,
                reason: format!("truncated payload: {} of {expected} bytes", payload.len()),
            });
        }
        if payload.len() > expected {
            return Err(Error::Format {
                offset: (start + expected) as u64,
                reason: format!("{} trailing bytes after payload", payload.len() - expected),
            });
        }
        if let Some(pos) = payload.iter().position(|&c| c as u16 >= header.colors) {
            return Err(Error::Format {
                offset: (start + pos) as u64,
                reason: format!("entry {} outside [0, {})", payload[pos], header.colors),
            });
        }
        let domain = match header.mode {
            Mode::Power => Domain::Power,
            Mode::Uniform => Domain::Uniform(header.uniformity.unwrap_or_default()),
        };
        let layers = payload.chunks(per_block).map(<[u8]>::to_vec).collect();
        Ok(Coloring {
            n: header.n,
            domain,
            colors: header.colors,
            layers,
            rng: header.rng,
        })
    }
}

/// Writes a coloring file.
pub fn write_coloring(path: impl AsRef<Path>, coloring: &Coloring) -> Result<()> {
    let mut file = fs::File::create(path)?;
    file.write_all(&coloring.to_bytes())?;
    Ok(())
}

/// Reads a coloring file.
pub fn read_coloring(path: impl AsRef<Path>) -> Result<Coloring> {
    Coloring::from_bytes(&fs::read(path)?)
}

/// Deterministic generator used for every randomized operation:
/// xoshiro256** seeded through `SeedableRng::seed_from_u64` (SplitMix64
/// expansion of the 64-bit seed).
pub fn seeded_rng(seed: u64) -> Xoshiro256StarStar {
    Xoshiro256StarStar::seed_from_u64(seed)
}

/// Draws a color uniformly from `[0, colors)`.
#[inline]
pub fn draw_color(rng: &mut Xoshiro256StarStar, colors: u16) -> u8 {
    if colors <= 1 {
        0
    } else {
        rng.random_range(0..colors) as u8
    }
}

/// Uniform independent coloring described by `header`, entries drawn in
/// payload order from [`seeded_rng`]`(seed)`.
pub fn random_coloring(header: &ColoringHeader, seed: u64) -> Result<Coloring> {
    let len = header.validate()? as usize;
    let mut rng = seeded_rng(seed);
    let layers = (0..header.product)
        .map(|_| {
            (0..len)
                .map(|_| draw_color(&mut rng, header.colors))
                .collect()
        })
        .collect();
    let domain = match header.mode {
        Mode::Power => Domain::Power,
        Mode::Uniform => Domain::Uniform(header.uniformity.unwrap_or_default()),
    };
    Ok(Coloring {
        n: header.n,
        domain,
        colors: header.colors,
        layers,
        rng: Some(RngInfo {
            algorithm: RNG_ALGORITHM.to_string(),
            seed,
        }),
    })
}

/// An element of `[ℓ]^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProductColor(pub Vec<u8>);

impl ProductColor {
    /// Mixed-radix encoding in `[0, ℓ^r)`, coordinate 1 most significant.
    pub fn encode(&self, colors: u16) -> u64 {
        self.0
            .iter()
            .fold(0u64, |acc, &c| acc * colors as u64 + c as u64)
    }

    pub fn decode(mut value: u64, colors: u16, r: usize) -> ProductColor {
        let mut coords = vec![0u8; r];
        for slot in coords.iter_mut().rev() {
            *slot = (value % colors as u64) as u8;
            value /= colors as u64;
        }
        ProductColor(coords)
    }
}
