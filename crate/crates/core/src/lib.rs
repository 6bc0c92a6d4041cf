//! Daisy Ramsey numbers made executable: set encodings, colorings and their
//! file format, monochromatic-daisy search, the coloring constructions,
//! exact small Ramsey values, resampling search, shift graphs and tower
//! bounds.

pub mod bounds;
pub mod coloring;
pub mod construct;
pub mod daisy;
pub mod error;
pub mod ground;
pub mod search;
pub mod shift;
pub mod verify;

pub use coloring::{Coloring, ColoringHeader, Domain, Mode, Order, ProductColor, RngInfo};
pub use daisy::{Daisy, DaisySpec, KernelFilter, Superdaisy};
pub use error::{Error, Result};
pub use ground::{ColexRank, SetMask};
pub use shift::{ArcColoring, Digraph, PathLength, VertexColoring};
pub use verify::Witness;

/// Version of this library, echoed in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
