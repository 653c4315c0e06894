//! Braid-arrangement combinatorics: ordered partitions, shuffles, cube
//! symbols, the equivariant cellular chains and their spectral pages.

pub mod equivariant;
pub mod pages;
pub mod partition;
pub mod quotient;
pub mod shuffle;
pub mod symbol;

pub use equivariant::{d1_apply, equivariant_complex, EquivariantComplex, GradedModule, OrbitComplex};
pub use pages::{build_pages, Normalization, PageBlock, PageConfig};
pub use partition::{Mode, Partition};
pub use quotient::quotient_homology;
pub use shuffle::{shuffles, Shuffle};
pub use symbol::render_symbol;
