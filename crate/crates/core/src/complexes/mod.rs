//! Posets, order complexes, regular CW complexes and their homology.

pub mod chain;
pub mod cw;
pub mod filtration;
pub mod homology;
pub mod poset;
pub mod simplicial;

pub use chain::{ChainComplex, Coefficients, SparseMatrix};
pub use cw::{salvetti_cw, Cell, RegularCWComplex, SalvettiComplex};
pub use filtration::{skeletal_filtration, FiltrationLevel};
pub use homology::{betti_numbers, smith_homology, HomologyGroup};
pub use poset::Poset;
pub use simplicial::{order_complex, SimplicialComplex};
