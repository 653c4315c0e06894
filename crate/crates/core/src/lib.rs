//! Exact combinatorial models of hyperplane-arrangement complements.
//!
//! The crate builds Salvetti complexes `Sal^(ℓ)` of real central arrangements
//! from oriented-matroid data, computes their homology with Smith normal
//! form, and provides the braid-arrangement machinery (ordered partitions,
//! shuffles, the equivariant cellular complex and its `E¹`/`E²` pages).
//!
//! Sign conventions: braid normals are `e_i - e_j` for `i < j`, so the
//! chamber of the identity permutation is `(-, …, -)`.

pub mod arrangement;
pub mod braid;
pub mod complexes;
pub mod error;
pub mod linalg;
pub mod matroid;
pub mod signs;

pub use arrangement::{braid_arrangement, Arrangement, FaceRecord};
pub use error::{Error, Result};
pub use matroid::{build_l_ell, CircuitSet, CovectorSet, LEll};
pub use signs::{SignValue, SignVector};

#[cfg(feature = "parallel")]
pub(crate) fn par_map<T, F>(range: std::ops::Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    range.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn par_map<T, F>(range: std::ops::Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    range.map(f).collect()
}

/// Concatenation of `f(i)` in index order.
pub(crate) fn par_flat_map<T, F>(range: std::ops::Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> Vec<T> + Sync + Send,
{
    par_map(range, f).into_iter().flatten().collect()
}
