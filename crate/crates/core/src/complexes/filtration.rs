//! The filtration of `Sal(A_{k-1})` by the number of distinct real
//! coordinates.

use serde::Serialize;

use crate::arrangement::partition_from_covector;
use crate::complexes::cw::SalvettiComplex;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationLevel {
    pub s: usize,
    pub cells: Vec<usize>,
}

/// `F_{-s}` for `s = k, …, 1`: cells whose closed cell only meets vertices
/// with at least `s` blocks. Each level is checked to be a subcomplex equal
/// to the `(k - s)`-skeleton.
pub fn skeletal_filtration(sal: &SalvettiComplex, k: usize) -> Result<Vec<FiltrationLevel>> {
    let l = &sal.lell;
    if l.ell != 1 || k < 2 || l.covectors.ground_size() != k * (k - 1) / 2 {
        return Err(Error::CellStructure("filtration needs Sal(A_{k-1}) with ℓ = 1".into()));
    }
    let blocks: Vec<usize> = (0..l.len())
        .map(|e| partition_from_covector(k, l.chain_member(e, 1)).map(|p| p.num_blocks()))
        .collect::<Result<_>>()?;
    let low: Vec<usize> =
        (0..l.len()).map(|e| l.poset.strict_up(e).iter().map(|f| blocks[f]).fold(blocks[e], usize::min)).collect();
    let mut out = Vec::new();
    for s in (1..=k).rev() {
        let cells: Vec<usize> = (0..l.len()).filter(|&e| low[e] >= s).collect();
        let skeleton: Vec<usize> = (0..l.len()).filter(|&e| sal.cw.cells()[e].dim + s <= k).collect();
        if cells != skeleton {
            return Err(Error::CellStructure(format!("F_-{s} differs from the {}-skeleton", k - s)));
        }
        if cells.iter().any(|&e| l.poset.strict_up(e).iter().any(|f| low[f] < s)) {
            return Err(Error::CellStructure(format!("F_-{s} is not a subcomplex")));
        }
        out.push(FiltrationLevel { s, cells });
    }
    Ok(out)
}
