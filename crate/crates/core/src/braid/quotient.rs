//! Homology of `Δ(ℒ^(ℓ)(A_{k-1})) / Σ_k`.
//!
//! Every orbit of chains has exactly one member whose lowest element lies in
//! the identity chamber, which makes the orbit complex easy to enumerate.

use std::collections::HashMap;

use crate::arrangement::{braid_arrangement, covector_closure};
use crate::braid::equivariant::BraidAction;
use crate::braid::shuffle::inverse;
use crate::complexes::chain::{ChainComplex, Coefficients, SparseMatrix};
use crate::complexes::homology::{betti_numbers, smith_homology};
use crate::error::{Error, Result};
use crate::matroid::{build_l_ell, LEll};

/// `act[g][e]`, checked to be a free action.
pub fn action_table(action: &BraidAction, l: &LEll) -> Result<Vec<Vec<usize>>> {
    let act: Vec<Vec<usize>> = crate::par_map(0..action.order(), |g| {
        (0..l.len()).map(|e| l.index_of(&action.act(g, &l.elements[e].vector))).collect::<Option<Vec<_>>>()
    })
    .into_iter()
    .collect::<Option<Vec<_>>>()
    .ok_or_else(|| Error::CellStructure("Σ_k does not preserve ℒ^(ℓ)".into()))?;
    for (g, row) in act.iter().enumerate().skip(1) {
        if let Some(e) = (0..l.len()).find(|&e| row[e] == e) {
            return Err(Error::NotFree(format!("{:?} fixes {}", action.perms[g], l.elements[e].vector)));
        }
    }
    Ok(act)
}

fn check_size(k: usize, ell: u8) -> Result<()> {
    let limit = match ell {
        0 | 1 => 4,
        _ => 3,
    };
    if k < 2 || k > limit || ell > 3 {
        return Err(Error::TooLarge { size: k, limit });
    }
    Ok(())
}

/// Integral chains of the quotient of the order complex.
pub fn quotient_complex(k: usize, ell: u8) -> Result<ChainComplex> {
    check_size(k, ell)?;
    let cov = covector_closure(&braid_arrangement(k)?)?;
    let l = build_l_ell(&cov, ell)?;
    let action = BraidAction::new(k);
    let act = action_table(&action, &l)?;
    let in_identity: Vec<bool> =
        (0..l.len()).map(|e| l.chain_member(e, 0).values().iter().all(|v| v.sign() == -1)).collect();
    let normalizer: Vec<usize> = (0..l.len())
        .map(|e| {
            let g = action.chamber_element(l.chain_member(e, 0))?;
            Ok(action.index_of(&inverse(&action.perms[g])))
        })
        .collect::<Result<_>>()?;

    let mut by_dim: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut cur = Vec::new();
    fn rec(l: &LEll, cur: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        let d = cur.len() - 1;
        if out.len() <= d {
            out.resize(d + 1, Vec::new());
        }
        out[d].push(cur.clone());
        let last = *cur.last().expect("nonempty");
        for next in l.poset.strict_up(last).iter() {
            cur.push(next);
            rec(l, cur, out);
            cur.pop();
        }
    }
    for e in (0..l.len()).filter(|&e| in_identity[e]) {
        cur.push(e);
        rec(&l, &mut cur, &mut by_dim);
        cur.pop();
    }
    let index: Vec<HashMap<&[usize], usize>> =
        by_dim.iter().map(|list| list.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect()).collect();
    let ranks: Vec<usize> = by_dim.iter().map(Vec::len).collect();
    let mut boundaries = vec![SparseMatrix::zero(0, ranks.first().copied().unwrap_or(0))];
    for d in 1..by_dim.len() {
        let cols = by_dim[d]
            .iter()
            .map(|chain| {
                (0..chain.len())
                    .map(|i| {
                        let mut face = chain.clone();
                        face.remove(i);
                        let g = normalizer[face[0]];
                        let canonical: Vec<usize> = face.iter().map(|&e| act[g][e]).collect();
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        index[d - 1]
                            .get(canonical.as_slice())
                            .map(|&j| (j, sign))
                            .ok_or_else(|| Error::CellStructure("orbit face not found".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        boundaries.push(SparseMatrix::from_columns(ranks[d - 1], cols));
    }
    ChainComplex::new(ranks, boundaries, Coefficients::Z)
}

/// Betti numbers of the quotient over a field.
pub fn quotient_homology(k: usize, ell: u8, coefficients: Coefficients) -> Result<Vec<usize>> {
    if !coefficients.is_field() {
        return Err(Error::NotAField);
    }
    let cc = quotient_complex(k, ell)?.with_coefficients(coefficients);
    Ok(betti_numbers(&smith_homology(&cc)?))
}
