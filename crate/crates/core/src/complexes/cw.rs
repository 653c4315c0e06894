//! Regular CW complexes given by a graded face poset, and the Salvetti
//! complex on `ℒ^(ℓ)`.
//!
//! A cell's closure is its up-set: `ψ` is a face of `φ` iff `ψ >= φ`. The
//! dimension of the cell with chain `C >= F_1 >= … >= F_ℓ` is
//! `Σ codim F_i`.

use serde::Serialize;

use crate::complexes::chain::{ChainComplex, Coefficients};
use crate::complexes::poset::Poset;
use crate::error::{Error, Result};
use crate::matroid::{CovectorSet, LEll};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub dim: usize,
    /// Facets with incidence numbers.
    pub boundary: Vec<(usize, i8)>,
}

#[derive(Clone, Debug)]
pub struct RegularCWComplex {
    cells: Vec<Cell>,
}

impl RegularCWComplex {
    /// Checks facet dimensions and `∂∘∂ = 0`.
    pub fn new(cells: Vec<Cell>) -> Result<Self> {
        for (i, c) in cells.iter().enumerate() {
            for &(f, s) in &c.boundary {
                if f >= cells.len() || cells[f].dim + 1 != c.dim || (s != 1 && s != -1) {
                    return Err(Error::CellStructure(format!("bad facet {f} of cell {i}")));
                }
            }
        }
        let cw = RegularCWComplex { cells };
        ChainComplex::from_cw(&cw, Coefficients::Z)?;
        Ok(cw)
    }

    /// Cells from a face poset where the facets of `i` are its upper covers.
    /// Incidence numbers come from diamond propagation.
    pub fn from_face_poset(poset: &Poset, dims: &[usize]) -> Result<Self> {
        let n = poset.len();
        for i in 0..n {
            for &j in poset.covers(i) {
                if dims[j] + 1 != dims[i] {
                    return Err(Error::CellStructure(format!(
                        "cover {j} of cell {i} has dimension {} instead of {}",
                        dims[j],
                        dims[i] as i64 - 1
                    )));
                }
            }
            if dims[i] == 0 && !poset.covers(i).is_empty() {
                return Err(Error::CellStructure(format!("0-cell {i} has facets")));
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (dims[i], i));
        let mut boundary: Vec<Vec<(usize, i8)>> = vec![Vec::new(); n];
        for &cell in &order {
            boundary[cell] = match dims[cell] {
                0 => Vec::new(),
                1 => {
                    let f = poset.covers(cell);
                    if f.len() != 2 {
                        return Err(Error::CellStructure(format!("1-cell {cell} has {} ends", f.len())));
                    }
                    vec![(f[0], 1), (f[1], -1)]
                }
                _ => diamond_signs(cell, poset.covers(cell), &boundary)?,
            };
            boundary[cell].sort_unstable();
        }
        let cells = boundary.into_iter().zip(dims).map(|(b, &dim)| Cell { dim, boundary: b }).collect();
        Self::new(cells)
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.cells.iter().map(|c| c.dim).max()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim().map_or(0, |d| d + 1)];
        for c in &self.cells {
            f[c.dim] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }

    pub fn incidence(&self, cell: usize, facet: usize) -> i8 {
        self.cells[cell].boundary.iter().find(|e| e.0 == facet).map_or(0, |e| e.1)
    }
}

/// Signs on the facets of one cell: the first facet gets `+1`, and every
/// codimension-2 face `τ` shared by facets `ρ_1, ρ_2` forces
/// `[σ:ρ_1][ρ_1:τ] = -[σ:ρ_2][ρ_2:τ]`.
fn diamond_signs(cell: usize, facets: &[usize], boundary: &[Vec<(usize, i8)>]) -> Result<Vec<(usize, i8)>> {
    let mut containing: std::collections::BTreeMap<usize, Vec<(usize, i8)>> = Default::default();
    for (fi, &f) in facets.iter().enumerate() {
        for &(t, s) in &boundary[f] {
            containing.entry(t).or_default().push((fi, s));
        }
    }
    let mut edges: Vec<Vec<(usize, i8)>> = vec![Vec::new(); facets.len()];
    for (t, list) in &containing {
        let [(a, sa), (b, sb)] = list.as_slice() else {
            return Err(Error::CellStructure(format!(
                "face {t} lies in {} facets of cell {cell}",
                list.len()
            )));
        };
        // sign(b) = -sign(a) * sa * sb
        let rel = -sa * sb;
        edges[*a].push((*b, rel));
        edges[*b].push((*a, rel));
    }
    let mut sign = vec![0i8; facets.len()];
    sign[0] = 1;
    let mut stack = vec![0];
    while let Some(a) = stack.pop() {
        for &(b, rel) in &edges[a] {
            let want = sign[a] * rel;
            if sign[b] == 0 {
                sign[b] = want;
                stack.push(b);
            } else if sign[b] != want {
                return Err(Error::CellStructure(format!("inconsistent incidence signs in cell {cell}")));
            }
        }
    }
    if sign.contains(&0) {
        return Err(Error::CellStructure(format!("boundary of cell {cell} is not connected through diamonds")));
    }
    Ok(facets.iter().zip(sign).map(|(&f, s)| (f, s)).collect())
}

/// Codimension of every covector: the length of a longest chain from it up
/// to a tope.
pub fn face_codims(l: &CovectorSet) -> Result<Vec<usize>> {
    let p = Poset::from_leq(l.len(), |i, j| l.vectors()[i].leq_unchecked(&l.vectors()[j]))?;
    Ok(p.height_above())
}

/// The Salvetti complex: one cell per element of `ℒ^(ℓ)`.
#[derive(Clone, Debug)]
pub struct SalvettiComplex {
    pub lell: LEll,
    pub cw: RegularCWComplex,
    /// Codimension per covector index.
    pub codims: Vec<usize>,
}

#[derive(Serialize)]
struct CellJson {
    id: usize,
    dim: usize,
    chain: Vec<String>,
    boundary: Vec<(usize, i8)>,
}

#[derive(Serialize)]
struct ComplexJson {
    cells: Vec<CellJson>,
}

impl SalvettiComplex {
    pub fn ell(&self) -> u8 {
        self.lell.ell
    }

    pub fn chain(&self, cell: usize) -> Vec<&crate::signs::SignVector> {
        (0..=self.lell.ell as usize).map(|i| self.lell.chain_member(cell, i)).collect()
    }

    /// `{"cells": [{"id", "dim", "chain", "boundary"}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let cells = (0..self.cw.len())
            .map(|i| CellJson {
                id: i,
                dim: self.cw.cells()[i].dim,
                chain: self.chain(i).iter().map(|v| v.to_string()).collect(),
                boundary: self.cw.cells()[i].boundary.clone(),
            })
            .collect();
        serde_json::to_value(ComplexJson { cells }).expect("serializable")
    }
}

pub fn salvetti_cw(l: &LEll) -> Result<SalvettiComplex> {
    let codims = face_codims(&l.covectors)?;
    let dims: Vec<usize> = l.elements.iter().map(|e| e.chain[1..].iter().map(|&f| codims[f]).sum()).collect();
    // the dimension must be the length of the longest chain in the up-set
    let heights = l.poset.height_above();
    if let Some(i) = (0..dims.len()).find(|&i| dims[i] != heights[i]) {
        return Err(Error::CellStructure(format!(
            "cell {} has codimension sum {} but up-set height {}",
            l.elements[i].vector, dims[i], heights[i]
        )));
    }
    let cw = RegularCWComplex::from_face_poset(&l.poset, &dims)?;
    Ok(SalvettiComplex { lell: l.clone(), cw, codims })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{braid_arrangement, covectors};
    use crate::matroid::build_l_ell;

    fn sal(k: usize, ell: u8) -> SalvettiComplex {
        let l = covectors(&braid_arrangement(k).unwrap()).unwrap();
        salvetti_cw(&build_l_ell(&l, ell).unwrap()).unwrap()
    }

    #[test]
    fn f_vectors() {
        assert_eq!(sal(2, 1).cw.f_vector(), vec![2, 2]);
        assert_eq!(sal(3, 1).cw.f_vector(), vec![6, 12, 6]);
        let s = sal(3, 2);
        assert_eq!(s.cw.f_vector(), vec![6, 12, 18, 12, 6]);
        assert_eq!(s.cw.euler_characteristic(), 6);
    }

    #[test]
    fn up_set_rule_at_level_one() {
        let s = sal(3, 1);
        let l = &s.lell;
        for e in 0..l.len() {
            let c = l.chain_member(e, 0);
            let f = l.chain_member(e, 1);
            let mut expected: Vec<usize> = l
                .covectors
                .vectors()
                .iter()
                .filter(|g| f.leq_unchecked(g) && *g != f)
                .map(|g| {
                    let v = crate::matroid::encode_chain(&[g.compose_unchecked(c), g.clone()]).unwrap();
                    l.index_of(&v).unwrap()
                })
                .collect();
            expected.sort_unstable();
            let got: Vec<usize> = l.poset.strict_up(e).iter().collect();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn json_export_shape() {
        let v = sal(2, 1).to_json();
        let cells = v["cells"].as_array().unwrap();
        assert_eq!(cells.len(), 4);
        assert!(cells.iter().all(|c| c["chain"].as_array().unwrap().len() == 2));
    }
}
