//! `E¹` and `E²` pages: `C_*(Sal^(ℓ-1)(A_{k-1})) ⊗_{Σ_k} W^{⊗k}` with the
//! induced differential, one block per `k`.
//!
//! A cell of dimension `d` sits in filtration `s = (ℓ-1)(k-1) + 1 - d`; for
//! `ℓ = 2` this is the number of blocks of its partition. The internal degree
//! `t` is the total degree of the word.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::braid::equivariant::{act_on_word, equivariant_complex, GradedModule, OrbitComplex};
use crate::complexes::chain::{ChainComplex, SparseMatrix};
use crate::complexes::homology::{betti_numbers, smith_homology};
use crate::error::{Error, Result};

pub const MAX_K: usize = 6;
pub const MAX_ELL: u8 = 3;
/// Largest `k` for pages that go through the cellular orbit complex.
pub const MAX_K_CELLULAR: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    /// Coefficients `h̃_*(X^{∧k})`: generator degrees as given.
    Unshifted,
    /// Coefficients `h̃_*((ΣX)^{∧k})`: every generator degree raised by one.
    Shifted,
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normalization::Unshifted => "unshifted",
            Normalization::Shifted => "shifted",
        })
    }
}

impl FromStr for Normalization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unshifted" => Ok(Normalization::Unshifted),
            "shifted" => Ok(Normalization::Shifted),
            _ => Err(Error::Parse(format!("unknown normalization {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageConfig {
    pub coefficients: GradedModule,
    pub k_max: usize,
    pub ell: u8,
    pub normalization: Normalization,
    pub koszul: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PageEntry {
    pub s: i64,
    pub t: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PageBlock {
    pub k: usize,
    pub ell: u8,
    pub normalization: Normalization,
    pub koszul: bool,
    #[serde(rename = "E1")]
    pub e1: Vec<PageEntry>,
    #[serde(rename = "E2")]
    pub e2: Vec<PageEntry>,
}

impl PageBlock {
    /// `Σ_t dim` per `s`, for `s` from high to low.
    pub fn totals(entries: &[PageEntry]) -> Vec<(i64, usize)> {
        let mut acc: BTreeMap<i64, usize> = BTreeMap::new();
        for e in entries {
            *acc.entry(e.s).or_default() += e.dim;
        }
        acc.into_iter().rev().collect()
    }

    pub fn euler(entries: &[PageEntry]) -> i64 {
        entries.iter().map(|e| if e.s % 2 == 0 { e.dim as i64 } else { -(e.dim as i64) }).sum()
    }
}

/// Orbit representatives and their equivariant boundary
/// `∂[r] = Σ coef · g_*[target]`.
#[derive(Clone, Debug)]
pub struct OrbitData {
    pub top: usize,
    pub rep_dims: Vec<usize>,
    pub terms: Vec<Vec<(usize, Vec<usize>, i64)>>,
}

/// Orbit data for `Sal^(ℓ-1)(A_{k-1})`: the shuffle formula for `ℓ = 2`,
/// the cellular orbit complex otherwise.
pub fn orbit_data(k: usize, ell: u8) -> Result<OrbitData> {
    if k == 0 || k > MAX_K {
        return Err(Error::TooLarge { size: k, limit: MAX_K });
    }
    if ell == 0 || ell > MAX_ELL {
        return Err(Error::LevelOutOfRange { level: ell, max: MAX_ELL });
    }
    if k == 1 || ell == 1 {
        // a free orbit of points
        return Ok(OrbitData { top: 0, rep_dims: vec![0], terms: vec![vec![]] });
    }
    if ell == 2 {
        let eq = equivariant_complex(k)?;
        let flat: Vec<_> = eq.basis.iter().flatten().cloned().collect();
        let index: HashMap<_, usize> = flat.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let terms = flat
            .iter()
            .map(|lambda| eq.terms(lambda).into_iter().map(|(tau, rho, c)| (index[&tau], rho, c)).collect())
            .collect();
        return Ok(OrbitData { top: k - 1, rep_dims: flat.iter().map(|p| p.rank()).collect(), terms });
    }
    if k > MAX_K_CELLULAR {
        return Err(Error::TooLarge { size: k, limit: MAX_K_CELLULAR });
    }
    let oc = OrbitComplex::new(k, ell - 1)?;
    let terms = oc
        .equivariant_boundary()
        .into_iter()
        .map(|ts| ts.into_iter().map(|t| (t.target, oc.action.perms[t.g].clone(), t.coef)).collect())
        .collect();
    let rep_dims = (0..oc.reps.len()).map(|r| oc.rep_dim(r)).collect();
    Ok(OrbitData { top: (ell as usize - 1) * (k - 1), rep_dims, terms })
}

fn words(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out.into_iter().flat_map(|w| (0..m).map(move |x| [w.clone(), vec![x]].concat())).collect();
    }
    out
}

/// The `d¹` complex of one block, split by internal degree `t`.
#[derive(Clone, Debug)]
pub struct BlockComplex {
    pub k: usize,
    pub top: usize,
    /// `(t, chains)`; chain degree `d` is the cell dimension.
    pub by_t: Vec<(i64, ChainComplex)>,
}

impl BlockComplex {
    pub fn filtration(&self, d: usize) -> i64 {
        self.top as i64 + 1 - d as i64
    }
}

pub fn block_complex(k: usize, cfg: &PageConfig) -> Result<BlockComplex> {
    if !cfg.coefficients.field.is_field() {
        return Err(Error::NotAField);
    }
    let data = orbit_data(k, cfg.ell)?;
    let degrees: Vec<i64> = match cfg.normalization {
        Normalization::Unshifted => cfg.coefficients.degrees.clone(),
        Normalization::Shifted => cfg.coefficients.degrees.iter().map(|d| d + 1).collect(),
    };
    let all_words = words(degrees.len(), k);
    let weight = |w: &[usize]| w.iter().map(|&x| degrees[x]).sum::<i64>();
    let ts: BTreeSet<i64> = all_words.iter().map(|w| weight(w)).collect();
    let mut by_t = Vec::new();
    for t in ts {
        let ws: Vec<&Vec<usize>> = all_words.iter().filter(|w| weight(w) == t).collect();
        let mut basis: Vec<Vec<(usize, &Vec<usize>)>> = vec![Vec::new(); data.top + 1];
        for (r, &d) in data.rep_dims.iter().enumerate() {
            for w in &ws {
                basis[d].push((r, w));
            }
        }
        let index: Vec<HashMap<(usize, &[usize]), usize>> = basis
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, &(r, w))| ((r, w.as_slice()), i)).collect())
            .collect();
        let ranks: Vec<usize> = basis.iter().map(Vec::len).collect();
        let mut boundaries = vec![SparseMatrix::zero(0, ranks[0])];
        for d in 1..=data.top {
            let cols = basis[d]
                .iter()
                .map(|&(r, w)| {
                    data.terms[r]
                        .iter()
                        .map(|(target, g, coef)| {
                            let (moved, sign) = act_on_word(w, g, &degrees, cfg.koszul);
                            (index[d - 1][&(*target, moved.as_slice())], coef * sign)
                        })
                        .collect()
                })
                .collect();
            boundaries.push(SparseMatrix::from_columns(ranks[d - 1], cols));
        }
        by_t.push((t, ChainComplex::new(ranks, boundaries, cfg.coefficients.field)?));
    }
    Ok(BlockComplex { k, top: data.top, by_t })
}

pub fn page_block(k: usize, cfg: &PageConfig) -> Result<PageBlock> {
    let block = block_complex(k, cfg)?;
    let mut e1 = Vec::new();
    let mut e2 = Vec::new();
    for (t, cc) in &block.by_t {
        let betti = betti_numbers(&smith_homology(cc)?);
        for d in 0..cc.ranks.len() {
            let s = block.filtration(d);
            if cc.ranks[d] > 0 {
                e1.push(PageEntry { s, t: *t, dim: cc.ranks[d] });
            }
            if betti[d] > 0 {
                e2.push(PageEntry { s, t: *t, dim: betti[d] });
            }
        }
    }
    e1.sort_by_key(|e| (std::cmp::Reverse(e.s), e.t));
    e2.sort_by_key(|e| (std::cmp::Reverse(e.s), e.t));
    if PageBlock::euler(&e1) != PageBlock::euler(&e2) {
        return Err(Error::CellStructure(format!("Euler characteristics of E1 and E2 differ for k = {k}")));
    }
    Ok(PageBlock { k, ell: cfg.ell, normalization: cfg.normalization, koszul: cfg.koszul, e1, e2 })
}

/// One block per `k = 1..=k_max`, computed in parallel.
pub fn build_pages(cfg: &PageConfig) -> Result<Vec<PageBlock>> {
    if cfg.k_max == 0 || cfg.k_max > MAX_K {
        return Err(Error::TooLarge { size: cfg.k_max, limit: MAX_K });
    }
    if !cfg.coefficients.field.is_field() {
        return Err(Error::NotAField);
    }
    crate::par_map(1..cfg.k_max + 1, |k| page_block(k, cfg)).into_iter().collect()
}
