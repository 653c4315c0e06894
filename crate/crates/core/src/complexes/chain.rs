//! Chain complexes with integer boundary matrices.

use std::fmt;
use std::str::FromStr;

use crate::complexes::cw::RegularCWComplex;
use crate::complexes::simplicial::SimplicialComplex;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Z,
    Q,
    Fp(u32),
}

impl Coefficients {
    pub fn is_field(self) -> bool {
        !matches!(self, Coefficients::Z)
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Z => f.write_str("Z"),
            Coefficients::Q => f.write_str("Q"),
            Coefficients::Fp(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    /// `Z`, `Q` or `Fp:p` with `p` prime.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Z" => Ok(Coefficients::Z),
            "Q" => Ok(Coefficients::Q),
            other => {
                let p: u32 = other
                    .strip_prefix("Fp:")
                    .and_then(|p| p.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown coefficients {other:?}")))?;
                if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
                    return Err(Error::Parse(format!("{p} is not prime")));
                }
                Ok(Coefficients::Fp(p))
            }
        }
    }
}

/// Column-sparse integer matrix; column `j` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    /// Entries are summed per position and zeros dropped.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Self {
        let cols = columns.len();
        let columns = columns
            .into_iter()
            .map(|mut c| {
                c.sort_unstable_by_key(|e| e.0);
                let mut out: Vec<(usize, i64)> = Vec::with_capacity(c.len());
                for (r, v) in c {
                    match out.last_mut() {
                        Some(last) if last.0 == r => last.1 += v,
                        _ => out.push((r, v)),
                    }
                }
                out.retain(|e| e.1 != 0);
                out
            })
            .collect();
        SparseMatrix { rows, cols, columns }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let columns = (0..ncols)
            .map(|j| (0..nrows).filter(|&i| rows[i][j] != 0).map(|i| (i, rows[i][j])).collect())
            .collect();
        SparseMatrix { rows: nrows, cols: ncols, columns }
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.columns[c].iter().find(|e| e.0 == r).map_or(0, |e| e.1)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                out[i][j] = v;
            }
        }
        out
    }

    /// Row lists `(column, value)`, each sorted by column.
    pub fn row_lists(&self) -> Vec<Vec<(usize, i64)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                rows[i].push((j, v));
            }
        }
        rows
    }

    /// `self ∘ other`, or `None` on overflow.
    pub fn compose(&self, other: &SparseMatrix) -> Option<SparseMatrix> {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut columns = Vec::with_capacity(other.cols);
        let mut acc: Vec<i64> = vec![0; self.rows];
        let mut touched: Vec<usize> = Vec::new();
        for col in &other.columns {
            for &(k, b) in col {
                for &(i, a) in &self.columns[k] {
                    if acc[i] == 0 {
                        touched.push(i);
                    }
                    acc[i] = acc[i].checked_add(a.checked_mul(b)?)?;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut out = Vec::new();
            for &i in &touched {
                if acc[i] != 0 {
                    out.push((i, acc[i]));
                }
                acc[i] = 0;
            }
            touched.clear();
            columns.push(out);
        }
        Some(SparseMatrix { rows: self.rows, cols: other.cols, columns })
    }
}

/// `ranks[d]` generators in degree `d`; `boundaries[d]` maps degree `d` to
/// degree `d - 1` (`boundaries[0]` has no rows).
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub ranks: Vec<usize>,
    pub boundaries: Vec<SparseMatrix>,
    pub coefficients: Coefficients,
}

impl ChainComplex {
    /// Checks shapes and `∂∘∂ = 0` over the integers.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<SparseMatrix>, coefficients: Coefficients) -> Result<Self> {
        if boundaries.len() != ranks.len() {
            return Err(Error::CellStructure(format!(
                "{} boundary maps for {} degrees",
                boundaries.len(),
                ranks.len()
            )));
        }
        for (d, m) in boundaries.iter().enumerate() {
            let rows = if d == 0 { 0 } else { ranks[d - 1] };
            if m.cols != ranks[d] || m.rows != rows {
                return Err(Error::CellStructure(format!("boundary map in degree {d} has the wrong shape")));
            }
        }
        let cc = ChainComplex { ranks, boundaries, coefficients };
        cc.check_boundary_square()?;
        Ok(cc)
    }

    pub fn check_boundary_square(&self) -> Result<()> {
        for d in 2..self.ranks.len() {
            let sq = self.boundaries[d - 1]
                .compose(&self.boundaries[d])
                .ok_or_else(|| Error::BoundarySquareNonzero(format!("overflow in degree {d}")))?;
            if !sq.is_zero() {
                return Err(Error::BoundarySquareNonzero(format!("degree {d}")));
            }
        }
        Ok(())
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.ranks.len().checked_sub(1)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks.iter().enumerate().map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }

    pub fn with_coefficients(mut self, coefficients: Coefficients) -> Self {
        self.coefficients = coefficients;
        self
    }

    /// Cellular chains with the complex's incidence signs.
    pub fn from_cw(c: &RegularCWComplex, coefficients: Coefficients) -> Result<Self> {
        let top = c.cells().iter().map(|x| x.dim).max();
        let Some(top) = top else {
            return Ok(ChainComplex { ranks: vec![], boundaries: vec![], coefficients });
        };
        let mut position = vec![0usize; c.len()];
        let mut ranks = vec![0usize; top + 1];
        for (i, cell) in c.cells().iter().enumerate() {
            position[i] = ranks[cell.dim];
            ranks[cell.dim] += 1;
        }
        let mut columns: Vec<Vec<Vec<(usize, i64)>>> = ranks.iter().map(|&n| vec![Vec::new(); n]).collect();
        for (i, cell) in c.cells().iter().enumerate() {
            columns[cell.dim][position[i]] =
                cell.boundary.iter().map(|&(f, s)| (position[f], s as i64)).collect();
        }
        let boundaries = columns
            .into_iter()
            .enumerate()
            .map(|(d, cols)| SparseMatrix::from_columns(if d == 0 { 0 } else { ranks[d - 1] }, cols))
            .collect();
        Self::new(ranks, boundaries, coefficients)
    }

    /// Simplicial chains, alternating signs on each simplex's vertex order.
    pub fn from_simplicial(s: &SimplicialComplex, coefficients: Coefficients) -> Result<Self> {
        let Some(top) = s.dim() else {
            return Ok(ChainComplex { ranks: vec![], boundaries: vec![], coefficients });
        };
        let index = s.index();
        let ranks: Vec<usize> = (0..=top).map(|d| s.simplices(d).len()).collect();
        let mut boundaries = vec![SparseMatrix::zero(0, ranks[0])];
        for d in 1..=top {
            let cols = s
                .simplices(d)
                .iter()
                .map(|simplex| {
                    (0..simplex.len())
                        .map(|i| {
                            let mut face = simplex.clone();
                            face.remove(i);
                            let sign = if i % 2 == 0 { 1 } else { -1 };
                            (index[d - 1][face.as_slice()], sign)
                        })
                        .collect()
                })
                .collect();
            boundaries.push(SparseMatrix::from_columns(ranks[d - 1], cols));
        }
        Self::new(ranks, boundaries, coefficients)
    }
}
