//! Abstract simplicial complexes and order complexes of posets.

use std::collections::HashMap;

use crate::complexes::poset::Poset;

/// Simplices grouped by dimension. Each simplex is a vertex list in a fixed
/// order (chain order for order complexes, ascending otherwise).
#[derive(Clone, Debug, Default)]
pub struct SimplicialComplex {
    n_vertices: usize,
    by_dim: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// Downward closure of `facets`; vertex lists are sorted.
    pub fn from_facets(n_vertices: usize, facets: &[Vec<usize>]) -> Self {
        let mut seen: std::collections::HashSet<Vec<usize>> = std::collections::HashSet::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            let m = f.len();
            for mask in 1u64..(1 << m) {
                seen.insert((0..m).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect());
            }
        }
        let mut all: Vec<Vec<usize>> = seen.into_iter().collect();
        all.sort();
        Self::from_sorted_simplices(n_vertices, all)
    }

    fn from_sorted_simplices(n_vertices: usize, simplices: Vec<Vec<usize>>) -> Self {
        let mut by_dim: Vec<Vec<Vec<usize>>> = Vec::new();
        for s in simplices {
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, Vec::new());
            }
            by_dim[d].push(s);
        }
        SimplicialComplex { n_vertices, by_dim }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Dimension, or `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn simplices(&self, d: usize) -> &[Vec<usize>] {
        self.by_dim.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }

    /// Position of each simplex within its dimension.
    pub fn index(&self) -> Vec<HashMap<&[usize], usize>> {
        self.by_dim
            .iter()
            .map(|list| list.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect())
            .collect()
    }
}

/// Chains of `p`, listed bottom to top.
pub fn order_complex(p: &Poset) -> SimplicialComplex {
    let all: Vec<usize> = (0..p.len()).collect();
    order_complex_on(p, &all)
}

/// Chains of the subposet on `subset`; vertices keep their ids in `p`.
pub fn order_complex_on(p: &Poset, subset: &[usize]) -> SimplicialComplex {
    let mut member = vec![false; p.len()];
    for &v in subset {
        member[v] = true;
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(p: &Poset, member: &[bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        let last = *cur.last().expect("nonempty");
        for next in p.strict_up(last).iter() {
            if member[next] {
                cur.push(next);
                rec(p, member, cur, out);
                cur.pop();
            }
        }
    }
    let mut roots: Vec<usize> = subset.to_vec();
    roots.sort_unstable();
    roots.dedup();
    for v in roots {
        cur.push(v);
        rec(p, &member, &mut cur, &mut out);
        cur.pop();
    }
    SimplicialComplex::from_sorted_simplices(p.len(), out)
}
