//! Finite posets stored as a transitively closed bitset plus the Hasse
//! diagram.

use crate::error::{Error, Result};

/// Dense bit matrix row; one row per element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(n: usize) -> Self {
        BitSet { words: vec![0; n.div_ceil(64)] }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }
}

/// A finite poset on `0..len`.
#[derive(Clone, Debug)]
pub struct Poset {
    /// `up[i]` holds every `j` with `i < j`.
    up: Vec<BitSet>,
    /// `down[i]` holds every `j` with `j < i`.
    down: Vec<BitSet>,
    covers: Vec<Vec<usize>>,
}

impl Poset {
    /// Build from a reflexive order predicate. The predicate must be a
    /// partial order; antisymmetry and transitivity are checked.
    pub fn from_leq(n: usize, leq: impl Fn(usize, usize) -> bool + Sync) -> Result<Self> {
        let rows: Vec<BitSet> = crate::par_map(0..n, |i| {
            let mut row = BitSet::new(n);
            for j in 0..n {
                if i != j && leq(i, j) {
                    row.insert(j);
                }
            }
            row
        });
        Self::from_strict_up(rows)
    }

    /// Build from the strict up-sets. Fails on a cycle or a non-transitive
    /// relation.
    pub fn from_strict_up(up: Vec<BitSet>) -> Result<Self> {
        let n = up.len();
        for i in 0..n {
            for j in up[i].iter() {
                if up[j].contains(i) || j == i {
                    return Err(Error::CyclicPoset);
                }
                if !up[j].is_subset(&up[i]) {
                    return Err(Error::CellStructure(format!("order is not transitive at ({i}, {j})")));
                }
            }
        }
        let mut down = vec![BitSet::new(n); n];
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j].insert(i);
            }
        }
        // j covers i iff nothing lies strictly between them
        let covers = (0..n)
            .map(|i| up[i].iter().filter(|&j| !up[i].intersects(&down[j])).collect())
            .collect();
        Ok(Poset { up, down, covers })
    }

    /// Build from explicit relations `(a, b)` meaning `a < b`; the transitive
    /// closure is taken.
    pub fn from_relations(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        let mut up = vec![BitSet::new(n); n];
        for &(a, b) in relations {
            if a == b {
                return Err(Error::CyclicPoset);
            }
            up[a].insert(b);
        }
        // Floyd–Warshall style closure on bitsets
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    for (a, b) in row.words.iter_mut().zip(&row_k.words) {
                        *a |= b;
                    }
                }
            }
        }
        Self::from_strict_up(up)
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.lt(a, b)
    }

    pub fn strict_up(&self, a: usize) -> &BitSet {
        &self.up[a]
    }

    pub fn strict_down(&self, a: usize) -> &BitSet {
        &self.down[a]
    }

    /// Elements covering `a`.
    pub fn covers(&self, a: usize) -> &[usize] {
        &self.covers[a]
    }

    /// Length of the longest chain starting at `a` and going up.
    pub fn height_above(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| self.up[i].count());
        let mut h = vec![0usize; n];
        for &i in &order {
            h[i] = self.covers[i].iter().map(|&j| h[j] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Induced subposet on `keep` (in the given order).
    pub fn restrict(&self, keep: &[usize]) -> Poset {
        let m = keep.len();
        let up = keep
            .iter()
            .map(|&a| {
                let mut row = BitSet::new(m);
                for (j, &b) in keep.iter().enumerate() {
                    if self.lt(a, b) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        Self::from_strict_up(up).expect("subposet of a poset")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_of_three() {
        let p = Poset::from_relations(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.lt(0, 2));
        assert_eq!(p.covers(0), &[1]);
        assert_eq!(p.height_above(), vec![2, 1, 0]);
    }

    #[test]
    fn rejects_cycles() {
        assert_eq!(Poset::from_relations(2, &[(0, 1), (1, 0)]).unwrap_err(), Error::CyclicPoset);
        assert!(Poset::from_leq(2, |_, _| true).is_err());
    }

    #[test]
    fn bitset_iteration() {
        let mut b = BitSet::new(130);
        for i in [0, 63, 64, 129] {
            b.insert(i);
        }
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        b.remove(63);
        assert_eq!(b.count(), 3);
    }
}
