//! Ordered set partitions `λ : {1..k} -> {1..k-r}`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A surjection `λ : {1..k} -> {1..k-r}`; `r` is the rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    values: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    All,
    OrderPreserving,
}

impl Partition {
    /// `values[i]` is `λ(i + 1)`; must be onto `1..=max`.
    pub fn new(values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidPartition("empty".into()));
        }
        let blocks = values.iter().copied().max().unwrap_or(0);
        let mut hit = vec![false; blocks + 1];
        for &v in &values {
            if v == 0 {
                return Err(Error::InvalidPartition(format!("{values:?} has a zero value")));
            }
            hit[v] = true;
        }
        if hit[1..].iter().any(|h| !h) {
            return Err(Error::InvalidPartition(format!("{values:?} is not surjective")));
        }
        Ok(Partition { values })
    }

    /// The one-block partition `(1,…,k)`.
    pub fn trivial(k: usize) -> Self {
        Partition { values: vec![1; k] }
    }

    /// The permutation `g` as the rank-0 partition `i ↦ g(i)`; `g` is
    /// zero-based.
    pub fn from_permutation(g: &[usize]) -> Self {
        Partition { values: g.iter().map(|&x| x + 1).collect() }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn k(&self) -> usize {
        self.values.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.values.iter().copied().max().unwrap_or(0)
    }

    pub fn rank(&self) -> usize {
        self.k() - self.num_blocks()
    }

    /// Blocks `λ^{-1}(1), λ^{-1}(2), …` as sorted one-based elements.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (i, &v) in self.values.iter().enumerate() {
            out[v - 1].push(i + 1);
        }
        out
    }

    /// `t(λ) = (|λ^{-1}(1)|, …)`.
    pub fn block_type(&self) -> Vec<usize> {
        self.blocks().iter().map(Vec::len).collect()
    }

    pub fn is_order_preserving(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }

    /// True iff `other` is a subdivision of `self`: each block of `self` is
    /// a union of consecutive blocks of `other`.
    pub fn is_refined_by(&self, other: &Partition) -> bool {
        if self.k() != other.k() {
            return false;
        }
        let mut image = vec![0usize; other.num_blocks() + 1];
        for (&mine, &theirs) in self.values.iter().zip(&other.values) {
            if image[theirs] != 0 && image[theirs] != mine {
                return false;
            }
            image[theirs] = mine;
        }
        image[1..].windows(2).all(|w| w[0] <= w[1])
    }

    /// Zero-based permutation `i ↦ λ(i+1) - 1` of a rank-0 partition.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        (self.rank() == 0).then(|| self.values.iter().map(|v| v - 1).collect())
    }

    /// `λ ∘ g^{-1}`: the action of `g ∈ Σ_k` (zero-based) on partitions.
    pub fn act(&self, g: &[usize]) -> Partition {
        let mut values = vec![0; self.k()];
        for (i, &gi) in g.iter().enumerate() {
            values[gi] = self.values[i];
        }
        Partition { values }
    }

    /// All of `Π_k`, by rank and then lexicographically.
    pub fn all(k: usize) -> Vec<Partition> {
        (0..k).flat_map(|r| Self::enumerate(k, r, Mode::All).expect("rank in range")).collect()
    }

    /// `Π_{k,r}` or `O_{k,r}` in lexicographic order of values.
    pub fn enumerate(k: usize, r: usize, mode: Mode) -> Result<Vec<Partition>> {
        if k == 0 || r >= k {
            return Err(Error::OutOfRange(format!("rank {r} for k = {k}")));
        }
        let blocks = k - r;
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(k: usize, blocks: usize, mode: Mode, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if cur.len() == k {
                let mut hit = vec![false; blocks + 1];
                for &v in cur.iter() {
                    hit[v] = true;
                }
                if hit[1..].iter().all(|&h| h) {
                    out.push(Partition { values: cur.clone() });
                }
                return;
            }
            let lo = match mode {
                Mode::All => 1,
                Mode::OrderPreserving => cur.last().copied().unwrap_or(1),
            };
            for v in lo..=blocks {
                cur.push(v);
                rec(k, blocks, mode, cur, out);
                cur.pop();
            }
        }
        rec(k, blocks, mode, &mut cur, &mut out);
        Ok(out)
    }
}

impl fmt::Display for Partition {
    /// `(1|2,3)`: blocks left to right, elements comma separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| b.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "({})", blocks.join("|"))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a partition: {s:?}"));
        let inner = s.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
        let mut assigned: Vec<(usize, usize)> = Vec::new();
        for (b, block) in inner.split('|').enumerate() {
            for e in block.split(',') {
                let e: usize = e.trim().parse().map_err(|_| bad())?;
                assigned.push((e, b + 1));
            }
        }
        let k = assigned.len();
        let mut values = vec![0; k];
        for (e, b) in assigned {
            if e == 0 || e > k || values[e - 1] != 0 {
                return Err(bad());
            }
            values[e - 1] = b;
        }
        Partition::new(values)
    }
}

/// `C(n, r)`.
pub fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Partition::enumerate(3, 1, Mode::All).unwrap().len(), 6);
        assert_eq!(Partition::enumerate(3, 1, Mode::OrderPreserving).unwrap(), vec![p("(1,2|3)"), p("(1|2,3)")]);
        assert_eq!(Partition::all(3).len(), 13);
        assert_eq!(Partition::all(4).len(), 75);
        assert!(Partition::enumerate(3, 3, Mode::All).is_err());
        for k in 1..=6 {
            for r in 0..k {
                let o = Partition::enumerate(k, r, Mode::OrderPreserving).unwrap();
                assert_eq!(o.len(), binomial(k - 1, r));
            }
        }
    }

    #[test]
    fn parse_and_display() {
        let l = p("(1|2,3)");
        assert_eq!(l.values(), &[1, 2, 2]);
        assert_eq!(l.rank(), 1);
        assert_eq!(l.block_type(), vec![1, 2]);
        assert_eq!(l.to_string(), "(1|2,3)");
        assert_eq!(p("(2|1)").values(), &[2, 1]);
        assert!("(1|1)".parse::<Partition>().is_err());
        assert!("1|2".parse::<Partition>().is_err());
        assert!(Partition::new(vec![1, 3]).is_err());
    }

    #[test]
    fn subdivision() {
        assert!(p("(1,2,3)").is_refined_by(&p("(1|2,3)")));
        assert!(p("(1|2,3)").is_refined_by(&p("(1|3|2)")));
        assert!(!p("(1|2,3)").is_refined_by(&p("(2|1|3)")));
        assert!(!p("(1|2,3)").is_refined_by(&p("(2,3|1)")));
        assert!(p("(2,3|1)").is_refined_by(&p("(2,3|1)")));
    }

    #[test]
    fn action_composes() {
        let l = p("(1|2,3)");
        let g = [1, 2, 0];
        let h = [2, 0, 1];
        let gh: Vec<usize> = (0..3).map(|i| g[h[i]]).collect();
        assert_eq!(l.act(&h).act(&g), l.act(&gh));
    }
}
