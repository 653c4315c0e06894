//! `(p_1, …, p_s)`-shuffles.

use crate::error::{Error, Result};

/// A permutation of `1..k` increasing on each consecutive block of
/// positions of sizes `p_1, …, p_s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shuffle {
    /// Zero-based images `σ(i)`.
    pub perm: Vec<usize>,
    pub kind: Vec<usize>,
}

impl Shuffle {
    pub fn sign(&self) -> i8 {
        permutation_sign(&self.perm)
    }
}

/// Parity of a zero-based permutation.
pub fn permutation_sign(perm: &[usize]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Inverse of a zero-based permutation.
pub fn inverse(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).expect("exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// `S_{p_1,…,p_s}` with signs, ordered by the image sequence.
pub fn shuffles(kind: &[usize]) -> Result<Vec<(Shuffle, i8)>> {
    if kind.is_empty() || kind.contains(&0) {
        return Err(Error::InvalidComposition(format!("{kind:?}")));
    }
    let k: usize = kind.iter().sum();
    // assign each value to a block, then read blocks in order
    let mut out = Vec::new();
    let mut owner = vec![0usize; k];
    let mut left = kind.to_vec();
    fn rec(v: usize, k: usize, kind: &[usize], owner: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<(Shuffle, i8)>) {
        if v == k {
            let mut perm = Vec::with_capacity(k);
            for b in 0..kind.len() {
                perm.extend((0..k).filter(|&x| owner[x] == b));
            }
            let s = Shuffle { perm, kind: kind.to_vec() };
            let sign = s.sign();
            out.push((s, sign));
            return;
        }
        for b in 0..kind.len() {
            if left[b] > 0 {
                left[b] -= 1;
                owner[v] = b;
                rec(v + 1, k, kind, owner, left, out);
                left[b] += 1;
            }
        }
    }
    rec(0, k, kind, &mut owner, &mut left, &mut out);
    out.sort_by(|a, b| a.0.perm.cmp(&b.0.perm));
    Ok(out)
}
