//! Homology via Smith normal form.
//!
//! Unit pivots are eliminated sparsely in `i128`; what remains (entries
//! without a unit) is reduced densely over `BigInt`. Any overflow restarts
//! the whole matrix densely.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::complexes::chain::{ChainComplex, Coefficients, SparseMatrix};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub degree: usize,
    pub betti: usize,
    /// Orders of cyclic torsion summands (integer coefficients only).
    #[serde(serialize_with = "as_strings")]
    pub torsion: Vec<BigInt>,
}

fn as_strings<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

#[derive(Clone, Copy)]
enum Arith {
    Int,
    Mod(i128),
}

impl Arith {
    fn is_unit(self, x: i128) -> bool {
        match self {
            Arith::Int => x == 1 || x == -1,
            Arith::Mod(_) => x != 0,
        }
    }

    fn inv(self, x: i128) -> i128 {
        match self {
            Arith::Int => x,
            Arith::Mod(p) => {
                let (mut base, mut e, mut acc) = (x.rem_euclid(p), p - 2, 1i128);
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    e >>= 1;
                }
                acc
            }
        }
    }

    /// `a - f * b`.
    fn mul_sub(self, a: i128, f: i128, b: i128) -> Option<i128> {
        match self {
            Arith::Int => a.checked_sub(f.checked_mul(b)?),
            Arith::Mod(p) => Some((a - f * b % p).rem_euclid(p)),
        }
    }

    fn mul(self, a: i128, b: i128) -> Option<i128> {
        match self {
            Arith::Int => a.checked_mul(b),
            Arith::Mod(p) => Some(a * b % p),
        }
    }
}

struct Overflow;

/// Eliminates unit pivots; returns their count and the remaining rows.
fn eliminate_units(m: &SparseMatrix, arith: Arith) -> std::result::Result<(usize, Vec<Vec<(usize, i128)>>), Overflow> {
    let mut rows: Vec<Vec<(usize, i128)>> = m
        .row_lists()
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|(j, v)| {
                    let v = v as i128;
                    (j, if let Arith::Mod(p) = arith { v.rem_euclid(p) } else { v })
                })
                .filter(|e| e.1 != 0)
                .collect()
        })
        .collect();
    let mut cols: Vec<HashSet<usize>> = vec![HashSet::new(); m.cols];
    for (i, r) in rows.iter().enumerate() {
        for &(j, _) in r {
            cols[j].insert(i);
        }
    }
    let mut rank = 0;
    loop {
        let mut order: Vec<usize> = (0..m.cols).filter(|&c| !cols[c].is_empty()).collect();
        order.sort_by_key(|&c| (cols[c].len(), c));
        let mut progress = false;
        for c in order {
            // Markowitz-style choice: the shortest row with a unit in column c
            let mut best: Option<(usize, usize, i128)> = None;
            for &r in &cols[c] {
                let v = rows[r].binary_search_by_key(&c, |e| e.0).map(|p| rows[r][p].1).unwrap_or(0);
                if arith.is_unit(v) && best.is_none_or(|b| (rows[r].len(), r) < (b.1, b.0)) {
                    best = Some((r, rows[r].len(), v));
                }
            }
            let Some((r, _, v)) = best else { continue };
            let pivot_row = std::mem::take(&mut rows[r]);
            for &(j, _) in &pivot_row {
                cols[j].remove(&r);
            }
            let inv = arith.inv(v);
            let mut targets: Vec<usize> = cols[c].iter().copied().collect();
            targets.sort_unstable();
            for r2 in targets {
                let a = rows[r2][rows[r2].binary_search_by_key(&c, |e| e.0).expect("indexed")].1;
                let f = arith.mul(a, inv).ok_or(Overflow)?;
                let old = std::mem::take(&mut rows[r2]);
                let mut merged = Vec::with_capacity(old.len() + pivot_row.len());
                let (mut i, mut j) = (0, 0);
                while i < old.len() || j < pivot_row.len() {
                    let take_old = j == pivot_row.len() || (i < old.len() && old[i].0 < pivot_row[j].0);
                    let take_pivot = i == old.len() || (j < pivot_row.len() && pivot_row[j].0 < old[i].0);
                    if take_old {
                        merged.push(old[i]);
                        i += 1;
                    } else if take_pivot {
                        let (col, b) = pivot_row[j];
                        let nv = arith.mul_sub(0, f, b).ok_or(Overflow)?;
                        if nv != 0 {
                            merged.push((col, nv));
                            cols[col].insert(r2);
                        }
                        j += 1;
                    } else {
                        let col = old[i].0;
                        let nv = arith.mul_sub(old[i].1, f, pivot_row[j].1).ok_or(Overflow)?;
                        if nv != 0 {
                            merged.push((col, nv));
                        } else {
                            cols[col].remove(&r2);
                        }
                        i += 1;
                        j += 1;
                    }
                }
                rows[r2] = merged;
            }
            debug_assert!(cols[c].is_empty());
            rank += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    rows.retain(|r| !r.is_empty());
    Ok((rank, rows))
}

/// Nonzero invariant factors of a dense integer matrix, in divisibility
/// order.
pub fn dense_invariant_factors(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = smallest_entry(&a, t, t..m, t..n) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..n {
                        let d = &q * &a[t][j];
                        a[i][j] -= d;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for i in t..m {
                        let d = &q * &a[i][t];
                        a[i][j] -= d;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if clean {
                break;
            }
            // move the smallest entry of the pivot row or column into place
            let mut best = (t, t);
            for i in t + 1..m {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    // diagonal to divisibility chain
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = &diag[i] / &g * &diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}

fn smallest_entry(
    a: &[Vec<BigInt>],
    _t: usize,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Nonzero invariant factors of an integer matrix.
pub fn invariant_factors(m: &SparseMatrix) -> Vec<BigInt> {
    match eliminate_units(m, Arith::Int) {
        Ok((units, rest)) => {
            let mut used: Vec<usize> = rest.iter().flat_map(|r| r.iter().map(|e| e.0)).collect();
            used.sort_unstable();
            used.dedup();
            let dense: Vec<Vec<BigInt>> = rest
                .iter()
                .map(|r| {
                    let mut row = vec![BigInt::zero(); used.len()];
                    for &(j, v) in r {
                        row[used.binary_search(&j).expect("collected")] = BigInt::from(v);
                    }
                    row
                })
                .collect();
            let mut out = vec![BigInt::one(); units];
            out.extend(dense_invariant_factors(dense));
            out
        }
        Err(Overflow) => {
            let dense = m.to_dense().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
            dense_invariant_factors(dense)
        }
    }
}

/// Rank over the given coefficients (`Z` and `Q` agree).
pub fn matrix_rank(m: &SparseMatrix, coefficients: Coefficients) -> usize {
    match coefficients {
        Coefficients::Fp(p) => {
            let (rank, rest) = eliminate_units(m, Arith::Mod(p as i128)).unwrap_or_else(|_| unreachable!());
            debug_assert!(rest.is_empty());
            rank
        }
        _ => invariant_factors(m).len(),
    }
}

/// Betti numbers and torsion per degree.
pub fn smith_homology(cc: &ChainComplex) -> Result<Vec<HomologyGroup>> {
    cc.check_boundary_square()?;
    let integral = cc.coefficients == Coefficients::Z;
    let factors: Vec<Option<Vec<BigInt>>> = crate::par_map(0..cc.ranks.len(), |d| {
        let m = &cc.boundaries[d];
        if m.rows == 0 || m.cols == 0 {
            return None;
        }
        Some(match cc.coefficients {
            Coefficients::Fp(_) => vec![BigInt::one(); matrix_rank(m, cc.coefficients)],
            _ => invariant_factors(m),
        })
    });
    let rank = |d: usize| factors.get(d).and_then(|f| f.as_ref()).map_or(0, Vec::len);
    Ok((0..cc.ranks.len())
        .map(|d| {
            let torsion = if integral {
                factors
                    .get(d + 1)
                    .and_then(|f| f.as_ref())
                    .map(|f| f.iter().filter(|x| !x.is_one()).cloned().collect())
                    .unwrap_or_default()
            } else {
                Vec::new()
            };
            HomologyGroup { degree: d, betti: cc.ranks[d] - rank(d) - rank(d + 1), torsion }
        })
        .collect())
}

pub fn betti_numbers(groups: &[HomologyGroup]) -> Vec<usize> {
    groups.iter().map(|g| g.betti).collect()
}

/// `degree,betti,torsion` rows; torsion as `;`-separated orders.
pub fn betti_csv(groups: &[HomologyGroup]) -> String {
    let mut out = String::from("degree,betti,torsion\n");
    for g in groups {
        let t: Vec<String> = g.torsion.iter().map(ToString::to_string).collect();
        out.push_str(&format!("{},{},{}\n", g.degree, g.betti, t.join(";")));
    }
    out
}
