//! Central hyperplane arrangements with exact rational normals.

use std::collections::{HashMap, HashSet, VecDeque};

use itertools::Itertools;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::braid::partition::Partition;
use crate::error::{Error, Result};
use crate::linalg::{self, dot, format_rational, parse_rational, Rational};
use crate::matroid::{faces_from_circuits, CircuitSet, CovectorSet, FACE_SCAN_LIMIT};
use crate::signs::SignVector;

/// Largest arrangement the circuit search accepts.
pub const CIRCUIT_LIMIT: usize = 15;

pub type Point = Vec<Rational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    normals: Vec<Point>,
    labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementJson {
    pub dim: usize,
    pub normals: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl Arrangement {
    /// Labels default to `"1"`, `"2"`, ….
    pub fn new(dim: usize, normals: Vec<Point>, labels: Option<Vec<String>>) -> Result<Self> {
        for (i, v) in normals.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::InvalidArrangement(format!(
                    "normal {i} has {} coordinates, expected {dim}",
                    v.len()
                )));
            }
            if v.iter().all(Zero::is_zero) {
                return Err(Error::InvalidArrangement(format!("normal {i} is zero")));
            }
        }
        let labels = match labels {
            Some(l) if l.len() != normals.len() => {
                return Err(Error::InvalidArrangement(format!(
                    "{} labels for {} normals",
                    l.len(),
                    normals.len()
                )))
            }
            Some(l) => l,
            None => (1..=normals.len()).map(|i| i.to_string()).collect(),
        };
        Ok(Arrangement { dim, normals, labels })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: ArrangementJson = serde_json::from_str(s)
            .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
        Self::from_json(&json)
    }

    pub fn from_json(json: &ArrangementJson) -> Result<Self> {
        let normals = json
            .normals
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, s)| {
                        parse_rational(s).map_err(|e| Error::Parse(format!("normals[{i}][{j}]: {e}")))
                    })
                    .collect::<Result<Point>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(json.dim, normals, json.labels.clone())
    }

    pub fn to_json(&self) -> ArrangementJson {
        ArrangementJson {
            dim: self.dim,
            normals: self.normals.iter().map(|v| v.iter().map(format_rational).collect()).collect(),
            labels: Some(self.labels.clone()),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn normals(&self) -> &[Point] {
        &self.normals
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.normals)
    }

    /// Pairs of hyperplanes with parallel normals.
    pub fn duplicate_normals(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .tuple_combinations()
            .filter(|&(i, j)| linalg::rank(&[self.normals[i].clone(), self.normals[j].clone()]) == 1)
            .collect()
    }

    fn rank_of(&self, subset: &[usize]) -> usize {
        let rows: Vec<Point> = subset.iter().map(|&i| self.normals[i].clone()).collect();
        linalg::rank(&rows)
    }
}

pub fn sign_of_point(a: &Arrangement, x: &[Rational]) -> Result<SignVector> {
    if x.len() != a.dim {
        return Err(Error::DimensionMismatch { expected: a.dim, got: x.len() });
    }
    Ok(sign_unchecked(a, x))
}

fn sign_unchecked(a: &Arrangement, x: &[Rational]) -> SignVector {
    let signs: Vec<i8> = a.normals.iter().map(|v| linalg::sign(&dot(v, x))).collect();
    SignVector::from_signs(&signs)
}

/// Cocircuits with a point on each ray, sorted by covector.
pub fn cocircuit_rays(a: &Arrangement) -> Result<Vec<(SignVector, Point)>> {
    let r = a.rank();
    if r == 0 {
        return Err(Error::InvalidArrangement("rank 0".into()));
    }
    let subsets: Vec<Vec<usize>> = (0..a.len()).combinations(r - 1).collect();
    let found: Vec<Option<(SignVector, Point)>> = crate::par_map(0..subsets.len(), |s| {
        let subset = &subsets[s];
        if a.rank_of(subset) != r - 1 {
            return None;
        }
        let rows: Vec<Point> = subset.iter().map(|&i| a.normals[i].clone()).collect();
        // the nullspace is the lineality space plus one more direction
        linalg::nullspace(&rows, a.dim).into_iter().find_map(|x| {
            let v = sign_unchecked(a, &x);
            (!v.is_zero()).then_some((v, x))
        })
    });
    let mut out: HashMap<SignVector, Point> = HashMap::new();
    for (v, x) in found.into_iter().flatten() {
        let neg: Point = x.iter().map(|c| -c).collect();
        out.entry(v.neg()).or_insert(neg);
        out.entry(v).or_insert(x);
    }
    let mut out: Vec<(SignVector, Point)> = out.into_iter().collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

pub fn cocircuits(a: &Arrangement) -> Result<Vec<SignVector>> {
    Ok(cocircuit_rays(a)?.into_iter().map(|(v, _)| v).collect())
}

/// A face with a point in its relative interior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceRecord {
    pub covector: SignVector,
    pub representative: Point,
    pub codim: usize,
}

/// All faces, closed up from the cocircuits under composition, sorted by
/// covector. The point of `F∘c` is `w(F) + ε w(c)` with `ε` small enough to
/// keep the signs of `F`.
pub fn faces(a: &Arrangement) -> Result<Vec<FaceRecord>> {
    let rays = cocircuit_rays(a)?;
    let zero = SignVector::zero(a.len(), 1);
    let mut points: HashMap<SignVector, Point> = HashMap::new();
    points.insert(zero.clone(), vec![Rational::zero(); a.dim]);
    let mut queue = VecDeque::from([zero]);
    while let Some(f) = queue.pop_front() {
        for (c, wc) in &rays {
            let g = f.compose_unchecked(c);
            if points.contains_key(&g) {
                continue;
            }
            let point = perturb(a, &points[&f], wc, &g)?;
            points.insert(g.clone(), point);
            queue.push_back(g);
        }
    }
    let mut out: Vec<FaceRecord> = points
        .into_iter()
        .map(|(covector, representative)| {
            let codim = a.rank_of(&covector.zero_set());
            FaceRecord { covector, representative, codim }
        })
        .collect();
    out.sort_by(|x, y| x.covector.cmp(&y.covector));
    Ok(out)
}

fn perturb(a: &Arrangement, wf: &[Rational], wc: &[Rational], target: &SignVector) -> Result<Point> {
    let at_f: Vec<Rational> = a.normals.iter().map(|v| dot(v, wf).abs()).collect();
    let at_c: Vec<Rational> = a.normals.iter().map(|v| dot(v, wc).abs()).collect();
    let m = at_f.iter().filter(|x| !x.is_zero()).min().cloned().unwrap_or_else(|| Rational::from_integer(1.into()));
    let big = at_c.iter().max().cloned().unwrap_or_else(Rational::zero);
    let mut eps = m / (big + Rational::from_integer(1.into()));
    for _ in 0..64 {
        let x: Point = wf.iter().zip(wc).map(|(p, q)| p + &eps * q).collect();
        if sign_unchecked(a, &x) == *target {
            return Ok(x);
        }
        eps /= Rational::from_integer(2.into());
    }
    Err(Error::MissingRepresentative(target.to_string()))
}

/// Covectors from the composition closure. For `n <= 12` the result is
/// checked against the faces of the circuit set.
pub fn covectors(a: &Arrangement) -> Result<CovectorSet> {
    let set = covector_closure(a)?;
    if a.len() <= FACE_SCAN_LIMIT {
        let oracle = faces_from_circuits(&circuits(a)?)?;
        if oracle != set {
            return Err(Error::Axiom(format!(
                "composition closure gives {} covectors, circuits give {}",
                set.len(),
                oracle.len()
            )));
        }
    }
    Ok(set)
}

/// Covectors from the composition closure alone.
pub fn covector_closure(a: &Arrangement) -> Result<CovectorSet> {
    let rays = cocircuits(a)?;
    let zero = SignVector::zero(a.len(), 1);
    let mut seen: HashSet<SignVector> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(f) = queue.pop_front() {
        for c in &rays {
            let g = f.compose_unchecked(c);
            if seen.insert(g.clone()) {
                queue.push_back(g);
            }
        }
    }
    CovectorSet::new(a.len(), 1, seen.into_iter().collect())
}

/// Signed circuits: sign patterns of minimal linear dependencies.
pub fn circuits(a: &Arrangement) -> Result<CircuitSet> {
    let n = a.len();
    if n > CIRCUIT_LIMIT {
        return Err(Error::TooLarge { size: n, limit: CIRCUIT_LIMIT });
    }
    let r = a.rank();
    let subsets: Vec<Vec<usize>> = (2..=(r + 1).min(n)).flat_map(|s| (0..n).combinations(s)).collect();
    let found: Vec<Option<SignVector>> = crate::par_map(0..subsets.len(), |s| {
        let subset = &subsets[s];
        let cols: Vec<&[Rational]> = subset.iter().map(|&i| a.normals[i].as_slice()).collect();
        let deps = linalg::linear_dependencies(&cols);
        // a one-dimensional kernel with full support is a minimal dependency
        if deps.len() != 1 || deps[0].iter().any(Zero::is_zero) {
            return None;
        }
        let mut signs = vec![0i8; n];
        for (&i, c) in subset.iter().zip(&deps[0]) {
            signs[i] = linalg::sign(c);
        }
        Some(SignVector::from_signs(&signs))
    });
    let mut all = Vec::new();
    for v in found.into_iter().flatten() {
        all.push(v.neg());
        all.push(v);
    }
    CircuitSet::new(n, all)
}

/// The hyperplanes containing `f`, with their original indices.
pub fn localization(a: &Arrangement, f: &FaceRecord) -> Result<(Arrangement, Vec<usize>)> {
    if f.covector.len() != a.len() || sign_of_point(a, &f.representative)? != f.covector {
        return Err(Error::NotAFace(f.covector.to_string()));
    }
    let keep = f.covector.zero_set();
    let sub = Arrangement::new(
        a.dim,
        keep.iter().map(|&i| a.normals[i].clone()).collect(),
        Some(keep.iter().map(|&i| a.labels[i].clone()).collect()),
    )?;
    Ok((sub, keep))
}

/// Hyperplanes `x_i = x_j` in `R^k`, normals `e_i - e_j` for `i < j` in
/// lexicographic order, labelled `"ij"`.
pub fn braid_arrangement(k: usize) -> Result<Arrangement> {
    if k < 2 {
        return Err(Error::OutOfRange(format!("braid arrangement needs k >= 2, got {k}")));
    }
    let mut normals = Vec::new();
    let mut labels = Vec::new();
    for (i, j) in braid_pairs(k) {
        let mut v = vec![Rational::zero(); k];
        v[i] = Rational::from_integer(1.into());
        v[j] = Rational::from_integer((-1).into());
        normals.push(v);
        labels.push(if k < 10 { format!("{}{}", i + 1, j + 1) } else { format!("{},{}", i + 1, j + 1) });
    }
    Arrangement::new(k, normals, Some(labels))
}

/// Zero-based index pairs `(i, j)`, `i < j`, in hyperplane order.
pub fn braid_pairs(k: usize) -> Vec<(usize, usize)> {
    (0..k).tuple_combinations().collect()
}

/// Covector of the face `F_λ`.
pub fn partition_covector(lambda: &Partition) -> SignVector {
    let v = lambda.values();
    let signs: Vec<i8> = braid_pairs(v.len())
        .into_iter()
        .map(|(i, j)| match v[i].cmp(&v[j]) {
            std::cmp::Ordering::Less => -1,
            std::cmp::Ordering::Greater => 1,
            std::cmp::Ordering::Equal => 0,
        })
        .collect();
    SignVector::from_signs(&signs)
}

/// Inverse of [`partition_covector`].
pub fn partition_from_covector(k: usize, v: &SignVector) -> Result<Partition> {
    let pairs = braid_pairs(k);
    if v.len() != pairs.len() || v.max_level() != 1 {
        return Err(Error::NotAFace(v.to_string()));
    }
    let mut sign = vec![vec![0i8; k]; k];
    for (p, &(i, j)) in pairs.iter().enumerate() {
        sign[i][j] = v.get(p).sign();
        sign[j][i] = -sign[i][j];
    }
    // λ(i) = 1 + number of distinct blocks strictly below i
    let mut below: Vec<Vec<usize>> = vec![Vec::new(); k];
    for i in 0..k {
        for j in 0..k {
            if sign[j][i] == -1 {
                below[i].push(j);
            }
        }
    }
    let mut values = vec![0usize; k];
    for i in 0..k {
        let mut reps: Vec<usize> = Vec::new();
        for &j in &below[i] {
            if !reps.iter().any(|&r| sign[r][j] == 0) {
                reps.push(j);
            }
        }
        values[i] = reps.len() + 1;
    }
    let lambda = Partition::new(values).map_err(|_| Error::NotAFace(v.to_string()))?;
    if partition_covector(&lambda) != *v {
        return Err(Error::NotAFace(v.to_string()));
    }
    Ok(lambda)
}

/// `w̃(λ) = (λ(1), …, λ(k))`.
pub fn w_tilde(lambda: &Partition) -> Point {
    lambda.values().iter().map(|&x| Rational::from_integer((x as i64).into())).collect()
}

/// `w(λ)`: `w̃(λ)` projected to the sum-zero hyperplane.
pub fn w(lambda: &Partition) -> Point {
    let t = w_tilde(lambda);
    let mean = t.iter().fold(Rational::zero(), |acc, x| acc + x) / Rational::from_integer((t.len() as i64).into());
    t.iter().map(|x| x - &mean).collect()
}

/// Ordered set partitions of `1..k` and the braid faces they label.
#[derive(Clone, Debug)]
pub struct PartitionDictionary {
    pub k: usize,
    pub partitions: Vec<Partition>,
    pub covectors: Vec<SignVector>,
    index: HashMap<SignVector, usize>,
}

impl PartitionDictionary {
    pub fn new(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::OutOfRange(format!("partition dictionary needs k >= 2, got {k}")));
        }
        let partitions = Partition::all(k);
        let covectors: Vec<SignVector> = partitions.iter().map(partition_covector).collect();
        let mut index = HashMap::new();
        for (i, (p, v)) in partitions.iter().zip(&covectors).enumerate() {
            if partition_from_covector(k, v)? != *p {
                return Err(Error::InvalidPartition(format!("{p} does not round-trip")));
            }
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidPartition(format!("{p} shares a covector")));
            }
        }
        Ok(PartitionDictionary { k, partitions, covectors, index })
    }

    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }

    pub fn lookup(&self, v: &SignVector) -> Option<&Partition> {
        self.index.get(v).map(|&i| &self.partitions[i])
    }

    /// `μ ≤ λ` (λ subdivides μ) iff `covector(μ) ≤ covector(λ)`, over all
    /// pairs.
    pub fn verify_order_isomorphism(&self) -> Result<()> {
        let bad = crate::par_flat_map(0..self.len(), |i| {
            (0..self.len())
                .filter(|&j| {
                    self.partitions[i].is_refined_by(&self.partitions[j])
                        != self.covectors[i].leq_unchecked(&self.covectors[j])
                })
                .map(|j| (i, j))
                .collect()
        });
        match bad.first() {
            None => Ok(()),
            Some(&(i, j)) => Err(Error::InvalidPartition(format!(
                "order mismatch between {} and {}",
                self.partitions[i], self.partitions[j]
            ))),
        }
    }

    /// Face records with `w(λ)` as representatives.
    pub fn face_records(&self) -> Vec<FaceRecord> {
        let mut out: Vec<FaceRecord> = self
            .partitions
            .iter()
            .zip(&self.covectors)
            .map(|(p, v)| FaceRecord { covector: v.clone(), representative: w(p), codim: p.rank() })
            .collect();
        out.sort_by(|x, y| x.covector.cmp(&y.covector));
        out
    }
}

/// Points `w(F)` per covector.
#[derive(Clone, Debug, Default)]
pub struct Representatives {
    map: HashMap<SignVector, Point>,
}

impl Representatives {
    pub fn from_faces(faces: &[FaceRecord]) -> Self {
        Representatives { map: faces.iter().map(|f| (f.covector.clone(), f.representative.clone())).collect() }
    }

    pub fn get(&self, v: &SignVector) -> Result<&Point> {
        self.map.get(v).ok_or_else(|| Error::MissingRepresentative(v.to_string()))
    }
}

/// Coordinates of the vertex with chain `C >= F_1 >= … >= F_ℓ`, as `ℓ + 1`
/// points of `R^d`: `w(F_ℓ)`, then `w(F_{ℓ-i}) - w(F_ℓ)` for `i = 1..ℓ`.
pub fn embed_vertex(reps: &Representatives, chain: &[SignVector]) -> Result<Vec<Point>> {
    let ell = chain
        .len()
        .checked_sub(1)
        .ok_or_else(|| Error::NotAChain("empty chain".into()))?;
    let base = reps.get(&chain[ell])?;
    let mut out = vec![base.clone()];
    for i in 1..=ell {
        let wi = reps.get(&chain[ell - i])?;
        out.push(wi.iter().zip(base).map(|(x, y)| x - y).collect());
    }
    Ok(out)
}

/// True iff no hyperplane contains every component.
pub fn avoids_hyperplanes(a: &Arrangement, components: &[Point]) -> bool {
    a.normals.iter().all(|v| components.iter().any(|x| !dot(v, x).is_zero()))
}
