//! Oriented matroids as explicit data: circuits, covectors, the symmetric
//! `ℓ`-matroid `ℒ ⊗ R^ℓ`, and the tope posets `ℒ^(ℓ)`.
//!
//! Chains are encoded with the chamber at level one: the chain
//! `C >= F_1 >= … >= F_ℓ` becomes `(C⊗e_1)∘(F_1⊗e_2)∘…∘(F_ℓ⊗e_{ℓ+1})`, and
//! `π_i` recovers the `i`-th entry of the chain.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::complexes::poset::Poset;
use crate::error::{Error, Result};
use crate::signs::{all_vectors, SignValue, SignVector};

/// Largest ground set for the `3^n` face scan.
pub const FACE_SCAN_LIMIT: usize = 12;

const MAX_REPORTED: usize = 16;

/// Signed circuits of an oriented matroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitSet {
    n: usize,
    circuits: Vec<SignVector>,
}

impl CircuitSet {
    /// Sorts and dedups. Vectors must be level one on `n` elements.
    pub fn new(n: usize, circuits: Vec<SignVector>) -> Result<Self> {
        for c in &circuits {
            if c.len() != n {
                return Err(Error::GroundMismatch { left: n, right: c.len() });
            }
            if c.max_level() != 1 {
                return Err(Error::NotLevelOne(c.max_level()));
            }
        }
        let mut circuits = circuits;
        circuits.sort();
        circuits.dedup();
        Ok(CircuitSet { n, circuits })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn circuits(&self) -> &[SignVector] {
        &self.circuits
    }

    pub fn len(&self) -> usize {
        self.circuits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }

    pub fn to_json(&self) -> SignVectorSetJson {
        SignVectorSetJson::from_vectors(self.n, 1, &self.circuits)
    }
}

/// A set of (leveled) covectors.
#[derive(Clone, Debug)]
pub struct CovectorSet {
    n: usize,
    max_level: u8,
    vectors: Vec<SignVector>,
    index: HashMap<SignVector, usize>,
}

impl PartialEq for CovectorSet {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.max_level == other.max_level && self.vectors == other.vectors
    }
}

impl CovectorSet {
    /// Sorts and dedups.
    pub fn new(n: usize, max_level: u8, vectors: Vec<SignVector>) -> Result<Self> {
        for v in &vectors {
            if v.len() != n {
                return Err(Error::GroundMismatch { left: n, right: v.len() });
            }
            if v.max_level() != max_level {
                return Err(Error::LevelMismatch { left: max_level, right: v.max_level() });
            }
        }
        let mut vectors = vectors;
        vectors.sort();
        vectors.dedup();
        let index = vectors.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        Ok(CovectorSet { n, max_level, vectors, index })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn max_level(&self) -> u8 {
        self.max_level
    }

    pub fn vectors(&self) -> &[SignVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn contains(&self, v: &SignVector) -> bool {
        self.index.contains_key(v)
    }

    pub fn index_of(&self, v: &SignVector) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Topes (no zero entry).
    pub fn topes(&self) -> Vec<&SignVector> {
        self.vectors.iter().filter(|v| v.is_tope()).collect()
    }

    /// Minimal nonzero elements.
    pub fn cocircuits(&self) -> Vec<SignVector> {
        self.vectors
            .iter()
            .filter(|v| !v.is_zero())
            .filter(|v| {
                !self.vectors.iter().any(|w| !w.is_zero() && w != *v && w.leq_unchecked(v))
            })
            .cloned()
            .collect()
    }

    pub fn to_json(&self) -> SignVectorSetJson {
        SignVectorSetJson::from_vectors(self.n, self.max_level, &self.vectors)
    }

    pub fn from_json(json: &SignVectorSetJson) -> Result<Self> {
        Self::new(json.n, json.max_level, json.parse_vectors()?)
    }
}

/// JSON form shared by circuit and covector sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignVectorSetJson {
    pub n: usize,
    pub max_level: u8,
    pub vectors: Vec<Vec<String>>,
}

impl SignVectorSetJson {
    fn from_vectors(n: usize, max_level: u8, vectors: &[SignVector]) -> Self {
        SignVectorSetJson { n, max_level, vectors: vectors.iter().map(|v| v.tokens()).collect() }
    }

    pub fn parse_vectors(&self) -> Result<Vec<SignVector>> {
        self.vectors.iter().map(|t| SignVector::from_tokens(t, self.max_level)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub witnesses: Vec<String>,
}

/// Outcome of an axiom check. Only the first few violations are kept;
/// `violation_count` has the total.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
    pub violation_count: usize,
}

impl AxiomReport {
    fn from_violations(found: Vec<Violation>) -> Self {
        let violation_count = found.len();
        let violations = found.into_iter().take(MAX_REPORTED).collect();
        AxiomReport { passed: violation_count == 0, violations, violation_count }
    }

    pub fn has_axiom(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

fn violation(axiom: &str, witnesses: &[&SignVector]) -> Violation {
    Violation { axiom: axiom.to_string(), witnesses: witnesses.iter().map(|w| w.to_string()).collect() }
}

/// Circuit axioms: nonempty, closure under negation, incomparability, weak
/// elimination.
pub fn check_circuit_axioms(c: &CircuitSet) -> AxiomReport {
    let mut found = Vec::new();
    let set: HashSet<&SignVector> = c.circuits.iter().collect();
    for x in &c.circuits {
        if x.is_zero() {
            found.push(violation("nonempty", &[x]));
        }
        if !set.contains(&x.neg()) {
            found.push(violation("negation", &[x]));
        }
    }
    for x1 in &c.circuits {
        for x2 in &c.circuits {
            let contained = x1.support().iter().all(|&a| !x2.get(a).is_zero());
            if contained && *x1 != *x2 && *x1 != x2.neg() {
                found.push(violation("incomparability", &[x1, x2]));
            }
        }
    }
    for x1 in &c.circuits {
        for x2 in &c.circuits {
            if *x1 == x2.neg() {
                continue;
            }
            for e in 0..c.n {
                let a = x1.get(e);
                if a.is_zero() || a != x2.get(e).neg() {
                    continue;
                }
                let ok = c.circuits.iter().any(|y| {
                    y.get(e).is_zero()
                        && (0..c.n).all(|i| {
                            let v = y.get(i);
                            v.is_zero() || v == x1.get(i) || v == x2.get(i)
                        })
                });
                if !ok {
                    found.push(violation("elimination", &[x1, x2]));
                }
            }
        }
    }
    AxiomReport::from_violations(found)
}

/// Lookup structure for the elimination axiom: for each separation set,
/// covectors grouped by their restriction to the complement.
struct EliminationIndex<'a> {
    vectors: &'a [SignVector],
    by_mask: HashMap<u64, HashMap<Vec<i8>, Vec<usize>>>,
}

impl<'a> EliminationIndex<'a> {
    fn new(vectors: &'a [SignVector], masks: impl IntoIterator<Item = u64>) -> Self {
        let mut by_mask = HashMap::new();
        for mask in masks {
            by_mask.entry(mask).or_insert_with(|| {
                let mut groups: HashMap<Vec<i8>, Vec<usize>> = HashMap::new();
                for (i, v) in vectors.iter().enumerate() {
                    groups.entry(restrict_off(v, mask)).or_default().push(i);
                }
                groups
            });
        }
        EliminationIndex { vectors, by_mask }
    }

    /// Some member agreeing with `target` off `mask` whose level at `x` is
    /// strictly below `level`.
    fn find(&self, mask: u64, target: &SignVector, x: usize, level: u8) -> Option<usize> {
        let group = self.by_mask.get(&mask)?.get(&restrict_off(target, mask))?;
        group.iter().copied().find(|&c| self.vectors[c].get(x).level() < level)
    }
}

fn restrict_off(v: &SignVector, mask: u64) -> Vec<i8> {
    v.values()
        .iter()
        .enumerate()
        .map(|(i, s)| if mask >> i & 1 == 1 { i8::MIN } else { s.raw() })
        .collect()
}

fn separation_mask(a: &SignVector, b: &SignVector) -> u64 {
    let mut m = 0u64;
    for i in 0..a.len() {
        let x = a.get(i);
        if !x.is_zero() && x == b.get(i).neg() {
            m |= 1 << i;
        }
    }
    m
}

/// Shared checks of covector-type axioms: zero, negation, compose closure and
/// elimination. `F_3(x) < F_1(x)` is the level condition; at level one it
/// reads `τ_3(x) = 0`.
fn check_closure_and_elimination(l: &CovectorSet, found: &mut Vec<Violation>) {
    let vs = &l.vectors;
    if !l.contains(&SignVector::zero(l.n, l.max_level)) {
        found.push(Violation { axiom: "zero".into(), witnesses: vec![] });
    }
    for v in vs {
        if !l.contains(&v.neg()) {
            found.push(violation("negation", &[v]));
        }
    }
    let closure: Vec<Violation> = crate::par_flat_map(0..vs.len(), |i| {
        let mut out = Vec::new();
        for j in 0..vs.len() {
            let c = vs[i].compose_unchecked(&vs[j]);
            if !l.contains(&c) {
                out.push(violation("composition", &[&vs[i], &vs[j], &c]));
            }
        }
        out
    });
    found.extend(closure);

    if l.n > 64 {
        found.push(Violation { axiom: "elimination".into(), witnesses: vec!["ground set too large".into()] });
        return;
    }
    let masks: HashSet<u64> = crate::par_flat_map(0..vs.len(), |i| {
        (i + 1..vs.len()).map(|j| separation_mask(&vs[i], &vs[j])).filter(|&m| m != 0).collect()
    })
    .into_iter()
    .collect();
    let mut masks: Vec<u64> = masks.into_iter().collect();
    masks.sort_unstable();
    let index = EliminationIndex::new(vs, masks);
    let elim: Vec<Violation> = crate::par_flat_map(0..vs.len(), |i| {
        let mut out = Vec::new();
        for j in i + 1..vs.len() {
            let mask = separation_mask(&vs[i], &vs[j]);
            if mask == 0 {
                continue;
            }
            let target = vs[i].compose_unchecked(&vs[j]);
            for x in 0..l.n {
                if mask >> x & 1 == 1 && index.find(mask, &target, x, vs[i].get(x).level()).is_none() {
                    out.push(violation("elimination", &[&vs[i], &vs[j]]));
                }
            }
        }
        out
    });
    found.extend(elim);
}

/// Covector axioms (level one).
pub fn check_covector_axioms(l: &CovectorSet) -> AxiomReport {
    let mut found = Vec::new();
    if l.max_level != 1 {
        found.push(Violation { axiom: "level".into(), witnesses: vec![format!("max level {}", l.max_level)] });
        return AxiomReport::from_violations(found);
    }
    check_closure_and_elimination(l, &mut found);
    AxiomReport::from_violations(found)
}

/// Axioms of a symmetric oriented `ℓ`-matroid: zero, negation, closure under
/// level permutations, composition, elimination.
pub fn check_symmetric_ell_axioms(l: &CovectorSet) -> AxiomReport {
    let mut found = Vec::new();
    let perms = level_permutations(l.max_level);
    for v in &l.vectors {
        for p in &perms {
            let w = v.permute_levels(p).expect("valid permutation");
            if !l.contains(&w) {
                found.push(violation("level-permutation", &[v, &w]));
            }
        }
    }
    check_closure_and_elimination(l, &mut found);
    AxiomReport::from_violations(found)
}

fn level_permutations(l: u8) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (1..=l).collect();
    permute_rec(&mut cur, 0, &mut out);
    out.sort();
    out
}

fn permute_rec(cur: &mut Vec<u8>, k: usize, out: &mut Vec<Vec<u8>>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permute_rec(cur, k + 1, out);
        cur.swap(k, i);
    }
}

#[derive(Clone, Copy)]
struct Masks {
    plus: u64,
    minus: u64,
}

impl Masks {
    fn of(v: &SignVector) -> Self {
        let mut m = Masks { plus: 0, minus: 0 };
        for (i, s) in v.values().iter().enumerate() {
            match s.sign() {
                1 => m.plus |= 1 << i,
                -1 => m.minus |= 1 << i,
                _ => {}
            }
        }
        m
    }
}

/// Value-set criterion: `τ(X) = {0}` or `τ(X) ⊇ {+1, -1}`, evaluating `τ` on
/// the signed subset `X ⊂ E±`.
fn value_set_criterion(tau: Masks, x: Masks) -> bool {
    let positive = (tau.plus & x.plus) | (tau.minus & x.minus);
    let negative = (tau.plus & x.minus) | (tau.minus & x.plus);
    let support = x.plus | x.minus;
    let all_zero = (tau.plus | tau.minus) & support == 0;
    all_zero || (positive != 0 && negative != 0)
}

/// All level-one vectors compatible with every circuit. Both the value-set
/// criterion and orthogonality are evaluated and must agree.
pub fn faces_from_circuits(c: &CircuitSet) -> Result<CovectorSet> {
    if c.n > FACE_SCAN_LIMIT {
        return Err(Error::TooLarge { size: c.n, limit: FACE_SCAN_LIMIT });
    }
    let circuit_masks: Vec<Masks> = c.circuits.iter().map(Masks::of).collect();
    let candidates: Vec<SignVector> = all_vectors(c.n, 1).collect();
    let results: Vec<Result<Option<SignVector>>> = crate::par_map(0..candidates.len(), |i| {
        let tau = &candidates[i];
        let tm = Masks::of(tau);
        let by_values = circuit_masks.iter().all(|&x| value_set_criterion(tm, x));
        let mut by_orthogonality = true;
        for x in &c.circuits {
            if !tau.separation_orthogonal(x)?.1 {
                by_orthogonality = false;
                break;
            }
        }
        if by_values != by_orthogonality {
            return Err(Error::Axiom(format!("face criteria disagree on {tau}")));
        }
        Ok(by_values.then(|| tau.clone()))
    });
    let mut faces = Vec::new();
    for r in results {
        if let Some(v) = r? {
            faces.push(v);
        }
    }
    CovectorSet::new(c.n, 1, faces)
}

/// `(G_1⊗e_1)∘…∘(G_ℓ⊗e_ℓ)` for a decreasing chain `G_1 >= … >= G_ℓ`.
pub fn encode_chain(chain: &[SignVector]) -> Result<SignVector> {
    let l = chain.len();
    if l == 0 || l > crate::signs::MAX_LEVEL as usize {
        return Err(Error::NotAChain(format!("chain length {l}")));
    }
    let n = chain[0].len();
    for (i, g) in chain.iter().enumerate() {
        if g.max_level() != 1 {
            return Err(Error::NotLevelOne(g.max_level()));
        }
        if g.len() != n {
            return Err(Error::GroundMismatch { left: n, right: g.len() });
        }
        if i > 0 && !g.leq_unchecked(&chain[i - 1]) {
            return Err(Error::NotAChain(format!("{g} is not below {}", chain[i - 1])));
        }
    }
    let l = l as u8;
    let mut out = SignVector::zero(n, l);
    for (i, g) in chain.iter().enumerate() {
        out = out.compose_unchecked(&g.embed(i as u8 + 1, l)?);
    }
    Ok(out)
}

/// `(π_1 F, …, π_ℓ F)`. With a covector set, every projection must be a
/// member.
pub fn decode_chain(v: &SignVector, within: Option<&CovectorSet>) -> Result<Vec<SignVector>> {
    let chain: Vec<SignVector> = (1..=v.max_level()).map(|i| v.project_unchecked(i)).collect();
    for w in chain.windows(2) {
        if !w[1].leq_unchecked(&w[0]) {
            return Err(Error::NotAChain(v.to_string()));
        }
    }
    if let Some(l) = within {
        if let Some(bad) = chain.iter().find(|g| !l.contains(g)) {
            return Err(Error::NotAChain(format!("projection {bad} of {v} is not a covector")));
        }
    }
    Ok(chain)
}

/// Decreasing chains `G_1 >= … >= G_len` in a level-one covector set, as
/// index lists, in lexicographic order of indices.
pub fn decreasing_chains(l: &CovectorSet, len: usize, top_must_be_tope: bool) -> Vec<Vec<usize>> {
    let vs = &l.vectors;
    let below: Vec<Vec<usize>> =
        (0..vs.len()).map(|i| (0..vs.len()).filter(|&j| vs[j].leq_unchecked(&vs[i])).collect()).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(below: &[Vec<usize>], len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let last = *cur.last().expect("nonempty");
        for &j in &below[last] {
            cur.push(j);
            rec(below, len, cur, out);
            cur.pop();
        }
    }
    if len == 0 {
        return vec![vec![]];
    }
    for i in 0..vs.len() {
        if top_must_be_tope && !vs[i].is_tope() {
            continue;
        }
        cur.push(i);
        rec(&below, len, &mut cur, &mut out);
        cur.pop();
    }
    out
}

/// `ℒ ⊗ R^ℓ` as the encodings of all decreasing `ℓ`-chains.
pub fn tensor(l: &CovectorSet, ell: u8) -> Result<CovectorSet> {
    if l.max_level != 1 {
        return Err(Error::NotLevelOne(l.max_level));
    }
    if ell == 0 || ell > crate::signs::MAX_LEVEL {
        return Err(Error::LevelOutOfRange { level: ell, max: crate::signs::MAX_LEVEL });
    }
    let chains = decreasing_chains(l, ell as usize, false);
    let vectors = chains
        .iter()
        .map(|c| encode_chain(&c.iter().map(|&i| l.vectors[i].clone()).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?;
    CovectorSet::new(l.n, ell, vectors)
}

/// One element of `ℒ^(ℓ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LElement {
    pub vector: SignVector,
    /// Covector indices `[C, F_1, …, F_ℓ]`, decreasing.
    pub chain: Vec<usize>,
}

/// The topes of `ℒ ⊗ R^{ℓ+1}` with their chains and the induced order.
#[derive(Clone, Debug)]
pub struct LEll {
    pub ell: u8,
    pub covectors: CovectorSet,
    pub elements: Vec<LElement>,
    pub poset: Poset,
    index: HashMap<SignVector, usize>,
}

impl LEll {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, v: &SignVector) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// The covector `F_i` of element `e` (`i = 0` is the chamber).
    pub fn chain_member(&self, e: usize, i: usize) -> &SignVector {
        &self.covectors.vectors()[self.elements[e].chain[i]]
    }
}

/// Build `ℒ^(ℓ)`. The input must be a level-one covector set; zero and
/// negation closure are checked here, the full axioms are left to
/// [`check_covector_axioms`].
pub fn build_l_ell(l: &CovectorSet, ell: u8) -> Result<LEll> {
    if l.max_level != 1 {
        return Err(Error::NotLevelOne(l.max_level));
    }
    if !l.contains(&SignVector::zero(l.n, 1)) {
        return Err(Error::Axiom("covector set lacks the zero vector".into()));
    }
    if let Some(v) = l.vectors.iter().find(|v| !l.contains(&v.neg())) {
        return Err(Error::Axiom(format!("covector set not closed under negation at {v}")));
    }
    let top = ell + 1;
    let chains = decreasing_chains(l, top as usize, true);
    let mut elements = Vec::with_capacity(chains.len());
    for chain in chains {
        let members: Vec<SignVector> = chain.iter().map(|&i| l.vectors[i].clone()).collect();
        let vector = encode_chain(&members)?;
        debug_assert!(vector.is_tope());
        elements.push(LElement { vector, chain });
    }
    elements.sort_by(|a, b| a.vector.cmp(&b.vector));
    let index: HashMap<SignVector, usize> =
        elements.iter().enumerate().map(|(i, e)| (e.vector.clone(), i)).collect();
    if index.len() != elements.len() {
        return Err(Error::Axiom("chain encoding is not injective".into()));
    }

    // decoding must return the stored chain
    for e in &elements {
        let decoded = decode_chain(&e.vector, Some(l))?;
        let stored: Vec<&SignVector> = e.chain.iter().map(|&i| &l.vectors[i]).collect();
        if decoded.iter().collect::<Vec<_>>() != stored {
            return Err(Error::Axiom(format!("decode mismatch at {}", e.vector)));
        }
    }
    if ell == 1 {
        let pairs = (0..l.len())
            .map(|c| {
                if l.vectors[c].is_tope() {
                    l.vectors.iter().filter(|f| f.leq_unchecked(&l.vectors[c])).count()
                } else {
                    0
                }
            })
            .sum::<usize>();
        if pairs != elements.len() {
            return Err(Error::Axiom(format!(
                "expected {pairs} face/chamber pairs, built {} elements",
                elements.len()
            )));
        }
    }
    let poset = Poset::from_leq(elements.len(), |i, j| elements[i].vector.leq_unchecked(&elements[j].vector))?;
    Ok(LEll { ell, covectors: l.clone(), elements, poset, index })
}

/// Value-level helper for tests and the CLI: signs of a level-one vector.
pub fn level_one(signs: &[i8]) -> SignVector {
    SignVector::from_signs(signs)
}

/// The zero value, re-exported for callers matching on entries.
pub const ZERO: SignValue = SignValue::ZERO;

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &[i8]) -> SignVector {
        SignVector::from_signs(s)
    }

    fn braid3_circuits() -> CircuitSet {
        CircuitSet::new(3, vec![v(&[1, -1, 1]), v(&[-1, 1, -1])]).unwrap()
    }

    #[test]
    fn circuit_axiom_examples() {
        assert!(check_circuit_axioms(&braid3_circuits()).passed);
        assert!(check_circuit_axioms(&CircuitSet::new(2, vec![]).unwrap()).passed);
        let r = check_circuit_axioms(&CircuitSet::new(2, vec![v(&[1, 1])]).unwrap());
        assert!(!r.passed);
        assert!(r.has_axiom("negation"));
    }

    #[test]
    fn faces_from_circuit_examples() {
        let faces = faces_from_circuits(&braid3_circuits()).unwrap();
        assert_eq!(faces.len(), 13);
        let free = faces_from_circuits(&CircuitSet::new(1, vec![]).unwrap()).unwrap();
        assert_eq!(free.len(), 3);
        let pair = faces_from_circuits(&CircuitSet::new(2, vec![v(&[1, 1]), v(&[-1, -1])]).unwrap()).unwrap();
        assert_eq!(pair.vectors(), &[v(&[0, 0]), v(&[-1, 1]), v(&[1, -1])]);
        assert!(faces_from_circuits(&CircuitSet::new(13, vec![]).unwrap()).is_err());
    }

    #[test]
    fn covector_axiom_examples() {
        let faces = faces_from_circuits(&braid3_circuits()).unwrap();
        assert!(check_covector_axioms(&faces).passed);
        let zero = CovectorSet::new(2, 1, vec![v(&[0, 0])]).unwrap();
        assert!(check_covector_axioms(&zero).passed);
        let axes = CovectorSet::new(2, 1, vec![v(&[0, 0]), v(&[1, 0]), v(&[-1, 0]), v(&[0, 1]), v(&[0, -1])]).unwrap();
        let r = check_covector_axioms(&axes);
        assert!(!r.passed);
        assert!(r.violations.iter().any(|x| x.axiom == "composition" && x.witnesses.contains(&"+1 +1".to_string())));
    }

    #[test]
    fn symmetric_axiom_examples() {
        let a1 = CovectorSet::new(1, 1, vec![v(&[0]), v(&[1]), v(&[-1])]).unwrap();
        let t = tensor(&a1, 2).unwrap();
        assert_eq!(t.len(), 5);
        let rep = check_symmetric_ell_axioms(&t);
        assert!(rep.passed, "{:?}", rep.violations);

        // drop +e_2; its swap +e_1 stays
        let kept: Vec<SignVector> = t.vectors().iter().filter(|x| x.tokens() != ["+2"]).cloned().collect();
        let broken = CovectorSet::new(1, 2, kept).unwrap();
        assert!(check_symmetric_ell_axioms(&broken).has_axiom("level-permutation"));
    }

    #[test]
    fn a2_tensor_fails_only_pointwise_level_swap() {
        let a2 = faces_from_circuits(&braid3_circuits()).unwrap();
        let t = tensor(&a2, 2).unwrap();
        assert_eq!(t.len(), 37);
        let rep = check_symmetric_ell_axioms(&t);
        assert!(!rep.passed);
        assert!(rep.violations.iter().all(|x| x.axiom == "level-permutation"));
        // -e1 -e2 -e2 swaps to -e2 -e1 -e1, whose level-2 slice (-,0,0) is no covector
        assert!(rep
            .violations
            .iter()
            .any(|x| x.witnesses == vec!["-1 -2 -2".to_string(), "-2 -1 -1".to_string()]));
        assert!(check_covector_axioms(&a2).passed);
    }

    #[test]
    fn encode_decode_examples() {
        assert_eq!(encode_chain(&[v(&[1]), v(&[0])]).unwrap(), SignVector::from_raw(&[1], 2).unwrap());
        assert_eq!(encode_chain(&[v(&[1]), v(&[1])]).unwrap(), SignVector::from_raw(&[2], 2).unwrap());
        assert!(encode_chain(&[v(&[0]), v(&[1])]).is_err());
        let a2 = faces_from_circuits(&braid3_circuits()).unwrap();
        let chains = decreasing_chains(&a2, 2, false);
        assert_eq!(chains.len(), 37);
        for c in chains {
            let members: Vec<SignVector> = c.iter().map(|&i| a2.vectors()[i].clone()).collect();
            let e = encode_chain(&members).unwrap();
            assert_eq!(decode_chain(&e, Some(&a2)).unwrap(), members);
        }
    }

    #[test]
    fn l_ell_counts() {
        let a1 = CovectorSet::new(1, 1, vec![v(&[0]), v(&[1]), v(&[-1])]).unwrap();
        assert_eq!(build_l_ell(&a1, 1).unwrap().len(), 4);
        let a2 = faces_from_circuits(&braid3_circuits()).unwrap();
        assert_eq!(build_l_ell(&a2, 1).unwrap().len(), 24);
        assert_eq!(build_l_ell(&a2, 2).unwrap().len(), 54);
        assert_eq!(build_l_ell(&a2, 0).unwrap().len(), 6);
    }

    #[test]
    fn product_properties() {
        let a2 = faces_from_circuits(&braid3_circuits()).unwrap();
        for f in a2.vectors() {
            for g in a2.vectors() {
                let fg = f.compose(g).unwrap();
                assert!(f.leq(&fg).unwrap());
                if g.is_tope() {
                    assert!(fg.is_tope());
                }
                if f.leq(g).unwrap() {
                    assert_eq!(&fg, g);
                }
            }
        }
    }

    #[test]
    fn l_one_matches_face_chamber_pairs() {
        let a2 = faces_from_circuits(&braid3_circuits()).unwrap();
        let l1 = build_l_ell(&a2, 1).unwrap();
        for e in 0..l1.len() {
            let c = l1.chain_member(e, 0);
            let f = l1.chain_member(e, 1);
            assert!(c.is_tope());
            assert!(f.leq(c).unwrap());
            assert_eq!(l1.elements[e].vector.project(1).unwrap(), *c);
            assert!(l1.elements[e].vector.is_tope());
        }
    }
}
