//! The `Σ_k`-equivariant cellular chains of `Sal^(ℓ)(A_{k-1})`.
//!
//! `g ∈ Σ_k` acts on `R^k` by `(g·x)_i = x_{g^{-1}(i)}`, hence on partitions
//! by `λ ↦ λ∘g^{-1}`. The action is free on chambers, so every orbit of
//! cells has exactly one member whose chamber is the identity chamber
//! `(-, …, -)`; these are the orbit representatives.
//!
//! Two descriptions of the boundary are kept side by side:
//!
//! * the orbit complex read off the cellular structure, with the transport
//!   sign `η(g, c)` defined by `g_*[c] = η(g, c)[g c]`;
//! * for `ℓ = 1`, the shuffle formula
//!   `∂[λ] = Σ_τ ε(λ, τ) Σ_ρ sgn(ρ) ρ_*[τ]`, where `τ` splits one block
//!   `B` of `λ` into `(p | q)`, `ρ` runs over the `t(τ)`-shuffles that
//!   preserve the blocks of `λ`, and
//!   `ε(λ, τ) = (-1)^{p + Σ_{blocks before B} (|B'| - 1)}`.

use std::collections::HashMap;

use crate::arrangement::{braid_arrangement, braid_pairs, covector_closure, partition_from_covector};
use crate::braid::partition::{Mode, Partition};
use crate::braid::shuffle::{inverse, permutation_sign, permutations, shuffles};
use crate::complexes::cw::{salvetti_cw, SalvettiComplex};
use crate::error::{Error, Result};
use crate::matroid::build_l_ell;
use crate::signs::SignVector;

/// Largest `k` for the equivariant complex.
pub const MAX_K: usize = 6;

/// `Σ_k` acting on braid covectors.
#[derive(Clone, Debug)]
pub struct BraidAction {
    pub k: usize,
    /// All of `Σ_k`, zero-based, lexicographic; index 0 is the identity.
    pub perms: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    reindex: Vec<Vec<(usize, bool)>>,
}

impl BraidAction {
    pub fn new(k: usize) -> Self {
        let perms = permutations(k);
        let index = perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let pairs = braid_pairs(k);
        let pair_index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let reindex = perms
            .iter()
            .map(|g| {
                let ginv = inverse(g);
                pairs
                    .iter()
                    .map(|&(a, b)| {
                        let (x, y) = (ginv[a], ginv[b]);
                        if x < y {
                            (pair_index[&(x, y)], false)
                        } else {
                            (pair_index[&(y, x)], true)
                        }
                    })
                    .collect()
            })
            .collect();
        BraidAction { k, perms, index, reindex }
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn index_of(&self, g: &[usize]) -> usize {
        self.index[g]
    }

    pub fn compose(&self, g: usize, h: usize) -> usize {
        let (g, h) = (&self.perms[g], &self.perms[h]);
        self.index[&h.iter().map(|&x| g[x]).collect::<Vec<_>>()]
    }

    pub fn act(&self, g: usize, v: &SignVector) -> SignVector {
        v.reindex(&self.reindex[g])
    }

    /// The `g` with `g·C_id = c` for a chamber `c`.
    pub fn chamber_element(&self, c: &SignVector) -> Result<usize> {
        let p = partition_from_covector(self.k, c)?;
        let values = p.as_permutation().ok_or_else(|| Error::NotAFace(format!("{c} is not a chamber")))?;
        Ok(self.index[&inverse(&values)])
    }
}

/// The orbit structure of `Sal^(ℓ)(A_{k-1})` under `Σ_k`.
#[derive(Clone, Debug)]
pub struct OrbitComplex {
    pub k: usize,
    pub sal: SalvettiComplex,
    pub action: BraidAction,
    /// `act[g][c]` is the cell `g·c`.
    pub act: Vec<Vec<usize>>,
    /// Representative cells, by dimension and then id.
    pub reps: Vec<usize>,
    /// For each cell `c`: `(r, g)` with `c = g·reps[r]`.
    pub rep_of: Vec<(usize, usize)>,
    eta: Vec<i8>,
}

/// One term `coef · g_*[reps[target]]` of an equivariant boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantTerm {
    pub target: usize,
    pub g: usize,
    pub coef: i64,
}

impl OrbitComplex {
    pub fn new(k: usize, ell: u8) -> Result<Self> {
        if !(2..=MAX_K).contains(&k) {
            return Err(Error::OutOfRange(format!("k = {k} outside 2..={MAX_K}")));
        }
        let cov = covector_closure(&braid_arrangement(k)?)?;
        let sal = salvetti_cw(&build_l_ell(&cov, ell)?)?;
        Self::from_salvetti(k, sal)
    }

    pub fn from_salvetti(k: usize, sal: SalvettiComplex) -> Result<Self> {
        let action = BraidAction::new(k);
        let l = &sal.lell;
        let n = l.len();
        let act: Vec<Vec<usize>> = crate::par_map(0..action.order(), |g| {
            (0..n).map(|e| l.index_of(&action.act(g, &l.elements[e].vector))).collect::<Option<Vec<_>>>()
        })
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::CellStructure("Σ_k does not preserve the cells".into()))?;
        for (g, row) in act.iter().enumerate().skip(1) {
            if let Some(e) = (0..n).find(|&e| row[e] == e) {
                return Err(Error::NotFree(format!("{:?} fixes {}", action.perms[g], l.elements[e].vector)));
            }
        }
        let cells = sal.cw.cells();
        let mut reps: Vec<usize> = (0..n).filter(|&e| l.chain_member(e, 0).values().iter().all(|v| v.sign() == -1)).collect();
        reps.sort_by_key(|&e| (cells[e].dim, e));
        if reps.len() * action.order() != n {
            return Err(Error::NotFree(format!("{} representatives for {n} cells", reps.len())));
        }
        let mut rep_of = vec![(usize::MAX, 0); n];
        for (r, &rep) in reps.iter().enumerate() {
            for g in 0..action.order() {
                rep_of[act[g][rep]] = (r, g);
            }
        }
        let mut oc = OrbitComplex { k, sal, action, act, reps, rep_of, eta: Vec::new() };
        oc.eta = oc.transport_signs();
        Ok(oc)
    }

    fn transport_signs(&self) -> Vec<i8> {
        let n = self.sal.cw.len();
        let cells = self.sal.cw.cells();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&c| cells[c].dim);
        let rows: Vec<Vec<i8>> = crate::par_map(0..self.action.order(), |g| {
            let mut eta = vec![0i8; n];
            for &c in &order {
                eta[c] = match cells[c].boundary.first() {
                    None => 1,
                    Some(&(f, s)) => {
                        let gc = self.act[g][c];
                        s * eta[f] * self.sal.cw.incidence(gc, self.act[g][f])
                    }
                };
            }
            eta
        });
        rows.concat()
    }

    /// `η(g, c)` with `g_*[c] = η(g, c)[g·c]`.
    pub fn eta(&self, g: usize, c: usize) -> i8 {
        self.eta[g * self.sal.cw.len() + c]
    }

    /// `[g c : g f] η(g, c) = η(g, f) [c : f]` for every facet: each `g` acts
    /// by a chain map.
    pub fn verify_chain_map(&self) -> Result<()> {
        let cells = self.sal.cw.cells();
        let bad = crate::par_flat_map(0..self.action.order(), |g| {
            let mut out = Vec::new();
            for (c, cell) in cells.iter().enumerate() {
                for &(f, s) in &cell.boundary {
                    let lhs = self.sal.cw.incidence(self.act[g][c], self.act[g][f]) * self.eta(g, c);
                    if lhs != self.eta(g, f) * s {
                        out.push((g, c));
                    }
                }
            }
            out
        });
        match bad.first() {
            None => Ok(()),
            Some(&(g, c)) => Err(Error::CellStructure(format!(
                "{:?} is not a chain map at cell {c}",
                self.action.perms[g]
            ))),
        }
    }

    pub fn rep_dim(&self, r: usize) -> usize {
        self.sal.cw.cells()[self.reps[r]].dim
    }

    /// Equivariant ranks per dimension.
    pub fn ranks(&self) -> Vec<usize> {
        let mut out = vec![0; self.sal.cw.dim().map_or(0, |d| d + 1)];
        for r in 0..self.reps.len() {
            out[self.rep_dim(r)] += 1;
        }
        out
    }

    /// `∂[rep] = Σ [rep : f] η(g, rep_τ) g_*[rep_τ]` over facets `f = g·rep_τ`.
    pub fn equivariant_boundary(&self) -> Vec<Vec<EquivariantTerm>> {
        self.reps
            .iter()
            .map(|&rep| {
                self.sal.cw.cells()[rep]
                    .boundary
                    .iter()
                    .map(|&(f, s)| {
                        let (target, g) = self.rep_of[f];
                        EquivariantTerm { target, g, coef: (s * self.eta(g, self.reps[target])) as i64 }
                    })
                    .collect()
            })
            .collect()
    }

    /// For `ℓ = 1`: the partition `λ` of each representative `(λ, id)`.
    pub fn rep_partitions(&self) -> Result<Vec<Partition>> {
        if self.sal.ell() != 1 {
            return Err(Error::CellStructure("partition labels need ℓ = 1".into()));
        }
        self.reps.iter().map(|&r| partition_from_covector(self.k, self.sal.lell.chain_member(r, 1))).collect()
    }
}

/// One `τ` in the shuffle formula for `∂[λ]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaTerm {
    pub target: Partition,
    pub epsilon: i8,
    /// `(ρ, sgn ρ)`, zero-based.
    pub shuffles: Vec<(Vec<usize>, i8)>,
}

/// The order-preserving `τ > λ` with one more block: block `j` of `λ` split
/// into its first `p` and last `q` elements. Returns `(τ, j, p)`.
pub fn splits(lambda: &Partition) -> Vec<(Partition, usize, usize)> {
    let sizes = lambda.block_type();
    let mut out = Vec::new();
    for (j, &m) in sizes.iter().enumerate() {
        for p in 1..m {
            let mut values = Vec::with_capacity(lambda.k());
            for (b, &size) in sizes.iter().enumerate() {
                for i in 0..size {
                    let shift = usize::from(b > j || (b == j && i >= p));
                    values.push(b + 1 + shift);
                }
            }
            out.push((Partition::new(values).expect("surjective"), j, p));
        }
    }
    out
}

/// `ε(λ, τ)` for the split of block `j` at `p`.
pub fn split_sign(lambda: &Partition, j: usize, p: usize) -> i8 {
    let before: usize = lambda.block_type()[..j].iter().map(|m| m - 1).sum();
    if (before + p) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `∂[λ]` by the shuffle formula, for order-preserving `λ`.
pub fn formula_boundary(lambda: &Partition) -> Result<Vec<FormulaTerm>> {
    if !lambda.is_order_preserving() {
        return Err(Error::InvalidPartition(format!("{lambda} is not order preserving")));
    }
    splits(lambda)
        .into_iter()
        .map(|(tau, j, p)| {
            let preserves = |rho: &[usize]| (0..rho.len()).all(|i| lambda.values()[rho[i]] == lambda.values()[i]);
            let shuffles = shuffles(&tau.block_type())?
                .into_iter()
                .filter(|(s, _)| preserves(&s.perm))
                .map(|(s, sign)| (s.perm, sign))
                .collect();
            Ok(FormulaTerm { epsilon: split_sign(lambda, j, p), target: tau, shuffles })
        })
        .collect()
}

/// Free `Z[Σ_k]` basis of `C_*(Sal(A_{k-1}))` with the shuffle-formula
/// boundary.
#[derive(Clone, Debug)]
pub struct EquivariantComplex {
    pub k: usize,
    /// `basis[d] = O_{k,d}`.
    pub basis: Vec<Vec<Partition>>,
    pub boundary: HashMap<Partition, Vec<FormulaTerm>>,
}

impl EquivariantComplex {
    pub fn ranks(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    /// Ranks of the underlying free abelian groups.
    pub fn expanded_ranks(&self) -> Vec<usize> {
        let order: usize = (1..=self.k).product();
        self.basis.iter().map(|b| b.len() * order).collect()
    }

    /// Terms `(τ, ρ, ε sgn ρ)` of `∂[λ]`.
    pub fn terms(&self, lambda: &Partition) -> Vec<(Partition, Vec<usize>, i64)> {
        self.boundary[lambda]
            .iter()
            .flat_map(|t| t.shuffles.iter().map(move |(rho, s)| (t.target.clone(), rho.clone(), (t.epsilon * s) as i64)))
            .collect()
    }
}

pub fn equivariant_complex(k: usize) -> Result<EquivariantComplex> {
    if !(2..=MAX_K).contains(&k) {
        return Err(Error::OutOfRange(format!("k = {k} outside 2..={MAX_K}")));
    }
    let basis: Vec<Vec<Partition>> = (0..k).map(|d| Partition::enumerate(k, d, Mode::OrderPreserving)).collect::<Result<_>>()?;
    let mut boundary = HashMap::new();
    for lambda in basis.iter().flatten() {
        boundary.insert(lambda.clone(), formula_boundary(lambda)?);
    }
    Ok(EquivariantComplex { k, basis, boundary })
}

/// Comparison of the shuffle formula with the cellular boundary.
#[derive(Clone, Debug)]
pub struct ExpansionCheck {
    /// Sign relating the formula orientation of `(λ, id)` to the cellular
    /// one, per representative.
    pub orbit_signs: HashMap<Partition, i8>,
    /// Number of cells compared.
    pub cells: usize,
}

/// Checks that the formula boundary, expanded over `Σ_k`, is the cellular
/// boundary up to a diagonal `±1` change of basis that is constant on
/// orbits up to transport.
pub fn compare_with_cellular(eq: &EquivariantComplex, oc: &OrbitComplex) -> Result<ExpansionCheck> {
    let k = eq.k;
    if oc.k != k || oc.sal.ell() != 1 {
        return Err(Error::CellStructure("comparison needs Sal(A_{k-1})".into()));
    }
    let labels = oc.rep_partitions()?;
    let rep_index: HashMap<&Partition, usize> = labels.iter().enumerate().map(|(i, p)| (p, i)).collect();
    for lambda in eq.basis.iter().flatten() {
        if !rep_index.contains_key(lambda) {
            return Err(Error::CellStructure(format!("{lambda} has no representative cell")));
        }
    }
    if labels.len() != eq.basis.iter().map(Vec::len).sum::<usize>() {
        return Err(Error::CellStructure("representative count mismatch".into()));
    }

    // cellular coefficient divided by sgn(ρ) must depend on (λ, τ) only
    let cellular = oc.equivariant_boundary();
    let mut ratio: HashMap<(usize, usize), i64> = HashMap::new();
    for (r, terms) in cellular.iter().enumerate() {
        let lambda = &labels[r];
        let formula: Vec<(Partition, Vec<usize>, i64)> = eq.terms(lambda);
        if formula.len() != terms.len() {
            return Err(Error::CellStructure(format!("{lambda}: {} cellular facets, {} formula terms", terms.len(), formula.len())));
        }
        for t in terms {
            let rho = &oc.action.perms[t.g];
            let Some((_, _, f)) = formula.iter().find(|(tau, s, _)| *tau == labels[t.target] && s == rho) else {
                return Err(Error::CellStructure(format!("{lambda}: facet {rho:?}·{} missing from formula", labels[t.target])));
            };
            let q = t.coef * permutation_sign(rho) as i64;
            let e = f * permutation_sign(rho) as i64;
            match ratio.insert((r, t.target), q * e) {
                Some(prev) if prev != q * e => {
                    return Err(Error::CellStructure(format!("{lambda}: coefficient is not sgn(ρ) times a constant")))
                }
                _ => {}
            }
        }
    }

    // per-orbit signs D with cellular = D_λ · formula · D_τ
    let mut sign = vec![0i8; labels.len()];
    let mut adj: Vec<Vec<(usize, i8)>> = vec![Vec::new(); labels.len()];
    for (&(a, b), &v) in &ratio {
        adj[a].push((b, v as i8));
        adj[b].push((a, v as i8));
    }
    for start in 0..labels.len() {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        let mut stack = vec![start];
        while let Some(a) = stack.pop() {
            for &(b, v) in &adj[a] {
                let want = sign[a] * v;
                if sign[b] == 0 {
                    sign[b] = want;
                    stack.push(b);
                } else if sign[b] != want {
                    return Err(Error::CellStructure(format!("no orbit orientation matches at {}", labels[b])));
                }
            }
        }
    }

    // full expansion: basis (λ, g) ↦ cell g·(λ, id), scaled by D_λ η(g, ·)
    let n = oc.sal.cw.len();
    let order = oc.action.order();
    let mut columns: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for (r, lambda) in labels.iter().enumerate() {
        for g in 0..order {
            let col = &mut columns[oc.act[g][oc.reps[r]]];
            for (tau, rho, c) in eq.terms(lambda) {
                let h = oc.action.compose(g, oc.action.index_of(&rho));
                col.push((oc.act[h][oc.reps[rep_index[&tau]]], c));
            }
        }
    }
    let basis_sign = |c: usize| {
        let (r, g) = oc.rep_of[c];
        (sign[r] * oc.eta(g, oc.reps[r])) as i64
    };
    for c in 0..n {
        let mut formula: Vec<(usize, i64)> =
            columns[c].iter().map(|&(f, v)| (f, v * basis_sign(c) * basis_sign(f))).collect();
        formula.sort_unstable();
        let cellular: Vec<(usize, i64)> = oc.sal.cw.cells()[c].boundary.iter().map(|&(f, s)| (f, s as i64)).collect();
        if formula != cellular {
            return Err(Error::CellStructure(format!("expanded boundary differs at cell {c}")));
        }
    }
    let orbit_signs = labels.into_iter().zip(sign).collect();
    Ok(ExpansionCheck { orbit_signs, cells: n })
}

/// Generator degrees and the coefficient field of a graded module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    pub degrees: Vec<i64>,
    pub field: crate::complexes::Coefficients,
}

/// `(w·ρ)_i = w_{ρ(i)}` and its Koszul sign for the given degrees.
pub fn act_on_word(word: &[usize], rho: &[usize], degrees: &[i64], koszul: bool) -> (Vec<usize>, i64) {
    let moved: Vec<usize> = rho.iter().map(|&j| word[j]).collect();
    let mut sign = 1;
    if koszul {
        for i in 0..rho.len() {
            for j in i + 1..rho.len() {
                if rho[i] > rho[j] && degrees[word[rho[i]]] % 2 != 0 && degrees[word[rho[j]]] % 2 != 0 {
                    sign = -sign;
                }
            }
        }
    }
    (moved, sign)
}

/// `d¹([λ] ⊗ w) = Σ_τ ε(λ, τ) [τ] ⊗ Σ_ρ sgn(ρ) w·ρ`, like terms collected
/// and sorted.
pub fn d1_apply(
    lambda: &Partition,
    word: &[usize],
    degrees: &[i64],
    koszul: bool,
) -> Result<Vec<(Partition, Vec<usize>, i64)>> {
    if word.len() != lambda.k() {
        return Err(Error::DimensionMismatch { expected: lambda.k(), got: word.len() });
    }
    if let Some(&bad) = word.iter().find(|&&x| x >= degrees.len()) {
        return Err(Error::OutOfRange(format!("generator {bad} of {}", degrees.len())));
    }
    let mut acc: HashMap<(Partition, Vec<usize>), i64> = HashMap::new();
    for term in formula_boundary(lambda)? {
        for (rho, s) in &term.shuffles {
            let (w, k) = act_on_word(word, rho, degrees, koszul);
            *acc.entry((term.target.clone(), w)).or_default() += (term.epsilon * s) as i64 * k;
        }
    }
    let mut out: Vec<(Partition, Vec<usize>, i64)> =
        acc.into_iter().filter(|e| e.1 != 0).map(|((t, w), c)| (t, w, c)).collect();
    out.sort();
    Ok(out)
}
