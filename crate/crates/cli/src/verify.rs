//! The `verify` report: axioms, dual constructions, complex invariants and,
//! for braid inputs, the equivariant and spectral checks.

use std::collections::HashMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use salvetti::arrangement::{
    avoids_hyperplanes, circuits, covector_closure, embed_vertex, faces, sign_of_point, PartitionDictionary,
    Representatives, CIRCUIT_LIMIT,
};
use salvetti::braid::equivariant::{compare_with_cellular, d1_apply, OrbitComplex};
use salvetti::braid::equivariant_complex;
use salvetti::braid::partition::{Mode, Partition};
use salvetti::complexes::{betti_numbers, skeletal_filtration, ChainComplex, Coefficients};
use salvetti::linalg::rat;
use salvetti::matroid::{
    check_circuit_axioms, check_covector_axioms, check_symmetric_ell_axioms, faces_from_circuits, tensor,
    FACE_SCAN_LIMIT,
};
use salvetti::SignVector;

use crate::{
    build_salvetti, cellular_groups, count_simplices, ingest, simplicial_groups, Failure, Outcome, RunConfig, MAX_SIMPLICES,
};

/// Largest `ℒ ⊗ R^ℓ` checked against the symmetric axioms.
const MAX_TENSOR: usize = 4_000;
const RANDOM_POINTS: usize = 200;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    /// A documented deviation: reported, not counted as a failure.
    Known,
    Skip,
}

pub struct Report {
    pub text: String,
    pub failures: usize,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.failures > 0
    }
}

struct Checks {
    lines: Vec<(Status, String, String)>,
}

impl Checks {
    fn push(&mut self, status: Status, name: &str, detail: impl Into<String>) {
        self.lines.push((status, name.to_string(), detail.into()));
    }

    fn check(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        self.push(if ok { Status::Pass } else { Status::Fail }, name, detail);
    }

    /// Structural errors become a FAIL line; input errors abort.
    fn run(&mut self, name: &str, f: impl FnOnce() -> Outcome<String>) {
        match f() {
            Ok(detail) => self.push(Status::Pass, name, detail),
            Err(Failure::Verification(msg)) => self.push(Status::Fail, name, msg),
            Err(Failure::Input(msg)) => self.push(Status::Skip, name, msg),
        }
    }
}

pub fn run(cfg: &RunConfig) -> Outcome<Report> {
    let (a, braid_k) = ingest(cfg.input.as_deref())?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut c = Checks { lines: Vec::new() };

    let l = covector_closure(&a)?;
    c.check("covector axioms", check_covector_axioms(&l).passed, format!("{} covectors", l.len()));
    if a.len() <= CIRCUIT_LIMIT {
        let circ = circuits(&a)?;
        let r = check_circuit_axioms(&circ);
        c.check("circuit axioms", r.passed, format!("{} circuits, {} violations", circ.len(), r.violation_count));
        if a.len() <= FACE_SCAN_LIMIT {
            let dual = faces_from_circuits(&circ)?;
            c.check("covectors = faces from circuits", dual == l, format!("{} vs {}", l.len(), dual.len()));
        } else {
            c.push(Status::Skip, "covectors = faces from circuits", format!("n > {FACE_SCAN_LIMIT}"));
        }
    }

    let fs = faces(&a)?;
    let bad = fs.iter().filter(|f| sign_of_point(&a, &f.representative).map_or(true, |s| s != f.covector)).count();
    c.check("face representatives", bad == 0, format!("{} faces, {bad} mismatched", fs.len()));

    let mut outside = 0;
    for _ in 0..RANDOM_POINTS {
        let x: Vec<_> = (0..a.dim()).map(|_| rat(rng.gen_range(-6..=6), rng.gen_range(1..=4))).collect();
        if !l.contains(&sign_of_point(&a, &x)?) {
            outside += 1;
        }
    }
    c.check("random points", outside == 0, format!("{RANDOM_POINTS} seeded points, {outside} outside"));

    let top = cfg.ell + 1;
    let t = tensor(&l, top)?;
    if t.len() <= MAX_TENSOR {
        let r = check_symmetric_ell_axioms(&t);
        let others = r.violations.iter().filter(|v| v.axiom != "level-permutation").count();
        c.check(&format!("symmetric axioms on L⊗R^{top} (except level swaps)"), others == 0, format!("{} vectors", t.len()));
        if r.has_axiom("level-permutation") {
            c.push(
                Status::Known,
                "level-permutation closure",
                format!("{} pointwise swaps leave the set (documented deviation)", r.violation_count - others),
            );
        } else {
            c.push(Status::Pass, "level-permutation closure", "closed");
        }
    } else {
        c.push(Status::Skip, "symmetric axioms", format!("{} vectors > {MAX_TENSOR}", t.len()));
    }

    let sal = build_salvetti(&l, cfg.ell)?;
    c.run("∂² = 0 (cellular)", || {
        ChainComplex::from_cw(&sal.cw, Coefficients::Z)?;
        Ok(format!("f-vector {:?}", sal.cw.f_vector()))
    });
    let simplices = count_simplices(&sal);
    if simplices <= MAX_SIMPLICES {
        c.run("cellular = simplicial homology", || {
            let cell = cellular_groups(&sal, Coefficients::Z)?;
            let simp = simplicial_groups(&sal, Coefficients::Z)?;
            let bc = betti_numbers(&cell);
            let mut bs = betti_numbers(&simp);
            let extra = bs.split_off(bc.len().min(bs.len()));
            let tors = |g: &[salvetti::complexes::HomologyGroup]| g.iter().all(|x| x.torsion.is_empty());
            if bc == bs && extra.iter().all(|&b| b == 0) && tors(&cell) && tors(&simp) {
                Ok(format!("Betti {bc:?}"))
            } else {
                Err(Failure::Verification(format!("cellular {bc:?}, simplicial {bs:?}")))
            }
        });
    } else {
        c.push(Status::Skip, "cellular = simplicial homology", format!("{simplices} simplices > {MAX_SIMPLICES}"));
    }

    let reps = Representatives::from_faces(&fs);
    let mut meets = 0;
    for e in 0..sal.lell.len() {
        let chain: Vec<SignVector> = sal.chain(e).into_iter().cloned().collect();
        if !avoids_hyperplanes(&a, &embed_vertex(&reps, &chain)?) {
            meets += 1;
        }
    }
    c.check("embedding avoids hyperplanes", meets == 0, format!("{} vertices, {meets} bad", sal.lell.len()));

    if let Some(k) = braid_k {
        braid_checks(&mut c, cfg, k, &sal, &mut rng);
    }

    let failures = c.lines.iter().filter(|l| l.0 == Status::Fail).count();
    let mut text = cfg.header();
    for (status, name, detail) in &c.lines {
        let tag = match status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Known => "KNOWN",
            Status::Skip => "SKIP",
        };
        writeln!(text, "{tag:<5} {name}: {detail}").unwrap();
    }
    writeln!(text, "{}", if failures == 0 { "all checks passed".to_string() } else { format!("{failures} failed") })
        .unwrap();
    Ok(Report { text, failures })
}

fn braid_checks(
    c: &mut Checks,
    cfg: &RunConfig,
    k: usize,
    sal: &salvetti::complexes::SalvettiComplex,
    rng: &mut ChaCha8Rng,
) {
    c.run("partition dictionary", || {
        let d = PartitionDictionary::new(k)?;
        d.verify_order_isomorphism()?;
        Ok(format!("{} partitions", d.len()))
    });
    if k <= 5 {
        c.run("free action and chain map", || {
            let oc = OrbitComplex::new(k, cfg.ell)?;
            oc.verify_chain_map()?;
            Ok(format!("{} orbits", oc.reps.len()))
        });
    }
    if cfg.ell == 1 {
        c.run("skeletal filtration", || {
            let levels = skeletal_filtration(sal, k)?;
            Ok(format!("{} levels", levels.len()))
        });
        if k <= 4 {
            c.run("shuffle formula = cellular boundary", || {
                let oc = OrbitComplex::new(k, 1)?;
                let check = compare_with_cellular(&equivariant_complex(k)?, &oc)?;
                Ok(format!("{} cells", check.cells))
            });
        }
    }
    if k <= 5 {
        let degrees: Vec<i64> = (0..2).map(|_| rng.gen_range(0..=3)).collect();
        c.run("d¹ ∘ d¹ = 0", || {
            for koszul in [true, false] {
                d1_squared_zero(k, &degrees, koszul)?;
            }
            Ok(format!("degrees {degrees:?}, both sign conventions"))
        });
    }
}

fn d1_squared_zero(k: usize, degrees: &[i64], koszul: bool) -> Outcome<()> {
    let words: Vec<Vec<usize>> = (0..k).fold(vec![vec![]], |acc, _| {
        acc.into_iter().flat_map(|w| (0..degrees.len()).map(move |x| [w.clone(), vec![x]].concat())).collect()
    });
    for d in 2..k {
        for lambda in Partition::enumerate(k, d, Mode::OrderPreserving)? {
            for word in &words {
                let mut acc: HashMap<(Partition, Vec<usize>), i64> = HashMap::new();
                for (tau, w, x) in d1_apply(&lambda, word, degrees, koszul)? {
                    for (sigma, w2, y) in d1_apply(&tau, &w, degrees, koszul)? {
                        *acc.entry((sigma, w2)).or_default() += x * y;
                    }
                }
                if acc.values().any(|&v| v != 0) {
                    return Err(Failure::Verification(format!("d¹d¹ ≠ 0 on {lambda} ⊗ {word:?} (koszul = {koszul})")));
                }
            }
        }
    }
    Ok(())
}
