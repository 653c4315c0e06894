//! `salvetti` command-line tool.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad input or a
//! resource limit.

mod verify;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use salvetti::arrangement::{braid_arrangement, circuits, cocircuits, covectors, faces, Arrangement};
use salvetti::braid::partition::Partition;
use salvetti::braid::symbol::{all_symbols, render_symbol};
use salvetti::braid::{build_pages, GradedModule, Normalization, PageConfig};
use salvetti::complexes::homology::HomologyGroup;
use salvetti::complexes::{
    order_complex, salvetti_cw, skeletal_filtration, smith_homology, ChainComplex, Coefficients, SalvettiComplex,
};
use salvetti::linalg::format_rational;
use salvetti::{build_l_ell, CovectorSet, Error};

const MAX_HYPERPLANES: usize = 15;
const MAX_BRAID_K: usize = 6;
const MAX_ELL: u8 = 3;
/// Largest `ℒ^(ℓ)` the tool will build.
pub const MAX_CELLS: usize = 25_000;
/// Largest order complex (in simplices) the tool will build.
pub const MAX_SIMPLICES: usize = 250_000;
const THREADS_VAR: &str = "SALVETTI_THREADS";

#[derive(Parser)]
#[command(name = "salvetti", version, about = "Salvetti complexes of real hyperplane arrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Covectors, circuits and cocircuits of an arrangement (JSON).
    Faces(Opts),
    /// Cells of Sal^(ℓ) with boundaries (JSON).
    Salvetti(Opts),
    /// Betti numbers and torsion, cellular and simplicial (CSV).
    Homology(Opts),
    /// Cell counts of the filtration by distinct real coordinates (CSV).
    Filtration(Opts),
    /// E¹ and E² pages of the braid spectral sequence (JSON).
    Pages(Opts),
    /// Axioms, oracles and invariants (text report).
    Verify(Opts),
    /// Cube symbols S(λ, σ) for k points (text).
    Symbols(Opts),
}

#[derive(Args, Clone, Debug, Serialize)]
struct Opts {
    /// Arrangement JSON file or `braid:k`.
    #[arg(long)]
    input: Option<String>,
    /// Order of the Salvetti complex; for `pages`, the ℓ of the spectral sequence.
    #[arg(long)]
    ell: Option<u8>,
    /// `Z`, `Q` or `Fp:p`.
    #[arg(long)]
    coefficients: Option<String>,
    #[arg(long, default_value_t = 3)]
    k_max: usize,
    /// `unshifted` or `shifted`.
    #[arg(long, default_value = "unshifted")]
    normalization: String,
    /// Koszul signs when permuting tensor factors.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    koszul: bool,
    /// Generator degrees of the coefficient module for `pages`.
    #[arg(long, value_delimiter = ',', default_value = "0", allow_hyphen_values = true)]
    degrees: Vec<i64>,
    /// `both`, `cellular` or `simplicial`.
    #[arg(long, default_value = "both")]
    method: String,
    /// Number of points for `symbols`.
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Why a command stopped.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CellStructure(_) | Error::BoundarySquareNonzero(_) | Error::Axiom(_) | Error::NotFree(_) => {
                Failure::Verification(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

pub type Outcome<T> = Result<T, Failure>;

fn input_err(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

/// Resolved run configuration, echoed in every output header.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub input: Option<String>,
    pub ell: u8,
    pub coefficients: String,
    pub k_max: usize,
    pub normalization: Normalization,
    pub koszul: bool,
    pub degrees: Vec<i64>,
    pub method: String,
    pub k: usize,
    pub seed: u64,
}

impl RunConfig {
    fn resolve(command: &str, o: &Opts) -> Outcome<Self> {
        let pages = command == "pages";
        let ell = o.ell.unwrap_or(if pages { 2 } else { 1 });
        if ell > MAX_ELL || (ell == 0 && command != "faces") {
            return Err(input_err(format!("--ell {ell} outside 1..={MAX_ELL}")));
        }
        let coefficients = o.coefficients.clone().unwrap_or_else(|| if pages { "Q" } else { "Z" }.into());
        let coeffs: Coefficients = coefficients.parse()?;
        if pages && !coeffs.is_field() {
            return Err(input_err("pages need field coefficients (Q or Fp:p)"));
        }
        if !["both", "cellular", "simplicial"].contains(&o.method.as_str()) {
            return Err(input_err(format!("unknown --method {:?}", o.method)));
        }
        Ok(RunConfig {
            command: command.into(),
            input: o.input.clone(),
            ell,
            coefficients: coeffs.to_string(),
            k_max: o.k_max,
            normalization: o.normalization.parse()?,
            koszul: o.koszul,
            degrees: o.degrees.clone(),
            method: o.method.clone(),
            k: o.k,
            seed: o.seed,
        })
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients.parse().expect("validated")
    }

    fn meta(&self) -> Value {
        json!({
            "tool": "salvetti",
            "version": env!("CARGO_PKG_VERSION"),
            "config": self,
            "conventions": {
                "normal_orientation": "e_i - e_j for i < j; the identity permutation has chamber (-, ..., -)",
                "sign_vector_format": "sign then level, e.g. \"+2 0 -1\"",
                "koszul": self.koszul,
                "normalization": self.normalization,
            },
        })
    }

    /// `# `-prefixed header for CSV and text outputs.
    pub fn header(&self) -> String {
        let meta = self.meta();
        let mut out = String::new();
        writeln!(out, "# salvetti {}", env!("CARGO_PKG_VERSION")).unwrap();
        writeln!(out, "# config: {}", meta["config"]).unwrap();
        writeln!(out, "# conventions: {}", meta["conventions"]).unwrap();
        out
    }
}

/// `braid:k` or a JSON file.
pub fn ingest(input: Option<&str>) -> Outcome<(Arrangement, Option<usize>)> {
    let input = input.ok_or_else(|| input_err("--input is required (a JSON file or braid:k)"))?;
    let (a, k) = if let Some(k) = input.strip_prefix("braid:") {
        let k: usize = k.parse().map_err(|_| input_err(format!("bad builtin {input:?}")))?;
        if !(2..=MAX_BRAID_K).contains(&k) {
            return Err(input_err(format!("braid:k needs 2 <= k <= {MAX_BRAID_K}")));
        }
        (braid_arrangement(k)?, Some(k))
    } else {
        let text = std::fs::read_to_string(input).map_err(|e| input_err(format!("{input}: {e}")))?;
        let a = Arrangement::from_json_str(&text).map_err(|e| input_err(format!("{input}: {e}")))?;
        (a, None)
    };
    if a.len() > MAX_HYPERPLANES {
        return Err(input_err(format!("{} hyperplanes exceed the limit of {MAX_HYPERPLANES}", a.len())));
    }
    if a.is_empty() {
        return Err(input_err("arrangement has no hyperplanes"));
    }
    Ok((a, k))
}

/// Size of `ℒ^(ℓ)` without building it.
pub fn count_cells(l: &CovectorSet, ell: u8) -> usize {
    let vs = l.vectors();
    let n = vs.len();
    let below: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| vs[j].leq(&vs[i]).unwrap_or(false)).collect()).collect();
    // chains of length m starting at i
    let mut count = vec![1usize; n];
    for _ in 0..ell {
        count = (0..n).map(|i| below[i].iter().map(|&j| count[j]).fold(0usize, usize::saturating_add)).collect();
    }
    (0..n).filter(|&i| vs[i].is_tope()).map(|i| count[i]).fold(0, usize::saturating_add)
}

pub fn build_salvetti(l: &CovectorSet, ell: u8) -> Outcome<SalvettiComplex> {
    let cells = count_cells(l, ell);
    if cells > MAX_CELLS {
        return Err(input_err(format!("Sal^({ell}) would have {cells} cells, over the limit of {MAX_CELLS}")));
    }
    Ok(salvetti_cw(&build_l_ell(l, ell)?)?)
}

fn faces_cmd(cfg: &RunConfig) -> Outcome<Value> {
    let (a, _) = ingest(cfg.input.as_deref())?;
    let fs = faces(&a)?;
    let l = covectors(&a)?;
    let c = circuits(&a)?;
    let co = cocircuits(&a)?;
    let records: Vec<Value> = fs
        .iter()
        .map(|f| {
            json!({
                "covector": f.covector.to_string(),
                "codim": f.codim,
                "representative": f.representative.iter().map(format_rational).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({
        "meta": cfg.meta(),
        "arrangement": a.to_json(),
        "counts": {"covectors": l.len(), "topes": l.topes().len(), "circuits": c.len(), "cocircuits": co.len()},
        "covectors": records,
        "circuits": c.circuits().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "cocircuits": co.iter().map(ToString::to_string).collect::<Vec<_>>(),
    }))
}

fn salvetti_cmd(cfg: &RunConfig) -> Outcome<Value> {
    let (a, _) = ingest(cfg.input.as_deref())?;
    let sal = build_salvetti(&covectors(&a)?, cfg.ell)?;
    Ok(json!({
        "meta": cfg.meta(),
        "ell": cfg.ell,
        "f_vector": sal.cw.f_vector(),
        "euler_characteristic": sal.cw.euler_characteristic(),
        "complex": sal.to_json(),
    }))
}

/// Number of nonempty chains of the face poset, i.e. simplices of the
/// order complex.
pub fn count_simplices(sal: &SalvettiComplex) -> usize {
    let p = &sal.lell.poset;
    let heights = p.height_above();
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&i| heights[i]);
    let mut starting = vec![0usize; p.len()];
    for &i in &order {
        starting[i] = p.strict_up(i).iter().map(|j| starting[j]).fold(1, usize::saturating_add);
    }
    starting.into_iter().fold(0, usize::saturating_add)
}

pub fn simplicial_groups(sal: &SalvettiComplex, coeffs: Coefficients) -> Outcome<Vec<HomologyGroup>> {
    let n = count_simplices(sal);
    if n > MAX_SIMPLICES {
        return Err(input_err(format!(
            "order complex has {n} simplices, over the limit of {MAX_SIMPLICES}; use --method cellular"
        )));
    }
    let cc = ChainComplex::from_simplicial(&order_complex(&sal.lell.poset), coeffs)?;
    Ok(smith_homology(&cc)?)
}

pub fn cellular_groups(sal: &SalvettiComplex, coeffs: Coefficients) -> Outcome<Vec<HomologyGroup>> {
    Ok(smith_homology(&ChainComplex::from_cw(&sal.cw, coeffs)?)?)
}

fn torsion_field(g: &HomologyGroup) -> String {
    g.torsion.iter().map(ToString::to_string).collect::<Vec<_>>().join(";")
}

fn homology_cmd(cfg: &RunConfig) -> Outcome<String> {
    let (a, _) = ingest(cfg.input.as_deref())?;
    let sal = build_salvetti(&covectors(&a)?, cfg.ell)?;
    let coeffs = cfg.coefficients();
    let mut tables: Vec<(&str, Vec<HomologyGroup>)> = Vec::new();
    if cfg.method != "simplicial" {
        tables.push(("cellular", cellular_groups(&sal, coeffs)?));
    }
    if cfg.method != "cellular" {
        tables.push(("simplicial", simplicial_groups(&sal, coeffs)?));
    }
    let mut out = cfg.header();
    out.push_str("method,degree,betti,torsion\n");
    for (method, groups) in &tables {
        for g in groups {
            writeln!(out, "{method},{},{},{}", g.degree, g.betti, torsion_field(g)).unwrap();
        }
    }
    if let [(_, cell), (_, simp)] = tables.as_slice() {
        // the order complex has no cells above the cellular top dimension
        let agree = simp.iter().all(|g| match cell.get(g.degree) {
            Some(c) => c.betti == g.betti && c.torsion == g.torsion,
            None => g.betti == 0 && g.torsion.is_empty(),
        });
        if !agree {
            return Err(Failure::Verification(format!("cellular and simplicial homology differ\n{out}")));
        }
    }
    Ok(out)
}

fn filtration_cmd(cfg: &RunConfig) -> Outcome<String> {
    let (a, k) = ingest(cfg.input.as_deref())?;
    let k = k.ok_or_else(|| input_err("filtration needs a braid:k input"))?;
    if cfg.ell != 1 {
        return Err(input_err("filtration is defined for ell = 1"));
    }
    let sal = build_salvetti(&covectors(&a)?, 1)?;
    let levels = skeletal_filtration(&sal, k)?;
    let mut out = cfg.header();
    out.push_str("s,cells,skeleton_dim\n");
    for lvl in levels {
        writeln!(out, "{},{},{}", lvl.s, lvl.cells.len(), k - lvl.s).unwrap();
    }
    Ok(out)
}

fn pages_cmd(cfg: &RunConfig) -> Outcome<Value> {
    let page_cfg = PageConfig {
        coefficients: GradedModule { degrees: cfg.degrees.clone(), field: cfg.coefficients() },
        k_max: cfg.k_max,
        ell: cfg.ell,
        normalization: cfg.normalization,
        koszul: cfg.koszul,
    };
    if cfg.degrees.is_empty() {
        return Err(input_err("--degrees needs at least one generator"));
    }
    let blocks = build_pages(&page_cfg)?;
    Ok(json!({"meta": cfg.meta(), "blocks": blocks}))
}

fn symbols_cmd(cfg: &RunConfig) -> Outcome<String> {
    if !(1..=4).contains(&cfg.k) {
        return Err(input_err("symbols are rendered for 1 <= k <= 4"));
    }
    let mut out = cfg.header();
    let symbols: Vec<(Partition, Partition)> = all_symbols(cfg.k);
    writeln!(out, "# {} symbols", symbols.len()).unwrap();
    for (lambda, sigma) in symbols {
        writeln!(out, "\nS({lambda}, {sigma})\n{}", render_symbol(&lambda, &sigma)?).unwrap();
    }
    Ok(out)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn run(command: &Command) -> Outcome<String> {
    let (name, opts) = match command {
        Command::Faces(o) => ("faces", o),
        Command::Salvetti(o) => ("salvetti", o),
        Command::Homology(o) => ("homology", o),
        Command::Filtration(o) => ("filtration", o),
        Command::Pages(o) => ("pages", o),
        Command::Verify(o) => ("verify", o),
        Command::Symbols(o) => ("symbols", o),
    };
    let cfg = RunConfig::resolve(name, opts)?;
    let text = match name {
        "faces" => pretty(&faces_cmd(&cfg)?),
        "salvetti" => pretty(&salvetti_cmd(&cfg)?),
        "homology" => homology_cmd(&cfg)?,
        "filtration" => filtration_cmd(&cfg)?,
        "pages" => pretty(&pages_cmd(&cfg)?),
        "symbols" => symbols_cmd(&cfg)?,
        _ => {
            let report = verify::run(&cfg)?;
            if report.failed() {
                write_output(opts.out.as_ref(), &report.text)?;
                return Err(Failure::Verification(format!("{} check(s) failed", report.failures)));
            }
            report.text
        }
    };
    write_output(opts.out.as_ref(), &text)?;
    Ok(text)
}

fn write_output(out: Option<&PathBuf>, text: &str) -> Outcome<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| input_err(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn init_threads() -> Outcome<()> {
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let n: usize = v.parse().map_err(|_| input_err(format!("{THREADS_VAR}={v:?} is not a number")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| input_err(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match init_threads().and_then(|_| run(&cli.command)) {
        Ok(_) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structural_errors_are_verification_failures() {
        assert!(matches!(Failure::from(Error::BoundarySquareNonzero("d1".into())), Failure::Verification(_)));
        assert!(matches!(Failure::from(Error::Axiom("symmetry".into())), Failure::Verification(_)));
        assert!(matches!(Failure::from(Error::InvalidArrangement("zero normal".into())), Failure::Input(_)));
    }
}
