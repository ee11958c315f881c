//! Subcommands, generic over the field.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use totref_core::complexes::{
    compose_check, ezd_complex, graded_exactness, indecomposability_certificate, is_minimal, ChainOrigin,
    FreeComplexWindow, NoEzdEvidence,
};
use totref_core::factory::{
    build_special_ring_with_bound, build_window, canonical_window, certify, random_blocks, FactoryWindow,
};
use totref_core::graph::special_graph;
use totref_core::grading::{artinian_reduction, expected_hilbert};
use totref_core::lifting::lift_through_sequence;
use totref_core::structure::{
    find_ezd, generic_wlp, ideal_pair_analysis, kernel_system, partition_search, wlp_check,
    yoshino_check, EzdStrategy, TrVerdict, DEFAULT_WLP_TRIALS,
};
use totref_core::{ArtinianReduction, Graph, ReductionMode, Scalar};

use crate::report::*;

/// Settings shared by every subcommand.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub degree_bound: usize,
    pub seed: u64,
    pub retries: usize,
    pub trials: usize,
    pub forward: usize,
    pub backward: usize,
    pub canonical: bool,
    pub json: bool,
    pub output: Option<PathBuf>,
}

/// Printed text plus the exit status.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

fn render<R: Serialize + std::fmt::Display>(cfg: &RunConfig, report: &R, complex: Option<String>) -> Result<String> {
    if cfg.json {
        let complex = match complex {
            Some(c) => Some(serde_json::from_str::<serde_json::Value>(&c)?),
            None => None,
        };
        #[derive(Serialize)]
        struct Doc<'a, R> {
            report: &'a R,
            complex: Option<serde_json::Value>,
        }
        return Ok(serde_json::to_string_pretty(&Doc { report, complex })?);
    }
    Ok(report.to_string())
}

/// Writes the complex to `--output` when given; otherwise hands it back for
/// the JSON document.
fn emit<F: Scalar>(cfg: &RunConfig, w: &FreeComplexWindow<F>) -> Result<Option<String>> {
    let text = w.to_json_string();
    match &cfg.output {
        Some(p) => {
            std::fs::write(p, text + "\n").with_context(|| format!("writing {}", p.display()))?;
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}

pub fn load_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Graph::from_json(&text).with_context(|| format!("loading graph {}", path.display()))
}

fn same_graph(a: &Graph, b: &Graph) -> bool {
    let mut va = a.labels().to_vec();
    let mut vb = b.labels().to_vec();
    va.sort();
    vb.sort();
    let edges = |g: &Graph| {
        let mut e: Vec<(String, String)> = g
            .edges()
            .iter()
            .map(|&(i, j)| {
                let (x, y) = (g.label(i).to_string(), g.label(j).to_string());
                if x < y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect();
        e.sort();
        e
    };
    va == vb && edges(a) == edges(b)
}

/// Canonical forms when they work, generic ones otherwise.
fn reduce<F: Scalar>(g: &Graph, cfg: &RunConfig) -> Result<ArtinianReduction<F>> {
    if g.bipartition().is_some() {
        if let Ok(r) = artinian_reduction::<F>(g, ReductionMode::CanonicalBipartite, cfg.degree_bound) {
            return Ok(r);
        }
    }
    Ok(artinian_reduction::<F>(g, ReductionMode::Generic { seed: cfg.seed }, cfg.degree_bound)?)
}

fn strategy<F: Scalar>(red: &ArtinianReduction<F>, cfg: &RunConfig) -> Result<(EzdStrategy<F>, &'static str)> {
    Ok(match red.mode() {
        ReductionMode::CanonicalBipartite => (
            EzdStrategy::BipartiteCanonical { flip: red.sign_flip()?, trials: cfg.trials, seed: cfg.seed },
            "bipartite-canonical",
        ),
        ReductionMode::Generic { .. } => (EzdStrategy::Random { trials: cfg.trials, seed: cfg.seed }, "random"),
    })
}

pub fn verify_window<F: Scalar>(w: &FreeComplexWindow<F>, bound: Option<usize>) -> Result<VerifyReport> {
    Ok(VerifyReport::new(
        (w.lo(), w.hi()),
        w.betti_numbers(),
        compose_check(w)?,
        is_minimal(w),
        w.periodicity(),
        graded_exactness(w, bound)?,
    ))
}

pub fn analyze<F: Scalar>(path: &Path, cfg: &RunConfig) -> Result<Outcome> {
    let g = load_graph(path)?;
    let conditions = g.necessary_conditions()?;
    let red = reduce::<F>(&g, cfg)?;
    let r = red.ring().clone();
    let expected = expected_hilbert(g.n(), g.e(), cfg.degree_bound);
    let hilbert = HilbertReport {
        mode: match red.mode() {
            ReductionMode::CanonicalBipartite => "canonical".into(),
            ReductionMode::Generic { seed } => format!("generic, seed {seed}"),
        },
        computed: r.hilbert(),
        matches: r.hilbert() == expected,
        expected,
    };
    let yoshino = yoshino_check(&r)?;
    let wlp = generic_wlp(&r, DEFAULT_WLP_TRIALS, cfg.seed)?;

    let kernel = if red.mode() == ReductionMode::CanonicalBipartite && conditions.edge_count_ok {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let l: Vec<F> = (0..g.n()).map(|_| F::sample(&mut rng)).collect();
        let ks = kernel_system(&g, &red.forms()[0], &red.forms()[1], &l)?;
        let image = red.linear_image(&l);
        let wlp_for_form = wlp_check(&r, &image)?;
        Some(KernelReport {
            form: r.format(&image),
            dim: ks.dim(),
            koszul_bound_holds: ks.dim() >= 3,
            wlp_for_form,
            consistent: (ks.dim() == 4) == wlp_for_form,
        })
    } else {
        None
    };

    let split = match partition_search(&r)? {
        Some((a, b)) => {
            let gens = r.generators();
            let pick = |ix: &[usize]| ix.iter().map(|&i| gens[i].clone()).collect::<Vec<_>>();
            let analysis = ideal_pair_analysis(&r, &pick(&a), &pick(&b))?;
            let names = |ix: &[usize]| ix.iter().map(|&i| r.labels(1)[i].clone()).collect();
            Some(SplitReport { a: names(&a), b: names(&b), analysis })
        }
        None => None,
    };

    let (strat, strat_name) = strategy(&red, cfg)?;
    let search = find_ezd(&r, &strat)?;
    let ezd = EzdReport {
        strategy: strat_name.into(),
        a: search.pair.as_ref().map(|p| r.format(&p.a)),
        b: search.pair.as_ref().map(|p| r.format(&p.b)),
        trials: search.trials,
        exhaustive: search.exhaustive,
    };
    let no_ezd_certificate = conditions
        .disconnecting_pair
        .as_ref()
        .map(|(x, y)| NoEzdEvidence::DisconnectingPair { x: x.clone(), y: y.clone() });

    let mut reasons = Vec::new();
    if conditions.tree {
        reasons.push("tree: the square of the maximal ideal vanishes".to_string());
    }
    if !conditions.edge_count_ok {
        reasons.push(format!("e = {} differs from 2n - 4 = {}", g.e(), (2 * g.n()).saturating_sub(4)));
    }
    if !conditions.triangle_free {
        reasons.push("the graph has a triangle".into());
    }
    if !conditions.leaf_free {
        reasons.push("the graph has a leaf".into());
    }
    if yoshino.verdict == TrVerdict::NoNonFreeTr {
        reasons.push("the Artinian reduction fails the socle, dimension or quadratic conditions".into());
    }
    if let Some(s) = &split {
        reasons.push(format!("the maximal ideal splits as ({}) + ({})", s.a.join(", "), s.b.join(", ")));
    }

    let verdict = if !reasons.is_empty() {
        Verdict::NoNonFreeTr { reasons }
    } else if let (Some(a), Some(b)) = (&ezd.a, &ezd.b) {
        Verdict::Admits { witness: Box::new(Witness::Ezd { a: a.clone(), b: b.clone() }) }
    } else if same_graph(&g, &special_graph()) {
        let sr = build_special_ring_with_bound::<F>(cfg.degree_bound.max(3))?;
        let fw = canonical_window(&sr, 3, 3)?;
        let window = verify_window(&fw.window, None)?;
        Verdict::Admits { witness: Box::new(Witness::Factory { evidence: sr.no_ezd_evidence()?, window }) }
    } else {
        Verdict::Inconclusive {
            reason: match &no_ezd_certificate {
                Some(_) => "no exact zero divisors (disconnecting pair) and no known rank-two construction".into(),
                None => "no exact zero divisor found and no obstruction detected".into(),
            },
        }
    };
    let code = if verdict.is_inconclusive() { 2 } else { 0 };
    let report = AnalyzeReport {
        field: F::field_spec().to_string(),
        conditions,
        hilbert,
        yoshino,
        wlp,
        kernel_system: kernel,
        split,
        ezd,
        no_ezd_certificate,
        verdict,
    };
    Ok(Outcome { text: render(cfg, &report, None)?, code })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum BuildMode {
    Ezd,
    Factory,
}

pub fn build<F: Scalar>(graph: Option<&Path>, ten_vertex: bool, mode: BuildMode, cfg: &RunConfig) -> Result<Outcome> {
    let g = match (graph, ten_vertex) {
        (_, true) => special_graph(),
        (Some(p), false) => load_graph(p)?,
        (None, false) => bail!("give a graph file or --ten-vertex"),
    };
    let field = F::field_spec().to_string();
    match mode {
        BuildMode::Ezd => {
            let red = reduce::<F>(&g, cfg)?;
            let r = red.ring().clone();
            let (strat, _) = strategy(&red, cfg)?;
            let search = find_ezd(&r, &strat)?;
            let Some(pair) = search.pair else {
                let report = BuildReport {
                    field,
                    mode: "ezd".into(),
                    witness: None,
                    verification: None,
                    factory: None,
                    indecomposability: None,
                    reason: Some(format!("no exact zero divisors after {} trials", search.trials)),
                };
                return Ok(Outcome { text: render(cfg, &report, None)?, code: 2 });
            };
            let half = cfg.forward.max(cfg.backward).max(1);
            let w = ezd_complex(&r, &pair, half)?
                .with_origin(Some(ChainOrigin { reduction: red.spec(), stage: 2 }));
            let verification = verify_window(&w, None)?;
            let report = BuildReport {
                field,
                mode: "ezd".into(),
                witness: Some(format!("{} / {}", r.format(&pair.a), r.format(&pair.b))),
                verification: Some(verification),
                factory: None,
                indecomposability: None,
                reason: None,
            };
            let complex = emit(cfg, &w)?;
            Ok(Outcome { text: render(cfg, &report, complex)?, code: 0 })
        }
        BuildMode::Factory => {
            if !same_graph(&g, &special_graph()) {
                let report = BuildReport {
                    field,
                    mode: "factory".into(),
                    witness: None,
                    verification: None,
                    factory: None,
                    indecomposability: None,
                    reason: Some("the block construction is only available for the ten-vertex graph".into()),
                };
                return Ok(Outcome { text: render(cfg, &report, None)?, code: 2 });
            }
            factory::<F>(cfg)
        }
    }
}

pub fn factory<F: Scalar>(cfg: &RunConfig) -> Result<Outcome> {
    let sr = build_special_ring_with_bound::<F>(cfg.degree_bound.max(3))?;
    let fw: FactoryWindow<F> = if cfg.canonical {
        canonical_window(&sr, cfg.forward, cfg.backward)?
    } else {
        let start = random_blocks(&sr, cfg.seed, cfg.retries)?;
        build_window(&sr, &start, cfg.forward, cfg.backward)?
    };
    let window = fw.window.clone().with_origin(Some(ChainOrigin { reduction: sr.reduction().spec(), stage: 2 }));
    let cert = certify(&sr, &fw)?;
    let indecomposability = indecomposability_certificate(&window, 0, &sr.no_ezd_evidence()?);
    let report = BuildReport {
        field: F::field_spec().to_string(),
        mode: if cfg.canonical { "factory (explicit blocks)".into() } else { format!("factory (seed {})", cfg.seed) },
        witness: None,
        verification: Some(verify_window(&window, None)?),
        factory: Some(cert),
        indecomposability: Some(indecomposability),
        reason: None,
    };
    let complex = emit(cfg, &window)?;
    Ok(Outcome { text: render(cfg, &report, complex)?, code: 0 })
}

pub fn load_window<F: Scalar>(path: &Path) -> Result<FreeComplexWindow<F>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    FreeComplexWindow::from_json_str(&text).with_context(|| format!("loading complex {}", path.display()))
}

pub fn verify<F: Scalar>(path: &Path, bound: Option<usize>, cfg: &RunConfig) -> Result<Outcome> {
    let w = load_window::<F>(path)?;
    let report = verify_window(&w, bound)?;
    Ok(Outcome { text: render(cfg, &report, None)?, code: 0 })
}

pub fn lift<F: Scalar>(path: &Path, to_stage: usize, cfg: &RunConfig) -> Result<Outcome> {
    let w = load_window::<F>(path)?;
    let origin = w.origin().cloned().ok_or_else(|| anyhow!("the complex carries no reduction chain descriptor"))?;
    if to_stage > origin.stage {
        bail!("cannot lift from stage {} down to stage {to_stage}", origin.stage);
    }
    let red = origin.reduction.build::<F>()?;
    let ring = red.stage(origin.stage).ok_or_else(|| anyhow!("stage {} is not in the chain", origin.stage))?;
    if **ring != **w.algebra() {
        bail!("the complex's ring does not match stage {} of its chain", origin.stage);
    }
    let chain = red.chain();
    let (top, steps) = lift_through_sequence(&w, &chain[to_stage..origin.stage])?;
    let mut reports = Vec::new();
    for (k, s) in steps.iter().enumerate() {
        let from = origin.stage - k;
        reports.push(LiftStepReport {
            from_stage: from,
            to_stage: from - 1,
            x: s.quotient.source().format(s.x()),
            verification: verify_window(&s.window, None)?,
        });
    }
    let passed = reports.iter().all(|r| r.verification.passed());
    let report = LiftReport { field: F::field_spec().to_string(), steps: reports, passed };
    let complex = emit(cfg, &top)?;
    Ok(Outcome { text: render(cfg, &report, complex)?, code: 0 })
}

/// Field recorded in a complex file.
pub fn peek_field(path: &Path) -> Result<totref_core::FieldSpec> {
    #[derive(serde::Deserialize)]
    struct Algebra {
        field: totref_core::FieldSpec,
    }
    #[derive(serde::Deserialize)]
    struct Head {
        algebra: Algebra,
    }
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let head: Head = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(head.algebra.field)
}
