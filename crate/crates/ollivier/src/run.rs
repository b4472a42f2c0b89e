//! Command execution behind the CLI: ingest an edge list, fan per-edge work
//! out to a worker pool, restore deterministic order, and emit records.
//!
//! Exit status contract: 0 success (and agreement for `compare`), 1 exact
//! methods disagree or a refutation check fails, 2 unreadable input or a
//! computation error, 3 edge filter matched nothing.

use crate::counterexamples::{build, verify_refutation, Family};
use crate::curvature::{
    closed_form_applicable, forman, kappa, kappa_closed_form, w_bm_bipartite, w_bm_girth5,
    wasserstein_brute_force, wasserstein_full_lp, wasserstein_reduced, MethodChoice,
};
use crate::graph::{Graph, VertexId};
use crate::partition::{classify_core, components_of_r, refine_counts};
use crate::rational::rat;
use crate::report::{
    emit_compare, emit_curvature, emit_partitions, CompareRecord, CurvatureRecord, OutputFormat,
    PartitionRecord,
};
use crate::{Error, Result};
use rayon::prelude::*;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_FILTER: i32 = 3;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CommandKind {
    Curvature,
    Compare,
    Partition,
    Counterexample,
}

/// Method selector including the reference formulas.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MethodArg {
    Auto,
    FullLp,
    ReducedLp,
    ClosedForm,
    BruteForce,
    BmBipartite,
    BmGirth5,
    Forman,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: CommandKind,
    pub input: Option<PathBuf>,
    pub method: MethodArg,
    pub edge_filter: Option<(String, String)>,
    pub format: OutputFormat,
    pub jobs: usize,
    pub brute_budget: usize,
    /// `compare` over all connected graphs with at most this many vertices
    /// instead of a file.
    pub corpus_max: Option<usize>,
    pub family: Option<Family>,
    pub parameter: Option<usize>,
    pub emit_graph: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: CommandKind) -> Self {
        RunConfig {
            command,
            input: None,
            method: MethodArg::Auto,
            edge_filter: None,
            format: OutputFormat::Json,
            jobs: 1,
            brute_budget: crate::curvature::BRUTE_FORCE_VERTEX_BUDGET,
            corpus_max: None,
            family: None,
            parameter: None,
            emit_graph: None,
        }
    }
}

/// Executes the configured command, writing records to `out` and diagnostics
/// to `err`; returns the exit status.
pub fn run(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let code = match dispatch(cfg, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "ollivier: {e}");
            match e {
                Error::EdgeFilterNotFound { .. } => EXIT_FILTER,
                _ => EXIT_IO,
            }
        }
    };
    let _ = out.flush();
    code
}

fn dispatch(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    assert!(cfg.jobs >= 1, "jobs must be positive");
    assert!(cfg.brute_budget >= 1, "brute budget must be positive");
    match cfg.command {
        CommandKind::Curvature => run_curvature(cfg, out),
        CommandKind::Compare => run_compare(cfg, out, err),
        CommandKind::Partition => run_partition(cfg, out),
        CommandKind::Counterexample => run_counterexample(cfg, out),
    }
}

fn load_graph(cfg: &RunConfig) -> Result<Graph> {
    let path = cfg.input.as_ref().ok_or_else(|| Error::BadParameter {
        message: "an input edge-list path is required".into(),
    })?;
    let text = std::fs::read_to_string(path)?;
    Graph::parse_edge_list(&text)
}

/// Edges in deterministic output order: lexicographic by normalised label
/// pair, each edge oriented so the smaller label comes first.
fn sorted_edges(g: &Graph) -> Vec<(VertexId, VertexId)> {
    let mut edges: Vec<(VertexId, VertexId)> = g
        .edges()
        .map(|(a, b)| {
            if g.label(a) <= g.label(b) {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    edges.sort_by(|&(a1, b1), &(a2, b2)| {
        (g.label(a1), g.label(b1)).cmp(&(g.label(a2), g.label(b2)))
    });
    edges
}

fn select_edges(g: &Graph, cfg: &RunConfig) -> Result<Vec<(VertexId, VertexId)>> {
    let edges = sorted_edges(g);
    match &cfg.edge_filter {
        None => Ok(edges),
        Some((a, b)) => {
            let found = g.vertex_by_label(a).zip(g.vertex_by_label(b)).filter(
                |&(x, y)| g.has_edge(x, y),
            );
            match found {
                Some((x, y)) => {
                    let (x, y) = if g.label(x) <= g.label(y) { (x, y) } else { (y, x) };
                    Ok(vec![(x, y)])
                }
                None => Err(Error::EdgeFilterNotFound {
                    u: a.clone(),
                    v: b.clone(),
                }),
            }
        }
    }
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("worker pool")
}

fn curvature_record(
    g: &Graph,
    u: VertexId,
    v: VertexId,
    method: MethodArg,
    brute_budget: usize,
) -> Result<CurvatureRecord> {
    let choice = match method {
        MethodArg::Auto => MethodChoice::Auto,
        MethodArg::FullLp => MethodChoice::FullLp,
        MethodArg::ReducedLp => MethodChoice::ReducedLp,
        MethodArg::ClosedForm => MethodChoice::ClosedForm,
        MethodArg::BruteForce => MethodChoice::BruteForce,
        MethodArg::BmBipartite => {
            let w = w_bm_bipartite(g, u, v)?;
            let k = rat(1) - &w;
            return CurvatureRecord::from_reference(g, u, v, "bm-bipartite", Some(&w), &k);
        }
        MethodArg::BmGirth5 => {
            let w = w_bm_girth5(g, u, v)?;
            let k = rat(1) - &w;
            return CurvatureRecord::from_reference(g, u, v, "bm-girth5", Some(&w), &k);
        }
        MethodArg::Forman => {
            let f = forman(g, u, v)?;
            return CurvatureRecord::from_reference(g, u, v, "forman", None, &f);
        }
    };
    let result = kappa(g, u, v, choice, brute_budget)?;
    CurvatureRecord::from_result(g, &result)
}

fn run_curvature(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let g = load_graph(cfg)?;
    let edges = select_edges(&g, cfg)?;
    let records: Result<Vec<CurvatureRecord>> = pool(cfg.jobs).install(|| {
        edges
            .par_iter()
            .map(|&(u, v)| curvature_record(&g, u, v, cfg.method, cfg.brute_budget))
            .collect()
    });
    emit_curvature(&records?, cfg.format, out)?;
    Ok(EXIT_OK)
}

/// The exact routes must coincide wherever computed; the reference formula
/// columns are informational only.
fn exact_methods_agree(
    full: &crate::rational::Rational,
    reduced: &crate::rational::Rational,
    brute: Option<&crate::rational::Rational>,
    closed: Option<&crate::rational::Rational>,
) -> bool {
    full == reduced && brute.map_or(true, |b| b == full) && closed.map_or(true, |c| c == full)
}

/// Every applicable method on one edge; exact routes must agree.
fn compare_edge(
    g: &Graph,
    u: VertexId,
    v: VertexId,
    brute_budget: usize,
    graph_tag: Option<String>,
) -> Result<CompareRecord> {
    let full = wasserstein_full_lp(g, u, v)?;
    let reduced = wasserstein_reduced(g, u, v)?;
    let brute = match wasserstein_brute_force(g, u, v, brute_budget) {
        Ok(r) => Some(r.wasserstein),
        Err(Error::CoreTooLarge { .. }) => None,
        Err(e) => return Err(e),
    };
    let part = classify_core(g, u, v)?;
    let comps = components_of_r(g, &part);
    let closed = if closed_form_applicable(&comps) {
        let refined = refine_counts(&part, &comps, g);
        Some(rat(1) - kappa_closed_form(&part, &comps, &refined)?)
    } else {
        None
    };
    let bm_bipartite = match w_bm_bipartite(g, u, v) {
        Ok(w) => Some(w),
        Err(Error::HypothesisViolated { .. }) => None,
        Err(e) => return Err(e),
    };
    let bm_girth5 = match w_bm_girth5(g, u, v) {
        Ok(w) => Some(w),
        Err(Error::HypothesisViolated { .. }) => None,
        Err(e) => return Err(e),
    };
    let f = forman(g, u, v)?;

    let agree = exact_methods_agree(
        &full.wasserstein,
        &reduced.wasserstein,
        brute.as_ref(),
        closed.as_ref(),
    );

    Ok(CompareRecord {
        graph: graph_tag,
        edge: [g.label(u).to_string(), g.label(v).to_string()],
        full_lp: full.wasserstein.to_string(),
        reduced_lp: reduced.wasserstein.to_string(),
        brute_force: brute.map(|w| w.to_string()),
        closed_form: closed.map(|w| w.to_string()),
        bm_bipartite: bm_bipartite.map(|w| w.to_string()),
        bm_girth5: bm_girth5.map(|w| w.to_string()),
        forman: f.to_string(),
        agree,
    })
}

fn run_compare(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let records: Vec<CompareRecord> = match cfg.corpus_max {
        Some(max_n) => {
            if !(1..=8).contains(&max_n) {
                return Err(Error::BadParameter {
                    message: "corpus size must lie in 1..=8".into(),
                });
            }
            let graphs = crate::enumerate::connected_graphs_upto(max_n);
            let work: Vec<(usize, Graph)> = graphs
                .iter()
                .enumerate()
                .map(|(i, sg)| (i, sg.to_graph()))
                .collect();
            let nested: Result<Vec<Vec<CompareRecord>>> = pool(cfg.jobs).install(|| {
                work.par_iter()
                    .map(|(i, g)| {
                        let tag = format!("corpus[{i}]/n{}", g.vertex_count());
                        select_edges(g, &RunConfig::new(CommandKind::Compare))?
                            .into_iter()
                            .map(|(u, v)| {
                                compare_edge(g, u, v, cfg.brute_budget, Some(tag.clone()))
                            })
                            .collect()
                    })
                    .collect()
            });
            nested?.into_iter().flatten().collect()
        }
        None => {
            let g = load_graph(cfg)?;
            let edges = select_edges(&g, cfg)?;
            let collected: Result<Vec<CompareRecord>> = pool(cfg.jobs).install(|| {
                edges
                    .par_iter()
                    .map(|&(u, v)| compare_edge(&g, u, v, cfg.brute_budget, None))
                    .collect()
            });
            collected?
        }
    };

    emit_compare(&records, cfg.format, out)?;
    let disagreements: Vec<&CompareRecord> = records.iter().filter(|r| !r.agree).collect();
    if disagreements.is_empty() {
        Ok(EXIT_OK)
    } else {
        for r in &disagreements {
            writeln!(
                err,
                "disagreement on edge ({}, {}): full-lp {} reduced-lp {} brute {:?} closed {:?}",
                r.edge[0], r.edge[1], r.full_lp, r.reduced_lp, r.brute_force, r.closed_form
            )?;
        }
        Ok(EXIT_DISAGREE)
    }
}

fn run_partition(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    if cfg.format == OutputFormat::Csv {
        return Err(Error::BadParameter {
            message: "the partition command emits JSON only".into(),
        });
    }
    let g = load_graph(cfg)?;
    let edges = select_edges(&g, cfg)?;
    let records: Result<Vec<PartitionRecord>> = pool(cfg.jobs).install(|| {
        edges
            .par_iter()
            .map(|&(u, v)| PartitionRecord::build(&g, u, v))
            .collect()
    });
    emit_partitions(&records?, out)?;
    Ok(EXIT_OK)
}

fn run_counterexample(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let family = cfg.family.ok_or_else(|| Error::BadParameter {
        message: "counterexample needs --family".into(),
    })?;
    let parameter = cfg.parameter.ok_or_else(|| Error::BadParameter {
        message: "counterexample needs --param".into(),
    })?;
    let inst = build(family, parameter)?;
    let report = verify_refutation(&inst)?;
    serde_json::to_writer(&mut *out, &report).map_err(std::io::Error::from)?;
    writeln!(out)?;
    if let Some(path) = &cfg.emit_graph {
        std::fs::write(path, inst.graph.to_edge_list_text())?;
    }
    if report.all_checks_pass() {
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_DISAGREE)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_temp(name: &str, contents: &str) -> PathBuf {
        let path = std::env::temp_dir().join(format!("ollivier-test-{name}-{}", std::process::id()));
        std::fs::write(&path, contents).unwrap();
        path
    }

    fn run_to_string(cfg: &RunConfig) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(cfg, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn pentagon_edges_are_flat_via_auto() {
        let path = write_temp("c5", "a b\nb c\nc d\nd e\ne a\n");
        let mut cfg = RunConfig::new(CommandKind::Curvature);
        cfg.input = Some(path.clone());
        let (code, out, _) = run_to_string(&cfg);
        std::fs::remove_file(path).ok();
        assert_eq!(code, EXIT_OK);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 5);
        for line in lines {
            assert!(line.contains("\"kappa\":\"0\""), "{line}");
            assert!(line.contains("\"method\":\"closed-form\""));
        }
    }

    #[test]
    fn triangle_full_lp_records() {
        let path = write_temp("k3", "a b\nb c\nc a\n");
        let mut cfg = RunConfig::new(CommandKind::Curvature);
        cfg.input = Some(path.clone());
        cfg.method = MethodArg::FullLp;
        let (code, out, _) = run_to_string(&cfg);
        std::fs::remove_file(path).ok();
        assert_eq!(code, EXIT_OK);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 3);
        for line in lines {
            assert!(line.contains("\"kappa\":\"1/2\""), "{line}");
        }
    }

    #[test]
    fn unreadable_input_is_exit_two() {
        let mut cfg = RunConfig::new(CommandKind::Curvature);
        cfg.input = Some(PathBuf::from("/nonexistent/not-here.edges"));
        let (code, _, err) = run_to_string(&cfg);
        assert_eq!(code, EXIT_IO);
        assert!(err.contains("ollivier:"));
    }

    #[test]
    fn missing_edge_filter_is_exit_three() {
        let path = write_temp("filter", "a b\nb c\n");
        let mut cfg = RunConfig::new(CommandKind::Curvature);
        cfg.input = Some(path.clone());
        cfg.edge_filter = Some(("a".into(), "c".into()));
        let (code, _, _) = run_to_string(&cfg);
        std::fs::remove_file(path).ok();
        assert_eq!(code, EXIT_FILTER);
    }

    #[test]
    fn disagreement_detector_catches_an_off_by_one() {
        use crate::rational::{frac, rat};
        let w = rat(1);
        assert!(exact_methods_agree(&w, &w, Some(&w), Some(&w)));
        assert!(exact_methods_agree(&w, &w, None, None));
        // fault injection: one route off by a unit box bound's worth
        let off = frac(3, 2);
        assert!(!exact_methods_agree(&w, &off, None, None));
        assert!(!exact_methods_agree(&w, &w, Some(&off), None));
        assert!(!exact_methods_agree(&w, &w, None, Some(&off)));
    }

    #[test]
    fn compare_agrees_on_small_corpus() {
        let mut cfg = RunConfig::new(CommandKind::Compare);
        cfg.corpus_max = Some(5);
        let (code, out, err) = run_to_string(&cfg);
        assert_eq!(code, EXIT_OK, "{err}");
        assert!(out.lines().count() > 20);
        assert!(out.lines().all(|l| l.contains("\"agree\":true")));
    }

    #[test]
    fn counterexample_command_reports_refutation() {
        let mut cfg = RunConfig::new(CommandKind::Counterexample);
        cfg.family = Some(Family::Bipartite);
        cfg.parameter = Some(5);
        let (code, out, _) = run_to_string(&cfg);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("\"refuted\":true"));
        assert!(out.contains("\"w_bm\":\"1\""));
    }

    #[test]
    fn emitted_counterexample_graph_round_trips() {
        let out_path = std::env::temp_dir().join(format!("ollivier-ce-{}.edges", std::process::id()));
        let mut cfg = RunConfig::new(CommandKind::Counterexample);
        cfg.family = Some(Family::Girth5);
        cfg.parameter = Some(3);
        cfg.emit_graph = Some(out_path.clone());
        let (code, _, _) = run_to_string(&cfg);
        assert_eq!(code, EXIT_OK);
        let text = std::fs::read_to_string(&out_path).unwrap();
        std::fs::remove_file(&out_path).ok();
        let reloaded = Graph::parse_edge_list(&text).unwrap();
        let original = build(Family::Girth5, 3).unwrap().graph;
        assert_eq!(reloaded.vertex_count(), original.vertex_count());
        assert_eq!(reloaded.edge_count(), original.edge_count());
        let degrees = |g: &Graph| {
            let mut d: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
            d.sort_unstable();
            d
        };
        assert_eq!(degrees(&reloaded), degrees(&original));
    }

    #[test]
    fn jobs_do_not_change_output_bytes() {
        let path = write_temp("jobs", "a b\nb c\nc d\nd a\na c\n");
        let mut cfg = RunConfig::new(CommandKind::Curvature);
        cfg.input = Some(path.clone());
        let (c1, out1, _) = run_to_string(&cfg);
        cfg.jobs = 8;
        let (c8, out8, _) = run_to_string(&cfg);
        std::fs::remove_file(path).ok();
        assert_eq!(c1, EXIT_OK);
        assert_eq!(c8, EXIT_OK);
        assert_eq!(out1, out8);
    }
}
