//! Machine-readable records and their JSON-lines / CSV emitters.
//!
//! Rationals appear in output only in the canonical `p/q` string form; the
//! decimal field is a 12-significant-digit display convenience and never
//! authoritative.

use crate::curvature::CurvatureResult;
use crate::graph::{Graph, VertexId};
use crate::partition::{
    classify_core, components_of_r, refine_counts, CorePartition, RComponent, RefinedCounts,
};
use crate::rational::{decimal_12, Rational};
use crate::Result;
use serde::Serialize;
use std::io::Write;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountsRecord {
    pub triangle: usize,
    pub square_u: usize,
    pub square_v: usize,
    pub pentagon_u: usize,
    pub pentagon_v: usize,
    pub pentagon_uv: usize,
    pub fr_u: usize,
    pub fr_v: usize,
}

impl CountsRecord {
    fn from_partition(part: &CorePartition) -> Self {
        CountsRecord {
            triangle: part.triangle_count(),
            square_u: part.square_u_count(),
            square_v: part.square_v_count(),
            pentagon_u: part.pentagon_u_count(),
            pentagon_v: part.pentagon_v_count(),
            pentagon_uv: part.pentagon_uv.len(),
            fr_u: part.fr_u_count(),
            fr_v: part.fr_v_count(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentRecord {
    pub w0: String,
    pub wminus: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BreakdownRecord {
    #[serde(rename = "W_plus")]
    pub w_plus: String,
    #[serde(rename = "W_zero")]
    pub w_zero: String,
    #[serde(rename = "W_minus")]
    pub w_minus: String,
    pub components: Vec<ComponentRecord>,
}

/// One curvature output line.
#[derive(Clone, Debug, Serialize)]
pub struct CurvatureRecord {
    pub edge: [String; 2],
    pub d_u: usize,
    pub d_v: usize,
    pub counts: CountsRecord,
    /// Absent for methods that do not produce a Wasserstein distance.
    #[serde(rename = "W")]
    pub w: Option<String>,
    pub kappa: String,
    pub kappa_decimal: f64,
    pub method: String,
    pub breakdown: Option<BreakdownRecord>,
}

impl CurvatureRecord {
    pub fn from_result(g: &Graph, r: &CurvatureResult) -> Result<Self> {
        let part = classify_core(g, r.u, r.v)?;
        let breakdown = r.breakdown.as_ref().map(|b| BreakdownRecord {
            w_plus: b.w_plus.to_string(),
            w_zero: b.w_zero.to_string(),
            w_minus: b.w_minus.to_string(),
            components: b
                .components
                .iter()
                .map(|c| ComponentRecord {
                    w0: c.w0.to_string(),
                    wminus: c.wminus.to_string(),
                })
                .collect(),
        });
        Ok(CurvatureRecord {
            edge: [g.label(r.u).to_string(), g.label(r.v).to_string()],
            d_u: g.degree(r.u),
            d_v: g.degree(r.v),
            counts: CountsRecord::from_partition(&part),
            w: Some(r.wasserstein.to_string()),
            kappa: r.kappa.to_string(),
            kappa_decimal: decimal_12(&r.kappa),
            method: r.method.as_str().to_string(),
            breakdown,
        })
    }

    /// Record for the reference formulas: the refuted closed forms report
    /// their claimed `W` (and `1 - W` as kappa), the Forman curvature has no
    /// Wasserstein distance at all and fills only the kappa column.
    pub fn from_reference(
        g: &Graph,
        u: VertexId,
        v: VertexId,
        method: &str,
        w: Option<&Rational>,
        kappa: &Rational,
    ) -> Result<Self> {
        let part = classify_core(g, u, v)?;
        Ok(CurvatureRecord {
            edge: [g.label(u).to_string(), g.label(v).to_string()],
            d_u: g.degree(u),
            d_v: g.degree(v),
            counts: CountsRecord::from_partition(&part),
            w: w.map(|x| x.to_string()),
            kappa: kappa.to_string(),
            kappa_decimal: decimal_12(kappa),
            method: method.to_string(),
            breakdown: None,
        })
    }
}

/// One method-agreement line emitted by the compare command.
#[derive(Clone, Debug, Serialize)]
pub struct CompareRecord {
    /// Identifies the corpus graph in corpus mode; absent for file input.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
    pub edge: [String; 2],
    pub full_lp: String,
    pub reduced_lp: String,
    pub brute_force: Option<String>,
    pub closed_form: Option<String>,
    pub bm_bipartite: Option<String>,
    pub bm_girth5: Option<String>,
    pub forman: String,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentClassesRecord {
    pub triangle: Vec<String>,
    pub square_u: Vec<String>,
    pub square_v: Vec<String>,
    pub pentagon_u: Vec<String>,
    pub pentagon_v: Vec<String>,
    pub pentagon_uv: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RefinedRecord {
    pub sq_tri_u: usize,
    pub sq_tri_v: usize,
    pub sq_circ_u: usize,
    pub sq_circ_v: usize,
    pub pent_circ_u: usize,
    pub pent_circ_v: usize,
}

/// Serialized core partition of one edge.
#[derive(Clone, Debug, Serialize)]
pub struct PartitionRecord {
    pub edge: [String; 2],
    pub triangle: Vec<String>,
    pub square_u: Vec<String>,
    pub square_v: Vec<String>,
    pub pentagon_u: Vec<String>,
    pub pentagon_v: Vec<String>,
    pub pentagon_uv: Vec<String>,
    pub fr_u: Vec<String>,
    pub fr_v: Vec<String>,
    pub components: Vec<ComponentClassesRecord>,
    pub refined: RefinedRecord,
}

impl PartitionRecord {
    pub fn build(g: &Graph, u: VertexId, v: VertexId) -> Result<Self> {
        let part = classify_core(g, u, v)?;
        let comps = components_of_r(g, &part);
        let refined = refine_counts(&part, &comps, g);
        let names = |set: &[VertexId]| -> Vec<String> {
            set.iter().map(|&w| g.label(w).to_string()).collect()
        };
        let comp_record = |c: &RComponent| ComponentClassesRecord {
            triangle: names(&c.triangle),
            square_u: names(&c.square_u),
            square_v: names(&c.square_v),
            pentagon_u: names(&c.pentagon_u),
            pentagon_v: names(&c.pentagon_v),
            pentagon_uv: names(&c.pentagon_uv),
        };
        Ok(PartitionRecord {
            edge: [g.label(u).to_string(), g.label(v).to_string()],
            triangle: names(&part.triangle),
            square_u: names(&part.square_u),
            square_v: names(&part.square_v),
            pentagon_u: names(&part.pentagon_u),
            pentagon_v: names(&part.pentagon_v),
            pentagon_uv: names(&part.pentagon_uv),
            fr_u: names(&part.fr_u),
            fr_v: names(&part.fr_v),
            components: comps.iter().map(comp_record).collect(),
            refined: refined_record(&refined),
        })
    }
}

fn refined_record(r: &RefinedCounts) -> RefinedRecord {
    RefinedRecord {
        sq_tri_u: r.sq_tri_u,
        sq_tri_v: r.sq_tri_v,
        sq_circ_u: r.sq_circ_u,
        sq_circ_v: r.sq_circ_v,
        pent_circ_u: r.pent_circ_u,
        pent_circ_v: r.pent_circ_v,
    }
}

fn opt(s: &Option<String>) -> &str {
    s.as_deref().unwrap_or("")
}

/// JSON-lines or CSV emission of curvature records.
pub fn emit_curvature(
    records: &[CurvatureRecord],
    format: OutputFormat,
    out: &mut dyn Write,
) -> std::io::Result<()> {
    match format {
        OutputFormat::Json => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                writeln!(out)?;
            }
        }
        OutputFormat::Csv => {
            writeln!(out, "edge_u,edge_v,W,kappa,method,W_plus,W_zero,W_minus")?;
            for r in records {
                let (wp, wz, wm) = match &r.breakdown {
                    Some(b) => (b.w_plus.as_str(), b.w_zero.as_str(), b.w_minus.as_str()),
                    None => ("", "", ""),
                };
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    r.edge[0],
                    r.edge[1],
                    opt(&r.w),
                    r.kappa,
                    r.method,
                    wp,
                    wz,
                    wm
                )?;
            }
        }
    }
    Ok(())
}

/// JSON-lines or CSV emission of compare records.
pub fn emit_compare(
    records: &[CompareRecord],
    format: OutputFormat,
    out: &mut dyn Write,
) -> std::io::Result<()> {
    match format {
        OutputFormat::Json => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                writeln!(out)?;
            }
        }
        OutputFormat::Csv => {
            writeln!(
                out,
                "edge_u,edge_v,full_lp,reduced_lp,brute_force,closed_form,bm_bipartite,bm_girth5,forman,agree"
            )?;
            for r in records {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{}",
                    r.edge[0],
                    r.edge[1],
                    r.full_lp,
                    r.reduced_lp,
                    opt(&r.brute_force),
                    opt(&r.closed_form),
                    opt(&r.bm_bipartite),
                    opt(&r.bm_girth5),
                    r.forman,
                    r.agree
                )?;
            }
        }
    }
    Ok(())
}

pub fn emit_partitions(records: &[PartitionRecord], out: &mut dyn Write) -> std::io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut *out, r)?;
        writeln!(out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::{wasserstein_full_lp, MethodChoice};
    use crate::graph::graph_from_pairs;
    use crate::rational::frac;

    #[test]
    fn csv_line_for_a_single_edge() {
        let g = graph_from_pairs(&[("a", "b")]);
        let u = g.vertex_by_label("a").unwrap();
        let v = g.vertex_by_label("b").unwrap();
        let r = wasserstein_full_lp(&g, u, v).unwrap();
        let rec = CurvatureRecord::from_result(&g, &r).unwrap();
        let mut out = Vec::new();
        emit_curvature(&[rec], OutputFormat::Csv, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "edge_u,edge_v,W,kappa,method,W_plus,W_zero,W_minus"
        );
        let line = lines.next().unwrap();
        assert!(line.starts_with("a,b,1,0,full-lp,1,"), "{line}");
    }

    #[test]
    fn empty_record_set_emits_header_only() {
        let mut out = Vec::new();
        emit_curvature(&[], OutputFormat::Csv, &mut out).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "edge_u,edge_v,W,kappa,method,W_plus,W_zero,W_minus\n"
        );
        let mut out = Vec::new();
        emit_curvature(&[], OutputFormat::Json, &mut out).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn rational_fields_are_reduced() {
        assert_eq!(frac(39, 24).to_string(), "13/8");
    }

    #[test]
    fn json_record_field_order_follows_the_schema() {
        let g = graph_from_pairs(&[("a", "b"), ("b", "c"), ("c", "a")]);
        let u = g.vertex_by_label("a").unwrap();
        let v = g.vertex_by_label("b").unwrap();
        let r = crate::curvature::kappa(&g, u, v, MethodChoice::Auto, 12).unwrap();
        let rec = CurvatureRecord::from_result(&g, &r).unwrap();
        let json = serde_json::to_string(&rec).unwrap();
        let keys = ["edge", "d_u", "d_v", "counts", "W", "kappa", "kappa_decimal", "method"];
        let mut last = 0;
        for k in keys {
            let pos = json.find(&format!("\"{k}\"")).expect(k);
            assert!(pos > last || last == 0, "field {k} out of order in {json}");
            last = pos;
        }
        assert!(json.contains("\"kappa\":\"1/2\""));
    }

    #[test]
    fn partition_record_on_c5() {
        let g = crate::graph::cycle_graph(5);
        let u = g.vertex_by_label("c0").unwrap();
        let v = g.vertex_by_label("c1").unwrap();
        let rec = PartitionRecord::build(&g, u, v).unwrap();
        assert_eq!(rec.pentagon_u, vec!["c4"]);
        assert_eq!(rec.pentagon_v, vec!["c2"]);
        assert_eq!(rec.pentagon_uv, vec!["c3"]);
        assert_eq!(rec.components.len(), 1);
        assert_eq!(rec.refined.pent_circ_u, 1);
        let json = serde_json::to_string(&rec).unwrap();
        assert!(json.contains("\"components\""));
        assert!(json.contains("\"refined\""));
    }
}
