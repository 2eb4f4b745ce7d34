//! Report documents: JSON-serializable views of catalogs, classifications,
//! rankings, stability cells, diagnostics, and audits, plus plain-text
//! renderings. Rationals are emitted as canonical `p/q` strings alongside
//! informational 12-digit decimals.

use serde::{Deserialize, Serialize};

use crate::consistency::CatalogAnalysis;
use crate::core::dataset::Dataset;
use crate::core::grid::{BinGrid, Shape};
use crate::core::polygon::Point;
use crate::core::scalar::Scalar;
use crate::diagnostics::{
    is_exactly_symmetric, mode_inversion_report, reversal_coverage, reversal_pairs,
    unpaired_shapes, AuditVerdict,
};
use crate::error::Result;
use crate::levelset::Catalog;
use crate::selection::{
    data_moment, grouped_moment, ExactMomentGrid, MlEntry, StabilityReport,
};
use crate::Error;

/// A rational as its canonical `p/q` string plus a 12-significant-digit
/// decimal. The ratio is authoritative; the decimal is informational.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RatJson {
    pub ratio: String,
    pub decimal: String,
}

impl RatJson {
    pub fn of(s: &Scalar) -> RatJson {
        RatJson {
            ratio: s.ratio_string(),
            decimal: s.decimal_string(),
        }
    }

    pub fn to_scalar(&self) -> Result<Scalar> {
        Scalar::parse(&self.ratio)
    }
}

fn point_json(p: &Point) -> [RatJson; 2] {
    [RatJson::of(&p.t0), RatJson::of(&p.h)]
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct LevelSetDoc {
    #[serde(rename = "K_s")]
    pub k_s: usize,
    pub counts: Vec<u32>,
    #[serde(rename = "V_s")]
    pub v_s: usize,
    pub vertices: Vec<[RatJson; 2]>,
    pub h_min: RatJson,
    pub h_max: RatJson,
    pub centroid: [RatJson; 2],
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct CatalogDoc {
    pub dataset_digest: String,
    pub n: usize,
    pub max_bins: u32,
    pub mode: String,
    pub delta: RatJson,
    pub shape_count: usize,
    pub domain: Vec<[RatJson; 2]>,
    pub level_sets: Vec<LevelSetDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub merge_anomalies: Vec<Vec<u32>>,
}

impl CatalogDoc {
    pub fn from_catalog(c: &Catalog) -> CatalogDoc {
        CatalogDoc {
            dataset_digest: c.digest().to_string(),
            n: c.n(),
            max_bins: c.k(),
            mode: c.mode().label(c.k()),
            delta: RatJson::of(&c.domain().delta),
            shape_count: c.len(),
            domain: c.domain().vertices().iter().map(point_json).collect(),
            level_sets: c
                .sets()
                .iter()
                .map(|ls| LevelSetDoc {
                    k_s: ls.shape().num_bins(),
                    counts: ls.shape().counts().to_vec(),
                    v_s: ls.vertices().len(),
                    vertices: ls.vertices().iter().map(point_json).collect(),
                    h_min: RatJson::of(ls.h_min()),
                    h_max: RatJson::of(ls.h_max()),
                    centroid: point_json(ls.centroid()),
                })
                .collect(),
            merge_anomalies: c
                .merge_anomalies()
                .iter()
                .map(|s| s.counts().to_vec())
                .collect(),
        }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ShapeReportDoc {
    pub counts: Vec<u32>,
    pub class: String,
    pub mean_consistent: bool,
    pub variance_consistent: bool,
    pub variance_form: String,
    pub h_mom: Option<f64>,
    pub t0_mom: Option<f64>,
    pub grid_valid: bool,
    pub recomputed: Option<Vec<u32>>,
    #[serde(rename = "FPS_g")]
    pub fps_g: Option<f64>,
    #[serde(rename = "FPAS_g")]
    pub fpas_g: Option<f64>,
    pub signed_rank: Option<i64>,
    pub rank_tied: bool,
    #[serde(rename = "in_T")]
    pub in_t: bool,
    #[serde(rename = "in_F")]
    pub in_f: bool,
    #[serde(rename = "in_T_and_Jg")]
    pub in_t_and_jg: bool,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct TalliesDoc {
    pub joint: usize,
    pub individual_both: usize,
    pub mean_only: usize,
    pub variance_only: usize,
    pub neither: usize,
    pub mean_or_variance: usize,
    pub total: usize,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ClassifyDoc {
    pub dataset_digest: String,
    pub max_bins: u32,
    pub flavor: String,
    #[serde(rename = "FPS_x")]
    pub fps_x: f64,
    #[serde(rename = "FPAS_x")]
    pub fpas_x: Option<f64>,
    pub t_band: i64,
    pub f_band: i64,
    pub tallies: TalliesDoc,
    pub shapes: Vec<ShapeReportDoc>,
}

impl ClassifyDoc {
    pub fn from_analysis(c: &Catalog, a: &CatalogAnalysis) -> ClassifyDoc {
        let shapes = a
            .entries
            .iter()
            .map(|e| {
                let sol = &e.classification.solution;
                ShapeReportDoc {
                    counts: e.classification.shape.counts().to_vec(),
                    class: e.classification.class.label().to_string(),
                    mean_consistent: e.classification.mean_consistent,
                    variance_consistent: e.classification.variance_consistent,
                    variance_form: sol.variance_form.label().to_string(),
                    h_mom: Some(sol.h_mom),
                    t0_mom: Some(sol.t0_mom),
                    grid_valid: sol.grid_valid,
                    recomputed: sol.recomputed.as_ref().map(|s| s.counts().to_vec()),
                    fps_g: e.skew.fps,
                    fpas_g: e.skew.fpas,
                    signed_rank: e.skew.rank,
                    rank_tied: e.skew.tied,
                    in_t: e.skew.in_t,
                    in_f: e.skew.in_f,
                    in_t_and_jg: e.in_t_and_joint,
                }
            })
            .collect();
        ClassifyDoc {
            dataset_digest: c.digest().to_string(),
            max_bins: c.k(),
            flavor: match a.flavor {
                crate::moments::VarianceFlavor::Frequency => "frequency".into(),
                crate::moments::VarianceFlavor::Density => "density".into(),
            },
            fps_x: a.fps_x,
            fpas_x: a.fpas_x,
            t_band: a.t_band,
            f_band: a.f_band,
            tallies: TalliesDoc {
                joint: a.tallies.joint,
                individual_both: a.tallies.individual_both,
                mean_only: a.tallies.mean_only,
                variance_only: a.tallies.variance_only,
                neither: a.tallies.neither,
                mean_or_variance: a.tallies.mean_or_variance(),
                total: a.tallies.total(),
            },
            shapes,
        }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct SkewRankDoc {
    pub counts: Vec<u32>,
    #[serde(rename = "FPS_g")]
    pub fps_g: Option<f64>,
    pub signed_rank: Option<i64>,
    pub tied: bool,
    #[serde(rename = "in_T")]
    pub in_t: bool,
    #[serde(rename = "in_F")]
    pub in_f: bool,
    #[serde(rename = "in_T_and_Jg")]
    pub in_t_and_jg: bool,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct MlRankDoc {
    pub counts: Vec<u32>,
    pub h_min: RatJson,
    pub h_min_attained: bool,
    pub log_likelihood: f64,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct RankDoc {
    pub dataset_digest: String,
    pub max_bins: u32,
    #[serde(rename = "FPS_x")]
    pub fps_x: f64,
    pub t_band: i64,
    pub f_band: i64,
    /// Skewness ranking: above-data ranks ascending, then below-data,
    /// then unranked shapes.
    pub skewness: Vec<SkewRankDoc>,
    /// Maximum-likelihood ranking, best first.
    pub max_likelihood: Vec<MlRankDoc>,
}

impl RankDoc {
    pub fn build(c: &Catalog, a: &CatalogAnalysis, ml: &[MlEntry]) -> RankDoc {
        let mut skew: Vec<SkewRankDoc> = a
            .entries
            .iter()
            .map(|e| SkewRankDoc {
                counts: e.classification.shape.counts().to_vec(),
                fps_g: e.skew.fps,
                signed_rank: e.skew.rank,
                tied: e.skew.tied,
                in_t: e.skew.in_t,
                in_f: e.skew.in_f,
                in_t_and_jg: e.in_t_and_joint,
            })
            .collect();
        skew.sort_by_key(|doc| match doc.signed_rank {
            Some(r) if r > 0 => (0, r),
            Some(r) => (1, -r),
            None => (2, 0),
        });
        RankDoc {
            dataset_digest: c.digest().to_string(),
            max_bins: c.k(),
            fps_x: a.fps_x,
            t_band: a.t_band,
            f_band: a.f_band,
            skewness: skew,
            max_likelihood: ml
                .iter()
                .map(|e| MlRankDoc {
                    counts: e.shape.counts().to_vec(),
                    h_min: RatJson::of(&e.h_min),
                    h_min_attained: e.h_min_attained,
                    log_likelihood: e.score,
                })
                .collect(),
        }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct StabilityCellDoc {
    pub h_lo: RatJson,
    pub h_hi: RatJson,
    pub shapes: Vec<Vec<u32>>,
    pub count: usize,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct StabilityDoc {
    pub dataset_digest: String,
    pub max_bins: u32,
    pub cells: Vec<StabilityCellDoc>,
    pub most_stable: Vec<StabilityCellDoc>,
}

impl StabilityDoc {
    pub fn build(c: &Catalog, report: &StabilityReport) -> StabilityDoc {
        let cell_doc = |cell: &crate::selection::StabilityCell| StabilityCellDoc {
            h_lo: RatJson::of(&cell.h_lo),
            h_hi: RatJson::of(&cell.h_hi),
            shapes: cell.shapes.iter().map(|s| s.counts().to_vec()).collect(),
            count: cell.count(),
        };
        StabilityDoc {
            dataset_digest: c.digest().to_string(),
            max_bins: c.k(),
            cells: report.cells.iter().map(cell_doc).collect(),
            most_stable: report
                .most_stable
                .iter()
                .map(|&i| cell_doc(&report.cells[i]))
                .collect(),
        }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ReversalPairDoc {
    pub shape: Vec<u32>,
    pub reversed: Vec<u32>,
    pub witness: [RatJson; 2],
    pub witness_reversed: [RatJson; 2],
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ModeInversionDoc {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub witness_a: [RatJson; 2],
    pub witness_b: [RatJson; 2],
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ReversalsDoc {
    pub dataset_digest: String,
    pub max_bins: u32,
    pub exactly_symmetric: bool,
    pub full_reversal_coverage: bool,
    pub pairs: Vec<ReversalPairDoc>,
    pub unpaired: Vec<Vec<u32>>,
    pub mode_inversions: Vec<ModeInversionDoc>,
}

impl ReversalsDoc {
    pub fn build(d: &Dataset, c: &Catalog) -> ReversalsDoc {
        ReversalsDoc {
            dataset_digest: c.digest().to_string(),
            max_bins: c.k(),
            exactly_symmetric: is_exactly_symmetric(d),
            full_reversal_coverage: reversal_coverage(c),
            pairs: reversal_pairs(c)
                .iter()
                .map(|p| ReversalPairDoc {
                    shape: p.shape.counts().to_vec(),
                    reversed: p.reversed.counts().to_vec(),
                    witness: point_json(&p.witness),
                    witness_reversed: point_json(&p.witness_reversed),
                })
                .collect(),
            unpaired: unpaired_shapes(c)
                .iter()
                .map(|s| s.counts().to_vec())
                .collect(),
            mode_inversions: mode_inversion_report(c)
                .iter()
                .map(|p| ModeInversionDoc {
                    a: p.a.counts().to_vec(),
                    b: p.b.counts().to_vec(),
                    witness_a: point_json(&p.witness_a),
                    witness_b: point_json(&p.witness_b),
                })
                .collect(),
        }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct MomentRowDoc {
    pub order: u32,
    pub data: RatJson,
    pub grouped: RatJson,
    pub exact_match: bool,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct DotplotDoc {
    pub dataset_digest: String,
    pub m: u32,
    /// Least common multiple of the data-value denominators.
    pub lcm_denominator: String,
    pub h: RatJson,
    pub t0: RatJson,
    pub bins: u32,
    pub moments: Vec<MomentRowDoc>,
    /// Density variance minus data variance; equals h²/12 exactly.
    pub density_variance_offset: RatJson,
    pub offset_is_h2_over_12: bool,
}

impl DotplotDoc {
    pub fn build(d: &Dataset, eg: &ExactMomentGrid, max_order: u32) -> Result<DotplotDoc> {
        let mut moments = Vec::new();
        for order in 1..=max_order {
            let dm = data_moment(d, order);
            let gm = grouped_moment(d, &eg.grid, order)?;
            moments.push(MomentRowDoc {
                order,
                exact_match: dm == gm,
                data: RatJson::of(&dm),
                grouped: RatJson::of(&gm),
            });
        }
        let shape = crate::core::grid::bin_counts(d, &eg.grid)?;
        let sv = crate::moments::sample_moments(d)?.variance;
        let dv = crate::moments::grouped_variance(
            &eg.grid,
            &shape,
            crate::moments::VarianceFlavor::Density,
        )?;
        let offset = dv - sv;
        let h2_12 = &eg.grid.h * &eg.grid.h / Scalar::from_int(12);
        Ok(DotplotDoc {
            dataset_digest: d.digest(),
            m: eg.m,
            lcm_denominator: eg.q.to_string(),
            h: RatJson::of(&eg.grid.h),
            t0: RatJson::of(&eg.grid.t0),
            bins: eg.grid.k,
            moments,
            offset_is_h2_over_12: offset == h2_12,
            density_variance_offset: RatJson::of(&offset),
        })
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct AuditDoc {
    pub dataset_digest: String,
    pub t0: RatJson,
    pub h: RatJson,
    pub max_bins: u32,
    pub counts: Vec<u32>,
    #[serde(rename = "FPS_g")]
    pub fps_g: Option<f64>,
    #[serde(rename = "FPS_x")]
    pub fps_x: f64,
    pub sign_conflict: bool,
    pub class: Option<String>,
    pub suggested: Option<SuggestedDoc>,
    pub edge_collisions: Vec<EdgeCollisionDoc>,
    pub edge_collision_free: bool,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct SuggestedDoc {
    pub counts: Vec<u32>,
    #[serde(rename = "FPS_g")]
    pub fps_g: f64,
    pub in_t_band: bool,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct EdgeCollisionDoc {
    pub value: RatJson,
    pub edge_index: u32,
}

impl AuditDoc {
    pub fn build(d: &Dataset, v: &AuditVerdict) -> AuditDoc {
        AuditDoc {
            dataset_digest: d.digest(),
            t0: RatJson::of(&v.grid.t0),
            h: RatJson::of(&v.grid.h),
            max_bins: v.grid.k,
            counts: v.shape.counts().to_vec(),
            fps_g: v.fps_g,
            fps_x: v.fps_x,
            sign_conflict: v.sign_conflict,
            class: v.class.map(|c| c.label().to_string()),
            suggested: v.suggested.as_ref().map(|s| SuggestedDoc {
                counts: s.shape.counts().to_vec(),
                fps_g: s.fps_g,
                in_t_band: s.in_t_band,
            }),
            edge_collision_free: v.edge_collisions.is_empty(),
            edge_collisions: v
                .edge_collisions
                .iter()
                .map(|(value, k)| EdgeCollisionDoc {
                    value: RatJson::of(value),
                    edge_index: *k,
                })
                .collect(),
        }
    }
}

/// Serializes any report document deterministically (pretty, stable field
/// order) with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(doc)
        .map_err(|e| Error::invalid_config(format!("serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn counts_label(counts: &[u32]) -> String {
    let inner: Vec<String> = counts.iter().map(|v| v.to_string()).collect();
    format!("({})", inner.join(","))
}

fn fmt_opt_f64(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.6}"))
}

/// Plain-text catalog listing.
pub fn catalog_text(doc: &CatalogDoc) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "catalog: n={} max-bins={} mode={} shapes={}\n",
        doc.n, doc.max_bins, doc.mode, doc.shape_count
    ));
    out.push_str(&format!(
        "domain vertices: {}\n",
        doc.domain
            .iter()
            .map(|p| format!("({}, {})", p[0].ratio, p[1].ratio))
            .collect::<Vec<_>>()
            .join(" ")
    ));
    out.push_str(&format!(
        "{:<16} {:>4} {:>10} {:>10}  vertices\n",
        "shape", "V_s", "h_min", "h_max"
    ));
    for ls in &doc.level_sets {
        out.push_str(&format!(
            "{:<16} {:>4} {:>10} {:>10}  {}\n",
            counts_label(&ls.counts),
            ls.v_s,
            ls.h_min.ratio,
            ls.h_max.ratio,
            ls.vertices
                .iter()
                .map(|p| format!("({}, {})", p[0].ratio, p[1].ratio))
                .collect::<Vec<_>>()
                .join(" ")
        ));
    }
    out
}

pub fn classify_text(doc: &ClassifyDoc) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "classification: max-bins={} flavor={} FPS_x={:.6}\n",
        doc.max_bins, doc.flavor, doc.fps_x
    ));
    out.push_str(&format!(
        "tallies: joint={} individual-both={} mean-only={} variance-only={} neither={} (M∪V={} of {})\n",
        doc.tallies.joint,
        doc.tallies.individual_both,
        doc.tallies.mean_only,
        doc.tallies.variance_only,
        doc.tallies.neither,
        doc.tallies.mean_or_variance,
        doc.tallies.total
    ));
    out.push_str(&format!(
        "{:<16} {:<16} {:>10} {:>10} {:<14} {:>10} {:>6} {:>5} {:>5} {:>6}\n",
        "shape", "class", "h_mom", "t0_mom", "recomputed", "FPS_g", "rank", "T", "F", "T∩Jg"
    ));
    for s in &doc.shapes {
        out.push_str(&format!(
            "{:<16} {:<16} {:>10} {:>10} {:<14} {:>10} {:>6} {:>5} {:>5} {:>6}\n",
            counts_label(&s.counts),
            s.class,
            s.h_mom.map_or("-".into(), |v| format!("{v:.4}")),
            s.t0_mom.map_or("-".into(), |v| format!("{v:.4}")),
            s.recomputed
                .as_ref()
                .map_or("-".into(), |c| counts_label(c)),
            s.fps_g.map_or("-".into(), |v| format!("{v:.4}")),
            s.signed_rank.map_or("-".into(), |r| r.to_string()),
            if s.in_t { "yes" } else { "" },
            if s.in_f { "yes" } else { "" },
            if s.in_t_and_jg { "yes" } else { "" },
        ));
    }
    out
}

pub fn rank_text(doc: &RankDoc) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "skewness ranking: FPS_x={:.6} bands ±{} (T) ±{} (F)\n",
        doc.fps_x, doc.t_band, doc.f_band
    ));
    out.push_str(&format!("{:<16} {:>10} {:>6} {:>5} {:>5}\n", "shape", "FPS_g", "rank", "T", "F"));
    for s in &doc.skewness {
        out.push_str(&format!(
            "{:<16} {:>10} {:>6} {:>5} {:>5}\n",
            counts_label(&s.counts),
            fmt_opt_f64(s.fps_g),
            s.signed_rank
                .map_or("-".into(), |r| if s.tied { format!("{r}=") } else { r.to_string() }),
            if s.in_t { "yes" } else { "" },
            if s.in_f { "yes" } else { "" },
        ));
    }
    out.push_str("\nmaximum-likelihood ranking (best first):\n");
    out.push_str(&format!(
        "{:<16} {:>10} {:>9} {:>14}\n",
        "shape", "h_min", "attained", "log-likelihood"
    ));
    for e in &doc.max_likelihood {
        out.push_str(&format!(
            "{:<16} {:>10} {:>9} {:>14.6}\n",
            counts_label(&e.counts),
            e.h_min.ratio,
            if e.h_min_attained { "yes" } else { "open" },
            e.log_likelihood
        ));
    }
    out
}

pub fn stability_text(doc: &StabilityDoc) -> String {
    let mut out = String::new();
    out.push_str(&format!("stability cells: max-bins={}\n", doc.max_bins));
    out.push_str(&format!("{:<32} {:>6}  shapes\n", "width interval", "count"));
    for c in &doc.cells {
        out.push_str(&format!(
            "{:<32} {:>6}  {}\n",
            format!("({}, {})", c.h_lo.decimal, c.h_hi.decimal),
            c.count,
            c.shapes
                .iter()
                .map(|s| counts_label(s))
                .collect::<Vec<_>>()
                .join(" ")
        ));
    }
    out.push_str("most stable width interval(s): ");
    out.push_str(
        &doc.most_stable
            .iter()
            .map(|c| format!("({}, {})", c.h_lo.decimal, c.h_hi.decimal))
            .collect::<Vec<_>>()
            .join(" "),
    );
    out.push('\n');
    out
}

pub fn reversals_text(doc: &ReversalsDoc) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "exactly symmetric: {}\nfull reversal coverage: {}\n",
        doc.exactly_symmetric, doc.full_reversal_coverage
    ));
    out.push_str(&format!("reversal pairs ({}):\n", doc.pairs.len()));
    for p in &doc.pairs {
        out.push_str(&format!(
            "  {} <-> {}  witnesses ({}, {}) / ({}, {})\n",
            counts_label(&p.shape),
            counts_label(&p.reversed),
            p.witness[0].decimal,
            p.witness[1].decimal,
            p.witness_reversed[0].decimal,
            p.witness_reversed[1].decimal,
        ));
    }
    if !doc.unpaired.is_empty() {
        out.push_str(&format!(
            "shapes without attainable reversal ({}): {}\n",
            doc.unpaired.len(),
            doc.unpaired
                .iter()
                .map(|s| counts_label(s))
                .collect::<Vec<_>>()
                .join(" ")
        ));
    }
    out.push_str(&format!("mode inversions ({}):\n", doc.mode_inversions.len()));
    for p in &doc.mode_inversions {
        out.push_str(&format!(
            "  {} vs {}\n",
            counts_label(&p.a),
            counts_label(&p.b)
        ));
    }
    out
}

pub fn dotplot_text(doc: &DotplotDoc) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "exact-moment grid: m={} Q={} h={} t0={} bins={}\n",
        doc.m, doc.lcm_denominator, doc.h.ratio, doc.t0.ratio, doc.bins
    ));
    out.push_str(&format!("{:>5} {:>24} {:>24} {:>6}\n", "order", "data", "grouped", "exact"));
    for m in &doc.moments {
        out.push_str(&format!(
            "{:>5} {:>24} {:>24} {:>6}\n",
            m.order,
            m.data.decimal,
            m.grouped.decimal,
            if m.exact_match { "yes" } else { "NO" }
        ));
    }
    out.push_str(&format!(
        "density variance - data variance = {} (= h²/12: {})\n",
        doc.density_variance_offset.ratio,
        if doc.offset_is_h2_over_12 { "yes" } else { "NO" }
    ));
    out
}

pub fn audit_text(doc: &AuditDoc) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "audit: t0={} h={} max-bins={}\n",
        doc.t0.ratio, doc.h.ratio, doc.max_bins
    ));
    out.push_str(&format!("counts: {}\n", counts_label(&doc.counts)));
    out.push_str(&format!(
        "FPS_g={}  FPS_x={:.6}  sign conflict: {}\n",
        fmt_opt_f64(doc.fps_g),
        doc.fps_x,
        doc.sign_conflict
    ));
    out.push_str(&format!(
        "consistency class: {}\n",
        doc.class.as_deref().unwrap_or("outside catalog")
    ));
    match &doc.suggested {
        Some(s) => out.push_str(&format!(
            "suggested jointly consistent alternative: {} (FPS_g={:.6}{})\n",
            counts_label(&s.counts),
            s.fps_g,
            if s.in_t_band { ", in T band" } else { "" }
        )),
        None => out.push_str("suggested jointly consistent alternative: none\n"),
    }
    out.push_str(&format!(
        "edge collisions: {}\n",
        if doc.edge_collision_free {
            "none".to_string()
        } else {
            doc.edge_collisions
                .iter()
                .map(|c| format!("{}@edge{}", c.value.ratio, c.edge_index))
                .collect::<Vec<_>>()
                .join(" ")
        }
    ));
    out
}

/// Reconstructs exact vertices from a parsed catalog document and checks
/// them against an in-memory catalog.
pub fn catalog_doc_matches(doc: &CatalogDoc, c: &Catalog) -> Result<bool> {
    if doc.shape_count != c.len() || doc.n != c.n() || doc.max_bins != c.k() {
        return Ok(false);
    }
    for (ls_doc, ls) in doc.level_sets.iter().zip(c.sets()) {
        let shape = Shape::new(ls_doc.counts.clone())?;
        if &shape != ls.shape() {
            return Ok(false);
        }
        if ls_doc.vertices.len() != ls.vertices().len() {
            return Ok(false);
        }
        for (vd, v) in ls_doc.vertices.iter().zip(ls.vertices()) {
            if vd[0].to_scalar()? != v.t0 || vd[1].to_scalar()? != v.h {
                return Ok(false);
            }
        }
        if ls_doc.h_min.to_scalar()? != *ls.h_min() || ls_doc.h_max.to_scalar()? != *ls.h_max() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Audit entry point taking raw parameter strings (decimal or `p/q`).
pub fn audit_from_strings(
    d: &Dataset,
    t0: &str,
    h: &str,
    k: u32,
    flavor: crate::consistency::Flavor,
) -> Result<AuditDoc> {
    let t0 = Scalar::parse(t0)?;
    let h = Scalar::parse(h)?;
    let grid = BinGrid::new(t0, h, k)?;
    let verdict = crate::diagnostics::audit(d, &grid, flavor)?;
    Ok(AuditDoc::build(d, &verdict))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consistency::{analyze_catalog, Flavor, RankBands};
    use crate::core::dataset::parse_dataset;
    use crate::core::domain::DomainMode;
    use crate::levelset::enumerate_level_sets;
    use crate::selection::{exact_moment_grid, ml_rank, stability_cells};

    #[test]
    fn catalog_doc_round_trips_exactly() {
        let d = parse_dataset("1\n2\n5").unwrap();
        let cat = enumerate_level_sets(&d, 4, DomainMode::AtMostK).unwrap();
        let doc = CatalogDoc::from_catalog(&cat);
        let json = to_json(&doc).unwrap();
        let parsed: CatalogDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, doc);
        assert!(catalog_doc_matches(&parsed, &cat).unwrap());
    }

    #[test]
    fn serialization_is_deterministic() {
        let d = parse_dataset("0.5, 1.25, 3.75, 4.0").unwrap();
        let a = {
            let cat = enumerate_level_sets(&d, 3, DomainMode::AtMostK).unwrap();
            to_json(&CatalogDoc::from_catalog(&cat)).unwrap()
        };
        let b = {
            let cat = enumerate_level_sets(&d, 3, DomainMode::AtMostK).unwrap();
            to_json(&CatalogDoc::from_catalog(&cat)).unwrap()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn text_renderers_do_not_panic_and_mention_shapes() {
        let d = parse_dataset("1\n2\n5").unwrap();
        let cat = enumerate_level_sets(&d, 4, DomainMode::AtMostK).unwrap();
        let analysis = analyze_catalog(&d, &cat, Flavor::Frequency, &RankBands::default()).unwrap();
        let classify = ClassifyDoc::from_analysis(&cat, &analysis);
        let ml = ml_rank(&d, &cat).unwrap();
        let rank = RankDoc::build(&cat, &analysis, &ml);
        let stab = StabilityDoc::build(&cat, &stability_cells(&cat).unwrap());
        let rev = ReversalsDoc::build(&d, &cat);
        let dot = DotplotDoc::build(&d, &exact_moment_grid(&d, 1).unwrap(), 6).unwrap();
        let audit = audit_from_strings(&d, "1/2", "3/2", 4, Flavor::Frequency).unwrap();

        for text in [
            catalog_text(&CatalogDoc::from_catalog(&cat)),
            classify_text(&classify),
            rank_text(&rank),
            stability_text(&stab),
            reversals_text(&rev),
            dotplot_text(&dot),
            audit_text(&audit),
        ] {
            assert!(text.contains("(")); // some shape label rendered
            assert!(text.ends_with('\n'));
        }
        assert_eq!(audit.counts, vec![1, 1, 0, 1]);
    }

    #[test]
    fn classify_doc_has_spec_field_names() {
        let d = parse_dataset("1\n2\n5").unwrap();
        let cat = enumerate_level_sets(&d, 4, DomainMode::AtMostK).unwrap();
        let analysis = analyze_catalog(&d, &cat, Flavor::Frequency, &RankBands::default()).unwrap();
        let json = to_json(&ClassifyDoc::from_analysis(&cat, &analysis)).unwrap();
        for key in [
            "\"counts\"", "\"class\"", "\"h_mom\"", "\"t0_mom\"", "\"recomputed\"",
            "\"FPS_g\"", "\"signed_rank\"", "\"in_T\"", "\"in_F\"", "\"in_T_and_Jg\"",
        ] {
            assert!(json.contains(key), "missing {key}");
        }
        let cat_json = to_json(&CatalogDoc::from_catalog(&cat)).unwrap();
        for key in ["\"K_s\"", "\"V_s\"", "\"vertices\"", "\"h_min\"", "\"h_max\""] {
            assert!(cat_json.contains(key), "missing {key}");
        }
    }
}
