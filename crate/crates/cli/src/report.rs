//! The analysis document: a deterministic, JSON-serializable record of one
//! capture analysis, with optional interlacing and enlargement sections.
//! All floating-point payloads are rounded to 12 significant digits so the
//! document round-trips losslessly through JSON at that precision.

use equispec_core::capture::{CaptureReport, InterlacingReport};
use equispec_core::{DenseMatrix, Partition, SpectrumSummary};
use serde::{Deserialize, Serialize};

use crate::format::{fmt_complex, fmt_g12, partition_display, round12};

/// Tolerances recorded in a document: resolved values where a single value
/// governs the run, the requested value (0 = per-operation default) for the
/// rank tolerance.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ToleranceDoc {
    pub equitable: f64,
    pub cluster: f64,
    pub rank: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EigenvalueDoc {
    pub re: f64,
    pub im: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SpectrumDoc {
    pub distinct: Vec<EigenvalueDoc>,
    pub spectral_radius: f64,
}

impl SpectrumDoc {
    pub fn from_summary(s: &SpectrumSummary) -> Self {
        SpectrumDoc {
            distinct: s
                .distinct()
                .iter()
                .map(|(v, m)| EigenvalueDoc {
                    re: round12(v.re),
                    im: round12(v.im),
                    multiplicity: *m,
                })
                .collect(),
            spectral_radius: round12(s.spectral_radius()),
        }
    }

    fn render(&self) -> String {
        self.distinct
            .iter()
            .map(|e| format!("{} (x{})", fmt_complex(e.re, e.im), e.multiplicity))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct QuotientDoc {
    pub order: usize,
    pub rows: Vec<Vec<f64>>,
    pub equitable: bool,
    pub max_row_sum_deviation: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CaptureRowDoc {
    pub re: f64,
    pub im: f64,
    pub multiplicity: usize,
    pub in_quotient: bool,
    pub eigenspace_dim: usize,
    pub intersection_dim_with_w: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ComplexDoc {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CaptureDoc {
    pub full_capture: bool,
    pub per_eigenvalue: Vec<CaptureRowDoc>,
    pub missing: Vec<ComplexDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct InterlacingDoc {
    pub parent_sorted: Vec<f64>,
    pub quotient_sorted: Vec<f64>,
    pub interlaces: bool,
    pub tight: bool,
    pub tight_split_k: Option<usize>,
}

impl InterlacingDoc {
    pub fn from_report(r: &InterlacingReport) -> Self {
        InterlacingDoc {
            parent_sorted: r.parent_sorted.iter().map(|&v| round12(v)).collect(),
            quotient_sorted: r.quotient_sorted.iter().map(|&v| round12(v)).collect(),
            interlaces: r.interlaces,
            tight: r.tight,
            tight_split_k: r.tight_split_k,
        }
    }

    pub fn render(&self) -> String {
        let fmt_list = |vals: &[f64]| {
            vals.iter()
                .map(|&v| fmt_g12(v))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut out = String::new();
        out.push_str(&format!(
            "parent sorted:   {}\n",
            fmt_list(&self.parent_sorted)
        ));
        out.push_str(&format!(
            "quotient sorted: {}\n",
            fmt_list(&self.quotient_sorted)
        ));
        out.push_str(&format!(
            "interlaces: {}\n",
            if self.interlaces { "yes" } else { "no" }
        ));
        match self.tight_split_k {
            Some(k) => out.push_str(&format!("tight: yes (split index k={k})\n")),
            None => out.push_str("tight: no\n"),
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EnlargementDoc {
    pub partition: Vec<Vec<usize>>,
    pub splits: usize,
    pub quotient_spectrum: SpectrumDoc,
    pub full_capture: bool,
}

/// Deterministic record of one analysis run.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AnalysisDocument {
    pub tool_version: String,
    pub input_description: String,
    pub order: usize,
    pub tolerances: ToleranceDoc,
    pub partition: Vec<Vec<usize>>,
    pub quotient: QuotientDoc,
    pub parent_spectrum: SpectrumDoc,
    pub quotient_spectrum: SpectrumDoc,
    pub capture: CaptureDoc,
    pub interlacing: Option<InterlacingDoc>,
    pub enlargements: Option<Vec<EnlargementDoc>>,
}

impl AnalysisDocument {
    /// Assembles the document from a capture report.
    pub fn new(description: &str, report: &CaptureReport) -> Self {
        let q = &report.quotient;
        let quotient = QuotientDoc {
            order: q.quotient.rows(),
            rows: matrix_rows(&q.quotient),
            equitable: q.equitable,
            max_row_sum_deviation: round12(q.max_row_sum_deviation),
        };
        AnalysisDocument {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            input_description: description.to_string(),
            order: report.partition.n(),
            tolerances: ToleranceDoc {
                equitable: round12(q.tolerance_used),
                cluster: round12(report.cluster_tol_used),
                rank: round12(report.rank_tol_used),
            },
            partition: report.partition.cells().to_vec(),
            quotient,
            parent_spectrum: SpectrumDoc::from_summary(&report.parent_spectrum),
            quotient_spectrum: SpectrumDoc::from_summary(&report.quotient_spectrum),
            capture: CaptureDoc {
                full_capture: report.full_capture,
                per_eigenvalue: report
                    .per_eigenvalue
                    .iter()
                    .map(|e| CaptureRowDoc {
                        re: round12(e.value.re),
                        im: round12(e.value.im),
                        multiplicity: e.multiplicity,
                        in_quotient: e.in_quotient,
                        eigenspace_dim: e.eigenspace_dim,
                        intersection_dim_with_w: e.intersection_dim_with_w,
                    })
                    .collect(),
                missing: report
                    .missing()
                    .iter()
                    .map(|v| ComplexDoc {
                        re: round12(v.re),
                        im: round12(v.im),
                    })
                    .collect(),
            },
            interlacing: None,
            enlargements: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    /// Stable line-oriented text rendering.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "matrix: {}x{} ({})\n",
            self.order, self.order, self.input_description
        ));
        let partition = Partition::new(self.order, self.partition.clone())
            .expect("document partitions are valid");
        out.push_str(&format!("partition: {}\n", partition_display(&partition)));
        out.push_str(&format!(
            "equitable: {} (max row-sum deviation {})\n",
            if self.quotient.equitable { "yes" } else { "no" },
            fmt_g12(self.quotient.max_row_sum_deviation)
        ));
        out.push_str("quotient:\n");
        for row in &self.quotient.rows {
            let toks: Vec<String> = row.iter().map(|&v| fmt_g12(v)).collect();
            out.push_str(&format!("  {}\n", toks.join(" ")));
        }
        out.push_str(&format!(
            "parent spectrum:   {}\n",
            self.parent_spectrum.render()
        ));
        out.push_str(&format!(
            "quotient spectrum: {}\n",
            self.quotient_spectrum.render()
        ));
        out.push_str(&format!(
            "spectral radius: parent {}, quotient {}\n",
            fmt_g12(self.parent_spectrum.spectral_radius),
            fmt_g12(self.quotient_spectrum.spectral_radius)
        ));
        out.push_str("capture:\n");
        for row in &self.capture.per_eigenvalue {
            out.push_str(&format!(
                "  lambda={} multiplicity={} in_quotient={} eigenspace_dim={} dim(E cap W)={}\n",
                fmt_complex(row.re, row.im),
                row.multiplicity,
                if row.in_quotient { "yes" } else { "no" },
                row.eigenspace_dim,
                row.intersection_dim_with_w
            ));
        }
        if self.capture.full_capture {
            out.push_str("full capture: yes\n");
        } else {
            let missing: Vec<String> = self
                .capture
                .missing
                .iter()
                .map(|c| fmt_complex(c.re, c.im))
                .collect();
            out.push_str(&format!(
                "full capture: no (missing: {})\n",
                missing.join(", ")
            ));
        }
        if let Some(inter) = &self.interlacing {
            out.push_str("interlacing:\n");
            for line in inter.render().lines() {
                out.push_str(&format!("  {line}\n"));
            }
        }
        if let Some(enls) = &self.enlargements {
            if enls.is_empty() {
                out.push_str("enlargements: none within budget\n");
            } else {
                out.push_str("enlargements:\n");
                for e in enls {
                    let p = Partition::new(self.order, e.partition.clone())
                        .expect("document partitions are valid");
                    out.push_str(&format!(
                        "  {} (splits={}, quotient spectrum: {})\n",
                        partition_display(&p),
                        e.splits,
                        e.quotient_spectrum.render()
                    ));
                }
            }
        }
        out
    }
}

pub(crate) fn matrix_rows(m: &DenseMatrix) -> Vec<Vec<f64>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|&v| round12(v)).collect())
        .collect()
}
