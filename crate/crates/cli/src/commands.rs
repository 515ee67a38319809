//! Subcommand implementations. Each returns the rendered output plus a
//! process exit code: 0 success / full capture, 3 analysis-negative,
//! while input errors surface as [`CliError`] (exit 2).

use std::collections::BTreeMap;
use std::path::Path;

use equispec_core::capture::{analyze_capture, check_interlacing, search_enlargement};
use equispec_core::construct;
use equispec_core::graph::{
    build_graph, graph_matrix, paper_partition, GraphFamily, MatrixKind, WeightFunction,
};
use equispec_core::partition::coarsest_equitable_refinement;
use equispec_core::{DenseMatrix, Graph, Partition, Tolerances};
use serde::Serialize;

use crate::format::{
    fmt_complex, matrix_to_text, parse_edge_list, parse_matrix, parse_partition, partition_display,
    partition_to_text,
};
use crate::report::{matrix_rows, AnalysisDocument, EnlargementDoc, InterlacingDoc, SpectrumDoc};
use crate::CliError;

/// Exit code for a negative analysis verdict (capture missing, no
/// enlargement found).
pub const EXIT_ANALYSIS_NEGATIVE: u8 = 3;
/// Exit code for input errors (parse failures, bad parameters).
pub const EXIT_INPUT_ERROR: u8 = 2;

/// Global command options.
#[derive(Debug, Clone, Copy, Default)]
pub struct GlobalOpts {
    pub json: bool,
    pub tol: Tolerances,
    /// Analyze column sums instead of row sums (transposes file-loaded
    /// matrices).
    pub transpose: bool,
}

/// Rendered output plus exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct CmdOutput {
    pub stdout: String,
    pub code: u8,
}

impl CmdOutput {
    fn ok(stdout: String) -> Self {
        CmdOutput { stdout, code: 0 }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn load_matrix(path: &Path, opts: &GlobalOpts) -> Result<DenseMatrix, CliError> {
    let m = parse_matrix(&read_file(path)?)?;
    Ok(if opts.transpose { m.transpose() } else { m })
}

fn load_partition(path: &Path, n: usize) -> Result<Partition, CliError> {
    parse_partition(&read_file(path)?, n)
}

/// Builds the analysis document for a matrix/partition pair, attaching the
/// interlacing section when the matrix is symmetric.
fn analysis_document(
    description: &str,
    m: &DenseMatrix,
    p: &Partition,
    opts: &GlobalOpts,
) -> Result<AnalysisDocument, CliError> {
    let report = analyze_capture(m, p, opts.tol)?;
    let mut doc = AnalysisDocument::new(description, &report);
    if m.is_symmetric() {
        let inter = check_interlacing(m, p, 0.0)?;
        doc.interlacing = Some(InterlacingDoc::from_report(&inter));
    }
    Ok(doc)
}

fn finish_analysis(doc: AnalysisDocument, opts: &GlobalOpts) -> CmdOutput {
    let code = if doc.capture.full_capture {
        0
    } else {
        EXIT_ANALYSIS_NEGATIVE
    };
    let stdout = if opts.json {
        doc.to_json()
    } else {
        doc.render_text()
    };
    CmdOutput { stdout, code }
}

/// `analyze MATRIX [PARTITION]`: capture analysis; without a partition file
/// the coarsest equitable refinement of the one-cell partition is used.
pub fn cmd_analyze(
    matrix_path: &Path,
    partition_path: Option<&Path>,
    opts: &GlobalOpts,
) -> Result<CmdOutput, CliError> {
    let m = load_matrix(matrix_path, opts)?;
    let p = match partition_path {
        Some(path) => load_partition(path, m.rows())?,
        None => {
            coarsest_equitable_refinement(&m, &Partition::trivial(m.rows()), opts.tol.equitable)?
        }
    };
    let doc = analysis_document(&matrix_path.display().to_string(), &m, &p, opts)?;
    Ok(finish_analysis(doc, opts))
}

#[derive(Serialize)]
struct RefineDoc {
    tool_version: String,
    input_description: String,
    order: usize,
    cells: Vec<Vec<usize>>,
}

/// `refine MATRIX [SEED]`: coarsest equitable refinement of the seed
/// partition (default: the one-cell partition).
pub fn cmd_refine(
    matrix_path: &Path,
    seed_path: Option<&Path>,
    opts: &GlobalOpts,
) -> Result<CmdOutput, CliError> {
    let m = load_matrix(matrix_path, opts)?;
    let seed = match seed_path {
        Some(path) => load_partition(path, m.rows())?,
        None => Partition::trivial(m.rows()),
    };
    let refined = coarsest_equitable_refinement(&m, &seed, opts.tol.equitable)?;
    let stdout = if opts.json {
        serde_json::to_string_pretty(&RefineDoc {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            input_description: matrix_path.display().to_string(),
            order: m.rows(),
            cells: refined.cells().to_vec(),
        })
        .expect("document serializes")
    } else {
        format!("{}\n", partition_display(&refined))
    };
    Ok(CmdOutput::ok(stdout))
}

/// `enlarge MATRIX PARTITION --max-splits K`: minimal cell-split
/// enlargements of an equitable seed that reach full capture.
pub fn cmd_enlarge(
    matrix_path: &Path,
    partition_path: &Path,
    max_splits: usize,
    opts: &GlobalOpts,
) -> Result<CmdOutput, CliError> {
    let m = load_matrix(matrix_path, opts)?;
    let seed = load_partition(partition_path, m.rows())?;
    let found = search_enlargement(&m, &seed, max_splits, opts.tol)?;

    let mut doc = analysis_document(&matrix_path.display().to_string(), &m, &seed, opts)?;
    doc.enlargements = Some(
        found
            .iter()
            .map(|(p, report)| EnlargementDoc {
                partition: p.cells().to_vec(),
                splits: p.cell_count() - seed.cell_count(),
                quotient_spectrum: SpectrumDoc::from_summary(&report.quotient_spectrum),
                full_capture: report.full_capture,
            })
            .collect(),
    );

    let code = if found.is_empty() {
        EXIT_ANALYSIS_NEGATIVE
    } else {
        0
    };
    let stdout = if opts.json {
        doc.to_json()
    } else {
        let mut out = String::new();
        if found.is_empty() {
            out.push_str("none within budget\n");
        } else {
            for (p, report) in &found {
                out.push_str(&format!(
                    "{} (splits={}, quotient spectrum: {})\n",
                    partition_display(p),
                    p.cell_count() - seed.cell_count(),
                    SpectrumDoc::from_summary(&report.quotient_spectrum).distinct_line()
                ));
            }
        }
        out
    };
    Ok(CmdOutput { stdout, code })
}

impl SpectrumDoc {
    fn distinct_line(&self) -> String {
        self.distinct
            .iter()
            .map(|e| format!("{} (x{})", fmt_complex(e.re, e.im), e.multiplicity))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn parse_params(spec: &str) -> Result<BTreeMap<String, f64>, CliError> {
    let mut map = BTreeMap::new();
    for part in spec.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (key, value) = part.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("parameter `{part}` is not of the form key=value"))
        })?;
        let v: f64 = value.trim().parse().map_err(|_| {
            CliError::Usage(format!("parameter `{key}` has non-numeric value `{value}`"))
        })?;
        map.insert(key.trim().to_string(), v);
    }
    Ok(map)
}

#[derive(Serialize)]
struct ConstructDoc {
    tool_version: String,
    family: String,
    params: BTreeMap<String, f64>,
    matrix: Vec<Vec<f64>>,
    partition: Vec<Vec<usize>>,
    expected_spectrum: Vec<ExpectedDoc>,
    check: Option<AnalysisDocument>,
}

#[derive(Serialize)]
struct ExpectedDoc {
    re: f64,
    im: f64,
    multiplicity: usize,
}

/// `construct --family NAME --params k=v,...`: emits the matrix, the
/// designated partition and the expected spectrum; `--check` additionally
/// runs the capture analysis and fails (exit 3) unless capture is full.
pub fn cmd_construct(
    family: &str,
    params_spec: &str,
    check: bool,
    opts: &GlobalOpts,
) -> Result<CmdOutput, CliError> {
    let params = parse_params(params_spec)?;
    let built = construct::by_name(family, &params, 0.0)?;

    let check_doc = if check {
        Some(analysis_document(
            &format!("construct {family}"),
            &built.matrix,
            &built.designated_partition,
            opts,
        )?)
    } else {
        None
    };
    let code = match &check_doc {
        Some(doc) if !doc.capture.full_capture => EXIT_ANALYSIS_NEGATIVE,
        _ => 0,
    };

    let stdout = if opts.json {
        serde_json::to_string_pretty(&ConstructDoc {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            family: built.family_name.clone(),
            params: built.params.clone(),
            matrix: matrix_rows(&built.matrix),
            partition: built.designated_partition.cells().to_vec(),
            expected_spectrum: built
                .expected_distinct
                .iter()
                .zip(&built.expected_multiplicities)
                .map(|(v, m)| ExpectedDoc {
                    re: crate::format::round12(v.re),
                    im: crate::format::round12(v.im),
                    multiplicity: *m,
                })
                .collect(),
            check: check_doc,
        })
        .expect("document serializes")
    } else {
        let mut out = String::new();
        out.push_str("# matrix\n");
        out.push_str(&matrix_to_text(&built.matrix));
        out.push_str("# partition\n");
        out.push_str(&partition_to_text(&built.designated_partition));
        out.push_str("# expected spectrum\n");
        for (v, m) in built
            .expected_distinct
            .iter()
            .zip(&built.expected_multiplicities)
        {
            out.push_str(&format!("{} (x{})\n", fmt_complex(v.re, v.im), m));
        }
        if let Some(doc) = &check_doc {
            out.push_str("# check\n");
            out.push_str(&doc.render_text());
        }
        out
    };
    Ok(CmdOutput { stdout, code })
}

fn graph_family(name: &str, params: &BTreeMap<String, f64>) -> Result<GraphFamily, CliError> {
    let get = |key: &str| -> Result<usize, CliError> {
        let v = params.get(key).copied().ok_or_else(|| {
            CliError::Usage(format!("graph family `{name}` needs parameter `{key}`"))
        })?;
        if v.fract() != 0.0 || v < 0.0 {
            return Err(CliError::Usage(format!(
                "parameter `{key}` must be a nonnegative integer, got {v}"
            )));
        }
        Ok(v as usize)
    };
    Ok(match name {
        "pendant_k3" => GraphFamily::PendantK3 { pendants: get("a")? },
        "complete" => GraphFamily::Complete { n: get("n")? },
        "complete_bipartite" => GraphFamily::CompleteBipartite {
            a: get("a")?,
            b: get("b")?,
        },
        "complete_split" => GraphFamily::CompleteSplit {
            clique: get("omega")?,
            independent: get("alpha")?,
        },
        other => {
            return Err(CliError::Usage(format!(
                "unknown graph family `{other}` (expected pendant_k3, complete, complete_bipartite, complete_split or custom)"
            )))
        }
    })
}

#[derive(Serialize)]
struct GraphDoc {
    tool_version: String,
    family: String,
    params: BTreeMap<String, f64>,
    kind: String,
    phi: Option<String>,
    order: usize,
    matrix: Vec<Vec<f64>>,
    partition: Option<Vec<Vec<usize>>>,
    analysis: Option<AnalysisDocument>,
}

/// `graph --family NAME --params ... --kind KIND [--phi PRESET]
/// [--analyze]`: builds the graph matrix (and designated partition);
/// `--analyze` chains into the capture analysis.
#[allow(clippy::too_many_arguments)]
pub fn cmd_graph(
    family: &str,
    params_spec: &str,
    edges_path: Option<&Path>,
    kind_name: &str,
    phi_name: Option<&str>,
    analyze: bool,
    opts: &GlobalOpts,
) -> Result<CmdOutput, CliError> {
    let params = parse_params(params_spec)?;
    let graph: Graph = if family == "custom" {
        let path = edges_path
            .ok_or_else(|| CliError::Usage("custom graphs need --edges FILE".to_string()))?;
        parse_edge_list(&read_file(path)?)?
    } else {
        build_graph(graph_family(family, &params)?)?
    };

    let kind = MatrixKind::parse(kind_name)
        .ok_or_else(|| CliError::Usage(format!("unknown matrix kind `{kind_name}`")))?;
    let phi = match phi_name {
        Some(name) => Some(
            WeightFunction::parse(name)
                .ok_or_else(|| CliError::Usage(format!("unknown weight preset `{name}`")))?,
        ),
        None => None,
    };
    let matrix = graph_matrix(&graph, kind, phi)?;

    let partition = match paper_partition(&graph) {
        Ok(p) => Some(p),
        Err(equispec_core::Error::NoDesignatedPartition) => None,
        Err(e) => return Err(e.into()),
    };

    let analysis = if analyze {
        let p = match &partition {
            Some(p) => p.clone(),
            None => coarsest_equitable_refinement(
                &matrix,
                &Partition::trivial(matrix.rows()),
                opts.tol.equitable,
            )?,
        };
        Some(analysis_document(
            &format!("graph {family} {kind_name}"),
            &matrix,
            &p,
            opts,
        )?)
    } else {
        None
    };
    let code = match &analysis {
        Some(doc) if !doc.capture.full_capture => EXIT_ANALYSIS_NEGATIVE,
        _ => 0,
    };

    let stdout = if opts.json {
        serde_json::to_string_pretty(&GraphDoc {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            family: family.to_string(),
            params,
            kind: kind.name().to_string(),
            phi: phi.map(|p| p.name().to_string()),
            order: matrix.rows(),
            matrix: matrix_rows(&matrix),
            partition: partition.as_ref().map(|p| p.cells().to_vec()),
            analysis,
        })
        .expect("document serializes")
    } else {
        let mut out = String::new();
        out.push_str("# matrix\n");
        out.push_str(&matrix_to_text(&matrix));
        if let Some(p) = &partition {
            out.push_str("# partition\n");
            out.push_str(&partition_to_text(p));
        }
        if let Some(doc) = &analysis {
            out.push_str("# analysis\n");
            out.push_str(&doc.render_text());
        }
        out
    };
    Ok(CmdOutput { stdout, code })
}

#[derive(Serialize)]
struct InterlaceTopDoc {
    tool_version: String,
    input_description: String,
    order: usize,
    partition: Vec<Vec<usize>>,
    interlacing: InterlacingDoc,
}

/// `interlace MATRIX PARTITION`: interlacing report for a symmetric matrix
/// against its averaged quotient.
pub fn cmd_interlace(
    matrix_path: &Path,
    partition_path: &Path,
    opts: &GlobalOpts,
) -> Result<CmdOutput, CliError> {
    let m = load_matrix(matrix_path, opts)?;
    let p = load_partition(partition_path, m.rows())?;
    let report = check_interlacing(&m, &p, 0.0)?;
    let doc = InterlacingDoc::from_report(&report);
    let code = if doc.interlaces {
        0
    } else {
        EXIT_ANALYSIS_NEGATIVE
    };
    let stdout = if opts.json {
        serde_json::to_string_pretty(&InterlaceTopDoc {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            input_description: matrix_path.display().to_string(),
            order: m.rows(),
            partition: p.cells().to_vec(),
            interlacing: doc,
        })
        .expect("document serializes")
    } else {
        doc.render()
    };
    Ok(CmdOutput { stdout, code })
}
