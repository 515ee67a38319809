//! Plain-text file formats and numeric formatting.
//!
//! Matrix files: one row per line, whitespace-separated decimals, no
//! header; squareness is validated. Partition files: one cell per line,
//! space-separated 1-based indices. Edge lists: one `i j` pair per line,
//! `#` comments and blank lines ignored. Numbers render as the shortest
//! round-trip representation capped at 12 significant digits.

use equispec_core::{DenseMatrix, Graph, Partition};

use crate::CliError;

/// Rounds to 12 significant digits.
pub fn round12(v: f64) -> f64 {
    if v == 0.0 {
        return 0.0;
    }
    format!("{v:.11e}").parse().expect("formatted float parses")
}

/// Shortest round-trip decimal form of `v`, capped at 12 significant
/// digits. Integers print without a decimal point.
pub fn fmt_g12(v: f64) -> String {
    let r = round12(v);
    if r == 0.0 {
        return "0".to_string();
    }
    format!("{r}")
}

/// Complex value as text: `a`, `a+bi` or `a-bi`.
pub fn fmt_complex(re: f64, im: f64) -> String {
    let im = round12(im);
    if im == 0.0 {
        fmt_g12(re)
    } else if im < 0.0 {
        format!("{}-{}i", fmt_g12(re), fmt_g12(-im))
    } else {
        format!("{}+{}i", fmt_g12(re), fmt_g12(im))
    }
}

/// Parses a square matrix from text. Blank lines are ignored; every other
/// line is one row.
pub fn parse_matrix(text: &str) -> Result<DenseMatrix, CliError> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width: Option<(usize, usize)> = None; // (cols, defining line)
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for tok in line.split_whitespace() {
            let v: f64 = tok.parse().map_err(|_| CliError::Parse {
                line: Some(line_no),
                message: format!("invalid number `{tok}`"),
            })?;
            if !v.is_finite() {
                return Err(CliError::Parse {
                    line: Some(line_no),
                    message: format!("non-finite entry `{tok}`"),
                });
            }
            row.push(v);
        }
        match width {
            None => width = Some((row.len(), line_no)),
            Some((w, _)) if w != row.len() => {
                return Err(CliError::Parse {
                    line: Some(line_no),
                    message: format!("row has {} entries, expected {}", row.len(), w),
                });
            }
            _ => {}
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CliError::Parse {
            line: None,
            message: "matrix file is empty".into(),
        });
    }
    let cols = rows[0].len();
    if rows.len() != cols {
        return Err(CliError::Parse {
            line: Some(rows.len()),
            message: format!("matrix is {}x{}, expected square", rows.len(), cols),
        });
    }
    DenseMatrix::from_rows(&rows).map_err(CliError::from)
}

/// Serializes a matrix in the plain-text row format.
pub fn matrix_to_text(m: &DenseMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|&v| fmt_g12(v)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a partition: one cell per line, space-separated 1-based indices.
/// `n` is the expected index-set size.
pub fn parse_partition(text: &str, n: usize) -> Result<Partition, CliError> {
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut cell = Vec::new();
        for tok in line.split_whitespace() {
            let v: usize = tok.parse().map_err(|_| CliError::Parse {
                line: Some(line_no),
                message: format!("invalid index `{tok}`"),
            })?;
            cell.push(v);
        }
        cells.push(cell);
    }
    if cells.is_empty() {
        return Err(CliError::Parse {
            line: None,
            message: "partition file is empty".into(),
        });
    }
    Partition::new(n, cells).map_err(CliError::from)
}

/// Serializes a partition, one cell per line.
pub fn partition_to_text(p: &Partition) -> String {
    let mut out = String::new();
    for cell in p.cells() {
        let toks: Vec<String> = cell.iter().map(|e| e.to_string()).collect();
        out.push_str(&toks.join(" "));
        out.push('\n');
    }
    out
}

/// One-line display form: `{1} {2 3 4}`.
pub fn partition_display(p: &Partition) -> String {
    p.to_string()
}

/// Parses an edge list: one `i j` pair per line, blank lines and `#`
/// comments ignored; the vertex count is the largest index seen.
pub fn parse_edge_list(text: &str) -> Result<Graph, CliError> {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(CliError::Parse {
                line: Some(line_no),
                message: format!("expected `i j`, got {} tokens", toks.len()),
            });
        }
        let parse = |tok: &str| -> Result<usize, CliError> {
            tok.parse().map_err(|_| CliError::Parse {
                line: Some(line_no),
                message: format!("invalid vertex index `{tok}`"),
            })
        };
        pairs.push((parse(toks[0])?, parse(toks[1])?));
    }
    if pairs.is_empty() {
        return Err(CliError::Parse {
            line: None,
            message: "edge list is empty".into(),
        });
    }
    Graph::from_edges(&pairs).map_err(CliError::from)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_integers_without_decimals() {
        assert_eq!(fmt_g12(9.0), "9");
        assert_eq!(fmt_g12(-5.0), "-5");
        assert_eq!(fmt_g12(0.0), "0");
        assert_eq!(fmt_g12(-0.0), "0");
    }

    #[test]
    fn caps_at_twelve_significant_digits() {
        let v = 5.810249675906654;
        let s = fmt_g12(v);
        assert_eq!(s, "5.81024967591");
        // Round-trip of the rounded value.
        let back: f64 = s.parse().unwrap();
        assert_eq!(fmt_g12(back), s);
    }

    #[test]
    fn complex_formatting() {
        assert_eq!(fmt_complex(1.5, 0.0), "1.5");
        assert_eq!(fmt_complex(0.0, 2.0), "0+2i");
        assert_eq!(fmt_complex(-1.0, -0.5), "-1-0.5i");
    }

    #[test]
    fn parses_and_round_trips_matrix() {
        let text = "9 -5\n12 -13\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(m.entries(), &[9.0, -5.0, 12.0, -13.0]);
        assert_eq!(matrix_to_text(&m), text);
    }

    #[test]
    fn matrix_errors_carry_line_numbers() {
        match parse_matrix("1 2\n3\n") {
            Err(CliError::Parse { line: Some(2), .. }) => {}
            other => panic!("expected line-2 parse error, got {other:?}"),
        }
        match parse_matrix("1 2\nx 4\n") {
            Err(CliError::Parse { line: Some(2), .. }) => {}
            other => panic!("expected line-2 parse error, got {other:?}"),
        }
        match parse_matrix("1 2 3\n4 5 6\n") {
            Err(CliError::Parse { line: Some(2), .. }) => {}
            other => panic!("expected non-square error, got {other:?}"),
        }
        assert!(parse_matrix("").is_err());
    }

    #[test]
    fn parses_partition_and_edge_list() {
        let p = parse_partition("1 2\n3 4\n", 4).unwrap();
        assert_eq!(partition_display(&p), "{1 2} {3 4}");
        assert_eq!(partition_to_text(&p), "1 2\n3 4\n");

        let g = parse_edge_list("# triangle\n1 2\n\n2 3\n1 3\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges().len(), 3);
        assert!(parse_edge_list("1 2 3\n").is_err());
    }
}
