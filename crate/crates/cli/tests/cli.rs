//! End-to-end tests of the `equispec` binary and the document formats:
//! exit codes, parse diagnostics, golden text output, file round-trips and
//! JSON schema conformance.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use proptest::prelude::*;

use equispec::format::{matrix_to_text, parse_matrix};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_equispec")
}

fn write_temp(dir: &tempfile::TempDir, name: &str, content: &str) -> PathBuf {
    let path = dir.path().join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(content.as_bytes()).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

const COUNTEREXAMPLE: &str = "10 -1 -1 -4\n-1 10 -1 -4\n6 6 -14 1\n6 6 1 -14\n";

#[test]
fn analyze_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_temp(&dir, "m.txt", COUNTEREXAMPLE);
    let p = write_temp(&dir, "p.txt", "1 2\n3 4\n");

    // Missing eigenvalues: exit 3, report names them.
    let out = run(&["analyze", m.to_str().unwrap(), p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("full capture: no"));
    assert!(text.contains("missing: 11, -15"));

    // Full capture via the discrete partition: exit 0.
    let pd = write_temp(&dir, "pd.txt", "1\n2\n3\n4\n");
    let out = run(&["analyze", m.to_str().unwrap(), pd.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    // Ragged matrix: exit 2 with a line number on stderr.
    let bad = write_temp(&dir, "bad.txt", "1 2\n3\n");
    let out = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "stderr: {err}");

    // Missing file: exit 2.
    let out = run(&["analyze", dir.path().join("nope.txt").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn refine_prints_partition_line() {
    let dir = tempfile::tempdir().unwrap();
    // mprime family at n = 6.
    let built = equispec_core::construct::family_m_prime(6).unwrap();
    let m = write_temp(&dir, "m.txt", &matrix_to_text(&built.matrix));
    let out = run(&["refine", m.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{1} {2 3 4 5 6}\n");

    // Identity: a single cell.
    let id = write_temp(&dir, "id.txt", "1 0\n0 1\n");
    let out = run(&["refine", id.to_str().unwrap()]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{1 2}\n");
}

#[test]
fn transpose_flag_switches_to_column_sums() {
    let dir = tempfile::tempdir().unwrap();
    // Columns sums are constant (4, 4); row sums are not (3, 5).
    let m = write_temp(&dir, "m.txt", "1 3\n3 1\n");
    let _ = m;
    let m = write_temp(&dir, "m2.txt", "1 2\n3 2\n");
    let p = write_temp(&dir, "p.txt", "1 2\n");

    let out = run(&["analyze", m.to_str().unwrap(), p.to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("equitable: no"));

    let out = run(&[
        "--transpose",
        "analyze",
        m.to_str().unwrap(),
        p.to_str().unwrap(),
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("equitable: yes"), "{text}");
}

#[test]
fn construct_golden_m4double() {
    let out = run(&[
        "construct",
        "--family",
        "m4double",
        "--params",
        "c11=1,c12=-8,c21=4,c22=13,alpha=5,beta=9",
        "--check",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# matrix\n3 -2 -4 -4\n-2 3 -4 -4\n2 2 11 2\n2 2 2 11\n"));
    assert!(text.contains("# partition\n1 2\n3 4\n"));
    assert!(text.contains("full capture: yes"));

    // Invalid parameters surface as input errors.
    let out = run(&[
        "construct",
        "--family",
        "m3",
        "--params",
        "c11=1,c12=-8,c21=4,c22=13,alpha=6",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("not an eigenvalue"), "{err}");
}

#[test]
fn graph_analyze_exit_codes_match_capture() {
    let out = run(&[
        "graph",
        "--family",
        "pendant_k3",
        "--params",
        "a=2",
        "--kind",
        "adjacency",
        "--analyze",
    ]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&[
        "graph",
        "--family",
        "pendant_k3",
        "--params",
        "a=2",
        "--kind",
        "signless_laplacian",
        "--analyze",
    ]);
    assert_eq!(out.status.code(), Some(3));

    // Custom graphs come from edge lists.
    let dir = tempfile::tempdir().unwrap();
    let edges = write_temp(&dir, "g.txt", "# path\n1 2\n2 3\n");
    let out = run(&[
        "graph",
        "--family",
        "custom",
        "--edges",
        edges.to_str().unwrap(),
        "--kind",
        "laplacian",
        "--analyze",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# matrix\n1 -1 0\n-1 2 -1\n0 -1 1\n"));
}

#[test]
fn interlace_command_reports_tightness() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_temp(
        &dir,
        "m.txt",
        "2 0 0 0\n0 2 0 0\n0 0 1.5 -0.5\n0 0 -0.5 1.5\n",
    );
    let p = write_temp(&dir, "p.txt", "1 2\n3 4\n");
    let out = run(&["interlace", m.to_str().unwrap(), p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("interlaces: yes"));
    assert!(text.contains("tight: yes"));

    // Non-symmetric input is an input error.
    let m = write_temp(&dir, "ns.txt", "1 -4 -4\n4 9 4\n4 4 9\n");
    let p3 = write_temp(&dir, "p3.txt", "1\n2 3\n");
    let out = run(&["interlace", m.to_str().unwrap(), p3.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enlarge_binary_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_temp(&dir, "m.txt", COUNTEREXAMPLE);
    let p = write_temp(&dir, "p.txt", "1 2\n3 4\n");
    let out = run(&[
        "enlarge",
        m.to_str().unwrap(),
        p.to_str().unwrap(),
        "--max-splits",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("none within budget"));

    let out = run(&["enlarge", m.to_str().unwrap(), p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("{1} {2} {3} {4}"));
}

// ---------------------------------------------------------------------
// JSON schema conformance, via a small validator covering the subset of
// draft-07 the shipped schema uses.
// ---------------------------------------------------------------------

mod schema {
    use serde_json::Value;

    pub fn validate(schema: &Value, root: &Value, value: &Value, path: &str) -> Result<(), String> {
        if let Some(reference) = schema.get("$ref").and_then(Value::as_str) {
            let target = resolve(root, reference)
                .ok_or_else(|| format!("{path}: unresolved $ref {reference}"))?;
            return validate(&target, root, value, path);
        }
        if let Some(variants) = schema.get("oneOf").and_then(Value::as_array) {
            let hits = variants
                .iter()
                .filter(|v| validate(v, root, value, path).is_ok())
                .count();
            if hits != 1 {
                return Err(format!("{path}: {hits} oneOf variants matched"));
            }
            return Ok(());
        }
        if let Some(ty) = schema.get("type").and_then(Value::as_str) {
            let ok = match ty {
                "object" => value.is_object(),
                "array" => value.is_array(),
                "string" => value.is_string(),
                "number" => value.is_number(),
                "integer" => value.as_f64().is_some_and(|v| v.fract() == 0.0),
                "boolean" => value.is_boolean(),
                "null" => value.is_null(),
                other => return Err(format!("{path}: unsupported type {other}")),
            };
            if !ok {
                return Err(format!("{path}: expected {ty}, got {value}"));
            }
        }
        if let Some(min) = schema.get("minimum").and_then(Value::as_f64) {
            let v = value
                .as_f64()
                .ok_or_else(|| format!("{path}: minimum on non-number"))?;
            if v < min {
                return Err(format!("{path}: {v} below minimum {min}"));
            }
        }
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            let obj = value
                .as_object()
                .ok_or_else(|| format!("{path}: required on non-object"))?;
            for key in required.iter().filter_map(Value::as_str) {
                if !obj.contains_key(key) {
                    return Err(format!("{path}: missing required key {key}"));
                }
            }
        }
        if let Some(props) = schema.get("properties").and_then(Value::as_object) {
            if let Some(obj) = value.as_object() {
                let additional_ok = schema
                    .get("additionalProperties")
                    .and_then(Value::as_bool)
                    .unwrap_or(true);
                for (key, sub) in obj {
                    match props.get(key) {
                        Some(sub_schema) => {
                            validate(sub_schema, root, sub, &format!("{path}/{key}"))?
                        }
                        None if !additional_ok => {
                            return Err(format!("{path}: unexpected key {key}"));
                        }
                        None => {}
                    }
                }
            }
        }
        if let Some(min_items) = schema.get("minItems").and_then(Value::as_u64) {
            let arr = value
                .as_array()
                .ok_or_else(|| format!("{path}: minItems on non-array"))?;
            if (arr.len() as u64) < min_items {
                return Err(format!("{path}: fewer than {min_items} items"));
            }
        }
        if let Some(items) = schema.get("items") {
            if let Some(arr) = value.as_array() {
                for (i, item) in arr.iter().enumerate() {
                    validate(items, root, item, &format!("{path}[{i}]"))?;
                }
            }
        }
        Ok(())
    }

    fn resolve(root: &Value, reference: &str) -> Option<Value> {
        let path = reference.strip_prefix("#/")?;
        let mut cur = root;
        for part in path.split('/') {
            cur = cur.get(part)?;
        }
        Some(cur.clone())
    }
}

#[test]
fn json_output_validates_against_shipped_schema() {
    let schema_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/analysis.schema.json");
    let schema: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();

    let dir = tempfile::tempdir().unwrap();
    let m = write_temp(&dir, "m.txt", COUNTEREXAMPLE);
    let p = write_temp(&dir, "p.txt", "1 2\n3 4\n");

    // analyze (symmetric off: interlacing null) and enlarge (enlargements
    // non-null) both conform.
    let out = run(&[
        "--json",
        "analyze",
        m.to_str().unwrap(),
        p.to_str().unwrap(),
    ]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    schema::validate(&schema, &schema, &doc, "$").unwrap();

    let out = run(&[
        "--json",
        "enlarge",
        m.to_str().unwrap(),
        p.to_str().unwrap(),
    ]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    schema::validate(&schema, &schema, &doc, "$").unwrap();
    assert!(doc["enlargements"].is_array());

    // A symmetric input exercises the interlacing section.
    let sym = write_temp(
        &dir,
        "sym.txt",
        "2 0 0 0\n0 2 0 0\n0 0 1.5 -0.5\n0 0 -0.5 1.5\n",
    );
    let out = run(&[
        "--json",
        "analyze",
        sym.to_str().unwrap(),
        p.to_str().unwrap(),
    ]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    schema::validate(&schema, &schema, &doc, "$").unwrap();
    assert!(doc["interlacing"].is_object());

    // Determinism: a second run emits byte-identical JSON.
    let again = run(&[
        "--json",
        "analyze",
        sym.to_str().unwrap(),
        p.to_str().unwrap(),
    ]);
    assert_eq!(out.stdout, again.stdout);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// parse -> serialize -> parse is the identity at 12 significant digits.
    #[test]
    fn matrix_file_round_trip(
        n in 1usize..5,
        seed in any::<u64>(),
    ) {
        let mut state = seed;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            // Mix of integer-ish and fractional magnitudes.
            let raw = ((state >> 11) as f64 / (1u64 << 53) as f64) * 2000.0 - 1000.0;
            (raw * 64.0).round() / 64.0
        };
        let rows: Vec<Vec<f64>> = (0..n).map(|_| (0..n).map(|_| next()).collect()).collect();
        let m = equispec_core::DenseMatrix::from_rows(&rows).unwrap();
        let text = matrix_to_text(&m);
        let back = parse_matrix(&text).unwrap();
        prop_assert_eq!(matrix_to_text(&back), text);
        for (a, b) in m.entries().iter().zip(back.entries()) {
            let scale = a.abs().max(1.0);
            prop_assert!((a - b).abs() <= 1e-11 * scale);
        }
    }
}
