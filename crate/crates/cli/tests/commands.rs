use std::fs;
use std::process::{Command, Output};

use tempfile::TempDir;

fn topodyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_topodyn"))
        .args(args)
        .output()
        .expect("run topodyn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

const A1: &str = r#"{"points":["a","b","c"],"opens":[[],["a","b"],["a","b","c"]],"map":{"a":"c","b":"c","c":"c"}}"#;
const A3: &str = r#"{"points":["a","b","c"],"opens":[["a","b"]],"map":{"a":"b","b":"c","c":"a"}}"#;
const A4: &str = r#"{"points":["a","b","c"],"opens":[["a","b"]],"map":{"a":"a","b":"c","c":"b"}}"#;
const ALTERNATING: &str =
    r#"{"points":["a","b","c"],"opens":[["a"],["b","c"]],"map":{"a":"b","b":"a","c":"a"}}"#;
const NOT_HYPERTRANSITIVE: &str =
    r#"{"points":["a","b","c"],"opens":[["a"],["a","b"]],"map":{"a":"a","b":"c","c":"c"}}"#;

#[test]
fn validate_accepts_and_prints_canonical_form() {
    let dir = TempDir::new().unwrap();
    let o = topodyn(&["validate", &write(&dir, "a1.json", A1)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).is_empty());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["opens"].as_array().unwrap().len(), 3);
}

#[test]
fn validate_inserts_missing_whole_space_with_notice() {
    let dir = TempDir::new().unwrap();
    let doc = r#"{"points":["a","b","c"],"opens":[[],["a","b"]],"map":{"a":"c","b":"c","c":"c"}}"#;
    let o = topodyn(&["validate", &write(&dir, "x.json", doc)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("whole space was added"));
    assert!(stdout(&o).contains("\"c\""));
}

#[test]
fn validate_rejects_union_gap() {
    let dir = TempDir::new().unwrap();
    let doc = r#"{"points":["a","b","c"],"opens":[["a"],["b"]],"map":{"a":"a","b":"b","c":"c"}}"#;
    let o = topodyn(&["validate", &write(&dir, "bad.json", doc)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("NotUnionClosed: {a} ∪ {b}"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn malformed_and_missing_files_exit_2() {
    let dir = TempDir::new().unwrap();
    let o = topodyn(&["classify", &write(&dir, "junk.json", "{")]);
    assert_eq!(o.status.code(), Some(2));
    let missing = dir.path().join("nope.json");
    let o = topodyn(&["classify", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = topodyn(&["search", "--points", "3", "--require", "chaos"]);
    assert_eq!(o.status.code(), Some(2));
}

fn classify_json(doc: &str) -> serde_json::Value {
    let dir = TempDir::new().unwrap();
    let o = topodyn(&["classify", "--format", "json", &write(&dir, "s.json", doc)]);
    assert_eq!(o.status.code(), Some(0));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn holds(v: &serde_json::Value, p: &str) -> bool {
    v["properties"][p]["holds"].as_bool().unwrap()
}

#[test]
fn classify_reference_systems() {
    let a1 = classify_json(A1);
    assert!(holds(&a1, "strongly-topologically-transitive"));
    assert!(!holds(&a1, "mixing"));

    let a3 = classify_json(A3);
    assert!(holds(&a3, "mixing"));
    assert!(!holds(&a3, "supermixing"));

    let s = classify_json(NOT_HYPERTRANSITIVE);
    assert!(holds(&s, "continuous"));
    assert!(holds(&s, "supermixing"));
    assert!(!holds(&s, "hypertransitive"));
    assert_eq!(s["hypercyclic_points"], serde_json::json!(["a"]));
}

#[test]
fn classify_formats_carry_the_same_bits() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "a4.json", A4);
    let json = classify_json(A4);
    let csv = stdout(&topodyn(&["classify", "--format", "csv", &path]));
    let text = stdout(&topodyn(&["classify", "--format", "text", &path]));
    let mut rows = csv.lines();
    assert_eq!(rows.next(), Some("property,holds,witness"));
    for row in rows {
        let mut cells = row.split(',');
        let name = cells.next().unwrap();
        let bit = cells.next().unwrap() == "1";
        assert_eq!(holds(&json, name), bit, "{name}");
        let line = text
            .lines()
            .find(|l| l.split_whitespace().next() == Some(name))
            .unwrap();
        assert_eq!(
            line.split_whitespace().nth(1),
            Some(if bit { "yes" } else { "no" })
        );
    }
}

#[test]
fn jmix_points_and_table() {
    let dir = TempDir::new().unwrap();
    let alt = write(&dir, "alt.json", ALTERNATING);
    let o = topodyn(&["jmix", "--point", "a", &alt]);
    assert_eq!(stdout(&o), "{}\n");

    let a4 = write(&dir, "a4.json", A4);
    let o = topodyn(&["jmix", "--point", "b", &a4]);
    assert_eq!(stdout(&o), "{a,b,c}\n");
    assert!(stderr(&o).contains("not continuous"));

    let single = write(&dir, "one.json", r#"{"points":["p"],"map":{"p":"p"}}"#);
    let o = topodyn(&["jmix", "--all", &single]);
    assert_eq!(stdout(&o), "J^mix(p) = {p}\nJ^mix(whole space) = {p}\n");

    let o = topodyn(&["jmix", "--point", "zz", &single]);
    assert_eq!(o.status.code(), Some(2));
}

fn data_lines(s: &str) -> usize {
    s.lines().count()
}

#[test]
fn enumerate_counts_rows() {
    let o = topodyn(&["enumerate", "--points", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(data_lines(&stdout(&o)), 1 + 16);

    let dir = TempDir::new().unwrap();
    let out = dir.path().join("atlas.csv");
    let o = topodyn(&["enumerate", "--points", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    assert_eq!(data_lines(&fs::read_to_string(&out).unwrap()), 1 + 783);

    let o = topodyn(&["enumerate", "--points", "3", "--dedup"]);
    let classes = data_lines(&stdout(&o)) - 1;
    assert!(classes < 783);
    assert!(stderr(&o).contains(&format!("{classes} classes")));
    assert!(stderr(&o).contains("783 labeled systems"));

    let o = topodyn(&["enumerate", "--points", "7"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn csv_and_jsonl_atlases_agree() {
    let csv = stdout(&topodyn(&["enumerate", "--points", "3"]));
    let jsonl = stdout(&topodyn(&[
        "enumerate",
        "--points",
        "3",
        "--format",
        "jsonl",
    ]));
    let mut reader = csv::Reader::from_reader(csv.as_bytes());
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    let objects: Vec<serde_json::Value> = jsonl
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), objects.len());
    for (row, obj) in rows.iter().zip(&objects) {
        assert_eq!(row[0], obj["index"].to_string());
        assert_eq!(&row[3], obj["key"].as_str().unwrap());
        for (i, name) in header.iter().enumerate().skip(4) {
            assert_eq!(
                row[i] == *"1",
                obj["profile"][name].as_bool().unwrap(),
                "{name}"
            );
        }
    }
}

fn keys_of_docs(docs: &str) -> Vec<String> {
    docs.lines()
        .map(|l| {
            let sys = topodyn_cli::document::parse_system(l).unwrap().system;
            topodyn::zoo::canonical_key(&sys).to_string()
        })
        .collect()
}

fn key_of(doc: &str) -> String {
    keys_of_docs(
        &topodyn_cli::document::SystemDocument::parse(doc)
            .unwrap()
            .to_json(),
    )[0]
    .clone()
}

#[test]
fn search_finds_reference_classes() {
    let collapse =
        r#"{"points":["a","b","c"],"opens":[["a","b"]],"map":{"a":"b","b":"b","c":"a"}}"#;
    let o = topodyn(&[
        "search",
        "--points",
        "3",
        "--require",
        "mixing",
        "--forbid",
        "strongly-topologically-transitive",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(keys_of_docs(&stdout(&o)).contains(&key_of(collapse)));

    let o = topodyn(&[
        "search",
        "--points",
        "3",
        "--require",
        "mixing",
        "--forbid",
        "supermixing",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(keys_of_docs(&stdout(&o)).contains(&key_of(A3)));
}

#[test]
fn search_reports_nothing_with_exit_1() {
    let o = topodyn(&[
        "search",
        "--points",
        "3",
        "--require",
        "hypermixing",
        "--filter",
        "nontrivial-topology",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).is_empty());
}

#[test]
fn search_limit_dedup_and_conflicts() {
    let o = topodyn(&[
        "search",
        "--points",
        "3",
        "--require",
        "mixing",
        "--limit",
        "3",
    ]);
    assert_eq!(data_lines(&stdout(&o)), 3);

    let o = topodyn(&[
        "search",
        "--points",
        "3",
        "--require",
        "supermixing",
        "--dedup",
    ]);
    let keys = keys_of_docs(&stdout(&o));
    let mut unique = keys.clone();
    unique.sort();
    unique.dedup();
    assert_eq!(keys.len(), unique.len());

    let o = topodyn(&[
        "search",
        "--points",
        "3",
        "--require",
        "mixing",
        "--forbid",
        "mixing",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("both required and forbidden"));
}

#[test]
fn verify_paper_default_and_two_points() {
    let o = topodyn(&["verify-paper"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("FAIL")).count(), 0);
    assert_eq!(text.lines().filter(|l| l.starts_with("SKIPPED")).count(), 1);
    assert!(text.contains("infinite space, not machine-checked"));

    let o = topodyn(&["verify-paper", "--max-points", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("universe: 17 exhaustive systems (n <= 2)"));
}

#[test]
fn verify_paper_reports_sampling_seed() {
    let o = topodyn(&[
        "verify-paper",
        "--max-points",
        "1",
        "--samples",
        "50",
        "--seed",
        "9",
    ]);
    assert!(stdout(&o).contains("100 sampled (sizes [4, 5], seed 9)"));
}

#[test]
fn round_trip_through_files() {
    let dir = TempDir::new().unwrap();
    for doc in [A1, A3, A4, ALTERNATING, NOT_HYPERTRANSITIVE] {
        let first = stdout(&topodyn(&["validate", &write(&dir, "in.json", doc)]));
        let second = stdout(&topodyn(&["validate", &write(&dir, "out.json", &first)]));
        assert_eq!(first, second);
    }
}
