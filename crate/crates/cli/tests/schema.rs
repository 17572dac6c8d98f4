use std::process::Command;

use genstirling_cli::document::TableDocument;
use serde_json::{json, Value};

fn validator() -> jsonschema::Validator {
    let text = include_str!("../schema/table_document.schema.json");
    jsonschema::validator_for(&serde_json::from_str(text).unwrap()).expect("schema compiles")
}

fn table(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_genstirling"))
        .arg("table")
        .args(args)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn every_family_emits_conforming_documents() {
    let v = validator();
    for family in [
        "stirling",
        "eulerian",
        "rwhitney-eulerian",
        "lah",
        "qstirling",
        "qeulerian",
        "qwhitney",
        "qrwhitney-eulerian",
        "estirling",
        "eshifted-stirling",
        "st-stirling",
        "erook",
        "elah",
        "eeulerian",
        "erwhitney-eulerian",
    ] {
        let text = table(&["--family", family, "--n", "4", "--seed", "3"]);
        let raw: Value = serde_json::from_str(&text).unwrap();
        if let Err(e) = v.validate(&raw) {
            panic!("{family}: {e}");
        }
        let doc: TableDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_value(&doc).unwrap(), raw, "{family}");
        assert_eq!(doc.rows.len(), 15, "{family}");
    }
}

#[test]
fn schema_rejects_malformed_documents() {
    let v = validator();
    let good = json!({
        "schema_version": 1,
        "family": "qstirling",
        "params": {"n": "0"},
        "rows": [{"n": 0, "k": 0, "value": "1"}]
    });
    assert!(v.is_valid(&good));
    let mut bad = good.clone();
    bad["schema_version"] = json!(2);
    assert!(!v.is_valid(&bad));
    let mut bad = good.clone();
    bad["rows"][0]["value"] = json!({"re": 1.0});
    assert!(!v.is_valid(&bad));
    let mut bad = good.clone();
    bad["extra"] = json!(true);
    assert!(!v.is_valid(&bad));
    let mut bad = good;
    bad["rows"][0]["n"] = json!(-1);
    assert!(!v.is_valid(&bad));
}
