use std::path::PathBuf;
use std::sync::Arc;

use gblocks_core::chartab::CharacterTable;
use gblocks_core::groupspec::parse_group_spec;
use gblocks_core::pipeline::{
    default_corpus, load_corpus, run_compute, run_corpus, CellStatus, CheckLevel, RunConfig, CORPUS_GROUPS,
};
use gblocks_core::Error;

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("pipeline").join(name);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn cfg(group: &str, p: u64, check: CheckLevel) -> RunConfig {
    RunConfig { check, ..RunConfig::new(group, p) }
}

#[test]
fn s3_theorem_report() {
    let r = run_compute(&cfg("S3", 3, CheckLevel::Theorem)).unwrap();
    assert_eq!(r.order, 6);
    assert_eq!(r.m_size, 8);
    assert_eq!(r.blocks_psi.len(), 3);
    assert_eq!(r.block_pairs.len(), 3);
    assert_eq!(r.bijection_ok, Some(true));
    assert!(r.passed());
    assert_eq!(r.exit_code(), 0);
    assert_eq!(r.pairs[0].label, "((), 0#1)");
    assert!(r.timings_ms.is_empty());
    assert!(r.table.is_none());
    for key in ["bse_partition", "bse_nonempty", "bse_equals_psi", "bse_injective", "orthogonality"] {
        assert_eq!(r.checks.get(key), Some(&true), "{key}");
    }
    assert!(!r.checks.contains_key("morphism"));
}

#[test]
fn json_schema_keys() {
    let r = run_compute(&cfg("S3", 2, CheckLevel::Theorem)).unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    for key in ["group", "order", "prime", "m_size", "pairs", "blocks_psi", "block_pairs", "checks", "timings_ms"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert!(v["block_pairs"][0].get("members").is_some());
    let sizes: Vec<usize> = v["blocks_psi"].as_array().unwrap().iter().map(|b| b.as_array().unwrap().len()).collect();
    let mut sorted = sizes.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, vec![1, 1, 1, 1, 4]);
}

#[test]
fn table_level_c2() {
    let r = run_compute(&cfg("C2", 2, CheckLevel::Table)).unwrap();
    let t = r.table.as_ref().unwrap();
    assert_eq!(t.chars.len(), 2);
    assert!(t.chars.iter().all(|row| row.len() == 2));
    assert!(r.blocks_psi.is_empty());
    assert!(r.bijection_ok.is_none());
    assert!(r.to_text().contains("χ1"));
}

#[test]
fn timings_only_on_request() {
    let mut c = cfg("S3", 3, CheckLevel::All);
    c.timings = true;
    let r = run_compute(&c).unwrap();
    assert!(r.timings_ms.contains_key("psi"));
}

#[test]
fn error_exit_codes() {
    let e = run_compute(&cfg("S3", 4, CheckLevel::Table)).unwrap_err();
    assert_eq!(e.exit_code(), 3);
    assert!(e.to_string().contains("not prime"));
    let mut capped = cfg("S5", 2, CheckLevel::Table);
    capped.order_cap = 50;
    let e = run_compute(&capped).unwrap_err();
    assert!(matches!(e, Error::OrderCap { .. }));
    assert_eq!(e.exit_code(), 2);
    assert_eq!(run_compute(&cfg("Z3", 2, CheckLevel::Table)).unwrap_err().exit_code(), 3);
}

#[test]
fn default_corpus_cells() {
    let cells = default_corpus(&RunConfig::new("", 2));
    assert_eq!(cells.len(), 21);
    let groups: Vec<&str> = cells.iter().map(|c| c.group.as_str()).collect();
    for g in CORPUS_GROUPS {
        assert!(groups.contains(&g));
    }
    // one prime coprime to the order in every group
    for g in CORPUS_GROUPS {
        let order = parse_group_spec(g).unwrap().build(1000).unwrap().order() as u64;
        assert_eq!(cells.iter().filter(|c| c.group == g && !order.is_multiple_of(c.prime)).count(), 1, "{g}");
    }
}

#[test]
fn corrupted_table_fails_only_its_cell() {
    let dir = scratch("corrupt");
    let g = Arc::new(parse_group_spec("S3").unwrap().build(100).unwrap());
    let mut json = CharacterTable::compute(g).unwrap().to_json();
    json.chars[1][1] = vec![(0, 5, 1)];
    std::fs::write(dir.join("bad.json"), serde_json::to_string(&json).unwrap()).unwrap();
    let corpus = r#"[
        {"group": "S3", "prime": 2},
        {"group": "S3", "prime": 3, "table_in": "bad.json"},
        {"group": "C6", "prime": 3, "check": "blocks"}
    ]"#;
    std::fs::write(dir.join("corpus.json"), corpus).unwrap();
    let cells = load_corpus(&dir.join("corpus.json"), &RunConfig::new("", 2)).unwrap();
    assert_eq!(cells[1].table_in.as_deref(), Some(dir.join("bad.json").as_path()));
    assert_eq!(cells[2].check, CheckLevel::Blocks);
    let ledger = run_corpus(&cells);
    let status: Vec<&CellStatus> = ledger.cells.iter().map(|c| &c.status).collect();
    assert_eq!(status, vec![&CellStatus::Pass, &CellStatus::Error, &CellStatus::Pass]);
    assert_ne!(ledger.cells[1].exit_code, 0);
    assert_eq!(ledger.summary.failed, 1);
    assert_eq!(ledger.exit_code(), 1);
}

#[test]
fn ingested_table_gives_same_report() {
    let dir = scratch("good");
    let g = Arc::new(parse_group_spec("A4").unwrap().build(100).unwrap());
    let json = CharacterTable::compute(g).unwrap().to_json();
    let path = dir.join("a4.json");
    std::fs::write(&path, serde_json::to_string(&json).unwrap()).unwrap();
    let plain = run_compute(&cfg("A4", 2, CheckLevel::Theorem)).unwrap();
    let mut c = cfg("A4", 2, CheckLevel::Theorem);
    c.table_in = Some(path);
    assert_eq!(run_compute(&c).unwrap(), plain);
}

#[test]
fn empty_corpus() {
    let ledger = run_corpus(&[]);
    assert!(ledger.cells.is_empty());
    assert_eq!(ledger.summary.total, 0);
    assert_eq!(ledger.exit_code(), 0);
}

#[test]
fn reports_are_deterministic() {
    let c = cfg("S3xC2", 3, CheckLevel::All);
    assert_eq!(run_compute(&c).unwrap().to_json(), run_compute(&c).unwrap().to_json());
}
