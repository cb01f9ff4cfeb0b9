//! End-to-end runs on `(G, p)` cells and their reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::Prime;
use crate::chartab::{CharacterTable, TableJson};
use crate::context::Context;
use crate::cyclotomic::RootChoice;
use crate::error::Result;
use crate::group::DEFAULT_ORDER_CAP;
use crate::groupspec::parse_group_spec;
use crate::grothendieck::enumerate_pairs;
use crate::theorem::{self, Analysis};

/// Checks above this group order skip the exhaustive `|G|`-term sums.
pub const EXHAUSTIVE_LIMIT: usize = 24;

/// Random triples per group in the morphism check.
pub const MORPHISM_SAMPLES: usize = 200;

const MORPHISM_SEED: u64 = 0x6b67_6267;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckLevel {
    Table,
    Blocks,
    Theorem,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub group: String,
    pub prime: u64,
    pub check: CheckLevel,
    pub table_in: Option<PathBuf>,
    pub alt_root: bool,
    pub order_cap: usize,
    pub timings: bool,
}

impl RunConfig {
    pub fn new(group: impl Into<String>, prime: u64) -> Self {
        RunConfig {
            group: group.into(),
            prime,
            check: CheckLevel::Theorem,
            table_in: None,
            alt_root: false,
            order_cap: DEFAULT_ORDER_CAP,
            timings: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairInfo {
    pub index: usize,
    pub g: String,
    pub chi: usize,
    pub degree: u64,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPairInfo {
    pub s: String,
    pub e: usize,
    /// Characters of `C_G(s)` in the block `e`.
    pub chars: Vec<usize>,
    /// `B_G(s,e)` as pair indices.
    pub members: Vec<usize>,
}

/// Result of one `(G, p)` run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockReport {
    pub group: String,
    pub order: usize,
    pub prime: u64,
    pub m_size: usize,
    pub pairs: Vec<PairInfo>,
    pub blocks_psi: Vec<Vec<usize>>,
    pub block_pairs: Vec<BlockPairInfo>,
    pub bijection_ok: Option<bool>,
    /// Characters or blocks merged by stabilizer actions.
    pub fusions: usize,
    pub checks: BTreeMap<String, bool>,
    pub timings_ms: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub table: Option<TableJson>,
}

impl BlockReport {
    /// Whether every requested check passed.
    pub fn passed(&self) -> bool {
        self.checks.values().all(|&v| v) && self.bijection_ok != Some(false)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "group {} (order {}), p = {}", self.group, self.order, self.prime);
        let _ = writeln!(out, "|M(G)| = {}", self.m_size);
        if let Some(t) = &self.table {
            let _ = writeln!(out, "character table (conductor {}):", t.conductor);
            let _ = writeln!(out, "  classes: {}", t.classes.join("  "));
            for (i, row) in t.chars.iter().enumerate() {
                let vals: Vec<String> = row.iter().map(|v| format_triples(v, t.conductor)).collect();
                let _ = writeln!(out, "  χ{i}: {}", vals.join("  "));
            }
        }
        if !self.blocks_psi.is_empty() {
            let _ = writeln!(out, "Ψ-blocks ({}):", self.blocks_psi.len());
            for (b, members) in self.blocks_psi.iter().enumerate() {
                let labels: Vec<&str> = members.iter().map(|&a| self.pairs[a].label.as_str()).collect();
                let _ = writeln!(out, "  block {b} [{}]: {}", members.len(), labels.join(" "));
            }
        }
        if !self.block_pairs.is_empty() {
            let _ = writeln!(out, "block pairs ({}):", self.block_pairs.len());
            for bp in &self.block_pairs {
                let _ = writeln!(out, "  s = {}, e = {} {:?} -> {:?}", bp.s, bp.e, bp.chars, bp.members);
            }
        }
        let _ = writeln!(out, "checks:");
        for (name, ok) in &self.checks {
            let _ = writeln!(out, "  {} {name}", if *ok { "pass" } else { "FAIL" });
        }
        for (name, ms) in &self.timings_ms {
            let _ = writeln!(out, "  time {name}: {ms} ms");
        }
        if let Some(ok) = self.bijection_ok {
            let _ = writeln!(out, "bijection_ok: {ok}");
        }
        let _ = writeln!(out, "verdict: {}", if self.passed() { "ok" } else { "FAILED" });
        out
    }
}

fn format_triples(v: &[(i64, i64, i64)], n: u32) -> String {
    if v.is_empty() {
        return "0".into();
    }
    let terms: Vec<String> = v
        .iter()
        .map(|&(e, a, b)| {
            let coef = if b == 1 { a.to_string() } else { format!("{a}/{b}") };
            if e == 0 {
                coef
            } else {
                format!("{coef}·z{n}^{e}")
            }
        })
        .collect();
    terms.join("+")
}

struct Timer {
    enabled: bool,
    start: Instant,
    out: BTreeMap<String, u64>,
}

impl Timer {
    fn lap(&mut self, name: &str) {
        if self.enabled {
            self.out.insert(name.to_string(), self.start.elapsed().as_millis() as u64);
            self.start = Instant::now();
        }
    }
}

/// Runs the pipeline up to `cfg.check` and collects every check result.
pub fn run_compute(cfg: &RunConfig) -> Result<BlockReport> {
    let mut timer = Timer { enabled: cfg.timings, start: Instant::now(), out: BTreeMap::new() };
    let p = Prime::new(cfg.prime)?;
    let spec = parse_group_spec(&cfg.group)?;
    let group = Arc::new(spec.build(cfg.order_cap)?);
    let table = match &cfg.table_in {
        Some(path) => Some(CharacterTable::ingest_file(group.clone(), path)?),
        None => None,
    };
    let ctx = Context::new(group.clone(), p, table, RootChoice::Canonical)?;
    timer.lap("tables");

    let mut checks = BTreeMap::new();
    let (orth, divides) = theorem::check_tables(&ctx);
    checks.insert("orthogonality".to_string(), orth);
    checks.insert("degree_divisibility".to_string(), divides);
    checks.insert("central_integrality".to_string(), theorem::check_central_integrality(&ctx));
    checks.insert("pprime_compatible".to_string(), ctx.data().is_pprime_compatible());

    let mut report = BlockReport {
        group: cfg.group.clone(),
        order: group.order(),
        prime: p.get(),
        m_size: 0,
        pairs: Vec::new(),
        blocks_psi: Vec::new(),
        block_pairs: Vec::new(),
        bijection_ok: None,
        fusions: 0,
        checks: BTreeMap::new(),
        timings_ms: BTreeMap::new(),
        table: None,
    };

    if cfg.check == CheckLevel::Table {
        let pairs = enumerate_pairs(&ctx);
        report.m_size = pairs.len();
        report.fusions = pairs.fusions();
        report.table = Some(ctx.table().to_json());
        report.checks = checks;
        timer.lap("report");
        report.timings_ms = timer.out;
        return Ok(report);
    }

    let an = Analysis::compute(ctx)?;
    timer.lap("psi");
    let pairs = an.pairs();
    report.m_size = pairs.len();
    report.pairs = (0..pairs.len())
        .map(|i| {
            let pr = pairs.get(i);
            PairInfo {
                index: i,
                g: group.element(pr.g).to_string(),
                chi: pr.chi,
                degree: pr.degree,
                label: pairs.label(&an.ctx, i),
            }
        })
        .collect();
    report.blocks_psi = an.psi_blocks.blocks().to_vec();
    report.block_pairs = an
        .block_pairs
        .pairs
        .iter()
        .zip(&an.bse)
        .map(|(bp, set)| BlockPairInfo {
            s: group.element(bp.s).to_string(),
            e: bp.e,
            chars: bp.chars.clone(),
            members: set.iter().copied().collect(),
        })
        .collect();
    report.fusions = pairs.fusions() + an.block_pairs.fusions;

    checks.insert("block_idempotents".to_string(), theorem::check_block_idempotents_all(&an)?);
    checks.insert("e1_identity".to_string(), theorem::check_e1(&an));
    checks.insert("block_inclusion".to_string(), theorem::check_block_inclusion(&an));
    checks.insert("p_part_constant".to_string(), theorem::check_p_part_constant(&an));
    checks.insert("p_part_gamma".to_string(), theorem::check_p_part_gamma(&an));
    checks.insert("brauer_partition".to_string(), theorem::check_brauer_partition(&an)?);
    checks.insert("brauer_multiplicative".to_string(), theorem::check_brauer_multiplicative(&an));
    checks.insert("brauer_central".to_string(), theorem::check_brauer_central(&an)?);
    timer.lap("block_checks");

    if cfg.check >= CheckLevel::Theorem {
        let main = theorem::verify_main_theorem(&an);
        checks.insert("bse_partition".to_string(), main.partition);
        checks.insert("bse_nonempty".to_string(), main.nonempty);
        checks.insert("bse_equals_psi".to_string(), main.equals_psi);
        checks.insert("bse_injective".to_string(), main.injective);
        checks.insert("bse_inside_psi_block".to_string(), theorem::check_bse_inclusion(&an));
        report.bijection_ok = Some(main.bijection_ok());
        if cfg.alt_root {
            checks.insert("alt_root_independence".to_string(), theorem::check_alt_root(&an)?);
        }
        timer.lap("theorem");
    }

    if cfg.check == CheckLevel::All {
        let s = theorem::check_structure(&an.psi, MORPHISM_SAMPLES, MORPHISM_SEED ^ group.order() as u64);
        checks.insert("structure_integral".to_string(), s.integral);
        checks.insert("structure_unit".to_string(), s.unit);
        checks.insert("structure_commutative".to_string(), s.commutative);
        checks.insert("morphism".to_string(), s.morphism);
        timer.lap("structure");
        if group.order() <= EXHAUSTIVE_LIMIT {
            checks.insert("psi_two_paths".to_string(), theorem::check_psi_two_paths(&an)?);
            checks.insert("eta_integrality".to_string(), theorem::check_eta_integrality(&an.ctx));
            timer.lap("exhaustive");
        }
    }
    report.checks = checks;
    report.timings_ms = timer.out;
    Ok(report)
}

/// One corpus entry as read from JSON.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub group: String,
    pub prime: u64,
    #[serde(default)]
    pub check: Option<CheckLevel>,
    #[serde(default)]
    pub table_in: Option<PathBuf>,
    #[serde(default)]
    pub alt_root: Option<bool>,
}

/// Reads a JSON array of corpus entries; relative table paths resolve against
/// the corpus file's directory. `defaults` supplies the fields an entry omits.
pub fn load_corpus(path: &Path, defaults: &RunConfig) -> Result<Vec<RunConfig>> {
    let text = std::fs::read_to_string(path)?;
    let entries: Vec<CorpusEntry> = serde_json::from_str(&text)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    Ok(entries
        .into_iter()
        .map(|e| RunConfig {
            group: e.group,
            prime: e.prime,
            check: e.check.unwrap_or(defaults.check),
            table_in: e.table_in.map(|t| if t.is_relative() { dir.join(t) } else { t }),
            alt_root: e.alt_root.unwrap_or(defaults.alt_root),
            order_cap: defaults.order_cap,
            timings: defaults.timings,
        })
        .collect())
}

/// Groups of the default corpus.
pub const CORPUS_GROUPS: [&str; 8] = ["S3", "C6", "D8", "Q8", "A4", "S4", "C2xC4", "S3xC2"];

/// Every corpus group with each prime of {2, 3} dividing its order, plus the
/// smallest prime of {2, 3, 5} that does not.
pub fn default_corpus(template: &RunConfig) -> Vec<RunConfig> {
    let mut out = Vec::new();
    for g in CORPUS_GROUPS {
        let order = parse_group_spec(g).and_then(|s| s.build(template.order_cap)).map(|g| g.order()).unwrap_or(1);
        let mut primes: Vec<u64> = [2, 3].into_iter().filter(|p| (order as u64).is_multiple_of(*p)).collect();
        if let Some(q) = [2, 3, 5].into_iter().find(|p| !(order as u64).is_multiple_of(*p)) {
            primes.push(q);
        }
        primes.sort_unstable();
        for p in primes {
            out.push(RunConfig { group: g.to_string(), prime: p, ..template.clone() });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CellStatus {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellResult {
    pub group: String,
    pub prime: u64,
    pub status: CellStatus,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub report: Option<BlockReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusLedger {
    pub cells: Vec<CellResult>,
    pub summary: CorpusSummary,
}

impl CorpusLedger {
    pub fn exit_code(&self) -> i32 {
        if self.summary.failed == 0 {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ledger serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cells {
            let status = match c.status {
                CellStatus::Pass => "pass",
                CellStatus::Fail => "FAIL",
                CellStatus::Error => "ERROR",
            };
            let blocks = c.report.as_ref().map_or(String::new(), |r| {
                format!(" |M| = {}, {} blocks", r.m_size, r.blocks_psi.len())
            });
            let err = c.error.as_ref().map_or(String::new(), |e| format!(": {e}"));
            let _ = writeln!(out, "{status:5} {} p={}{blocks}{err}", c.group, c.prime);
        }
        let s = &self.summary;
        let _ = writeln!(out, "{} cells, {} passed, {} failed", s.total, s.passed, s.failed);
        out
    }
}

fn run_cell(cfg: &RunConfig) -> CellResult {
    match run_compute(cfg) {
        Ok(r) => CellResult {
            group: cfg.group.clone(),
            prime: cfg.prime,
            status: if r.passed() { CellStatus::Pass } else { CellStatus::Fail },
            exit_code: r.exit_code(),
            error: None,
            report: Some(r),
        },
        Err(e) => CellResult {
            group: cfg.group.clone(),
            prime: cfg.prime,
            status: CellStatus::Error,
            exit_code: e.exit_code(),
            error: Some(e.to_string()),
            report: None,
        },
    }
}

/// Runs every cell (concurrently), keeping input order; failures stay per cell.
pub fn run_corpus(cells: &[RunConfig]) -> CorpusLedger {
    let results: Vec<CellResult> = cells.par_iter().map(run_cell).collect();
    let passed = results.iter().filter(|c| c.status == CellStatus::Pass).count();
    CorpusLedger {
        summary: CorpusSummary { total: results.len(), passed, failed: results.len() - passed },
        cells: results,
    }
}
