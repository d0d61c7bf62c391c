//! Rebuilding the rows of the two concatenation tables and checking each
//! against its printed parameters.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use concat_blocking_core::bounds::{sbs_lower_bound, sbs_upper_bound};
use concat_blocking_core::concat::{concat_distance, Distance};
use concat_blocking_core::construct::{fixture, mds_outer, search_shortest_minimal, simplex, FixtureName};
use concat_blocking_core::geometry::{is_strong_blocking, system_from_code};
use concat_blocking_core::minimal::is_minimal_code;
use concat_blocking_core::{
    certify_minimal_concat, concatenate, ConcatSpec, Error as CoreError, Field, LinearCode, Verdict, PAIRWISE_LIMIT,
};
use serde::{Deserialize, Serialize};

use crate::fieldarg::parse_field;

const MANIFEST: &str = include_str!("../data/tables.toml");

/// Codes with at most this many codewords get an exact distance.
pub const DISTANCE_LIMIT: u128 = 1 << 24;

/// Hyperplane-incidence budget (hyperplanes × points × k) for the
/// geometric strong-blocking check.
pub const GEOMETRIC_LIMIT: u128 = 1 << 30;

#[derive(Debug, Deserialize)]
struct Manifest {
    row: Vec<Row>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Row {
    pub table: u8,
    pub id: u32,
    pub outer: String,
    pub inner: String,
    pub concatenated: String,
    pub shortest: String,
    pub range: Option<[u64; 2]>,
    pub expected: [usize; 3],
    outer_recipe: OuterRecipe,
    inner_recipe: InnerRecipe,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum OuterRecipe {
    MdsOuter {
        field: String,
        base: u64,
        #[serde(rename = "K")]
        k: usize,
    },
    External {
        field: String,
        params: [usize; 3],
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum InnerRecipe {
    Simplex { field: String, k: usize },
    Fixture { name: String },
    Search { q: u64, k: usize, n_max: usize },
    Row { row: u32 },
}

pub fn rows() -> Vec<Row> {
    let m: Manifest = toml::from_str(MANIFEST).expect("embedded table manifest parses");
    m.row
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "SKIPPED")]
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RowReport {
    pub table: u8,
    pub id: u32,
    pub outer: String,
    pub inner: String,
    pub concatenated: String,
    pub shortest: String,
    pub status: Status,
    pub reason: Option<String>,
    /// `[n, k, d]` of the built code, `d` prefixed by `>=` when only bounded.
    pub built: Option<String>,
    pub minimality: Option<String>,
    pub lower_bound: Option<u64>,
    pub formula_upper_bound: Option<u64>,
    pub within_cited_range: Option<bool>,
    pub checks: Vec<Check>,
}

/// Reproduction context: caches searched inners and earlier rows' codes.
#[derive(Default)]
pub struct Reproducer {
    built: HashMap<(u8, u32), LinearCode>,
    searched: HashMap<(u64, usize, usize), LinearCode>,
    outer_files: BTreeMap<u32, LinearCode>,
}

fn field(s: &str) -> Result<Arc<Field>, String> {
    let (p, m) = parse_field(s)?;
    Field::gf(p, m).map(Arc::new).map_err(|e| e.to_string())
}

/// Parses `"[n,k,d]_q"` labels.
fn parse_label(s: &str) -> Option<(usize, usize, usize, u64)> {
    let (body, q) = s.trim().strip_prefix('[')?.split_once("]_")?;
    let v: Vec<usize> = body.split(',').map(|t| t.trim().parse().ok()).collect::<Option<_>>()?;
    if v.len() != 3 {
        return None;
    }
    Some((v[0], v[1], v[2], q.trim().parse().ok()?))
}

fn distance_of(c: &LinearCode) -> Result<Distance, CoreError> {
    if c.size() <= DISTANCE_LIMIT {
        Ok(Distance::Exact(c.min_distance()?))
    } else if c.is_known_mds() {
        Ok(Distance::Exact(c.n() - c.k() + 1))
    } else {
        Err(CoreError::TooLarge { what: "distance enumeration", size: c.size(), limit: DISTANCE_LIMIT })
    }
}

fn label_check(name: &'static str, label: &str, c: &LinearCode) -> Check {
    let Some((n, k, d, q)) = parse_label(label) else {
        return Check { name, ok: false, detail: format!("unparsable label {label}") };
    };
    match distance_of(c) {
        Ok(dist) => {
            let got = format!("[{},{},{}]_{}", c.n(), c.k(), dist.value(), c.q());
            let ok = (c.n(), c.k(), dist.value(), c.q()) == (n, k, d, q);
            Check { name, ok, detail: format!("built {got}, table {label}") }
        }
        Err(e) => Check { name, ok: false, detail: e.to_string() },
    }
}

impl Reproducer {
    pub fn new() -> Self {
        Self::default()
    }

    /// Supplies the outer code for a table-2 row.
    pub fn set_outer(&mut self, row: u32, code: LinearCode) {
        self.outer_files.insert(row, code);
    }

    fn outer(&self, row: &Row) -> Result<Result<LinearCode, String>, CoreError> {
        match &row.outer_recipe {
            OuterRecipe::MdsOuter { field: fs, base, k } => {
                let f = field(fs).map_err(|_| CoreError::BadParams("bad field in manifest"))?;
                Ok(Ok(mds_outer(&f, *base, *k)?))
            }
            OuterRecipe::External { field: fs, params } => match self.outer_files.get(&row.id) {
                Some(c) => {
                    let f = field(fs).map_err(|_| CoreError::BadParams("bad field in manifest"))?;
                    if c.q() != f.order() || c.n() != params[0] || c.k() != params[1] {
                        return Ok(Err(format!(
                            "supplied outer code is [{},{}]_{} but the row needs [{},{}]_{}",
                            c.n(),
                            c.k(),
                            c.q(),
                            params[0],
                            params[1],
                            f.order()
                        )));
                    }
                    Ok(Ok(c.clone()))
                }
                None => Ok(Err("outer code comes from an external best-known-codes database; supply it with --outer-file".into())),
            },
        }
    }

    fn inner(&mut self, row: &Row, all: &[Row]) -> Result<LinearCode, CoreError> {
        match &row.inner_recipe {
            InnerRecipe::Simplex { field: fs, k } => {
                let f = field(fs).map_err(|_| CoreError::BadParams("bad field in manifest"))?;
                simplex(&f, *k)
            }
            InnerRecipe::Fixture { name } => match name.as_str() {
                "ternary935" => fixture(FixtureName::Ternary935, None),
                "binary1566" => fixture(FixtureName::Binary1566, None),
                _ => Err(CoreError::BadParams("unknown fixture in manifest")),
            },
            InnerRecipe::Search { q, k, n_max } => {
                if let Some(c) = self.searched.get(&(*q, *k, *n_max)) {
                    return Ok(c.clone());
                }
                let f = Arc::new(Field::gf(*q, 1)?);
                let (_, c) = search_shortest_minimal(&f, *k, *n_max, true)?;
                self.searched.insert((*q, *k, *n_max), c.clone());
                Ok(c)
            }
            InnerRecipe::Row { row: id } => {
                let key = (row.table, *id);
                if let Some(c) = self.built.get(&key) {
                    return Ok(c.clone());
                }
                let src = all
                    .iter()
                    .find(|r| (r.table, r.id) == key)
                    .ok_or(CoreError::BadParams("chained row not in manifest"))?
                    .clone();
                let outer = self.outer(&src)?.map_err(|_| CoreError::BadParams("chained row is not constructible"))?;
                let inner = self.inner(&src, all)?;
                let c = concatenate(&ConcatSpec::new(outer, inner)?)?;
                self.built.insert(key, c.clone());
                Ok(c)
            }
        }
    }

    pub fn run_row(&mut self, row: &Row, all: &[Row]) -> RowReport {
        let mut report = RowReport {
            table: row.table,
            id: row.id,
            outer: row.outer.clone(),
            inner: row.inner.clone(),
            concatenated: row.concatenated.clone(),
            shortest: row.shortest.clone(),
            status: Status::Skipped,
            reason: None,
            built: None,
            minimality: None,
            lower_bound: None,
            formula_upper_bound: None,
            within_cited_range: None,
            checks: Vec::new(),
        };
        match self.build_row(row, all, &mut report) {
            Ok(()) => {
                report.status = if report.checks.iter().all(|c| c.ok) { Status::Pass } else { Status::Fail };
                if report.status == Status::Fail {
                    let failed: Vec<&str> = report.checks.iter().filter(|c| !c.ok).map(|c| c.name).collect();
                    report.reason = Some(format!("failed checks: {}", failed.join(", ")));
                }
            }
            Err(RowError::Skip(msg)) => {
                report.status = Status::Skipped;
                report.reason = Some(msg);
            }
            Err(RowError::Core(e)) => {
                report.status = Status::Fail;
                report.reason = Some(e.to_string());
            }
        }
        report
    }

    fn build_row(&mut self, row: &Row, all: &[Row], report: &mut RowReport) -> Result<(), RowError> {
        let outer = self.outer(row)?.map_err(RowError::Skip)?;
        let inner = self.inner(row, all)?;
        report.checks.push(label_check("outer parameters", &row.outer, &outer));
        report.checks.push(label_check("inner parameters", &row.inner, &inner));
        let spec = ConcatSpec::new(outer, inner)?;
        let code = concatenate(&spec)?;
        self.built.insert((row.table, row.id), code.clone());

        let dist = concat_distance(&spec, &code, DISTANCE_LIMIT)?;
        report.built = Some(format!("[{},{},{}]_{}", code.n(), code.k(), dist, code.q()));
        let [en, ek, ed] = row.expected;
        report.checks.push(Check {
            name: "length and dimension",
            ok: (code.n(), code.k()) == (en, ek),
            detail: format!("built [{},{}], table [{en},{ek}]", code.n(), code.k()),
        });
        let dist_ok = match dist {
            Distance::Exact(d) => d == ed,
            Distance::AtLeast(b) => b == ed,
        };
        report.checks.push(Check { name: "minimum distance", ok: dist_ok, detail: format!("built {dist}, table {ed}") });

        let cert = certify_minimal_concat(&spec)?;
        let (verdict, how) = if code.size() <= PAIRWISE_LIMIT as u128 {
            (is_minimal_code(&code)?.verdict, "brute force")
        } else if geometric_feasible(&code) {
            (is_strong_blocking(&system_from_code(&code)?)?.verdict, "hyperplane sections")
        } else {
            (cert.verdict, "outer weight-ratio certificate")
        };
        report.minimality = Some(format!("{} ({how}); certificate {}", verdict.as_str(), cert.verdict.as_str()));
        report.checks.push(Check {
            name: "minimality",
            ok: verdict.is_minimal(),
            detail: report.minimality.clone().unwrap_or_default(),
        });
        if cert.verdict == Verdict::CertifiedMinimal {
            report.checks.push(Check {
                name: "certificate soundness",
                ok: verdict.is_minimal(),
                detail: "certified codes must verify as minimal".into(),
            });
        }

        let (k, q) = (code.k() as u64, code.q());
        let lower = sbs_lower_bound(k, q)?;
        report.lower_bound = Some(lower);
        report.formula_upper_bound = Some(sbs_upper_bound(k, q)?);
        report.checks.push(Check {
            name: "lower bound",
            ok: code.n() as u64 >= lower,
            detail: format!("n = {} >= {lower}", code.n()),
        });
        if row.shortest.trim() == "Yes" {
            report.checks.push(Check {
                name: "meets lower bound",
                ok: code.n() as u64 == lower,
                detail: format!("n = {}, lower bound {lower}", code.n()),
            });
        }
        if let Some([lo, hi]) = row.range {
            report.within_cited_range = Some((lo..=hi).contains(&(code.n() as u64)));
        }
        Ok(())
    }
}

fn geometric_feasible(c: &LinearCode) -> bool {
    let hyperplanes = (c.size() - 1) / (c.q() as u128 - 1);
    hyperplanes.saturating_mul(c.n() as u128).saturating_mul(c.k() as u128) <= GEOMETRIC_LIMIT
}

enum RowError {
    Skip(String),
    Core(CoreError),
}

impl From<CoreError> for RowError {
    fn from(e: CoreError) -> Self {
        RowError::Core(e)
    }
}

/// Runs the selected rows of `table` (all rows when `ids` is empty).
pub fn reproduce(table: u8, ids: &[u32], r: &mut Reproducer) -> Vec<RowReport> {
    let all = rows();
    all.iter()
        .filter(|row| row.table == table && (ids.is_empty() || ids.contains(&row.id)))
        .map(|row| r.run_row(row, &all))
        .collect()
}
