use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use concat_blocking::fieldarg::parse_field;
use concat_blocking::formats::{load_code, load_system, write_file, write_gmat, FormatError};
use concat_blocking::report::{self, document};
use concat_blocking::reproduce::{reproduce, Reproducer, Status};
use concat_blocking_core::bounds::{self as bnd, BoundsReport, Value as BoundValue};
use concat_blocking_core::concat::{concat_distance, Distance};
use concat_blocking_core::construct::{self, FixtureName};
use concat_blocking_core::geometry::{
    hyperplane_profile, is_strong_blocking, saturation_radius, subgeometry_embed,
};
use concat_blocking_core::minimal::{ab_condition, is_minimal_code};
use concat_blocking_core::{
    certify_minimal_concat, concatenate, ConcatSpec, Error as CoreError, Field, LinearCode, Verdict, Witness,
};
use serde_json::json;

/// Exit status for a negative verdict.
const EXIT_NEGATIVE: u8 = 1;
/// Exit status when a guard stopped the computation or the answer is open.
const EXIT_GUARDED: u8 = 2;
/// Exit status for usage and input errors.
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "concat-blocking", version, about = "Construct, concatenate and certify minimal codes")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Report wall-clock time on stderr.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a code and write it as .gmat.
    Construct(ConstructArgs),
    /// Concatenate an outer code over GF(q^k) with an inner [n,k]_q code.
    Concat {
        #[arg(long)]
        outer: PathBuf,
        #[arg(long)]
        inner: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also certify minimality from the outer weight ratio.
        #[arg(long)]
        certify: bool,
    },
    /// Minimality and geometric checks.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Hyperplane intersection profile of a point set or code.
    Profile { file: PathBuf },
    /// Closed-form bounds and parameter formulas.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Rebuild the rows of table 1 or table 2.
    Reproduce {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=2))]
        table: u8,
        /// Restrict to these row numbers.
        #[arg(long = "row")]
        rows: Vec<u32>,
        /// Outer code for a single table-2 row (requires exactly one --row).
        #[arg(long)]
        outer_file: Option<PathBuf>,
    },
    /// Parameters and weight distribution of a code.
    Info { file: PathBuf },
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    what: ConstructCmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fixture {
    Ternary935,
    Binary1566,
    FourPoint,
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Simplex code: every point of PG(k-1, q) once.
    Simplex {
        #[arg(long)]
        field: String,
        #[arg(short)]
        k: usize,
    },
    /// Reed-Solomon code (doubly extended when n = q + 1).
    Grs {
        #[arg(long)]
        field: String,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        k: usize,
    },
    /// Reed-Solomon outer code of length qK - q + 1 over GF(q^k).
    MdsOuter {
        #[arg(long)]
        field: String,
        /// Order q of the inner field.
        #[arg(long)]
        base: u64,
        #[arg(short = 'K')]
        big_k: usize,
    },
    /// A stored code.
    Fixture {
        #[arg(value_enum)]
        name: Fixture,
        /// Field of the parametrised outer fixture.
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        i: Option<u64>,
        #[arg(long)]
        j: Option<u64>,
    },
    /// Shortest projective minimal code by exhaustive search.
    Search {
        #[arg(short)]
        q: u64,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        n_max: usize,
        /// Lift the default q in {2,3}, k <= 4 restriction.
        #[arg(long)]
        allow_large: bool,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Exit 0 if minimal, 1 if not, 2 if out of reach.
    Minimal { file: PathBuf },
    /// Exit 0 if the point set is strong blocking, 1 if not, 2 if out of reach.
    Sbs { file: PathBuf },
    /// Saturation radius after embedding into PG(k-1, q^e).
    Saturating {
        file: PathBuf,
        /// Ambient field order q^e, as p^m or an integer.
        #[arg(long)]
        ambient: String,
    },
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// Lower and upper bounds on strong blocking sets in PG(k-1, q).
    Sbs {
        #[arg(short)]
        k: u64,
        #[arg(short)]
        q: u64,
    },
    /// q-ary entropy and the Gilbert-Varshamov rate at relative distance delta.
    Gv {
        #[arg(short)]
        q: u64,
        #[arg(long)]
        delta: f64,
    },
    /// Parameters of the function-field tower construction.
    Tower {
        #[arg(long)]
        q0: u64,
        #[arg(long)]
        h: u32,
        #[arg(long)]
        n: u32,
        /// Also concatenate the outer code with an inner [n,k,d] code.
        #[arg(long, num_args = 3, value_names = ["N", "K", "D"])]
        inner: Option<Vec<u128>>,
    },
    /// Bounds on the smallest rho-saturating set in PG(k-1, q^(rho+1)).
    Saturating {
        #[arg(short)]
        k: u64,
        #[arg(short)]
        q: u64,
        #[arg(long)]
        rho: u64,
    },
    /// Length and distance of the MDS outer codes.
    Mds {
        #[arg(short)]
        q: u64,
        #[arg(short = 'K')]
        big_k: u64,
    },
    /// Parameters of the RT4 two-weight code.
    Rt4 {
        #[arg(long)]
        q0: u64,
    },
    /// Admissible epsilon for an inner [n, 2h, d] code with maximum weight w.
    Epsilon {
        #[arg(long)]
        q0: u64,
        #[arg(long)]
        h: u32,
        #[arg(short)]
        d: u64,
        #[arg(short)]
        w: u64,
    },
}

/// What a command prints and how it exits.
struct Outcome {
    text: String,
    json: serde_json::Value,
    code: u8,
}

impl Outcome {
    fn ok(text: String, json: serde_json::Value) -> Self {
        Outcome { text, json, code: 0 }
    }
}

fn field_arc(s: &str) -> Result<Arc<Field>> {
    let (p, m) = parse_field(s).map_err(|e| anyhow!(e))?;
    Ok(Arc::new(Field::gf(p, m)?))
}

fn gmat_outcome(command: &str, code: &LinearCode, output: Option<&PathBuf>, extra: serde_json::Value) -> Result<Outcome> {
    let text = write_gmat(code);
    if let Some(path) = output {
        write_file(path, &text)?;
    }
    let mut body = json!({ "code": report::code_summary(code), "generator": report::generator_rows(code) });
    if let (Some(obj), serde_json::Value::Object(more)) = (body.as_object_mut(), extra) {
        obj.extend(more);
    }
    let shown = if output.is_some() { String::new() } else { text };
    Ok(Outcome::ok(shown, document(command, body)))
}

fn construct(args: ConstructArgs) -> Result<Outcome> {
    let out = args.output.as_ref();
    match args.what {
        ConstructCmd::Simplex { field, k } => {
            let c = construct::simplex(&field_arc(&field)?, k)?;
            gmat_outcome("construct simplex", &c, out, json!({}))
        }
        ConstructCmd::Grs { field, n, k } => {
            let c = construct::grs(&field_arc(&field)?, n, k)?;
            gmat_outcome("construct grs", &c, out, json!({}))
        }
        ConstructCmd::MdsOuter { field, base, big_k } => {
            let c = construct::mds_outer(&field_arc(&field)?, base, big_k)?;
            gmat_outcome("construct mds-outer", &c, out, json!({}))
        }
        ConstructCmd::Fixture { name, field, i, j } => {
            let c = match name {
                Fixture::Ternary935 => construct::fixture(FixtureName::Ternary935, None)?,
                Fixture::Binary1566 => construct::fixture(FixtureName::Binary1566, None)?,
                Fixture::FourPoint => {
                    let f = field_arc(field.as_deref().context("--field is required for this fixture")?)?;
                    let (i, j) = (i.context("--i is required")?, j.context("--j is required")?);
                    construct::fixture(FixtureName::FourPointOuter { i, j }, Some(&f))?
                }
            };
            gmat_outcome("construct fixture", &c, out, json!({}))
        }
        ConstructCmd::Search { q, k, n_max, allow_large } => {
            if !allow_large && !(matches!(q, 2 | 3) && k <= 4) {
                return Ok(Outcome {
                    text: "search is limited to q in {2,3}, k <= 4; pass --allow-large to lift the guard\n".into(),
                    json: document("construct search", json!({ "guarded": true })),
                    code: EXIT_GUARDED,
                });
            }
            let f = Arc::new(Field::gf(q, 1)?);
            let (n, c) = construct::search_shortest_minimal(&f, k, n_max, allow_large)?;
            let mut o = gmat_outcome("construct search", &c, out, json!({ "n_min": n }))?;
            if out.is_some() {
                o.text = format!("n_min = {n}\n");
            }
            Ok(o)
        }
    }
}

fn concat_cmd(outer: PathBuf, inner: PathBuf, output: Option<PathBuf>, certify: bool) -> Result<Outcome> {
    let spec = ConcatSpec::new(load_code(&outer)?, load_code(&inner)?)?;
    let code = concatenate(&spec)?;
    let dist = concat_distance(&spec, &code, 1 << 24)?;
    let mut extra = json!({ "distance": dist.to_string() });
    let mut lines = String::new();
    let mut exit = 0;
    if certify {
        let cert = certify_minimal_concat(&spec)?;
        extra["certificate"] = report::certificate(&cert);
        lines.push_str(&format!("certificate: {}\n", cert.verdict.as_str()));
        if cert.verdict != Verdict::CertifiedMinimal {
            exit = EXIT_GUARDED;
        }
    }
    let mut o = gmat_outcome("concat", &code, output.as_ref(), extra)?;
    if output.is_some() {
        o.text = format!("[{},{},{}]_{}\n{lines}", code.n(), code.k(), dist, code.q());
    } else {
        eprint!("{lines}");
    }
    o.code = exit;
    Ok(o)
}

fn witness_text(w: &Option<Witness>) -> String {
    match w {
        Some(Witness::Codewords { codeword, sub_codeword, .. }) => {
            let s = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
            format!("codeword ({}) has support containing that of ({})", s(codeword), s(sub_codeword))
        }
        Some(Witness::Hyperplane { normal, rank }) => {
            let s = normal.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
            format!("hyperplane with normal ({s}) meets the set in rank {rank}")
        }
        None => String::new(),
    }
}

fn check_minimal(file: PathBuf) -> Result<Outcome> {
    let code = load_code(&file)?;
    let cert = match is_minimal_code(&code) {
        Ok(c) => c,
        Err(CoreError::TooLarge { .. }) => match ab_condition(&code) {
            Ok(c) => c,
            Err(CoreError::TooLarge { what, size, limit }) => {
                return Ok(Outcome {
                    text: format!("inconclusive: {what} of size {size} exceeds {limit}\n"),
                    json: document("check minimal", json!({ "verdict": "inconclusive", "reason": "too large" })),
                    code: EXIT_GUARDED,
                })
            }
            Err(e) => return Err(e.into()),
        },
        Err(e) => return Err(e.into()),
    };
    let code_out = match cert.verdict {
        Verdict::Minimal | Verdict::CertifiedMinimal => 0,
        Verdict::NotMinimal => EXIT_NEGATIVE,
        Verdict::Inconclusive => EXIT_GUARDED,
    };
    let mut text = format!("{} ({})\n", cert.verdict.as_str(), cert.method.as_str());
    if cert.witness.is_some() {
        text.push_str(&witness_text(&cert.witness));
        text.push('\n');
    }
    Ok(Outcome { text, json: document("check minimal", json!({ "certificate": report::certificate(&cert) })), code: code_out })
}

fn check_sbs(file: PathBuf) -> Result<Outcome> {
    let sys = load_system(&file)?;
    match is_strong_blocking(&sys) {
        Ok(cert) => {
            let code = if cert.verdict == Verdict::Minimal { 0 } else { EXIT_NEGATIVE };
            let label = if code == 0 { "strong blocking" } else { "not strong blocking" };
            let mut text = format!("{label}\n");
            if cert.witness.is_some() {
                text.push_str(&witness_text(&cert.witness));
                text.push('\n');
            }
            let body = json!({ "strong_blocking": code == 0, "certificate": report::certificate(&cert) });
            Ok(Outcome { text, json: document("check sbs", body), code })
        }
        Err(CoreError::NotSpanning { rank, dim }) => Ok(Outcome {
            text: format!("not strong blocking: the points span rank {rank} of {dim}\n"),
            json: document("check sbs", json!({ "strong_blocking": false, "rank": rank, "dim": dim })),
            code: EXIT_NEGATIVE,
        }),
        Err(e) => Err(e.into()),
    }
}

fn check_saturating(file: PathBuf, ambient: &str) -> Result<Outcome> {
    let sys = load_system(&file)?;
    let (p, m) = parse_field(ambient).map_err(|e| anyhow!(e))?;
    let f = sys.field();
    if p != f.p() || m % f.m() != 0 {
        bail!("GF({}^{}) is not an extension of GF({})", p, m, f.order());
    }
    let e = m / f.m();
    let embedded = if e == 1 { sys.clone() } else { subgeometry_embed(&sys, e)? };
    let rho = saturation_radius(&embedded)?;
    let q = embedded.field().order();
    let text = format!("saturation radius {rho} in PG({}, {q})\n", embedded.dim() - 1);
    let body = json!({ "rho": rho, "ambient_q": q, "dim": embedded.dim(), "points": embedded.support().len() });
    Ok(Outcome::ok(text, document("check saturating", body)))
}

fn profile(file: PathBuf) -> Result<Outcome> {
    let sys = load_system(&file)?;
    let prof = hyperplane_profile(&sys)?;
    let verdict = prof.verdict();
    let text = format!(
        "n = {}\nmin hyperplane intersection = {}\nmax hyperplane intersection = {}\nminimum distance = {}\nfold blocking level = {}\nweight-ratio test: {}\n",
        prof.n,
        prof.min,
        prof.max,
        prof.n - prof.max,
        prof.min,
        verdict.as_str()
    );
    let body = json!({
        "n": prof.n,
        "min": prof.min,
        "max": prof.max,
        "distance": prof.n - prof.max,
        "fold_level": prof.min,
        "verdict": verdict.as_str(),
        "multiplicity": sys.has_multiplicity(),
    });
    Ok(Outcome::ok(text, document("profile", body)))
}

fn bounds_text(r: &BoundsReport) -> String {
    let mut s = String::new();
    for (k, v) in &r.values {
        match v {
            BoundValue::Int(i) => s.push_str(&format!("{k} = {i}\n")),
            BoundValue::Real(x) => s.push_str(&format!("{k} = {x}\n")),
        }
    }
    s
}

fn bounds(cmd: BoundsCmd) -> Result<Outcome> {
    let (kind, r) = match cmd {
        BoundsCmd::Sbs { k, q } => ("sbs", bnd::sbs_report(k, q)?),
        BoundsCmd::Gv { q, delta } => {
            let r = BoundsReport {
                context: vec![("q", q)],
                values: vec![
                    ("entropy", BoundValue::Real(bnd::q_entropy(q, delta)?)),
                    ("gv_rate", BoundValue::Real(bnd::gv_rate(q, delta)?)),
                ],
            };
            ("gv", r)
        }
        BoundsCmd::Tower { q0, h, n, inner } => {
            let mut r = bnd::tower_report(q0, h, n)?;
            if let Some(v) = inner {
                let (len, dim, dist) = bnd::tower_params(q0, h, n)?.with_inner(v[0], v[1], v[2])?;
                r.values.push(("inner_concat_len", BoundValue::Int(len)));
                r.values.push(("inner_concat_dim", BoundValue::Int(dim)));
                r.values.push(("inner_concat_dist_lb", BoundValue::Int(dist)));
            }
            ("tower", r)
        }
        BoundsCmd::Saturating { k, q, rho } => ("saturating", bnd::saturating_report(k, q, rho)?),
        BoundsCmd::Mds { q, big_k } => {
            let (n, d) = bnd::mds_outer_params(q, big_k)?;
            let r = BoundsReport {
                context: vec![("q", q), ("K", big_k)],
                values: vec![("N", BoundValue::Int(n as u128)), ("D", BoundValue::Int(d as u128))],
            };
            ("mds", r)
        }
        BoundsCmd::Rt4 { q0 } => {
            let p = bnd::rt4_params(q0)?;
            let r = BoundsReport {
                context: vec![("q0", q0)],
                values: vec![
                    ("n", BoundValue::Int(p.n as u128)),
                    ("dim", BoundValue::Int(p.dim as u128)),
                    ("d", BoundValue::Int(p.d as u128)),
                    ("w", BoundValue::Int(p.w as u128)),
                    ("ratio", BoundValue::Real(p.ratio.0 as f64 / p.ratio.1 as f64)),
                ],
            };
            ("rt4", r)
        }
        BoundsCmd::Epsilon { q0, h, d, w } => {
            let r = BoundsReport {
                context: vec![("q0", q0), ("h", h as u64), ("d", d), ("w", w)],
                values: vec![("epsilon_limit", BoundValue::Real(bnd::epsilon_limit(q0, h, d, w)?))],
            };
            ("epsilon", r)
        }
    };
    Ok(Outcome::ok(bounds_text(&r), document("bounds", report::bounds(kind, &r))))
}

fn reproduce_cmd(table: u8, rows: Vec<u32>, outer_file: Option<PathBuf>) -> Result<Outcome> {
    let mut r = Reproducer::new();
    if let Some(path) = outer_file {
        if rows.len() != 1 {
            bail!("--outer-file needs exactly one --row");
        }
        r.set_outer(rows[0], load_code(&path)?);
    }
    let reports = reproduce(table, &rows, &mut r);
    if reports.is_empty() {
        bail!("no matching rows in table {table}");
    }
    let mut text = String::new();
    for rep in &reports {
        let mut line = format!("table {} row {}: {} x {} -> {}", rep.table, rep.id, rep.outer, rep.inner, rep.concatenated);
        if let Some(b) = &rep.built {
            line.push_str(&format!("; built {b}"));
        }
        if let Some(m) = &rep.minimality {
            line.push_str(&format!("; {m}"));
        }
        if let Some(inr) = rep.within_cited_range {
            line.push_str(&format!("; cited range {} {}", rep.shortest, if inr { "contains n" } else { "excludes n" }));
        }
        line.push_str(&format!(": {}", rep.status.as_str()));
        if let Some(reason) = &rep.reason {
            line.push_str(&format!(" ({reason})"));
        }
        text.push_str(&line);
        text.push('\n');
    }
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    let (pass, fail, skip) = (count(Status::Pass), count(Status::Fail), count(Status::Skipped));
    text.push_str(&format!("summary: {pass} passed, {fail} failed, {skip} skipped\n"));
    let body = json!({ "table": table, "rows": reports, "passed": pass, "failed": fail, "skipped": skip });
    Ok(Outcome { text, json: document("reproduce", body), code: if fail > 0 { EXIT_NEGATIVE } else { 0 } })
}

fn info(file: PathBuf) -> Result<Outcome> {
    let code = load_code(&file)?;
    let flags = code.degeneracy_flags();
    let mut text = format!("[{}, {}]_{}\nprojective: {}\nnondegenerate: {}\n", code.n(), code.k(), code.q(), flags.projective, flags.nondegenerate);
    let mut body = json!({
        "code": report::code_summary(&code),
        "projective": flags.projective,
        "nondegenerate": flags.nondegenerate,
    });
    match code.weight_distribution() {
        Ok(w) => {
            let d = w.min_weight().unwrap_or(0);
            text.push_str(&format!("minimum distance: {d}\nmaximum weight: {}\nweights:", w.max_weight()));
            for (i, a) in w.nonzero() {
                text.push_str(&format!(" {i}:{a}"));
            }
            text.push('\n');
            body["distance"] = json!(Distance::Exact(d).value());
            body["max_weight"] = json!(w.max_weight());
            body["weights"] = report::weights(&w);
        }
        Err(CoreError::TooLarge { .. }) => text.push_str("weight distribution: too large to enumerate\n"),
        Err(e) => return Err(e.into()),
    }
    if code.k() >= 2 {
        let lower = bnd::sbs_lower_bound(code.k() as u64, code.q())?;
        text.push_str(&format!("strong blocking lower bound: {lower}\n"));
        body["sbs_lower_bound"] = json!(lower);
    }
    Ok(Outcome::ok(text, document("info", body)))
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.cmd {
        Cmd::Construct(args) => construct(args),
        Cmd::Concat { outer, inner, output, certify } => concat_cmd(outer, inner, output, certify),
        Cmd::Check(CheckCmd::Minimal { file }) => check_minimal(file),
        Cmd::Check(CheckCmd::Sbs { file }) => check_sbs(file),
        Cmd::Check(CheckCmd::Saturating { file, ambient }) => check_saturating(file, &ambient),
        Cmd::Profile { file } => profile(file),
        Cmd::Bounds(cmd) => bounds(cmd),
        Cmd::Reproduce { table, rows, outer_file } => reproduce_cmd(table, rows, outer_file),
        Cmd::Info { file } => info(file),
    }
}

/// Guards map to 2, an empty search to 1, everything else is an input error.
fn error_code(e: &anyhow::Error) -> u8 {
    let core = e
        .downcast_ref::<CoreError>()
        .or_else(|| match e.downcast_ref::<FormatError>() {
            Some(FormatError::Core(c)) => Some(c),
            _ => None,
        });
    match core {
        Some(CoreError::TooLarge { .. }) => EXIT_GUARDED,
        Some(CoreError::NotFound) => EXIT_NEGATIVE,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let (json, timing) = (cli.json, cli.timing);
    let start = Instant::now();
    let result = run(cli);
    if timing {
        eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(o) => {
            if json {
                println!("{}", report::to_string(&o.json));
            } else {
                print!("{}", o.text);
            }
            ExitCode::from(o.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(error_code(&e))
        }
    }
}
