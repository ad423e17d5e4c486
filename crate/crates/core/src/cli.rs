//! Command-line front end.
//!
//! Every subcommand reads JSON inputs, writes one JSON report (to stdout or
//! `--out`) and a one-line summary to stderr. Exit codes: `test-zero` and
//! `find-nonzero` return 0 when the polynomial vanishes and 1 when a nonzero
//! was found; `solve` returns 0 with a solution and 1 without;
//! `verify-bounds` returns 0 when every check passed and 1 otherwise;
//! `reduce` returns 0. Any input or validation error gives exit code 2.
//!
//! A polynomial file holds `field`, `nvars` and either `terms`
//! (`[{"coeff":c,"exps":[...]}]`) or `text` (`"1*x1^2+2*x2"`), and may carry
//! the domain as `set` (one set for every coordinate) or `sets`, plus an
//! `anchor`. Elements are written as canonical indices.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::domain::{DomainJson, Point, RectangularDomain};
use crate::error::{Error, Result};
use crate::gf::{Elem, GaloisField};
use crate::oracle::run_suite;
use crate::poly::{SparsePoly, TermJson};
use crate::solver::{check_not_singleton, SystemJson};
use crate::tester::{EvaluationOracle, Searcher, Verdict};

#[derive(Parser, Debug, Clone)]
#[command(name = "sparsezero", version, about = "Zero testing, nonzero search and system solving for sparse polynomials over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Common {
    /// Field such as GF(9) or GF(3^2); used when an input omits its field.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; 0 uses every available core.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Seed for randomized verification, recorded in every report.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Decide whether a polynomial vanishes on S^N.
    TestZero {
        #[arg(long)]
        poly: PathBuf,
        /// Domain file; must be a power S^N.
        #[arg(long)]
        domain: Option<PathBuf>,
        /// The set S as element indices, e.g. "1,2".
        #[arg(long)]
        set: Option<String>,
        /// Monomial bound M to use instead of the polynomial's own count.
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Find the nearest nonzero of a polynomial to an anchor.
    FindNonzero {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        domain: Option<PathBuf>,
        /// Anchor point as element indices, e.g. "1,2,1".
        #[arg(long)]
        anchor: Option<String>,
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Find the nearest common zero of a polynomial system to an anchor.
    Solve {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        domain: Option<PathBuf>,
        #[arg(long)]
        anchor: Option<String>,
    },
    /// Reduce a polynomial modulo the vanishing ideal of a domain.
    Reduce {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        domain: Option<PathBuf>,
    },
    /// Run the seeded brute-force verification suite.
    VerifyBounds {
        /// Instances generated for every check.
        #[arg(long, default_value_t = 200)]
        per_theorem: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::TestZero { .. } => "test-zero",
            Command::FindNonzero { .. } => "find-nonzero",
            Command::Solve { .. } => "solve",
            Command::Reduce { .. } => "reduce",
            Command::VerifyBounds { .. } => "verify-bounds",
        }
    }
}

/// Result of one command: exit code, JSON report and human summary.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: Value,
    pub summary: String,
}

/// Polynomial input file.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyFile {
    #[serde(default)]
    pub field: Option<String>,
    pub nvars: usize,
    #[serde(default)]
    pub terms: Option<Vec<TermJson>>,
    #[serde(default)]
    pub text: Option<String>,
    #[serde(default)]
    pub set: Option<Vec<u32>>,
    #[serde(default)]
    pub sets: Option<Vec<Vec<u32>>>,
    #[serde(default)]
    pub anchor: Option<Vec<u32>>,
}

impl PolyFile {
    pub fn poly(&self, field: &Arc<GaloisField>) -> Result<SparsePoly> {
        match (&self.terms, &self.text) {
            (Some(terms), None) => {
                let terms = terms
                    .iter()
                    .map(|t| Ok((t.exps.clone(), field.element(t.coeff as u64)?)))
                    .collect::<Result<Vec<_>>>()?;
                SparsePoly::from_terms(field.clone(), self.nvars, terms)
            }
            (None, Some(text)) => SparsePoly::parse_text(field.clone(), self.nvars, text),
            _ => Err(Error::Parse("a polynomial needs exactly one of `terms` and `text`".into())),
        }
    }
}

/// Parses `args` (program name first), runs the command, writes the report
/// and summary, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = run(&cli);
    let mut text = match serde_json::to_string_pretty(&outcome.report) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    text.push('\n');
    match &cli.common.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    eprintln!("{}", outcome.summary);
    outcome.exit_code
}

/// Runs a parsed command. Errors become exit code 2 with an `error` report.
pub fn run(cli: &Cli) -> Outcome {
    let name = cli.command.name();
    let result = match &cli.command {
        Command::TestZero { poly, domain, set, bound } => {
            cmd_test_zero(&cli.common, poly, domain.as_deref(), set.as_deref(), *bound)
        }
        Command::FindNonzero { poly, domain, anchor, bound } => {
            cmd_find_nonzero(&cli.common, poly, domain.as_deref(), anchor.as_deref(), *bound)
        }
        Command::Solve { system, domain, anchor } => {
            cmd_solve(&cli.common, system, domain.as_deref(), anchor.as_deref())
        }
        Command::Reduce { poly, domain } => cmd_reduce(&cli.common, poly, domain.as_deref()),
        Command::VerifyBounds { per_theorem } => cmd_verify_bounds(&cli.common, *per_theorem),
    };
    let mut outcome = result.unwrap_or_else(|e| Outcome {
        exit_code: 2,
        report: json!({ "error": e.to_string() }),
        summary: format!("{name}: error: {e}"),
    });
    if let Value::Object(map) = &mut outcome.report {
        map.insert("command".into(), json!(name));
        map.insert("seed".into(), json!(cli.common.seed));
    }
    outcome
}

fn cmd_test_zero(
    common: &Common,
    path: &Path,
    domain_path: Option<&Path>,
    set_flag: Option<&str>,
    bound: Option<u64>,
) -> Result<Outcome> {
    let file: PolyFile = read_json(path)?;
    let field = resolve_field(common.field.as_deref(), file.field.as_deref())?;
    let p = file.poly(&field)?;
    let set = match (set_flag, domain_path) {
        (Some(_), Some(_)) => return Err(Error::InvalidArgument("give either --set or --domain, not both".into())),
        (Some(s), None) => parse_indices(&field, s)?,
        (None, Some(d)) => {
            let domain = read_domain(d, &field)?;
            if !domain.is_power() {
                return Err(Error::InvalidArgument("test-zero needs a domain of the form S^N".into()));
            }
            domain.set(0).to_vec()
        }
        (None, None) => file_domain(&file, &field)?
            .filter(RectangularDomain::is_power)
            .map(|d| d.set(0).to_vec())
            .ok_or_else(|| Error::InvalidArgument("no set S given (use --set, --domain or `set` in the file)".into()))?,
    };
    let oracle = oracle_for(&p, bound)?;
    let run = Searcher::new(jobs(common)).test_zero_on_power_domain(&oracle, &set, p.nvars())?;
    let r = &run.report;
    let exit_code = match r.verdict {
        Verdict::Vanishes => 0,
        Verdict::Witness => 1,
    };
    let summary = format!(
        "test-zero: {} on S^{} over {} ({} evaluations, budget {}, radius {})",
        verdict_word(r.verdict),
        p.nvars(),
        field.name(),
        r.evaluations,
        run.budget,
        r.radius
    );
    let mut report = to_object(r)?;
    report.insert("field".into(), json!(field.name()));
    report.insert("nvars".into(), json!(p.nvars()));
    report.insert("set".into(), json!(set));
    report.insert("monomials".into(), json!(p.monomial_count()));
    report.insert("bound".into(), json!(oracle.bound()));
    report.insert("budget_radius".into(), json!(run.budget_radius));
    report.insert("budget".into(), big_json(&run.budget));
    report.insert("within_budget".into(), json!(BigUint::from(r.evaluations) <= run.budget));
    Ok(Outcome { exit_code, report: Value::Object(report), summary })
}

fn cmd_find_nonzero(
    common: &Common,
    path: &Path,
    domain_path: Option<&Path>,
    anchor_flag: Option<&str>,
    bound: Option<u64>,
) -> Result<Outcome> {
    let file: PolyFile = read_json(path)?;
    let field = resolve_field(common.field.as_deref(), file.field.as_deref())?;
    let p = file.poly(&field)?;
    let domain = pick_domain(domain_path, file_domain(&file, &field)?, &field)?;
    let anchor = pick_anchor(anchor_flag, file.anchor.as_deref(), &domain, false)?;
    let oracle = oracle_for(&p, bound)?;
    let r = Searcher::new(jobs(common)).find_nonzero_near_oracle(&oracle, Some(&p), &anchor, &domain)?;
    let exit_code = match r.verdict {
        Verdict::Vanishes => 0,
        Verdict::Witness => 1,
    };
    let summary = match (&r.witness, r.distance) {
        (Some(w), Some(d)) => format!(
            "find-nonzero: nonzero at {} (distance {d}, radius {}, {} evaluations)",
            point_text(w),
            r.radius,
            r.evaluations
        ),
        _ => format!("find-nonzero: vanishes on the domain (radius {}, {} evaluations)", r.radius, r.evaluations),
    };
    let mut report = to_object(&r)?;
    report.insert("field".into(), json!(field.name()));
    report.insert("anchor".into(), json!(anchor));
    report.insert("domain".into(), serde_json::to_value(domain.to_json())?);
    report.insert("monomials".into(), json!(p.monomial_count()));
    report.insert("bound".into(), json!(oracle.bound()));
    Ok(Outcome { exit_code, report: Value::Object(report), summary })
}

fn cmd_solve(common: &Common, path: &Path, domain_path: Option<&Path>, anchor_flag: Option<&str>) -> Result<Outcome> {
    let file: SystemJson = read_json(path)?;
    let field = resolve_field(common.field.as_deref(), Some(&file.field))?;
    let sys = file.system()?;
    let embedded = file.domain.as_ref().map(RectangularDomain::from_json).transpose()?;
    if let Some(d) = &embedded {
        check_field(&field, d.field())?;
    }
    let domain = match (domain_path, embedded) {
        (Some(d), _) => read_domain(d, &field)?,
        (None, Some(d)) => d,
        (None, None) => {
            let nonzero: Vec<Elem> = field.nonzero_elements().collect();
            RectangularDomain::power(field.clone(), nonzero, sys.nvars())?
        }
    };
    let origin = vec![Elem::ZERO; sys.nvars()];
    let zero_domain = domain.contains(&origin) && sys.is_solution(&origin)?;
    let anchor = pick_anchor(anchor_flag, file.anchor.as_deref(), &domain, zero_domain)?;
    let searcher = Searcher::new(jobs(common));
    let (r, searched) = if zero_domain {
        let searched = RectangularDomain::new(field.clone(), anchor.iter().map(|&a| vec![a, Elem::ZERO]).collect())?;
        (searcher.solve_near_zero_domain(&sys, &anchor)?, searched)
    } else {
        (searcher.solve_near(&sys, &anchor, &domain)?, domain.clone())
    };
    let exit_code = if r.solution().is_some() { 0 } else { 1 };
    let summary = match (r.solution(), r.search.distance) {
        (Some(x), Some(d)) => format!(
            "solve: solution {} at distance {d} (sharp radius {}, {} evaluations)",
            point_text(x),
            r.sharp_radius,
            r.search.evaluations
        ),
        _ => format!("solve: no solution in the domain (sharp radius {})", r.sharp_radius),
    };
    let mut report = to_object(&r)?;
    report.insert("field".into(), json!(field.name()));
    report.insert("equations".into(), json!(sys.len()));
    report.insert("monomials".into(), json!(sys.monomial_counts()));
    report.insert("anchor".into(), json!(anchor));
    report.insert("domain".into(), serde_json::to_value(domain.to_json())?);
    report.insert("searched_domain".into(), serde_json::to_value(searched.to_json())?);
    report.insert("indicator_bound".into(), big_json(&sys.indicator_bound()));
    if !zero_domain {
        if let Ok(check) = check_not_singleton(&sys, &domain) {
            report.insert(
                "not_singleton".into(),
                json!({
                    "applicable": check.applicable,
                    "ratio_order": check.ratio_order,
                    "bound": check.bound,
                    "conclusion": check.conclusion(),
                }),
            );
        }
    }
    Ok(Outcome { exit_code, report: Value::Object(report), summary })
}

fn cmd_reduce(common: &Common, path: &Path, domain_path: Option<&Path>) -> Result<Outcome> {
    let file: PolyFile = read_json(path)?;
    let field = resolve_field(common.field.as_deref(), file.field.as_deref())?;
    let p = file.poly(&field)?;
    let domain = pick_domain(domain_path, file_domain(&file, &field)?, &field)?;
    let reduced = p.reduce_mod_domain(&domain)?;
    let summary = format!(
        "reduce: {} monomials -> {} monomials: {}",
        p.monomial_count(),
        reduced.monomial_count(),
        reduced.to_text()
    );
    let report = json!({
        "field": field.name(),
        "domain": domain.to_json(),
        "input_monomials": p.monomial_count(),
        "monomials": reduced.monomial_count(),
        "reduced": reduced.to_json(),
        "reduced_text": reduced.to_text(),
    });
    Ok(Outcome { exit_code: 0, report, summary })
}

fn cmd_verify_bounds(common: &Common, per_theorem: usize) -> Result<Outcome> {
    if per_theorem == 0 {
        return Err(Error::InvalidArgument("--per-theorem must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs(common))
        .build()
        .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?;
    let suite = pool.install(|| run_suite(common.seed, per_theorem));
    let failed: Vec<&str> = suite.checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
    let summary = if failed.is_empty() {
        format!("verify-bounds: all {} checks passed (seed {})", suite.checks.len(), common.seed)
    } else {
        format!("verify-bounds: {} of {} checks failed: {}", failed.len(), suite.checks.len(), failed.join(", "))
    };
    let exit_code = if suite.passed { 0 } else { 1 };
    Ok(Outcome { exit_code, report: serde_json::to_value(&suite)?, summary })
}

fn jobs(common: &Common) -> usize {
    match common.jobs {
        0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
        j => j,
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn resolve_field(flag: Option<&str>, file: Option<&str>) -> Result<Arc<GaloisField>> {
    match (flag, file) {
        (Some(a), Some(b)) => {
            let fa = GaloisField::from_name(a)?;
            let fb = GaloisField::from_name(b)?;
            check_field(&fa, &fb)?;
            Ok(fb)
        }
        (Some(name), None) | (None, Some(name)) => GaloisField::from_name(name),
        (None, None) => Err(Error::InvalidArgument("no field given (use --field or `field` in the file)".into())),
    }
}

fn check_field(expected: &GaloisField, found: &GaloisField) -> Result<()> {
    if expected != found {
        return Err(Error::FieldMismatch(expected.name(), found.name()));
    }
    Ok(())
}

fn read_domain(path: &Path, field: &Arc<GaloisField>) -> Result<RectangularDomain> {
    let json: DomainJson = read_json(path)?;
    let domain = RectangularDomain::from_json(&json)?;
    check_field(field, domain.field())?;
    Ok(domain)
}

fn file_domain(file: &PolyFile, field: &Arc<GaloisField>) -> Result<Option<RectangularDomain>> {
    let to_elems = |s: &[u32]| s.iter().map(|&i| field.element(i as u64)).collect::<Result<Vec<_>>>();
    match (&file.set, &file.sets) {
        (Some(_), Some(_)) => Err(Error::Parse("give either `set` or `sets`, not both".into())),
        (Some(s), None) => Ok(Some(RectangularDomain::power(field.clone(), to_elems(s)?, file.nvars)?)),
        (None, Some(sets)) => {
            let sets = sets.iter().map(|s| to_elems(s)).collect::<Result<Vec<_>>>()?;
            Ok(Some(RectangularDomain::new(field.clone(), sets)?))
        }
        (None, None) => Ok(None),
    }
}

fn pick_domain(
    path: Option<&Path>,
    embedded: Option<RectangularDomain>,
    field: &Arc<GaloisField>,
) -> Result<RectangularDomain> {
    match (path, embedded) {
        (Some(p), _) => read_domain(p, field),
        (None, Some(d)) => Ok(d),
        (None, None) => Err(Error::InvalidArgument("no domain given (use --domain, `set` or `sets`)".into())),
    }
}

/// The anchor from the flag, else from the file, else the first element
/// (the first nonzero one when `nonzero`) of every coordinate set.
fn pick_anchor(flag: Option<&str>, file: Option<&[u32]>, domain: &RectangularDomain, nonzero: bool) -> Result<Point> {
    let field = domain.field();
    let anchor = match (flag, file) {
        (Some(text), _) => parse_indices(field, text)?,
        (None, Some(idx)) => idx.iter().map(|&i| field.element(i as u64)).collect::<Result<Vec<_>>>()?,
        (None, None) => domain
            .sets()
            .iter()
            .enumerate()
            .map(|(i, s)| {
                s.iter()
                    .copied()
                    .find(|e| !nonzero || !e.is_zero())
                    .ok_or_else(|| Error::InvalidArgument(format!("coordinate set {i} has no nonzero element")))
            })
            .collect::<Result<Vec<_>>>()?,
    };
    if anchor.len() != domain.nvars() {
        return Err(Error::DimensionMismatch { expected: domain.nvars(), found: anchor.len() });
    }
    if !domain.contains(&anchor) {
        return Err(Error::NotInDomain);
    }
    Ok(anchor)
}

/// Parses `"i,j,..."` as element indices.
pub fn parse_indices(field: &GaloisField, text: &str) -> Result<Vec<Elem>> {
    text.split(',')
        .map(|s| {
            let s = s.trim();
            let i: u64 = s.parse().map_err(|_| Error::Parse(format!("bad element index `{s}` in `{text}`")))?;
            field.element(i)
        })
        .collect()
}

fn oracle_for(p: &SparsePoly, bound: Option<u64>) -> Result<EvaluationOracle<'_>> {
    let oracle = EvaluationOracle::from_poly(p);
    match bound {
        None => Ok(oracle),
        Some(m) if (m as u128) < p.monomial_count() as u128 => Err(Error::InvalidArgument(format!(
            "--bound {m} is below the polynomial's {} monomials",
            p.monomial_count()
        ))),
        Some(m) => oracle.with_bound(m),
    }
}

fn to_object<T: serde::Serialize>(value: &T) -> Result<Map<String, Value>> {
    match serde_json::to_value(value)? {
        Value::Object(map) => Ok(map),
        other => Ok(Map::from_iter([("value".to_string(), other)])),
    }
}

/// A number when it fits in u64, a decimal string otherwise.
fn big_json(n: &BigUint) -> Value {
    n.to_u64().map_or_else(|| json!(n.to_string()), |v| json!(v))
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Vanishes => "vanishes",
        Verdict::Witness => "nonzero found",
    }
}

fn point_text(x: &[Elem]) -> String {
    let parts: Vec<String> = x.iter().map(|e| e.to_string()).collect();
    format!("({})", parts.join(","))
}
