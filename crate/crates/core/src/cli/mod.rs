//! Command-line front end: spec ingestion, level pipeline, cache and emission.

pub mod cache;

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::iwasawa::{fit_stability, slope_statistics, FitResult, SlopeStats};
use crate::lfunction::{LOptions, PowerSumCache};
use crate::tadic::{
    mod_t_congruence_check, specialize_check, tadic_l_series, CongruenceReport, SpecializationReport, TadicPrecision,
    TruncatedSeries, SCHEMA_VERSION,
};
use crate::tower::{characters, genus, TowerSpec};
use crate::zeta::{oracle_zeta, zeta_level_with, OrbitRecord, ZetaLevel, ZetaOptions};

pub use cache::{write_atomic, LevelCache, Lookup};

/// Default cache location, relative to the working directory.
pub const DEFAULT_CACHE_DIR: &str = ".aswtower-cache";

/// Oracle enumeration is skipped beyond this many points over the largest field.
const ORACLE_MAX_POINTS: u64 = 1 << 22;

#[derive(Parser, Debug)]
#[command(name = "aswtower", version, about = "Zeta functions, class numbers and p-ranks of Artin-Schreier-Witt towers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Tower spec (JSON).
    #[arg(long, global = true)]
    pub spec: Option<PathBuf>,
    #[arg(long, global = true)]
    pub n_min: Option<u32>,
    #[arg(long, global = true)]
    pub n_max: Option<u32>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// p-adic digits for T-adic output (default: the spec's precision_digits).
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Data output file (default: standard output).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Check a tower spec.
    Validate,
    /// Per-orbit L-polynomials as JSON.
    Lfun,
    /// P(K_n, s) and its invariants as JSON.
    Zeta,
    /// CSV n,vp_class_number.
    Classnum,
    /// CSV n,p_rank.
    Prank,
    /// CSV n,genus.
    Genus,
    /// Slope multisets as CSV, statistics on standard error.
    Slopes {
        #[arg(long, default_value_t = 10)]
        bins: usize,
        /// Also write the statistics as JSON.
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Fit v(n) = F(p^n, n) to a two-column CSV.
    Fit {
        /// CSV with header and rows n,value (default: standard input).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Prime p (default: from --spec).
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, default_value_t = 1)]
        x_deg: u32,
        #[arg(long, default_value_t = 1)]
        y_deg: u32,
    },
    /// Truncated T-adic L-series and its checks.
    Tadic {
        #[arg(long, default_value_t = 8)]
        t_degree: u32,
        #[arg(long, default_value_t = 16)]
        s_max: u32,
    },
    /// Level-1 zeta function from point counts against the character route.
    Oracle,
    /// Full pipeline with a readable summary; JSON goes to --out.
    Report {
        #[arg(long, default_value_t = 10)]
        bins: usize,
    },
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub spec: Option<PathBuf>,
    pub command: Command,
    pub n_min: Option<u32>,
    pub n_max: Option<u32>,
    pub threads: usize,
    pub precision: Option<u32>,
    /// `None` disables the cache.
    pub cache_dir: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

impl Cli {
    pub fn into_config(self) -> RunConfig {
        let g = self.global;
        let cache_dir = if g.no_cache { None } else { Some(g.cache_dir.unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))) };
        RunConfig {
            spec: g.spec,
            command: self.command,
            n_min: g.n_min,
            n_max: g.n_max,
            threads: g.threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
            precision: g.precision,
            cache_dir,
            out: g.out,
        }
    }
}

/// Parse arguments, run, and map the outcome to a process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli.into_config()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(config: &RunConfig) -> Result<()> {
    if config.threads == 0 {
        return Err(Error::Input("--threads must be at least 1".into()));
    }
    if let Some(dir) = &config.cache_dir {
        crate::witt::set_disk_cache(Some(dir.join("witt")));
    } else {
        crate::witt::set_disk_cache(None);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| Error::Input(format!("thread pool: {e}")))?;
    pool.install(|| dispatch(config))
}

fn dispatch(config: &RunConfig) -> Result<()> {
    match &config.command {
        Command::Validate => cmd_validate(config),
        Command::Lfun => cmd_lfun(config),
        Command::Zeta => cmd_zeta(config),
        Command::Classnum => cmd_column(config, "vp_class_number", |l| l.vp_class_number),
        Command::Prank => cmd_column(config, "p_rank", |l| l.p_rank),
        Command::Genus => cmd_genus(config),
        Command::Slopes { bins, stats } => cmd_slopes(config, *bins, stats.as_deref()),
        Command::Fit { input, p, x_deg, y_deg } => cmd_fit(config, input.as_deref(), *p, *x_deg, *y_deg),
        Command::Tadic { t_degree, s_max } => cmd_tadic(config, *t_degree, *s_max),
        Command::Oracle => cmd_oracle(config),
        Command::Report { bins } => cmd_report(config, *bins),
    }
}

fn load_spec(config: &RunConfig) -> Result<TowerSpec> {
    let path = config.spec.as_ref().ok_or_else(|| Error::Input("--spec is required".into()))?;
    TowerSpec::load(path)
}

fn level_range(config: &RunConfig, spec: &TowerSpec, default_max: u32) -> Result<RangeInclusive<u32>> {
    let lo = config.n_min.unwrap_or(1);
    let hi = config.n_max.unwrap_or(default_max);
    if lo > hi {
        return Err(Error::Input(format!("--n-min {lo} exceeds --n-max {hi}")));
    }
    spec.check_level(hi)?;
    Ok(lo..=hi)
}

fn emit(config: &RunConfig, bytes: &[u8]) -> Result<()> {
    match &config.out {
        Some(path) => write_atomic(path, bytes),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut v = serde_json::to_vec_pretty(value)?;
    v.push(b'\n');
    Ok(v)
}

/// Levels in `range`, from the cache where possible.
pub fn compute_levels(spec: &TowerSpec, range: RangeInclusive<u32>, cache: &LevelCache) -> Result<Vec<ZetaLevel>> {
    let hi = *range.end();
    let mut sums: Option<PowerSumCache> = None;
    let mut out = Vec::new();
    for n in range {
        match cache.lookup(spec, n) {
            Lookup::Hit(level) => {
                out.push(*level);
                continue;
            }
            Lookup::Corrupt(msg) => eprintln!("warning: discarding cached level {n} ({msg}); recomputing"),
            Lookup::Miss => {}
        }
        let sums = sums.get_or_insert_with(|| PowerSumCache::new(spec, hi.max(1)));
        let start = Instant::now();
        let level = zeta_level_with(spec, n, sums, &ZetaOptions::default())?;
        cache.store(spec, &level, start.elapsed().as_millis() as u64)?;
        out.push(level);
    }
    Ok(out)
}

fn levels(config: &RunConfig, spec: &TowerSpec) -> Result<Vec<ZetaLevel>> {
    let range = level_range(config, spec, spec.n_max)?;
    compute_levels(spec, range, &LevelCache::new(config.cache_dir.clone()))
}

fn cmd_validate(config: &RunConfig) -> Result<()> {
    let spec = load_spec(config)?;
    let places: Vec<String> = spec.ramified_places().iter().map(|p| p.to_string()).collect();
    let line = format!(
        "valid: p={} q={} d={} ramified at {{{}}} n_max={} digest={}\n",
        spec.p,
        spec.q(),
        spec.d,
        places.join(", "),
        spec.n_max,
        spec.digest()
    );
    emit(config, line.as_bytes())
}

#[derive(Serialize)]
struct LfunLevel<'a> {
    n: u32,
    orbits: &'a [OrbitRecord],
}

#[derive(Serialize)]
struct Versioned<'a, T: Serialize> {
    schema_version: u32,
    spec_digest: &'a str,
    #[serde(flatten)]
    body: T,
}

fn cmd_lfun(config: &RunConfig) -> Result<()> {
    let spec = load_spec(config)?;
    let lv = levels(config, &spec)?;
    #[derive(Serialize)]
    struct Body<'a> {
        levels: Vec<LfunLevel<'a>>,
    }
    let body = Body { levels: lv.iter().map(|l| LfunLevel { n: l.n, orbits: &l.orbits }).collect() };
    emit(config, &to_json(&Versioned { schema_version: SCHEMA_VERSION, spec_digest: &spec.digest(), body })?)
}

fn cmd_zeta(config: &RunConfig) -> Result<()> {
    let spec = load_spec(config)?;
    let lv = levels(config, &spec)?;
    #[derive(Serialize)]
    struct Body<'a> {
        levels: &'a [ZetaLevel],
    }
    emit(
        config,
        &to_json(&Versioned { schema_version: SCHEMA_VERSION, spec_digest: &spec.digest(), body: Body { levels: &lv } })?,
    )
}

fn csv_bytes(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    w.into_inner().map_err(|e| Error::Io(e.into_error()))
}

fn cmd_column(config: &RunConfig, name: &str, f: impl Fn(&ZetaLevel) -> u64) -> Result<()> {
    let spec = load_spec(config)?;
    let lv = levels(config, &spec)?;
    let bytes = csv_bytes(&["n", name], lv.iter().map(|l| vec![l.n.to_string(), f(l).to_string()]))?;
    emit(config, &bytes)
}

fn cmd_genus(config: &RunConfig) -> Result<()> {
    let spec = load_spec(config)?;
    let range = level_range(config, &spec, spec.n_max)?;
    let rows = range.map(|n| Ok(vec![n.to_string(), genus(&spec, n)?.to_string()])).collect::<Result<Vec<_>>>()?;
    emit(config, &csv_bytes(&["n", "genus"], rows)?)
}

fn expand(slopes: &[(Rational64, usize)]) -> usize {
    slopes.iter().map(|s| s.1).sum()
}

#[derive(Serialize)]
struct LevelStats {
    n: u32,
    stats: Option<SlopeStats>,
}

fn stats_for(lv: &[ZetaLevel], bins: usize) -> Result<Vec<LevelStats>> {
    lv.iter()
        .map(|l| {
            let stats = if expand(&l.slopes) == 0 { None } else { Some(slope_statistics(&l.slopes, bins)?) };
            Ok(LevelStats { n: l.n, stats })
        })
        .collect()
}

fn cmd_slopes(config: &RunConfig, bins: usize, stats_path: Option<&Path>) -> Result<()> {
    let spec = load_spec(config)?;
    let lv = levels(config, &spec)?;
    let rows = lv.iter().flat_map(|l| {
        l.slopes.iter().map(move |(s, m)| vec![l.n.to_string(), s.numer().to_string(), s.denom().to_string(), m.to_string()])
    });
    let bytes = csv_bytes(&["n", "slope_numerator", "slope_denominator", "multiplicity"], rows)?;
    let stats = stats_for(&lv, bins)?;
    for s in &stats {
        match &s.stats {
            Some(st) => eprintln!("n={}: {} slopes, KS = {}, symmetry defect = {}", s.n, st.count, st.ks, st.symmetry_defect),
            None => eprintln!("n={}: no slopes", s.n),
        }
    }
    if let Some(path) = stats_path {
        #[derive(Serialize)]
        struct Body<'a> {
            levels: &'a [LevelStats],
        }
        let v = Versioned { schema_version: SCHEMA_VERSION, spec_digest: &spec.digest(), body: Body { levels: &stats } };
        write_atomic(path, &to_json(&v)?)?;
    }
    emit(config, &bytes)
}

/// Rows (n, value) from a CSV with a header line.
pub fn read_points(reader: impl std::io::Read) -> Result<Vec<(u32, BigInt)>> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        if rec.len() != 2 {
            return Err(Error::Input(format!("expected 2 columns, found {}", rec.len())));
        }
        let n = rec[0].parse().map_err(|_| Error::Input(format!("bad level {:?}", &rec[0])))?;
        let v = rec[1].parse().map_err(|_| Error::Input(format!("bad value {:?}", &rec[1])))?;
        out.push((n, v));
    }
    Ok(out)
}

fn cmd_fit(config: &RunConfig, input: Option<&Path>, p: Option<u32>, x_deg: u32, y_deg: u32) -> Result<()> {
    if y_deg > 1 {
        return Err(Error::Input("--y-deg must be 0 or 1".into()));
    }
    let p = match p {
        Some(p) => p,
        None => load_spec(config)?.p,
    };
    let points = match input {
        Some(path) => read_points(std::fs::File::open(path)?)?,
        None => read_points(std::io::stdin().lock())?,
    };
    let fit = fit_stability(&points, p, x_deg, y_deg)?;
    eprintln!("{fit}");
    #[derive(Serialize)]
    struct Out<'a> {
        schema_version: u32,
        fit: &'a FitResult,
    }
    emit(config, &to_json(&Out { schema_version: SCHEMA_VERSION, fit: &fit })?)
}

#[derive(Serialize)]
struct TadicOut<'a> {
    series: &'a TruncatedSeries,
    congruence: &'a CongruenceReport,
    specializations: &'a [SpecializationReport],
}

fn cmd_tadic(config: &RunConfig, t_degree: u32, s_max: u32) -> Result<()> {
    let spec = load_spec(config)?;
    let requested = TadicPrecision { digits: config.precision.unwrap_or(spec.precision_digits), t_degree, s_max };
    let prec = requested.clamped(&spec, LOptions::default().max_points);
    if prec.s_max < requested.s_max {
        eprintln!("warning: s_max lowered from {} to {} by the point-count limit", requested.s_max, prec.s_max);
    }
    if prec.s_max == 0 {
        return Err(Error::Infeasible("no s-coefficient fits the point-count limit".into()));
    }
    let series = tadic_l_series(&spec, &prec)?;
    let congruence = mod_t_congruence_check(&series, &spec);
    let range = level_range(config, &spec, spec.n_max.min(2))?;
    let mut specs = Vec::new();
    for n in range {
        for chi in characters(&spec, n)?.all() {
            if !chi.is_trivial() && chi.order_exp == n {
                specs.push(specialize_check(&series, &spec, chi)?);
            }
        }
    }
    let failed = specs.iter().filter(|s| !s.passed).count();
    eprintln!(
        "T-adic: congruence {}, {} of {} specializations pass",
        if congruence.passed { "passes" } else { "FAILS" },
        specs.len() - failed,
        specs.len()
    );
    let body = TadicOut { series: &series, congruence: &congruence, specializations: &specs };
    emit(config, &to_json(&Versioned { schema_version: SCHEMA_VERSION, spec_digest: &spec.digest(), body })?)?;
    if !congruence.passed || failed > 0 {
        return Err(Error::Consistency("T-adic series disagrees with classical data".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleOutcome {
    pub oracle: String,
    pub characters: String,
    pub matched: bool,
}

impl OracleOutcome {
    pub fn line(&self) -> String {
        if self.matched {
            format!("P(K_1,s) = {} (match)", self.oracle)
        } else {
            format!("P(K_1,s) = {} from point counts, {} from characters (MISMATCH)", self.oracle, self.characters)
        }
    }
}

/// `None` when the enumeration is out of reach for this tower.
pub fn oracle_check(spec: &TowerSpec, level1: &ZetaLevel) -> Result<Option<OracleOutcome>> {
    if spec.d != 1 || spec.constant_coord.is_some() {
        return Ok(None);
    }
    let top = spec.q().checked_pow((2 * level1.genus).max(1) as u32);
    if top.is_none_or(|t| t > ORACLE_MAX_POINTS) {
        return Ok(None);
    }
    let oracle = oracle_zeta(spec)?;
    let characters = level1.poly.as_ref().map(|p| p.to_string()).unwrap_or_default();
    Ok(Some(OracleOutcome { matched: oracle.to_string() == characters, oracle: oracle.to_string(), characters }))
}

fn cmd_oracle(config: &RunConfig) -> Result<()> {
    let spec = load_spec(config)?;
    let lv = compute_levels(&spec, 1..=1, &LevelCache::new(config.cache_dir.clone()))?;
    let outcome = oracle_check(&spec, &lv[0])?
        .ok_or_else(|| Error::Infeasible("oracle needs d = 1 without a constant coordinate and a small field".into()))?;
    emit(config, format!("{}\n", outcome.line()).as_bytes())?;
    if !outcome.matched {
        return Err(Error::Consistency("point-count oracle disagrees with the character product".into()));
    }
    Ok(())
}

#[derive(Serialize)]
struct LevelSummary {
    n: u32,
    genus: u64,
    vp_class_number: u64,
    p_rank: u64,
    class_number: Option<String>,
    stats: Option<SlopeStats>,
}

#[derive(Serialize)]
struct Report {
    p: u32,
    q: u64,
    d: usize,
    levels: Vec<LevelSummary>,
    oracle: Option<OracleOutcome>,
    vp_fit: Option<FitResult>,
    p_rank_fit: Option<FitResult>,
    genus_fit: Option<FitResult>,
}

fn fit_column(lv: &[ZetaLevel], p: u32, x: u32, y: u32, f: impl Fn(&ZetaLevel) -> u64) -> Result<Option<FitResult>> {
    if lv.len() < 2 {
        return Ok(None);
    }
    let pts: Vec<(u32, BigInt)> = lv.iter().map(|l| (l.n, BigInt::from(f(l)))).collect();
    fit_stability(&pts, p, x, y).map(Some)
}

fn cmd_report(config: &RunConfig, bins: usize) -> Result<()> {
    let spec = load_spec(config)?;
    let lv = levels(config, &spec)?;
    let oracle = match lv.iter().find(|l| l.n == 1) {
        Some(l1) => oracle_check(&spec, l1)?,
        None => None,
    };
    let d = spec.d as u32;
    let report = Report {
        p: spec.p,
        q: spec.q(),
        d: spec.d,
        levels: lv
            .iter()
            .zip(stats_for(&lv, bins)?)
            .map(|(l, s)| LevelSummary {
                n: l.n,
                genus: l.genus,
                vp_class_number: l.vp_class_number,
                p_rank: l.p_rank,
                class_number: l.class_number.as_ref().map(|h| h.to_string()),
                stats: s.stats,
            })
            .collect(),
        vp_fit: fit_column(&lv, spec.p, d, 1, |l| l.vp_class_number)?,
        p_rank_fit: fit_column(&lv, spec.p, d, 0, |l| l.p_rank)?,
        genus_fit: fit_column(&lv, spec.p, d + 1, 0, |l| l.genus)?,
        oracle,
    };
    let mut text = format!("tower p={} q={} d={} digest={}\n", report.p, report.q, report.d, spec.digest());
    text.push_str("n\tgenus\tv_p(h)\tp-rank\tKS\tsymmetry\n");
    for l in &report.levels {
        let (ks, sym) = l.stats.as_ref().map_or(("-".into(), "-".into()), |s| (s.ks.clone(), s.symmetry_defect.clone()));
        text.push_str(&format!("{}\t{}\t{}\t{}\t{}\t{}\n", l.n, l.genus, l.vp_class_number, l.p_rank, ks, sym));
    }
    match &report.oracle {
        Some(o) => text.push_str(&format!("oracle: {}\n", o.line())),
        None => text.push_str("oracle: skipped\n"),
    }
    for (name, fit) in [("v_p(h_n)", &report.vp_fit), ("p-rank", &report.p_rank_fit), ("genus", &report.genus_fit)] {
        if let Some(f) = fit {
            text.push_str(&format!("fit {name}: {f}\n"));
        }
    }
    if report.oracle.as_ref().is_some_and(|o| !o.matched) {
        print!("{text}");
        return Err(Error::Consistency("point-count oracle disagrees with the character product".into()));
    }
    if let Some(path) = &config.out {
        write_atomic(path, &to_json(&Versioned { schema_version: SCHEMA_VERSION, spec_digest: &spec.digest(), body: &report })?)?;
    }
    text.push_str("all consistency checks passed\n");
    print!("{text}");
    Ok(())
}
