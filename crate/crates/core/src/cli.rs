//! The `glink` command line: argument parsing, diagram loading, the result
//! cache and output formatting. `run` is pure apart from file and cache
//! access, so tests drive it in-process.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::diagram::{braid_closure, parse_braid, parse_pd, LinkDiagram};
use crate::error::{Error, Result};
use crate::functorial::{commutator_check, dot_on_homology};
use crate::homology::{colored_splitting, cube_complex, homology, Deformation, DeformationSpec, HomologyTable};
use crate::qpoly::LaurentPoly;
use crate::report::CheckReport;
use crate::upoly::UPoly;
use crate::verify;
use crate::web::{rt_invariant, GaugeConfig};

/// Bumped whenever a sign, shift or normalization convention changes, so
/// cached results from older conventions are never reused.
pub const CONVENTION_VERSION: &str = "glink-conventions-1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "glink", version, about = "Exact gl(N) link invariants, gl(2) link homology and relation verifiers")]
pub struct Cli {
    /// Worker threads (0 = rayon default).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Cache directory; overrides GLINK_CACHE.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Skip the result cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GaugeArg {
    Gl,
    Sl,
    Custom,
}

#[derive(Args, Debug, Clone)]
pub struct DeformArgs {
    /// Deformation polynomial, e.g. `P=X^2-1`.
    #[arg(long, conflicts_with = "sigma")]
    pub deform: Option<String>,
    /// Roots with multiplicities, e.g. `1,-1` or `0^2,1`.
    #[arg(long)]
    pub sigma: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Colored gl(N)/sl(N) invariant of a closed diagram.
    Invariant {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        rank: u32,
        #[arg(long, value_enum, default_value_t = GaugeArg::Gl)]
        gauge: GaugeArg,
        /// The unit `c` for `--gauge custom`, e.g. `-q^(1/2)`.
        #[arg(long)]
        c: Option<String>,
    },
    /// Khovanov homology (P = X^2) or a deformation of it.
    Homology {
        file: PathBuf,
        #[command(flatten)]
        deform: DeformArgs,
    },
    /// Deformed homology split by colorings of components by roots.
    Split {
        file: PathBuf,
        #[arg(long)]
        sigma: String,
    },
    /// Relation suites; `functoriality` and `basepoint` accept a diagram.
    Verify {
        suite: Option<String>,
        diagram: Option<PathBuf>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 2)]
        rank: u32,
        /// Hecke algebra size.
        #[arg(short = 'n', default_value_t = 4)]
        n: usize,
    },
    /// Action of the dot at an arc (1-based) on homology.
    Dot {
        file: PathBuf,
        #[arg(long)]
        at: usize,
        #[command(flatten)]
        deform: DeformArgs,
    },
    /// Rewrites a braid file as PD JSON.
    Convert { file: PathBuf },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn error(e: &Error) -> Self {
        Self { code: exit_code(e), stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Unsliceable(_) | Error::Unsupported(_) | Error::Internal(_) => EXIT_UNSUPPORTED,
        _ => EXIT_INPUT,
    }
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: text } } else { Outcome::ok(text) };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(p) => p,
        Err(e) => return Outcome::error(&Error::Internal(e.to_string())),
    };
    pool.install(|| execute(&cli))
}

fn execute(cli: &Cli) -> Outcome {
    let cache = Cache::from_cli(cli);
    let res = match &cli.command {
        Command::Invariant { file, rank, gauge, c } => with_diagram(file, |d| {
            let cfg = gauge_config(*rank, *gauge, c.as_deref())?;
            let key = format!("invariant|{}|{}|{:?}", cfg.n, cfg.name(), cli.format);
            cache.get_or(&key, d, || Ok(format_poly(&rt_invariant(d, &cfg)?, cli.format)))
        }),
        Command::Homology { file, deform } => with_diagram(file, |d| {
            let def = deformation(deform)?;
            let key = format!("homology|{}|{:?}", def.polynomial(), cli.format);
            let key = match &def {
                Deformation::Roots(s) => format!("{key}|sigma={s}"),
                _ => key,
            };
            cache.get_or(&key, d, || Ok(format_table(&homology(d, &def)?, cli.format)))
        }),
        Command::Split { file, sigma } => with_diagram(file, |d| {
            let spec: DeformationSpec = sigma.parse()?;
            let key = format!("split|{spec}|{:?}", cli.format);
            cache.get_or(&key, d, || format_split(d, &spec, cli.format))
        }),
        Command::Verify { suite, diagram, all, rank, n } => return verify_cmd(suite.as_deref(), diagram.as_deref(), *all, *rank, *n, cli.format),
        Command::Dot { file, at, deform } => with_diagram(file, |d| {
            if *at == 0 || *at > d.num_arcs() {
                return Err(Error::IndexOutOfRange { index: *at, bound: d.num_arcs() });
            }
            let cx = cube_complex(d, deformation(deform)?.algebra()?)?;
            Ok(format_dot(&dot_on_homology(&cx, at - 1)?, cli.format))
        }),
        Command::Convert { file } => with_diagram(file, |d| Ok(d.to_pd_json())),
    };
    match res {
        Ok(s) => Outcome::ok(s),
        Err(e) => Outcome::error(&e),
    }
}

pub fn load_diagram(path: &Path) -> Result<LinkDiagram> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    if ext == "pd" || ext == "json" || text.trim_start().starts_with('{') {
        parse_pd(&text)
    } else {
        Ok(braid_closure(&parse_braid(&text)?))
    }
}

fn with_diagram(path: &Path, f: impl FnOnce(&LinkDiagram) -> Result<String>) -> Result<String> {
    f(&load_diagram(path)?)
}

fn gauge_config(rank: u32, gauge: GaugeArg, c: Option<&str>) -> Result<GaugeConfig> {
    if rank == 0 {
        return Err(Error::InvalidArgument("--rank must be positive".into()));
    }
    match (gauge, c) {
        (GaugeArg::Gl, None) => Ok(GaugeConfig::gl(rank)),
        (GaugeArg::Sl, None) => Ok(GaugeConfig::sl(rank)),
        (GaugeArg::Custom, Some(c)) => GaugeConfig::custom(rank, c.parse::<LaurentPoly>()?),
        (GaugeArg::Custom, None) => Err(Error::InvalidArgument("--gauge custom needs --c".into())),
        (_, Some(_)) => Err(Error::InvalidArgument("--c is only valid with --gauge custom".into())),
    }
}

fn deformation(a: &DeformArgs) -> Result<Deformation> {
    match (&a.deform, &a.sigma) {
        (Some(p), None) => Ok(Deformation::Polynomial(p.parse::<UPoly>()?)),
        (None, Some(s)) => Ok(Deformation::Roots(s.parse()?)),
        (None, None) => Ok(Deformation::Undeformed),
        (Some(_), Some(_)) => Err(Error::InvalidArgument("--deform and --sigma are exclusive".into())),
    }
}

pub fn poly_json(p: &LaurentPoly) -> Value {
    let mut terms = Map::new();
    for (e, c) in p.terms() {
        terms.insert(e.to_string(), Value::String(c.to_string()));
    }
    json!({ "terms": terms })
}

fn format_poly(p: &LaurentPoly, f: Format) -> String {
    match f {
        Format::Text => format!("{p}\n"),
        Format::Json => format!("{}\n", poly_json(p)),
        Format::Tsv => p.terms().map(|(e, c)| format!("{e}\t{c}\n")).collect(),
    }
}

fn format_table(t: &HomologyTable, f: Format) -> String {
    match f {
        Format::Json => format!("{}\n", t.to_json()),
        Format::Text => format!("{}\n{}\n", t.to_json(), t),
        Format::Tsv => {
            let mut s = if t.graded { "i\tj\tdim\n".to_string() } else { "i\tdim\n".to_string() };
            for (&(i, j), d) in &t.dims {
                s += &if t.graded { format!("{i}\t{j}\t{d}\n") } else { format!("{i}\t{d}\n") };
            }
            s
        }
    }
}

fn coloring_key(spec: &DeformationSpec, kappa: &[usize]) -> String {
    kappa.iter().map(|&k| spec.roots[k].0.to_string()).collect::<Vec<_>>().join(",")
}

fn format_split(d: &LinkDiagram, spec: &DeformationSpec, f: Format) -> Result<String> {
    let split = colored_splitting(d, spec)?;
    Ok(match f {
        Format::Json => {
            let mut m = Map::new();
            for (kappa, t) in &split {
                m.insert(coloring_key(spec, kappa), json!({ "total": t.total(), "table": t.to_json() }));
            }
            format!("{}\n", Value::Object(m))
        }
        Format::Text => split.iter().map(|(k, t)| format!("({}): {} {}\n", coloring_key(spec, k), t.total(), t.to_json())).collect(),
        Format::Tsv => {
            let mut s = "coloring\ti\tdim\n".to_string();
            for (k, t) in &split {
                for (&(i, _), dim) in &t.dims {
                    s += &format!("{}\t{i}\t{dim}\n", coloring_key(spec, k));
                }
            }
            s
        }
    })
}

fn format_dot(blocks: &[(i64, Vec<Vec<crate::qpoly::Rational>>)], f: Format) -> String {
    match f {
        Format::Json => {
            let mut m = Map::new();
            for (i, mat) in blocks {
                let rows: Vec<Value> = mat.iter().map(|r| Value::Array(r.iter().map(|c| Value::String(c.to_string())).collect())).collect();
                m.insert(i.to_string(), Value::Array(rows));
            }
            format!("{}\n", Value::Object(m))
        }
        Format::Text | Format::Tsv => {
            let mut s = String::new();
            for (i, mat) in blocks {
                s += &format!("i={i}\n");
                for r in mat {
                    let sep = if f == Format::Tsv { "\t" } else { " " };
                    s += &r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(sep);
                    s.push('\n');
                }
            }
            s
        }
    }
}

fn report_json(r: &CheckReport) -> Value {
    json!({ "suite": r.name, "pass": r.ok(), "cases": r.cases, "failures": r.failures })
}

fn verify_cmd(suite: Option<&str>, diagram: Option<&Path>, all: bool, rank: u32, n: usize, f: Format) -> Outcome {
    let names: Vec<&str> = match (all, suite) {
        (true, None) => verify::SUITES.to_vec(),
        (false, Some(s)) => vec![s],
        _ => return Outcome::error(&Error::InvalidArgument("give one suite name or --all".into())),
    };
    let given = match diagram.map(load_diagram).transpose() {
        Ok(d) => d,
        Err(e) => return Outcome::error(&e),
    };
    let mut reports = Vec::new();
    for name in names {
        let r = match (name, &given) {
            ("functoriality", Some(d)) => functoriality_report(d),
            ("basepoint", Some(d)) => verify::basepoint(d, "diagram"),
            _ => verify::run_suite(name, rank, n),
        };
        match r {
            Ok(r) => reports.push(r),
            Err(e) => return Outcome::error(&e),
        }
    }
    let ok = reports.iter().all(CheckReport::ok);
    let stdout = match f {
        Format::Json => format!("{}\n", Value::Array(reports.iter().map(report_json).collect())),
        Format::Tsv => reports.iter().map(|r| format!("{}\t{}\t{}\t{}\n", r.name, if r.ok() { "pass" } else { "fail" }, r.cases, r.failures.len())).collect(),
        Format::Text => reports.iter().map(|r| format!("{r}\n")).collect(),
    };
    Outcome { code: if ok { EXIT_OK } else { EXIT_VERIFY }, stdout, stderr: String::new() }
}

/// One line per positive crossing with its residual.
fn functoriality_report(d: &LinkDiagram) -> Result<CheckReport> {
    let cx = cube_complex(d, Deformation::Undeformed.algebra()?)?;
    let mut r = CheckReport::new("functoriality");
    for (k, x) in d.crossings().iter().enumerate() {
        if x.sign < 0 {
            continue;
        }
        let c = commutator_check(&cx, k)?;
        r.record(c.ok(), || format!("crossing {}: residual nnz {} max |entry| {}", k + 1, c.residual_nnz, c.residual_max));
    }
    Ok(r)
}

struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    fn from_cli(cli: &Cli) -> Self {
        let dir = if cli.no_cache { None } else { cli.cache_dir.clone().or_else(|| std::env::var_os("GLINK_CACHE").map(PathBuf::from)) };
        Self { dir }
    }

    fn key(what: &str, d: &LinkDiagram) -> String {
        let mut h = Sha256::new();
        h.update(CONVENTION_VERSION.as_bytes());
        h.update(b"\0");
        h.update(what.as_bytes());
        h.update(b"\0");
        h.update(d.to_pd_json().as_bytes());
        if let Some(b) = d.braid() {
            h.update(b.to_string().as_bytes());
        }
        hex::encode(h.finalize())
    }

    /// Returns the cached output for `(what, d)`, computing and storing it on a miss.
    fn get_or(&self, what: &str, d: &LinkDiagram, compute: impl FnOnce() -> Result<String>) -> Result<String> {
        let Some(dir) = &self.dir else { return compute() };
        let path = dir.join(format!("{}.out", Self::key(what, d)));
        if let Ok(s) = fs::read_to_string(&path) {
            return Ok(s);
        }
        let out = compute()?;
        // a failed write only loses the cache entry
        if fs::create_dir_all(dir).is_ok() {
            let tmp = path.with_extension(format!("tmp{}", std::process::id()));
            if fs::write(&tmp, &out).is_ok() {
                let _ = fs::rename(&tmp, &path);
            }
        }
        Ok(out)
    }
}
