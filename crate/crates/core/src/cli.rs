//! The `knot` command line.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 2 | usage: unknown subcommand, bad or conflicting flags |
//! | 3 | input: unparsable PD code or file, unknown knot name |
//! | 4 | a size limit was exceeded |
//! | 5 | certificate missing, malformed, untrusted, or mismatched |
//! | 6 | computation failed an internal consistency check |
//! | 7 | I/O error |
//!
//! Output is plain text without color or JSON with `--format json`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::alexander::{alexander_polynomial, fox_colorings_count};
use crate::catalog::{ingest_pd_file, kt_mutation_region, load_builtin_catalog, Catalog, KnotRecord};
use crate::diagram::{PlanarDiagram, TangleRegion};
use crate::error::{CatalogError, DiagramError, InvariantError, KhovanovError, SliceError};
use crate::jones::{jones_polynomial, jones_polynomial_naive};
use crate::khovanov::{
    khovanov_homology_full_cube, khovanov_homology_with, s_invariant_full_cube, s_invariant_with, FieldChoice,
    KhovanovOptions, DEFAULT_SIZE_LIMIT, F2, Q,
};
use crate::slice::{slice_report_with, trace_transfer_verdict, transfer_summary, TraceSiblingCertificate};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_LIMIT: i32 = 4;
pub const EXIT_CERTIFICATE: i32 = 5;
pub const EXIT_COMPUTATION: i32 = 6;
pub const EXIT_IO: i32 = 7;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Limit(String),
    #[error("{0}")]
    Certificate(String),
    #[error("{0}")]
    Computation(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_INPUT,
            CliError::Limit(_) => EXIT_LIMIT,
            CliError::Certificate(_) => EXIT_CERTIFICATE,
            CliError::Computation(_) => EXIT_COMPUTATION,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl From<DiagramError> for CliError {
    fn from(e: DiagramError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::Diagram(d) => d.into(),
            InvariantError::InvalidPrime(_) => CliError::Usage(e.to_string()),
            InvariantError::TooLarge(_) => CliError::Limit(e.to_string()),
            InvariantError::NonIntegralExponent => CliError::Computation(e.to_string()),
        }
    }
}

impl From<KhovanovError> for CliError {
    fn from(e: KhovanovError) -> Self {
        match e {
            KhovanovError::Diagram(d) => d.into(),
            KhovanovError::SizeLimit { .. } => CliError::Limit(e.to_string()),
            _ => CliError::Computation(e.to_string()),
        }
    }
}

impl From<SliceError> for CliError {
    fn from(e: SliceError) -> Self {
        match e {
            SliceError::Invariant(e) => e.into(),
            SliceError::Khovanov(e) => e.into(),
            _ => CliError::Certificate(e.to_string()),
        }
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Invariant(e) => e.into(),
            CatalogError::Khovanov(e) => e.into(),
            CatalogError::Slice(e) => e.into(),
            CatalogError::Io(e) => CliError::Io(e.to_string()),
            CatalogError::Schema(_) => CliError::Computation(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "knot", version, about = "Knot invariants from planar diagram codes")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Worker threads for the homology engine (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

/// Exactly one of `--knot`, `--pd`, `--file`.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct KnotSource {
    /// Catalog name, e.g. `trefoil`, `conway`, `8_17`.
    #[arg(long)]
    pub knot: Option<String>,
    /// PD code literal, e.g. "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]".
    #[arg(long)]
    pub pd: Option<String>,
    /// PD file holding a single `name: X[..] ...` line.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Limits {
    /// Cap on the number of generators held at once.
    #[arg(long, default_value_t = DEFAULT_SIZE_LIMIT)]
    pub size_limit: u64,
}

impl Limits {
    fn options(&self) -> KhovanovOptions {
        KhovanovOptions { size_limit: self.size_limit, ..Default::default() }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Alexander polynomial, shifted to lowest degree 0 with positive leading coefficient.
    Alexander {
        #[command(flatten)]
        source: KnotSource,
    },
    /// Jones polynomial.
    Jones {
        #[command(flatten)]
        source: KnotSource,
        /// Use the full state sum.
        #[arg(long)]
        oracle: bool,
    },
    /// Khovanov homology ranks.
    Khovanov {
        #[command(flatten)]
        source: KnotSource,
        #[arg(long, default_value = "Q")]
        field: FieldChoice,
        /// Also compute the s-invariant.
        #[arg(long)]
        compute_s: bool,
        #[command(flatten)]
        limits: Limits,
        /// Use the unreduced cube of resolutions.
        #[arg(long)]
        oracle: bool,
    },
    /// Rasmussen s-invariant.
    S {
        #[command(flatten)]
        source: KnotSource,
        #[command(flatten)]
        limits: Limits,
        /// Use the unreduced cube of resolutions.
        #[arg(long)]
        oracle: bool,
    },
    /// Number of Fox p-colorings.
    Colorings {
        #[command(flatten)]
        source: KnotSource,
        /// Odd prime p.
        #[arg(long, default_value_t = 3)]
        modulus: u64,
    },
    /// Sliceness obstructions.
    SliceReport {
        #[command(flatten)]
        source: KnotSource,
        #[arg(long)]
        compute_s: bool,
        #[command(flatten)]
        limits: Limits,
    },
    /// Mutate along a tangle given by its crossings (0-based).
    Mutate {
        #[command(flatten)]
        source: KnotSource,
        /// Comma-separated crossing indices; defaults to the documented
        /// region for the Kinoshita-Terasaka knot.
        #[arg(long, value_delimiter = ',')]
        region: Vec<usize>,
    },
    /// Connected sum of two catalog knots.
    ConnectSum {
        /// Two comma-separated knot names.
        #[arg(long, value_delimiter = ',', required = true)]
        knots: Vec<String>,
        /// Arc labels at which to splice, one per summand.
        #[arg(long, value_delimiter = ',', default_values_t = [1, 1])]
        arcs: Vec<u32>,
        /// Extra PD file whose knots may be named.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Switch one crossing (0-based index).
    CrossingChange {
        #[command(flatten)]
        source: KnotSource,
        #[arg(long)]
        index: usize,
    },
    /// Transfer obstructions between knots with diffeomorphic traces.
    Transfer {
        /// Certificate file naming the two knots.
        #[arg(long)]
        cert: PathBuf,
        /// The two knots, comma-separated.
        #[arg(long, value_delimiter = ',', required = true)]
        knots: Vec<String>,
        /// Extra PD file whose knots may be named.
        #[arg(long)]
        file: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
    },
    /// List the built-in catalog, or show one record.
    Catalog {
        #[arg(long)]
        knot: Option<String>,
    },
}

/// Parses `args` (including the program name), runs the command, and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return EXIT_OK;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let mut buf = Vec::new();
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli, &mut buf)),
            Err(e) => Err(CliError::Usage(e.to_string())),
        },
        None => execute(&cli, &mut buf),
    };
    let result = result.and_then(|()| out.write_all(&buf).map_err(|e| CliError::Io(e.to_string())));
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn catalog_with(file: Option<&PathBuf>) -> Result<Catalog, CliError> {
    let mut c = load_builtin_catalog()?.with_env_extras()?;
    if let Some(path) = file {
        c.extend(ingest_pd_file(path)?)?;
    }
    Ok(c)
}

fn resolve(source: &KnotSource) -> Result<KnotRecord, CliError> {
    if let Some(pd) = &source.pd {
        return Ok(KnotRecord::new("pd", PlanarDiagram::parse_pd(pd)?));
    }
    if let Some(path) = &source.file {
        let mut records = ingest_pd_file(path)?;
        if records.len() != 1 {
            return Err(CliError::Input(format!("{} holds {} knots; expected one", path.display(), records.len())));
        }
        return Ok(records.remove(0));
    }
    let name = source.knot.as_deref().ok_or_else(|| CliError::Usage("no knot given".into()))?;
    Ok(catalog_with(None)?.lookup(name)?.clone())
}

fn pair(names: &[String], catalog: &Catalog) -> Result<(KnotRecord, KnotRecord), CliError> {
    let [a, b] = names else {
        return Err(CliError::Usage(format!("expected two knot names, got {}", names.len())));
    };
    Ok((catalog.lookup(a)?.clone(), catalog.lookup(b)?.clone()))
}

fn emit(out: &mut dyn Write, format: Format, text: &str, value: &impl Serialize) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    match format {
        Format::Text => writeln!(out, "{text}").map_err(io),
        Format::Json => {
            let s = serde_json::to_string_pretty(value).map_err(|e| CliError::Computation(e.to_string()))?;
            writeln!(out, "{s}").map_err(io)
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let fmt = cli.format;
    match &cli.command {
        Command::Alexander { source } => {
            let k = resolve(source)?;
            let p = alexander_polynomial(&k.pd)?;
            emit(out, fmt, &p.to_string(), &json!({ "knot": k.name, "alexander": p }))
        }
        Command::Jones { source, oracle } => {
            let k = resolve(source)?;
            let p = if *oracle { jones_polynomial_naive(&k.pd)? } else { jones_polynomial(&k.pd)? };
            emit(out, fmt, &p.to_string(), &json!({ "knot": k.name, "jones": p }))
        }
        Command::Khovanov { source, field, compute_s, limits, oracle } => {
            let k = resolve(source)?;
            let opts = limits.options();
            let ranks = match (oracle, field) {
                (false, f) => khovanov_homology_with(&k.pd, *f, &opts)?,
                (true, FieldChoice::Q) => khovanov_homology_full_cube::<Q>(&k.pd, opts.size_limit)?,
                (true, FieldChoice::F2) => khovanov_homology_full_cube::<F2>(&k.pd, opts.size_limit)?,
            };
            let s = if *compute_s { Some(s_value(&k.pd, &opts, *oracle)?.s) } else { None };
            let mut text = format!("{ranks}total rank: {}", ranks.total());
            if let Some(s) = s {
                text.push_str(&format!("\ns = {s}"));
            }
            emit(out, fmt, &text, &json!({ "knot": k.name, "field": field, "khovanov": ranks, "s": s }))
        }
        Command::S { source, limits, oracle } => {
            let k = resolve(source)?;
            let r = s_value(&k.pd, &limits.options(), *oracle)?;
            let text = format!("s = {} (smin {}, smax {}, over {})", r.s, r.smin, r.smax, r.field);
            emit(out, fmt, &text, &json!({ "knot": k.name, "result": r }))
        }
        Command::Colorings { source, modulus } => {
            let k = resolve(source)?;
            let n = fox_colorings_count(&k.pd, *modulus)?;
            emit(out, fmt, &n.to_string(), &json!({ "knot": k.name, "modulus": modulus, "colorings": n.to_string() }))
        }
        Command::SliceReport { source, compute_s, limits } => {
            let k = resolve(source)?;
            let r = slice_report_with(&k.name, &k.pd, *compute_s, &limits.options())?;
            emit(out, fmt, &r.to_string(), &r)
        }
        Command::Mutate { source, region } => {
            let k = resolve(source)?;
            let r = if region.is_empty() {
                if !k.matches("kt") {
                    return Err(CliError::Usage("--region is required unless the knot is kt".into()));
                }
                kt_mutation_region(&k.pd)?
            } else {
                TangleRegion::from_crossings(&k.pd, region.iter().copied())?
            };
            let m = k.pd.mutate(&r)?;
            let crossings: Vec<usize> = r.crossings.iter().copied().collect();
            emit(out, fmt, &m.to_pd_string(), &json!({ "knot": k.name, "region": crossings, "pd": m.to_pd_string() }))
        }
        Command::ConnectSum { knots, arcs, file } => {
            let (a, b) = pair(knots, &catalog_with(file.as_ref())?)?;
            let [a1, a2] = arcs[..] else {
                return Err(CliError::Usage("--arcs takes two labels".into()));
            };
            let sum = a.pd.connected_sum(&b.pd, a1, a2)?;
            let p = alexander_polynomial(&sum)?;
            let text = format!("{}\nalexander: {p}", sum.to_pd_string());
            emit(out, fmt, &text, &json!({ "knots": [a.name, b.name], "pd": sum.to_pd_string(), "alexander": p }))
        }
        Command::CrossingChange { source, index } => {
            let k = resolve(source)?;
            let c = k.pd.crossing_change(*index)?;
            emit(out, fmt, &c.to_pd_string(), &json!({ "knot": k.name, "index": index, "pd": c.to_pd_string() }))
        }
        Command::Transfer { cert, knots, file, limits } => {
            let text = std::fs::read_to_string(cert)
                .map_err(|e| CliError::Certificate(format!("cannot read {}: {e}", cert.display())))?;
            let cert: TraceSiblingCertificate = text.parse()?;
            let catalog = catalog_with(file.as_ref())?;
            let cert = catalog.resolve_certificate(&cert)?;
            let (a, b) = pair(knots, &catalog)?;
            let opts = limits.options();
            let ra = slice_report_with(&a.name, &a.pd, true, &opts)?;
            let rb = slice_report_with(&b.name, &b.pd, true, &opts)?;
            let (ra, rb) = trace_transfer_verdict(&cert, &ra, &rb)?;
            let lines: Vec<String> = [&ra, &rb]
                .iter()
                .map(|r| format!("{} [own s = {}]", transfer_summary(r), r.s.expect("s computed")))
                .collect();
            emit(out, fmt, &lines.join("\n"), &json!({ "certificate": cert, "reports": [ra, rb] }))
        }
        Command::Catalog { knot } => {
            let c = catalog_with(None)?;
            let records: Vec<&KnotRecord> = match knot {
                Some(n) => vec![c.lookup(n)?],
                None => c.records().iter().collect(),
            };
            let lines: Vec<String> = records
                .iter()
                .map(|r| {
                    let mut l = format!("{} ({} crossings)", r.name, r.pd.crossing_count());
                    if !r.aliases.is_empty() {
                        l.push_str(&format!(" aka {}", r.aliases.join(", ")));
                    }
                    if knot.is_some() {
                        l.push_str(&format!("\n{}", r.pd.to_pd_string()));
                    }
                    l
                })
                .collect();
            let value: Vec<_> = records
                .iter()
                .map(|r| {
                    json!({
                        "name": r.name,
                        "aliases": r.aliases,
                        "crossings": r.pd.crossing_count(),
                        "pd": r.pd.to_pd_string(),
                        "reference": r.reference,
                    })
                })
                .collect();
            emit(out, fmt, &lines.join("\n"), &value)
        }
    }
}

fn s_value(d: &PlanarDiagram, opts: &KhovanovOptions, oracle: bool) -> Result<crate::khovanov::SInvariantResult, CliError> {
    Ok(if oracle { s_invariant_full_cube(d, opts.size_limit)? } else { s_invariant_with(d, opts)? })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("knot").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn alexander_trefoil() {
        assert_eq!(call(&["alexander", "--knot", "trefoil"]), (0, "t^2 - t + 1\n".into(), String::new()));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["alexander", "--knot", "trefoil", "--pd", "X[1,1,2,2]"]).0, EXIT_USAGE);
        assert_eq!(call(&["alexander"]).0, EXIT_USAGE);
        assert_eq!(call(&["alexander", "--knot", "nonexistent"]).0, EXIT_INPUT);
        assert_eq!(call(&["alexander", "--pd", "X[1,2,3"]).0, EXIT_INPUT);
        assert_eq!(call(&["khovanov", "--knot", "trefoil", "--size-limit", "3"]).0, EXIT_LIMIT);
        assert_eq!(call(&["transfer", "--cert", "/nonexistent.cert", "--knots", "unknot,kink"]).0, EXIT_CERTIFICATE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn text_and_json_agree() {
        let (_, text, _) = call(&["s", "--knot", "left-trefoil"]);
        assert!(text.starts_with("s = -2 "), "{text}");
        let (_, j, _) = call(&["s", "--knot", "left-trefoil", "--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(&j).unwrap();
        assert_eq!(v["result"]["s"], -2);
        let (_, o, _) = call(&["s", "--knot", "left-trefoil", "--oracle", "--threads", "1"]);
        assert_eq!(o, text);
    }

    #[test]
    fn subcommands_run() {
        for args in [
            vec!["jones", "--knot", "figure-eight", "--oracle"],
            vec!["khovanov", "--knot", "trefoil", "--field", "F2", "--compute-s"],
            vec!["colorings", "--knot", "trefoil", "--modulus", "3"],
            vec!["slice-report", "--knot", "conway", "--compute-s"],
            vec!["mutate", "--knot", "kt"],
            vec!["connect-sum", "--knots", "trefoil,conway"],
            vec!["crossing-change", "--knot", "trefoil", "--index", "0"],
            vec!["catalog"],
            vec!["catalog", "--knot", "kt", "--format", "json"],
        ] {
            let (code, out, err) = call(&args);
            assert_eq!(code, 0, "{args:?}: {err}");
            assert!(!out.is_empty());
        }
        assert_eq!(call(&["colorings", "--knot", "trefoil"]).1, "9\n");
        let (_, report, _) = call(&["slice-report", "--knot", "conway", "--compute-s"]);
        assert!(report.contains("verdict: Inconclusive") && report.contains("s: 0"), "{report}");
        assert!(report.contains("topologically slice (Freedman): true"));
        let (_, sum, _) = call(&["connect-sum", "--knots", "trefoil,conway"]);
        assert!(sum.ends_with("alexander: t^2 - t + 1\n"), "{sum}");
    }

    #[test]
    fn transfer_resolves_aliases() {
        // A made-up pairing: only the plumbing is under test here.
        let dir = tempfile::tempdir().unwrap();
        let write = |name: &str, trusted: bool| {
            let path = dir.path().join(name);
            std::fs::write(&path, format!("a: trefoil\nb: kt\nprovenance: test fixture\ntrusted: {trusted}\n")).unwrap();
            path.to_str().unwrap().to_string()
        };
        let good = write("good.cert", true);
        let (code, out, err) = call(&["transfer", "--cert", &good, "--knots", "kt,trefoil"]);
        assert_eq!(code, 0, "{err}");
        assert!(out.contains("11n_42: NOT SLICE (via trace sibling 3_1, s=2)"), "{out}");
        let bad = write("bad.cert", false);
        assert_eq!(call(&["transfer", "--cert", &bad, "--knots", "kt,trefoil"]).0, EXIT_CERTIFICATE);
        assert_eq!(call(&["transfer", "--cert", &good, "--knots", "kt,5_1"]).0, EXIT_CERTIFICATE);
    }
}
