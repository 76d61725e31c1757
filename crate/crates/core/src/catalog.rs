//! Built-in knot table, PD file ingestion, and JSON reports.
//!
//! PD files hold one knot per line as `name: X[..] X[..] ...`; blank lines
//! and `#` comments are ignored, and an empty code stands for the
//! 0-crossing unknot.

use std::collections::{BTreeSet, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::alexander::{alexander_polynomial, genus_lower_bound, knot_determinant};
use crate::diagram::{PlanarDiagram, TangleRegion};
use crate::error::{CatalogError, DiagramError};
use crate::jones::jones_polynomial;
use crate::khovanov::{khovanov_homology_with, BigradedRanks, FieldChoice, KhovanovOptions};
use crate::laurent::LaurentPoly;
use crate::slice::{Obstruction, SliceReport, TraceSiblingCertificate, TransferNote, Verdict};

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable naming an extra PD file appended to the catalog by
/// [`Catalog::with_env_extras`].
pub const EXTRA_KNOTS_ENV: &str = "KNOTWORK_EXTRA_KNOTS";

const BUNDLED_PD: &str = include_str!("../data/knotinfo.pd");
const BUNDLED_REFERENCE: &str = include_str!("../data/reference.tsv");
const KNOTINFO: &str = "KnotInfo";

/// Crossings of the bundled Kinoshita-Terasaka diagram forming the tangle
/// whose rotation yields the Conway knot.
pub const KT_MUTATION_CROSSINGS: [usize; 5] = [0, 1, 3, 4, 10];

/// Crossing of the bundled Conway diagram whose change gives an unknot.
pub const CONWAY_UNKNOTTING_CROSSING: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceData {
    pub alexander: Option<LaurentPoly>,
    pub determinant: Option<u64>,
    /// Seifert genus; documentation only, never computed.
    pub genus: Option<u64>,
    pub s: Option<i64>,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotRecord {
    pub name: String,
    pub aliases: Vec<String>,
    pub pd: PlanarDiagram,
    pub reference: Option<ReferenceData>,
    /// Earlier record in the same file with an identical Gauss code.
    pub duplicate_of: Option<String>,
}

impl KnotRecord {
    pub fn new(name: impl Into<String>, pd: PlanarDiagram) -> Self {
        Self { name: name.into(), aliases: Vec::new(), pd, reference: None, duplicate_of: None }
    }

    pub fn matches(&self, name: &str) -> bool {
        let name = name.to_ascii_lowercase();
        self.name.to_ascii_lowercase() == name || self.aliases.contains(&name)
    }

    /// Checks stored reference values against the engine.
    pub fn validate(&self) -> Result<(), CatalogError> {
        let Some(r) = &self.reference else { return Ok(()) };
        let fail = |reason: String| CatalogError::Validation { name: self.name.clone(), reason };
        if let Some(expected) = &r.alexander {
            let got = alexander_polynomial(&self.pd)?;
            if !got.equal_up_to_units(expected) {
                return Err(fail(format!("alexander polynomial {got}, reference {expected}")));
            }
        }
        if let Some(expected) = r.determinant {
            let got = knot_determinant(&self.pd)?;
            if got != expected {
                return Err(fail(format!("determinant {got}, reference {expected}")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    records: Vec<KnotRecord>,
}

impl Catalog {
    pub fn records(&self) -> &[KnotRecord] {
        &self.records
    }

    pub fn lookup(&self, name: &str) -> Result<&KnotRecord, CatalogError> {
        self.records.iter().find(|r| r.matches(name)).ok_or_else(|| CatalogError::NotFound(name.to_string()))
    }

    /// Appends records, rejecting names already present.
    pub fn extend(&mut self, records: Vec<KnotRecord>) -> Result<(), CatalogError> {
        for r in &records {
            if let Some(clash) = std::iter::once(&r.name).chain(&r.aliases).find(|n| self.lookup(n).is_ok()) {
                return Err(CatalogError::Validation { name: r.name.clone(), reason: format!("name `{clash}` already in catalog") });
            }
        }
        self.records.extend(records);
        Ok(())
    }

    /// Rewrites the certificate's knot names to canonical record names, so
    /// that it matches reports built from catalog records.
    pub fn resolve_certificate(&self, cert: &TraceSiblingCertificate) -> Result<TraceSiblingCertificate, CatalogError> {
        Ok(TraceSiblingCertificate {
            a: self.lookup(&cert.a)?.name.clone(),
            b: self.lookup(&cert.b)?.name.clone(),
            ..cert.clone()
        })
    }

    /// Appends the PD file named by [`EXTRA_KNOTS_ENV`], if set.
    pub fn with_env_extras(mut self) -> Result<Self, CatalogError> {
        if let Some(path) = std::env::var_os(EXTRA_KNOTS_ENV) {
            self.extend(ingest_pd_file(path)?)?;
        }
        Ok(self)
    }
}

fn parse_reference() -> Result<HashMap<String, ReferenceData>, CatalogError> {
    let mut out = HashMap::new();
    for (n, line) in BUNDLED_REFERENCE.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: String| CatalogError::Format { line: n + 1, reason };
        let f: Vec<&str> = line.split('\t').collect();
        let [name, alex, det, genus, s] = f[..] else {
            return Err(bad(format!("expected 5 fields, found {}", f.len())));
        };
        let num = |x: &str| x.parse::<i64>().map_err(|e| bad(format!("`{x}`: {e}")));
        let alexander = opt(alex).map(|a| LaurentPoly::parse(a, "t")).transpose().map_err(|e| bad(e.to_string()))?;
        out.insert(
            name.to_string(),
            ReferenceData {
                alexander,
                determinant: opt(det).map(num).transpose()?.map(|d| d as u64),
                genus: opt(genus).map(num).transpose()?.map(|g| g as u64),
                s: opt(s).map(num).transpose()?,
                provenance: KNOTINFO.to_string(),
            },
        );
    }
    Ok(out)
}

fn opt(x: &str) -> Option<&str> {
    (!x.is_empty()).then_some(x)
}

fn aliases_for(name: &str) -> &'static [&'static str] {
    match name {
        "3_1" => &["trefoil", "right-trefoil"],
        "4_1" => &["figure-eight"],
        "11n_34" => &["conway"],
        "11n_42" => &["kinoshita-terasaka", "kt"],
        _ => &[],
    }
}

/// The bundled table: the 0-crossing unknot, a one-crossing kink, both
/// trefoils, and every prime knot through nine crossings plus the Conway and
/// Kinoshita-Terasaka knots. Every record is checked against its reference
/// values; any mismatch is an error.
pub fn load_builtin_catalog() -> Result<Catalog, CatalogError> {
    let trivial = ReferenceData {
        alexander: Some(LaurentPoly::one()),
        determinant: Some(1),
        genus: Some(0),
        s: Some(0),
        provenance: "trivial knot".into(),
    };
    let mut records = vec![
        KnotRecord { reference: Some(trivial.clone()), ..KnotRecord::new("unknot", PlanarDiagram::unknot()) },
        KnotRecord {
            reference: Some(trivial),
            ..KnotRecord::new("kink", PlanarDiagram::parse_pd("X[1,1,2,2]").expect("kink diagram"))
        },
    ];
    let mut reference = parse_reference()?;
    for mut r in parse_pd_records(BUNDLED_PD)? {
        r.aliases = aliases_for(&r.name).iter().map(|a| a.to_string()).collect();
        r.reference = reference.remove(&r.name);
        records.push(r);
    }
    let right = records.iter().find(|r| r.name == "3_1").cloned().ok_or_else(|| missing("3_1"))?;
    let mut left_ref = right.reference.clone();
    if let Some(r) = &mut left_ref {
        r.s = r.s.map(|s| -s);
    }
    records.push(KnotRecord { aliases: vec![], reference: left_ref, ..KnotRecord::new("left-trefoil", right.pd.mirror()) });
    for r in &records {
        r.validate()?;
    }
    let catalog = Catalog { records };
    let conway = &catalog.lookup("conway")?.pd;
    let kt = &catalog.lookup("kt")?.pd;
    for (name, d) in [("11n_34", conway), ("11n_42", kt)] {
        if !alexander_polynomial(d)?.is_one() {
            return Err(CatalogError::Validation { name: name.into(), reason: "alexander polynomial is not 1".into() });
        }
    }
    if jones_polynomial(conway)? != jones_polynomial(kt)? {
        return Err(CatalogError::Validation { name: "11n_42".into(), reason: "jones polynomial differs from 11n_34".into() });
    }
    Ok(catalog)
}

fn missing(name: &str) -> CatalogError {
    CatalogError::Validation { name: name.into(), reason: "missing from bundled data".into() }
}

/// The tangle of the bundled Kinoshita-Terasaka diagram used for mutation.
pub fn kt_mutation_region(kt: &PlanarDiagram) -> Result<TangleRegion, DiagramError> {
    TangleRegion::from_crossings(kt, KT_MUTATION_CROSSINGS)
}

/// Parses PD records. Nothing is returned unless every line is valid.
pub fn parse_pd_records(text: &str) -> Result<Vec<KnotRecord>, CatalogError> {
    let mut records: Vec<KnotRecord> = Vec::new();
    let mut names = BTreeSet::new();
    let mut seen = HashMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let format = |reason: &str| CatalogError::Format { line: line_no, reason: reason.to_string() };
        let (name, code) = line.split_once(':').ok_or_else(|| format("expected `name: X[..] ...`"))?;
        let name = name.trim();
        if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == ',') {
            return Err(format("knot names must be nonempty without spaces or commas"));
        }
        if !names.insert(name.to_string()) {
            return Err(format(&format!("duplicate name `{name}`")));
        }
        let code = code.trim();
        let pd = if code.is_empty() {
            PlanarDiagram::unknot()
        } else {
            PlanarDiagram::parse_pd(code).map_err(|source| CatalogError::Line { line: line_no, source })?
        };
        pd.require_knot().map_err(|source| CatalogError::Line { line: line_no, source })?;
        let mut record = KnotRecord::new(name, pd);
        let gauss = record.pd.to_gauss_code();
        match seen.get(&gauss) {
            Some(first) => record.duplicate_of = Some(String::clone(first)),
            None => {
                seen.insert(gauss, name.to_string());
            }
        }
        records.push(record);
    }
    Ok(records)
}

pub fn ingest_pd_file(path: impl AsRef<Path>) -> Result<Vec<KnotRecord>, CatalogError> {
    parse_pd_records(&std::fs::read_to_string(path)?)
}

/// One knot in an exported report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnotSummary {
    pub name: String,
    /// Crossings of the diagram (an upper bound on the crossing number).
    pub crossing_number: usize,
    pub writhe: i64,
    pub alexander: LaurentPoly,
    pub determinant: u64,
    pub genus_lower_bound: u64,
    pub jones: LaurentPoly,
    pub khovanov_field: Option<FieldChoice>,
    pub khovanov: Option<BigradedRanks>,
    pub s: Option<i64>,
    pub verdict: Verdict,
    pub obstructions: Vec<Obstruction>,
    pub transfer: Option<TransferNote>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub knots: Vec<KnotSummary>,
}

pub fn summarize(
    record: &KnotRecord,
    report: &SliceReport,
    khovanov: Option<FieldChoice>,
    opts: &KhovanovOptions,
) -> Result<KnotSummary, CatalogError> {
    if report.knot != record.name {
        return Err(CatalogError::Schema(format!("report for `{}` paired with record `{}`", report.knot, record.name)));
    }
    let d = &record.pd;
    Ok(KnotSummary {
        name: record.name.clone(),
        crossing_number: d.crossing_count(),
        writhe: d.writhe(),
        alexander: alexander_polynomial(d)?,
        determinant: knot_determinant(d)?,
        genus_lower_bound: genus_lower_bound(d)?,
        jones: jones_polynomial(d)?,
        khovanov_field: khovanov,
        khovanov: khovanov.map(|f| khovanov_homology_with(d, f, opts)).transpose()?,
        s: report.s,
        verdict: report.verdict,
        obstructions: report.obstructions.clone(),
        transfer: report.transfer.clone(),
    })
}

/// Pretty-printed JSON for records paired with their slice reports.
pub fn export_report(
    records: &[KnotRecord],
    reports: &[SliceReport],
    khovanov: Option<FieldChoice>,
    opts: &KhovanovOptions,
) -> Result<String, CatalogError> {
    if records.len() != reports.len() {
        return Err(CatalogError::Schema(format!("{} records but {} reports", records.len(), reports.len())));
    }
    let knots = records.iter().zip(reports).map(|(r, s)| summarize(r, s, khovanov, opts)).collect::<Result<_, _>>()?;
    render(&ReportDocument { schema_version: SCHEMA_VERSION, knots })
}

pub fn render(doc: &ReportDocument) -> Result<String, CatalogError> {
    serde_json::to_string_pretty(doc).map_err(|e| CatalogError::Schema(e.to_string()))
}

/// Parses and checks a report: known schema version, no unknown fields, and
/// verdicts consistent with their obstructions.
pub fn validate_report(json: &str) -> Result<ReportDocument, CatalogError> {
    let doc: ReportDocument = serde_json::from_str(json).map_err(|e| CatalogError::Schema(e.to_string()))?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(CatalogError::Schema(format!("unsupported schema_version {}", doc.schema_version)));
    }
    for k in &doc.knots {
        let bad = |why: &str| CatalogError::Schema(format!("knot `{}`: {why}", k.name));
        if (k.verdict == Verdict::NotSlice) == k.obstructions.is_empty() {
            return Err(bad("verdict disagrees with obstructions"));
        }
        if k.obstructions.contains(&Obstruction::TraceTransfer) != k.transfer.is_some() {
            return Err(bad("trace-transfer obstruction without transfer note, or the reverse"));
        }
        if k.khovanov.is_some() != k.khovanov_field.is_some() {
            return Err(bad("khovanov ranks and field must appear together"));
        }
    }
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slice::slice_report;

    #[test]
    fn builtin_catalog_loads() {
        let c = load_builtin_catalog().unwrap();
        assert!(c.records().len() >= 88);
        let t = c.lookup("trefoil").unwrap();
        assert_eq!(t.pd.crossing_count(), 3);
        assert_eq!(t.pd.writhe(), 3);
        assert_eq!(alexander_polynomial(&t.pd).unwrap().to_string(), "t^2 - t + 1");
        assert_eq!(c.lookup("left-trefoil").unwrap().pd.writhe(), -3);
        let conway = c.lookup("Conway").unwrap();
        assert_eq!(conway.pd.crossing_count(), 11);
        assert!(alexander_polynomial(&conway.pd).unwrap().is_one());
        assert_eq!(conway.reference.as_ref().unwrap().genus, Some(3));
        assert_eq!(c.lookup("kt").unwrap().reference.as_ref().unwrap().genus, Some(2));
        assert!(matches!(c.lookup("nonexistent"), Err(CatalogError::NotFound(_))));
    }

    #[test]
    fn documented_sites() {
        let c = load_builtin_catalog().unwrap();
        let kt = &c.lookup("kt").unwrap().pd;
        let region = kt_mutation_region(kt).unwrap();
        let mutant = kt.mutate(&region).unwrap();
        assert_ne!(mutant.to_gauss_code(), kt.to_gauss_code());
        assert_eq!(jones_polynomial(&mutant).unwrap(), jones_polynomial(kt).unwrap());
        let conway = &c.lookup("conway").unwrap().pd;
        let changed = conway.crossing_change(CONWAY_UNKNOTTING_CROSSING).unwrap();
        assert!(alexander_polynomial(&changed).unwrap().is_one());
        assert!(jones_polynomial(&changed).unwrap().is_one());
    }

    #[test]
    fn certificate_names_resolve_through_aliases() {
        let c = load_builtin_catalog().unwrap();
        let cert = TraceSiblingCertificate { a: "Conway".into(), b: "kt".into(), provenance: String::new(), trusted: false };
        let r = c.resolve_certificate(&cert).unwrap();
        assert_eq!((r.a.as_str(), r.b.as_str()), ("11n_34", "11n_42"));
        let missing = TraceSiblingCertificate { b: "kprime".into(), ..cert };
        assert!(matches!(c.resolve_certificate(&missing), Err(CatalogError::NotFound(_))));
    }

    #[test]
    fn pd_records() {
        let text = "# test\ntrefoil: X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]\n\nround: \nagain: X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]\n";
        let r = parse_pd_records(text).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r[1].pd.is_unknot_diagram());
        assert_eq!(r[2].duplicate_of.as_deref(), Some("trefoil"));
        let builtin = load_builtin_catalog().unwrap();
        assert_eq!(
            alexander_polynomial(&r[0].pd).unwrap(),
            alexander_polynomial(&builtin.lookup("trefoil").unwrap().pd).unwrap()
        );
    }

    #[test]
    fn pd_records_all_or_nothing() {
        let err = parse_pd_records("ok: X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]\nbad: X[1,1,1,2] X[2,3,3,4]\n").unwrap_err();
        assert!(matches!(err, CatalogError::Line { line: 2, .. }), "{err}");
        assert!(matches!(parse_pd_records("a: \na: \n"), Err(CatalogError::Format { line: 2, .. })));
        assert!(matches!(parse_pd_records("no colon here"), Err(CatalogError::Format { line: 1, .. })));
    }

    #[test]
    fn report_round_trip() {
        let c = load_builtin_catalog().unwrap();
        let records: Vec<KnotRecord> = ["unknot", "trefoil"].iter().map(|n| c.lookup(n).unwrap().clone()).collect();
        let reports: Vec<SliceReport> = records.iter().map(|r| slice_report(&r.name, &r.pd, true).unwrap()).collect();
        let opts = KhovanovOptions::default();
        let json = export_report(&records, &reports, Some(FieldChoice::Q), &opts).unwrap();
        assert_eq!(json, export_report(&records, &reports, Some(FieldChoice::Q), &opts).unwrap());
        let doc = validate_report(&json).unwrap();
        assert_eq!(doc.knots[0].verdict, Verdict::Inconclusive);
        assert_eq!(doc.knots[0].s, Some(0));
        assert_eq!(doc.knots[1].obstructions, vec![Obstruction::DeterminantNonsquare, Obstruction::SNonzero]);
        assert_eq!(render(&doc).unwrap(), json);
        assert!(json.contains("\"schema_version\": 1"));
        assert!(validate_report(&json.replace("\"schema_version\": 1", "\"schema_version\": 9")).is_err());
        assert!(validate_report(&json.replace("\"writhe\"", "\"twist\"")).is_err());
    }
}
