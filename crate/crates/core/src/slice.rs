//! Sliceness obstructions and their transfer between knots with
//! diffeomorphic traces.
//!
//! Verdicts are two-valued: either some obstruction fires and the knot is
//! not slice, or nothing is known. No computation here certifies that a knot
//! is slice.

use std::fmt;
use std::str::FromStr;

use num_integer::Roots;
use serde::{Deserialize, Serialize};

use crate::alexander::{alexander_polynomial, genus_lower_bound, knot_determinant};
use crate::diagram::PlanarDiagram;
use crate::error::{InvariantError, SliceError};
use crate::khovanov::{s_invariant_with, KhovanovOptions};
use crate::laurent::LaurentPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Verdict {
    NotSlice,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NotSlice => "NotSlice",
            Verdict::Inconclusive => "Inconclusive",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Obstruction {
    /// `|Δ(-1)|` is not a perfect square.
    DeterminantNonsquare,
    /// Rasmussen's s-invariant is nonzero.
    SNonzero,
    /// A trace sibling is not slice.
    TraceTransfer,
}

impl Obstruction {
    pub fn as_str(self) -> &'static str {
        match self {
            Obstruction::DeterminantNonsquare => "determinant-nonsquare",
            Obstruction::SNonzero => "s-nonzero",
            Obstruction::TraceTransfer => "trace-transfer",
        }
    }
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where a transferred verdict came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferNote {
    pub sibling: String,
    pub sibling_s: Option<i64>,
    /// Obstructions that fired on the sibling itself.
    pub sibling_obstructions: Vec<Obstruction>,
    pub provenance: String,
}

/// Caveat attached to every transfer: traces do not determine s.
pub const S_NOT_TRACE_INVARIANT: &str =
    "s is not an invariant of the knot trace; knots with the same trace may have different s";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceReport {
    pub knot: String,
    pub alexander: LaurentPoly,
    pub determinant: u64,
    pub determinant_is_square: bool,
    pub genus_lower_bound: u64,
    pub s: Option<i64>,
    /// `Δ = 1`, hence topologically slice by Freedman's theorem.
    pub topologically_slice_by_freedman: bool,
    pub verdict: Verdict,
    pub obstructions: Vec<Obstruction>,
    pub transfer: Option<TransferNote>,
}

impl SliceReport {
    /// Obstructions computed from the knot itself, ignoring transfers.
    pub fn own_obstructions(&self) -> Vec<Obstruction> {
        self.obstructions.iter().copied().filter(|&o| o != Obstruction::TraceTransfer).collect()
    }

    fn own_verdict(&self) -> Verdict {
        if self.own_obstructions().is_empty() {
            Verdict::Inconclusive
        } else {
            Verdict::NotSlice
        }
    }
}

impl fmt::Display for SliceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "knot: {}", self.knot)?;
        writeln!(f, "alexander: {}", self.alexander)?;
        writeln!(f, "determinant: {} (square: {})", self.determinant, self.determinant_is_square)?;
        writeln!(f, "genus lower bound: {}", self.genus_lower_bound)?;
        match self.s {
            Some(s) => writeln!(f, "s: {s}")?,
            None => writeln!(f, "s: not computed")?,
        }
        writeln!(f, "topologically slice (Freedman): {}", self.topologically_slice_by_freedman)?;
        let obs: Vec<&str> = self.obstructions.iter().map(|o| o.as_str()).collect();
        write!(f, "verdict: {}", self.verdict)?;
        if !obs.is_empty() {
            write!(f, " [{}]", obs.join(", "))?;
        }
        if let Some(t) = &self.transfer {
            write!(f, "\n{}", transfer_line(&self.knot, t))?;
            write!(f, "\nnote: {S_NOT_TRACE_INVARIANT}")?;
        }
        Ok(())
    }
}

fn transfer_line(knot: &str, t: &TransferNote) -> String {
    match t.sibling_s {
        Some(s) => format!("{knot}: NOT SLICE (via trace sibling {}, s={s})", t.sibling),
        None => format!("{knot}: NOT SLICE (via trace sibling {})", t.sibling),
    }
}

/// Fox–Milnor necessary condition: a slice knot has square determinant.
/// Returns `true` when the test passes (no obstruction).
pub fn fox_milnor_determinant_test(d: &PlanarDiagram) -> Result<bool, InvariantError> {
    Ok(is_square(knot_determinant(d)?))
}

fn is_square(n: u64) -> bool {
    let r = n.sqrt();
    r * r == n
}

pub fn slice_report(name: &str, d: &PlanarDiagram, compute_s: bool) -> Result<SliceReport, SliceError> {
    slice_report_with(name, d, compute_s, &KhovanovOptions::default())
}

pub fn slice_report_with(
    name: &str,
    d: &PlanarDiagram,
    compute_s: bool,
    opts: &KhovanovOptions,
) -> Result<SliceReport, SliceError> {
    let alexander = alexander_polynomial(d)?;
    let determinant = knot_determinant(d)?;
    let determinant_is_square = is_square(determinant);
    let s = if compute_s { Some(s_invariant_with(d, opts)?.s) } else { None };
    let mut obstructions = Vec::new();
    if !determinant_is_square {
        obstructions.push(Obstruction::DeterminantNonsquare);
    }
    if s.is_some_and(|s| s != 0) {
        obstructions.push(Obstruction::SNonzero);
    }
    Ok(SliceReport {
        knot: name.to_string(),
        topologically_slice_by_freedman: alexander.is_one(),
        alexander,
        determinant,
        determinant_is_square,
        genus_lower_bound: genus_lower_bound(d)?,
        s,
        verdict: if obstructions.is_empty() { Verdict::Inconclusive } else { Verdict::NotSlice },
        obstructions,
        transfer: None,
    })
}

/// User-supplied claim that two knots have diffeomorphic 0-traces.
///
/// Text format, one `key: value` per line, `#` comments allowed:
///
/// ```text
/// a: conway
/// b: kprime
/// provenance: handle calculus on the 0-trace
/// trusted: true
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceSiblingCertificate {
    pub a: String,
    pub b: String,
    pub provenance: String,
    pub trusted: bool,
}

impl FromStr for TraceSiblingCertificate {
    type Err = SliceError;

    fn from_str(text: &str) -> Result<Self, SliceError> {
        let (mut a, mut b, mut provenance, mut trusted) = (None, None, None, None);
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |why: &str| SliceError::CertificateFormat(format!("line {}: {why}", n + 1));
            let (key, value) = line.split_once(':').ok_or_else(|| bad("expected `key: value`"))?;
            let value = value.trim().to_string();
            let slot = match key.trim() {
                "a" => &mut a,
                "b" => &mut b,
                "provenance" => &mut provenance,
                "trusted" => &mut trusted,
                other => return Err(bad(&format!("unknown key `{other}`"))),
            };
            if slot.replace(value).is_some() {
                return Err(bad("duplicate key"));
            }
        }
        let need = |v: Option<String>, k: &str| v.ok_or_else(|| SliceError::CertificateFormat(format!("missing `{k}`")));
        let trusted = match need(trusted, "trusted")?.as_str() {
            "true" => true,
            "false" => false,
            other => return Err(SliceError::CertificateFormat(format!("trusted must be true or false, got `{other}`"))),
        };
        let cert = Self { a: need(a, "a")?, b: need(b, "b")?, provenance: need(provenance, "provenance")?, trusted };
        if cert.a == cert.b {
            return Err(SliceError::CertificateFormat("a and b name the same knot".into()));
        }
        Ok(cert)
    }
}

impl fmt::Display for TraceSiblingCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "a: {}", self.a)?;
        writeln!(f, "b: {}", self.b)?;
        writeln!(f, "provenance: {}", self.provenance)?;
        writeln!(f, "trusted: {}", self.trusted)
    }
}

/// Applies the trace embedding lemma in its contrapositive form: if one
/// sibling is not slice, neither is the other. Reports may be given in
/// either order; the result is in the order `(cert.a, cert.b)`.
pub fn trace_transfer_verdict(
    cert: &TraceSiblingCertificate,
    first: &SliceReport,
    second: &SliceReport,
) -> Result<(SliceReport, SliceReport), SliceError> {
    if !cert.trusted {
        return Err(SliceError::UntrustedCertificate);
    }
    let mismatch = |r: &SliceReport| SliceError::CertificateMismatch {
        report: r.knot.clone(),
        a: cert.a.clone(),
        b: cert.b.clone(),
    };
    let (ra, rb) = if first.knot == cert.a && second.knot == cert.b {
        (first, second)
    } else if first.knot == cert.b && second.knot == cert.a {
        (second, first)
    } else if first.knot != cert.a && first.knot != cert.b {
        return Err(mismatch(first));
    } else {
        return Err(mismatch(second));
    };
    let receive = |me: &SliceReport, sibling: &SliceReport| {
        let mut out = me.clone();
        out.obstructions.retain(|&o| o != Obstruction::TraceTransfer);
        out.transfer = None;
        out.verdict = out.own_verdict();
        if sibling.own_verdict() == Verdict::NotSlice {
            out.obstructions.push(Obstruction::TraceTransfer);
            out.verdict = Verdict::NotSlice;
            out.transfer = Some(TransferNote {
                sibling: sibling.knot.clone(),
                sibling_s: sibling.s,
                sibling_obstructions: sibling.own_obstructions(),
                provenance: cert.provenance.clone(),
            });
        }
        out
    };
    Ok((receive(ra, rb), receive(rb, ra)))
}

/// One-line summary as printed by the `transfer` command.
pub fn transfer_summary(r: &SliceReport) -> String {
    match &r.transfer {
        Some(t) => transfer_line(&r.knot, t),
        None => match r.verdict {
            Verdict::NotSlice => format!("{}: NOT SLICE", r.knot),
            Verdict::Inconclusive => format!("{}: INCONCLUSIVE", r.knot),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> PlanarDiagram {
        PlanarDiagram::parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap()
    }

    fn fake(name: &str, verdict: Verdict, s: i64) -> SliceReport {
        SliceReport {
            knot: name.into(),
            alexander: LaurentPoly::one(),
            determinant: 1,
            determinant_is_square: true,
            genus_lower_bound: 0,
            s: Some(s),
            topologically_slice_by_freedman: true,
            verdict,
            obstructions: if verdict == Verdict::NotSlice { vec![Obstruction::SNonzero] } else { vec![] },
            transfer: None,
        }
    }

    fn cert(a: &str, b: &str) -> TraceSiblingCertificate {
        TraceSiblingCertificate { a: a.into(), b: b.into(), provenance: "test".into(), trusted: true }
    }

    #[test]
    fn determinant_test() {
        assert!(!fox_milnor_determinant_test(&trefoil()).unwrap());
        assert!(fox_milnor_determinant_test(&PlanarDiagram::unknot()).unwrap());
        assert!(is_square(0) && is_square(1) && is_square(49) && !is_square(5));
    }

    #[test]
    fn trefoil_report() {
        let r = slice_report("trefoil", &trefoil(), true).unwrap();
        assert_eq!(r.verdict, Verdict::NotSlice);
        assert_eq!(r.obstructions, vec![Obstruction::DeterminantNonsquare, Obstruction::SNonzero]);
        assert_eq!(r.s, Some(2));
        assert!(!r.topologically_slice_by_freedman);
        let u = slice_report("unknot", &PlanarDiagram::unknot(), true).unwrap();
        assert_eq!(u.verdict, Verdict::Inconclusive);
        assert!(u.topologically_slice_by_freedman && u.determinant_is_square);
    }

    #[test]
    fn transfer_rules() {
        let (a, b) = (fake("a", Verdict::Inconclusive, 0), fake("b", Verdict::NotSlice, 2));
        let (ra, rb) = trace_transfer_verdict(&cert("a", "b"), &a, &b).unwrap();
        assert_eq!(ra.verdict, Verdict::NotSlice);
        assert_eq!(ra.obstructions, vec![Obstruction::TraceTransfer]);
        assert_eq!(ra.s, Some(0));
        assert_eq!(transfer_summary(&ra), "a: NOT SLICE (via trace sibling b, s=2)");
        assert_eq!(rb.obstructions, vec![Obstruction::SNonzero]);
        // Symmetric in argument order and in the certificate's order.
        assert_eq!(trace_transfer_verdict(&cert("a", "b"), &b, &a).unwrap(), (ra.clone(), rb.clone()));
        assert_eq!(trace_transfer_verdict(&cert("b", "a"), &a, &b).unwrap(), (rb, ra));

        let c = fake("c", Verdict::Inconclusive, 0);
        let (rc, ra2) = trace_transfer_verdict(&cert("c", "a"), &c, &a).unwrap();
        assert_eq!((rc.verdict, ra2.verdict), (Verdict::Inconclusive, Verdict::Inconclusive));
    }

    #[test]
    fn transfer_errors() {
        let (a, b) = (fake("a", Verdict::Inconclusive, 0), fake("b", Verdict::NotSlice, 2));
        let mut untrusted = cert("a", "b");
        untrusted.trusted = false;
        assert!(matches!(trace_transfer_verdict(&untrusted, &a, &b), Err(SliceError::UntrustedCertificate)));
        assert!(matches!(
            trace_transfer_verdict(&cert("a", "z"), &a, &b),
            Err(SliceError::CertificateMismatch { .. })
        ));
    }

    #[test]
    fn certificate_text() {
        let c: TraceSiblingCertificate = "# siblings\na: conway\nb: kprime\nprovenance: trace diffeomorphism\ntrusted: true\n"
            .parse()
            .unwrap();
        assert_eq!(c, TraceSiblingCertificate {
            a: "conway".into(),
            b: "kprime".into(),
            provenance: "trace diffeomorphism".into(),
            trusted: true
        });
        assert_eq!(c.to_string().parse::<TraceSiblingCertificate>().unwrap(), c);
        assert!("a: x\nb: x\nprovenance: p\ntrusted: true".parse::<TraceSiblingCertificate>().is_err());
        assert!("a: x\nb: y\ntrusted: true".parse::<TraceSiblingCertificate>().is_err());
        assert!("a: x\nb: y\nprovenance: p\ntrusted: maybe".parse::<TraceSiblingCertificate>().is_err());
    }
}
