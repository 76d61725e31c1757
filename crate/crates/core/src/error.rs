use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("evaluation at zero")]
    EvalAtZero,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("malformed PD code at `{token}`: {reason}")]
    Syntax { token: String, reason: String },
    #[error("arc label {label} appears {count} times (expected exactly 2)")]
    LabelCount { label: u32, count: usize },
    #[error("arc labels are not 1..{expected_max}; found label {label}")]
    LabelRange { label: u32, expected_max: u32 },
    #[error("orientation inconsistency at crossing {crossing}: {reason}")]
    Orientation { crossing: usize, reason: String },
    #[error("diagram is not planar ({faces} faces, expected {expected})")]
    NonPlanar { faces: usize, expected: usize },
    #[error("operation requires a knot, got a {components}-component link")]
    NotAKnot { components: usize },
    #[error("crossing index {index} out of range (diagram has {len} crossings)")]
    CrossingIndex { index: usize, len: usize },
    #[error("arc label {0} does not occur in the diagram")]
    UnknownArc(u32),
    #[error("invalid tangle region: {0}")]
    Region(String),
    #[error("move does not apply at this site: {0}")]
    MoveSite(String),
    #[error("malformed Gauss code: {0}")]
    Gauss(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),
    #[error("non-integral exponent after the A -> t substitution (convention bug)")]
    NonIntegralExponent,
    #[error("brute-force limit exceeded: {0}")]
    TooLarge(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KhovanovError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("complex size limit exceeded: {size} generators > limit {limit}")]
    SizeLimit { size: u64, limit: u64 },
    #[error("internal consistency failure: d∘d ≠ 0 in homological degree {degree}")]
    DSquaredNonzero { degree: i64 },
    #[error("Lee homology has rank {rank}, expected 2 for a knot")]
    LeeRank { rank: usize },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SliceError {
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Khovanov(#[from] KhovanovError),
    #[error("certificate is not marked trusted")]
    UntrustedCertificate,
    #[error("report for `{report}` does not match certificate knots {a} / {b}")]
    CertificateMismatch { report: String, a: String, b: String },
    #[error("malformed certificate: {0}")]
    CertificateFormat(String),
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("knot `{0}` not found in catalog")]
    NotFound(String),
    #[error("line {line}: {source}")]
    Line { line: usize, source: DiagramError },
    #[error("line {line}: {reason}")]
    Format { line: usize, reason: String },
    #[error("bundled record `{name}` failed validation: {reason}")]
    Validation { name: String, reason: String },
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Khovanov(#[from] KhovanovError),
    #[error(transparent)]
    Slice(#[from] SliceError),
    #[error("report schema: {0}")]
    Schema(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
