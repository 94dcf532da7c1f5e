//! JSON front end: strict parsing into a [`JobSpec`], dispatch, and
//! deterministic reports.
//!
//! Exit codes: `0` success, `2` input or domain error, `1` internal
//! invariant breach.

mod corpus;
pub mod dto;
pub mod report;

use std::fmt;

use serde::Serialize;
use serde_json::Value;

use crate::algebra;
use crate::linalg::{Field, LinalgError, Matrix};
use crate::onepar::{limit_tuple, Cochar, GroupPoint, OneParamError};
use crate::stability::{self, RepPresentation, StabilityError};

pub use corpus::{run_corpus, CORPUS_FILES};
use dto::*;
use report::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Command {
    Classify,
    Limit,
    Mu,
    Algebra,
    Centralizer,
    OrbitMember,
    Destab,
    HmCheck,
    HApprox,
    CheckRep,
    Corpus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ErrorCode {
    MalformedJson,
    Schema,
    MalformedScalar,
    FieldMismatch,
    Nonsquare,
    SizeMismatch,
    EmptyTuple,
    NotInvertible,
    DetNotOne,
    TagMismatch,
    SingularConjugator,
    WeightSum,
    ZeroVector,
    SampleTooLarge,
    BadBound,
    ShapeMismatch,
    NotARepresentation,
    GeneratorCount,
    BadRelator,
    Singular,
    NotNilpotent,
    DegenerateFlag,
    Internal,
}

impl ErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::MalformedJson => "MALFORMED_JSON",
            ErrorCode::Schema => "SCHEMA",
            ErrorCode::MalformedScalar => "MALFORMED_SCALAR",
            ErrorCode::FieldMismatch => "FIELD_MISMATCH",
            ErrorCode::Nonsquare => "NONSQUARE",
            ErrorCode::SizeMismatch => "SIZE_MISMATCH",
            ErrorCode::EmptyTuple => "EMPTY_TUPLE",
            ErrorCode::NotInvertible => "NOT_INVERTIBLE",
            ErrorCode::DetNotOne => "DET_NOT_ONE",
            ErrorCode::TagMismatch => "TAG_MISMATCH",
            ErrorCode::SingularConjugator => "SINGULAR_CONJUGATOR",
            ErrorCode::WeightSum => "WEIGHT_SUM",
            ErrorCode::ZeroVector => "ZERO_VECTOR",
            ErrorCode::SampleTooLarge => "SAMPLE_TOO_LARGE",
            ErrorCode::BadBound => "BAD_BOUND",
            ErrorCode::ShapeMismatch => "SHAPE_MISMATCH",
            ErrorCode::NotARepresentation => "NOT_A_REPRESENTATION",
            ErrorCode::GeneratorCount => "GENERATOR_COUNT",
            ErrorCode::BadRelator => "BAD_RELATOR",
            ErrorCode::Singular => "SINGULAR",
            ErrorCode::NotNilpotent => "NOT_NILPOTENT",
            ErrorCode::DegenerateFlag => "DEGENERATE_FLAG",
            ErrorCode::Internal => "INTERNAL",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            ErrorCode::Internal => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for ErrorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IoError {
    pub code: ErrorCode,
    pub message: String,
    /// JSON path of the offending value, e.g. `matrices[1][0][0]`.
    pub location: Option<String>,
    /// Matrix index carried over from tuple validation until a location is
    /// assigned.
    pub(crate) index: Option<usize>,
}

impl IoError {
    pub fn new(code: ErrorCode, message: impl Into<String>) -> IoError {
        IoError { code, message: message.into(), location: None, index: None }
    }

    pub fn at(mut self, location: &str) -> IoError {
        self.location = Some(location.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        let body = ErrorDto {
            error: ErrorBody { code: self.code.to_string(), message: self.message.clone(), location: self.location.clone() },
        };
        to_pretty(&body)
    }
}

impl fmt::Display for IoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.location {
            Some(loc) => write!(f, "{} at {loc}: {}", self.code, self.message),
            None => write!(f, "{}: {}", self.code, self.message),
        }
    }
}

impl std::error::Error for IoError {}

impl From<OneParamError> for IoError {
    fn from(e: OneParamError) -> IoError {
        let (code, index) = match &e {
            OneParamError::EmptyTuple => (ErrorCode::EmptyTuple, None),
            OneParamError::NotSquare { index } => (ErrorCode::Nonsquare, Some(*index)),
            OneParamError::SizeMismatch { .. } => (ErrorCode::SizeMismatch, None),
            OneParamError::FieldMismatch { index } => (ErrorCode::FieldMismatch, Some(*index)),
            OneParamError::NotInvertible { index } => (ErrorCode::NotInvertible, Some(*index)),
            OneParamError::DetNotOne { index, .. } => (ErrorCode::DetNotOne, Some(*index)),
            OneParamError::TagMismatch => (ErrorCode::TagMismatch, None),
            OneParamError::SingularConjugator => (ErrorCode::SingularConjugator, None),
            OneParamError::WeightSum(_) => (ErrorCode::WeightSum, None),
            OneParamError::ZeroVector => (ErrorCode::ZeroVector, None),
            OneParamError::SampleTooLarge { .. } => (ErrorCode::SampleTooLarge, None),
            OneParamError::BadBound => (ErrorCode::BadBound, None),
        };
        IoError { code, message: e.to_string(), location: None, index }
    }
}

impl From<LinalgError> for IoError {
    fn from(e: LinalgError) -> IoError {
        let code = match &e {
            LinalgError::FieldMismatch { .. } => ErrorCode::FieldMismatch,
            LinalgError::DimensionMismatch { .. } => ErrorCode::SizeMismatch,
            LinalgError::NotSquare { .. } => ErrorCode::Nonsquare,
            LinalgError::Singular => ErrorCode::Singular,
            LinalgError::NotNilpotent => ErrorCode::NotNilpotent,
            LinalgError::DegenerateFlag(_) => ErrorCode::DegenerateFlag,
        };
        IoError::new(code, e.to_string())
    }
}

impl From<StabilityError> for IoError {
    fn from(e: StabilityError) -> IoError {
        match e {
            StabilityError::OneParam(inner) => inner.into(),
            StabilityError::Linalg(inner) => inner.into(),
            StabilityError::ShapeMismatch(_) => IoError::new(ErrorCode::ShapeMismatch, e.to_string()),
            StabilityError::NotARepresentation { relator } => IoError::new(ErrorCode::NotARepresentation, e.to_string())
                .at(&format!("presentation.relators[{relator}]")),
            StabilityError::GeneratorCount { .. } => {
                IoError::new(ErrorCode::GeneratorCount, e.to_string()).at("images.matrices")
            }
            StabilityError::BadRelator { relator, .. } => {
                IoError::new(ErrorCode::BadRelator, e.to_string()).at(&format!("presentation.relators[{relator}]"))
            }
            StabilityError::Internal(_) => IoError::new(ErrorCode::Internal, e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub bound: i64,
    pub seed: u64,
    /// Forced working field; inferred from the scalars when `None`.
    pub field: Option<Field>,
}

impl Default for Options {
    fn default() -> Options {
        Options { bound: 2, seed: 0, field: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JobInput {
    None,
    Point(GroupPoint),
    Limit { point: GroupPoint, cochar: Cochar },
    Mu { cochar: Cochar, matrix: Matrix },
    Pair { x: GroupPoint, y: GroupPoint },
    Sample { point: GroupPoint, conjugators: Vec<Matrix>, members: Vec<Matrix> },
    Rep { presentation: RepPresentation, images: GroupPoint },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub input: JobInput,
    pub bound: i64,
    pub seed: u64,
    /// Resolved working field.
    pub field: Field,
}

fn from_value<T: serde::de::DeserializeOwned>(v: Value) -> Result<T, IoError> {
    serde_json::from_value(v).map_err(|e| IoError::new(ErrorCode::Schema, e.to_string()))
}

fn resolve_field<'a>(forced: Option<Field>, scalars: impl IntoIterator<Item = &'a String>) -> Field {
    forced.unwrap_or_else(|| infer_field(scalars))
}

/// Parse and validate the input document for `command`. Every tuple
/// invariant is checked here, so dispatch only sees valid values.
pub fn parse_input(command: Command, text: &str, options: Options) -> Result<JobSpec, IoError> {
    if options.bound < 1 {
        return Err(IoError::new(ErrorCode::BadBound, "bound must be at least 1").at("--bound"));
    }
    let job = |input, field| JobSpec { command, input, bound: options.bound, seed: options.seed, field };
    if command == Command::Corpus {
        return Ok(job(JobInput::None, options.field.unwrap_or(Field::Q)));
    }
    let value: Value = serde_json::from_str(text).map_err(|e| {
        let code = if e.is_data() { ErrorCode::Schema } else { ErrorCode::MalformedJson };
        IoError::new(code, e.to_string())
    })?;
    match command {
        Command::Classify | Command::Algebra | Command::Centralizer | Command::Destab => {
            let p: PointDto = from_value(value)?;
            let field = resolve_field(options.field, point_scalars(&p));
            Ok(job(JobInput::Point(point_from_dto(&p, field, "")?), field))
        }
        Command::Limit => {
            let d: LimitInput = from_value(value)?;
            let field = resolve_field(options.field, point_scalars(&d.point).chain(cochar_scalars(&d.cochar)));
            let point = point_from_dto(&d.point, field, "point")?;
            let cochar = cochar_from_dto(&d.cochar, field, "cochar")?;
            if cochar.n() != point.n() {
                return Err(IoError::new(
                    ErrorCode::SizeMismatch,
                    format!("cocharacter has {} weights, tuple has n = {}", cochar.n(), point.n()),
                )
                .at("cochar.weights"));
            }
            Ok(job(JobInput::Limit { point, cochar }, field))
        }
        Command::Mu => {
            let d: MuInput = from_value(value)?;
            let field = resolve_field(options.field, cochar_scalars(&d.cochar).chain(matrix_scalars(&d.matrix)));
            let cochar = cochar_from_dto(&d.cochar, field, "cochar")?;
            let matrix = matrix_from_dto(&d.matrix, field, "matrix")?;
            if cochar.n() != matrix.nrows() {
                return Err(IoError::new(
                    ErrorCode::SizeMismatch,
                    format!("cocharacter has {} weights, matrix is {1}x{1}", cochar.n(), matrix.nrows()),
                )
                .at("matrix"));
            }
            Ok(job(JobInput::Mu { cochar, matrix }, field))
        }
        Command::OrbitMember => {
            let d: PairInput = from_value(value)?;
            let field = resolve_field(options.field, point_scalars(&d.x).chain(point_scalars(&d.y)));
            let x = point_from_dto(&d.x, field, "x")?;
            let y = point_from_dto(&d.y, field, "y")?;
            Ok(job(JobInput::Pair { x, y }, field))
        }
        Command::HmCheck | Command::HApprox => {
            let d: SampleInput = if value.get("point").is_some() {
                from_value(value)?
            } else {
                SampleInput { point: from_value(value)?, conjugators: Vec::new(), members: Vec::new() }
            };
            if command == Command::HmCheck && !d.members.is_empty() {
                return Err(IoError::new(ErrorCode::Schema, "members is only accepted by h-approx").at("members"));
            }
            let field = resolve_field(
                options.field,
                point_scalars(&d.point)
                    .chain(d.conjugators.iter().flat_map(matrix_scalars))
                    .chain(d.members.iter().flat_map(matrix_scalars)),
            );
            let point = point_from_dto(&d.point, field, "point")?;
            let square = |m: &MatrixDto, loc: String| -> Result<Matrix, IoError> {
                let m = matrix_from_dto(m, field, &loc)?;
                if m.nrows() != point.n() {
                    return Err(IoError::new(ErrorCode::SizeMismatch, format!("expected {0}x{0}", point.n())).at(&loc));
                }
                Ok(m)
            };
            let mut conjugators = Vec::with_capacity(d.conjugators.len());
            for (k, m) in d.conjugators.iter().enumerate() {
                let loc = format!("conjugators[{k}]");
                let h = square(m, loc.clone())?;
                if !h.is_invertible() {
                    return Err(IoError::new(ErrorCode::SingularConjugator, "conjugator is singular").at(&loc));
                }
                conjugators.push(h);
            }
            let members = d
                .members
                .iter()
                .enumerate()
                .map(|(k, m)| square(m, format!("members[{k}]")))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(job(JobInput::Sample { point, conjugators, members }, field))
        }
        Command::CheckRep => {
            let d: RepInput = from_value(value)?;
            let field = resolve_field(options.field, point_scalars(&d.images));
            let presentation = RepPresentation::new(d.presentation.generators, d.presentation.relators.clone())?;
            let images = point_from_dto(&d.images, field, "images")?;
            Ok(job(JobInput::Rep { presentation, images }, field))
        }
        Command::Corpus => unreachable!("handled above"),
    }
}

pub(crate) fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("plain data serializes");
    out.push('\n');
    out
}

fn dispatch(job: &JobSpec) -> Result<(i32, String), IoError> {
    let seed = job.seed;
    let body = match (&job.command, &job.input) {
        (Command::Classify, JobInput::Point(x)) => to_pretty(&report_to_dto(&stability::classify_with_seed(x, seed)?, seed)),
        (Command::Algebra, JobInput::Point(x)) => {
            let a = algebra::algebra_closure(x);
            to_pretty(&AlgebraDto {
                dim: a.dim(),
                radical_dim: a.radical_dim(),
                commutant_dim: a.commutant_dim(),
                irreducible: algebra::is_irreducible(&a),
                completely_reducible: algebra::is_completely_reducible(&a),
                isotropic: algebra::is_isotropic(&a, x.group()),
            })
        }
        (Command::Centralizer, JobInput::Point(x)) => {
            let a = algebra::algebra_closure(x);
            let center = x.group().center_dim();
            let stabilizer_dim = a.commutant_dim() + center - 1;
            to_pretty(&CentralizerDto {
                commutant_dim: a.commutant_dim(),
                stabilizer_dim,
                central: stabilizer_dim == center,
                basis: a.commutant_basis().iter().map(matrix_to_dto).collect(),
            })
        }
        (Command::Destab, JobInput::Point(x)) => to_pretty(&DestabDto {
            witness: stability::destab_report(x, seed)?.map(|w| witness_to_dto(&w, seed)),
        }),
        (Command::Limit, JobInput::Limit { point, cochar }) => {
            let limit = limit_tuple(cochar, point)?;
            to_pretty(&LimitDto { exists: limit.is_some(), limit: limit.as_ref().map(point_to_dto) })
        }
        (Command::Mu, JobInput::Mu { cochar, matrix }) => {
            let decomp = cochar.weight_decomp(matrix)?;
            let mu = cochar.mu(matrix).map_err(|e| IoError::from(e).at("matrix"))?;
            to_pretty(&MuDto {
                components: decomp
                    .components
                    .iter()
                    .map(|(w, m)| ComponentDto { weight: *w, matrix: matrix_to_dto(m) })
                    .collect(),
                mu,
                limit_exists: cochar.limit_conj(matrix)?.is_some(),
            })
        }
        (Command::OrbitMember, JobInput::Pair { x, y }) => {
            to_pretty(&orbit_to_dto(&stability::orbit_member(x, y, seed)?, seed))
        }
        (Command::HmCheck, JobInput::Sample { point, conjugators, .. }) => {
            to_pretty(&hm_to_dto(&stability::hm_crosscheck(point, job.bound, seed, conjugators)?, seed))
        }
        (Command::HApprox, JobInput::Sample { point, conjugators, members }) => {
            let h = stability::h_approx(point, job.bound, conjugators)?;
            let members = members
                .iter()
                .map(|m| Ok(MemberDto { matrix: matrix_to_dto(m), contained: h.contains(m)? }))
                .collect::<Result<Vec<_>, StabilityError>>()?;
            to_pretty(&h_approx_to_dto(&h, members))
        }
        (Command::CheckRep, JobInput::Rep { presentation, images }) => {
            let r = stability::classify_rep(presentation, images, seed)?;
            to_pretty(&RepDto {
                reductive: r.reductive,
                irreducible: r.irreducible,
                good: r.good,
                report: report_to_dto(&r.classification, seed),
                notes: r.notes,
            })
        }
        (Command::Corpus, JobInput::None) => {
            let c = run_corpus(job.bound, seed);
            let code = if c.passed == c.total { 0 } else { 1 };
            return Ok((code, to_pretty(&c)));
        }
        (command, _) => {
            return Err(IoError::new(ErrorCode::Internal, format!("input does not match command {command:?}")));
        }
    };
    Ok((0, body))
}

/// Run a validated job: exit code and the JSON document for stdout.
pub fn run(job: &JobSpec) -> (i32, String) {
    match dispatch(job) {
        Ok(out) => out,
        Err(e) => (e.code.exit_code(), e.to_json()),
    }
}

/// Parse and run in one step; parse errors become error documents.
pub fn run_text(command: Command, text: &str, options: Options) -> (i32, String) {
    match parse_input(command, text, options) {
        Ok(job) => run(&job),
        Err(e) => (e.code.exit_code(), e.to_json()),
    }
}
