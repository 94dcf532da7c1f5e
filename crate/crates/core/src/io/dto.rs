//! Wire types. Every input struct rejects unknown keys; every output
//! struct serializes fields in declaration order and deserializes back.

use serde::{Deserialize, Serialize};

use crate::linalg::{Field, Matrix, Scalar};
use crate::onepar::{Cochar, GroupPoint, GroupType, PointKind};

use super::{ErrorCode, IoError};

/// Rows of scalar strings.
pub type MatrixDto = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDto {
    #[serde(rename = "type")]
    pub kind: GroupType,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDto {
    pub group: GroupDto,
    pub kind: PointKind,
    pub matrices: Vec<MatrixDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocharDto {
    pub weights: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjugator: Option<MatrixDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitInput {
    pub point: PointDto,
    pub cochar: CocharDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MuInput {
    pub cochar: CocharDto,
    pub matrix: MatrixDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairInput {
    pub x: PointDto,
    pub y: PointDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleInput {
    pub point: PointDto,
    #[serde(default)]
    pub conjugators: Vec<MatrixDto>,
    /// Matrices to test against `H_Lambda` (`h-approx` only).
    #[serde(default)]
    pub members: Vec<MatrixDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationDto {
    pub generators: usize,
    /// Each relator is a list of `[generator, exponent]` pairs.
    pub relators: Vec<Vec<(usize, i32)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepInput {
    pub presentation: PresentationDto,
    pub images: PointDto,
}

pub fn matrix_to_dto(m: &Matrix) -> MatrixDto {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m.get(i, j).to_string()).collect()).collect()
}

pub fn point_to_dto(x: &GroupPoint) -> PointDto {
    PointDto {
        group: GroupDto { kind: x.group(), n: x.n() },
        kind: x.kind(),
        matrices: x.mats().iter().map(matrix_to_dto).collect(),
    }
}

pub fn cochar_to_dto(c: &Cochar) -> CocharDto {
    let h = c.conjugator();
    CocharDto { weights: c.weights().to_vec(), conjugator: (!h.is_identity()).then(|| matrix_to_dto(h)) }
}

/// `QI` iff some well-formed scalar has a nonzero imaginary part.
pub fn infer_field<'a>(scalars: impl IntoIterator<Item = &'a String>) -> Field {
    let complex = scalars.into_iter().any(|s| Scalar::parse(s).is_ok_and(|v| !v.is_real()));
    if complex {
        Field::QI
    } else {
        Field::Q
    }
}

pub fn matrix_scalars(m: &MatrixDto) -> impl Iterator<Item = &String> {
    m.iter().flatten()
}

pub fn point_scalars(p: &PointDto) -> impl Iterator<Item = &String> {
    p.matrices.iter().flat_map(matrix_scalars)
}

pub fn cochar_scalars(c: &CocharDto) -> impl Iterator<Item = &String> {
    c.conjugator.iter().flat_map(matrix_scalars)
}

fn err(code: ErrorCode, location: &str, message: impl Into<String>) -> IoError {
    IoError::new(code, message).at(location)
}

pub fn matrix_from_dto(m: &MatrixDto, field: Field, location: &str) -> Result<Matrix, IoError> {
    let n = m.len();
    if n == 0 {
        return Err(err(ErrorCode::Nonsquare, location, "matrix has no rows"));
    }
    let mut rows = Vec::with_capacity(n);
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(err(
                ErrorCode::Nonsquare,
                &format!("{location}[{i}]"),
                format!("row has {} entries in a matrix with {n} rows", row.len()),
            ));
        }
        let mut out = Vec::with_capacity(n);
        for (j, text) in row.iter().enumerate() {
            let loc = format!("{location}[{i}][{j}]");
            let s = Scalar::parse(text).map_err(|e| err(ErrorCode::MalformedScalar, &loc, e.to_string()))?;
            let s = s
                .to_field(field)
                .ok_or_else(|| err(ErrorCode::FieldMismatch, &loc, format!("{text:?} is not in field {field}")))?;
            out.push(s);
        }
        rows.push(out);
    }
    Ok(Matrix::from_rows(rows).expect("validated square rows"))
}

pub fn point_from_dto(p: &PointDto, field: Field, location: &str) -> Result<GroupPoint, IoError> {
    let prefix = if location.is_empty() { String::new() } else { format!("{location}.") };
    if p.matrices.is_empty() {
        return Err(err(ErrorCode::EmptyTuple, &format!("{prefix}matrices"), "tuple needs at least one matrix"));
    }
    if p.group.n == 0 {
        return Err(err(ErrorCode::SizeMismatch, &format!("{prefix}group.n"), "n must be positive"));
    }
    let mut mats = Vec::with_capacity(p.matrices.len());
    for (k, m) in p.matrices.iter().enumerate() {
        let loc = format!("{prefix}matrices[{k}]");
        let mat = matrix_from_dto(m, field, &loc)?;
        if mat.nrows() != p.group.n {
            return Err(err(
                ErrorCode::SizeMismatch,
                &loc,
                format!("matrix is {0}x{0}, group has n = {1}", mat.nrows(), p.group.n),
            ));
        }
        mats.push(mat);
    }
    GroupPoint::new(p.group.kind, p.kind, mats).map_err(|e| {
        let mut out = IoError::from(e);
        if let Some(index) = out.index.take() {
            out.location = Some(format!("{prefix}matrices[{index}]"));
        } else {
            out.location = Some(format!("{prefix}matrices"));
        }
        out
    })
}

pub fn cochar_from_dto(c: &CocharDto, field: Field, location: &str) -> Result<Cochar, IoError> {
    let n = c.weights.len();
    if n == 0 {
        return Err(err(ErrorCode::SizeMismatch, &format!("{location}.weights"), "weights must be non-empty"));
    }
    match &c.conjugator {
        None => Ok(Cochar::diagonal(field, c.weights.clone())),
        Some(h) => {
            let loc = format!("{location}.conjugator");
            let h = matrix_from_dto(h, field, &loc)?;
            Cochar::new(c.weights.clone(), h).map_err(|e| IoError::from(e).at(&loc))
        }
    }
}
