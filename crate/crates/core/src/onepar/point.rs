use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::{Field, Matrix, Scalar};

use super::OneParamError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupType {
    GL,
    SL,
}

impl GroupType {
    /// Dimension of the group as a variety.
    pub fn dim(self, n: usize) -> usize {
        match self {
            GroupType::GL => n * n,
            GroupType::SL => n * n - 1,
        }
    }

    /// Dimension of the center: `k^*` for `GL_n`, finite for `SL_n`.
    pub fn center_dim(self) -> usize {
        match self {
            GroupType::GL => 1,
            GroupType::SL => 0,
        }
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupType::GL => "GL",
            GroupType::SL => "SL",
        })
    }
}

/// Whether the tuple lives in the group or in its matrix space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointKind {
    Group,
    Lie,
}

impl fmt::Display for PointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PointKind::Group => "group",
            PointKind::Lie => "lie",
        })
    }
}

/// An ordered tuple of `n x n` matrices acted on by simultaneous
/// conjugation.
///
/// Group tuples must be invertible (determinant one for `SL`). Lie tuples
/// are arbitrary matrices: `SL_n` acts on all of `gl_n = End(V)` by
/// conjugation, so trace-zero is not enforced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupPoint {
    group: GroupType,
    kind: PointKind,
    n: usize,
    mats: Vec<Matrix>,
}

impl GroupPoint {
    pub fn new(group: GroupType, kind: PointKind, mats: Vec<Matrix>) -> Result<GroupPoint, OneParamError> {
        let first = mats.first().ok_or(OneParamError::EmptyTuple)?;
        let n = first.nrows();
        let field = first.field();
        if n == 0 {
            return Err(OneParamError::NotSquare { index: 0 });
        }
        for (index, m) in mats.iter().enumerate() {
            if !m.is_square() {
                return Err(OneParamError::NotSquare { index });
            }
            if m.nrows() != n {
                return Err(OneParamError::SizeMismatch { expected: n, found: m.nrows() });
            }
            if m.field() != field {
                return Err(OneParamError::FieldMismatch { index });
            }
            if kind == PointKind::Group {
                let det = m.det().expect("square");
                if det.is_zero() {
                    return Err(OneParamError::NotInvertible { index });
                }
                if group == GroupType::SL && !det.is_one() {
                    return Err(OneParamError::DetNotOne { index, det: det.to_string() });
                }
            }
        }
        Ok(GroupPoint { group, kind, n, mats })
    }

    pub fn group(&self) -> GroupType {
        self.group
    }

    pub fn kind(&self) -> PointKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    pub fn field(&self) -> Field {
        self.mats[0].field()
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn into_mats(self) -> Vec<Matrix> {
        self.mats
    }

    /// Same tags, new entries (validated).
    pub fn with_mats(&self, mats: Vec<Matrix>) -> Result<GroupPoint, OneParamError> {
        GroupPoint::new(self.group, self.kind, mats)
    }

    /// The tuple `(x, y)`.
    pub fn concat(&self, other: &GroupPoint) -> Result<GroupPoint, OneParamError> {
        if other.group != self.group || other.kind != self.kind {
            return Err(OneParamError::TagMismatch);
        }
        let mut mats = self.mats.clone();
        mats.extend(other.mats.iter().cloned());
        GroupPoint::new(self.group, self.kind, mats)
    }

    /// `g . x = (g x_1 g^-1, ..., g x_N g^-1)`.
    pub fn conjugate(&self, g: &Matrix) -> Result<GroupPoint, OneParamError> {
        if g.nrows() != self.n || !g.is_square() {
            return Err(OneParamError::SizeMismatch { expected: self.n, found: g.nrows() });
        }
        if g.field() != self.field() {
            return Err(OneParamError::FieldMismatch { index: 0 });
        }
        let g_inv = g.inverse().map_err(|_| OneParamError::SingularConjugator)?;
        self.with_mats(self.mats.iter().map(|m| m.similar(&g_inv, g)).collect())
    }

    pub fn to_field(&self, field: Field) -> Option<GroupPoint> {
        let mats = self.mats.iter().map(|m| m.to_field(field)).collect::<Option<Vec<_>>>()?;
        Some(GroupPoint { group: self.group, kind: self.kind, n: self.n, mats })
    }

    /// Product of the entries along `word` (indices into the tuple).
    pub fn word(&self, word: &[usize]) -> Matrix {
        word.iter().fold(Matrix::identity(self.n, self.field()), |acc, &i| &acc * &self.mats[i])
    }

    pub fn identity_like(&self) -> GroupPoint {
        let id = Matrix::identity(self.n, self.field());
        GroupPoint { group: self.group, kind: self.kind, n: self.n, mats: vec![id; self.mats.len()] }
    }

    /// A one-entry scalar tuple, e.g. for fixed-point examples.
    pub fn scalar(group: GroupType, kind: PointKind, n: usize, value: &Scalar) -> Result<GroupPoint, OneParamError> {
        GroupPoint::new(group, kind, vec![Matrix::scalar(n, value)])
    }
}
