//! Subspaces in canonical reduced echelon form, and flags of them.

use super::matrix::{check_field, rref, Matrix};
use super::scalar::{Field, Scalar};
use super::LinalgError;

/// A subspace of `k^ambient`. The basis is the reduced row echelon form of
/// any spanning set, so equal subspaces have identical representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    field: Field,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize, field: Field) -> Subspace {
        Subspace { ambient, field, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize, field: Field) -> Subspace {
        Matrix::identity(ambient, field).row_space()
    }

    pub fn span(ambient: usize, field: Field, vectors: Vec<Vec<Scalar>>) -> Result<Subspace, LinalgError> {
        let ech = rref(&vectors, ambient, field)?;
        Ok(Subspace { ambient, field, basis: ech.basis, pivots: ech.pivots })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after clearing every pivot column; zero iff `v`
    /// lies in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let factor = r[p].clone();
            for (c, entry) in r.iter_mut().enumerate().skip(p) {
                if !row[c].is_zero() {
                    *entry = &*entry - &(&factor * &row[c]);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Add `v` to the span, keeping the canonical form. Returns whether the
    /// dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> Result<bool, LinalgError> {
        check_field(self.field, v)?;
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|s| !s.is_zero()) else {
            return Ok(false);
        };
        let inv = r[p].inv().expect("nonzero");
        for entry in r.iter_mut().skip(p) {
            *entry = &*entry * &inv;
        }
        for row in &mut self.basis {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for (c, entry) in row.iter_mut().enumerate().skip(p) {
                if !r[c].is_zero() {
                    *entry = &*entry - &(&factor * &r[c]);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, r);
        Ok(true)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut out = self.clone();
        for v in &other.basis {
            out.insert(v).expect("same field");
        }
        out
    }

    /// Image `{M v : v in self}`.
    pub fn image_under(&self, m: &Matrix) -> Subspace {
        let vectors = self.basis.iter().map(|v| m.apply(v)).collect();
        Subspace::span(m.nrows(), self.field, vectors).expect("same field")
    }

    /// `M W` is contained in `W`.
    pub fn is_invariant_under(&self, m: &Matrix) -> bool {
        self.basis.iter().all(|v| self.contains(&m.apply(v)))
    }

    pub fn to_field(&self, field: Field) -> Option<Subspace> {
        let basis = self
            .basis
            .iter()
            .map(|row| row.iter().map(|s| s.to_field(field)).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(Subspace { ambient: self.ambient, field, basis, pivots: self.pivots.clone() })
    }
}

impl Matrix {
    pub fn row_space(&self) -> Subspace {
        Subspace::span(self.ncols(), self.field(), self.rows_vec()).expect("same field")
    }
}

/// A strictly increasing chain `0 < V_1 < ... < V_m < k^n` of subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flag {
    steps: Vec<Subspace>,
}

impl Flag {
    pub fn new(steps: Vec<Subspace>) -> Result<Flag, LinalgError> {
        let Some(first) = steps.first() else {
            return Err(LinalgError::DegenerateFlag("empty flag"));
        };
        let ambient = first.ambient();
        if first.is_zero() {
            return Err(LinalgError::DegenerateFlag("first subspace is zero"));
        }
        for pair in steps.windows(2) {
            if pair[1].ambient() != ambient || !pair[0].is_subspace_of(&pair[1]) || pair[0].dim() >= pair[1].dim() {
                return Err(LinalgError::DegenerateFlag("inclusions must be strict"));
            }
        }
        if steps.last().unwrap().is_full() {
            return Err(LinalgError::DegenerateFlag("last subspace must be proper"));
        }
        Ok(Flag { steps })
    }

    pub fn steps(&self) -> &[Subspace] {
        &self.steps
    }

    pub fn ambient(&self) -> usize {
        self.steps[0].ambient()
    }

    pub fn field(&self) -> Field {
        self.steps[0].field()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.steps.iter().map(Subspace::dim).collect()
    }

    pub fn is_invariant_under(&self, m: &Matrix) -> bool {
        self.steps.iter().all(|s| s.is_invariant_under(m))
    }
}
