//! Dense exact matrices and row reduction.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::scalar::{Field, Scalar};
use super::subspace::Subspace;
use super::LinalgError;

/// A dense row-major matrix whose entries all carry the same field tag.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

/// Result of reducing a list of row vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    /// Nonzero rows of the reduced row echelon form.
    pub basis: Vec<Vec<Scalar>>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub(crate) fn check_field<'a>(
    field: Field,
    entries: impl IntoIterator<Item = &'a Scalar>,
) -> Result<(), LinalgError> {
    for s in entries {
        if s.field() != field {
            return Err(LinalgError::FieldMismatch { expected: field, found: s.field() });
        }
    }
    Ok(())
}

/// Reduced row echelon form of `rows`, pivoting on the first nonzero entry
/// left to right. `width` is needed for the empty list.
pub fn rref(rows: &[Vec<Scalar>], width: usize, field: Field) -> Result<Echelon, LinalgError> {
    for r in rows {
        if r.len() != width {
            return Err(LinalgError::DimensionMismatch { expected: width, found: r.len() });
        }
        check_field(field, r)?;
    }
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..width {
        let Some(found) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, found);
        let inv = m[rank][col].inv().expect("pivot is nonzero");
        for entry in m[rank].iter_mut().skip(col) {
            *entry = &*entry * &inv;
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (c, entry) in row.iter_mut().enumerate().skip(col) {
                if !pivot_row[c].is_zero() {
                    *entry = &*entry - &(&factor * &pivot_row[c]);
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    m.truncate(rank);
    Ok(Echelon { basis: m, rank, pivots })
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, field: Field, data: Vec<Scalar>) -> Result<Matrix, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        check_field(field, &data)?;
        Ok(Matrix { rows, cols, field, data })
    }

    /// Build from rows; the field is taken from the first entry.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Matrix, LinalgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let field = rows.first().and_then(|r| r.first()).map_or(Field::Q, Scalar::field);
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            if r.len() != ncols {
                return Err(LinalgError::DimensionMismatch { expected: ncols, found: r.len() });
            }
            data.extend(r);
        }
        Matrix::new(nrows, ncols, field, data)
    }

    /// Convenience constructor from integer rows.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        let data = rows.iter().flat_map(|r| r.iter().map(|&v| Scalar::from_i64(field, v))).collect();
        Matrix { rows: rows.len(), cols: ncols, field, data }
    }

    pub fn from_fn(rows: usize, cols: usize, field: Field, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let s = f(i, j);
                debug_assert_eq!(s.field(), field);
                data.push(s);
            }
        }
        Matrix { rows, cols, field, data }
    }

    pub fn zeros(rows: usize, cols: usize, field: Field) -> Matrix {
        Matrix { rows, cols, field, data: vec![Scalar::zero(field); rows * cols] }
    }

    pub fn identity(n: usize, field: Field) -> Matrix {
        Matrix::from_fn(n, n, field, |i, j| Scalar::from_i64(field, (i == j) as i64))
    }

    pub fn scalar(n: usize, value: &Scalar) -> Matrix {
        let field = value.field();
        Matrix::from_fn(n, n, field, |i, j| if i == j { value.clone() } else { Scalar::zero(field) })
    }

    pub fn diag(entries: &[Scalar]) -> Result<Matrix, LinalgError> {
        let field = entries.first().map_or(Field::Q, Scalar::field);
        check_field(field, entries)?;
        let n = entries.len();
        Ok(Matrix::from_fn(n, n, field, |i, j| if i == j { entries[i].clone() } else { Scalar::zero(field) }))
    }

    /// Matrix unit `E_ij`.
    pub fn unit(n: usize, i: usize, j: usize, field: Field) -> Matrix {
        let mut m = Matrix::zeros(n, n, field);
        m.set(i, j, Scalar::one(field));
        m
    }

    /// Matrix whose columns are `cols` (each of length `n`).
    pub fn from_columns(n: usize, field: Field, cols: &[Vec<Scalar>]) -> Result<Matrix, LinalgError> {
        for c in cols {
            if c.len() != n {
                return Err(LinalgError::DimensionMismatch { expected: n, found: c.len() });
            }
            check_field(field, c)?;
        }
        Ok(Matrix::from_fn(n, cols.len(), field, |i, j| cols[j][i].clone()))
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert_eq!(value.field(), self.field, "field tag mismatch");
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    /// Row-major flattening, used to treat `n x n` matrices as vectors.
    pub fn to_vector(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn from_vector(n: usize, field: Field, v: &[Scalar]) -> Result<Matrix, LinalgError> {
        Matrix::new(n, n, field, v.to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| {
                let e = self.get(i, j);
                if i == j { e.is_one() } else { e.is_zero() }
            }))
    }

    /// True when the matrix is `c * I` for some scalar `c`.
    pub fn is_scalar(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| if i == j { self.get(i, i) == self.get(0, 0) } else { self.get(i, j).is_zero() })
            })
    }

    pub fn to_field(&self, field: Field) -> Option<Matrix> {
        let data = self.data.iter().map(|s| s.to_field(field)).collect::<Option<Vec<_>>>()?;
        Some(Matrix { rows: self.rows, cols: self.cols, field, data })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, self.field, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let field = self.field.join(s.field());
        let data = self.data.iter().map(|e| (e * s).to_field(field).expect("joined field")).collect();
        Matrix { rows: self.rows, cols: self.cols, field, data }
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(Scalar::zero(self.field), |acc, i| &acc + self.get(i, i))
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(self.field), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        if self.field != rhs.field {
            return Err(LinalgError::FieldMismatch { expected: self.field, found: rhs.field });
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols, self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Matrix {
        assert!(self.is_square());
        (0..k).fold(Matrix::identity(self.rows, self.field), |acc, _| &acc * self)
    }

    /// `h_inv * self * h`.
    pub fn similar(&self, h: &Matrix, h_inv: &Matrix) -> Matrix {
        &(h_inv * self) * h
    }

    /// `self * x - x * self`.
    pub fn commutator(&self, x: &Matrix) -> Matrix {
        &(self * x) - &(x * self)
    }

    pub fn rref(&self) -> Echelon {
        rref(&self.rows_vec(), self.cols, self.field).expect("matrix entries share one field")
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Null space `{v : M v = 0}` as a subspace of `k^cols`.
    pub fn kernel(&self) -> Subspace {
        let ech = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let mut vectors = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(self.field); self.cols];
            v[free] = Scalar::one(self.field);
            for (row, &p) in ech.basis.iter().zip(&ech.pivots) {
                v[p] = -&row[free];
            }
            vectors.push(v);
        }
        Subspace::span(self.cols, self.field, vectors).expect("kernel vectors share the field")
    }

    /// Column space as a subspace of `k^rows`.
    pub fn column_space(&self) -> Subspace {
        Subspace::span(self.rows, self.field, self.transpose().rows_vec()).expect("same field")
    }

    pub fn det(&self) -> Result<Scalar, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut m = self.rows_vec();
        let mut det = Scalar::one(self.field);
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return Ok(Scalar::zero(self.field));
            };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            det = &det * &m[col][col];
            let inv = m[col][col].inv().expect("nonzero pivot");
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = &m[r][col] * &inv;
                for c in col..n {
                    let delta = &factor * &m[col][c];
                    m[r][c] = &m[r][c] - &delta;
                }
            }
        }
        Ok(det)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Exact inverse by Gauss-Jordan elimination on `[M | I]`.
    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let augmented: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| Scalar::from_i64(self.field, (i == j) as i64)));
                r
            })
            .collect();
        let ech = rref(&augmented, 2 * n, self.field)?;
        if ech.rank < n || ech.pivots[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        Ok(Matrix::from_fn(n, n, self.field, |i, j| ech.basis[i][n + j].clone()))
    }

    /// Characteristic polynomial coefficients `c_0, ..., c_n` (monic,
    /// `c_n = 1`) of `det(tI - M)`, by the Faddeev-LeVerrier recursion.
    pub fn charpoly(&self) -> Vec<Scalar> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![Scalar::zero(self.field); n + 1];
        coeffs[n] = Scalar::one(self.field);
        let id = Matrix::identity(n, self.field);
        let mut aux = Matrix::zeros(n, n, self.field);
        for k in 1..=n {
            aux = &(self * &aux) + &id.scale(&coeffs[n - k + 1]);
            let t = (self * &aux).trace();
            coeffs[n - k] = -(&t * &Scalar::from_ratio(self.field, 1, k as i64));
        }
        coeffs
    }

    /// Rational eigenvalues (without multiplicity, ascending). Only defined
    /// when every entry is real; returns `None` otherwise or when the
    /// constant term is too large for the divisor search.
    pub fn rational_eigenvalues(&self) -> Option<Vec<BigRational>> {
        if !self.data.iter().all(Scalar::is_real) {
            return None;
        }
        let coeffs: Vec<BigRational> = self.charpoly().iter().map(|c| c.re().clone()).collect();
        rational_roots(&coeffs)
    }

    /// `exp(M)` for nilpotent `M`, as the terminating series.
    pub fn exp_nilpotent(&self) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut term = Matrix::identity(n, self.field);
        let mut sum = term.clone();
        for k in 1..=n {
            term = (&term * self).scale(&Scalar::from_ratio(self.field, 1, k as i64));
            if term.is_zero() {
                return Ok(sum);
            }
            sum = &sum + &term;
        }
        Err(LinalgError::NotNilpotent)
    }
}

const ROOT_SEARCH_LIMIT: u64 = 1_000_000_000_000;

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n > ROOT_SEARCH_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out)
}

/// Rational roots of `sum coeffs[k] t^k` by the rational root theorem.
fn rational_roots(coeffs: &[BigRational]) -> Option<Vec<BigRational>> {
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    // Strip zero roots.
    let mut has_zero = false;
    while ints.len() > 1 && ints[0].is_zero() {
        ints.remove(0);
        has_zero = true;
    }
    if has_zero {
        roots.push(BigRational::zero());
    }
    while ints.last().is_some_and(Zero::is_zero) {
        ints.pop();
    }
    if ints.len() > 1 {
        let eval = |x: &BigRational| {
            ints.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
        };
        let ps = divisors(&ints[0])?;
        let qs = divisors(ints.last().unwrap())?;
        for p in &ps {
            for q in &qs {
                for sign in [1i64, -1] {
                    let cand = BigRational::new(BigInt::from(*p) * sign, BigInt::from(*q));
                    if !roots.contains(&cand) && eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix product shape/field mismatch")
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols && self.field == rhs.field);
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, field: self.field, data }
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols && self.field == rhs.field);
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, field: self.field, data }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, field: self.field, data: self.data.iter().map(|a| -a).collect() }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(Field::Q, n, d)
    }

    #[test]
    fn rref_identity() {
        let ech = Matrix::identity(2, Field::Q).rref();
        assert_eq!(ech.rank, 2);
        assert_eq!(ech.pivots, vec![0, 1]);
    }

    #[test]
    fn rref_dependent_rows() {
        let ech = Matrix::from_i64(Field::Q, &[&[1, 2], &[2, 4]]).rref();
        assert_eq!(ech.rank, 1);
        assert_eq!(ech.basis, vec![vec![q(1, 1), q(2, 1)]]);
    }

    #[test]
    fn rref_fractional_rows() {
        // (1/2, 1/3), (0, 1/7): the second row has a pivot in column 1 after
        // scaling, so both rows survive elimination.
        let rows = vec![vec![q(1, 2), q(1, 3)], vec![q(0, 1), q(1, 7)]];
        let ech = rref(&rows, 2, Field::Q).unwrap();
        assert_eq!(ech.rank, 2);
        assert_eq!(ech.basis, vec![vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]]);
    }

    #[test]
    fn rref_rejects_mixed_fields() {
        let rows = vec![vec![q(1, 1), Scalar::i()]];
        assert!(matches!(rref(&rows, 2, Field::Q), Err(LinalgError::FieldMismatch { .. })));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::zeros(3, 3, Field::Q).kernel().dim(), 3);
        assert_eq!(Matrix::identity(3, Field::Q).kernel().dim(), 0);
        // v -> A v - v A on 2x2 matrices with A = diag(1, 2).
        let a = Matrix::from_i64(Field::Q, &[&[1, 0], &[0, 2]]);
        let cols: Vec<Vec<Scalar>> = (0..4)
            .map(|k| {
                let e = Matrix::unit(2, k / 2, k % 2, Field::Q);
                (&(&a * &e) - &(&e * &a)).to_vector()
            })
            .collect();
        let map = Matrix::from_columns(4, Field::Q, &cols).unwrap();
        assert_eq!(map.kernel().dim(), 2);
    }

    #[test]
    fn inverse_examples() {
        let id = Matrix::identity(2, Field::Q);
        assert_eq!(id.inverse().unwrap(), id);
        let d = Matrix::diag(&[q(2, 1), q(3, 1)]).unwrap();
        assert_eq!(d.inverse().unwrap(), Matrix::diag(&[q(1, 2), q(1, 3)]).unwrap());
        let rot = Matrix::from_i64(Field::QI, &[&[0, 1], &[-1, 0]]);
        // Adjugate: [[a,b],[c,d]]^-1 = [[d,-b],[-c,a]] / (ad - bc), det = 1.
        assert_eq!(rot.inverse().unwrap(), Matrix::from_i64(Field::QI, &[&[0, -1], &[1, 0]]));
        let singular = Matrix::from_i64(Field::Q, &[&[1, 2], &[2, 4]]);
        assert_eq!(singular.inverse(), Err(LinalgError::Singular));
    }

    #[test]
    fn det_and_charpoly() {
        let m = Matrix::from_i64(Field::Q, &[&[2, 1, 0], &[0, 3, 0], &[1, 0, 1]]);
        assert_eq!(m.det().unwrap(), q(6, 1));
        // det(tI - m) = (t-2)(t-3)(t-1) = t^3 - 6t^2 + 11t - 6
        assert_eq!(m.charpoly(), vec![q(-6, 1), q(11, 1), q(-6, 1), q(1, 1)]);
        let eig: Vec<_> = m.rational_eigenvalues().unwrap().into_iter().map(|r| r.to_integer()).collect();
        assert_eq!(eig, vec![1.into(), 2.into(), 3.into()]);
    }

    #[test]
    fn eigenvalues_of_rotation_are_not_rational() {
        let rot = Matrix::from_i64(Field::Q, &[&[0, -1], &[1, 0]]);
        assert_eq!(rot.rational_eigenvalues().unwrap(), vec![]);
        let nil = Matrix::from_i64(Field::Q, &[&[0, 1], &[0, 0]]);
        assert_eq!(nil.rational_eigenvalues().unwrap(), vec![BigRational::zero()]);
    }

    #[test]
    fn exp_of_nilpotent() {
        let n = Matrix::from_i64(Field::Q, &[&[0, 2, 0], &[0, 0, 3], &[0, 0, 0]]);
        let e = n.exp_nilpotent().unwrap();
        // I + N + N^2/2, N^2 = 6 E_13
        assert_eq!(e, Matrix::from_i64(Field::Q, &[&[1, 2, 3], &[0, 1, 3], &[0, 0, 1]]));
        assert_eq!(Matrix::identity(2, Field::Q).exp_nilpotent(), Err(LinalgError::NotNilpotent));
    }
}
