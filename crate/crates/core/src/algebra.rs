//! The unital matrix algebra generated by a tuple, and the tests built on it.
//!
//! Over an algebraically closed field of characteristic zero, for the
//! envelope `A` of a tuple acting on `V = k^n`:
//!
//! * the tuple acts irreducibly iff `dim A = n^2` (Burnside);
//! * `V` is a semisimple `A`-module iff the trace form `tr(ab)` on `A` is
//!   nondegenerate, since its kernel is the Jacobson radical of `A`;
//! * the stabilizer of the tuple is the unit group of the commutant.
//!
//! Every quantity used is a dimension or a rank, so computing over `Q` or
//! `Q(i)` decides the question over the algebraic closure.

use crate::linalg::{Field, Matrix, Scalar, Subspace};
use crate::onepar::{GroupPoint, GroupType, PointKind};

/// Echelonized envelope of a tuple with its trace form, radical and
/// commutant.
#[derive(Clone, Debug)]
pub struct AlgebraData {
    n: usize,
    field: Field,
    basis: Vec<Matrix>,
    gram: Matrix,
    radical: Subspace,
    commutant_basis: Vec<Matrix>,
}

impl AlgebraData {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    /// `gram[i][j] = tr(basis_i basis_j)`.
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// The radical in coordinates of [`AlgebraData::basis`].
    pub fn radical(&self) -> &Subspace {
        &self.radical
    }

    pub fn radical_dim(&self) -> usize {
        self.radical.dim()
    }

    /// Radical basis as matrices.
    pub fn radical_matrices(&self) -> Vec<Matrix> {
        self.radical.basis().iter().map(|coords| self.combine(coords)).collect()
    }

    pub fn commutant_dim(&self) -> usize {
        self.commutant_basis.len()
    }

    pub fn commutant_basis(&self) -> &[Matrix] {
        &self.commutant_basis
    }

    /// `sum_i coords[i] * basis_i`.
    pub fn combine(&self, coords: &[Scalar]) -> Matrix {
        self.basis
            .iter()
            .zip(coords)
            .filter(|(_, c)| !c.is_zero())
            .fold(Matrix::zeros(self.n, self.n, self.field), |acc, (b, c)| &acc + &b.scale(c))
    }

    /// `m` lies in the linear span of the envelope.
    pub fn contains(&self, m: &Matrix) -> bool {
        self.span().contains(&m.to_vector())
    }

    fn span(&self) -> Subspace {
        Subspace::span(self.n * self.n, self.field, self.basis.iter().map(Matrix::to_vector).collect())
            .expect("basis shares the field")
    }

    /// `V > J V > J^2 V > ... > 0` for the radical `J`, ending at zero.
    pub fn radical_filtration(&self) -> Vec<Subspace> {
        let rad = self.radical_matrices();
        let mut out = vec![Subspace::full(self.n, self.field)];
        loop {
            let last = out.last().unwrap();
            if last.is_zero() {
                return out;
            }
            let mut next = Subspace::zero(self.n, self.field);
            for r in &rad {
                next = next.sum(&last.image_under(r));
            }
            debug_assert!(next.dim() < last.dim(), "radical is nilpotent");
            out.push(next);
        }
    }
}

/// Commutant `{g : g x_i = x_i g for all i}` as a basis of matrices.
pub fn commutant(mats: &[Matrix], n: usize, field: Field) -> Vec<Matrix> {
    let nn = n * n;
    let columns: Vec<Vec<Scalar>> = (0..nn)
        .map(|k| {
            let e = Matrix::unit(n, k / n, k % n, field);
            mats.iter().flat_map(|x| e.commutator(x).to_vector()).collect()
        })
        .collect();
    let map = Matrix::from_columns(mats.len() * nn, field, &columns).expect("same field");
    map.kernel()
        .basis()
        .iter()
        .map(|v| Matrix::from_vector(n, field, v).expect("n^2 entries"))
        .collect()
}

/// Span of all words in `gens`, including the empty word.
///
/// Breadth first: each round multiplies the newly found elements by every
/// generator and keeps those that enlarge the span, so at most `n^2`
/// rounds run.
pub fn envelope(gens: &[Matrix], n: usize, field: Field) -> Vec<Matrix> {
    let id = Matrix::identity(n, field);
    let mut span = Subspace::zero(n * n, field);
    span.insert(&id.to_vector()).expect("field");
    let mut frontier = vec![id];
    while !frontier.is_empty() && span.dim() < n * n {
        let mut next = Vec::new();
        for b in &frontier {
            for g in gens {
                let p = b * g;
                if span.insert(&p.to_vector()).expect("field") {
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    span.basis().iter().map(|v| Matrix::from_vector(n, field, v).expect("n^2 entries")).collect()
}

/// Envelope, trace form, radical and commutant of the tuple. For lie
/// tuples the generators are `I, v_1, ..., v_N`; for group tuples the
/// inverses are already in the envelope by Cayley-Hamilton.
pub fn algebra_closure(x: &GroupPoint) -> AlgebraData {
    let n = x.n();
    let field = x.field();
    let basis = envelope(x.mats(), n, field);
    #[cfg(debug_assertions)]
    if x.kind() == PointKind::Group {
        let span = Subspace::span(n * n, field, basis.iter().map(Matrix::to_vector).collect()).unwrap();
        for m in x.mats() {
            debug_assert!(span.contains(&m.inverse().unwrap().to_vector()), "inverse outside envelope");
        }
    }
    let dim = basis.len();
    let gram = Matrix::from_fn(dim, dim, field, |i, j| (&basis[i] * &basis[j]).trace());
    let radical = gram.kernel();
    let commutant_basis = commutant(x.mats(), n, field);
    AlgebraData { n, field, basis, gram, radical, commutant_basis }
}

/// Burnside: the envelope is all of `M_n`.
pub fn is_irreducible(a: &AlgebraData) -> bool {
    a.dim() == a.n * a.n
}

/// Semisimple natural module: the trace form is nondegenerate.
pub fn is_completely_reducible(a: &AlgebraData) -> bool {
    a.radical_dim() == 0
}

/// Completely reducible with commutant equal to the scalars. For `GL_n`
/// and `SL_n` the stabilizer is then exactly the center.
pub fn is_isotropic(a: &AlgebraData, _group: GroupType) -> bool {
    is_completely_reducible(a) && a.commutant_dim() == 1
}

/// `rad(A) V`: a proper nonzero invariant subspace when the radical is
/// nonzero.
pub fn radical_invariant_subspace(a: &AlgebraData) -> Option<Subspace> {
    if a.radical_dim() == 0 {
        return None;
    }
    let mut out = Subspace::zero(a.n, a.field);
    for r in a.radical_matrices() {
        out = out.sum(&r.column_space());
    }
    Some(out)
}

/// Index of `E_ab` in a basis of `gl_n` or `sl_n`, and the basis itself.
///
/// `gl_n`: all `E_ab` row-major. `sl_n`: `E_ab` for `a != b` and
/// `E_aa - E_nn` for `a < n`, in row-major order skipping `(n, n)`.
fn lie_basis(n: usize, group: GroupType, field: Field) -> Vec<Matrix> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            match group {
                GroupType::GL => out.push(Matrix::unit(n, a, b, field)),
                GroupType::SL if a == b && a == n - 1 => {}
                GroupType::SL if a == b => {
                    out.push(&Matrix::unit(n, a, a, field) - &Matrix::unit(n, n - 1, n - 1, field))
                }
                GroupType::SL => out.push(Matrix::unit(n, a, b, field)),
            }
        }
    }
    out
}

fn lie_coordinates(m: &Matrix, group: GroupType) -> Vec<Scalar> {
    let n = m.nrows();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if group == GroupType::SL && a == n - 1 && b == n - 1 {
                continue;
            }
            out.push(m.get(a, b).clone());
        }
    }
    out
}

/// The adjoint tuple `(Ad(x_1), ..., Ad(x_N))` acting on `gl_n`
/// (dimension `n^2`) or, for `SL`, on `sl_n` (dimension `n^2 - 1`).
pub fn ad_matrices(x: &GroupPoint) -> Result<GroupPoint, crate::onepar::OneParamError> {
    if x.kind() != PointKind::Group {
        return Err(crate::onepar::OneParamError::TagMismatch);
    }
    let n = x.n();
    let field = x.field();
    let basis = lie_basis(n, x.group(), field);
    let dim = basis.len();
    if dim == 0 {
        return Err(crate::onepar::OneParamError::SizeMismatch { expected: 2, found: n });
    }
    let mats = x
        .mats()
        .iter()
        .map(|g| {
            let g_inv = g.inverse().expect("group element");
            let cols: Vec<Vec<Scalar>> =
                basis.iter().map(|e| lie_coordinates(&e.similar(&g_inv, g), x.group())).collect();
            Matrix::from_columns(dim, field, &cols).expect("same field")
        })
        .collect();
    GroupPoint::new(GroupType::GL, PointKind::Group, mats)
}
