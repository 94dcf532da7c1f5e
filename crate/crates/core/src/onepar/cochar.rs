use std::collections::BTreeMap;

use crate::linalg::{Field, Matrix, Scalar};

use super::OneParamError;

/// A one-parameter subgroup `t -> h diag(t^k_1, ..., t^k_n) h^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochar {
    weights: Vec<i64>,
    h: Matrix,
    h_inv: Matrix,
}

/// The decomposition `v = v_1 + ... + v_m` into weight spaces of the
/// adjoint action, with strictly increasing weights and nonzero parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDecomp {
    pub components: Vec<(i64, Matrix)>,
}

impl WeightDecomp {
    pub fn weights(&self) -> Vec<i64> {
        self.components.iter().map(|(w, _)| *w).collect()
    }

    pub fn sum(&self, n: usize, field: Field) -> Matrix {
        self.components.iter().fold(Matrix::zeros(n, n, field), |acc, (_, c)| &acc + c)
    }
}

impl Cochar {
    pub fn new(weights: Vec<i64>, h: Matrix) -> Result<Cochar, OneParamError> {
        if !h.is_square() || h.nrows() != weights.len() || weights.is_empty() {
            return Err(OneParamError::SizeMismatch { expected: weights.len(), found: h.nrows() });
        }
        let h_inv = h.inverse().map_err(|_| OneParamError::SingularConjugator)?;
        Ok(Cochar { weights, h, h_inv })
    }

    /// The diagonal cocharacter (`h = I`).
    pub fn diagonal(field: Field, weights: Vec<i64>) -> Cochar {
        let id = Matrix::identity(weights.len(), field);
        Cochar { weights, h: id.clone(), h_inv: id }
    }

    /// Same conjugator, new weights.
    pub fn with_weights(&self, weights: Vec<i64>) -> Cochar {
        assert_eq!(weights.len(), self.n(), "weight count");
        Cochar { weights, h: self.h.clone(), h_inv: self.h_inv.clone() }
    }

    pub fn trivial(n: usize, field: Field) -> Cochar {
        Cochar::diagonal(field, vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn field(&self) -> Field {
        self.h.field()
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn conjugator(&self) -> &Matrix {
        &self.h
    }

    pub fn conjugator_inv(&self) -> &Matrix {
        &self.h_inv
    }

    pub fn weight_sum(&self) -> i64 {
        self.weights.iter().sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.weights.iter().all(|&k| k == 0)
    }

    /// Central in `GL_n`: all weights equal.
    pub fn is_central(&self) -> bool {
        self.weights.windows(2).all(|w| w[0] == w[1])
    }

    pub fn to_field(&self, field: Field) -> Option<Cochar> {
        Some(Cochar {
            weights: self.weights.clone(),
            h: self.h.to_field(field)?,
            h_inv: self.h_inv.to_field(field)?,
        })
    }

    /// `lambda^-1`: negated weights, same conjugator.
    pub fn opposite(&self) -> Cochar {
        Cochar { weights: self.weights.iter().map(|k| -k).collect(), h: self.h.clone(), h_inv: self.h_inv.clone() }
    }

    /// `lambda(t)` for a nonzero scalar `t`.
    pub fn evaluate(&self, t: &Scalar) -> Matrix {
        let field = self.field();
        let t = t.to_field(field).expect("t in the cocharacter's field");
        let t_inv = t.inv().expect("t must be nonzero");
        let power = |k: i64| {
            let base = if k >= 0 { &t } else { &t_inv };
            (0..k.unsigned_abs()).fold(Scalar::one(field), |acc, _| &acc * base)
        };
        let d = Matrix::diag(&self.weights.iter().map(|&k| power(k)).collect::<Vec<_>>()).expect("one field");
        &(&self.h * &d) * &self.h_inv
    }

    fn check(&self, g: &Matrix) -> Result<Matrix, OneParamError> {
        if !g.is_square() || g.nrows() != self.n() {
            return Err(OneParamError::SizeMismatch { expected: self.n(), found: g.nrows() });
        }
        if g.field() != self.field() {
            return Err(OneParamError::FieldMismatch { index: 0 });
        }
        Ok(g.similar(&self.h, &self.h_inv))
    }

    /// `lim_{t -> 0} lambda(t) g lambda(t)^-1`, when it exists.
    ///
    /// In the basis of `h` the entry `(i, j)` scales by `t^(k_i - k_j)`, so
    /// the limit exists iff every entry with `k_i < k_j` vanishes, and
    /// equals the part with `k_i = k_j`. The same formula serves the group
    /// and the adjoint action.
    pub fn limit_conj(&self, g: &Matrix) -> Result<Option<Matrix>, OneParamError> {
        let local = self.check(g)?;
        let n = self.n();
        let field = self.field();
        let mut limit = Matrix::zeros(n, n, field);
        for i in 0..n {
            for j in 0..n {
                let e = local.get(i, j);
                if e.is_zero() {
                    continue;
                }
                match self.weights[i].cmp(&self.weights[j]) {
                    std::cmp::Ordering::Less => return Ok(None),
                    std::cmp::Ordering::Equal => limit.set(i, j, e.clone()),
                    std::cmp::Ordering::Greater => {}
                }
            }
        }
        Ok(Some(limit.similar(&self.h_inv, &self.h)))
    }

    /// `g` lies in the R-parabolic `P(lambda)`.
    pub fn in_parabolic(&self, g: &Matrix) -> Result<bool, OneParamError> {
        Ok(self.limit_conj(g)?.is_some())
    }

    /// `g` lies in the R-Levi `L(lambda)`.
    pub fn in_levi(&self, g: &Matrix) -> Result<bool, OneParamError> {
        Ok(self.limit_conj(g)?.is_some_and(|l| &l == g))
    }

    /// `g` lies in the R-unipotent radical `U(lambda)`.
    pub fn in_unipotent(&self, g: &Matrix) -> Result<bool, OneParamError> {
        Ok(self.limit_conj(g)?.is_some_and(|l| l.is_identity()))
    }

    /// Split `v` by the weight `k_i - k_j` of each entry of `h^-1 v h`.
    pub fn weight_decomp(&self, v: &Matrix) -> Result<WeightDecomp, OneParamError> {
        let local = self.check(v)?;
        let n = self.n();
        let field = self.field();
        let mut parts: BTreeMap<i64, Matrix> = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                let e = local.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let w = self.weights[i] - self.weights[j];
                parts.entry(w).or_insert_with(|| Matrix::zeros(n, n, field)).set(i, j, e.clone());
            }
        }
        let components = parts.into_iter().map(|(w, c)| (w, c.similar(&self.h_inv, &self.h))).collect();
        Ok(WeightDecomp { components })
    }

    /// Least weight with a nonzero component of `v`.
    pub fn mu(&self, v: &Matrix) -> Result<i64, OneParamError> {
        self.weight_decomp(v)?.components.first().map(|(w, _)| *w).ok_or(OneParamError::ZeroVector)
    }
}
