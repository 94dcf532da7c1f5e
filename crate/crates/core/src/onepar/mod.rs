//! One-parameter subgroups of `GL_n` / `SL_n`: limits, R-parabolic
//! membership, weight decompositions and finite samples of `Lambda_x`.

mod cochar;
mod point;

pub use cochar::{Cochar, WeightDecomp};
pub use point::{GroupPoint, GroupType, PointKind};

use std::collections::BTreeSet;

use num_integer::Integer;
use thiserror::Error;

use crate::linalg::{Flag, Matrix, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OneParamError {
    #[error("tuple is empty")]
    EmptyTuple,
    #[error("matrix {index} is not square")]
    NotSquare { index: usize },
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("matrix {index} has a different field tag")]
    FieldMismatch { index: usize },
    #[error("matrix {index} is not invertible")]
    NotInvertible { index: usize },
    #[error("matrix {index} has determinant {det}, expected 1")]
    DetNotOne { index: usize, det: String },
    #[error("group or kind tags differ")]
    TagMismatch,
    #[error("conjugator is singular")]
    SingularConjugator,
    #[error("SL weights must sum to zero (sum is {0})")]
    WeightSum(i64),
    #[error("mu is undefined for the zero vector")]
    ZeroVector,
    #[error("sampling supports n <= {max}, got {n}")]
    SampleTooLarge { n: usize, max: usize },
    #[error("bound must be at least 1")]
    BadBound,
}

/// Largest `n` for which weight grids and permutation pools are enumerated.
pub const MAX_SAMPLE_N: usize = 4;

/// `lambda^+ x`, componentwise; `None` when `lambda` is not in `Lambda_x`.
pub fn limit_tuple(lambda: &Cochar, x: &GroupPoint) -> Result<Option<GroupPoint>, OneParamError> {
    if lambda.n() != x.n() {
        return Err(OneParamError::SizeMismatch { expected: x.n(), found: lambda.n() });
    }
    if x.group() == GroupType::SL && lambda.weight_sum() != 0 {
        return Err(OneParamError::WeightSum(lambda.weight_sum()));
    }
    let mut limits = Vec::with_capacity(x.len());
    for m in x.mats() {
        match lambda.limit_conj(m)? {
            Some(l) => limits.push(l),
            None => return Ok(None),
        }
    }
    x.with_mats(limits).map(Some)
}

/// A cocharacter whose R-parabolic is the stabilizer of `flag`.
///
/// The columns of `h` run through a basis adapted to the flag, completed
/// greedily by standard basis vectors; step `j` of `m` gets weight `m - j`
/// and the complement weight `0`. For `SL` the weights are shifted to sum
/// to zero and divided by their gcd.
pub fn flag_to_cochar(flag: &Flag, group: GroupType) -> Cochar {
    let n = flag.ambient();
    let field = flag.field();
    let steps = flag.steps().len() as i64;
    let mut span = crate::linalg::Subspace::zero(n, field);
    let mut columns = Vec::with_capacity(n);
    let mut base = Vec::with_capacity(n);
    for (j, step) in flag.steps().iter().enumerate() {
        for v in step.basis() {
            if span.insert(v).expect("flag field") {
                columns.push(v.clone());
                base.push(steps - j as i64);
            }
        }
    }
    for e in 0..n {
        let v: Vec<Scalar> = (0..n).map(|i| Scalar::from_i64(field, (i == e) as i64)).collect();
        if span.insert(&v).expect("flag field") {
            columns.push(v);
            base.push(0);
        }
    }
    let weights = match group {
        GroupType::GL => base,
        GroupType::SL => {
            let total: i64 = base.iter().sum();
            let shifted: Vec<i64> = base.iter().map(|&w| n as i64 * w - total).collect();
            let g = shifted.iter().fold(0i64, |acc, &w| acc.gcd(&w)).max(1);
            shifted.into_iter().map(|w| w / g).collect()
        }
    };
    let h = Matrix::from_columns(n, field, &columns).expect("flag vectors");
    Cochar::new(weights, h).expect("adapted basis is invertible")
}

/// All weight vectors in `[-bound, bound]^n`, lexicographic; for `SL`
/// only those summing to zero.
pub fn weight_grid(n: usize, bound: i64, group: GroupType) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut current = vec![-bound; n];
    loop {
        if group == GroupType::GL || current.iter().sum::<i64>() == 0 {
            out.push(current.clone());
        }
        let mut idx = n;
        loop {
            if idx == 0 {
                return out;
            }
            idx -= 1;
            if current[idx] < bound {
                current[idx] += 1;
                for c in current.iter_mut().skip(idx + 1) {
                    *c = -bound;
                }
                break;
            }
        }
    }
}

/// All `n!` permutation matrices, in lexicographic order of permutations.
pub fn permutation_matrices(n: usize, field: crate::linalg::Field) -> Vec<Matrix> {
    fn perms(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == items.len() {
            out.push(items.clone());
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            perms(items, k + 1, out);
            items.swap(k, i);
        }
    }
    let mut all = Vec::new();
    perms(&mut (0..n).collect(), 0, &mut all);
    all.sort();
    all.into_iter()
        .map(|p| Matrix::from_fn(n, n, field, |i, j| Scalar::from_i64(field, (p[j] == i) as i64)))
        .collect()
}

/// A finite subset of `Lambda_x`: every cocharacter with weights in
/// `[-bound, bound]^n` (sum zero for `SL`) and conjugator from the
/// deduplicated list whose limit on `x` exists. Ordered by
/// `(conjugator index, weights)`.
pub fn lambda_sample(x: &GroupPoint, bound: i64, conjugators: &[Matrix]) -> Result<Vec<Cochar>, OneParamError> {
    if bound < 1 {
        return Err(OneParamError::BadBound);
    }
    let n = x.n();
    if n > MAX_SAMPLE_N {
        return Err(OneParamError::SampleTooLarge { n, max: MAX_SAMPLE_N });
    }
    let grid = weight_grid(n, bound, x.group());
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for h in conjugators {
        if seen.contains(h) {
            continue;
        }
        seen.push(h.clone());
        let base = Cochar::new(vec![0; n], h.clone())?;
        if h.field() != x.field() {
            return Err(OneParamError::FieldMismatch { index: seen.len() - 1 });
        }
        // Positions (i, j) where some h^-1 x_m h is nonzero; lambda is in
        // Lambda_x iff k_i >= k_j on all of them.
        let mut support = BTreeSet::new();
        for m in x.mats() {
            let local = m.similar(base.conjugator(), base.conjugator_inv());
            for i in 0..n {
                for j in 0..n {
                    if i != j && !local.get(i, j).is_zero() {
                        support.insert((i, j));
                    }
                }
            }
        }
        for w in &grid {
            if support.iter().all(|&(i, j)| w[i] >= w[j]) {
                out.push(base.with_weights(w.clone()));
            }
        }
    }
    Ok(out)
}
