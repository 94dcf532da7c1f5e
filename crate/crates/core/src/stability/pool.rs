//! Conjugators for sampling `Lambda_x`.
//!
//! The pool holds the identity, every permutation matrix, and a basis
//! adapted to each candidate subspace found over the working field:
//! pieces of the radical filtration, eigenspaces, kernels and images of
//! commutant elements (all invariant), and eigenspaces and kernels of the
//! generators themselves (not necessarily invariant; the sample keeps only
//! cocharacters whose limit exists).

use crate::algebra::AlgebraData;
use crate::linalg::{Flag, Matrix, Scalar, Subspace};
use crate::onepar::{flag_to_cochar, permutation_matrices, GroupPoint, GroupType, OneParamError, MAX_SAMPLE_N};

fn push_unique(out: &mut Vec<Subspace>, s: Subspace) {
    if !s.is_zero() && !s.is_full() && !out.contains(&s) {
        out.push(s);
    }
}

/// Proper nonzero eigenspaces and kernel of `m` over the working field.
fn spectral_subspaces(m: &Matrix, out: &mut Vec<Subspace>) {
    let field = m.field();
    let n = m.nrows();
    push_unique(out, m.kernel());
    if let Some(eigs) = m.rational_eigenvalues() {
        for e in eigs {
            let shifted = m - &Matrix::scalar(n, &Scalar::from_rational(field, e));
            push_unique(out, shifted.kernel());
        }
    }
}

/// Candidate subspaces, in discovery order, without duplicates.
pub fn candidate_subspaces(x: &GroupPoint, a: &AlgebraData) -> Vec<Subspace> {
    let mut out = Vec::new();
    for s in a.radical_filtration() {
        push_unique(&mut out, s);
    }
    for c in a.commutant_basis() {
        push_unique(&mut out, c.column_space());
        spectral_subspaces(c, &mut out);
    }
    for m in x.mats() {
        spectral_subspaces(m, &mut out);
    }
    out
}

/// Candidate subspaces invariant under every entry of `x`.
pub fn invariant_subspaces(x: &GroupPoint, a: &AlgebraData) -> Vec<Subspace> {
    candidate_subspaces(x, a).into_iter().filter(|s| x.mats().iter().all(|m| s.is_invariant_under(m))).collect()
}

/// Deduplicated conjugator pool: identity, permutations, flag-adapted
/// bases, then `extra`.
pub fn conjugator_pool(x: &GroupPoint, a: &AlgebraData, extra: &[Matrix]) -> Result<Vec<Matrix>, OneParamError> {
    let n = x.n();
    if n > MAX_SAMPLE_N {
        return Err(OneParamError::SampleTooLarge { n, max: MAX_SAMPLE_N });
    }
    let field = x.field();
    let mut pool: Vec<Matrix> = permutation_matrices(n, field);
    let add = |m: Matrix, pool: &mut Vec<Matrix>| {
        if !pool.contains(&m) {
            pool.push(m);
        }
    };
    let filtration = a.radical_filtration();
    if filtration.len() > 2 {
        let steps: Vec<Subspace> = filtration[1..filtration.len() - 1].iter().rev().cloned().collect();
        let flag = Flag::new(steps).expect("radical filtration is strict");
        add(flag_to_cochar(&flag, GroupType::GL).conjugator().clone(), &mut pool);
    }
    for s in candidate_subspaces(x, a) {
        let flag = Flag::new(vec![s]).expect("proper nonzero");
        add(flag_to_cochar(&flag, GroupType::GL).conjugator().clone(), &mut pool);
    }
    for m in extra {
        if m.field() != field || !m.is_square() || m.nrows() != n {
            return Err(OneParamError::SizeMismatch { expected: n, found: m.nrows() });
        }
        if !m.is_invertible() {
            return Err(OneParamError::SingularConjugator);
        }
        add(m.clone(), &mut pool);
    }
    Ok(pool)
}
