//! Bounded Hilbert-Mumford cross-checks and the `H_Lambda` approximation.

use std::collections::{HashMap, HashSet};

use crate::algebra::{self, AlgebraData};
use crate::linalg::{Matrix, Scalar, Subspace};
use crate::onepar::{lambda_sample, limit_tuple, Cochar, GroupPoint, GroupType};

use super::classify::{classify_with_seed, destabilize_with, ClassificationReport};
use super::orbit::orbit_member;
use super::pool::conjugator_pool;
use super::StabilityError;

/// Outcome for one sampled cocharacter in `Lambda_x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaCheck {
    /// Index into [`HmReport::conjugators`].
    pub conjugator: usize,
    pub weights: Vec<i64>,
    pub central: bool,
    /// Polystable inputs only: `lambda^+ x` lies in `G . x`.
    pub limit_in_orbit: Option<bool>,
    /// Polystable inputs only: `lambda^-1` also has a limit at
    /// `lambda^+ x`, and fixes it.
    pub opposite_fixes_limit: Option<bool>,
    /// `lambda^-1` (same conjugator) is itself in the sample.
    pub opposite_in_sample: bool,
}

#[derive(Clone, Debug)]
pub struct HmReport {
    pub bound: i64,
    pub classification: ClassificationReport,
    pub conjugators: Vec<Matrix>,
    pub checks: Vec<LambdaCheck>,
    /// Non-polystable inputs only: the witness has its limit outside the
    /// orbit and the limit is polystable.
    pub witness_ok: Option<bool>,
    pub violations: Vec<String>,
}

impl HmReport {
    pub fn noncentral_count(&self) -> usize {
        self.checks.iter().filter(|c| !c.central).count()
    }
}

fn sample_with_pool(
    x: &GroupPoint,
    a: &AlgebraData,
    bound: i64,
    extra: &[Matrix],
) -> Result<(Vec<Matrix>, Vec<(usize, Cochar)>), StabilityError> {
    let pool = conjugator_pool(x, a, extra)?;
    let index: HashMap<&Matrix, usize> = pool.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let sample = lambda_sample(x, bound, &pool)?;
    let indexed = sample.into_iter().map(|c| (index[c.conjugator()], c)).collect();
    Ok((pool, indexed))
}

/// Check the algebraic verdict against a finite sample of `Lambda_x`.
///
/// * polystable: every sampled limit stays in the orbit, and the opposite
///   cocharacter has a limit at it and fixes it;
/// * stable: every sampled cocharacter is central (trivial for `SL`);
/// * not polystable: the destabilizing witness leaves the orbit and lands
///   on a polystable point within `n - 1` refinements.
pub fn hm_crosscheck(x: &GroupPoint, bound: i64, seed: u64, extra: &[Matrix]) -> Result<HmReport, StabilityError> {
    let a = algebra::algebra_closure(x);
    let classification = classify_with_seed(x, seed)?;
    let (conjugators, sample) = sample_with_pool(x, &a, bound, extra)?;
    let keys: HashSet<(usize, Vec<i64>)> = sample.iter().map(|(i, c)| (*i, c.weights().to_vec())).collect();
    let polystable = classification.labels.polystable;
    let stable = classification.labels.stable;
    let mut violations = Vec::new();
    let mut orbit_cache: HashMap<GroupPoint, bool> = HashMap::new();
    let mut checks = Vec::with_capacity(sample.len());
    for (idx, lambda) in &sample {
        let weights = lambda.weights().to_vec();
        let neg: Vec<i64> = weights.iter().map(|w| -w).collect();
        let central = lambda.is_central();
        let mut check = LambdaCheck {
            conjugator: *idx,
            weights: weights.clone(),
            central,
            limit_in_orbit: None,
            opposite_fixes_limit: None,
            opposite_in_sample: keys.contains(&(*idx, neg)),
        };
        if stable && !central {
            violations.push(format!("stable, but non-central {weights:?} (conjugator {idx}) lies in Lambda_x"));
        }
        if polystable {
            let limit = limit_tuple(lambda, x)?
                .ok_or_else(|| StabilityError::Internal("sampled cocharacter has no limit".into()))?;
            let in_orbit = match orbit_cache.get(&limit) {
                Some(&b) => b,
                None => {
                    let b = orbit_member(x, &limit, seed)?.member;
                    orbit_cache.insert(limit.clone(), b);
                    b
                }
            };
            let fixes = limit_tuple(&lambda.opposite(), &limit)?.as_ref() == Some(&limit);
            if !in_orbit {
                violations.push(format!("polystable, but the limit along {weights:?} (conjugator {idx}) leaves the orbit"));
            }
            if !fixes {
                violations.push(format!("polystable, but the opposite of {weights:?} (conjugator {idx}) moves the limit"));
            }
            check.limit_in_orbit = Some(in_orbit);
            check.opposite_fixes_limit = Some(fixes);
        }
        checks.push(check);
    }
    let witness_ok = if polystable {
        None
    } else {
        let ok = match &classification.witness {
            None => {
                violations.push("not polystable, but no destabilizing witness".into());
                false
            }
            Some(w) => {
                let mut ok = true;
                if w.limit_in_orbit {
                    violations.push("witness limit lies in the orbit".into());
                    ok = false;
                }
                if limit_tuple(&w.cochar, x)?.as_ref() != Some(&w.limit) {
                    violations.push("witness limit does not match its cocharacter".into());
                    ok = false;
                }
                if !x.mats().iter().all(|m| w.flag.is_invariant_under(m)) {
                    violations.push("witness flag is not invariant".into());
                    ok = false;
                }
                if w.refinements + 1 > x.n().max(2) {
                    violations.push(format!("{} refinements exceed n - 1", w.refinements));
                    ok = false;
                }
                if !algebra::is_completely_reducible(&algebra::algebra_closure(&w.limit)) {
                    violations.push("witness limit is not polystable".into());
                    ok = false;
                }
                ok
            }
        };
        Some(ok)
    };
    if stable && !polystable {
        violations.push("stable but not polystable".into());
    }
    Ok(HmReport { bound, classification, conjugators, checks, witness_ok, violations })
}

/// Finite-sample approximation of `H_x`, the intersection of `P(lambda)`
/// over `Lambda_x`.
#[derive(Clone, Debug)]
pub struct HApprox {
    pub bound: i64,
    pub sampled: usize,
    pub noncentral: usize,
    /// Dimension of `G` itself.
    pub group_dim: usize,
    /// Lie-algebra dimension of `H_Lambda` for the sampled `Lambda`; an
    /// upper bound for `dim H_x`.
    pub upper_bound_dim: usize,
    /// Linear span of the group generated by `x` (its algebra envelope);
    /// `phi_x` lies in `H_x`.
    pub envelope_dim: usize,
    pub envelope_contained: bool,
    /// Basis of the matrix algebra preserving every sampled weight flag.
    pub parabolic_basis: Vec<Matrix>,
    cochars: Vec<Cochar>,
    parabolic_span: Subspace,
}

impl HApprox {
    /// `g` lies in every sampled `P(lambda)`.
    pub fn contains(&self, g: &Matrix) -> Result<bool, StabilityError> {
        for c in &self.cochars {
            if !c.in_parabolic(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `m` lies in the linear span of `H_Lambda`.
    pub fn span_contains(&self, m: &Matrix) -> bool {
        self.parabolic_span.contains(&m.to_vector())
    }
}

/// Intersect the R-parabolics of a sampled `Lambda_x`.
///
/// `P(lambda)` is cut out by `(h^-1 X h)_{ij} = 0` for `k_i < k_j`, linear
/// in `X`; the solution space is a matrix algebra whose unit group meets
/// `G` in `H_Lambda`.
pub fn h_approx(x: &GroupPoint, bound: i64, extra: &[Matrix]) -> Result<HApprox, StabilityError> {
    let a = algebra::algebra_closure(x);
    let (_, sample) = sample_with_pool(x, &a, bound, extra)?;
    let n = x.n();
    let field = x.field();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut cochars = Vec::new();
    for (_, lambda) in sample.iter().filter(|(_, c)| !c.is_central()) {
        let h = lambda.conjugator();
        let h_inv = lambda.conjugator_inv();
        let k = lambda.weights();
        for i in 0..n {
            for j in 0..n {
                if k[i] < k[j] {
                    // (h^-1 X h)_ij = sum_ab (h^-1)_ia X_ab h_bj
                    let row = (0..n * n).map(|ab| h_inv.get(i, ab / n) * h.get(ab % n, j)).collect();
                    rows.push(row);
                }
            }
        }
        cochars.push(lambda.clone());
    }
    let constraints = if rows.is_empty() {
        Matrix::zeros(0, n * n, field)
    } else {
        Matrix::from_rows(rows).map_err(StabilityError::from)?
    };
    let parabolic_span = constraints.kernel();
    let parabolic_basis: Vec<Matrix> =
        parabolic_span.basis().iter().map(|v| Matrix::from_vector(n, field, v).expect("n^2")).collect();
    let linear_dim = parabolic_span.dim();
    let upper_bound_dim = match x.group() {
        GroupType::GL => linear_dim,
        GroupType::SL => linear_dim - 1,
    };
    let envelope_contained = a.basis().iter().all(|b| parabolic_span.contains(&b.to_vector()));
    Ok(HApprox {
        bound,
        sampled: sample.len(),
        noncentral: cochars.len(),
        group_dim: x.group().dim(n),
        upper_bound_dim,
        envelope_dim: a.dim(),
        envelope_contained,
        parabolic_basis,
        cochars,
        parabolic_span,
    })
}

/// Witness re-derived for an arbitrary tuple, used by the CLI `destab`
/// command.
pub fn destab_report(x: &GroupPoint, seed: u64) -> Result<Option<super::DestabWitness>, StabilityError> {
    Ok(destabilize_with(x, &algebra::algebra_closure(x), seed)?.0)
}
