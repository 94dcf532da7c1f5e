//! Orbit membership: is `y = g . x` for some invertible `g`?
//!
//! The intertwiners `{g : g x_i = y_i g}` form a linear space `S`. The
//! determinant restricted to `S` is a polynomial of degree `n` in the
//! coordinates of `S`; some element of `S` is invertible iff that
//! polynomial is nonzero. For `dim S <= GRID_MAX_DIM` it is evaluated on
//! the grid `{0, ..., n}^m`, where a nonzero polynomial of degree at most
//! `n` in each variable cannot vanish everywhere. Above that, a seeded run
//! of random evaluations at 64-bit integer points decides with failure
//! probability at most `(n / 2^64)^RANDOM_TRIALS`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{Field, Matrix, Scalar};
use crate::onepar::{GroupPoint, GroupType};

use super::StabilityError;

pub const GRID_MAX_DIM: usize = 6;
pub const RANDOM_TRIALS: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitMethod {
    /// No intertwiner at all, or `x = y`.
    Trivial,
    /// Exhaustive grid evaluation.
    Grid,
    /// Seeded random evaluation.
    Random { seed: u64, trials: usize },
}

#[derive(Clone, Debug)]
pub struct OrbitMembership {
    pub member: bool,
    /// An invertible `g` with `g x_i g^-1 = y_i`, rescaled to determinant
    /// one for `SL` when the working field allows it.
    pub conjugator: Option<Matrix>,
    /// Dimension of the intertwiner space.
    pub solution_dim: usize,
    pub method: OrbitMethod,
    pub notes: Vec<String>,
}

fn check_shapes(x: &GroupPoint, y: &GroupPoint) -> Result<(), StabilityError> {
    if x.group() != y.group() || x.kind() != y.kind() {
        return Err(StabilityError::ShapeMismatch("group or kind tags differ".into()));
    }
    if x.n() != y.n() || x.len() != y.len() {
        return Err(StabilityError::ShapeMismatch(format!(
            "tuple shapes differ: {}x{} vs {}x{}",
            x.len(),
            x.n(),
            y.len(),
            y.n()
        )));
    }
    if x.field() != y.field() {
        return Err(StabilityError::ShapeMismatch("field tags differ".into()));
    }
    Ok(())
}

/// Basis of `{g : g x_i = y_i g for all i}`.
pub fn intertwiners(x: &GroupPoint, y: &GroupPoint) -> Vec<Matrix> {
    let n = x.n();
    let field = x.field();
    let nn = n * n;
    let columns: Vec<Vec<Scalar>> = (0..nn)
        .map(|k| {
            let e = Matrix::unit(n, k / n, k % n, field);
            x.mats()
                .iter()
                .zip(y.mats())
                .flat_map(|(xi, yi)| (&(&e * xi) - &(yi * &e)).to_vector())
                .collect()
        })
        .collect();
    let map = Matrix::from_columns(x.len() * nn, field, &columns).expect("same field");
    map.kernel().basis().iter().map(|v| Matrix::from_vector(n, field, v).expect("n^2")).collect()
}

fn combination(basis: &[Matrix], coeffs: &[Scalar], n: usize, field: Field) -> Matrix {
    basis
        .iter()
        .zip(coeffs)
        .filter(|(_, c)| !c.is_zero())
        .fold(Matrix::zeros(n, n, field), |acc, (b, c)| &acc + &b.scale(c))
}

fn grid_search(basis: &[Matrix], n: usize, field: Field) -> Option<Matrix> {
    let m = basis.len();
    let top = n as i64;
    let mut coeffs = vec![0i64; m];
    loop {
        let scalars: Vec<Scalar> = coeffs.iter().map(|&c| Scalar::from_i64(field, c)).collect();
        let g = combination(basis, &scalars, n, field);
        if !g.det().expect("square").is_zero() {
            return Some(g);
        }
        let mut idx = m;
        loop {
            if idx == 0 {
                return None;
            }
            idx -= 1;
            if coeffs[idx] < top {
                coeffs[idx] += 1;
                coeffs[idx + 1..].iter_mut().for_each(|c| *c = 0);
                break;
            }
        }
    }
}

fn random_search(basis: &[Matrix], n: usize, field: Field, seed: u64) -> Option<Matrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIALS {
        let scalars: Vec<Scalar> =
            basis.iter().map(|_| Scalar::from_bigint(field, BigInt::from(rng.gen::<u64>()))).collect();
        let g = combination(basis, &scalars, n, field);
        if !g.det().expect("square").is_zero() {
            return Some(g);
        }
    }
    None
}

fn rational_nth_root(r: &BigRational, n: u32) -> Option<BigRational> {
    if r.is_negative() && n % 2 == 0 {
        return None;
    }
    let root = |v: &BigInt| {
        let c = v.nth_root(n);
        (c.pow(n) == *v).then_some(c)
    };
    Some(BigRational::new(root(r.numer())?, root(r.denom())?))
}

/// Decide whether `y` lies in the orbit of `x`.
pub fn orbit_member(x: &GroupPoint, y: &GroupPoint, seed: u64) -> Result<OrbitMembership, StabilityError> {
    check_shapes(x, y)?;
    let n = x.n();
    let field = x.field();
    if x == y {
        return Ok(OrbitMembership {
            member: true,
            conjugator: Some(Matrix::identity(n, field)),
            solution_dim: crate::algebra::commutant(x.mats(), n, field).len(),
            method: OrbitMethod::Trivial,
            notes: Vec::new(),
        });
    }
    let basis = intertwiners(x, y);
    let solution_dim = basis.len();
    let (found, method) = if basis.is_empty() {
        (None, OrbitMethod::Trivial)
    } else if solution_dim <= GRID_MAX_DIM {
        (grid_search(&basis, n, field), OrbitMethod::Grid)
    } else {
        (random_search(&basis, n, field, seed), OrbitMethod::Random { seed, trials: RANDOM_TRIALS })
    };
    let mut notes = Vec::new();
    let conjugator = match (found, x.group()) {
        (Some(g), GroupType::SL) => {
            let det = g.det().expect("square");
            let root = if det.is_real() { rational_nth_root(det.re(), n as u32) } else { None };
            match root {
                Some(r) => Some(g.scale(&Scalar::from_rational(field, r.recip()))),
                None => {
                    notes.push(format!(
                        "GL-conjugate; an SL conjugator needs an {n}-th root of det = {det}, which exists over the algebraic closure but not in the working field"
                    ));
                    Some(g)
                }
            }
        }
        (found, _) => found,
    };
    if let OrbitMethod::Random { .. } = method {
        if conjugator.is_none() {
            notes.push(format!(
                "no invertible intertwiner in {RANDOM_TRIALS} seeded random trials (seed {seed})"
            ));
        }
    }
    debug_assert!(conjugator.as_ref().is_none_or(|g| {
        x.mats().iter().zip(y.mats()).all(|(xi, yi)| &(g * xi) == &(yi * g))
    }));
    Ok(OrbitMembership { member: conjugator.is_some(), conjugator, solution_dim, method, notes })
}
