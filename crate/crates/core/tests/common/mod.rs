//! Seeded generators and independent oracles shared by the integration
//! tests. The oracles use their own arithmetic and never call the crate's
//! echelon or limit code.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use conjstab::linalg::{Field, Matrix, Scalar};
use conjstab::onepar::{Cochar, GroupPoint, GroupType, PointKind};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(field: Field, v: i64) -> Scalar {
    Scalar::from_i64(field, v)
}

pub fn small(rng: &mut ChaCha8Rng) -> i64 {
    rng.gen_range(-2..=2)
}

/// Product of a few elementary transvections `I + c E_ij`: integral with
/// determinant one.
pub fn unimodular(rng: &mut ChaCha8Rng, n: usize, field: Field) -> Matrix {
    let mut g = Matrix::identity(n, field);
    if n == 1 {
        return g;
    }
    for _ in 0..3 {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let t = Matrix::unit(n, i, j, field).scale(&q(field, small(rng)));
        g = &g * &(&Matrix::identity(n, field) + &t);
    }
    g
}

/// Random rational invertible matrix: a unimodular matrix times a diagonal
/// of nonzero rationals, in random order.
pub fn invertible(rng: &mut ChaCha8Rng, n: usize, field: Field) -> Matrix {
    let d: Vec<Scalar> = (0..n)
        .map(|_| {
            let num = *[-3i64, -2, -1, 1, 2, 3].choose(rng).unwrap();
            Scalar::from_ratio(field, num, rng.gen_range(1..=3))
        })
        .collect();
    let d = Matrix::diag(&d).unwrap();
    if rng.gen_bool(0.5) {
        &unimodular(rng, n, field) * &d
    } else {
        &d * &unimodular(rng, n, field)
    }
}

/// Structural shape of a random tuple before hiding it by conjugation.
#[derive(Clone, Copy, Debug)]
pub enum Shape {
    Generic,
    /// Block upper triangular for a split `k`: reducible, usually not CR.
    UpperBlock,
    /// Block diagonal: reducible and CR when each block is.
    BlockDiag,
    /// Upper triangular with a common eigenvalue pattern: often unipotent
    /// parts.
    Triangular,
    /// Commuting diagonal tuple.
    Diagonal,
    /// Scalar multiples of the identity.
    Scalar,
}

pub const SHAPES: [Shape; 6] =
    [Shape::Generic, Shape::UpperBlock, Shape::BlockDiag, Shape::Triangular, Shape::Diagonal, Shape::Scalar];

fn entry_mask(shape: Shape, split: usize, i: usize, j: usize) -> bool {
    match shape {
        Shape::Generic => true,
        Shape::UpperBlock => !(i >= split && j < split),
        Shape::BlockDiag => (i < split) == (j < split),
        Shape::Triangular => i <= j,
        Shape::Diagonal | Shape::Scalar => i == j,
    }
}

fn raw_matrix(rng: &mut ChaCha8Rng, shape: Shape, n: usize, split: usize, field: Field) -> Matrix {
    if let Shape::Scalar = shape {
        return Matrix::scalar(n, &q(field, small(rng)));
    }
    Matrix::from_fn(n, n, field, |i, j| {
        if entry_mask(shape, split, i, j) {
            q(field, small(rng))
        } else {
            Scalar::zero(field)
        }
    })
}

/// Turn a raw matrix into a valid element: lie tuples are kept as is;
/// group tuples are shifted by the identity until invertible (`GL`) or
/// rebuilt with determinant one in the same shape (`SL`).
fn make_valid(rng: &mut ChaCha8Rng, m: Matrix, group: GroupType, kind: PointKind, shape: Shape, split: usize) -> Matrix {
    let n = m.nrows();
    let field = m.field();
    match (kind, group) {
        (PointKind::Lie, _) => m,
        (PointKind::Group, GroupType::GL) => {
            let mut m = m;
            while !m.is_invertible() {
                m = &m + &Matrix::identity(n, field);
            }
            m
        }
        (PointKind::Group, GroupType::SL) => {
            // Triangular patterns get a diagonal of +-1 with an even number
            // of minus signs, so det = 1.
            let mut signs: Vec<i64> = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
            if signs.iter().product::<i64>() == -1 {
                signs[0] = -signs[0];
            }
            match shape {
                Shape::Generic => {
                    let g = unimodular(rng, n, field);
                    let d = Matrix::diag(&signs.iter().map(|&s| q(field, s)).collect::<Vec<_>>()).unwrap();
                    &g * &(&d * &unimodular(rng, n, field))
                }
                Shape::Scalar => {
                    if n % 2 == 0 && rng.gen_bool(0.5) {
                        Matrix::scalar(n, &q(field, -1))
                    } else {
                        Matrix::identity(n, field)
                    }
                }
                Shape::BlockDiag => {
                    let a = unimodular(rng, split, field);
                    let b = unimodular(rng, n - split, field);
                    Matrix::from_fn(n, n, field, |i, j| match (i < split, j < split) {
                        (true, true) => a.get(i, j).clone(),
                        (false, false) => b.get(i - split, j - split).clone(),
                        _ => Scalar::zero(field),
                    })
                }
                _ => Matrix::from_fn(n, n, field, |i, j| {
                    if i == j {
                        q(field, signs[i])
                    } else if i < j && entry_mask(shape, split, i, j) {
                        m.get(i, j).clone()
                    } else {
                        Scalar::zero(field)
                    }
                }),
            }
        }
    }
}

/// Seeded random tuple. The structure is hidden by a random unimodular
/// conjugation so that bases are not coordinate-aligned.
pub fn random_tuple(rng: &mut ChaCha8Rng, group: GroupType, kind: PointKind, n: usize, len: usize) -> GroupPoint {
    // Generic tuples are the only source of irreducible ones; draw them a
    // third of the time.
    let shape = if rng.gen_bool(1.0 / 3.0) { Shape::Generic } else { *SHAPES[1..].choose(rng).unwrap() };
    random_tuple_of_shape(rng, group, kind, n, len, shape)
}

pub fn random_tuple_of_shape(
    rng: &mut ChaCha8Rng,
    group: GroupType,
    kind: PointKind,
    n: usize,
    len: usize,
    shape: Shape,
) -> GroupPoint {
    let field = Field::Q;
    let split = if n > 1 { rng.gen_range(1..n) } else { 1 };
    let mats: Vec<Matrix> = (0..len)
        .map(|_| {
            let raw = raw_matrix(rng, shape, n, split, field);
            make_valid(rng, raw, group, kind, shape, split)
        })
        .collect();
    let x = GroupPoint::new(group, kind, mats).expect("valid by construction");
    let g = unimodular(rng, n, field);
    x.conjugate(&g).expect("unimodular")
}

/// Random strictly upper triangular matrix conjugated by a unimodular
/// matrix: nilpotent.
pub fn random_nilpotent(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let field = Field::Q;
    let u = Matrix::from_fn(n, n, field, |i, j| if i < j { q(field, small(rng)) } else { Scalar::zero(field) });
    let g = unimodular(rng, n, field);
    &(&g * &u) * &g.inverse().unwrap()
}

/// Conjugators for sampled cocharacters: permutations plus a few random
/// unimodular matrices.
pub fn sample_conjugators(rng: &mut ChaCha8Rng, n: usize, field: Field, extra: usize) -> Vec<Matrix> {
    let mut out = conjstab::onepar::permutation_matrices(n, field);
    for _ in 0..extra {
        out.push(unimodular(rng, n, field));
    }
    out
}

// ---------------------------------------------------------------------------
// Gaussian-rational arithmetic for the oracles.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G {
    pub re: BigRational,
    pub im: BigRational,
}

impl G {
    pub fn zero() -> G {
        G { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn from_scalar(s: &Scalar) -> G {
        G { re: s.re().clone(), im: s.im() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &G) -> G {
        G { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &G) -> G {
        G { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn mul(&self, o: &G) -> G {
        G { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    pub fn inv(&self) -> G {
        let norm = &self.re * &self.re + &self.im * &self.im;
        G { re: &self.re / &norm, im: -&self.im / &norm }
    }
}

/// Rank by plain Gaussian elimination on Gaussian rationals.
pub fn oracle_rank(mut rows: Vec<Vec<G>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv();
        let pivot: Vec<G> = rows[rank].iter().map(|e| e.mul(&inv)).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (c, e) in row.iter_mut().enumerate() {
                    *e = e.sub(&f.mul(&pivot[c]));
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

fn to_g(m: &Matrix) -> Vec<Vec<G>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| G::from_scalar(m.get(i, j))).collect()).collect()
}

fn gmul(a: &[Vec<G>], b: &[Vec<G>]) -> Vec<Vec<G>> {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| (0..m).map(|j| (0..k).fold(G::zero(), |acc, l| acc.add(&a[i][l].mul(&b[l][j])))).collect())
        .collect()
}

/// Dimension of the span of all words of length at most `max_len` in the
/// generators (the empty word is `I`).
pub fn oracle_word_span_dim(gens: &[Matrix], max_len: usize) -> usize {
    let n = gens[0].nrows();
    let gs: Vec<Vec<Vec<G>>> = gens.iter().map(to_g).collect();
    let id: Vec<Vec<G>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { G { re: BigRational::one(), im: BigRational::zero() } } else { G::zero() })
                .collect()
        })
        .collect();
    let mut layer = vec![id];
    let mut all = layer.clone();
    for _ in 0..max_len {
        let next: Vec<Vec<Vec<G>>> = layer.iter().flat_map(|w| gs.iter().map(move |g| gmul(w, g))).collect();
        all.extend(next.iter().cloned());
        layer = next;
    }
    oracle_rank(all.into_iter().map(|m| m.into_iter().flatten().collect()).collect())
}

// ---------------------------------------------------------------------------
// Laurent-polynomial oracle for lambda(t) g lambda(t)^-1.

/// Matrix with entries in `Q(i)[t, t^-1]`, keyed by exponent.
pub type Laurent = Vec<Vec<BTreeMap<i64, G>>>;

fn lmul(a: &Laurent, b: &Laurent) -> Laurent {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut out: BTreeMap<i64, G> = BTreeMap::new();
                    for l in 0..n {
                        for (ea, ca) in &a[i][l] {
                            for (eb, cb) in &b[l][j] {
                                let e = out.entry(ea + eb).or_insert_with(G::zero);
                                *e = e.add(&ca.mul(cb));
                            }
                        }
                    }
                    out.retain(|_, c| !c.is_zero());
                    out
                })
                .collect()
        })
        .collect()
}

fn constant(m: &Matrix) -> Laurent {
    to_g(m)
        .into_iter()
        .map(|row| row.into_iter().map(|c| if c.is_zero() { BTreeMap::new() } else { BTreeMap::from([(0, c)]) }).collect())
        .collect()
}

fn torus(weights: &[i64], sign: i64) -> Laurent {
    let n = weights.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BTreeMap::from([(sign * weights[i], G { re: BigRational::one(), im: BigRational::zero() })])
                    } else {
                        BTreeMap::new()
                    }
                })
                .collect()
        })
        .collect()
}

/// `lambda(t) g lambda(t)^-1` expanded as a Laurent matrix.
pub fn oracle_conjugate(lambda: &Cochar, g: &Matrix) -> Laurent {
    let h = constant(lambda.conjugator());
    let h_inv = constant(&lambda.conjugator().inverse().unwrap());
    let l = lmul(&lmul(&h, &torus(lambda.weights(), 1)), &h_inv);
    let l_inv = lmul(&lmul(&h, &torus(lambda.weights(), -1)), &h_inv);
    lmul(&lmul(&l, &constant(g)), &l_inv)
}

/// The limit at `t = 0` if no negative power survives.
pub fn oracle_limit(lambda: &Cochar, g: &Matrix) -> Option<Matrix> {
    let c = oracle_conjugate(lambda, g);
    if c.iter().flatten().any(|e| e.keys().any(|&k| k < 0)) {
        return None;
    }
    let field = g.field();
    Some(Matrix::from_fn(g.nrows(), g.ncols(), field, |i, j| match c[i][j].get(&0) {
        Some(v) => Scalar::gaussian(v.re.clone(), v.im.clone()).to_field(field).unwrap(),
        None => Scalar::zero(field),
    }))
}

/// Least exponent of `t` in `lambda(t) v lambda(t)^-1`.
pub fn oracle_mu(lambda: &Cochar, v: &Matrix) -> Option<i64> {
    oracle_conjugate(lambda, v).iter().flatten().filter_map(|e| e.keys().next().copied()).min()
}

/// Every word of length `1..=max_len` in `len` letters.
pub fn words(len: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer.iter().flat_map(|w| (0..len).map(move |g| [w.clone(), vec![g]].concat())).collect();
        out.extend(layer.iter().cloned());
    }
    out
}
