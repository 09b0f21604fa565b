//! Seeded random generators for test inputs with planted structure.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::equiv::symmetrizability;
use crate::matrix::SquareMatrix;
use crate::scalar::{Field, Scalar};
use crate::structure::is_irreducible;
use crate::subset::Subset;

/// The generator behind every randomized suite.
pub type Gen = ChaCha8Rng;

pub fn seeded(seed: u64) -> Gen {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer (or Gaussian integer) with parts in `-range..=range`.
pub fn scalar<R: Rng + ?Sized>(rng: &mut R, field: Field, range: i64) -> Scalar {
    let re = rng.random_range(-range..=range);
    match field {
        Field::Rational => Scalar::from_int(re),
        Field::GaussianRational => Scalar::gaussian(re, rng.random_range(-range..=range)),
    }
}

pub fn nonzero_scalar<R: Rng + ?Sized>(rng: &mut R, field: Field, range: i64) -> Scalar {
    loop {
        let s = scalar(rng, field, range);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn nonzero_vec<R: Rng + ?Sized>(rng: &mut R, n: usize, field: Field, range: i64) -> Vec<Scalar> {
    (0..n).map(|_| nonzero_scalar(rng, field, range)).collect()
}

fn square<R: Rng + ?Sized>(rng: &mut R, n: usize, field: Field, mut entry: impl FnMut(&mut R) -> Scalar) -> SquareMatrix {
    let entries = (0..n * n).map(|_| entry(rng)).collect();
    SquareMatrix::new(n, field, entries).expect("generated entries fit the field")
}

pub fn matrix<R: Rng + ?Sized>(rng: &mut R, n: usize, field: Field, range: i64) -> SquareMatrix {
    square(rng, n, field, |r| scalar(r, field, range))
}

/// Every entry nonzero.
pub fn full_support<R: Rng + ?Sized>(rng: &mut R, n: usize, field: Field, range: i64) -> SquareMatrix {
    square(rng, n, field, |r| nonzero_scalar(r, field, range))
}

pub fn irreducible<R: Rng + ?Sized>(rng: &mut R, n: usize, field: Field, range: i64) -> SquareMatrix {
    loop {
        let a = matrix(rng, n, field, range);
        if is_irreducible(&a) {
            return a;
        }
    }
}

pub fn symmetric<R: Rng + ?Sized>(rng: &mut R, n: usize, range: i64) -> SquareMatrix {
    let mut a = SquareMatrix::zeros(n, Field::Rational);
    for i in 0..n {
        for j in i..n {
            let v = scalar(rng, Field::Rational, range);
            a.set(i, j, v.clone());
            a.set(j, i, v);
        }
    }
    a
}

pub fn symmetric_irreducible<R: Rng + ?Sized>(rng: &mut R, n: usize, range: i64) -> SquareMatrix {
    loop {
        let a = symmetric(rng, n, range);
        if is_irreducible(&a) {
            return a;
        }
    }
}

/// Real diagonal, Gaussian-integer off-diagonal entries with `a_ji = conj(a_ij)`.
pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize, range: i64) -> SquareMatrix {
    let mut a = SquareMatrix::zeros(n, Field::GaussianRational);
    for i in 0..n {
        a.set(i, i, scalar(rng, Field::Rational, range));
        for j in i + 1..n {
            let v = scalar(rng, Field::GaussianRational, range);
            a.set(j, i, v.conj());
            a.set(i, j, v);
        }
    }
    a
}

pub fn permutation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Block upper triangular matrix with irreducible diagonal blocks of the
/// given sizes and random upper fill, hidden by a random permutation.
pub fn planted_block_triangular<R: Rng + ?Sized>(rng: &mut R, sizes: &[usize], field: Field, range: i64) -> SquareMatrix {
    let n: usize = sizes.iter().sum();
    let mut a = SquareMatrix::zeros(n, field);
    let mut start = 0;
    for &s in sizes {
        let block = irreducible(rng, s, field, range);
        for i in 0..s {
            for j in 0..s {
                a.set(start + i, start + j, block.get(i, j).clone());
            }
            for j in start + s..n {
                a.set(start + i, j, scalar(rng, field, range));
            }
        }
        start += s;
    }
    let perm = permutation(rng, n);
    a.unpermuted(&perm)
}

/// Irreducible, non-symmetrizable matrix over `Q` with a planted cut:
/// dense diagonal blocks and nowhere-zero rank-one off-diagonal blocks,
/// then a random relabelling. Returns the matrix and the cut.
pub fn planted_cut<R: Rng + ?Sized>(rng: &mut R, n: usize, range: i64) -> (SquareMatrix, Subset) {
    assert!(n >= 4);
    let f = Field::Rational;
    loop {
        let k = rng.random_range(2..=n - 2);
        let (u, v) = (nonzero_vec(rng, k, f, range), nonzero_vec(rng, n - k, f, range));
        let (w, z) = (nonzero_vec(rng, n - k, f, range), nonzero_vec(rng, k, f, range));
        let mut a = SquareMatrix::zeros(n, f);
        for i in 0..n {
            for j in 0..n {
                let e = match (i < k, j < k) {
                    (true, true) | (false, false) => nonzero_scalar(rng, f, range),
                    (true, false) => &u[i] * &v[j - k],
                    (false, true) => &w[i - k] * &z[j],
                };
                a.set(i, j, e);
            }
        }
        if symmetrizability(&a).verdict.is_equivalent() {
            continue;
        }
        let perm = permutation(rng, n);
        // position a of the planted matrix holds original index perm[a]
        let b = a.unpermuted(&perm);
        let x = Subset::from_indices((0..k).map(|p| perm[p]));
        return (b, x);
    }
}
