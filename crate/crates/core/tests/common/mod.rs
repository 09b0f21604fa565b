//! Independent oracles shared by the integration tests. Nothing here calls
//! the library's determinant, adjugate or fiber code.
#![allow(dead_code)]

use pmfiber::{MPoly, Scalar, SquareMatrix, Subset};

pub fn s(v: i64) -> Scalar {
    Scalar::from_int(v)
}

pub fn cut_4x4() -> SquareMatrix {
    SquareMatrix::from_ints(&[[2, -1, 1, -2], [1, 1, -3, 6], [1, 2, 1, 1], [-1, -2, 2, -1]])
}

pub fn witness_4x4() -> SquareMatrix {
    SquareMatrix::from_ints(&[[2, 1, 1, -2], [-1, 1, 2, -4], [1, -3, 1, 1], [-1, 3, 2, -1]])
}

pub fn reducible_6x6() -> SquareMatrix {
    SquareMatrix::from_ints(&[
        [1, -3, 3, -2, -1, 2],
        [0, -3, 5, 1, 0, 2],
        [0, 0, 4, 0, 0, -4],
        [0, 1, 2, 1, 0, 5],
        [1, 0, -1, 6, 2, 4],
        [0, 0, 2, 0, 0, 3],
    ])
}

pub const BLOCK_6X6_FACTORS: [&str; 3] =
    ["x1*x5 + 2*x1 + x5 + 3", "x2*x4 + x2 - 3*x4 - 4", "x3*x6 + 3*x3 + 4*x6 + 20"];

/// Irreducible, not symmetrizable, cut `{1,3}`, yet a single-class fiber.
pub fn exceptional_4x4() -> SquareMatrix {
    SquareMatrix::from_ints(&[[3, -2, -1, 3], [-5, 5, -5, 3], [-3, -6, -5, 9], [20, -4, 20, -4]])
}

pub fn poly(n: usize, text: &str) -> MPoly {
    MPoly::parse(n, text).unwrap()
}

/// Sign of a permutation by counting inversions.
pub fn inversion_sign(p: &[usize]) -> i64 {
    let mut inv = 0u32;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Leibniz formula.
pub fn leibniz_det(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    permutations(n)
        .into_iter()
        .map(|p| {
            let prod: Scalar = (0..n).map(|i| m[i][p[i]].clone()).product();
            &prod * &s(inversion_sign(&p))
        })
        .sum()
}

/// Textbook Gaussian elimination with field division and row swaps.
pub fn gauss_det(mut m: Vec<Vec<Scalar>>) -> Scalar {
    let n = m.len();
    let mut det = Scalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Scalar::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det = &det * &m[c][c];
        let inv = m[c][c].inv().unwrap();
        for r in c + 1..n {
            let factor = &m[r][c] * &inv;
            for k in c..n {
                let t = &factor * &m[c][k];
                m[r][k] = &m[r][k] - &t;
            }
        }
    }
    det
}

pub fn sub_rows(a: &SquareMatrix, rows: &[usize], cols: &[usize]) -> Vec<Vec<Scalar>> {
    rows.iter().map(|&i| cols.iter().map(|&j| a.get(i, j).clone()).collect()).collect()
}

/// Principal minors indexed by bitmask, via `gauss_det`.
pub fn brute_minors(a: &SquareMatrix) -> Vec<Scalar> {
    let n = a.n();
    (0..1u32 << n)
        .map(|m| {
            let idx: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
            gauss_det(sub_rows(a, &idx, &idx))
        })
        .collect()
}

/// `diag(x) + A` as a polynomial matrix.
pub fn pencil(a: &SquareMatrix) -> Vec<Vec<MPoly>> {
    let n = a.n();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = MPoly::constant(n, a.get(i, j).clone());
                    if i == j {
                        &c + &MPoly::var(n, i)
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect()
}

/// Leibniz formula over polynomials.
pub fn poly_det(m: &[Vec<MPoly>], nvars: usize) -> MPoly {
    let n = m.len();
    let mut total = MPoly::zero(nvars);
    for p in permutations(n) {
        let mut term = MPoly::constant(nvars, s(inversion_sign(&p)));
        for i in 0..n {
            term = &term * &m[i][p[i]];
        }
        total = &total + &term;
    }
    total
}

/// `det(diag(x) + A)` by symbolic Leibniz expansion.
pub fn symbolic_det_poly(a: &SquareMatrix) -> MPoly {
    poly_det(&pencil(a), a.n())
}

/// Adjugate entry `(i, j)`: the cofactor `C_ji`, by symbolic Leibniz.
pub fn symbolic_adjugate(a: &SquareMatrix) -> Vec<Vec<MPoly>> {
    let n = a.n();
    let m = pencil(a);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let minor: Vec<Vec<MPoly>> = (0..n)
                        .filter(|&r| r != j)
                        .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c].clone()).collect())
                        .collect();
                    let d = if n == 1 { MPoly::one(n) } else { poly_det(&minor, n) };
                    if (i + j) % 2 == 0 {
                        d
                    } else {
                        -d
                    }
                })
                .collect()
        })
        .collect()
}

/// Multiplies polynomial matrices.
pub fn poly_matmul(x: &[Vec<MPoly>], y: &[Vec<MPoly>], nvars: usize) -> Vec<Vec<MPoly>> {
    let n = x.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(MPoly::zero(nvars), |acc, k| &acc + &(&x[i][k] * &y[k][j])))
                .collect()
        })
        .collect()
}

/// Every fiber member of a full-support `A` whose first row equals `A`'s,
/// found by trying both roots of each quadratic `{1, j, k}` constraint and
/// comparing all principal minors. No pruning.
pub fn fiber_by_brute_force(a: &SquareMatrix) -> Vec<SquareMatrix> {
    let n = a.n();
    let target = brute_minors(a);
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (j + 1..n).map(move |k| (j, k))).collect();
    let roots: Vec<[Scalar; 2]> = pairs
        .iter()
        .map(|&(j, k)| {
            // b_jk·a_1j·a_k1 + (p / b_jk)·a_1k·a_j1 = const, one root is a_jk
            let p = a.get(j, k) * a.get(k, j);
            let num = &(&p * a.get(0, k)) * a.get(j, 0);
            let den = &(a.get(0, j) * a.get(k, 0)) * a.get(j, k);
            [a.get(j, k).clone(), &num / &den]
        })
        .collect();
    let mut out: Vec<SquareMatrix> = Vec::new();
    for mask in 0..1u32 << pairs.len() {
        let mut b = a.clone();
        for (t, &(j, k)) in pairs.iter().enumerate() {
            let v = roots[t][(mask >> t & 1) as usize].clone();
            let w = &(a.get(j, k) * a.get(k, j)) / &v;
            b.set(j, k, v);
            b.set(k, j, w);
        }
        if brute_minors(&b) == target && !out.contains(&b) {
            out.push(b);
        }
    }
    out
}

/// `D·Aᵀ·D⁻¹` rescaled so its first row equals `A`'s.
pub fn normalized_transpose(a: &SquareMatrix) -> SquareMatrix {
    let n = a.n();
    let mut b = a.transpose();
    for i in 0..n {
        for j in 0..n {
            // d_j / d_1 = a_j1 / a_1j
            let di = if i == 0 { Scalar::one() } else { a.get(i, 0) / a.get(0, i) };
            let dj = if j == 0 { Scalar::one() } else { a.get(j, 0) / a.get(0, j) };
            let v = &(&di * b.get(i, j)) / &dj;
            b.set(i, j, v);
        }
    }
    b
}

/// Whether every full-support fiber member is `A` or its rescaled transpose.
pub fn fiber_is_single_class(a: &SquareMatrix) -> bool {
    let t = normalized_transpose(a);
    fiber_by_brute_force(a).iter().all(|b| b == a || *b == t)
}

pub fn subset(one_based: &[usize]) -> Subset {
    Subset::from_indices(one_based.iter().map(|i| i - 1))
}
