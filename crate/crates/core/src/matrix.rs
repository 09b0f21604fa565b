//! Dense square matrices over [`Scalar`], with exact determinant and rank.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};
use crate::subset::Subset;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SquareMatrix {
    n: usize,
    field: Field,
    entries: Vec<Scalar>,
}

impl SquareMatrix {
    /// Row-major constructor. Fails if the entry count is wrong or an entry
    /// lies outside the declared field.
    pub fn new(n: usize, field: Field, entries: Vec<Scalar>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Dimension("matrix size must be at least 1".into()));
        }
        if entries.len() != n * n {
            return Err(Error::Dimension(format!("expected {} entries, got {}", n * n, entries.len())));
        }
        if field == Field::Rational && entries.iter().any(|e| !e.is_real()) {
            return Err(Error::FieldMismatch);
        }
        Ok(SquareMatrix { n, field, entries })
    }

    /// Builds from rows, declaring the smallest field containing every entry.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("rows must all have length n".into()));
        }
        let entries: Vec<Scalar> = rows.into_iter().flatten().collect();
        let field = entries.iter().fold(Field::Rational, |f, e| f.join(e.field()));
        SquareMatrix::new(n, field, entries)
    }

    /// Integer matrix over `Q`; panics on ragged input.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| Scalar::from_int(v)).collect())
            .collect();
        SquareMatrix::from_rows(rows).expect("square integer matrix")
    }

    pub fn zeros(n: usize, field: Field) -> Self {
        SquareMatrix { n, field, entries: vec![Scalar::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SquareMatrix::zeros(n, Field::Rational);
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn diagonal(d: &[Scalar]) -> Self {
        let n = d.len();
        let field = d.iter().fold(Field::Rational, |f, e| f.join(e.field()));
        let mut m = SquareMatrix::zeros(n, field);
        for (i, v) in d.iter().enumerate() {
            m.entries[i * n + i] = v.clone();
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Same entries, declared over `field` (must contain every entry).
    pub fn with_field(mut self, field: Field) -> Result<Self> {
        if field == Field::Rational && self.entries.iter().any(|e| !e.is_real()) {
            return Err(Error::FieldMismatch);
        }
        self.field = field;
        Ok(self)
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.n + j]
    }

    /// Overwrites an entry, widening the declared field when needed.
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.field = self.field.join(v.field());
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.entries.chunks(self.n).map(<[Scalar]>::to_vec).collect()
    }

    pub fn transpose(&self) -> SquareMatrix {
        self.map_indexed(|i, j| self.get(j, i).clone())
    }

    pub fn conj_transpose(&self) -> SquareMatrix {
        self.map_indexed(|i, j| self.get(j, i).conj())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.conj_transpose()
    }

    fn map_indexed(&self, f: impl Fn(usize, usize) -> Scalar) -> SquareMatrix {
        let n = self.n;
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        SquareMatrix { n, field: self.field, entries }
    }

    pub fn mul(&self, other: &SquareMatrix) -> Result<SquareMatrix> {
        if self.n != other.n {
            return Err(Error::Dimension("matrix sizes differ".into()));
        }
        let n = self.n;
        let mut out = SquareMatrix::zeros(n, self.field.join(other.field));
        for i in 0..n {
            for j in 0..n {
                out.entries[i * n + j] = (0..n).map(|k| self.get(i, k) * other.get(k, j)).sum();
            }
        }
        Ok(out)
    }

    /// `D · A · D⁻¹` for `D = diag(d)`; every `d_i` must be nonzero.
    pub fn conjugate_by_diagonal(&self, d: &[Scalar]) -> Result<SquareMatrix> {
        if d.len() != self.n {
            return Err(Error::Dimension("diagonal length differs from matrix size".into()));
        }
        let inv: Vec<Scalar> = d.iter().map(|x| x.inv().ok_or(Error::DivisionByZero)).collect::<Result<_>>()?;
        let field = d.iter().fold(self.field, |f, e| f.join(e.field()));
        let mut out = self.map_indexed(|i, j| {
            let v = self.get(i, j);
            if v.is_zero() || i == j {
                v.clone()
            } else {
                &(&d[i] * v) * &inv[j]
            }
        });
        out.field = field;
        Ok(out)
    }

    /// `P A P⁻¹` with `result[a][b] = self[perm[a]][perm[b]]`.
    pub fn permuted(&self, perm: &[usize]) -> SquareMatrix {
        assert_eq!(perm.len(), self.n);
        self.map_indexed(|a, b| self.get(perm[a], perm[b]).clone())
    }

    /// Inverse relabelling of [`SquareMatrix::permuted`].
    pub fn unpermuted(&self, perm: &[usize]) -> SquareMatrix {
        let mut inv = vec![0; perm.len()];
        for (a, &p) in perm.iter().enumerate() {
            inv[p] = a;
        }
        self.permuted(&inv)
    }

    /// `A[rows, cols]` as plain rows.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<Scalar>> {
        rows.iter().map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect()).collect()
    }

    pub fn principal_submatrix(&self, s: Subset) -> SquareMatrix {
        let idx = s.to_vec();
        let n = idx.len();
        let entries = self.block(&idx, &idx).into_iter().flatten().collect();
        SquareMatrix { n, field: self.field, entries }
    }

    pub fn det(&self) -> Scalar {
        determinant(self.rows())
    }

    /// Number of nonzero off-diagonal entries.
    pub fn off_diagonal_support(&self) -> usize {
        (0..self.n).flat_map(|i| (0..self.n).map(move |j| (i, j))).filter(|&(i, j)| i != j && !self.get(i, j).is_zero()).count()
    }
}

/// Determinant by Bareiss fraction-free elimination. The empty matrix has
/// determinant one.
pub fn determinant(mut a: Vec<Vec<Scalar>>) -> Scalar {
    let n = a.len();
    let mut sign_flip = false;
    let mut prev = Scalar::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Scalar::zero();
            };
            a.swap(k, p);
            sign_flip = !sign_flip;
        }
        let prev_inv = prev.inv().expect("nonzero pivot");
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = &v * &prev_inv;
            }
        }
        prev = a[k][k].clone();
    }
    let d = if n == 0 { Scalar::one() } else { a[n - 1][n - 1].clone() };
    if sign_flip {
        -d
    } else {
        d
    }
}

/// Rank of a rectangular matrix by exact Gaussian elimination.
pub fn rank(mut a: Vec<Vec<Scalar>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot_inv = a[r][c].inv().expect("nonzero pivot");
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let factor = &a[i][c] * &pivot_inv;
            for j in c..cols {
                let v = &factor * &a[r][j];
                a[i][j] -= &v;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

impl fmt::Display for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for row in cells.chunks(self.n) {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SquareMatrix({}, ", self.field.tag())?;
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}])", rows.join(", "))
    }
}
