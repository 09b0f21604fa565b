//! Symbolic objects attached to a matrix `A`: the principal minor vector,
//! the determinantal polynomial `f_A = det(diag(x) + A)`, the adjugate of
//! the pencil `diag(x) + A`, and the generalized Laplace expansion.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits;
use crate::matrix::{determinant, SquareMatrix};
use crate::mpoly::{affine_resultant, MPoly, Monomial};
use crate::scalar::Scalar;
use crate::subset::Subset;

/// `A_S` for every `S ⊆ [n]`, indexed by bitmask; `A_∅ = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PMVector {
    n: usize,
    values: Vec<Scalar>,
}

impl PMVector {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, s: Subset) -> &Scalar {
        &self.values[s.mask() as usize]
    }

    /// `(S, A_S)` in increasing mask order.
    pub fn iter(&self) -> impl Iterator<Item = (Subset, &Scalar)> {
        self.values.iter().enumerate().map(|(m, v)| (Subset::from_mask(m as u32), v))
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }
}

fn check_size(op: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::TooLarge { op, n, limit });
    }
    Ok(())
}

/// All `2^n` principal minors, each by fraction-free elimination.
pub fn principal_minors(a: &SquareMatrix) -> Result<PMVector> {
    let n = a.n();
    check_size("principal_minors", n, limits::MINORS)?;
    let values = (0..1u32 << n)
        .into_par_iter()
        .map(|m| {
            let idx = Subset::from_mask(m).to_vec();
            determinant(a.block(&idx, &idx))
        })
        .collect();
    Ok(PMVector { n, values })
}

/// A matrix together with its determinantal polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterminantalPencil {
    pub base: SquareMatrix,
    pub fpoly: MPoly,
}

/// `f_A = det(diag(x_1..x_n) + A)`: the coefficient of `∏_{k∈S} x_k` is the
/// principal minor `A_{S^c}`.
pub fn det_poly(a: &SquareMatrix) -> Result<DeterminantalPencil> {
    let n = a.n();
    check_size("det_poly", n, limits::MINORS)?;
    let pm = principal_minors(a)?;
    let full = Subset::full(n);
    let fpoly = MPoly::from_terms(
        n,
        full.subsets().map(|s| (Monomial::from_subset(s), pm.get(s.complement(n)).clone())),
    );
    Ok(DeterminantalPencil { base: a.clone(), fpoly })
}

/// `G = (diag(x) + A)^adj` as an `n × n` table of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjugateTable {
    n: usize,
    entries: Vec<MPoly>,
}

impl AdjugateTable {
    /// Builds a table from row-major entries, all in `n` variables.
    pub fn from_entries(n: usize, entries: Vec<MPoly>) -> Result<Self> {
        if entries.len() != n * n || entries.iter().any(|p| p.nvars() != n) {
            return Err(Error::Dimension("adjugate table must hold n*n polynomials in n variables".into()));
        }
        Ok(AdjugateTable { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &MPoly {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[MPoly] {
        &self.entries
    }

    pub fn all_nonzero(&self) -> bool {
        self.entries.iter().all(|p| !p.is_zero())
    }

    /// `G · (diag(x) + B) == f · I`, checked exactly.
    pub fn is_adjugate_of(&self, b: &SquareMatrix, f: &MPoly) -> bool {
        let n = self.n;
        if b.n() != n || f.nvars() != n {
            return false;
        }
        let pencil = |k: usize, j: usize| {
            let c = MPoly::constant(n, b.get(k, j).clone());
            if k == j {
                &c + &MPoly::var(n, k)
            } else {
                c
            }
        };
        (0..n).all(|i| {
            (0..n).all(|j| {
                let sum = (0..n).fold(MPoly::zero(n), |acc, k| &acc + &(self.get(i, k) * &pencil(k, j)));
                if i == j {
                    sum == *f
                } else {
                    sum.is_zero()
                }
            })
        })
    }
}

/// Entry `(i, j)` is the cofactor `(−1)^{i+j} det(M with row j and column i
/// removed)` for `M = diag(x) + A`, expanded over the subsets of diagonal
/// variables that survive the deletion.
pub fn adjugate_table(a: &SquareMatrix) -> Result<AdjugateTable> {
    let n = a.n();
    check_size("adjugate_table", n, limits::ADJUGATE)?;
    let entries = (0..n * n)
        .into_par_iter()
        .map(|k| adjugate_entry(a, k / n, k % n))
        .collect();
    Ok(AdjugateTable { n, entries })
}

fn adjugate_entry(a: &SquareMatrix, i: usize, j: usize) -> MPoly {
    let n = a.n();
    let full = Subset::full(n);
    let rows = full.remove(j);
    let cols = full.remove(i);
    let free = rows.intersection(cols);
    // A diagonal variable x_k sits at row position pos_R(k) and column
    // position pos_C(k) of the minor; their parities differ exactly when k
    // lies strictly between i and j.
    let (lo, hi) = (i.min(j), i.max(j));
    let between = Subset::from_indices(lo + 1..hi);
    let base_sign = (i + j) % 2 == 1;
    let terms = free.subsets().map(|s| {
        let r = rows.difference(s).to_vec();
        let c = cols.difference(s).to_vec();
        let det = determinant(a.block(&r, &c));
        let negative = base_sign ^ (s.intersection(between).len() % 2 == 1);
        (Monomial::from_subset(s), if negative { -det } else { det })
    });
    MPoly::from_terms(n, terms)
}

/// Recovers `B` with `H = (diag(x) + B)^adj` and `det(diag(x) + B) = f`.
///
/// Diagonal entries come from `f`; off-diagonal entries from the top
/// coefficient of `H_ij`, which equals `−b_ij`. The candidate is accepted
/// only after recomputing its adjugate and determinantal polynomial.
pub fn matrix_from_adjugate(h: &AdjugateTable, f: &MPoly) -> Result<SquareMatrix> {
    let n = h.n();
    if f.nvars() != n {
        return Err(Error::VarCountMismatch(f.nvars(), n));
    }
    let full = Subset::full(n);
    let mut rows = vec![vec![Scalar::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            rows[i][j] = if i == j {
                f.coefficient_of(full.remove(i))?
            } else {
                -h.get(i, j).coefficient_of(full.remove(i).remove(j))?
            };
        }
    }
    let b = SquareMatrix::from_rows(rows)?;
    if adjugate_table(&b)? != *h {
        return Err(Error::verification("table is not the adjugate of any pencil with this determinant"));
    }
    if det_poly(&b)?.fpoly != *f {
        return Err(Error::verification("recovered matrix has a different determinantal polynomial"));
    }
    Ok(b)
}

/// `det A = Σ_{|T|=|S|} (−1)^{ΣS+ΣT} A_{S,T} A_{S^c,T^c}`.
pub fn laplace_expand(a: &SquareMatrix, s: Subset) -> Result<Scalar> {
    let n = a.n();
    let full = Subset::full(n);
    if s.is_empty() || s == full || !s.is_subset_of(full) {
        return Err(Error::precondition("Laplace expansion needs 1 <= |S| <= n-1"));
    }
    let sc = s.complement(n);
    let (srows, scrows) = (s.to_vec(), sc.to_vec());
    let total = full
        .subsets_of_size(s.len())
        .map(|t| {
            let tc = t.complement(n);
            let term = determinant(a.block(&srows, &t.to_vec())) * determinant(a.block(&scrows, &tc.to_vec()));
            if (s.one_based_sum() + t.one_based_sum()) % 2 == 1 {
                -term
            } else {
                term
            }
        })
        .sum();
    Ok(total)
}

/// Sign of the permutation sending sorted `S` to sorted `T` and sorted
/// `S^c` to sorted `T^c`, computed by counting inversions and by the closed
/// form `(−1)^{ΣS+ΣT}`; the two must agree.
pub fn two_line_sign(s: Subset, t: Subset, n: usize) -> Result<i8> {
    if s.len() != t.len() {
        return Err(Error::Dimension("subsets must have equal size".into()));
    }
    let full = Subset::full(n);
    if !s.is_subset_of(full) || !t.is_subset_of(full) {
        return Err(Error::Dimension(format!("subsets must lie in 1..={n}")));
    }
    let mut image = vec![0usize; n];
    for (x, y) in s.iter().chain(s.complement(n).iter()).zip(t.iter().chain(t.complement(n).iter())) {
        image[x] = y;
    }
    let inversions = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| image[a] > image[b]).count();
    let by_count: i8 = if inversions.is_multiple_of(2) { 1 } else { -1 };
    let by_formula: i8 = if (s.one_based_sum() + t.one_based_sum()).is_multiple_of(2) { 1 } else { -1 };
    if by_count != by_formula {
        return Err(Error::verification(format!("sign mismatch for S={s}, T={t}")));
    }
    Ok(by_formula)
}

/// Identities checked by [`verify_identities`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Identity {
    /// `Δ_ij(f) = G_ij · G_ji`
    Dodgson,
    /// `res_{x_k}(G_ij, f) = G_ik · G_kj`
    Resultant,
    /// Laplace expansion along `S` equals the determinant.
    Laplace,
    /// `G · (diag(x) + A) = f · I`
    Adjugate,
}

impl Identity {
    pub const ALL: [Identity; 4] = [Identity::Dodgson, Identity::Resultant, Identity::Laplace, Identity::Adjugate];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Dodgson => "dodgson",
            Identity::Resultant => "resultant",
            Identity::Laplace => "laplace",
            Identity::Adjugate => "adjugate",
        }
    }

    pub fn from_name(name: &str) -> Option<Identity> {
        Identity::ALL.into_iter().find(|i| i.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: Identity,
    /// 1-based indices (`[i, j]`, `[i, j, k]`, or the Laplace set `S`).
    pub indices: Vec<usize>,
    pub passed: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn count(&self, identity: Identity) -> usize {
        self.checks.iter().filter(|c| c.identity == identity).count()
    }
}

/// Runs every identity on `A`.
pub fn verify_identities(a: &SquareMatrix) -> Result<IdentityReport> {
    verify_selected(a, &Identity::ALL)
}

/// Runs the chosen identities. Laplace is checked along every `S` with
/// `|S| <= 2` and every prefix `{1..k}`.
pub fn verify_selected(a: &SquareMatrix, which: &[Identity]) -> Result<IdentityReport> {
    let n = a.n();
    check_size("verify_identities", n, limits::IDENTITIES)?;
    let f = det_poly(a)?.fpoly;
    let g = adjugate_table(a)?;
    let mut report = IdentityReport::default();
    for &identity in which {
        match identity {
            Identity::Dodgson => {
                for i in 0..n {
                    for j in (0..n).filter(|&j| j != i) {
                        let passed = f.rayleigh_difference(i, j)? == g.get(i, j) * g.get(j, i);
                        report.checks.push(IdentityCheck { identity, indices: vec![i + 1, j + 1], passed });
                    }
                }
            }
            Identity::Resultant => {
                for i in 0..n {
                    for j in (0..n).filter(|&j| j != i) {
                        for k in (0..n).filter(|&k| k != i && k != j) {
                            let lhs = affine_resultant(g.get(i, j), &f, k)?;
                            let passed = lhs == g.get(i, k) * g.get(k, j);
                            report.checks.push(IdentityCheck { identity, indices: vec![i + 1, j + 1, k + 1], passed });
                        }
                    }
                }
            }
            Identity::Laplace => {
                if n < 2 {
                    continue;
                }
                let det = a.det();
                let full = Subset::full(n);
                let mut sets: Vec<Subset> = full.subsets().filter(|s| (1..=2).contains(&s.len()) && s.len() < n).collect();
                sets.extend((3..n).map(Subset::full));
                for s in sets {
                    let passed = laplace_expand(a, s)? == det;
                    report.checks.push(IdentityCheck { identity, indices: s.to_one_based(), passed });
                }
            }
            Identity::Adjugate => {
                let passed = g.is_adjugate_of(a, &f);
                report.checks.push(IdentityCheck { identity, indices: vec![], passed });
            }
        }
    }
    Ok(report)
}
