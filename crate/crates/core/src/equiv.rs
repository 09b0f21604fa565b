//! Diagonal equivalence, symmetrizability and Hermitian equivalence, each
//! returning certificates that are checked by recomputation before use.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::{Field, Scalar};
use crate::structure::is_irreducible;
use crate::symdet::{adjugate_table, det_poly};

/// `B = D A D⁻¹` (or `D Aᵀ D⁻¹` when `transposed`) with `D = diag(d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalCertificate {
    pub d: Vec<Scalar>,
    pub transposed: bool,
}

impl DiagonalCertificate {
    pub fn identity(n: usize) -> Self {
        DiagonalCertificate { d: vec![Scalar::one(); n], transposed: false }
    }

    /// `D A D⁻¹` or `D Aᵀ D⁻¹`.
    pub fn apply(&self, a: &SquareMatrix) -> Result<SquareMatrix> {
        let base = if self.transposed { a.transpose() } else { a.clone() };
        base.conjugate_by_diagonal(&self.d)
    }

    /// Exact entrywise check of the certified relation.
    pub fn verify(&self, a: &SquareMatrix, b: &SquareMatrix) -> bool {
        a.n() == b.n()
            && self.d.len() == a.n()
            && self.d.iter().all(|x| !x.is_zero())
            && self.apply(a).is_ok_and(|c| c.entries() == b.entries())
    }

    /// Certificate for the reverse relation. `B = D A D⁻¹` gives
    /// `A = D⁻¹ B D`, while `B = D Aᵀ D⁻¹` gives `A = D Bᵀ D⁻¹`.
    pub fn inverse(&self) -> Self {
        if self.transposed {
            return self.clone();
        }
        let d = self.d.iter().map(|x| x.inv().expect("nonzero")).collect();
        DiagonalCertificate { d, transposed: false }
    }
}

/// Connected components of the undirected graph with an edge `{i, j}`
/// whenever `a_ij` or `a_ji` is nonzero. Each is a BFS order (root first)
/// paired with the parent of every non-root vertex.
fn bfs_forest(a: &SquareMatrix) -> Vec<Vec<(usize, Option<usize>)>> {
    let n = a.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut comp = vec![(root, None)];
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if !seen[j] && j != i && (!a.get(i, j).is_zero() || !a.get(j, i).is_zero()) {
                    seen[j] = true;
                    comp.push((j, Some(i)));
                    queue.push_back(j);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Propagates `d` along the support of `a` so that `b_ij = d_i a_ij / d_j`
/// holds on tree edges. Returns `None` when some tree edge already fails.
fn propagate_diagonal(a: &SquareMatrix, b: &SquareMatrix) -> Option<Vec<Scalar>> {
    let mut d = vec![Scalar::one(); a.n()];
    for comp in bfs_forest(a) {
        for (j, parent) in comp {
            let Some(i) = parent else { continue };
            let (aij, bij) = (a.get(i, j), b.get(i, j));
            d[j] = if !aij.is_zero() {
                if bij.is_zero() {
                    return None;
                }
                &(&d[i] * aij) / bij
            } else {
                // b_ji = d_j a_ji / d_i
                let (aji, bji) = (a.get(j, i), b.get(j, i));
                if bji.is_zero() {
                    return None;
                }
                &(&d[i] * bji) / aji
            };
        }
    }
    Some(d)
}

/// Finds `D` with `B = D A D⁻¹` or `B = D Aᵀ D⁻¹`, trying the plain case
/// first. `None` means no such `D` exists.
pub fn diagonal_equivalence(a: &SquareMatrix, b: &SquareMatrix) -> Result<Option<DiagonalCertificate>> {
    if a.n() != b.n() {
        return Err(Error::Dimension(format!("{}x{} versus {}x{}", a.n(), a.n(), b.n(), b.n())));
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    for transposed in [false, true] {
        let base = if transposed { a.transpose() } else { a.clone() };
        if let Some(d) = propagate_diagonal(&base, b) {
            let cert = DiagonalCertificate { d, transposed };
            if cert.verify(a, b) {
                return Ok(Some(cert));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SymmetryVerdict {
    /// The diagonal conjugator exists over the matrix's own field.
    SymmetricEquivalentOverField,
    /// The cycle condition holds but some `√e_i` lies outside the field.
    SymmetricEquivalentOverQuadraticExtension,
    NotSymmetrizable,
}

impl SymmetryVerdict {
    pub fn is_equivalent(self) -> bool {
        self != SymmetryVerdict::NotSymmetrizable
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetrizabilityResult {
    pub verdict: SymmetryVerdict,
    /// Squared conjugator entries, one root per component normalized to 1.
    pub e: Option<Vec<Scalar>>,
    /// `D` with `D A D⁻¹` symmetric (or Hermitian), present iff `OverField`.
    pub witness: Option<DiagonalCertificate>,
    /// `D A D⁻¹`, present iff `witness` is.
    pub image: Option<SquareMatrix>,
}

impl SymmetrizabilityResult {
    fn not_symmetrizable() -> Self {
        SymmetrizabilityResult { verdict: SymmetryVerdict::NotSymmetrizable, e: None, witness: None, image: None }
    }
}

/// Solves `e_i a_ij = e_j partner(a_ji)` along a spanning forest of the
/// symmetrized support and verifies every constraint.
fn solve_cycle_condition(a: &SquareMatrix, partner: impl Fn(&Scalar) -> Scalar) -> Option<Vec<Scalar>> {
    let n = a.n();
    for i in 0..n {
        for j in 0..n {
            if a.get(i, j).is_zero() != a.get(j, i).is_zero() {
                return None;
            }
        }
    }
    let mut e = vec![Scalar::one(); n];
    for comp in bfs_forest(a) {
        for (j, parent) in comp {
            let Some(i) = parent else { continue };
            e[j] = &(&e[i] * a.get(i, j)) / &partner(a.get(j, i));
        }
    }
    let holds = (0..n).all(|i| (0..n).all(|j| &e[i] * a.get(i, j) == &e[j] * &partner(a.get(j, i))));
    holds.then_some(e)
}

/// Decides whether `A` is diagonally similar to a symmetric matrix, via the
/// cycle condition `e_i a_ij = e_j a_ji`.
pub fn symmetrizability(a: &SquareMatrix) -> SymmetrizabilityResult {
    let Some(e) = solve_cycle_condition(a, Scalar::clone) else {
        return SymmetrizabilityResult::not_symmetrizable();
    };
    let roots: Option<Vec<Scalar>> = match a.field() {
        Field::Rational => e.iter().map(Scalar::rational_sqrt).collect(),
        Field::GaussianRational => e.iter().map(Scalar::gaussian_sqrt).collect(),
    };
    finish(a, e, roots, SquareMatrix::is_symmetric)
}

/// Decides whether `A` is diagonally similar to a Hermitian matrix: the
/// diagonal is real and `e_i a_ij = e_j conj(a_ji)` has a positive real
/// solution `e`.
pub fn hermitian_equivalence(a: &SquareMatrix) -> SymmetrizabilityResult {
    let n = a.n();
    if (0..n).any(|i| !a.get(i, i).is_real()) {
        return SymmetrizabilityResult::not_symmetrizable();
    }
    let Some(e) = solve_cycle_condition(a, Scalar::conj) else {
        return SymmetrizabilityResult::not_symmetrizable();
    };
    if !e.iter().all(Scalar::is_positive_real) {
        return SymmetrizabilityResult::not_symmetrizable();
    }
    let roots: Option<Vec<Scalar>> = e.iter().map(Scalar::rational_sqrt).collect();
    finish(a, e, roots, SquareMatrix::is_hermitian)
}

fn finish(
    a: &SquareMatrix,
    e: Vec<Scalar>,
    roots: Option<Vec<Scalar>>,
    target: fn(&SquareMatrix) -> bool,
) -> SymmetrizabilityResult {
    let Some(d) = roots else {
        return SymmetrizabilityResult {
            verdict: SymmetryVerdict::SymmetricEquivalentOverQuadraticExtension,
            e: Some(e),
            witness: None,
            image: None,
        };
    };
    let witness = DiagonalCertificate { d, transposed: false };
    let image = witness.apply(a).expect("square roots of nonzero values");
    assert!(target(&image), "diagonal witness failed to symmetrize");
    SymmetrizabilityResult {
        verdict: SymmetryVerdict::SymmetricEquivalentOverField,
        e: Some(e),
        witness: Some(witness),
        image: Some(image),
    }
}

/// For symmetric irreducible `A` and `B` with the same principal minors,
/// returns `D = diag(1, d_2, .., d_n)` with `B = D A D⁻¹`, read off the first
/// rows of the two adjugate tables (`d_j = G_1j / H_1j`).
pub fn recover_diag_from_fiber(a: &SquareMatrix, b: &SquareMatrix) -> Result<DiagonalCertificate> {
    let n = a.n();
    if b.n() != n {
        return Err(Error::Dimension("matrices differ in size".into()));
    }
    if !a.is_symmetric() {
        return Err(Error::precondition("A is not symmetric"));
    }
    if !is_irreducible(a) {
        return Err(Error::precondition("A is reducible"));
    }
    if det_poly(a)?.fpoly != det_poly(b)?.fpoly {
        return Err(Error::precondition("A and B have different principal minors"));
    }
    let g = adjugate_table(a)?;
    let h = adjugate_table(b)?;
    for i in 0..n {
        for j in 0..n {
            if i != j && h.get(i, j).constant_ratio(g.get(i, j)).is_none() {
                return Err(Error::verification(format!("H_{}{} / G_{}{} is not constant", i + 1, j + 1, i + 1, j + 1)));
            }
        }
    }
    let mut d = vec![Scalar::one(); n];
    for (j, dj) in d.iter_mut().enumerate().skip(1) {
        let alpha = h.get(0, j).constant_ratio(g.get(0, j)).expect("checked above");
        *dj = alpha.inv().ok_or_else(|| Error::verification("zero adjugate ratio"))?;
    }
    let cert = DiagonalCertificate { d, transposed: false };
    if !cert.verify(a, b) {
        return Err(Error::verification("B differs from D A D⁻¹"));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[&str]]) -> SquareMatrix {
        SquareMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| s.parse().unwrap()).collect()).collect())
            .unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    fn cut_4x4() -> SquareMatrix {
        SquareMatrix::from_ints(&[[2, -1, 1, -2], [1, 1, -3, 6], [1, 2, 1, 1], [-1, -2, 2, -1]])
    }

    #[test]
    fn recovers_planted_conjugator() {
        let a = cut_4x4();
        let b = a.conjugate_by_diagonal(&ints(&[1, 2, 3, 4])).unwrap();
        let cert = diagonal_equivalence(&a, &b).unwrap().unwrap();
        assert!(!cert.transposed);
        assert_eq!(cert.d, ints(&[1, 2, 3, 4]));
        assert!(diagonal_equivalence(&b, &a).unwrap().unwrap().verify(&b, &a));
    }

    #[test]
    fn transpose_is_found() {
        let a = cut_4x4();
        let b = a.transpose().conjugate_by_diagonal(&ints(&[2, -1, 5, 1])).unwrap();
        let cert = diagonal_equivalence(&a, &b).unwrap().unwrap();
        assert!(cert.transposed);
        assert!(cert.verify(&a, &b));
    }

    #[test]
    fn different_diagonal_is_rejected() {
        let a = SquareMatrix::from_ints(&[[1, 2], [3, 4]]);
        let b = SquareMatrix::from_ints(&[[1, 2], [3, 5]]);
        assert_eq!(diagonal_equivalence(&a, &b).unwrap(), None);
        assert!(diagonal_equivalence(&a, &SquareMatrix::identity(3)).is_err());
    }

    #[test]
    fn symmetric_is_trivially_symmetrizable() {
        let a = SquareMatrix::from_ints(&[[1, 2, 0], [2, 0, 3], [0, 3, 1]]);
        let r = symmetrizability(&a);
        assert_eq!(r.verdict, SymmetryVerdict::SymmetricEquivalentOverField);
        assert_eq!(r.witness.unwrap().d, ints(&[1, 1, 1]));
    }

    #[test]
    fn two_by_two_symmetrization() {
        let r = symmetrizability(&SquareMatrix::from_ints(&[[0, 1], [4, 0]]));
        assert_eq!(r.verdict, SymmetryVerdict::SymmetricEquivalentOverField);
        assert_eq!(r.witness.unwrap().d, vec![Scalar::one(), Scalar::frac(1, 2)]);
        assert_eq!(r.image.unwrap(), SquareMatrix::from_ints(&[[0, 2], [2, 0]]));
    }

    #[test]
    fn non_square_ratio_needs_extension() {
        let r = symmetrizability(&SquareMatrix::from_ints(&[[0, 1], [2, 0]]));
        assert_eq!(r.verdict, SymmetryVerdict::SymmetricEquivalentOverQuadraticExtension);
        assert_eq!(r.e.unwrap(), vec![Scalar::one(), Scalar::frac(1, 2)]);
    }

    #[test]
    fn cut_4x4_is_not_symmetrizable() {
        assert_eq!(symmetrizability(&cut_4x4()).verdict, SymmetryVerdict::NotSymmetrizable);
        let pattern = SquareMatrix::from_ints(&[[0, 1], [0, 0]]);
        assert_eq!(symmetrizability(&pattern).verdict, SymmetryVerdict::NotSymmetrizable);
    }

    #[test]
    fn hermitian_cases() {
        let h = q(&[&["0", "i"], &["-i", "0"]]);
        let r = hermitian_equivalence(&h);
        assert_eq!(r.verdict, SymmetryVerdict::SymmetricEquivalentOverField);
        assert_eq!(r.witness.unwrap().d, ints(&[1, 1]));

        let a = q(&[&["1", "2i"], &["-1/2i", "1"]]);
        let r = hermitian_equivalence(&a);
        assert_eq!(r.verdict, SymmetryVerdict::SymmetricEquivalentOverField);
        assert_eq!(r.witness.unwrap().d, ints(&[1, 2]));
        assert_eq!(r.image.unwrap(), q(&[&["1", "i"], &["-i", "1"]]));

        let bad = q(&[&["i", "1"], &["1", "0"]]);
        assert_eq!(hermitian_equivalence(&bad).verdict, SymmetryVerdict::NotSymmetrizable);

        // e_2 = -1 would be needed
        let neg = SquareMatrix::from_ints(&[[0, 1], [-1, 0]]);
        assert_eq!(hermitian_equivalence(&neg).verdict, SymmetryVerdict::NotSymmetrizable);
    }

    #[test]
    fn recover_diagonal() {
        let a = SquareMatrix::from_ints(&[[1, 2, 3], [2, 0, -1], [3, -1, 2]]);
        let cert = recover_diag_from_fiber(&a, &a).unwrap();
        assert_eq!(cert.d, ints(&[1, 1, 1]));
        let b = a.conjugate_by_diagonal(&ints(&[3, 6, -9])).unwrap();
        let cert = recover_diag_from_fiber(&a, &b).unwrap();
        assert_eq!(cert.d, ints(&[1, 2, -3]));

        let reducible = SquareMatrix::from_ints(&[[1, 0], [0, 2]]);
        assert!(matches!(recover_diag_from_fiber(&reducible, &reducible), Err(Error::Precondition(_))));
    }
}
