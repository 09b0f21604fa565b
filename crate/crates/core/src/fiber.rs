//! Fibers of the principal minor map: cut detection, the single-point
//! classifier and explicit constructions of inequivalent fiber points.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::equiv::{diagonal_equivalence, hermitian_equivalence, symmetrizability, SymmetrizabilityResult, SymmetryVerdict};
use crate::error::{Error, Result};
use crate::limits;
use crate::matrix::{rank, SquareMatrix};
use crate::mpoly::MPoly;
use crate::scalar::{Field, Scalar};
use crate::structure::{fiber_shape, frobenius_form, is_irreducible, FiberShape};
use crate::subset::Subset;
use crate::symdet::{adjugate_table, det_poly, matrix_from_adjugate, principal_minors, AdjugateTable, PMVector};

/// A set `X`, `2 <= |X| <= n-2`, with `rank A[X,Xᶜ] <= 1` and
/// `rank A[Xᶜ,X] <= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutCertificate {
    pub x: Subset,
    pub rank_x_xc: usize,
    pub rank_xc_x: usize,
}

/// Off-diagonal block ranks of `A` across `X`.
pub fn cut_ranks(a: &SquareMatrix, x: Subset) -> (usize, usize) {
    let xs = x.to_vec();
    let xc = x.complement(a.n()).to_vec();
    (rank(a.block(&xs, &xc)), rank(a.block(&xc, &xs)))
}

/// Every cut, each reported once by the side containing index 1, sorted
/// lexicographically.
pub fn find_cuts(a: &SquareMatrix) -> Result<Vec<CutCertificate>> {
    let n = a.n();
    if n > limits::MINORS {
        return Err(Error::TooLarge { op: "find_cuts", n, limit: limits::MINORS });
    }
    if n < 4 {
        return Ok(Vec::new());
    }
    let rest = Subset::full(n).remove(0);
    let candidates: Vec<Subset> =
        rest.subsets().map(|s| s.insert(0)).filter(|x| (2..=n - 2).contains(&x.len())).collect();
    let mut cuts: Vec<CutCertificate> = candidates
        .into_par_iter()
        .filter_map(|x| {
            let (r1, r2) = cut_ranks(a, x);
            (r1 <= 1 && r2 <= 1).then_some(CutCertificate { x, rank_x_xc: r1, rank_xc_x: r2 })
        })
        .collect();
    cuts.sort_by_key(|c| c.x.lex_key());
    Ok(cuts)
}

/// Rank-one factorization of the off-diagonal adjugate blocks across a cut:
/// `G_ij = (-1)^i a_i b_j` for `i ∈ X, j ∈ Xᶜ` and `G_ij = (-1)^j c_i d_j`
/// for `i ∈ Xᶜ, j ∈ X`, with 1-based signs. `a`, `d` live in the
/// `X`-variables and `b`, `c` in the `Xᶜ`-variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSplit {
    pub x: Subset,
    /// Keyed by zero-based index in `X`.
    pub a: BTreeMap<usize, MPoly>,
    /// Keyed by zero-based index in `Xᶜ`.
    pub b: BTreeMap<usize, MPoly>,
    /// Keyed by zero-based index in `Xᶜ`.
    pub c: BTreeMap<usize, MPoly>,
    /// Keyed by zero-based index in `X`.
    pub d: BTreeMap<usize, MPoly>,
}

fn sign(i: usize) -> Scalar {
    // (-1)^(i+1) for zero-based i, i.e. (-1)^i in 1-based labels
    if i.is_multiple_of(2) {
        Scalar::from_int(-1)
    } else {
        Scalar::one()
    }
}

impl FactorSplit {
    /// The product the split predicts for `G_ij`, `i` and `j` on opposite
    /// sides of the cut.
    pub fn product(&self, i: usize, j: usize) -> MPoly {
        if self.x.contains(i) {
            (&self.a[&i] * &self.b[&j]).scale(&sign(i))
        } else {
            (&self.c[&i] * &self.d[&j]).scale(&sign(j))
        }
    }

    pub fn reproduces(&self, g: &AdjugateTable) -> bool {
        let n = g.n();
        let xc = self.x.complement(n);
        self.x.iter().all(|i| xc.iter().all(|j| self.product(i, j) == *g.get(i, j) && self.product(j, i) == *g.get(j, i)))
    }
}

/// Deterministic generic points `(start + step·k)_k` for the `X`-variables.
const GENERIC_POINTS: [(i64, i64); 8] = [(1, 1), (2, 3), (-1, -2), (3, 5), (5, -7), (-4, 11), (7, 13), (11, -17)];

fn at_point(p: &MPoly, vars: &[usize], (start, step): (i64, i64)) -> MPoly {
    let assignment: Vec<(usize, Scalar)> =
        vars.iter().enumerate().map(|(k, &v)| (v, Scalar::from_int(start + step * k as i64))).collect();
    p.substitute(&assignment)
}

/// Splits the off-diagonal blocks of `G` across the cut `X`. Constants are
/// absorbed into `b` and `c`.
pub fn rank_one_split(g: &AdjugateTable, x: Subset) -> Result<FactorSplit> {
    let n = g.n();
    let xc = x.complement(n);
    if x.is_empty() || xc.is_empty() {
        return Err(Error::precondition("cut side is empty"));
    }
    let xs = x.to_vec();
    let xcs = xc.to_vec();
    let (i0, j0) = (xs[0], xcs[0]);

    let pick = |row_or_col: &dyn Fn(usize) -> MPoly| -> Result<BTreeMap<usize, MPoly>> {
        for point in GENERIC_POINTS {
            let vals: BTreeMap<usize, MPoly> = xcs.iter().map(|&j| (j, at_point(&row_or_col(j), &xs, point))).collect();
            if vals.values().all(|p| !p.is_zero()) {
                return Ok(vals);
            }
        }
        Err(Error::verification("every generic point annihilates a factor"))
    };

    let b = pick(&|j| g.get(i0, j).clone())?;
    let c = pick(&|i| g.get(i, i0).clone())?;
    let divide = |p: &MPoly, q: &MPoly| {
        p.exact_divide(q).map_err(|_| Error::verification(format!("{} is not a cut: exact division failed", x)))
    };
    let mut a = BTreeMap::new();
    let mut d = BTreeMap::new();
    for &i in &xs {
        a.insert(i, divide(g.get(i, j0), &b[&j0])?.scale(&sign(i)));
        d.insert(i, divide(g.get(j0, i), &c[&j0])?.scale(&sign(i)));
    }
    let split = FactorSplit { x, a, b, c, d };
    if !split.reproduces(g) {
        return Err(Error::verification(format!("{} is not a cut: rank-one products disagree with G", x)));
    }
    Ok(split)
}

/// A second fiber point produced by swapping factors across a cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwapWitness {
    pub matrix: SquareMatrix,
    /// The second swap (exchanging `a` and `d`, transposing the `X` block)
    /// was needed because the first one was diagonally equivalent to `A`.
    pub fallback: bool,
}

/// The factor-swap construction for an irreducible, non-symmetrizable
/// matrix with a cut `X`.
///
/// Fails with a verification error when both swaps are diagonally
/// equivalent to `A`; this happens for some inputs whose fiber really is a
/// single class (see [`classify_fiber`]).
pub fn cut_swap_witness(a: &SquareMatrix, x: Subset) -> Result<SwapWitness> {
    swap_candidates(a, x)?
        .ok_or_else(|| Error::verification(format!("both factor swaps across {x} are diagonally equivalent to the input")))
}

fn swap_candidates(a: &SquareMatrix, x: Subset) -> Result<Option<SwapWitness>> {
    let n = a.n();
    if n < 4 {
        return Err(Error::precondition("cuts need n >= 4"));
    }
    if n > limits::ADJUGATE {
        return Err(Error::TooLarge { op: "cut_swap_witness", n, limit: limits::ADJUGATE });
    }
    if !x.is_subset_of(Subset::full(n)) || !(2..=n - 2).contains(&x.len()) {
        return Err(Error::precondition(format!("{x} has the wrong size for a cut")));
    }
    let (r1, r2) = cut_ranks(a, x);
    if r1 > 1 || r2 > 1 {
        return Err(Error::precondition(format!("{x} is not a cut")));
    }
    if !is_irreducible(a) {
        return Err(Error::precondition("matrix is reducible"));
    }
    if symmetrizability(a).verdict.is_equivalent() {
        return Err(Error::precondition("matrix is diagonally similar to a symmetric matrix"));
    }

    let perm: Vec<usize> = x.iter().chain(x.complement(n).iter()).collect();
    let pa = a.permuted(&perm);
    let k = x.len();
    let g = adjugate_table(&pa)?;
    let f = det_poly(&pa)?.fpoly;
    let s = rank_one_split(&g, Subset::full(k))?;

    let build = |fallback: bool| -> Result<SquareMatrix> {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let e = match (i < k, j < k, fallback) {
                    (true, true, false) | (false, false, true) => g.get(i, j).clone(),
                    (true, true, true) | (false, false, false) => g.get(j, i).clone(),
                    (true, false, false) => (&s.a[&i] * &s.c[&j]).scale(&sign(i)),
                    (false, true, false) => (&s.b[&i] * &s.d[&j]).scale(&sign(j)),
                    (true, false, true) => (&s.d[&i] * &s.b[&j]).scale(&sign(i)),
                    (false, true, true) => (&s.c[&i] * &s.a[&j]).scale(&sign(j)),
                };
                entries.push(e);
            }
        }
        let h = AdjugateTable::from_entries(n, entries)?;
        let b = matrix_from_adjugate(&h, &f)?;
        if !h.is_adjugate_of(&b, &f) {
            return Err(Error::verification("swapped table is not an adjugate"));
        }
        Ok(b.unpermuted(&perm))
    };

    for fallback in [false, true] {
        let b = build(fallback)?;
        if diagonal_equivalence(a, &b)?.is_none() {
            return Ok(Some(SwapWitness { matrix: b, fallback }));
        }
    }
    Ok(None)
}

/// Result of [`enumerate_fiber`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberEnumeration {
    /// Fiber members found, each normalized along a spanning forest of its
    /// support. When the search is complete every fiber member is diagonally
    /// similar to one of these.
    pub members: Vec<SquareMatrix>,
    /// A pair `(j, k)` whose entries no principal minor pins down once the
    /// others are fixed. The search is incomplete when this is set.
    pub unresolved: Option<(usize, usize)>,
}

impl FiberEnumeration {
    pub fn is_complete(&self) -> bool {
        self.unresolved.is_none()
    }
}

/// Searches the whole fiber of `A` up to diagonal similarity.
///
/// Every fiber member `B` shares the diagonal of `A` and satisfies
/// `b_jk b_kj = a_jk a_kj`. An undetermined pair `(j, k)` is fixed by a
/// principal minor on some `S ∋ j, k` whose other entries are known: the
/// minor is affine in `b_jk` and in `b_kj`, so together with their product
/// it leaves at most two choices. When no such minor exists and `j`, `k`
/// lie in different components of the entries known to be nonzero, the
/// diagonal scaling is spent on the pair instead. Every leaf is checked
/// against all principal minors.
pub fn enumerate_fiber(a: &SquareMatrix) -> Result<FiberEnumeration> {
    let n = a.n();
    if n > limits::CLASSIFY {
        return Err(Error::TooLarge { op: "enumerate_fiber", n, limit: limits::CLASSIFY });
    }
    let mut search = FiberSearch {
        a,
        phi: principal_minors(a)?,
        b: SquareMatrix::zeros(n, a.field()),
        known: vec![vec![false; n]; n],
        out: FiberEnumeration { members: Vec::new(), unresolved: None },
    };
    for i in 0..n {
        search.b.set(i, i, a.get(i, i).clone());
        search.known[i][i] = true;
    }
    search.extend();
    Ok(search.out)
}

struct FiberSearch<'a> {
    a: &'a SquareMatrix,
    phi: PMVector,
    b: SquareMatrix,
    known: Vec<Vec<bool>>,
    out: FiberEnumeration,
}

/// Undetermined entries of one index pair `j < k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Unknown {
    /// Both `b_jk` and `b_kj`, tied by `b_jk b_kj = a_jk a_kj`.
    Pair(usize, usize),
    /// Only the entry at `(row, col)`; its transpose is known and the
    /// product `a_jk a_kj` is zero.
    Entry(usize, usize),
}

impl Unknown {
    fn ends(self) -> (usize, usize) {
        match self {
            Unknown::Pair(j, k) | Unknown::Entry(j, k) => (j.min(k), j.max(k)),
        }
    }

    fn covers(self, u: usize, v: usize) -> bool {
        match self {
            Unknown::Pair(j, k) => (u, v) == (j, k) || (u, v) == (k, j),
            Unknown::Entry(r, c) => (u, v) == (r, c),
        }
    }
}

type Assignment = Vec<((usize, usize), Scalar)>;

impl FiberSearch<'_> {
    fn n(&self) -> usize {
        self.a.n()
    }

    fn product(&self, j: usize, k: usize) -> Scalar {
        self.a.get(j, k) * self.a.get(k, j)
    }

    fn unknowns(&self) -> Vec<Unknown> {
        let n = self.n();
        let mut out = Vec::new();
        for j in 0..n {
            for k in j + 1..n {
                match (self.known[j][k], self.known[k][j]) {
                    (false, false) => out.push(Unknown::Pair(j, k)),
                    (false, true) => out.push(Unknown::Entry(j, k)),
                    (true, false) => out.push(Unknown::Entry(k, j)),
                    (true, true) => {}
                }
            }
        }
        out
    }

    /// Sets containing both ends of `u` whose other entries are all known,
    /// in increasing size.
    fn closed_sets(&self, u: Unknown) -> Vec<Subset> {
        let (j, k) = u.ends();
        let rest = Subset::full(self.n()).remove(j).remove(k);
        let mut sets: Vec<Subset> = rest
            .subsets()
            .map(|r| r.insert(j).insert(k))
            .filter(|s| s.iter().all(|p| s.iter().all(|q| self.known[p][q] || u.covers(p, q))))
            .collect();
        sets.sort_by_key(|s| (s.len(), s.mask()));
        sets
    }

    fn minor_with(&mut self, s: Subset, assignment: &Assignment) -> Scalar {
        for ((r, c), v) in assignment {
            self.b.set(*r, *c, v.clone());
        }
        self.b.principal_submatrix(s).det()
    }

    fn sqrt(&self, v: &Scalar) -> Option<Scalar> {
        match self.a.field() {
            Field::Rational => v.rational_sqrt(),
            Field::GaussianRational => v.gaussian_sqrt(),
        }
    }

    /// The finitely many assignments for `u` allowed by the minor on `s`,
    /// or `None` when they form a line.
    fn solve(&mut self, u: Unknown, s: Subset) -> Option<Vec<Assignment>> {
        let (zero, one) = (Scalar::zero(), Scalar::one());
        let target = self.phi.get(s).clone();
        match u {
            Unknown::Entry(r, c) => {
                // α + β x = A_S
                let alpha = self.minor_with(s, &vec![((r, c), zero)]);
                let beta = &self.minor_with(s, &vec![((r, c), one)]) - &alpha;
                let rhs = &target - &alpha;
                if beta.is_zero() {
                    return if rhs.is_zero() { None } else { Some(Vec::new()) };
                }
                Some(vec![vec![((r, c), &rhs / &beta)]])
            }
            Unknown::Pair(j, k) => {
                // α + β x + γ y + δ x y = A_S with x y = p
                let at = |x: &Scalar, y: &Scalar| vec![((j, k), x.clone()), ((k, j), y.clone())];
                let alpha = self.minor_with(s, &at(&zero, &zero));
                let beta = &self.minor_with(s, &at(&one, &zero)) - &alpha;
                let gamma = &self.minor_with(s, &at(&zero, &one)) - &alpha;
                let delta = &(&(&self.minor_with(s, &at(&one, &one)) - &alpha) - &beta) - &gamma;
                let p = self.product(j, k);
                let c = &(&target - &alpha) - &(&delta * &p);
                let mut sols: Vec<Assignment> = Vec::new();
                if p.is_zero() {
                    // x = 0 or y = 0, each leaving a linear equation
                    for (coef, x_free) in [(&gamma, false), (&beta, true)] {
                        if coef.is_zero() {
                            if c.is_zero() {
                                return None;
                            }
                            continue;
                        }
                        let v = &c / coef;
                        sols.push(if x_free { at(&v, &zero) } else { at(&zero, &v) });
                    }
                } else if beta.is_zero() {
                    if gamma.is_zero() {
                        return if c.is_zero() { None } else { Some(sols) };
                    }
                    if !c.is_zero() {
                        let x = &(&gamma * &p) / &c;
                        sols.push(at(&x, &(&p / &x)));
                    }
                } else {
                    // β x² − c x + γ p = 0
                    let disc = &(&c * &c) - &(&(&Scalar::from_int(4) * &beta) * &(&gamma * &p));
                    if let Some(root) = self.sqrt(&disc) {
                        let two_beta = &Scalar::from_int(2) * &beta;
                        for x in [&(&c + &root) / &two_beta, &(&c - &root) / &two_beta] {
                            if !x.is_zero() {
                                sols.push(at(&x, &(&p / &x)));
                            }
                        }
                    }
                }
                sols.dedup();
                Some(sols)
            }
        }
    }

    /// Components of the undirected graph of known nonzero entries.
    fn components(&self) -> Vec<usize> {
        let n = self.n();
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(comp: &mut [usize], v: usize) -> usize {
            let mut r = v;
            while comp[r] != r {
                r = comp[r];
            }
            comp[v] = r;
            r
        }
        for u in 0..n {
            for v in 0..n {
                if u != v && self.known[u][v] && !self.b.get(u, v).is_zero() {
                    let (ru, rv) = (find(&mut comp, u), find(&mut comp, v));
                    comp[ru] = rv;
                }
            }
        }
        (0..n).map(|v| find(&mut comp, v)).collect()
    }

    /// Every principal minor whose entries are all known matches `A`.
    fn consistent(&self, u: Unknown) -> bool {
        let (j, k) = u.ends();
        let rest = Subset::full(self.n()).remove(j).remove(k);
        rest.subsets().map(|r| r.insert(j).insert(k)).all(|s| {
            !s.iter().all(|p| s.iter().all(|q| self.known[p][q]))
                || self.b.principal_submatrix(s).det() == *self.phi.get(s)
        })
    }

    fn branch(&mut self, u: Unknown, options: Vec<Assignment>) {
        for assignment in options {
            for ((r, c), v) in &assignment {
                self.b.set(*r, *c, v.clone());
                self.known[*r][*c] = true;
            }
            if self.consistent(u) {
                self.extend();
            }
            for ((r, c), _) in &assignment {
                self.b.set(*r, *c, Scalar::zero());
                self.known[*r][*c] = false;
            }
        }
    }

    fn extend(&mut self) {
        let unknowns = self.unknowns();
        if unknowns.is_empty() {
            if principal_minors(&self.b).is_ok_and(|phi| phi == self.phi) && !self.out.members.contains(&self.b) {
                self.out.members.push(self.b.clone());
            }
            return;
        }
        // an unknown pinned down by a single minor
        for &u in &unknowns {
            for s in self.closed_sets(u) {
                if let Some(options) = self.solve(u, s) {
                    return self.branch(u, options);
                }
            }
        }
        // an unknown joining two components absorbs a diagonal scaling;
        // nonzero products first since they do not branch
        let comp = self.components();
        let crossing = unknowns
            .iter()
            .filter(|u| {
                let (j, k) = u.ends();
                comp[j] != comp[k]
            })
            .min_by_key(|u| matches!(u, Unknown::Entry(..)) || self.product(u.ends().0, u.ends().1).is_zero());
        let value = |e: &Scalar| if e.is_zero() { Scalar::one() } else { e.clone() };
        if let Some(&u) = crossing {
            let options = match u {
                Unknown::Entry(r, c) => vec![vec![((r, c), Scalar::zero())], vec![((r, c), value(self.a.get(r, c)))]],
                Unknown::Pair(j, k) if self.product(j, k).is_zero() => vec![
                    vec![((j, k), Scalar::zero()), ((k, j), Scalar::zero())],
                    vec![((j, k), value(self.a.get(j, k))), ((k, j), Scalar::zero())],
                    vec![((j, k), Scalar::zero()), ((k, j), value(self.a.get(k, j)))],
                ],
                Unknown::Pair(j, k) => vec![vec![((j, k), self.a.get(j, k).clone()), ((k, j), self.a.get(k, j).clone())]],
            };
            return self.branch(u, options);
        }
        // a pair with zero product is split by which side vanishes
        let split = unknowns.iter().find_map(|&u| match u {
            Unknown::Pair(j, k) if self.product(j, k).is_zero() => Some((j, k)),
            _ => None,
        });
        if let Some((j, k)) = split {
            for (r, c) in [(j, k), (k, j)] {
                self.known[r][c] = true;
                self.b.set(r, c, Scalar::zero());
                self.extend();
                self.known[r][c] = false;
            }
            return;
        }
        if self.out.unresolved.is_none() {
            self.out.unresolved = Some(unknowns[0].ends());
        }
    }
}

/// For reducible `A = P⁻¹ [[E, F], [0, G]] P` (first Frobenius block versus
/// the rest), replaces `F` by its complementary 0/1 pattern.
pub fn reducible_witness(a: &SquareMatrix) -> Result<SquareMatrix> {
    let form = frobenius_form(a);
    if form.block_count() < 2 {
        return Err(Error::precondition("matrix is irreducible"));
    }
    let n = a.n();
    let k = form.blocks[0].len();
    let mut b = form.permuted.clone();
    for i in 0..k {
        for j in k..n {
            let v = if b.get(i, j).is_zero() { Scalar::one() } else { Scalar::zero() };
            b.set(i, j, v);
        }
    }
    let b = b.unpermuted(&form.perm);
    if diagonal_equivalence(a, &b)?.is_some() {
        return Err(Error::verification("reducible witness is diagonally equivalent to the input"));
    }
    Ok(b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FiberVerdict {
    SinglePoint,
    MultiPoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FiberReason {
    Reducible,
    HasCutNotSymmetrizable,
    NoCut,
    Symmetrizable,
    /// `n <= 3`: irreducible and cuts cannot exist.
    SmallN,
    /// Irreducible, not symmetrizable and with a cut, yet every fiber member
    /// is diagonally equivalent to `A` (proved by exhaustive enumeration).
    ExceptionalCut,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WitnessSource {
    /// Complemented upper block of a reducible matrix.
    Reducible,
    /// `b`/`c` factor swap across the cut.
    Swap,
    /// `a`/`d` factor swap with the `X` block transposed.
    FallbackSwap,
    /// Exhaustive enumeration of a full-support fiber.
    Enumeration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberClassification {
    pub verdict: FiberVerdict,
    pub reason: FiberReason,
    pub cut: Option<CutCertificate>,
    pub witness: Option<SquareMatrix>,
    /// Symmetrizability verdict when it decided the outcome.
    pub symmetry: Option<SymmetryVerdict>,
    pub witness_source: Option<WitnessSource>,
}

impl FiberClassification {
    fn single(reason: FiberReason, symmetry: Option<SymmetryVerdict>) -> Self {
        FiberClassification { verdict: FiberVerdict::SinglePoint, reason, cut: None, witness: None, symmetry, witness_source: None }
    }

    /// `n <= 3` lies outside the range where the classification is proven.
    pub fn outside_proven_range(&self) -> bool {
        self.reason == FiberReason::SmallN
    }
}

/// Every factor swap on every cut is diagonally equivalent to `A`; the
/// fiber is searched exhaustively instead.
fn exceptional(a: &SquareMatrix, cut: CutCertificate, sym: SymmetryVerdict) -> Result<FiberClassification> {
    let search = enumerate_fiber(a)?;
    let members = search.members;
    let mut witness = None;
    for b in members {
        if diagonal_equivalence(a, &b)?.is_none() {
            witness = Some(b);
            break;
        }
    }
    if witness.is_none() {
        if let Some((j, k)) = search.unresolved {
            return Err(Error::Unresolved(format!(
                "every factor swap is diagonally equivalent to the input and the entries ({0},{1}), ({1},{0}) are not determined by the principal minors",
                j + 1,
                k + 1
            )));
        }
    }
    let verdict = if witness.is_some() { FiberVerdict::MultiPoint } else { FiberVerdict::SinglePoint };
    let reason = if witness.is_some() { FiberReason::HasCutNotSymmetrizable } else { FiberReason::ExceptionalCut };
    let witness_source = witness.as_ref().map(|_| WitnessSource::Enumeration);
    Ok(FiberClassification { verdict, reason, cut: Some(cut), witness, symmetry: Some(sym), witness_source })
}

/// Decides whether the fiber of `A` is a single diagonal-equivalence class,
/// producing a verified second fiber point when it is not.
pub fn classify_fiber(a: &SquareMatrix) -> Result<FiberClassification> {
    let n = a.n();
    if n > limits::CLASSIFY {
        return Err(Error::TooLarge { op: "classify_fiber", n, limit: limits::CLASSIFY });
    }
    let out = if !is_irreducible(a) {
        FiberClassification {
            verdict: FiberVerdict::MultiPoint,
            reason: FiberReason::Reducible,
            cut: None,
            witness: Some(reducible_witness(a)?),
            symmetry: None,
            witness_source: Some(WitnessSource::Reducible),
        }
    } else if n <= 3 {
        FiberClassification::single(FiberReason::SmallN, None)
    } else {
        let cuts = find_cuts(a)?;
        if cuts.is_empty() {
            return Ok(FiberClassification::single(FiberReason::NoCut, None));
        }
        let sym = symmetrizability(a).verdict;
        if sym.is_equivalent() {
            return Ok(FiberClassification::single(FiberReason::Symmetrizable, Some(sym)));
        }
        let mut found = None;
        for cut in &cuts {
            if let Some(w) = swap_candidates(a, cut.x)? {
                found = Some((cut.clone(), w));
                break;
            }
        }
        match found {
            Some((cut, w)) => FiberClassification {
                verdict: FiberVerdict::MultiPoint,
                reason: FiberReason::HasCutNotSymmetrizable,
                cut: Some(cut),
                witness: Some(w.matrix),
                symmetry: Some(sym),
                witness_source: Some(if w.fallback { WitnessSource::FallbackSwap } else { WitnessSource::Swap }),
            },
            None => exceptional(a, cuts.into_iter().next().expect("cuts is nonempty"), sym)?,
        }
    };
    if let Some(w) = &out.witness {
        if det_poly(w)?.fpoly != det_poly(a)?.fpoly {
            return Err(Error::verification("witness has different principal minors"));
        }
        if diagonal_equivalence(a, w)?.is_some() {
            return Err(Error::verification("witness is diagonally equivalent to the input"));
        }
    }
    Ok(out)
}

/// Fiber of a symmetric matrix: a single diagonal-equivalence class when
/// irreducible, otherwise the block template with free upper blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricFiber {
    pub single_point: bool,
    pub shape: FiberShape,
}

pub fn symmetric_fiber_describe(a: &SquareMatrix) -> Result<SymmetricFiber> {
    if !a.is_symmetric() {
        return Err(Error::precondition("matrix is not symmetric"));
    }
    let shape = fiber_shape(a)?;
    Ok(SymmetricFiber { single_point: shape.blocks().len() == 1, shape })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCertificate {
    pub block: Subset,
    pub result: SymmetrizabilityResult,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableCertificate {
    pub certified: bool,
    pub blocks: Vec<BlockCertificate>,
    /// Block determinantal polynomials in the full variable ring.
    pub factors: Vec<MPoly>,
    /// First block with no Hermitian-equivalence certificate.
    pub failing_block: Option<Subset>,
}

/// Structural certificate of real stability: every irreducible diagonal
/// block is diagonally similar to a Hermitian matrix.
pub fn stable_certify(a: &SquareMatrix) -> Result<StableCertificate> {
    let shape = fiber_shape(a)?;
    let blocks: Vec<BlockCertificate> = shape
        .blocks()
        .par_iter()
        .zip(shape.block_matrices.par_iter())
        .map(|(&block, m)| BlockCertificate { block, result: hermitian_equivalence(m) })
        .collect();
    let failing_block = blocks.iter().find(|b| !b.result.verdict.is_equivalent()).map(|b| b.block);
    Ok(StableCertificate { certified: failing_block.is_none(), blocks, factors: shape.block_polys, failing_block })
}
