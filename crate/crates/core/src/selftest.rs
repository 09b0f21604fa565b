//! Randomized property suites behind `pmfiber selftest`.
//!
//! Trial `t` of suite `s` draws from its own generator seeded by
//! `(seed, s, t)`, so trials run concurrently yet aggregate reproducibly.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::equiv::{diagonal_equivalence, hermitian_equivalence, recover_diag_from_fiber};
use crate::error::Result;
use crate::fiber::{classify_fiber, cut_swap_witness, stable_certify, FiberReason, FiberVerdict};
use crate::gen::{self, Gen};
use crate::limits;
use crate::scalar::{Field, Scalar};
use crate::structure::{frobenius_form, is_irreducible, structure_check};
use crate::symdet::{adjugate_table, det_poly, principal_minors, verify_identities};

const RANGE: i64 = 5;

type Outcome = std::result::Result<(), String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn field_for(rng: &mut Gen) -> Field {
    if rng.random_bool(0.5) {
        Field::Rational
    } else {
        Field::GaussianRational
    }
}

fn identities(rng: &mut Gen, n: usize) -> Outcome {
    let field = field_for(rng);
    let a = gen::matrix(rng, n, field, RANGE);
    let report = lift(verify_identities(&a))?;
    check(report.all_passed(), || format!("identity failure on {a:?}"))
}

fn diagonal_invariance(rng: &mut Gen, n: usize) -> Outcome {
    let field = field_for(rng);
    let a = gen::full_support(rng, n, field, RANGE);
    let d = gen::nonzero_vec(rng, n, field, RANGE);
    let b = lift(a.conjugate_by_diagonal(&d))?;
    let phi = lift(principal_minors(&a))?;
    check(lift(principal_minors(&b))? == phi, || "conjugation changed the minors".into())?;
    check(lift(principal_minors(&a.transpose()))? == phi, || "transpose changed the minors".into())?;
    let cert = lift(diagonal_equivalence(&a, &b))?;
    check(cert.is_some_and(|c| c.verify(&a, &b)), || format!("no certificate for {a:?}"))
}

fn irreducibility_bridge(rng: &mut Gen, n: usize) -> Outcome {
    let range = rng.random_range(1..=RANGE);
    let a = gen::matrix(rng, n, Field::Rational, range);
    let irr = is_irreducible(&a);
    let g = lift(adjugate_table(&a))?;
    let f = lift(det_poly(&a))?.fpoly;
    let mut deltas = true;
    for i in 0..n {
        for j in 0..n {
            if i != j && lift(f.rayleigh_difference(i, j))?.is_zero() {
                deltas = false;
            }
        }
    }
    check(irr == g.all_nonzero() && irr == deltas, || format!("bridge fails on {a:?}"))
}

fn planted_structure(rng: &mut Gen, n: usize) -> Outcome {
    let mut sizes = Vec::new();
    let mut left = n;
    while left > 0 {
        let s = rng.random_range(1..=left);
        sizes.push(s);
        left -= s;
    }
    let field = field_for(rng);
    let a = gen::planted_block_triangular(rng, &sizes, field, RANGE);
    check(frobenius_form(&a).block_count() == sizes.len(), || format!("block count differs on {a:?}"))?;
    check(lift(structure_check(&a))?.passed(), || format!("structure check fails on {a:?}"))
}

fn witness(rng: &mut Gen, n: usize) -> Outcome {
    if n < 4 {
        return Ok(());
    }
    let (a, x) = gen::planted_cut(rng, n, RANGE);
    let c = lift(classify_fiber(&a))?;
    if c.reason == FiberReason::ExceptionalCut {
        // a single-class fiber: no swap may produce a witness
        return check(cut_swap_witness(&a, x).is_err(), || format!("exceptional {a:?} has a swap witness"));
    }
    let w = c.witness.ok_or_else(|| format!("{a:?} classified {:?}", c.reason))?;
    check(lift(principal_minors(&w))? == lift(principal_minors(&a))?, || "witness minors differ".into())?;
    check(lift(diagonal_equivalence(&a, &w))?.is_none(), || "witness is equivalent".into())
}

fn symmetric_fiber(rng: &mut Gen, n: usize) -> Outcome {
    let a = gen::symmetric_irreducible(rng, n, RANGE);
    let d0 = gen::nonzero_vec(rng, n, Field::Rational, RANGE);
    let b = lift(a.conjugate_by_diagonal(&d0))?;
    let c = lift(classify_fiber(&b))?;
    check(c.verdict == FiberVerdict::SinglePoint, || format!("{b:?} classified {:?}", c.reason))?;
    let cert = lift(recover_diag_from_fiber(&a, &b))?;
    let scale = &d0[0] / &cert.d[0];
    check(cert.d.iter().zip(&d0).all(|(x, y)| &(x * &scale) == y), || "conjugator not recovered".into())
}

fn stable(rng: &mut Gen, n: usize) -> Outcome {
    let h = gen::hermitian(rng, n, RANGE);
    let d = gen::nonzero_vec(rng, n, Field::GaussianRational, RANGE);
    let b = lift(h.conjugate_by_diagonal(&d))?;
    check(hermitian_equivalence(&b).verdict.is_equivalent(), || format!("{b:?} not Hermitian-equivalent"))?;
    check(lift(stable_certify(&b))?.certified, || format!("{b:?} not certified"))?;
    let mut bad = h.clone();
    bad.set(0, 0, &bad.get(0, 0).clone() + &Scalar::i());
    check(!lift(stable_certify(&bad))?.certified, || "non-real diagonal certified".into())
}

type Suite = (&'static str, fn(&mut Gen, usize) -> Outcome, usize);

const SUITES: [Suite; 7] = [
    ("identities", identities, limits::IDENTITIES),
    ("diagonal_invariance", diagonal_invariance, limits::MINORS),
    ("irreducibility_bridge", irreducibility_bridge, limits::ADJUGATE),
    ("planted_structure", planted_structure, limits::CLASSIFY),
    ("cut_witness", witness, limits::ADJUGATE),
    ("symmetric_fiber", symmetric_fiber, limits::CLASSIFY),
    ("stable_certification", stable, limits::CLASSIFY),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    /// Lowest failing trial index and its message.
    pub first_failure: Option<(usize, String)>,
    pub skipped: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub generator: &'static str,
    pub n: usize,
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(|s| s.failed == 0)
    }
}

fn trial_seed(seed: u64, suite: usize, trial: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((suite as u64) << 48) ^ trial as u64
}

/// Runs every suite `trials` times on `n × n` inputs. Suites whose size
/// limit is below `n` are reported as skipped.
pub fn run(n: usize, trials: usize, seed: u64) -> SelftestReport {
    let suites = SUITES
        .iter()
        .enumerate()
        .map(|(s, &(name, suite, limit))| {
            if n == 0 || n > limit {
                return SuiteResult { name, trials: 0, passed: 0, failed: 0, first_failure: None, skipped: true };
            }
            let outcomes: Vec<Outcome> =
                (0..trials).into_par_iter().map(|t| suite(&mut gen::seeded(trial_seed(seed, s, t)), n)).collect();
            let failed = outcomes.iter().filter(|o| o.is_err()).count();
            let first_failure = outcomes.into_iter().enumerate().find_map(|(t, o)| o.err().map(|e| (t, e)));
            SuiteResult { name, trials, passed: trials - failed, failed, first_failure, skipped: false }
        })
        .collect();
    SelftestReport { generator: "ChaCha8", n, seed, suites }
}
