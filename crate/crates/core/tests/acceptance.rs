//! Acceptance run: one PASS/FAIL line per criterion, each within its time
//! budget. A FAIL marked `known` is a documented limitation whose failing
//! instances were all re-examined by an independent oracle; any other FAIL
//! makes the run exit nonzero.

mod common;

use std::time::{Duration, Instant};

use common::*;
use pmfiber::symdet::{verify_selected, Identity};
use pmfiber::*;
use rand::Rng;

type Outcome = std::result::Result<String, String>;

/// Name, check and time budget.
type Criterion = (&'static str, fn() -> Outcome, Duration);

/// Prefix of a failure message for a documented limitation.
const KNOWN: &str = "known: ";

fn check(cond: bool, what: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn c1_cut_4x4() -> Outcome {
    let a = cut_4x4();
    let cuts: Vec<Subset> = find_cuts(&a).map_err(|e| e.to_string())?.into_iter().map(|c| c.x).collect();
    check(cuts == vec![subset(&[1, 2])], || format!("cuts {cuts:?}"))?;
    let g = adjugate_table(&a).map_err(|e| e.to_string())?;
    for (i, j, text) in [
        (1, 2, "(x3+3)*(x4+3)"),
        (2, 4, "-(3*x1+7)*(2*x3+3)"),
        (3, 1, "-(x2-1)*x4"),
        (4, 3, "-(2*x1+5)*(x2-2)"),
    ] {
        check(g.get(i - 1, j - 1) == &poly(4, text), || format!("G[{i},{j}] = {}", g.get(i - 1, j - 1)))?;
    }
    let c = classify_fiber(&a).map_err(|e| e.to_string())?;
    check(c.verdict == FiberVerdict::MultiPoint, || format!("{:?}", c.verdict))?;
    let w = c.witness.ok_or("no witness")?;
    check(brute_minors(&w) == brute_minors(&a), || "witness minors differ".into())?;
    check(diagonal_equivalence(&a, &w).unwrap().is_none(), || "witness is equivalent to A".into())?;
    let b = witness_4x4();
    check(w == b || diagonal_equivalence(&w, &b).unwrap().is_some(), || format!("witness {w} is not the expected B"))?;
    Ok("cut {1,2}, expected adjugate entries, MultiPoint witness ~ B".into())
}

fn c2_reducible_6x6() -> Outcome {
    let a = reducible_6x6();
    let factors: Vec<MPoly> = BLOCK_6X6_FACTORS.iter().map(|t| poly(6, t)).collect();
    let product = factors.iter().fold(MPoly::one(6), |acc, t| &acc * t);
    check(det_poly(&a).unwrap().fpoly == product, || "f_A differs from the product".into())?;
    let r = structure_check(&a).map_err(|e| e.to_string())?;
    let blocks: Vec<Subset> = r.form.blocks.clone();
    let expect = vec![subset(&[1, 5]), subset(&[2, 4]), subset(&[3, 6])];
    check(blocks == expect, || format!("blocks {blocks:?}"))?;
    check(r.factors == factors, || "block polynomials differ".into())?;
    let shape = fiber_shape(&a).map_err(|e| e.to_string())?;
    check(shape.free_blocks == vec![(0, 1), (0, 2), (1, 2)], || format!("free blocks {:?}", shape.free_blocks))?;
    check(shape.free_positions().len() == 12, || "free blocks are not 2x2".into())?;
    Ok("3 blocks {1,5},{2,4},{3,6}; 3 free upper blocks".into())
}

fn c3_identities() -> Outcome {
    let mut rng = gen::seeded(3);
    let mut count = 0;
    for t in 0..500 {
        let n = 2 + t % 5;
        let field = if t % 2 == 0 { Field::Rational } else { Field::GaussianRational };
        let a = gen::matrix(&mut rng, n, field, 5);
        let report = verify_selected(&a, &[Identity::Dodgson, Identity::Resultant, Identity::Adjugate]).map_err(|e| e.to_string())?;
        check(report.all_passed(), || format!("identity failure on {a:?}"))?;
        let det = gauss_det(a.rows());
        for _ in 0..3 {
            let m = rng.random_range(1..(1u32 << n) - 1);
            let s = Subset::from_mask(m);
            check(laplace_expand(&a, s).unwrap() == det, || format!("Laplace on {s} of {a:?}"))?;
        }
        count += 1;
    }
    Ok(format!("{count} matrices, n in 2..=6, Q and Q(i)"))
}

fn c4_equivalence_invariance() -> Outcome {
    let mut rng = gen::seeded(4);
    for t in 0..200 {
        let n = 3 + t % 4;
        let field = if t % 3 == 0 { Field::GaussianRational } else { Field::Rational };
        let a = gen::full_support(&mut rng, n, field, 5);
        let d = gen::nonzero_vec(&mut rng, n, field, 5);
        let b = a.conjugate_by_diagonal(&d).unwrap();
        let phi = brute_minors(&a);
        check(brute_minors(&b) == phi, || format!("φ(DAD⁻¹) differs for {a:?}"))?;
        check(brute_minors(&a.transpose()) == phi, || format!("φ(Aᵀ) differs for {a:?}"))?;
        check(principal_minors(&b).unwrap().values() == phi.as_slice(), || "library minors differ".into())?;
        let cert = diagonal_equivalence(&a, &b).unwrap().ok_or_else(|| format!("no certificate for {a:?}"))?;
        check(cert.verify(&a, &b), || "certificate does not verify".into())?;
    }
    Ok("200 pairs".into())
}

fn c5_irreducibility_bridge() -> Outcome {
    let mut rng = gen::seeded(5);
    let mut reducible = 0;
    for t in 0..200 {
        let n = 3 + t % 4;
        let mut a = gen::matrix(&mut rng, n, Field::Rational, 5);
        // sparsify half the trials so both outcomes occur
        if t % 2 == 1 {
            for i in 0..n {
                for j in 0..n {
                    if i != j && rng.random_bool(0.6) {
                        a.set(i, j, Scalar::zero());
                    }
                }
            }
        }
        let irreducible = is_irreducible(&a);
        let g = adjugate_table(&a).unwrap();
        let f = det_poly(&a).unwrap().fpoly;
        let deltas = (0..n).all(|i| (0..n).all(|j| i == j || !f.rayleigh_difference(i, j).unwrap().is_zero()));
        check(irreducible == g.all_nonzero() && irreducible == deltas, || format!("bridge fails on {a:?}"))?;
        reducible += usize::from(!irreducible);
    }
    Ok(format!("200 matrices, {reducible} reducible"))
}

fn c6_structure() -> Outcome {
    let mut rng = gen::seeded(6);
    for _ in 0..100 {
        let k = rng.random_range(1..=4);
        let sizes: Vec<usize> = (0..k).map(|_| rng.random_range(1..=3)).collect();
        let field = if rng.random_bool(0.3) { Field::GaussianRational } else { Field::Rational };
        let a = gen::planted_block_triangular(&mut rng, &sizes, field, 5);
        let form = frobenius_form(&a);
        check(form.block_count() == k, || format!("{} blocks, planted {k}: {a:?}", form.block_count()))?;
        let product = form
            .blocks
            .iter()
            .fold(MPoly::one(a.n()), |acc, &b| &acc * &structure::block_polynomial(&a, b).unwrap());
        check(product == det_poly(&a).unwrap().fpoly, || format!("f_A is not the block product for {a:?}"))?;
        // independent check: det(diag(x) + A) by elimination at random points
        for _ in 0..3 {
            let x: Vec<Scalar> = (0..a.n()).map(|_| gen::scalar(&mut rng, Field::Rational, 9)).collect();
            let mut m = a.rows();
            for (i, xi) in x.iter().enumerate() {
                m[i][i] = &m[i][i] + xi;
            }
            check(product.evaluate(&x) == gauss_det(m), || format!("block product disagrees with det at a point for {a:?}"))?;
        }
    }
    Ok("100 planted constructions".into())
}

fn c7_witness_at_scale() -> Outcome {
    let mut rng = gen::seeded(7);
    let mut failures = Vec::new();
    for t in 0..100 {
        let n = 4 + t % 3;
        let (a, x) = gen::planted_cut(&mut rng, n, 5);
        let ok = match cut_swap_witness(&a, x) {
            Ok(w) => brute_minors(&w.matrix) == brute_minors(&a) && diagonal_equivalence(&a, &w.matrix).unwrap().is_none(),
            Err(_) => false,
        };
        if !ok {
            failures.push(a);
        }
    }
    if failures.is_empty() {
        return Ok("100 planted cuts, every witness verified".into());
    }
    // a failure is only acceptable as a reported limitation when the
    // brute-force fiber shows no second class exists
    let single = failures.iter().filter(|a| fiber_is_single_class(a)).count();
    let flagged = failures
        .iter()
        .filter(|a| classify_fiber(a).is_ok_and(|c| c.reason == FiberReason::ExceptionalCut))
        .count();
    let msg = format!(
        "{} of 100 planted cuts have no verified swap witness; {single} of them have a single-class fiber by brute force, so no witness exists ({flagged} classified ExceptionalCut)",
        failures.len()
    );
    Err(if single == failures.len() { format!("{KNOWN}{msg}") } else { msg })
}

fn c8_symmetric_fiber() -> Outcome {
    let mut rng = gen::seeded(8);
    for t in 0..100 {
        let n = 3 + t % 4;
        let a = gen::symmetric_irreducible(&mut rng, n, 5);
        let d0 = gen::nonzero_vec(&mut rng, n, Field::Rational, 5);
        let b = a.conjugate_by_diagonal(&d0).unwrap();
        let c = classify_fiber(&b).map_err(|e| e.to_string())?;
        check(c.verdict == FiberVerdict::SinglePoint, || format!("{:?} for {b:?}", c.reason))?;
        let cert = recover_diag_from_fiber(&a, &b).map_err(|e| e.to_string())?;
        let scale = &d0[0] / &cert.d[0];
        check(cert.d.iter().zip(&d0).all(|(x, y)| &(x * &scale) == y), || format!("wrong conjugator for {b:?}"))?;
    }
    Ok("100 conjugated symmetric matrices".into())
}

fn c9_stable_certificates() -> Outcome {
    let mut rng = gen::seeded(9);
    for t in 0..50 {
        let n = 2 + t % 4;
        let h = gen::hermitian(&mut rng, n, 5);
        check(stable_certify(&h).unwrap().certified, || format!("Hermitian not certified: {h:?}"))?;

        let mut bad = h.clone();
        let i = rng.random_range(0..n);
        let re = rng.random_range(-5..=5);
        let im = if rng.random_bool(0.5) { 1 } else { -3 };
        bad.set(i, i, Scalar::gaussian(re, im));
        check(!stable_certify(&bad).unwrap().certified, || format!("non-real diagonal certified: {bad:?}"))?;

        let d = gen::nonzero_vec(&mut rng, n, Field::GaussianRational, 5);
        let b = h.conjugate_by_diagonal(&d).unwrap();
        check(stable_certify(&b).unwrap().certified, || format!("D H D⁻¹ not certified: {b:?}"))?;
    }
    Ok("50 Hermitian, 50 non-real diagonal, 50 D H D⁻¹".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 4x4 golden", c1_cut_4x4, Duration::from_secs(2)),
        ("2 6x6 golden", c2_reducible_6x6, Duration::from_secs(2)),
        ("3 identity suite", c3_identities, Duration::from_secs(60)),
        ("4 equivalence invariance", c4_equivalence_invariance, Duration::MAX),
        ("5 irreducibility bridge", c5_irreducibility_bridge, Duration::MAX),
        ("6 structure", c6_structure, Duration::MAX),
        ("7 witness at scale", c7_witness_at_scale, Duration::from_secs(120)),
        ("8 symmetric fiber", c8_symmetric_fiber, Duration::MAX),
        ("9 stable certificates", c9_stable_certificates, Duration::MAX),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > budget => Err(format!("{msg}; took {elapsed:.2?}, budget {budget:.0?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS {name} ({elapsed:.2?}): {msg}"),
            Err(msg) => {
                if !msg.starts_with(KNOWN) {
                    failed += 1;
                }
                println!("FAIL {name} ({elapsed:.2?}): {msg}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
