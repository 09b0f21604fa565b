//! Library results against the independent oracles in `common`.

mod common;

use common::*;
use pmfiber::*;

fn random(seed: u64, n: usize, field: Field) -> SquareMatrix {
    gen::matrix(&mut gen::seeded(seed), n, field, 5)
}

#[test]
fn minors_match_gaussian_elimination_and_leibniz() {
    for seed in 0..40 {
        let n = 1 + (seed as usize % 5);
        let field = if seed % 2 == 0 { Field::Rational } else { Field::GaussianRational };
        let a = random(seed, n, field);
        let phi = principal_minors(&a).unwrap();
        assert_eq!(phi.values(), brute_minors(&a).as_slice(), "{a:?}");
        assert_eq!(phi.get(Subset::full(n)), &leibniz_det(&a.rows()));
    }
}

#[test]
fn det_poly_matches_symbolic_leibniz() {
    for seed in 0..20 {
        let n = 1 + (seed as usize % 5);
        let a = random(100 + seed, n, Field::Rational);
        assert_eq!(det_poly(&a).unwrap().fpoly, symbolic_det_poly(&a), "{a:?}");
    }
    let a = random(7, 4, Field::GaussianRational);
    assert_eq!(det_poly(&a).unwrap().fpoly, symbolic_det_poly(&a));
}

#[test]
fn adjugate_matches_symbolic_cofactors() {
    for seed in 0..12 {
        let n = 1 + (seed as usize % 4);
        let field = if seed % 3 == 0 { Field::GaussianRational } else { Field::Rational };
        let a = random(200 + seed, n, field);
        let g = adjugate_table(&a).unwrap();
        let oracle = symbolic_adjugate(&a);
        for i in 0..n {
            for j in 0..n {
                assert_eq!(g.get(i, j), &oracle[i][j], "entry ({i},{j}) of {a:?}");
            }
        }
    }
}

#[test]
fn adjugate_times_pencil_is_f_times_identity() {
    for seed in 0..6 {
        let n = 2 + (seed as usize % 3);
        let a = random(300 + seed, n, Field::Rational);
        let g = adjugate_table(&a).unwrap();
        let rows: Vec<Vec<MPoly>> = (0..n).map(|i| (0..n).map(|j| g.get(i, j).clone()).collect()).collect();
        let prod = poly_matmul(&rows, &pencil(&a), n);
        let f = symbolic_det_poly(&a);
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j { f.clone() } else { MPoly::zero(n) };
                assert_eq!(prod[i][j], expect);
            }
        }
    }
}

/// The off-diagonal entry of `diag(x) + A` sits, negated, in the top
/// coefficient of the matching adjugate entry. Checked exhaustively on
/// small patterns with the oracle adjugate before `matrix_from_adjugate`
/// relies on the sign.
#[test]
fn adjugate_recovery_sign_is_minus_one() {
    let vals = [-2i64, -1, 0, 1, 3];
    let check = |a: &SquareMatrix| {
        let n = a.n();
        let g = symbolic_adjugate(a);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let top = g[i][j].coefficient_of(Subset::full(n).remove(i).remove(j)).unwrap();
                    assert_eq!(&(-&top), a.get(i, j), "({i},{j}) of {a:?}");
                }
            }
        }
        let f = symbolic_det_poly(a);
        let h = AdjugateTable::from_entries(n, g.into_iter().flatten().collect()).unwrap();
        assert_eq!(&matrix_from_adjugate(&h, &f).unwrap(), a);
    };
    for e in 0..vals.len().pow(4) {
        let d: Vec<i64> = (0..4).map(|k| vals[e / vals.len().pow(k) % vals.len()]).collect();
        check(&SquareMatrix::from_ints(&[[d[0], d[1]], [d[2], d[3]]]));
    }
    let small = [-1i64, 0, 1];
    for e in 0..3usize.pow(6) {
        let o: Vec<i64> = (0..6).map(|k| small[e / 3usize.pow(k) % 3]).collect();
        check(&SquareMatrix::from_ints(&[[2, o[0], o[1]], [o[2], -1, o[3]], [o[4], o[5], 0]]));
    }
}

#[test]
fn two_line_sign_matches_inversion_count() {
    let n = 7;
    let mut rng = gen::seeded(17);
    for _ in 0..200 {
        let p = gen::permutation(&mut rng, n);
        let q = gen::permutation(&mut rng, n);
        let s_set = Subset::from_indices(p[..3].iter().copied());
        let t_set = Subset::from_indices(q[..3].iter().copied());
        // sorted S to sorted T, sorted Sᶜ to sorted Tᶜ
        let mut sigma = vec![0; n];
        for (x, y) in s_set.iter().zip(t_set.iter()) {
            sigma[x] = y;
        }
        for (x, y) in s_set.complement(n).iter().zip(t_set.complement(n).iter()) {
            sigma[x] = y;
        }
        assert_eq!(two_line_sign(s_set, t_set, n).unwrap() as i64, inversion_sign(&sigma));
    }
}

#[test]
fn laplace_matches_leibniz() {
    let mut rng = gen::seeded(23);
    for n in 2..=5 {
        let a = gen::matrix(&mut rng, n, Field::Rational, 5);
        let det = leibniz_det(&a.rows());
        for m in 1..(1u32 << n) - 1 {
            assert_eq!(laplace_expand(&a, Subset::from_mask(m)).unwrap(), det);
        }
    }
}

#[test]
fn cuts_match_rank_oracle() {
    // rank <= 1 iff every 2x2 minor vanishes
    let rank_le_one = |a: &SquareMatrix, rows: &[usize], cols: &[usize]| {
        rows.iter().all(|&r1| {
            rows.iter().all(|&r2| {
                cols.iter().all(|&c1| cols.iter().all(|&c2| r1 >= r2 || c1 >= c2 || gauss_det(sub_rows(a, &[r1, r2], &[c1, c2])).is_zero()))
            })
        })
    };
    let mut rng = gen::seeded(31);
    for trial in 0..30 {
        let n = 4 + trial % 3;
        let a = if trial % 2 == 0 { gen::planted_cut(&mut rng, n, 3).0 } else { gen::matrix(&mut rng, n, Field::Rational, 1) };
        let mut expect = Vec::new();
        for m in 0..1u32 << n {
            let x = Subset::from_mask(m);
            if x.contains(0) && (2..=n - 2).contains(&x.len()) {
                let (xs, ys) = (x.to_vec(), x.complement(n).to_vec());
                if rank_le_one(&a, &xs, &ys) && rank_le_one(&a, &ys, &xs) {
                    expect.push(x);
                }
            }
        }
        let mut got: Vec<Subset> = find_cuts(&a).unwrap().into_iter().map(|c| c.x).collect();
        got.sort();
        expect.sort();
        assert_eq!(got, expect, "{a:?}");
    }
}

#[test]
fn frobenius_blocks_match_reachability() {
    let mut rng = gen::seeded(37);
    for trial in 0..40 {
        let n = 1 + trial % 7;
        let mut a = gen::matrix(&mut rng, n, Field::Rational, 5);
        // sparsify so that reducible matrices are common
        for i in 0..n {
            for j in 0..n {
                if (i * 7 + j * 3 + trial) % 3 != 0 {
                    a.set(i, j, Scalar::zero());
                }
            }
        }
        let mut reach = vec![vec![false; n]; n];
        for i in 0..n {
            reach[i][i] = true;
            for j in 0..n {
                if !a.get(i, j).is_zero() {
                    reach[i][j] = true;
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if reach[i][k] && reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
        let form = frobenius_form(&a);
        for i in 0..n {
            for j in 0..n {
                let same = form.block_of(i) == form.block_of(j);
                assert_eq!(same, reach[i][j] && reach[j][i], "{a:?}");
                if !a.get(i, j).is_zero() {
                    assert!(form.block_of(i) <= form.block_of(j), "edge points backwards in {a:?}");
                }
            }
        }
        assert_eq!(is_irreducible(&a), form.block_count() == 1);
    }
}

#[test]
fn enumerated_fiber_matches_brute_force_on_full_support() {
    let mut rng = gen::seeded(41);
    for n in [3, 4, 4, 5] {
        let a = gen::full_support(&mut rng, n, Field::Rational, 4);
        let search = enumerate_fiber(&a).unwrap();
        assert!(search.is_complete());
        let mut lib = search.members;
        let mut brute = fiber_by_brute_force(&a);
        let key = |m: &SquareMatrix| m.to_string();
        lib.sort_by_key(key);
        brute.sort_by_key(key);
        assert_eq!(lib, brute, "{a:?}");
    }
    let a = cut_4x4();
    assert_eq!(enumerate_fiber(&a).unwrap().members.len(), fiber_by_brute_force(&a).len());
    assert!(!fiber_is_single_class(&a));
}
