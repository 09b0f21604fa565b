// Adjugate of diag(x) + A and the polynomial identities it satisfies.

use pmfiber::*;

fn main() {
    let a = SquareMatrix::from_ints(&[[2, -1, 1, -2], [1, 1, -3, 6], [1, 2, 1, 1], [-1, -2, 2, -1]]);
    let g = adjugate_table(&a).unwrap();
    let f = det_poly(&a).unwrap().fpoly;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                println!("G[{},{}] = {}", i + 1, j + 1, g.get(i, j));
            }
        }
    }

    // Rayleigh difference of f splits as G_ij G_ji
    let delta = f.rayleigh_difference(0, 1).unwrap();
    assert_eq!(delta, g.get(0, 1) * g.get(1, 0));
    println!("Δ_12(f) = {delta}");

    // eliminating x_3 from G_12 and f leaves G_13 G_32
    let r = affine_resultant(g.get(0, 1), &f, 2).unwrap();
    assert_eq!(r, g.get(0, 2) * g.get(2, 1));

    // the matrix comes back from its adjugate
    assert_eq!(matrix_from_adjugate(&g, &f).unwrap(), a);

    let report = verify_identities(&a).unwrap();
    println!("{} identity checks, all passed: {}", report.checks.len(), report.all_passed());
    assert!(report.all_passed());
}
