// Frobenius normal form of a reducible 6x6 matrix, the factorization of
// f_A over its blocks, and the template of its fiber.

use pmfiber::*;

fn main() {
    let a = SquareMatrix::from_ints(&[
        [1, -3, 3, -2, -1, 2],
        [0, -3, 5, 1, 0, 2],
        [0, 0, 4, 0, 0, -4],
        [0, 1, 2, 1, 0, 5],
        [1, 0, -1, 6, 2, 4],
        [0, 0, 2, 0, 0, 3],
    ]);
    let report = structure_check(&a).unwrap();
    for (block, factor) in report.form.blocks.iter().zip(&report.factors) {
        println!("block {block}: {factor}");
    }
    assert!(report.passed());
    println!("permuted:\n{}", report.form.permuted);

    let shape = fiber_shape(&a).unwrap();
    for &(p, q) in &shape.free_blocks {
        println!("upper block ({}, {}) is free", p + 1, q + 1);
    }

    // any fill of the free blocks stays in the fiber
    let mut rng = gen::seeded(5);
    let b = shape.sample(&mut rng, 9);
    assert_eq!(principal_minors(&b).unwrap(), principal_minors(&a).unwrap());
    let c = classify_fiber(&a).unwrap();
    println!("{:?} via {:?}", c.verdict, c.witness_source);
}
