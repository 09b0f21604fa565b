// A cut with no symmetrizing scaling yields a second fiber point by
// swapping rank-one factors of the adjugate.

use pmfiber::*;

fn main() {
    let a = SquareMatrix::from_ints(&[[2, -1, 1, -2], [1, 1, -3, 6], [1, 2, 1, 1], [-1, -2, 2, -1]]);
    for cut in find_cuts(&a).unwrap() {
        println!("cut X = {} (ranks {} and {})", cut.x, cut.rank_x_xc, cut.rank_xc_x);
    }

    let x = Subset::from_indices([0, 1]);
    let split = rank_one_split(&adjugate_table(&a).unwrap(), x).unwrap();
    for (i, p) in &split.b {
        println!("b_{} = {p}", i + 1);
    }

    let w = cut_swap_witness(&a, x).unwrap();
    println!("witness:\n{}", w.matrix);
    assert_eq!(principal_minors(&w.matrix).unwrap(), principal_minors(&a).unwrap());
    assert!(diagonal_equivalence(&a, &w.matrix).unwrap().is_none());

    let c = classify_fiber(&a).unwrap();
    println!("{:?} because {:?}", c.verdict, c.reason);
    assert_eq!(c.verdict, FiberVerdict::MultiPoint);
}
