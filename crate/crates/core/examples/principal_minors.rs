// All principal minors of a 4x4 matrix and its determinantal polynomial.

use pmfiber::*;

fn main() {
    let a = SquareMatrix::from_ints(&[[2, -1, 1, -2], [1, 1, -3, 6], [1, 2, 1, 1], [-1, -2, 2, -1]]);
    let phi = principal_minors(&a).unwrap();
    for (s, v) in phi.iter() {
        println!("A{s} = {v}");
    }

    // coefficient of the monomial over the complement of S is A_S
    let f = det_poly(&a).unwrap().fpoly;
    println!("f_A = {f}");
    let s = Subset::from_indices([0, 2]);
    assert_eq!(&f.coefficient_of(s.complement(4)).unwrap(), phi.get(s));

    // diagonal similarity and transposition leave every minor unchanged
    let d: Vec<Scalar> = [1, -3, 2, 5].into_iter().map(Scalar::from_int).collect();
    let b = a.transpose().conjugate_by_diagonal(&d).unwrap();
    assert_eq!(principal_minors(&b).unwrap(), phi);
    println!("D Aᵀ D⁻¹ has the same minors");
}
