// Certificates for B = D A D⁻¹ and B = D Aᵀ D⁻¹.

use pmfiber::*;

fn main() {
    let a = SquareMatrix::from_ints(&[[1, 2, -1], [3, 0, 4], [-2, 5, 1]]);
    let d: Vec<Scalar> = [1, -2, 3].into_iter().map(Scalar::from_int).collect();

    for transposed in [false, true] {
        let base = if transposed { a.transpose() } else { a.clone() };
        let b = base.conjugate_by_diagonal(&d).unwrap();
        let cert = diagonal_equivalence(&a, &b).unwrap().expect("equivalent by construction");
        let d: Vec<String> = cert.d.iter().map(Scalar::to_string).collect();
        println!("transposed = {}, d = [{}]", cert.transposed, d.join(", "));
        assert!(cert.verify(&a, &b));
        assert!(cert.inverse().verify(&b, &a));
    }

    // same minors is not enough
    let b = SquareMatrix::from_ints(&[[2, 1, 1, -2], [-1, 1, 2, -4], [1, -3, 1, 1], [-1, 3, 2, -1]]);
    let a = SquareMatrix::from_ints(&[[2, -1, 1, -2], [1, 1, -3, 6], [1, 2, 1, 1], [-1, -2, 2, -1]]);
    assert_eq!(principal_minors(&a).unwrap(), principal_minors(&b).unwrap());
    assert!(diagonal_equivalence(&a, &b).unwrap().is_none());
    println!("equal minors, no certificate");
}
