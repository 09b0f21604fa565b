// Scaling a matrix to a symmetric or Hermitian one, and recovering the
// scaling from the fiber of a symmetric matrix.

use pmfiber::*;

fn main() {
    let s = SquareMatrix::from_ints(&[[1, 2, 0, 1], [2, -1, 3, 0], [0, 3, 4, -2], [1, 0, -2, 2]]);
    let d0: Vec<Scalar> = [1, 2, -3, 5].into_iter().map(Scalar::from_int).collect();
    let a = s.conjugate_by_diagonal(&d0).unwrap();

    let r = symmetrizability(&a);
    println!("{:?}", r.verdict);
    let image = r.image.expect("scalable over Q");
    println!("{image}");
    assert!(image.is_symmetric());

    // the fiber of an irreducible symmetric matrix is one class, so the
    // conjugator comes back up to a global scalar
    let cert = recover_diag_from_fiber(&s, &a).unwrap();
    let scale = &d0[0] / &cert.d[0];
    assert!(cert.d.iter().zip(&d0).all(|(x, y)| &(x * &scale) == y));
    println!("recovered d up to {scale}");

    let h = io::parse_matrix(r#"{"n":2,"field":"Q(i)","entries":[["1","2+i"],["2-i","3"]]}"#).unwrap();
    let dh = vec![Scalar::one(), Scalar::gaussian(0, 2)];
    let b = h.conjugate_by_diagonal(&dh).unwrap();
    let r = hermitian_equivalence(&b);
    println!("{:?}", r.verdict);
    assert!(r.image.unwrap().is_hermitian());

    let single = symmetric_fiber_describe(&s).unwrap();
    println!("symmetric fiber is a single class: {}", single.single_point);
}
