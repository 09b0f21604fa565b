// Structural real-stability certificates: every irreducible block is
// diagonally similar to a Hermitian matrix.

use pmfiber::*;

fn main() {
    let h = io::parse_matrix(r#"{"n":3,"field":"Q(i)","entries":[["2","1+2i","0"],["1-2i","-1","3i"],["0","-3i","5"]]}"#).unwrap();
    let d = vec![Scalar::one(), Scalar::from_int(2), Scalar::gaussian(0, 3)];
    let b = h.conjugate_by_diagonal(&d).unwrap();

    for (name, m) in [("H", &h), ("D H D⁻¹", &b)] {
        let c = stable_certify(m).unwrap();
        println!("{name}: certified = {}", c.certified);
        for block in &c.blocks {
            println!("  block {} {:?}", block.block, block.result.verdict);
        }
        assert!(c.certified);
    }

    // a non-real diagonal entry can never be certified
    let mut bad = h.clone();
    bad.set(0, 0, Scalar::gaussian(2, 1));
    let c = stable_certify(&bad).unwrap();
    println!("non-real diagonal: certified = {}, failing block {:?}", c.certified, c.failing_block.map(|s| s.to_string()));
    assert!(!c.certified);
}
