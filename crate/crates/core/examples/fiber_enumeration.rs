// Matrices that have a cut and no symmetrizing scaling whose fiber is
// nonetheless a single class, found by searching the whole fiber.

use pmfiber::*;

fn main() {
    let dense = SquareMatrix::from_ints(&[[3, -2, -1, 3], [-5, 5, -5, 3], [-3, -6, -5, 9], [20, -4, 20, -4]]);
    let sparse = SquareMatrix::from_ints(&[[2, 0, -1, 1], [0, 1, -2, 0], [-1, 2, 2, 0], [1, 0, 1, 2]]);

    for a in [&dense, &sparse] {
        let cuts: Vec<String> = find_cuts(a).unwrap().iter().map(|c| c.x.to_string()).collect();
        println!("cuts {}", cuts.join(" "));
        let search = enumerate_fiber(a).unwrap();
        println!("{} members up to diagonal similarity, complete: {}", search.members.len(), search.is_complete());
        for b in &search.members {
            let cert = diagonal_equivalence(a, b).unwrap().expect("single class");
            println!("  member with transposed = {}", cert.transposed);
        }
        let c = classify_fiber(a).unwrap();
        println!("{:?} because {:?}", c.verdict, c.reason);
        assert_eq!(c.reason, FiberReason::ExceptionalCut);
    }

    // the search can fail to decide; that is an error, not a verdict
    let undecided = SquareMatrix::from_ints(&[[1, -2, 1, 0], [-1, -2, -1, 0], [0, 0, 0, 1], [1, -2, 1, 2]]);
    match classify_fiber(&undecided) {
        Err(e) => println!("{e}"),
        Ok(c) => println!("{:?}", c.verdict),
    }
}
