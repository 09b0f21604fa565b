// The randomized property suites behind `pmfiber selftest`.

fn main() {
    let report = pmfiber::selftest::run(5, 20, 42);
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    assert!(report.all_passed());
}
