fn main() {
    let (code, out) = pmfiber::cli::run(std::env::args_os());
    print!("{out}");
    std::process::exit(code);
}
