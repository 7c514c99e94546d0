fn main() {
    std::process::exit(halfint::cli::run(std::env::args_os()));
}
