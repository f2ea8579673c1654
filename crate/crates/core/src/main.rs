fn main() {
    std::process::exit(signedperm::cli::run(std::env::args()));
}
