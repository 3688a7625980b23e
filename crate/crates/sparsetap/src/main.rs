fn main() {
    std::process::exit(sparsetap::cli::cli(std::env::args().collect()));
}
