fn main() {
    std::process::exit(recordlab::cli::run(std::env::args().collect()));
}
