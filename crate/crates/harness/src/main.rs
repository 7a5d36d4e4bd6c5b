fn main() {
    std::process::exit(gruenwald_harness::cli::run(std::env::args().collect()));
}
