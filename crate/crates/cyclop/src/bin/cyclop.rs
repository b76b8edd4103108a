fn main() {
    std::process::exit(cyclop::cli::run(std::env::args().skip(1)));
}
