fn main() {
    std::process::exit(dacinl::cli::run())
}
