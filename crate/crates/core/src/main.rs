fn main() {
    std::process::exit(spinorb::cli::run());
}
