fn main() {
    std::process::exit(wrig::cli::run());
}
