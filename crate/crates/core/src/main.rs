fn main() {
    std::process::exit(schur_codes::cli::main());
}
