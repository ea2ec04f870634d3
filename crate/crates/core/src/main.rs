fn main() {
    std::process::exit(bunchcheck::cli::main());
}
