fn main() {
    std::process::exit(twisted_gabor::cli::main());
}
