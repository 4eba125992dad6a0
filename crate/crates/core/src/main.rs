fn main() {
    std::process::exit(autosemi::cli::main());
}
