fn main() {
    std::process::exit(degenerate_hilfer::cli::main());
}
