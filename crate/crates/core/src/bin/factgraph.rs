fn main() {
    std::process::exit(factgraph::cli::main());
}
