fn main() {
    std::process::exit(superirr_cli::main_with(std::env::args()));
}
