fn main() {
    std::process::exit(coning_cli::main_with_args(std::env::args_os().collect()));
}
