fn main() {
    std::process::exit(hybrid_amp::cli::main_with_args(std::env::args_os()));
}
