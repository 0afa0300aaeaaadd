fn main() {
    std::process::exit(aswtower::cli::main_with_args(std::env::args_os()));
}
