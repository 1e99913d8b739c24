fn main() {
    std::process::exit(repscan_core::cli::main_with_args(std::env::args_os()));
}
