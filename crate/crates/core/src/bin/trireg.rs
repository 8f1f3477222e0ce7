fn main() {
    std::process::exit(trireg::cli::main_with_args(std::env::args_os()));
}
