fn main() {
    std::process::exit(ratl2::cli::main_with_args(std::env::args_os()));
}
