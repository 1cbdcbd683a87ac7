fn main() {
    std::process::exit(btk::cli::main_with_args(std::env::args_os()));
}
