fn main() {
    std::process::exit(nls_lri::cli::main_with_args(std::env::args_os()));
}
