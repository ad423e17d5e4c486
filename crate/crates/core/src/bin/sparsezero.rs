fn main() {
    std::process::exit(sparsezero::cli::main_with_args(std::env::args_os()));
}
