fn main() {
    std::process::exit(biharmonic::cli::main_with_args(std::env::args_os()));
}
