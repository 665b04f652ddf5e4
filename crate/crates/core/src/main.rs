fn main() {
    std::process::exit(eigenrestrict::cli::main_with_args(std::env::args_os()));
}
