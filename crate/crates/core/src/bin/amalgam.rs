fn main() {
    std::process::exit(amalgam::cli::main_with_args(std::env::args_os()));
}
