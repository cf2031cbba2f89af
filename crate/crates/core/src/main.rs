fn main() {
    std::process::exit(carlitz_core::cli::run(std::env::args_os()));
}
