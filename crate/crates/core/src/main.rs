fn main() {
    std::process::exit(pcube::cli::run(std::env::args_os()));
}
