fn main() {
    std::process::exit(cuspmap::cli::run(std::env::args_os()));
}
