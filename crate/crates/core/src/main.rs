fn main() {
    std::process::exit(eta_meta::cli::run(std::env::args_os()));
}
