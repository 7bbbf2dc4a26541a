fn main() {
    std::process::exit(cusick::cli::run_cli(std::env::args_os()));
}
