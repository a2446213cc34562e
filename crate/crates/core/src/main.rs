fn main() {
    std::process::exit(cnlight::cli::run_command(std::env::args_os()));
}
