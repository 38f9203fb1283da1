fn main() {
    std::process::exit(johnson_cli::run(std::env::args_os()));
}
