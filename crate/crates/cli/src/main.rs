fn main() {
    std::process::exit(sirenless_cli::run(std::env::args_os()));
}
