fn main() {
    std::process::exit(klucas_cli::run(std::env::args_os()));
}
