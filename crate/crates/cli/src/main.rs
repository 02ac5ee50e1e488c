fn main() {
    std::process::exit(schlicht_cli::run(std::env::args_os()));
}
