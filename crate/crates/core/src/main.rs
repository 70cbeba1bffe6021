fn main() {
    std::process::exit(specint::cli::run(std::env::args_os()));
}
