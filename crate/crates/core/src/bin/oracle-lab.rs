fn main() {
    std::process::exit(oracle_modality::cli::run(std::env::args_os()));
}
