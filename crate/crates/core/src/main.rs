fn main() {
    std::process::exit(medqual::cli::run(std::env::args_os()));
}
