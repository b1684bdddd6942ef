fn main() {
    std::process::exit(sinembed::cli::run(std::env::args_os()));
}
