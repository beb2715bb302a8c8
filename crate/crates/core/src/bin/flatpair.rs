fn main() {
    std::process::exit(flatpair::cli::run(std::env::args_os()));
}
