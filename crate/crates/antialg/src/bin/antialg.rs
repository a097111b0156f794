fn main() {
    std::process::exit(antialg::cli::run(std::env::args_os()));
}
