fn main() {
    std::process::exit(affdim::cli::run(std::env::args_os()));
}
