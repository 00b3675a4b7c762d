fn main() {
    std::process::exit(hybridcomb::cli::run(std::env::args_os()));
}
