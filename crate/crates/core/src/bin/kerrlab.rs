fn main() {
    std::process::exit(kerrlab::cli::run(std::env::args_os()));
}
