fn main() {
    std::process::exit(qlow::cli::run(std::env::args_os()));
}
