fn main() {
    std::process::exit(qwadg::cli::run(std::env::args_os()));
}
