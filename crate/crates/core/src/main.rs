fn main() {
    std::process::exit(wlab::cli::run(std::env::args_os()));
}
