fn main() {
    std::process::exit(replica::cli::run(std::env::args_os()));
}
