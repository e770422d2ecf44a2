fn main() {
    std::process::exit(ubpi::cli::run(std::env::args_os()));
}
