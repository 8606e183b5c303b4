fn main() {
    std::process::exit(ringwing::cli::run(std::env::args_os()));
}
