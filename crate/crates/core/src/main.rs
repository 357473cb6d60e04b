fn main() {
    std::process::exit(ratperm::cli::run(std::env::args_os()));
}
