fn main() {
    std::process::exit(mbonacci::cli::run(std::env::args_os()));
}
