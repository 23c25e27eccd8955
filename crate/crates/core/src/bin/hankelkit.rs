fn main() {
    std::process::exit(hankelkit::cli::main_with_args(std::env::args_os()));
}
