fn main() {
    std::process::exit(kneading::cli::main_with(std::env::args_os()));
}
