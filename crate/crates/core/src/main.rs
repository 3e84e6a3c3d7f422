fn main() {
    std::process::exit(curvclass::cli::main_with(std::env::args_os()));
}
