fn main() {
    std::process::exit(polymul_cli::main_with(std::env::args_os()));
}
