fn main() {
    std::process::exit(gp_cli::main_with(std::env::args_os()));
}
