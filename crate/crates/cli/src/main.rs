fn main() {
    std::process::exit(symprice_cli::run(std::env::args_os()));
}
