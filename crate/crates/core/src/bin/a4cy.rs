fn main() {
    std::process::exit(a4cy::cli::cli_main(std::env::args_os()));
}
