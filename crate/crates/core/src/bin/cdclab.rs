fn main() {
    std::process::exit(cdclab::cli::cli_main(std::env::args_os()));
}
