fn main() {
    std::process::exit(sfpsd_cli::run_from_args(std::env::args_os()));
}
