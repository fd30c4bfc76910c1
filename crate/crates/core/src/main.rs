fn main() {
    std::process::exit(sdnsim::cli::main_with_args(std::env::args_os()));
}
