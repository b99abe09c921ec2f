fn main() {
    std::process::exit(kroncf_cli::main_with_args(std::env::args_os()));
}
