fn main() {
    std::process::exit(helgason_moire::cli::run(std::env::args_os()));
}
