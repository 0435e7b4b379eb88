fn main() {
    std::process::exit(quasilocal_cli::run(std::env::args_os()));
}
