fn main() {
    std::process::exit(genobound_cli::run(std::env::args_os()));
}
