fn main() {
    std::process::exit(multipoint_cli::run(std::env::args_os()));
}
