fn main() {
    std::process::exit(hhlab_cli::run(std::env::args_os()));
}
