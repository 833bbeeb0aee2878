fn main() {
    std::process::exit(musb::cli::run(std::env::args_os()));
}
