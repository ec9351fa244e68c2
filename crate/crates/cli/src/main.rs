fn main() {
    std::process::exit(xedp_cli::run(std::env::args_os()));
}
