fn main() {
    std::process::exit(holonomy_lab::cli::run(std::env::args_os()));
}
