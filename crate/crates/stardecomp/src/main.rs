fn main() {
    std::process::exit(stardecomp::cli::run(std::env::args_os()));
}
