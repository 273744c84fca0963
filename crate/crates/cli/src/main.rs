fn main() {
    std::process::exit(coxwalls_cli::run(std::env::args_os()));
}
