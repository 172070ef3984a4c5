fn main() {
    std::process::exit(qramanujan_cli::run(std::env::args_os()));
}
