fn main() {
    let code = noethops::frontend::run_cli(std::env::args_os());
    std::process::exit(code);
}
