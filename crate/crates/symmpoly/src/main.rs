fn main() {
    let code = symmpoly::cli::run(std::env::args_os());
    std::process::exit(code);
}
