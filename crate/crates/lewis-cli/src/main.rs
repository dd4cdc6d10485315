fn main() {
    let (out, code) = lewis_cli::run(std::env::args_os());
    print!("{out}");
    std::process::exit(code);
}
