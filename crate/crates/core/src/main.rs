fn main() {
    let (code, out) = ainfty::cli::run(std::env::args_os());
    print!("{out}");
    std::process::exit(code);
}
