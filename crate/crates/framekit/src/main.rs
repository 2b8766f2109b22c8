fn main() {
    let (code, out) = framekit::run(std::env::args_os());
    if code == 1 {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    std::process::exit(code);
}
