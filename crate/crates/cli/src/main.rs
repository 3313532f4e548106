fn main() {
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let code = g2n_cli::main_with_args(std::env::args_os(), &mut out);
    drop(out);
    std::process::exit(code);
}
