fn main() {
    let code = macdonald_hc::cli::run_args(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
