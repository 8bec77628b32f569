fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(jlbk_cli::run_command(&args));
}
