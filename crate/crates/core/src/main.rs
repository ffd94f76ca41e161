fn main() {
    let args: Vec<String> = std::env::args().collect();
    let code = herdisc::cli::run(&args, &mut std::io::stdout().lock());
    std::process::exit(code);
}
