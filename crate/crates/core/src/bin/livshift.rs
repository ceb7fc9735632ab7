fn main() { std::process::exit(livshift::cli::run(std::env::args_os())); }
