use clap::Parser;

fn main() {
    let code = pathgen::cli::run(pathgen::cli::Cli::parse());
    std::process::exit(code);
}
