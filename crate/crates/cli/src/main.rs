use clap::Parser;

fn main() {
    let code = foldkit_cli::run(foldkit_cli::Cli::parse());
    std::process::exit(code);
}
