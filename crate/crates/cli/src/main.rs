use clap::Parser;
use hocat_cli::{main_with, Cli};

fn main() {
    let cli = Cli::parse();
    let (out, code) = main_with(&cli);
    if code == 2 && !cli.json {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    std::process::exit(code);
}
