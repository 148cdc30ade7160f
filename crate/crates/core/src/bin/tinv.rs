use std::io::Write;

use clap::Parser;
use tinv::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let (text, code) = run(&cli);
    // A closed pipe is not worth a panic.
    let _ = if code == 0 || code == 3 {
        writeln!(std::io::stdout().lock(), "{text}")
    } else {
        writeln!(std::io::stderr().lock(), "{text}")
    };
    std::process::exit(code);
}
