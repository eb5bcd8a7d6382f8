use std::io::{self, Write};

use clap::Parser;
use curveaut::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let report = run(&cli);
    let written = if cli.json {
        let text = serde_json::to_string_pretty(&report.json).expect("report serialises");
        writeln!(io::stdout().lock(), "{text}")
    } else if report.exit_code == 0 {
        writeln!(io::stdout().lock(), "{}", report.text)
    } else {
        writeln!(io::stderr().lock(), "{}", report.text)
    };
    // A closed pipe (`| head`) is not an error worth reporting.
    if let Err(e) = written {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
    std::process::exit(report.exit_code);
}
