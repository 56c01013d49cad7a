use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use qpp_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let doc = run(&cli);
    let text = if cli.human {
        doc.to_human()
    } else {
        doc.to_json()
    };
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_all(text.as_bytes())
        .and_then(|()| stdout.flush())
        .is_err()
    {
        return ExitCode::from(qpp_cli::exit::IO as u8);
    }
    ExitCode::from(doc.exit_code() as u8)
}
