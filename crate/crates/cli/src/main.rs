use std::io::Write;
use std::process::ExitCode;

use arclen_cli::{parse, run, Format, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match parse(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK } as u8);
        }
    };

    let echo = argv[1..].join(" ");
    let outcome = run(&cli.command, &echo);
    let out = cli.command.output();
    let text = match out.format {
        Format::Csv => outcome.table.to_csv(),
        Format::Json => outcome.table.to_json(),
    };
    let written = match &out.output {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("arclen: failed to write report: {e}");
        return ExitCode::from(EXIT_FAILURE as u8);
    }
    ExitCode::from(outcome.exit_code as u8)
}
