use std::io::{Read, Write};
use std::process::ExitCode;

use biring_cli::{run_text, CommandRequest};
use clap::Parser;

fn main() -> ExitCode {
    let req = CommandRequest::parse();
    let text = if let Some(inline) = &req.json {
        inline.clone()
    } else if let Some(path) = &req.input {
        match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("cannot read {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
    } else if req.needs_input() {
        let mut t = String::new();
        if let Err(e) = std::io::stdin().read_to_string(&mut t) {
            eprintln!("cannot read standard input: {e}");
            return ExitCode::from(1);
        }
        t
    } else {
        String::new()
    };
    let outcome = run_text(&req, &text);
    // a closed pipe is not worth a panic
    let _ = writeln!(std::io::stdout(), "{}", outcome.render());
    ExitCode::from(outcome.code as u8)
}
