use std::process::ExitCode;

use clap::Parser;
use dtuple::cli::{self, Cli};
use dtuple::RunReport;
use serde_json::json;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            let mut rep = RunReport::new("invalid", json!(std::env::args().collect::<Vec<_>>()));
            rep.fail("InvalidArgument", e.kind().to_string(), serde_json::Value::Null);
            println!("{}", serde_json::to_string_pretty(&rep.to_json()).expect("plain data"));
            return ExitCode::from(1);
        }
    };
    let rep = cli::run(cli);
    println!("{}", serde_json::to_string_pretty(&rep.to_json()).expect("plain data"));
    ExitCode::from(rep.exit_code() as u8)
}
