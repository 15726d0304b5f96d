//! `surreal`: run calculator commands from `-c`, a script file, or stdin.

use std::io::IsTerminal;
use std::process::ExitCode;

use clap::Parser;
use surreal_skand::cli::{run_line, run_lines, run_script, Options};

#[derive(Parser)]
#[command(
    name = "surreal",
    version,
    about = "Surreal numbers, ordinals, gaps and skands"
)]
struct Args {
    /// Print results as JSON.
    #[arg(long)]
    json: bool,
    /// Terms kept by truncating operations.
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    max_terms: u64,
    /// Nesting shown in brace previews and default coordinate count.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    depth: u64,
    /// Stop at the first failing line.
    #[arg(long)]
    strict: bool,
    /// Run a single command (repeatable).
    #[arg(short = 'c', value_name = "COMMAND")]
    commands: Vec<String>,
    /// Script with one command per line.
    script: Option<String>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let opts = Options {
        json: args.json,
        max_terms: args.max_terms as usize,
        depth: args.depth as usize,
        strict: args.strict,
    };
    let code = if !args.commands.is_empty() {
        let mut status = 0;
        for c in &args.commands {
            match run_line(c, &opts) {
                Ok(s) => println!("{s}"),
                Err(e) => {
                    eprintln!("{}", e.render(c));
                    status = status.max(e.exit_code());
                    if opts.strict {
                        break;
                    }
                }
            }
        }
        status
    } else if let Some(path) = &args.script {
        run_script(path, &opts)
    } else {
        let stdin = std::io::stdin();
        let prompt = stdin.is_terminal();
        run_lines(
            stdin.lock(),
            &mut std::io::stdout().lock(),
            &mut std::io::stderr().lock(),
            &opts,
            prompt,
        )
    };
    ExitCode::from(code as u8)
}
