use clap::Parser;

use semiinv_cli::{run, Cli, CommandConfig, EXIT_INPUT, THREADS_ENV};

fn main() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        // Ignore failure: the pool may already be initialized.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors; bad arguments are input errors.
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let (code, out) = run(&CommandConfig::from(cli));
    print!("{out}");
    std::process::exit(code);
}
