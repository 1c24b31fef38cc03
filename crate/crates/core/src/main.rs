use std::io::Write;

fn main() {
    let outcome = hasse_witt::cli::run_command(std::env::args_os());
    print!("{}", outcome.stdout);
    let _ = std::io::stdout().flush();
    eprint!("{}", outcome.stderr);
    std::process::exit(outcome.code);
}
