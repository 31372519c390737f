use std::process::ExitCode;

fn main() -> ExitCode {
    let run = hypertree_lab::cli::run(std::env::args_os());
    print!("{}", run.stdout);
    eprint!("{}", run.stderr);
    ExitCode::from(run.code as u8)
}
