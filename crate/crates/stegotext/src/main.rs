use std::process::ExitCode;

fn main() -> ExitCode {
    stegotext::cli::main_entry()
}
