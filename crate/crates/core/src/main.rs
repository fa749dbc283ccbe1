use std::process::ExitCode;

fn main() -> ExitCode {
    pmi_subspace::cli::main()
}
