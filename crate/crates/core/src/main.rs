use std::io;

use fuzzym::cli;

fn main() {
    let norm = std::env::var(cli::NORM_OVERRIDE_VAR).ok();
    let code = cli::run(
        std::env::args_os(),
        norm.as_deref(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    std::process::exit(code);
}
