use std::io::Write;

fn main() {
    let out = superdensity::cli::run(std::env::args_os());
    // a closed pipe on the reader side is not an error
    let _ = if out.code == 0 {
        writeln!(std::io::stdout(), "{}", out.body)
    } else {
        writeln!(std::io::stderr(), "{}", out.body)
    };
    std::process::exit(out.code);
}
