use std::io::{BufWriter, Write};

fn main() {
    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut err = std::io::stderr();
    let code = halllab::cli::run(std::env::args(), &mut out, &mut err);
    let _ = out.flush();
    drop(out);
    std::process::exit(code);
}
