use std::io::{stderr, stdout};
use std::process::exit;

fn main() {
    let code = nilorbit::cli::run(std::env::args(), &mut stdout().lock(), &mut stderr().lock());
    exit(code);
}
