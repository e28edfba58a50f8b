//! Driving the command-line surface in process, as a test harness would.
//!
//! cargo run --example cli_in_process

use zetadr::cli;

fn main() {
    let commands: [&[&str]; 5] = [
        &["bernoulli", "--n", "12"],
        &["eval", "--fn", "zeta", "--s", "-1"],
        &["--format", "csv", "identity", "--id", "T5"],
        &["identity", "--id", "T1", "--assert", "rhs", "--tol", "1e-9"],
        &["eval", "--fn", "hurwitz", "--s", "2", "--a", "-1"],
    ];
    for args in commands {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = cli::run(std::iter::once("zetadr").chain(args.iter().copied()), &mut out, &mut err);
        println!("$ zetadr {}  -> exit {code}", args.join(" "));
        print!("{}", String::from_utf8_lossy(&out));
        print!("{}", String::from_utf8_lossy(&err));
        println!();
    }
}
