//! Runs the bundled corpus and prints one line per case with its runtime.

use std::time::Instant;

use fixedloci_core::corpus::{parse_corpus, run_case, BUNDLED_CORPUS};

fn main() {
    let cases = parse_corpus(BUNDLED_CORPUS).expect("bundled corpus parses");
    for (i, case) in cases.iter().enumerate() {
        let start = Instant::now();
        let outcome = run_case(i, case);
        println!("{:?}\t{:>8.3}s\t{}", outcome.status, start.elapsed().as_secs_f64(), outcome.name);
    }
}
