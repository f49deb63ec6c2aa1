//! One line per acceptance criterion. Exits nonzero if any criterion fails in
//! a way other than its recorded known deviation.

use dtl_sl2::acceptance::{run_criterion, DEFAULT_SEED};

fn main() {
    let mut unexpected = Vec::new();
    for id in 1..=13 {
        let r = run_criterion(id, DEFAULT_SEED);
        println!("{}", r.line());
        if !r.acceptable() {
            unexpected.push(id);
        }
        if r.known_deviation.is_some() && id != 11 {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all criteria pass or fail only as recorded");
    } else {
        println!("acceptance: unexpected failures in criteria {unexpected:?}");
        std::process::exit(1);
    }
}
