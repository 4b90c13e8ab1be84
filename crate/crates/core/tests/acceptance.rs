//! One line per acceptance criterion; the target fails if any criterion does.

use godan::acceptance::run_criterion;

fn main() {
    let mut failed = Vec::new();
    for id in 1..=10 {
        let v = run_criterion(id);
        println!("{}", v.line());
        if !v.pass {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 10 criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
