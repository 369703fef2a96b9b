mod common;

use std::time::Instant;

#[test]
fn property_suite() {
    let mut failed = Vec::new();
    for (name, check) in common::SUITE {
        let t = Instant::now();
        let r = check();
        println!("{name}: {} ({:.2?})", if r.is_ok() { "ok" } else { "FAILED" }, t.elapsed());
        if let Err(e) = r {
            failed.push(format!("{name}: {e}"));
        }
    }
    assert!(failed.is_empty(), "{failed:#?}");
}
