mod common;

#[test]
fn acceptance() {
    let mut failures = Vec::new();
    for (k, (name, check)) in common::criteria().into_iter().enumerate() {
        match check() {
            Ok(()) => println!("acceptance {} {}: PASS", k + 1, name),
            Err(e) => {
                println!("acceptance {} {}: FAIL ({})", k + 1, name, e);
                failures.push(k + 1);
            }
        }
    }
    assert!(failures.is_empty(), "failing criteria: {:?}", failures);
}
