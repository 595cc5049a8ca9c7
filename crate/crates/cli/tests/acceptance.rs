use formring_cli::selftest::criteria;

fn main() {
    let mut failed = Vec::new();
    for c in criteria() {
        let res = c.run();
        println!("{res}");
        if !res.passed {
            failed.push(res.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria passed");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
