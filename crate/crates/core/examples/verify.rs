use plurilab::verify::Harness;

fn main() {
    let group = std::env::args().nth(1);
    let mut h = Harness::new();
    if let Some(g) = group {
        h = h.filter(g);
    }
    let report = h.run();
    print!("{}", report.to_text());
    std::process::exit(if report.all_passed() { 0 } else { 1 });
}
