use std::time::Instant;
fn main() {
    let t0 = Instant::now();
    let report = specine::verify::run_suite(specine::verify::SuiteConfig::default());
    println!("{report}");
    println!("total {:?}", t0.elapsed());
    std::process::exit(if report.all_pass() { 0 } else { 1 });
}
