// quick timing probe for the n=7 labeled oracle
use std::time::Instant;
fn main() {
    let t0 = Instant::now();
    let (all, conn) = specine::graphs::unlabeled_counts_by_filter(7).unwrap();
    println!("n=7 oracle: all={all} connected={conn} in {:?}", t0.elapsed());
    let t1 = Instant::now();
    let e = specine::graphs::enumerate_all(8).unwrap();
    let conn8 = specine::graphs::enumerate_connected(8).unwrap().len();
    println!("n=8 enumerate: all={} connected={conn8} in {:?}", e.len(), t1.elapsed());
}
