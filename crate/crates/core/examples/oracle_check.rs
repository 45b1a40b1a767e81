use std::time::Instant;

use tbb_core::generate::random_sparse_system;
use tbb_core::oracle::TruncatedIdealSpan;
use tbb_core::scalar::Field;
use tbb_core::solver::{run, SolverConfig};

fn main() {
    let args: Vec<u32> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let bound = args.first().copied().unwrap_or(10);
    let count = args.get(1).copied().unwrap_or(50) as u64;
    let all = Instant::now();
    for seed in 0..count {
        let sys = random_sparse_system(2, 2, 2, 0.5, Field::GF32003, seed);
        let t = Instant::now();
        let r = run(&sys, &SolverConfig::default()).unwrap();
        let ts = t.elapsed();
        let t = Instant::now();
        let span = TruncatedIdealSpan::build(&sys, bound);
        println!(
            "seed {seed}: solver {:?} ({ts:?}) oracle {:?} {:?} ({:?})",
            r.sizes(),
            span.stable_dim(),
            span.hilbert(),
            t.elapsed()
        );
    }
    println!("total {:?}", all.elapsed());
}
