use std::time::Instant;

use tbb_core::generate::{generic_system, random_sparse_system};
use tbb_core::oracle::oracle_quotient_dim;
use tbb_core::scalar::Field;
use tbb_core::solver::{run, SolverConfig};

fn main() {
    let bound: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    for seed in 0..6u64 {
        let systems = [
            ("generic", generic_system(3, 1, Field::GF32003, seed)),
            ("sparse", random_sparse_system(3, 1, 3, 0.4, Field::GF32003, seed)),
        ];
        for (name, sys) in systems {
            let t = Instant::now();
            let r = run(&sys, &SolverConfig::default()).unwrap();
            let ts = t.elapsed();
            let t = Instant::now();
            let o = oracle_quotient_dim(&sys, bound);
            println!("{name} {seed}: {:?} {:?} ({ts:?}) oracle {o:?} ({:?})", r.sizes(), std::mem::discriminant(&r.outcome), t.elapsed());
        }
    }
}
