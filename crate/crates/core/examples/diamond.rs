use tbb_core::generate::generic_system;
use tbb_core::scalar::Field;
use tbb_core::solver::{run, SolverConfig};

fn main() {
    let seeds: Vec<u64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let seeds = if seeds.is_empty() { (0..20).collect() } else { seeds };
    for seed in seeds {
        let sys = generic_system(2, 2, Field::GF32003, seed);
        let t = std::time::Instant::now();
        let r = run(&sys, &SolverConfig::default()).unwrap();
        println!(
            "seed {seed}: {:?} rows {:?} rules/degree {:?} in {:?}",
            r.sizes(),
            r.row_counts(),
            r.rules_per_degree(),
            t.elapsed()
        );
        if std::env::var("TRACE").is_ok() {
            println!("{}", r.trace_json_lines());
        }
    }
}
