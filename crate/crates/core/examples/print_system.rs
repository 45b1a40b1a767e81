use tbb_core::generate::generic_system;
use tbb_core::scalar::Field;

/// Prints the generic diamond system for one seed in the input format.
fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    for p in generic_system(2, 2, Field::GF32003, seed) {
        println!("{p}");
    }
}
