//! Regenerates `data/seed_catalog.tle`, the synthetic TLE snapshot that
//! ships with the repository.
//!
//!     cargo run -p orbitguard-cli --example make_seed_catalog -- data/seed_catalog.tle
//!
//! The snapshot is produced by the population sampler with a fixed seed,
//! so the file is reproducible byte for byte.

use orbitguard::dynamics::GravParam;
use orbitguard::ingest::synth::sample_population;
use orbitguard::ingest::{elements_to_tle_record, format_tle};

const OBJECTS: usize = 2000;
const SEED: u64 = 20180403;

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "data/seed_catalog.tle".to_string());
    let mu = GravParam::default();
    let mut text = String::new();
    for obj in sample_population(OBJECTS, SEED, 1.0) {
        let rec = elements_to_tle_record(&obj.elements, obj.id.0, mu);
        let (l1, l2) = format_tle(&rec);
        text.push_str(&format!("SYNTH-{:05}\n{l1}\n{l2}\n", obj.id.0));
    }
    std::fs::write(&path, text).expect("write seed catalog");
    println!("wrote {OBJECTS} objects to {path}");
}
