//! Inputs shared by the benchmarks.

use kroncf::PeriodicCF;

/// The three reference blocks plus a longer one with large quotients.
pub fn blocks() -> Vec<(&'static str, PeriodicCF)> {
    [
        ("1,2,3", &[1u64, 2, 3][..]),
        ("1,2,5", &[1, 2, 5]),
        ("1,2,2", &[1, 2, 2]),
        ("3,1,4,1,5", &[3, 1, 4, 1, 5]),
    ]
    .into_iter()
    .map(|(name, q)| (name, PeriodicCF::from_u64s(q).expect("valid block")))
    .collect()
}
