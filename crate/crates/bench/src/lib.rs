//! Shared inputs for the benchmarks.

use trilinear::atlas::random_conjugate;
use trilinear::{atlas, OrbitId, TriLinearMap};

/// The representative of `id`.
pub fn representative(id: &str) -> TriLinearMap {
    atlas().record(&OrbitId::parse(id).expect("orbit id")).expect("known orbit").entries.clone()
}

/// A fixed member of the orbit of `id` in general coordinates.
pub fn conjugate(id: &str, seed: u64) -> TriLinearMap {
    random_conjugate(&representative(id), seed)
}

/// One general member per family plus the negative example.
pub fn workload() -> Vec<(&'static str, TriLinearMap)> {
    let mut v: Vec<(&'static str, TriLinearMap)> = ["(1,1,1)-1", "(1,1,2)-1", "(1,2,2)-1", "(2,2,2)-1"]
        .into_iter()
        .map(|id| (id, conjugate(id, 1)))
        .collect();
    v.push(("negative", atlas().negative_example().clone()));
    v
}
