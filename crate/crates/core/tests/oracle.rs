//! The definition-level oracle against the algebraic decision.

use trilinear::exactmath::int;
use trilinear::oracle::{fiber, fiber_at_random_target, injectivity_sample, injectivity_witness, normalize_point, proportional};
use trilinear::*;

fn rep(id: &str) -> TriLinearMap {
    atlas().record(&OrbitId::parse(id).unwrap()).unwrap().entries.clone()
}

#[test]
fn fiber_of_an_image_point() {
    let phi = rep("(1,1,1)-4");
    let p = [[int(1), int(1)], [int(1), int(2)], [int(1), int(3)]];
    let f = fiber(&phi, &phi.eval_point(&p), 0).unwrap();
    assert_eq!(f.complex_count, 1);
    assert_eq!(f.rational_points, vec![normalize_point(&p)]);
}

#[test]
fn zero_target_is_rejected() {
    let zero = [int(0), int(0), int(0), int(0)];
    assert_eq!(fiber(&rep("(1,1,1)-1"), &zero, 0), Err(oracle::OracleError::ZeroTarget));
}

#[test]
fn negative_example_has_larger_fibers() {
    let neg = atlas().negative_example().clone();
    let counts: Vec<usize> = (0..5).map(|s| fiber_at_random_target(&neg, s).unwrap().complex_count).collect();
    assert!(counts.iter().any(|&c| c != 1), "{counts:?}");
    assert!(injectivity_witness(&neg, 8, 0).is_some());
}

#[test]
fn representatives_have_one_point_fibers() {
    for r in representatives() {
        for seed in 0..2 {
            let f = fiber_at_random_target(&r.entries, seed).unwrap();
            assert_eq!(f.complex_count, 1, "{} seed {seed}", r.id);
            let q = &f.rational_points[0];
            assert!(proportional(&r.entries.eval_point(q), &f.target));
        }
    }
}

#[test]
fn injectivity_over_many_samples() {
    assert!(injectivity_sample(&rep("(1,1,1)-1"), 100, 3));
    assert!(injectivity_sample(&rep("(2,2,2)-1"), 20, 3));
}

#[test]
fn sampling_is_deterministic() {
    let phi = rep("(1,2,2)-4");
    assert_eq!(fiber_at_random_target(&phi, 11).unwrap(), fiber_at_random_target(&phi, 11).unwrap());
}
