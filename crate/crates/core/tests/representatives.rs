//! Reference values on the orbit representatives and the negative example.

use trilinear::atlas::{line_census, random_conjugate, AtlasError};
use trilinear::birational::{condition_222, u_polynomial};
use trilinear::exactmath::int;
use trilinear::inverse::jdc_component;
use trilinear::oracle::normalize_point;
use trilinear::syzygy::betti_fingerprint_exact;
use trilinear::triring::{colon_graded_dim, ideal_graded_dim, intersection_graded_dim, slice_contains, Var};
use trilinear::*;

fn rep(id: &str) -> TriLinearMap {
    atlas().record(&OrbitId::parse(id).unwrap()).unwrap().entries.clone()
}

fn neg() -> TriLinearMap {
    atlas().negative_example().clone()
}

fn e(g: usize) -> MultiDegree {
    MultiDegree::e(Axis::from_index(g))
}

fn t(i: usize) -> MultiPoly {
    MultiPoly::var(Var::t(i))
}

#[test]
fn records_carry_the_listed_entries() {
    assert_eq!(representatives().len(), 19);
    assert_eq!(rep("(1,1,1)-4").entry_strings(), ["x1*y1*z1", "x0*y1*z1", "x1*y0*z1", "x1*y1*z0"]);
    let r = atlas().record(&OrbitId::parse("(2,2,2)-1").unwrap()).unwrap();
    let g = parse_poly("x1*y0*z0 + x0*y1*z0 + x0*y0*z1").unwrap();
    assert!(r.base_ideal.iter().all(|c| slice_contains(c, &g)));
}

#[test]
fn linear_systems_have_the_expected_dimension() {
    for r in representatives() {
        let want = match r.id.family {
            Family::T111 => 4,
            Family::T112 => 5,
            Family::T122 => 6,
            Family::T222 => 5,
        };
        assert_eq!(intersection_graded_dim(&r.w_ideal, MultiDegree::ONES), want, "{}", r.id);
        for f in r.entries.entries() {
            assert!(r.w_ideal.iter().all(|c| slice_contains(c, f)), "{}", r.id);
        }
    }
}

#[test]
fn curve_ideal_dimensions() {
    let dims: Vec<(String, usize)> = atlas()
        .curves()
        .iter()
        .map(|c| (c.label.clone(), intersection_graded_dim(&c.components, MultiDegree::ONES)))
        .collect();
    let get = |l: &str| dims.iter().find(|d| d.0 == l).unwrap().1;
    for l in ["1", "3", "6", "7"] {
        assert_eq!(get(l), 4, "curve {l}");
    }
    assert_eq!(get("2"), 3);
    assert_eq!(get("5"), 3);
    // three pairwise disjoint lines: only x0*y1*z0 and x1*y0*z1 survive
    assert_eq!(get("4"), 2);
    assert_eq!(get("8"), 5);
    assert_eq!(get("10"), 5);
    assert_eq!(get("line"), 6);
}

#[test]
fn syzygy_space_dimensions() {
    assert_eq!(syzygy_space(&rep("(1,1,1)-1"), e(0)).dim(), 1);
    assert_eq!(syzygy_space(&rep("(2,2,2)-1"), e(2)).dim(), 0);
    assert_eq!(syzygy_space(&rep("(1,1,2)-1"), e(2)).dim(), 0);
    assert_eq!(new_syzygy_count(&rep("(1,1,2)-1"), e(0).add(e(2))), 1);
    assert_eq!(new_syzygy_count(&rep("(1,1,1)-1"), e(0).add(e(1))), 0);
    assert_eq!(new_syzygy_count(&rep("(2,2,2)-1"), e(0).add(e(1))), 2);
}

#[test]
fn generator_totals_per_family() {
    for r in representatives() {
        let want = match r.id.family {
            Family::T111 => 3,
            Family::T112 => 4,
            Family::T122 => 5,
            Family::T222 => 6,
        };
        assert_eq!(betti_fingerprint_exact(&r.entries, [2, 2, 2]).total_generators(), want, "{}", r.id);
    }
}

#[test]
fn syzygy_substitution_vanishes() {
    let phi = rep("(1,1,1)-4");
    assert_eq!(phi.substitute_t(&t(0)).to_string(), "x1*y1*z1");
    assert!(phi.substitute_t(&parse_poly("x1*t1 - x0*t0").unwrap()).is_zero());
    assert!(phi.substitute_t(&parse_poly("y1*t2 - y0*t0").unwrap()).is_zero());
    assert!(!phi.substitute_t(&parse_poly("x0*t1 - x1*t0").unwrap()).is_zero());
}

#[test]
fn base_points_evaluate_to_zero() {
    let p = [[int(1), int(0)], [int(1), int(0)], [int(1), int(0)]];
    assert!(rep("(1,1,1)-2").eval_point(&p).iter().all(|c| c == &int(0)));
}

#[test]
fn colon_by_the_irrelevant_ideal() {
    let b = rep("(1,1,1)-1").entries().to_vec();
    assert_eq!(colon_graded_dim(&b, MultiDegree::ONES, 1), 4);
    let b2 = rep("(2,2,2)-2").entries().to_vec();
    let k0 = colon_graded_dim(&b2, MultiDegree::ONES, 0);
    let k1 = colon_graded_dim(&b2, MultiDegree::ONES, 1);
    assert_eq!(k0, ideal_graded_dim(&b2, MultiDegree::ONES));
    // the diagonal colon does not grow this slice, even at depth 2
    assert_eq!((k0, k1), (4, 4));
    assert_eq!(colon_graded_dim(&b2, MultiDegree::ONES, 2), 4);
}

#[test]
fn u_polynomials_and_the_linear_factor_condition() {
    let u = u_polynomial(&rep("(2,2,2)-1"), Pair::Xy).unwrap();
    assert!(u.has_linear_factor && u.linear_factor.is_some());
    let (ok, us) = condition_222(&rep("(2,2,2)-1")).unwrap();
    assert!(ok && us.iter().all(|u| u.has_linear_factor));
    assert!(condition_222(&rep("(2,2,2)-2")).unwrap().0);
    let (ok, us) = condition_222(&neg()).unwrap();
    assert!(!ok);
    assert!(us.iter().filter(|u| u.has_linear_factor).count() < 2);
}

#[test]
fn verdicts_on_representatives() {
    let r = decide(&rep("(1,1,1)-1"));
    assert_eq!((r.verdict, r.phi_type), (Verdict::Birational, Some([1, 1, 1])));
    let r = decide(&rep("(1,2,2)-3"));
    assert_eq!((r.verdict, r.phi_type), (Verdict::Birational, Some([1, 2, 2])));
    let r = decide(&neg());
    assert_eq!(r.verdict, Verdict::NotBirational);
    assert!(matches!(r.branch, Branch::Failed { branch: Some(4), .. }));
    assert!(decide_with_dominance(&neg(), 8, 0).verdict == Verdict::NotBirational);
}

#[test]
fn negative_example_has_the_type_222_resolution_shape() {
    let fp = betti_fingerprint_exact(&neg(), [2, 2, 2]);
    let mut g = fp.generator_degrees();
    g.sort();
    assert_eq!(g, [[0, 1, 1], [0, 1, 1], [1, 0, 1], [1, 0, 1], [1, 1, 0], [1, 1, 0]]);
}

#[test]
fn inverse_components() {
    let same = |(a, b): &(MultiPoly, MultiPoly), i: usize, j: usize| {
        a.mul(&t(j)).sub(&b.mul(&t(i))).unwrap().is_zero() && !a.is_zero()
    };
    assert!(same(&jdc_component(&rep("(1,1,1)-4"), Axis::X, 1).unwrap(), 1, 0));
    assert!(same(&jdc_component(&rep("(1,1,1)-3"), Axis::Y, 1).unwrap(), 3, 2));
    assert!(jdc_component(&rep("(1,1,2)-1"), Axis::Z, 1).is_none());
    let (inv, cert) = invert(&rep("(2,2,2)-1")).unwrap();
    assert!(cert.passed());
    assert_eq!(inv.phi_type, [2, 2, 2]);
    for (a, b) in &inv.components {
        assert_eq!((a.degree().d4(), b.degree().d4()), (2, 2));
    }
}

#[test]
fn composition_certificate_cofactors() {
    let phi = rep("(1,1,1)-4");
    let (inv, cert) = invert(&phi).unwrap();
    assert!(cert.passed());
    let s = cert.cofactors[0].as_ref().unwrap();
    let a0 = phi.substitute_t(&inv.components[0].0);
    assert_eq!(a0, MultiPoly::var(Var(0)).mul(s));
    let mut swapped = inv.clone();
    swapped.components[0] = (inv.components[0].1.clone(), inv.components[0].0.clone());
    assert!(!verify_inverse(&phi, &swapped).checks[0]);
}

#[test]
fn classification_of_representatives_and_conjugates() {
    let c = classify(&rep("(1,2,2)-5")).unwrap();
    assert_eq!(c.id.to_string(), "(1,2,2)-5");
    assert_eq!(c.id.permutation, [0, 1, 2]);
    let c = classify(&random_conjugate(&rep("(1,1,1)-2"), 9)).unwrap();
    assert_eq!(c.id.to_string(), "(1,1,1)-2");
    let cyc = rep("(1,1,1)-4").permute_factors([1, 2, 0]);
    let c = classify(&cyc).unwrap();
    assert_eq!(c.id.to_string(), "(1,1,1)-4");
    assert!(matches!(classify(&neg()), Err(AtlasError::NotBirational(_))));
}

#[test]
fn recorded_permutation_relabels_the_representative() {
    for r in representatives() {
        for perm in [[1, 2, 0], [0, 2, 1]] {
            let c = classify(&r.entries.permute_factors(perm)).unwrap();
            let fp = betti_fingerprint(&r.entries.permute_factors(perm), atlas::CLASSIFY_BOX);
            assert!(c.id.same_orbit(&r.id));
            assert_eq!(fp.permuted(c.id.permutation), betti_fingerprint(&r.entries, atlas::CLASSIFY_BOX));
        }
    }
}

#[test]
fn line_census_examples() {
    let c = line_census(&rep("(1,1,1)-4"), Axis::Z).unwrap();
    assert_eq!(c.complex_count, 1);
    assert_eq!(c.lines[0].fixed, [[int(1), int(0)], [int(1), int(0)]]);
    assert_eq!(line_census(&rep("(1,1,1)-1"), Axis::Z).unwrap().complex_count, 0);
    let c = line_census(&rep("(1,1,2)-3"), Axis::X).unwrap();
    assert_eq!(c.complex_count, 1);
    assert_eq!(c.lines[0].fixed, [[int(1), int(0)], [int(1), int(0)]]);
}

#[test]
fn contact_points() {
    let one = [int(1), int(0)];
    for id in ["(2,2,2)-1", "(2,2,2)-2"] {
        let c = contact_point(&rep(id)).unwrap();
        assert_eq!(c.q, [one.clone(), one.clone(), one.clone()], "{id}");
    }
    let c = contact_point(&rep("(2,2,2)-1")).unwrap();
    assert_eq!(c.lambda_mu_nu, [int(1), int(1), int(1)]);
    let m = |a: i64, b: i64, c: i64, d: i64| [[int(a), int(b)], [int(c), int(d)]];
    let xi = Automorphism::new([0, 1, 2], [m(1, 0, 1, 1), m(2, 0, 1, 1), m(0, 1, 1, 0)]);
    let moved = rep("(2,2,2)-1").compose_right(&xi.inverse());
    let want = normalize_point(&[[int(1), int(1)], [int(2), int(1)], [int(0), int(1)]]);
    assert_eq!(contact_point(&moved).unwrap().q, want);
    assert!(matches!(contact_point(&rep("(1,2,2)-1")), Err(AtlasError::NotType222(_))));
}

#[test]
fn degeneration_edges() {
    let has = |a: &str, b: &str| {
        let (a, b) = (OrbitId::parse(a).unwrap(), OrbitId::parse(b).unwrap());
        degenerations().iter().any(|e| e.from.same_orbit(&a) && e.to.same_orbit(&b))
    };
    assert!(has("(1,2,2)-8", "(1,1,1)-2"));
    assert!(!has("(1,2,2)-6", "(1,1,1)-2"));
    assert!(has("(2,2,2)-1", "(1,1,2)-2") || has("(2,2,2)-2", "(1,1,2)-2"));
    for e in degenerations() {
        assert!(atlas().record(&e.from).is_ok() && atlas().record(&e.to).is_ok());
        assert!(!e.source_citation.is_empty());
    }
}

#[test]
fn random_members_are_deterministic_and_birational() {
    for r in representatives() {
        let a = random_in_orbit(&r.id, 7).unwrap();
        assert_eq!(a, random_in_orbit(&r.id, 7).unwrap());
        let ty = decide(&a).phi_type.unwrap();
        let mut s = ty;
        s.sort();
        assert_eq!(s, r.id.family.phi_type(), "{}", r.id);
    }
}

#[test]
fn fixture_file_override() {
    let dir = std::env::temp_dir().join(format!("trilinear-fixtures-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fixtures.toml");
    std::fs::write(&path, atlas::EMBEDDED_FIXTURES).unwrap();
    assert_eq!(Atlas::from_path(&path).unwrap().records().len(), 19);
    let broken = atlas::EMBEDDED_FIXTURES.replacen("x1*y1*z1", "x0*x1*y1*z1", 1);
    std::fs::write(&path, broken).unwrap();
    assert!(matches!(Atlas::from_path(&path), Err(AtlasError::Fixture(_))));
    assert!(matches!(Atlas::from_path(&dir.join("missing.toml")), Err(AtlasError::Fixture(_))));
    std::fs::remove_dir_all(&dir).unwrap();
}
