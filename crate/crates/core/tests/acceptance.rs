//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! All comparisons are exact. The only numeric tolerance is the runtime bound
//! of criterion 1 (one second per map).

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use trilinear::atlas::{orbit_dimension, random_conjugate};
use trilinear::oracle::{fiber_at_random_target, random_automorphism, random_left_factor};
use trilinear::syzygy::betti_fingerprint_exact;
use trilinear::triring::intersection_graded_dim;
use trilinear::*;

const DECIDE_BUDGET: Duration = Duration::from_secs(1);

/// Criteria whose expected values cannot hold, with the reason. They are run
/// and reported as FAIL; the suite only insists that they still fail.
const UNATTAINABLE: [(usize, &str); 1] = [(
    8,
    "curve 4, three pairwise disjoint lines (x1,y1), (x0,z1), (y0,z0), has only the monomials \
     x0*y1*z0 and x1*y0*z1 in tri-degree (1,1,1), so its slice has dimension 2, not 3",
)];

type Outcome = Result<String, String>;

fn fam_counts() -> [usize; 4] {
    Family::ALL.map(|f| representatives().iter().filter(|r| r.id.family == f).count())
}

fn criterion_1() -> Outcome {
    let counts = fam_counts();
    if counts != [4, 5, 8, 2] {
        return Err(format!("family sizes {counts:?}"));
    }
    let mut slowest = Duration::ZERO;
    for r in representatives() {
        let t = Instant::now();
        let rep = decide(&r.entries);
        slowest = slowest.max(t.elapsed());
        if !rep.is_birational() || rep.phi_type != Some(r.id.family.phi_type()) {
            return Err(format!("{}: {} {:?} ({})", r.id, rep.verdict, rep.phi_type, rep.branch));
        }
    }
    if slowest >= DECIDE_BUDGET {
        return Err(format!("slowest decide took {slowest:?}"));
    }
    Ok(format!("19 maps, families 4/5/8/2, slowest {slowest:.2?}"))
}

fn sorted(mut v: Vec<[u32; 3]>) -> Vec<[u32; 3]> {
    v.sort();
    v
}

fn criterion_2() -> Outcome {
    let neg = atlas().negative_example();
    let rep = decide(neg);
    let branch_ok = matches!(&rep.branch, Branch::Failed { branch: Some(4), reason } if reason.contains("Condition"));
    if rep.verdict != Verdict::NotBirational || !branch_ok {
        return Err(format!("{} via {}", rep.verdict, rep.branch));
    }
    let gens = sorted(betti_fingerprint_exact(neg, [2, 2, 2]).generator_degrees());
    let want = sorted(vec![[1, 1, 0], [1, 1, 0], [1, 0, 1], [1, 0, 1], [0, 1, 1], [0, 1, 1]]);
    if gens != want {
        return Err(format!("new syzygies {gens:?}"));
    }
    Ok(format!("not_birational via {}; new syzygies e_i+e_j twice each", rep.branch))
}

fn criterion_3() -> Outcome {
    let want: [(Family, Vec<[u32; 3]>); 4] = [
        (Family::T111, vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
        (Family::T112, vec![[1, 0, 0], [0, 1, 0], [1, 0, 1], [0, 1, 1]]),
        (Family::T122, vec![[1, 0, 0], [1, 1, 0], [1, 0, 1], [0, 1, 1], [0, 1, 1]]),
        (Family::T222, vec![[1, 1, 0], [1, 1, 0], [1, 0, 1], [1, 0, 1], [0, 1, 1], [0, 1, 1]]),
    ];
    for (fam, w) in want {
        let id = OrbitId::new(fam, 1).unwrap();
        let r = atlas().record(&id).unwrap();
        let got = sorted(betti_fingerprint_exact(&r.entries, [2, 2, 2]).generator_degrees());
        if got != sorted(w) {
            return Err(format!("{id}: {got:?}"));
        }
    }
    Ok("first representative of each family matches its resolution display".into())
}

/// `(a : b)` equals `(c : d)` as a pair of forms up to a common scalar.
fn same_pair(a: &MultiPoly, b: &MultiPoly, c: &MultiPoly, d: &MultiPoly) -> bool {
    !a.is_zero() && a.mul(d).sub(&b.mul(c)).map(|p| p.is_zero()).unwrap_or(false)
}

fn criterion_4() -> Outcome {
    let mut maps: Vec<(String, TriLinearMap)> = Vec::new();
    for r in representatives() {
        maps.push((r.id.to_string(), r.entries.clone()));
        for s in 0..5 {
            maps.push((format!("{} seed {s}", r.id), random_conjugate(&r.entries, s)));
        }
    }
    let failures: Vec<String> = maps
        .par_iter()
        .filter_map(|(name, phi)| match invert(phi) {
            Ok((_, cert)) if cert.passed() => None,
            Ok(_) => Some(format!("{name}: certificate failed")),
            Err(e) => Some(format!("{name}: {e}")),
        })
        .collect();
    if !failures.is_empty() {
        return Err(failures.join("; "));
    }
    let t = |i: usize| MultiPoly::var(triring::Var::t(i));
    let expected = [
        ("(1,1,1)-3", [(1, 0), (3, 2), (2, 0)]),
        ("(1,1,1)-4", [(1, 0), (2, 0), (3, 0)]),
    ];
    for (id, pairs) in expected {
        let r = atlas().record(&OrbitId::parse(id).unwrap()).unwrap();
        let (inv, _) = invert(&r.entries).map_err(|e| e.to_string())?;
        for (g, (i, j)) in pairs.iter().enumerate() {
            let (a, b) = &inv.components[g];
            if !same_pair(a, b, &t(*i), &t(*j)) {
                return Err(format!("{id} component {g}: ({a} : {b})"));
            }
        }
    }
    Ok(format!("{} certificates pass; monomial inverses exact", maps.len()))
}

fn criterion_5() -> Outcome {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let jobs: Vec<(usize, u64)> = (0..representatives().len()).flat_map(|i| (0..10).map(move |s| (i, s))).collect();
    let failures: Vec<String> = jobs
        .par_iter()
        .filter_map(|&(i, seed)| {
            let r = &representatives()[i];
            let ty = r.id.family.phi_type();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let xi = random_automorphism(&mut rng, false);
            let a = random_left_factor(&mut rng);
            let conj = r.entries.compose_right(&xi).compose_left(&a).expect("invertible");
            let rep = decide(&conj);
            if !rep.is_birational() || rep.phi_type != Some(ty) {
                return Some(format!("{} seed {seed}: {:?}", r.id, rep.phi_type));
            }
            for p in perms {
                let want: [u32; 3] = std::array::from_fn(|g| ty[perms_inv(p)[g]]);
                let got = decide(&conj.permute_factors(p)).phi_type;
                if got != Some(want) {
                    return Some(format!("{} seed {seed} perm {p:?}: {got:?}", r.id));
                }
            }
            None
        })
        .collect();
    if failures.is_empty() {
        Ok(format!("{} conjugates, 6 permutations each", jobs.len()))
    } else {
        Err(failures.join("; "))
    }
}

fn perms_inv(p: [usize; 3]) -> [usize; 3] {
    let mut q = [0; 3];
    for g in 0..3 {
        q[p[g]] = g;
    }
    q
}

fn criterion_6() -> Outcome {
    let audit = atlas().audit();
    if !audit.complete {
        let open: Vec<String> = audit
            .fallback_pairs
            .iter()
            .filter(|e| e.separated_by.is_none())
            .map(|e| format!("{}~{}", e.a, e.b))
            .collect();
        return Err(format!("inseparable pairs {}", open.join(" ")));
    }
    let jobs: Vec<(usize, u64)> = (0..representatives().len()).flat_map(|i| (0..20).map(move |s| (i, s))).collect();
    let failures: Vec<String> = jobs
        .par_iter()
        .filter_map(|&(i, seed)| {
            let id = representatives()[i].id;
            let phi = random_in_orbit(&id, seed).expect("known orbit");
            match classify(&phi) {
                Ok(c) if c.id.same_orbit(&id) => None,
                other => Some(format!("{id} seed {seed}: {other:?}")),
            }
        })
        .collect();
    if !failures.is_empty() {
        return Err(failures.join("; "));
    }
    let census = audit.fallback_pairs.iter().filter(|e| e.separated_by == Some(Stage::Census)).count();
    let pencil = audit.fallback_pairs.len() - census;
    Ok(format!(
        "{} pairs; {} share a fingerprint ({census} census-separated, {pencil} pencil-separated); {} round trips",
        audit.pairs_checked,
        audit.fallback_pairs.len(),
        jobs.len()
    ))
}

fn criterion_7() -> Outcome {
    let mut maps: Vec<(String, TriLinearMap)> =
        representatives().iter().map(|r| (r.id.to_string(), r.entries.clone())).collect();
    maps.push(("negative example".into(), atlas().negative_example().clone()));
    for k in 0..20u64 {
        let r = &representatives()[k as usize % 19];
        maps.push((format!("{} conjugate {k}", r.id), random_conjugate(&r.entries, 1000 + k)));
    }
    let failures: Vec<String> = maps
        .par_iter()
        .filter_map(|(name, phi)| {
            let birational = decide(phi).is_birational();
            let fibers: Vec<_> = (0..3).map(|s| fiber_at_random_target(phi, s)).collect();
            let one = fibers.iter().all(|f| {
                matches!(f, Ok(f) if f.complex_count == 1 && f.exact && f.rational_points.len() == 1)
            });
            (birational != one).then(|| format!("{name}: decide {birational}, fibers {fibers:?}"))
        })
        .collect();
    if failures.is_empty() {
        Ok(format!("{} maps x 3 targets agree", maps.len()))
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_8() -> Outcome {
    let want = |label: &str| match label {
        "1" | "3" | "6" | "7" => Some(4),
        "2" | "4" | "5" => Some(3),
        "8" | "10" => Some(5),
        "line" => Some(6),
        _ => None,
    };
    let mut report = Vec::new();
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for c in atlas().curves() {
        let d = intersection_graded_dim(&c.components, MultiDegree::ONES);
        report.push(format!("{}:{d}", c.label));
        if let Some(w) = want(&c.label) {
            checked += 1;
            if d != w {
                mismatches.push(format!("curve {} has dimension {d}, expected {w}", c.label));
            }
        }
    }
    if checked != 10 {
        return Err(format!("only {checked} of 10 curves present"));
    }
    if mismatches.is_empty() {
        Ok(report.join(" "))
    } else {
        Err(format!("{} [{}]", mismatches.join("; "), report.join(" ")))
    }
}

fn criterion_9() -> Outcome {
    for r in representatives() {
        let ty = decide(&r.entries).phi_type.ok_or_else(|| format!("{}: not birational", r.id))?;
        if (0..3).any(|g| ty[g] + r.base_locus_tridegree[g] != 2) {
            return Err(format!("{}: type {ty:?} base locus {:?}", r.id, r.base_locus_tridegree));
        }
    }
    Ok("type + base locus = (2,2,2) for all 19".into())
}

/// The component dimensions are checked through the orbit of the general
/// representative, and the unirational parametrization by sampling it.
fn criterion_10() -> Outcome {
    let mut dims = Vec::new();
    for fam in Family::ALL {
        let best = representatives()
            .iter()
            .filter(|r| r.id.family == fam)
            .max_by_key(|r| orbit_dimension(&r.entries))
            .expect("non-empty family");
        let dim = orbit_dimension(&best.entries);
        for seed in 0..5 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let phi = best.entries.compose_right(&random_automorphism(&mut rng, false));
            if decide(&phi).phi_type != Some(fam.phi_type()) || orbit_dimension(&phi) != dim {
                return Err(format!("{} seed {seed}: sampled map leaves the component", best.id));
            }
        }
        dims.push(dim);
    }
    if dims != [6, 7, 8, 8] {
        return Err(format!("orbit dimensions {dims:?}"));
    }
    Ok("not reproducible as variety computations; proxies: general orbit dimensions 6/7/8/8, sampled parametrizations stay in their components".into())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("fixture decision suite", criterion_1),
        ("negative instance", criterion_2),
        ("resolution patterns", criterion_3),
        ("inverse certificates", criterion_4),
        ("invariance and equivariance", criterion_5),
        ("classifier audit and round trip", criterion_6),
        ("oracle agreement", criterion_7),
        ("curve ideal dimensions", criterion_8),
        ("type and base locus pairing", criterion_9),
        ("variety-level statements", criterion_10),
    ];
    let mut unexpected = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let n = i + 1;
        let t = Instant::now();
        let r = f();
        let (tag, detail) = match &r {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("criterion {n:>2} {tag} {name} ({:.1?}): {detail}", t.elapsed());
        match UNATTAINABLE.iter().find(|(k, _)| *k == n) {
            Some((_, why)) if r.is_err() => println!("             unattainable: {why}"),
            Some(_) => unexpected.push(format!("{n} passes but is listed as unattainable")),
            None if r.is_err() => unexpected.push(format!("{n} failed")),
            None => {}
        }
    }
    assert!(unexpected.is_empty(), "{unexpected:?}");
}
