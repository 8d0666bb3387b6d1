//! Subcommand bodies. Each returns an [`Outcome`] carrying both renderings and
//! the exit code.

use serde_json::{json, Value};
use trilinear::atlas::{AtlasError, OrbitRecord};
use trilinear::birational::type_string;
use trilinear::exactmath::fmt_rational;
use trilinear::inverse::InverseError;
use trilinear::oracle::{fiber_at_random_target, injectivity_witness};
use trilinear::syzygy::betti_fingerprint_exact;
use trilinear::{
    decide_with_dominance, dominance_sample, fiber, invert, Atlas, MultiPoly, OrbitId, Point, Rational, TriLinearMap,
};

use crate::document::{fmt_coords, fmt_point, normalize, InputError, MapDocument, Metadata};

/// Birational, or the command succeeded.
pub const EXIT_OK: i32 = 0;
/// Not birational, or a negative answer.
pub const EXIT_NEGATIVE: i32 = 1;
/// Invalid input.
pub const EXIT_INVALID: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    fn new(code: i32, text: String, json: Value) -> Self {
        Outcome { code, text, json }
    }

    pub fn error(code: i32, kind: &str, message: String, details: Value) -> Self {
        let mut body = json!({ "kind": kind, "message": message });
        if let Value::Object(m) = details {
            for (k, v) in m {
                body[k] = v;
            }
        }
        Outcome::new(code, format!("error[{kind}]: {message}"), json!({ "error": body }))
    }

    pub fn invalid(e: &InputError) -> Self {
        Outcome::error(EXIT_INVALID, e.kind(), e.to_string(), e.details())
    }

    pub fn render(&self, format: Format, compact: bool) -> String {
        match format {
            Format::Text => self.text.trim_end().to_string(),
            Format::Structured if compact => self.json.to_string(),
            Format::Structured => serde_json::to_string_pretty(&self.json).expect("json values serialize"),
        }
    }
}

fn atlas_error(e: &AtlasError) -> Outcome {
    let (code, kind) = match e {
        AtlasError::Fixture(_) => (EXIT_INVALID, "fixture"),
        AtlasError::UnknownOrbit(_) => (EXIT_INVALID, "unknown_orbit"),
        AtlasError::NotBirational(_) => (EXIT_NEGATIVE, "not_birational"),
        AtlasError::Unmatched => (EXIT_NEGATIVE, "unmatched"),
        AtlasError::Ambiguous(_) => (EXIT_NEGATIVE, "ambiguous"),
        AtlasError::DivisorialDegeneration { .. } => (EXIT_NEGATIVE, "divisorial_degeneration"),
        AtlasError::NotType222(_) => (EXIT_NEGATIVE, "not_type_222"),
        AtlasError::ContactNotRational => (EXIT_NEGATIVE, "contact_not_rational"),
    };
    Outcome::error(code, kind, e.to_string(), json!({}))
}

/// Settings shared by all subcommands.
#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub seed: u64,
    pub trials: usize,
    pub box_: [u32; 3],
}

fn deg(d: [u32; 3]) -> String {
    format!("({},{},{})", d[0], d[1], d[2])
}

fn q(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

fn point_json(p: &Point) -> Value {
    json!(p.iter().map(|g| q(g)).collect::<Vec<_>>())
}

pub fn check(phi: &TriLinearMap, s: &Settings) -> Outcome {
    let r = decide_with_dominance(phi, s.trials, s.seed);
    let ty = r.phi_type.map(type_string);
    let dims: Vec<(String, usize)> = r.evidence.dims.iter().map(|(d, n)| (deg(d.tri_part()), *n)).collect();
    let news: Vec<(String, usize)> = r.evidence.new_counts.iter().map(|(d, n)| (deg(d.tri_part()), *n)).collect();
    let mut text = format!("verdict {}\n", r.verdict);
    if let Some(t) = &ty {
        text += &format!("type {t}\n");
    }
    text += &format!("branch {}\n", r.branch);
    let table = |v: &[(String, usize)]| v.iter().map(|(d, n)| format!("{d}:{n}")).collect::<Vec<_>>().join(" ");
    text += &format!("syzygy dims {}\n", table(&dims));
    text += &format!("new syzygies {}\n", table(&news));
    let mut us = Vec::new();
    for u in &r.evidence.u_polys {
        let lf = u.linear_factor.as_ref().map(|f| f.to_string());
        text += &format!(
            "u_{}: gcd {}, linear factor {}\n",
            u.pair.name(),
            u.gcd,
            match (&lf, u.has_linear_factor) {
                (Some(f), _) => f.clone(),
                (None, true) => "irrational".into(),
                (None, false) => "none".into(),
            }
        );
        us.push(json!({
            "pair": u.pair.name(),
            "poly": u.poly.to_string(),
            "gcd": u.gcd.to_string(),
            "has_linear_factor": u.has_linear_factor,
            "linear_factor": lf,
        }));
    }
    let json = json!({
        "verdict": r.verdict.to_string(),
        "type": r.phi_type,
        "branch": r.branch.to_string(),
        "syzygy_dims": dims,
        "new_syzygies": news,
        "u_polys": us,
    });
    let code = if r.is_birational() { EXIT_OK } else { EXIT_NEGATIVE };
    Outcome::new(code, text, json)
}

pub fn invert_cmd(phi: &TriLinearMap) -> Outcome {
    match invert(phi) {
        Ok((inv, cert)) => {
            let names = ["x", "y", "z"];
            let mut text = format!("type {}\n", type_string(inv.phi_type));
            let mut comps = Vec::new();
            for (g, (a, b)) in inv.components.iter().enumerate() {
                text += &format!("{}: ({} : {})\n", names[g], a, b);
                comps.push(json!([a.to_string(), b.to_string()]));
            }
            let checks: Vec<String> = cert
                .checks
                .iter()
                .zip(names)
                .map(|(c, n)| format!("{n} {}", if *c { "ok" } else { "FAILED" }))
                .collect();
            text += &format!(
                "certificate {} ({})\n",
                if cert.passed() { "passed" } else { "failed" },
                checks.join(", ")
            );
            let cof: Vec<Option<String>> = cert.cofactors.iter().map(|c| c.as_ref().map(MultiPoly::to_string)).collect();
            let json = json!({
                "type": inv.phi_type,
                "components": comps,
                "certificate": { "passed": cert.passed(), "checks": cert.checks, "cofactors": cof },
            });
            Outcome::new(if cert.passed() { EXIT_OK } else { EXIT_NEGATIVE }, text, json)
        }
        Err(e) => invert_error(e),
    }
}

pub fn classify_cmd(atlas: &Atlas, phi: &TriLinearMap) -> Outcome {
    match atlas.classify(phi) {
        Ok(c) => {
            let cands: Vec<String> = c.fingerprint_candidates.iter().map(OrbitId::to_string).collect();
            let p = c.id.permutation;
            let text = format!(
                "orbit {}\npermutation {},{},{}\nmethod {}\nfingerprint candidates {}\n",
                c.id,
                p[0],
                p[1],
                p[2],
                c.method,
                cands.join(" ")
            );
            let json = json!({
                "orbit": c.id.to_string(),
                "family": c.id.family.phi_type(),
                "index": c.id.index,
                "permutation": p,
                "method": c.method.to_string(),
                "fingerprint_candidates": cands,
            });
            Outcome::new(EXIT_OK, text, json)
        }
        Err(e) => atlas_error(&e),
    }
}

pub fn syzygies(phi: &TriLinearMap, s: &Settings) -> Outcome {
    let fp = betti_fingerprint_exact(phi, s.box_);
    let mut text = format!("new syzygy generators over box {}\n", deg(s.box_));
    for (d, n) in &fp.new_counts {
        text += &format!("{} {n}\n", deg(*d));
    }
    text += &format!("total {}\n", fp.total_generators());
    let json = json!({
        "box": s.box_,
        "new_counts": fp.new_counts.iter().map(|(d, n)| json!([d, n])).collect::<Vec<_>>(),
        "total": fp.total_generators(),
    });
    Outcome::new(EXIT_OK, text, json)
}

fn components_string(c: &[Vec<MultiPoly>]) -> String {
    c.iter()
        .map(|gens| format!("({})", gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")))
        .collect::<Vec<_>>()
        .join(" ∩ ")
}

fn record_json(r: &OrbitRecord) -> Value {
    json!({
        "id": r.id.to_string(),
        "type": r.id.family.phi_type(),
        "entries": r.entries.entry_strings(),
        "base_ideal": components_string(&r.base_ideal),
        "base_locus_tridegree": r.base_locus_tridegree,
        "description": r.description,
        "citation": r.citation,
    })
}

pub fn orbits_list(atlas: &Atlas) -> Outcome {
    let mut text = String::new();
    for r in atlas.records() {
        text += &format!(
            "{:<10} base locus {}  {}  [{}]\n",
            r.id.to_string(),
            deg(r.base_locus_tridegree),
            r.description,
            r.citation
        );
    }
    let json = json!({ "orbits": atlas.records().iter().map(record_json).collect::<Vec<_>>() });
    Outcome::new(EXIT_OK, text, json)
}

pub fn orbits_show(atlas: &Atlas, id: &str) -> Outcome {
    let r = match OrbitId::parse(id).and_then(|id| atlas.record(&id)) {
        Ok(r) => r,
        Err(e) => return atlas_error(&e),
    };
    let e = r.entries.entry_strings();
    let text = format!(
        "orbit {}\ntype {}\nentries {}\nbase ideal {}\nbase locus tri-degree {}\ndescription {}\ncitation {}\n",
        r.id,
        type_string(r.id.family.phi_type()),
        e.join(", "),
        components_string(&r.base_ideal),
        deg(r.base_locus_tridegree),
        r.description,
        r.citation
    );
    Outcome::new(EXIT_OK, text, record_json(r))
}

pub fn orbits_degenerations(atlas: &Atlas) -> Outcome {
    let mut text = String::new();
    let mut edges = Vec::new();
    for e in atlas.degenerations() {
        text += &format!("{} -> {}  [{}]\n", e.from, e.to, e.source_citation);
        edges.push(json!({ "from": e.from.to_string(), "to": e.to.to_string(), "citation": e.source_citation }));
    }
    Outcome::new(EXIT_OK, text, json!({ "degenerations": edges }))
}

pub fn random(atlas: &Atlas, orbit: &str, seed: u64) -> Outcome {
    let id = match OrbitId::parse(orbit) {
        Ok(id) => id,
        Err(e) => return atlas_error(&e),
    };
    match atlas.random_in_orbit(&id, seed) {
        Ok(phi) => {
            let doc = MapDocument::from_map(
                &phi,
                Some(Metadata {
                    label: Some(id.to_string()),
                    seed: Some(seed),
                    provenance: Some("random_in_orbit".into()),
                }),
            );
            let json = serde_json::to_value(&doc).expect("documents serialize");
            Outcome::new(EXIT_OK, doc.to_json(), json)
        }
        Err(e) => atlas_error(&e),
    }
}

pub fn eval_map(phi: &TriLinearMap, p: &Point) -> Outcome {
    let v = phi.eval_point(p);
    if v.iter().all(|c| c == &Rational::from_integer(0.into())) {
        return Outcome::error(
            EXIT_NEGATIVE,
            "base_point",
            format!("{} lies in the base locus", fmt_point(p)),
            json!({}),
        );
    }
    let v = normalize(&v);
    Outcome::new(EXIT_OK, format!("({})\n", fmt_coords(&v)), json!({ "image": q(&v) }))
}

pub fn eval_inverse(phi: &TriLinearMap, t: &[Rational; 4]) -> Outcome {
    let inv = match invert(phi) {
        Ok((inv, _)) => inv,
        Err(e) => return invert_error(e),
    };
    match inv.eval(t) {
        Some(p) => {
            let p: Point = std::array::from_fn(|g| {
                let n = normalize(&p[g]);
                [n[0].clone(), n[1].clone()]
            });
            Outcome::new(EXIT_OK, format!("{}\n", fmt_point(&p)), json!({ "image": point_json(&p) }))
        }
        None => Outcome::error(
            EXIT_NEGATIVE,
            "base_point",
            format!("({}) lies in the base locus of the inverse", fmt_coords(t)),
            json!({}),
        ),
    }
}

fn invert_error(e: InverseError) -> Outcome {
    let kind = match e {
        InverseError::NotBirational(_) => "not_birational",
        InverseError::Internal(_) => "internal",
    };
    Outcome::error(EXIT_NEGATIVE, kind, e.to_string(), json!({}))
}

pub fn oracle_fiber(phi: &TriLinearMap, target: Option<&[Rational; 4]>, s: &Settings) -> Outcome {
    let r = match target {
        Some(t) => fiber(phi, t, s.seed),
        None => fiber_at_random_target(phi, s.seed),
    };
    match r {
        Ok(f) => {
            let mut text = format!(
                "target ({})\ncomplex count {}{}\nrational points {}\n",
                fmt_coords(&f.target),
                f.complex_count,
                if f.exact { "" } else { " (lower bound)" },
                f.rational_points.len()
            );
            for p in &f.rational_points {
                text += &format!("  {}\n", fmt_point(p));
            }
            let json = json!({
                "target": q(&f.target),
                "complex_count": f.complex_count,
                "exact": f.exact,
                "rational_points": f.rational_points.iter().map(point_json).collect::<Vec<_>>(),
                "discarded_base_points": f.discarded_base_points,
            });
            Outcome::new(EXIT_OK, text, json)
        }
        Err(e) => Outcome::error(EXIT_NEGATIVE, "oracle", e.to_string(), json!({})),
    }
}

pub fn oracle_sample(phi: &TriLinearMap, s: &Settings) -> Outcome {
    let dominant = dominance_sample(phi, s.trials, s.seed);
    let witness = injectivity_witness(phi, s.trials, s.seed);
    let mut text = format!(
        "trials {}\ndominant {}\ninjective {}\n",
        s.trials,
        if dominant { "yes" } else { "no" },
        if witness.is_none() { "yes" } else { "no" }
    );
    if let Some((a, b)) = &witness {
        text += &format!("collision {} and {}\n", fmt_point(a), fmt_point(b));
    }
    let json = json!({
        "trials": s.trials,
        "dominant": dominant,
        "injective": witness.is_none(),
        "collision": witness.as_ref().map(|(a, b)| json!([point_json(a), point_json(b)])),
    });
    let code = if dominant && witness.is_none() { EXIT_OK } else { EXIT_NEGATIVE };
    Outcome::new(code, text, json)
}
