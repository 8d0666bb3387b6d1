//! The 19 orbit representatives, orbit classification, line census, contact
//! points, degenerations and random sampling within orbits.

mod census;
mod classify;
mod contact;

use std::fmt;
use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use thiserror::Error;

use num::Zero;

use crate::exactmath::{Matrix, Rational};
use crate::oracle::{random_automorphism, random_left_factor};
use crate::triring::{
    intersection_slice_basis, parse_poly, Axis, MultiDegree, MultiPoly, TriLinearMap, Var,
};

pub use census::{line_census, pencil_signature, Line, LineCensus, PencilSignature};
pub use classify::{AuditEntry, AuditReport, Classification, OrbitInvariants, Stage, CLASSIFY_BOX};
pub use contact::{contact_point, ContactData};

/// Fixture data compiled into the library.
pub const EMBEDDED_FIXTURES: &str = include_str!("../../data/fixtures.toml");

/// Environment variable naming a replacement fixture file.
pub const FIXTURES_ENV: &str = "TRILINEAR_FIXTURES";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AtlasError {
    #[error("fixture data: {0}")]
    Fixture(String),
    #[error("unknown orbit `{0}`")]
    UnknownOrbit(String),
    #[error("map is not birational: {0}")]
    NotBirational(String),
    #[error("no representative matches the map")]
    Unmatched,
    #[error("ambiguous among {{{}}}", .0.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", "))]
    Ambiguous(Vec<OrbitId>),
    #[error("divisorial degeneration in direction {direction}")]
    DivisorialDegeneration { direction: Axis },
    #[error("contact point requires a birational map of type (2,2,2), found {0}")]
    NotType222(String),
    #[error("contact point not rational")]
    ContactNotRational,
}

/// Type family of a birational map, for the representative's factor order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    T111,
    T112,
    T122,
    T222,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::T111, Family::T112, Family::T122, Family::T222];

    pub fn phi_type(self) -> [u32; 3] {
        match self {
            Family::T111 => [1, 1, 1],
            Family::T112 => [1, 1, 2],
            Family::T122 => [1, 2, 2],
            Family::T222 => [2, 2, 2],
        }
    }

    pub fn from_type(t: [u32; 3]) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.phi_type() == t)
    }

    /// Number of orbits in the family.
    pub fn size(self) -> u8 {
        match self {
            Family::T111 => 4,
            Family::T112 => 5,
            Family::T122 => 8,
            Family::T222 => 2,
        }
    }

    pub fn label(self) -> String {
        let t = self.phi_type();
        format!("({},{},{})", t[0], t[1], t[2])
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// An orbit plus the factor permutation relating an input to the
/// representative: `permutation[i]` is the representative's factor playing the
/// role of input factor `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OrbitId {
    pub family: Family,
    pub index: u8,
    pub permutation: [usize; 3],
}

impl OrbitId {
    pub fn new(family: Family, index: u8) -> Result<Self, AtlasError> {
        if index == 0 || index > family.size() {
            return Err(AtlasError::UnknownOrbit(format!("{family}-{index}")));
        }
        Ok(OrbitId {
            family,
            index,
            permutation: [0, 1, 2],
        })
    }

    /// Accepts `(1,2,2)-7`, `1,2,2-7` and `122-7`.
    pub fn parse(s: &str) -> Result<Self, AtlasError> {
        let bad = || AtlasError::UnknownOrbit(s.to_string());
        let (fam, idx) = s.trim().rsplit_once('-').ok_or_else(bad)?;
        let digits: Vec<u32> = fam
            .chars()
            .filter(|c| !matches!(c, '(' | ')' | ',' | ' '))
            .map(|c| c.to_digit(10))
            .collect::<Option<_>>()
            .ok_or_else(bad)?;
        let t: [u32; 3] = digits.try_into().map_err(|_| bad())?;
        let family = Family::from_type(t).ok_or_else(bad)?;
        let index: u8 = idx.trim().parse().map_err(|_| bad())?;
        OrbitId::new(family, index)
    }

    pub fn same_orbit(&self, o: &OrbitId) -> bool {
        self.family == o.family && self.index == o.index
    }

    pub fn with_permutation(mut self, perm: [usize; 3]) -> Self {
        self.permutation = perm;
        self
    }
}

impl fmt::Display for OrbitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.family, self.index)
    }
}

#[derive(Clone, Debug)]
pub struct OrbitRecord {
    pub id: OrbitId,
    pub entries: TriLinearMap,
    /// Components of the base ideal; the ideal is their intersection.
    pub base_ideal: Vec<Vec<MultiPoly>>,
    /// Components of the ideal whose (1,1,1) slice is the linear system's span.
    pub w_ideal: Vec<Vec<MultiPoly>>,
    pub base_locus_tridegree: [u32; 3],
    pub description: String,
    pub citation: String,
}

/// A canonical Cohen-Macaulay curve or line, up to automorphism.
#[derive(Clone, Debug)]
pub struct CurveIdeal {
    pub label: String,
    pub tridegree: [u32; 3],
    pub components: Vec<Vec<MultiPoly>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationEdge {
    pub from: OrbitId,
    pub to: OrbitId,
    pub source_citation: String,
}

#[derive(Deserialize)]
struct RawFixtures {
    format_version: String,
    orbit: Vec<RawOrbit>,
    negative_example: RawExample,
    curve: Vec<RawCurve>,
    degeneration: Vec<RawEdge>,
}

#[derive(Deserialize)]
struct RawOrbit {
    id: String,
    entries: [String; 4],
    base_ideal: Vec<Vec<String>>,
    w_ideal: Vec<Vec<String>>,
    base_locus: String,
    description: String,
    citation: String,
}

#[derive(Deserialize)]
struct RawExample {
    entries: [String; 4],
    description: String,
}

#[derive(Deserialize)]
struct RawCurve {
    label: String,
    tridegree: String,
    components: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct RawEdge {
    from: String,
    to: String,
    citation: String,
}

/// Loaded fixture data with lazily computed classification invariants.
#[derive(Debug)]
pub struct Atlas {
    pub format_version: String,
    records: Vec<OrbitRecord>,
    negative: (TriLinearMap, String),
    curves: Vec<CurveIdeal>,
    edges: Vec<DegenerationEdge>,
    invariants: OnceLock<Vec<OrbitInvariants>>,
}

fn fixture_err(what: impl fmt::Display) -> AtlasError {
    AtlasError::Fixture(what.to_string())
}

fn parse_components(c: &[Vec<String>]) -> Result<Vec<Vec<MultiPoly>>, AtlasError> {
    c.iter()
        .map(|comp| {
            comp.iter()
                .map(|s| parse_poly(s).map_err(|e| fixture_err(format!("`{s}`: {e}"))))
                .collect()
        })
        .collect()
}

fn parse_tridegree(s: &str) -> Result<[u32; 3], AtlasError> {
    MultiDegree::parse(s)
        .map(|d| d.tri_part())
        .ok_or_else(|| fixture_err(format!("bad tri-degree `{s}`")))
}

fn parse_map(e: &[String; 4]) -> Result<TriLinearMap, AtlasError> {
    let refs: [&str; 4] = std::array::from_fn(|i| e[i].as_str());
    TriLinearMap::from_strs(&refs).map_err(fixture_err)
}

impl Atlas {
    pub fn from_toml(text: &str) -> Result<Atlas, AtlasError> {
        let raw: RawFixtures = toml::from_str(text).map_err(fixture_err)?;
        let mut records = Vec::with_capacity(raw.orbit.len());
        for o in &raw.orbit {
            let id = OrbitId::parse(&o.id)?;
            let rec = OrbitRecord {
                id,
                entries: parse_map(&o.entries)?,
                base_ideal: parse_components(&o.base_ideal)?,
                w_ideal: parse_components(&o.w_ideal)?,
                base_locus_tridegree: parse_tridegree(&o.base_locus)?,
                description: o.description.clone(),
                citation: o.citation.clone(),
            };
            check_record(&rec)?;
            records.push(rec);
        }
        for f in Family::ALL {
            for i in 1..=f.size() {
                let n = records.iter().filter(|r| r.id.family == f && r.id.index == i).count();
                if n != 1 {
                    return Err(fixture_err(format!("orbit {f}-{i} listed {n} times")));
                }
            }
        }
        let curves = raw
            .curve
            .iter()
            .map(|c| {
                Ok(CurveIdeal {
                    label: c.label.clone(),
                    tridegree: parse_tridegree(&c.tridegree)?,
                    components: parse_components(&c.components)?,
                })
            })
            .collect::<Result<_, AtlasError>>()?;
        let edges = raw
            .degeneration
            .iter()
            .map(|e| {
                Ok(DegenerationEdge {
                    from: OrbitId::parse(&e.from)?,
                    to: OrbitId::parse(&e.to)?,
                    source_citation: e.citation.clone(),
                })
            })
            .collect::<Result<_, AtlasError>>()?;
        Ok(Atlas {
            format_version: raw.format_version,
            records,
            negative: (parse_map(&raw.negative_example.entries)?, raw.negative_example.description),
            curves,
            edges,
            invariants: OnceLock::new(),
        })
    }

    pub fn from_path(path: &std::path::Path) -> Result<Atlas, AtlasError> {
        let text = std::fs::read_to_string(path).map_err(|e| fixture_err(format!("{}: {e}", path.display())))?;
        Atlas::from_toml(&text)
    }

    /// The embedded data, or the file named by `TRILINEAR_FIXTURES` if set.
    pub fn from_env() -> Result<Atlas, AtlasError> {
        match std::env::var_os(FIXTURES_ENV) {
            Some(p) => Atlas::from_path(std::path::Path::new(&p)),
            None => Atlas::from_toml(EMBEDDED_FIXTURES),
        }
    }

    pub fn records(&self) -> &[OrbitRecord] {
        &self.records
    }

    pub fn record(&self, id: &OrbitId) -> Result<&OrbitRecord, AtlasError> {
        self.records
            .iter()
            .find(|r| r.id.same_orbit(id))
            .ok_or_else(|| AtlasError::UnknownOrbit(id.to_string()))
    }

    /// The dominant, non-birational map with a type-(2,2,2) resolution shape.
    pub fn negative_example(&self) -> &TriLinearMap {
        &self.negative.0
    }

    pub fn negative_description(&self) -> &str {
        &self.negative.1
    }

    pub fn curves(&self) -> &[CurveIdeal] {
        &self.curves
    }

    /// Cited degenerations; the list is partial.
    pub fn degenerations(&self) -> &[DegenerationEdge] {
        &self.edges
    }

    /// Representative composed with a seeded random automorphism of (P^1)^3
    /// (including a factor permutation) and a random invertible left factor.
    /// The permutation stored in `id` is ignored.
    pub fn random_in_orbit(&self, id: &OrbitId, seed: u64) -> Result<TriLinearMap, AtlasError> {
        Ok(random_conjugate(&self.record(id)?.entries, seed))
    }
}

/// `A ∘ phi ∘ xi` for seeded random `A` in GL(4) and `xi` in Aut((P^1)^3).
pub fn random_conjugate(phi: &TriLinearMap, seed: u64) -> TriLinearMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xi = random_automorphism(&mut rng, true);
    let a = random_left_factor(&mut rng);
    phi.compose_right(&xi).compose_left(&a).expect("invertible left factor")
}

fn check_record(r: &OrbitRecord) -> Result<(), AtlasError> {
    let slice = intersection_slice_basis(&r.base_ideal, MultiDegree::ONES);
    if slice.len() < 4 {
        return Err(fixture_err(format!("{}: base ideal slice has dimension {}", r.id, slice.len())));
    }
    let mut rows = slice.clone();
    rows.extend(r.entries.dense());
    if Matrix::from_rows(rows, 8).rank() != slice.len() {
        return Err(fixture_err(format!("{}: entries outside the base ideal", r.id)));
    }
    let t = r.id.family.phi_type();
    if (0..3).any(|g| t[g] + r.base_locus_tridegree[g] != 2) {
        return Err(fixture_err(format!("{}: type and base locus do not add up to (2,2,2)", r.id)));
    }
    Ok(())
}

/// The embedded fixture data, loaded once.
pub fn atlas() -> &'static Atlas {
    static ATLAS: OnceLock<Atlas> = OnceLock::new();
    ATLAS.get_or_init(|| Atlas::from_toml(EMBEDDED_FIXTURES).expect("embedded fixtures are valid"))
}

/// All 19 representatives from the embedded data.
pub fn representatives() -> &'static [OrbitRecord] {
    atlas().records()
}

pub fn degenerations() -> &'static [DegenerationEdge] {
    atlas().degenerations()
}

pub fn random_in_orbit(id: &OrbitId, seed: u64) -> Result<TriLinearMap, AtlasError> {
    atlas().random_in_orbit(id, seed)
}

pub fn classify(phi: &TriLinearMap) -> Result<Classification, AtlasError> {
    atlas().classify(phi)
}

/// Dimension of the orbit of the linear system spanned by the entries under
/// PGL(2)^3, from the rank of the infinitesimal action `gl(2)^3 -> Hom(W, V/W)`.
pub fn orbit_dimension(phi: &TriLinearMap) -> usize {
    let e = phi.entries();
    let n = MultiDegree::ONES.monomial_count();
    let block = |i: usize, p: &MultiPoly| {
        let mut row = vec![Rational::zero(); 4 * n];
        row[i * n..(i + 1) * n].clone_from_slice(&p.dense());
        row
    };
    let mut hom_ww = Vec::new();
    for i in 0..4 {
        for f in e {
            hom_ww.push(block(i, f));
        }
    }
    let mut rows = hom_ww.clone();
    for g in 0..3 {
        for a in 0..2 {
            for b in 0..2 {
                let (va, vb) = (Var((2 * g + a) as u8), Var((2 * g + b) as u8));
                let mut row = vec![Rational::zero(); 4 * n];
                for (i, f) in e.iter().enumerate() {
                    let d = f.partial(vb).mul(&MultiPoly::var(va));
                    row[i * n..(i + 1) * n].clone_from_slice(&block(0, &d)[..n]);
                }
                rows.push(row);
            }
        }
    }
    let base = Matrix::from_rows(hom_ww, 4 * n).rank();
    Matrix::from_rows(rows, 4 * n).rank() - base
}

/// `out[perm[g]] = a[g]`.
pub(crate) fn permute3<T: Clone>(a: &[T; 3], perm: [usize; 3]) -> [T; 3] {
    let mut out = a.clone();
    for g in 0..3 {
        out[perm[g]] = a[g].clone();
    }
    out
}

pub(crate) const PERMUTATIONS: [[usize; 3]; 6] =
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_dimensions_of_general_representatives() {
        let max = |f: Family| {
            representatives().iter().filter(|r| r.id.family == f).map(|r| orbit_dimension(&r.entries)).max()
        };
        assert_eq!(Family::ALL.map(max), [Some(6), Some(7), Some(8), Some(8)]);
    }

    #[test]
    fn nineteen_records() {
        assert_eq!(representatives().len(), 19);
        let r = atlas().record(&OrbitId::parse("(1,1,1)-4").unwrap()).unwrap();
        assert_eq!(r.entries.entry_strings(), ["x1*y1*z1", "x0*y1*z1", "x1*y0*z1", "x1*y1*z0"]);
    }

    #[test]
    fn orbit_id_forms() {
        let a = OrbitId::parse("(1,2,2)-7").unwrap();
        let b = OrbitId::parse("122-7").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "(1,2,2)-7");
        assert!(OrbitId::parse("(1,2,2)-9").is_err());
        assert!(OrbitId::parse("(1,3,2)-1").is_err());
    }

    #[test]
    fn random_conjugates_are_deterministic() {
        let id = OrbitId::parse("(2,2,2)-1").unwrap();
        assert_eq!(random_in_orbit(&id, 9).unwrap(), random_in_orbit(&id, 9).unwrap());
        assert_ne!(random_in_orbit(&id, 9).unwrap(), random_in_orbit(&id, 10).unwrap());
    }

    #[test]
    fn permute3_places_entries() {
        assert_eq!(permute3(&['a', 'b', 'c'], [1, 2, 0]), ['c', 'a', 'b']);
    }

    #[test]
    fn bad_fixture_is_reported() {
        let text = EMBEDDED_FIXTURES.replacen("x1*y1*z1", "x1*y1", 1);
        assert!(matches!(Atlas::from_toml(&text), Err(AtlasError::Fixture(_))));
    }
}
