//! Birationality, inverses and orbit classification for tri-linear rational
//! maps (P^1)^3 --> P^3, in exact rational arithmetic.

pub mod atlas;
pub mod birational;
pub mod exactmath;
pub mod inverse;
pub mod oracle;
pub mod syzygy;
pub mod triring;

pub use atlas::{
    atlas, classify, contact_point, degenerations, random_in_orbit, representatives, Atlas, AtlasError, Classification,
    ContactData, DegenerationEdge, Family, OrbitId, OrbitRecord, Stage,
};
pub use birational::{decide, decide_with_dominance, BirReport, Branch, Pair, UPoly, Verdict};
pub use exactmath::{BinaryForm, Matrix, QMatrix, Rational};
pub use inverse::{invert, verify_inverse, CompositionCertificate, InverseError, InverseMap};
pub use oracle::{dominance_sample, fiber, injectivity_sample, FiberResult, OracleError};
pub use syzygy::{betti_fingerprint, new_syzygy_count, syzygy_space, BettiFingerprint, SyzygyBasis};
pub use triring::{
    parse_poly, Automorphism, Axis, MapError, Monomial, MultiDegree, MultiPoly, Point, TriLinearMap,
};
