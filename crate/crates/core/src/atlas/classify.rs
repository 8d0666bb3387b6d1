//! Orbit classification: Betti fingerprint, then line census, then pencil
//! divisors, each compared under the factor permutations.

use std::fmt;

use rayon::prelude::*;

use crate::birational::decide;
use crate::syzygy::{betti_fingerprint, BettiFingerprint};
use crate::triring::{Axis, TriLinearMap};

use super::census::{line_census, pencil_signature, PencilSignature};
use super::{permute3, Atlas, AtlasError, OrbitId, PERMUTATIONS};

/// Box over which fingerprints are compared.
pub const CLASSIFY_BOX: [u32; 3] = [3, 3, 3];

/// Complex line counts per direction; `None` for a divisorial degeneration.
pub type CensusSignature = [Option<usize>; 3];

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitInvariants {
    pub fingerprint: BettiFingerprint,
    pub census: CensusSignature,
    pub pencil: PencilSignature,
}

impl OrbitInvariants {
    pub fn of(phi: &TriLinearMap) -> Self {
        OrbitInvariants {
            fingerprint: betti_fingerprint(phi, CLASSIFY_BOX),
            census: census_signature(phi),
            pencil: pencil_signature(phi),
        }
    }
}

pub fn census_signature(phi: &TriLinearMap) -> CensusSignature {
    Axis::ALL.map(|a| line_census(phi, a).ok().map(|c| c.complex_count))
}

/// The test that singled out the orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Fingerprint,
    Census,
    Pencil,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Fingerprint => "fingerprint",
            Stage::Census => "line census",
            Stage::Pencil => "pencil divisors",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub id: OrbitId,
    pub method: Stage,
    /// Orbits still possible after the fingerprint comparison.
    pub fingerprint_candidates: Vec<OrbitId>,
}

/// A pair of representatives and the first stage telling them apart.
#[derive(Clone, Debug, PartialEq)]
pub struct AuditEntry {
    pub a: OrbitId,
    pub b: OrbitId,
    pub separated_by: Option<Stage>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditReport {
    /// Pairs with equal canonical fingerprints.
    pub fallback_pairs: Vec<AuditEntry>,
    pub pairs_checked: usize,
    pub complete: bool,
}

fn distinct(c: &[(usize, [usize; 3])]) -> usize {
    let mut v: Vec<usize> = c.iter().map(|x| x.0).collect();
    v.dedup();
    v.len()
}

impl Atlas {
    /// Invariants of the 19 representatives, computed on first use.
    pub fn invariants(&self) -> &[OrbitInvariants] {
        self.invariants
            .get_or_init(|| self.records.par_iter().map(|r| OrbitInvariants::of(&r.entries)).collect())
    }

    pub fn classify(&self, phi: &TriLinearMap) -> Result<Classification, AtlasError> {
        let report = decide(phi);
        let Some(ty) = report.phi_type else {
            return Err(AtlasError::NotBirational(report.branch.to_string()));
        };
        let fp = betti_fingerprint(phi, CLASSIFY_BOX);
        let inv = self.invariants();
        let mut cands: Vec<(usize, [usize; 3])> = Vec::new();
        for (i, rec) in self.records.iter().enumerate() {
            for perm in PERMUTATIONS {
                if permute3(&ty, perm) == rec.id.family.phi_type() && fp.permuted(perm) == inv[i].fingerprint {
                    cands.push((i, perm));
                }
            }
        }
        let fingerprint_candidates: Vec<OrbitId> = {
            let mut v: Vec<usize> = cands.iter().map(|c| c.0).collect();
            v.dedup();
            v.into_iter().map(|i| self.records[i].id).collect()
        };
        let mut method = Stage::Fingerprint;
        if distinct(&cands) > 1 {
            method = Stage::Census;
            let c = census_signature(phi);
            cands.retain(|(i, perm)| permute3(&c, *perm) == inv[*i].census);
        }
        if distinct(&cands) > 1 {
            method = Stage::Pencil;
            let p = pencil_signature(phi);
            cands.retain(|(i, perm)| permute3(&p, *perm) == inv[*i].pencil);
        }
        match distinct(&cands) {
            0 => Err(AtlasError::Unmatched),
            1 => {
                let (i, perm) = cands[0];
                Ok(Classification {
                    id: self.records[i].id.with_permutation(perm),
                    method,
                    fingerprint_candidates,
                })
            }
            _ => {
                let mut ids: Vec<OrbitId> = cands.iter().map(|c| self.records[c.0].id).collect();
                ids.dedup();
                Err(AtlasError::Ambiguous(ids))
            }
        }
    }

    /// Checks that the three stages separate every pair of representatives.
    pub fn audit(&self) -> AuditReport {
        let inv = self.invariants();
        let n = self.records.len();
        let mut fallback_pairs = Vec::new();
        let mut complete = true;
        for i in 0..n {
            for j in i + 1..n {
                let ti = self.records[i].id.family.phi_type();
                let tj = self.records[j].id.family.phi_type();
                let perms: Vec<[usize; 3]> = PERMUTATIONS
                    .into_iter()
                    .filter(|&p| permute3(&ti, p) == tj && inv[i].fingerprint.permuted(p) == inv[j].fingerprint)
                    .collect();
                if perms.is_empty() {
                    continue;
                }
                let census_equal = perms.iter().any(|&p| permute3(&inv[i].census, p) == inv[j].census);
                let pencil_equal = perms.iter().any(|&p| {
                    permute3(&inv[i].census, p) == inv[j].census && permute3(&inv[i].pencil, p) == inv[j].pencil
                });
                let separated_by = if !census_equal {
                    Some(Stage::Census)
                } else if !pencil_equal {
                    Some(Stage::Pencil)
                } else {
                    complete = false;
                    None
                };
                fallback_pairs.push(AuditEntry {
                    a: self.records[i].id,
                    b: self.records[j].id,
                    separated_by,
                });
            }
        }
        AuditReport {
            fallback_pairs,
            pairs_checked: n * (n - 1) / 2,
            complete,
        }
    }
}
