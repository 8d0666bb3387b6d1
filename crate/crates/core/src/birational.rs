//! The birationality decision: common-factor screening, type detection from
//! syzygy slices, and the u-polynomial test for maps without linear syzygies.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::{gcd_binary_forms, BinaryForm, BinaryFormError, Matrix, Rational};
use crate::syzygy::{new_syzygy_count, syzygy_space};
use crate::triring::{Axis, MultiDegree, MultiPoly, TriLinearMap, Var};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BirError {
    #[error("all four entries are zero")]
    AllZero,
    #[error("precondition failed: syzygy space at {degree} has dimension {dim}, expected {expected}")]
    Precondition {
        degree: MultiDegree,
        dim: usize,
        expected: usize,
    },
    #[error(transparent)]
    Binary(#[from] BinaryFormError),
}

/// Make the first coefficient (in monomial order) equal to 1.
fn normalize(p: &MultiPoly) -> MultiPoly {
    match p.leading_term() {
        Some((_, c)) => p.scale(&c.recip()),
        None => p.clone(),
    }
}

/// A common factor of four (1,1,1)-forms, with its tri-degree.
///
/// Checks a (1,1,1) factor, then (1,1,0)-type factors for each pair of groups,
/// then linear factors for each single group, and returns the first hit.
pub fn common_factor(entries: &[MultiPoly; 4]) -> Result<Option<(MultiDegree, MultiPoly)>, BirError> {
    if entries.iter().all(MultiPoly::is_zero) {
        return Err(BirError::AllZero);
    }
    let rows: Vec<Vec<Rational>> = entries.iter().map(|e| e.dense()).collect();
    let m = Matrix::from_rows(rows, 8);
    if m.rank() == 1 {
        let f = entries.iter().find(|e| !e.is_zero()).unwrap();
        return Ok(Some((MultiDegree::ONES, normalize(f))));
    }
    let pairs = [
        (MultiDegree::tri(1, 1, 0), Axis::Z),
        (MultiDegree::tri(1, 0, 1), Axis::Y),
        (MultiDegree::tri(0, 1, 1), Axis::X),
    ];
    for (deg, third) in pairs {
        let slices: Vec<MultiPoly> = entries.iter().flat_map(|e| e.split_group(third)).collect();
        let rows: Vec<Vec<Rational>> = slices.iter().map(|s| s.dense()).collect();
        let n = deg.monomial_count();
        if Matrix::from_rows(rows, n).rank() <= 1 {
            let f = slices.iter().find(|s| !s.is_zero()).unwrap();
            return Ok(Some((deg, normalize(f))));
        }
    }
    for axis in Axis::ALL {
        let forms: Vec<BinaryForm> = entries
            .iter()
            .flat_map(|e| e.binary_parts(axis).into_iter().map(|(_, f)| f))
            .collect();
        if forms.is_empty() {
            continue;
        }
        let g = gcd_binary_forms(&forms)?;
        if g.degree() >= 1 {
            // A linear factor of the gcd is a common factor; take a rational one if any.
            let l = if g.degree() == 1 {
                g
            } else {
                match g.rational_roots().first() {
                    Some((p0, p1)) => BinaryForm::vanishing_at(axis, p0, p1).monic(),
                    None => g,
                }
            };
            return Ok(Some((MultiDegree::e(axis), MultiPoly::from_binary(&l))));
        }
    }
    Ok(None)
}

/// One of the three pairs of factors used by the u-polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pair {
    Xy,
    Yz,
    Zx,
}

impl Pair {
    pub const ALL: [Pair; 3] = [Pair::Xy, Pair::Yz, Pair::Zx];

    /// Tri-degree of the syzygies the u-polynomial is built from.
    pub fn degree(self) -> MultiDegree {
        match self {
            Pair::Xy => MultiDegree::tri(1, 1, 0),
            Pair::Yz => MultiDegree::tri(0, 1, 1),
            Pair::Zx => MultiDegree::tri(1, 0, 1),
        }
    }

    /// The group the u-polynomial lives in.
    pub fn lead(self) -> Axis {
        match self {
            Pair::Xy => Axis::X,
            Pair::Yz => Axis::Y,
            Pair::Zx => Axis::Z,
        }
    }

    /// The group the syzygies are split along.
    pub fn split(self) -> Axis {
        match self {
            Pair::Xy => Axis::Y,
            Pair::Yz => Axis::Z,
            Pair::Zx => Axis::X,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Pair::Xy => "xy",
            Pair::Yz => "yz",
            Pair::Zx => "zx",
        }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The determinant of the two syzygies of a pair degree, read as 2x2 matrix of
/// (lead-group linear, t-linear) forms.
#[derive(Clone, Debug, PartialEq)]
pub struct UPoly {
    pub pair: Pair,
    pub poly: MultiPoly,
    /// Monic gcd of the binary quadratics multiplying each t-monomial of `poly`.
    pub gcd: BinaryForm,
    /// A common linear factor exists over C.
    pub has_linear_factor: bool,
    /// A rational linear factor, when one exists.
    pub linear_factor: Option<BinaryForm>,
}

/// `sum a_i t_i` for a syzygy `(a_0, ..., a_3)`.
fn syzygy_form(s: &[MultiPoly; 4]) -> MultiPoly {
    let d = s[0].degree().add(MultiDegree::new(0, 0, 0, 1));
    let mut acc = MultiPoly::zero(d);
    for (i, a) in s.iter().enumerate() {
        acc = acc.add(&a.mul(&MultiPoly::var(Var::t(i)))).expect("equal degrees");
    }
    acc
}

pub fn u_polynomial(phi: &TriLinearMap, pair: Pair) -> Result<UPoly, BirError> {
    for axis in Axis::ALL {
        let d = MultiDegree::e(axis);
        let dim = syzygy_space(phi, d).dim();
        if dim != 0 {
            return Err(BirError::Precondition {
                degree: d,
                dim,
                expected: 0,
            });
        }
    }
    let basis = syzygy_space(phi, pair.degree());
    if basis.dim() != 2 {
        return Err(BirError::Precondition {
            degree: pair.degree(),
            dim: basis.dim(),
            expected: 2,
        });
    }
    Ok(u_from_syzygies(pair, &basis.elements[0], &basis.elements[1]))
}

/// u-polynomial of two given syzygies of the pair degree.
pub fn u_from_syzygies(pair: Pair, s: &[MultiPoly; 4], s2: &[MultiPoly; 4]) -> UPoly {
    let p = syzygy_form(s).split_group(pair.split());
    let q = syzygy_form(s2).split_group(pair.split());
    let poly = p[0].mul(&q[1]).sub(&p[1].mul(&q[0])).expect("equal degrees");
    let forms: Vec<BinaryForm> = poly
        .binary_parts(pair.lead())
        .into_iter()
        .map(|(_, f)| f)
        .collect();
    let gcd = if forms.is_empty() {
        BinaryForm::zero(pair.lead(), 2)
    } else {
        gcd_binary_forms(&forms).expect("nonzero family")
    };
    let has_linear_factor = !poly.is_zero() && gcd.degree() >= 1;
    let linear_factor = if !has_linear_factor {
        None
    } else if gcd.degree() == 1 {
        Some(gcd.clone())
    } else {
        gcd.rational_roots()
            .first()
            .map(|(p0, p1)| BinaryForm::vanishing_at(pair.lead(), p0, p1).monic())
    };
    UPoly {
        pair,
        poly,
        gcd,
        has_linear_factor,
        linear_factor,
    }
}

/// True iff at least two of the three u-polynomials have a linear factor in their group.
pub fn condition_222(phi: &TriLinearMap) -> Result<(bool, [UPoly; 3]), BirError> {
    let us = [
        u_polynomial(phi, Pair::Xy)?,
        u_polynomial(phi, Pair::Yz)?,
        u_polynomial(phi, Pair::Zx)?,
    ];
    let count = us.iter().filter(|u| u.has_linear_factor).count();
    Ok((count >= 2, us))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Birational,
    NotBirational,
    NotDominantSuspected,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Birational => "birational",
            Verdict::NotBirational => "not_birational",
            Verdict::NotDominantSuspected => "not_dominant_suspected",
        })
    }
}

/// Which branch of the criterion fired, or which one was attempted and why it failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Branch {
    Fired(u8),
    Failed { branch: Option<u8>, reason: String },
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::Fired(b) => write!(f, "({b})"),
            Branch::Failed {
                branch: Some(b),
                reason,
            } => write!(f, "({b}) failed: {reason}"),
            Branch::Failed { branch: None, reason } => write!(f, "none: {reason}"),
        }
    }
}

/// Syzygy data behind a verdict.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Evidence {
    /// `dim Syz(d)` for every tested degree.
    pub dims: Vec<(MultiDegree, usize)>,
    /// Minimal generator counts for every tested degree.
    pub new_counts: Vec<(MultiDegree, usize)>,
    pub u_polys: Vec<UPoly>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BirReport {
    pub verdict: Verdict,
    pub phi_type: Option<[u32; 3]>,
    pub branch: Branch,
    pub evidence: Evidence,
}

impl BirReport {
    pub fn is_birational(&self) -> bool {
        self.verdict == Verdict::Birational
    }

    fn failed(branch: Option<u8>, reason: String, evidence: Evidence) -> Self {
        BirReport {
            verdict: Verdict::NotBirational,
            phi_type: None,
            branch: Branch::Failed { branch, reason },
            evidence,
        }
    }

    fn fired(branch: u8, phi_type: [u32; 3], evidence: Evidence) -> Self {
        BirReport {
            verdict: Verdict::Birational,
            phi_type: Some(phi_type),
            branch: Branch::Fired(branch),
            evidence,
        }
    }
}

/// Format a type triple as `(r1,r2,r3)`.
pub fn type_string(t: [u32; 3]) -> String {
    format!("({},{},{})", t[0], t[1], t[2])
}

/// Decide birationality of a dominant tri-linear map and report its type.
pub fn decide(phi: &TriLinearMap) -> BirReport {
    let mut ev = Evidence::default();
    let singles: [usize; 3] = std::array::from_fn(|g| {
        let d = MultiDegree::e(Axis::from_index(g));
        let dim = syzygy_space(phi, d).dim();
        ev.dims.push((d, dim));
        ev.new_counts.push((d, dim));
        dim
    });
    if let Some(g) = (0..3).find(|&g| singles[g] >= 2) {
        return BirReport::failed(
            None,
            format!(
                "syzygy space at e{} has dimension {} (at most 1 expected)",
                g + 1,
                singles[g]
            ),
            ev,
        );
    }
    let ones: Vec<usize> = (0..3).filter(|&g| singles[g] == 1).collect();
    match ones.len() {
        3 => BirReport::fired(1, [1, 1, 1], ev),
        2 => {
            let k = (0..3).find(|g| !ones.contains(g)).unwrap();
            let mut t = [1, 1, 1];
            t[k] = 2;
            BirReport::fired(2, t, ev)
        }
        1 => {
            let i = ones[0];
            let mut found = false;
            for j in (0..3).filter(|&j| j != i) {
                let mut d = MultiDegree::e(Axis::from_index(i));
                d.0[j] = 1;
                let c = new_syzygy_count(phi, d);
                ev.new_counts.push((d, c));
                found |= c >= 1;
            }
            if found {
                let mut t = [2, 2, 2];
                t[i] = 1;
                BirReport::fired(3, t, ev)
            } else {
                BirReport::failed(
                    Some(3),
                    format!("no new syzygy at e{}+e_j beyond multiples of the e{} syzygy", i + 1, i + 1),
                    ev,
                )
            }
        }
        _ => {
            let mut bad = None;
            for pair in Pair::ALL {
                // nothing lies below a pair degree once the e_i spaces vanish
                let dim = syzygy_space(phi, pair.degree()).dim();
                ev.dims.push((pair.degree(), dim));
                ev.new_counts.push((pair.degree(), dim));
                if dim != 2 && bad.is_none() {
                    bad = Some((pair, dim));
                }
            }
            if let Some((pair, dim)) = bad {
                let reason = if dim > 2 {
                    format!("syzygy space at the {pair} pair degree has dimension {dim} > 2; not covered by the criterion")
                } else {
                    format!("syzygy space at the {pair} pair degree has dimension {dim}, expected 2")
                };
                return BirReport::failed(Some(4), reason, ev);
            }
            match condition_222(phi) {
                Ok((ok, us)) => {
                    let count = us.iter().filter(|u| u.has_linear_factor).count();
                    ev.u_polys = us.to_vec();
                    if ok {
                        BirReport::fired(4, [2, 2, 2], ev)
                    } else {
                        BirReport::failed(
                            Some(4),
                            format!("Condition failed: only {count} of u_xy, u_yz, u_zx have a linear factor"),
                            ev,
                        )
                    }
                }
                Err(e) => BirReport::failed(Some(4), e.to_string(), ev),
            }
        }
    }
}

/// [`decide`], then on a negative verdict consult random differential-rank
/// sampling and flag maps that look non-dominant.
pub fn decide_with_dominance(phi: &TriLinearMap, trials: usize, seed: u64) -> BirReport {
    let mut r = decide(phi);
    if r.verdict == Verdict::NotBirational && !crate::oracle::dominance_sample(phi, trials, seed) {
        r.verdict = Verdict::NotDominantSuspected;
    }
    r
}
