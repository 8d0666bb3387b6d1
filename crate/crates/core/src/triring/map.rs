use std::fmt;

use num::{One, Zero};
use thiserror::Error;

use super::degree::{Axis, MultiDegree};
use super::parse::{parse_poly_with_degree, ParseError};
use super::poly::MultiPoly;
use crate::exactmath::{Matrix, QMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("entry {entry}: {error}")]
    Parse { entry: usize, error: ParseError },
    #[error("entry {entry} has degree {found}, expected (1,1,1;0)")]
    WrongDegree { entry: usize, found: MultiDegree },
    #[error("entries are linearly dependent (rank {rank}){}", witness_suffix(.common_factor))]
    Dependent {
        rank: usize,
        common_factor: Option<(MultiDegree, String)>,
    },
    #[error("entries share the common factor {factor} of tri-degree {}", .tridegree.tri_string())]
    CommonFactor { tridegree: MultiDegree, factor: String },
    #[error("left factor is not an invertible 4x4 matrix")]
    SingularLeftFactor,
}

fn witness_suffix(w: &Option<(MultiDegree, String)>) -> String {
    match w {
        Some((d, f)) => format!("; common factor {f} of tri-degree {}", d.tri_string()),
        None => String::new(),
    }
}

/// Four linearly independent (1,1,1)-forms without a common factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TriLinearMap {
    entries: [MultiPoly; 4],
}

impl TriLinearMap {
    pub fn new(entries: [MultiPoly; 4]) -> Result<Self, MapError> {
        for (i, e) in entries.iter().enumerate() {
            if e.degree() != MultiDegree::ONES {
                return Err(MapError::WrongDegree {
                    entry: i,
                    found: e.degree(),
                });
            }
        }
        let rank = coefficient_matrix(&entries).rank();
        let factor = crate::birational::common_factor(&entries)
            .ok()
            .flatten()
            .map(|(d, f)| (d, f.to_string()));
        if rank < 4 {
            return Err(MapError::Dependent {
                rank,
                common_factor: factor,
            });
        }
        if let Some((tridegree, factor)) = factor {
            return Err(MapError::CommonFactor { tridegree, factor });
        }
        Ok(TriLinearMap { entries })
    }

    /// Parse the four entries in the polynomial text syntax.
    pub fn from_strs(entries: &[&str; 4]) -> Result<Self, MapError> {
        let mut polys = Vec::with_capacity(4);
        for (i, s) in entries.iter().enumerate() {
            polys.push(
                parse_poly_with_degree(s, MultiDegree::ONES)
                    .map_err(|error| MapError::Parse { entry: i, error })?,
            );
        }
        Self::new(polys.try_into().expect("four entries"))
    }

    /// Parse a comma-separated list of four entries.
    pub fn parse(s: &str) -> Result<Self, MapError> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(MapError::Parse {
                entry: parts.len().min(4),
                error: ParseError {
                    column: 1,
                    message: format!("expected 4 comma-separated entries, found {}", parts.len()),
                },
            });
        }
        Self::from_strs(&[parts[0], parts[1], parts[2], parts[3]])
    }

    pub fn entries(&self) -> &[MultiPoly; 4] {
        &self.entries
    }

    /// Rows are entries, columns follow `monomials_of((1,1,1;0))`.
    pub fn coefficient_matrix(&self) -> QMatrix {
        coefficient_matrix(&self.entries)
    }

    pub fn dense(&self) -> [Vec<Rational>; 4] {
        std::array::from_fn(|i| self.entries[i].dense())
    }

    /// `A * phi`, for an invertible 4x4 matrix `A`.
    pub fn compose_left(&self, a: &QMatrix) -> Result<Self, MapError> {
        if a.rows() != 4 || a.cols() != 4 || a.rank() != 4 {
            return Err(MapError::SingularLeftFactor);
        }
        let entries = std::array::from_fn(|i| {
            let items: Vec<(Rational, &MultiPoly)> =
                (0..4).map(|j| (a.get(i, j).clone(), &self.entries[j])).collect();
            MultiPoly::linear_combination(MultiDegree::ONES, &items).expect("equal degrees")
        });
        Ok(TriLinearMap { entries })
    }

    /// `phi ∘ xi`.
    pub fn compose_right(&self, xi: &Automorphism) -> Self {
        TriLinearMap {
            entries: std::array::from_fn(|i| self.entries[i].transform_groups(xi.sources, &xi.mats)),
        }
    }

    /// Relabel factors: factor `perm[g]` of the result plays the role of factor `g` of `self`.
    pub fn permute_factors(&self, perm: [usize; 3]) -> Self {
        self.compose_right(&Automorphism {
            sources: perm,
            mats: std::array::from_fn(|_| identity2()),
        })
    }

    pub fn eval_point(&self, p: &Point) -> [Rational; 4] {
        std::array::from_fn(|i| self.entries[i].eval_xyz(&p[0], &p[1], &p[2]))
    }

    /// `g(t -> f)`.
    pub fn substitute_t(&self, g: &MultiPoly) -> MultiPoly {
        g.substitute_t_entries(&self.entries)
    }

    /// Entries as text, one per element.
    pub fn entry_strings(&self) -> [String; 4] {
        std::array::from_fn(|i| self.entries[i].to_string())
    }
}

impl fmt::Display for TriLinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.entry_strings();
        write!(f, "({} : {} : {} : {})", e[0], e[1], e[2], e[3])
    }
}

/// `g(t_0 -> f_0, ..., t_3 -> f_3)`.
pub fn substitute_t(g: &MultiPoly, phi: &TriLinearMap) -> MultiPoly {
    phi.substitute_t(g)
}

fn coefficient_matrix(entries: &[MultiPoly; 4]) -> QMatrix {
    Matrix::from_rows(entries.iter().map(|e| e.dense()).collect(), 8)
}

/// A point of (P^1)^3 as three coordinate pairs.
pub type Point = [[Rational; 2]; 3];

/// Automorphism of (P^1)^3: group `g` of the image is `mats[g]` applied to group
/// `sources[g]` of the argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    pub sources: [usize; 3],
    pub mats: [[[Rational; 2]; 2]; 3],
}

fn identity2() -> [[Rational; 2]; 2] {
    [
        [Rational::one(), Rational::zero()],
        [Rational::zero(), Rational::one()],
    ]
}

fn det2(m: &[[Rational; 2]; 2]) -> Rational {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

impl Automorphism {
    pub fn identity() -> Self {
        Automorphism {
            sources: [0, 1, 2],
            mats: std::array::from_fn(|_| identity2()),
        }
    }

    /// Pure factor permutation sending factor `g` of the argument to factor `perm[g]`.
    pub fn permutation(perm: [usize; 3]) -> Self {
        let mut sources = [0; 3];
        for g in 0..3 {
            sources[perm[g]] = g;
        }
        Automorphism {
            sources,
            mats: std::array::from_fn(|_| identity2()),
        }
    }

    /// Panics if some matrix is singular or `sources` is not a permutation.
    pub fn new(sources: [usize; 3], mats: [[[Rational; 2]; 2]; 3]) -> Self {
        let mut seen = [false; 3];
        for &s in &sources {
            assert!(s < 3 && !seen[s], "sources must be a permutation");
            seen[s] = true;
        }
        assert!(mats.iter().all(|m| !det2(m).is_zero()), "singular factor matrix");
        Automorphism { sources, mats }
    }

    pub fn apply(&self, p: &Point) -> Point {
        std::array::from_fn(|g| {
            let v = &p[self.sources[g]];
            let m = &self.mats[g];
            [
                &m[0][0] * &v[0] + &m[0][1] * &v[1],
                &m[1][0] * &v[0] + &m[1][1] * &v[1],
            ]
        })
    }

    pub fn inverse(&self) -> Self {
        let mut sources = [0; 3];
        let mut mats: [[[Rational; 2]; 2]; 3] = std::array::from_fn(|_| identity2());
        for g in 0..3 {
            let m = &self.mats[g];
            let d = det2(m);
            let s = self.sources[g];
            sources[s] = g;
            mats[s] = [
                [&m[1][1] / &d, -&m[0][1] / &d],
                [-&m[1][0] / &d, &m[0][0] / &d],
            ];
        }
        Automorphism { sources, mats }
    }

    /// Factor of the argument that feeds factor `g` of the image.
    pub fn source(&self, g: Axis) -> Axis {
        Axis::from_index(self.sources[g.index()])
    }
}
