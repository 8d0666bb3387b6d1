//! Graded first syzygies of the entries of a tri-linear map.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::exactmath::{Field, Fp, Matrix, Rational};
use crate::triring::{tri_count, tri_index, MultiDegree, MultiPoly, SliceEngine, TriLinearMap};

/// Canonical basis of the syzygies `(a0,a1,a2,a3)`, `sum a_i f_i = 0`, of one tri-degree.
#[derive(Clone, Debug, PartialEq)]
pub struct SyzygyBasis {
    pub coeff_degree: MultiDegree,
    pub elements: Vec<[MultiPoly; 4]>,
}

impl SyzygyBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }
}

/// Entries as coefficient vectors over the eight (1,1,1) monomials.
pub(crate) fn entry_coeffs<F: Field>(phi: &TriLinearMap) -> Vec<[F; 8]> {
    phi.dense()
        .iter()
        .map(|row| {
            std::array::from_fn(|i| {
                F::from_rational(&row[i]).expect("coefficient denominator divisible by the field characteristic")
            })
        })
        .collect()
}

/// Matrix of `(a_i) -> sum a_i f_i` from `R_d^4` to `R_{d+(1,1,1)}`; column `i*n_d + u`.
fn syzygy_matrix<F: Field>(gens: &[[F; 8]], d: [u32; 3]) -> Matrix<F> {
    let n = tri_count(d);
    let big = [d[0] + 1, d[1] + 1, d[2] + 1];
    let mut m = Matrix::zeros(tri_count(big), gens.len() * n);
    for (i, g) in gens.iter().enumerate() {
        for p in 0..=d[0] {
            for q in 0..=d[1] {
                for r in 0..=d[2] {
                    let col = i * n + tri_index(d, p, q, r);
                    for (t, c) in g.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let (dp, dq, dr) = ((t >> 2) as u32, ((t >> 1) & 1) as u32, (t & 1) as u32);
                        let row = tri_index(big, p + dp, q + dq, r + dr);
                        m.set(row, col, c.clone());
                    }
                }
            }
        }
    }
    m
}

/// Syzygy kernels and minimal-generator counts by degree, memoized.
pub(crate) struct SyzygyTable<F: Field> {
    gens: Vec<[F; 8]>,
    kernels: HashMap<[u32; 3], Vec<Vec<F>>>,
}

impl<F: Field> SyzygyTable<F> {
    pub fn new(gens: Vec<[F; 8]>) -> Self {
        SyzygyTable {
            gens,
            kernels: HashMap::new(),
        }
    }

    pub fn kernel(&mut self, d: [u32; 3]) -> &Vec<Vec<F>> {
        if !self.kernels.contains_key(&d) {
            let k = syzygy_matrix(&self.gens, d).nullspace();
            self.kernels.insert(d, k);
        }
        &self.kernels[&d]
    }

    /// `dim Syz(d)` minus the dimension of the multiples of lower-degree syzygies.
    pub fn new_count(&mut self, d: [u32; 3]) -> usize {
        let total = self.kernel(d).len();
        if total == 0 {
            return 0;
        }
        let n = tri_count(d);
        let mut multiples: Vec<Vec<F>> = Vec::new();
        for g in 0..3 {
            if d[g] == 0 {
                continue;
            }
            let mut lower = d;
            lower[g] -= 1;
            let nl = tri_count(lower);
            let ker = self.kernel(lower).clone();
            for s in &ker {
                for shift in 0..2u32 {
                    let mut v = vec![F::zero(); 4 * n];
                    for i in 0..4 {
                        for p in 0..=lower[0] {
                            for q in 0..=lower[1] {
                                for r in 0..=lower[2] {
                                    let c = &s[i * nl + tri_index(lower, p, q, r)];
                                    if c.is_zero() {
                                        continue;
                                    }
                                    let mut pqr = [p, q, r];
                                    pqr[g] += shift;
                                    v[i * n + tri_index(d, pqr[0], pqr[1], pqr[2])] = c.clone();
                                }
                            }
                        }
                    }
                    multiples.push(v);
                }
            }
        }
        total - crate::exactmath::rank_of(&multiples, 4 * n)
    }
}

fn tri(d: MultiDegree) -> [u32; 3] {
    assert_eq!(d.d4(), 0, "syzygy degrees are t-free");
    d.tri_part()
}

/// Canonical basis of the degree-`d` syzygies of the entries of `phi`.
pub fn syzygy_space(phi: &TriLinearMap, d: MultiDegree) -> SyzygyBasis {
    let dd = tri(d);
    let n = tri_count(dd);
    let mut table = SyzygyTable::<Rational>::new(entry_coeffs(phi));
    let elements = table
        .kernel(dd)
        .iter()
        .map(|v| std::array::from_fn(|i| MultiPoly::from_dense(d, &v[i * n..(i + 1) * n])))
        .collect();
    SyzygyBasis {
        coeff_degree: d,
        elements,
    }
}

/// Number of minimal first-syzygy generators of degree `d`.
pub fn new_syzygy_count(phi: &TriLinearMap, d: MultiDegree) -> usize {
    SyzygyTable::<Rational>::new(entry_coeffs(phi)).new_count(tri(d))
}

/// Table indexed by tri-degree, sorted.
pub type DegreeTable = BTreeMap<[u32; 3], usize>;

/// Graded invariants of the base ideal and its syzygies over a box of tri-degrees.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BettiFingerprint {
    #[serde(rename = "box")]
    pub box_: [u32; 3],
    /// Minimal first-syzygy generators, over the box intersected with [0,2]^3.
    #[serde(with = "table_serde")]
    pub new_counts: DegreeTable,
    /// `dim (B_phi)_d`.
    #[serde(with = "table_serde")]
    pub hilbert: DegreeTable,
    /// `dim (B_phi : N^k)_d` for `k = 1, 2`.
    #[serde(with = "sat_serde")]
    pub sat_hilbert: BTreeMap<u32, DegreeTable>,
}

/// Tables serialize as lists of `[degree, value]` pairs.
mod table_serde {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::DegreeTable;

    pub fn serialize<S: Serializer>(t: &DegreeTable, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(t.iter())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<DegreeTable, D::Error> {
        Ok(Vec::<([u32; 3], usize)>::deserialize(d)?.into_iter().collect())
    }
}

mod sat_serde {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serializer};

    use super::DegreeTable;

    pub fn serialize<S: Serializer>(t: &BTreeMap<u32, DegreeTable>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(t.iter().map(|(k, v)| (k, v.iter().collect::<Vec<_>>())))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<u32, DegreeTable>, D::Error> {
        let raw = Vec::<(u32, Vec<([u32; 3], usize)>)>::deserialize(d)?;
        Ok(raw.into_iter().map(|(k, v)| (k, v.into_iter().collect())).collect())
    }
}

fn permute_table(t: &DegreeTable, perm: [usize; 3]) -> DegreeTable {
    t.iter()
        .map(|(d, v)| {
            let mut e = [0; 3];
            for g in 0..3 {
                e[perm[g]] = d[g];
            }
            (e, *v)
        })
        .collect()
}

impl BettiFingerprint {
    /// Fingerprint of `phi.permute_factors(perm)`, given the fingerprint of `phi`.
    pub fn permuted(&self, perm: [usize; 3]) -> BettiFingerprint {
        let mut b = [0; 3];
        for g in 0..3 {
            b[perm[g]] = self.box_[g];
        }
        BettiFingerprint {
            box_: b,
            new_counts: permute_table(&self.new_counts, perm),
            hilbert: permute_table(&self.hilbert, perm),
            sat_hilbert: self
                .sat_hilbert
                .iter()
                .map(|(k, t)| (*k, permute_table(t, perm)))
                .collect(),
        }
    }

    /// Multiset of generator degrees, each listed as often as its count.
    pub fn generator_degrees(&self) -> Vec<[u32; 3]> {
        self.new_counts
            .iter()
            .flat_map(|(d, c)| std::iter::repeat_n(*d, *c))
            .collect()
    }

    pub fn total_generators(&self) -> usize {
        self.new_counts.values().sum()
    }
}

fn fingerprint_over<F: Field>(phi: &TriLinearMap, box_: [u32; 3]) -> BettiFingerprint {
    assert!(box_.iter().all(|&b| b <= 3), "box must be at most (3,3,3)");
    let gens = entry_coeffs::<F>(phi);
    let mut engine = SliceEngine::new(gens.clone());
    let mut syz = SyzygyTable::new(gens);
    let mut new_counts = DegreeTable::new();
    let mut hilbert = DegreeTable::new();
    let mut sat: BTreeMap<u32, DegreeTable> = BTreeMap::new();
    for a in 0..=box_[0] {
        for b in 0..=box_[1] {
            for c in 0..=box_[2] {
                let d = [a, b, c];
                hilbert.insert(d, engine.hilbert(d));
                for k in 1..=2 {
                    sat.entry(k).or_default().insert(d, engine.colon(d, k));
                }
                if d.iter().all(|&v| v <= 2) {
                    new_counts.insert(d, syz.new_count(d));
                }
            }
        }
    }
    BettiFingerprint {
        box_,
        new_counts,
        hilbert,
        sat_hilbert: sat,
    }
}

/// Fingerprint tables over `box_` (at most (3,3,3)), computed in the prime field
/// of order 2^61 - 1.
pub fn betti_fingerprint(phi: &TriLinearMap, box_: [u32; 3]) -> BettiFingerprint {
    fingerprint_over::<Fp>(phi, box_)
}

/// Same tables computed over Q.
pub fn betti_fingerprint_exact(phi: &TriLinearMap, box_: [u32; 3]) -> BettiFingerprint {
    fingerprint_over::<Rational>(phi, box_)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(s: [&str; 4]) -> TriLinearMap {
        TriLinearMap::from_strs(&s).unwrap()
    }

    #[test]
    fn twisted_cubic_has_three_linear_syzygies() {
        let phi = map([
            "x1*y0*z1 - x0*y1*z1",
            "x1*y1*z0 - x0*y1*z1",
            "x0*y1*z0 - x0*y0*z1",
            "x1*y0*z0 - x0*y0*z1",
        ]);
        for g in crate::triring::Axis::ALL {
            let b = syzygy_space(&phi, MultiDegree::e(g));
            assert_eq!(b.dim(), 1);
            let s = &b.elements[0];
            let mut acc = MultiPoly::zero(MultiDegree::e(g).add(MultiDegree::ONES));
            for i in 0..4 {
                acc = acc.add(&s[i].mul(&phi.entries()[i])).unwrap();
            }
            assert!(acc.is_zero());
        }
        assert_eq!(new_syzygy_count(&phi, MultiDegree::tri(1, 1, 0)), 0);
    }

    #[test]
    fn monomial_map_syzygies_vanish_on_substitution() {
        let phi = map(["x1*y1*z1", "x0*y1*z1", "x1*y0*z1", "x1*y1*z0"]);
        let b = syzygy_space(&phi, MultiDegree::tri(1, 0, 1));
        for s in &b.elements {
            let mut acc = MultiPoly::zero(MultiDegree::tri(2, 1, 2));
            for i in 0..4 {
                acc = acc.add(&s[i].mul(&phi.entries()[i])).unwrap();
            }
            assert!(acc.is_zero());
        }
        assert!(b.elements.iter().all(|s| s.iter().any(|p| !p.is_zero())));
    }

    #[test]
    fn prime_field_fingerprint_matches_exact() {
        let phi = map(["x0*y1*z1", "x1*y0*z1", "x1*y1*z0", "x1*y0*z0 + x0*y1*z0 + x0*y0*z1"]);
        assert_eq!(betti_fingerprint(&phi, [2, 2, 2]), betti_fingerprint_exact(&phi, [2, 2, 2]));
    }

    #[test]
    fn permuted_fingerprint_matches_permuted_map() {
        let phi = map(["x1*y1*z1", "x0*y1*z1", "x0*y0*z1", "x1*y0*z0 - x0*y1*z0"]);
        let perm = [2, 0, 1];
        let lhs = betti_fingerprint(&phi, [2, 2, 2]).permuted(perm);
        let rhs = betti_fingerprint(&phi.permute_factors(perm), [2, 2, 2]);
        assert_eq!(lhs, rhs);
    }
}
