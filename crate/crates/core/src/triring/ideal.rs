use std::collections::HashMap;
use std::sync::Arc;

use num::Zero;

use super::degree::{monomials_of, tri_count, tri_index, Monomial, MultiDegree};
use super::poly::MultiPoly;
use crate::exactmath::{Matrix, Rational};

fn index_of(d: MultiDegree) -> (Vec<Monomial>, HashMap<Monomial, usize>) {
    let mons = monomials_of(d);
    let idx = mons.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    (mons, idx)
}

/// Canonical (RREF) basis of the degree-`d` part of the ideal generated by `gens`,
/// as coefficient vectors over `monomials_of(d)`.
pub fn ideal_slice_basis(gens: &[MultiPoly], d: MultiDegree) -> Vec<Vec<Rational>> {
    let n = d.monomial_count();
    let (_, idx) = index_of(d);
    let mut rows = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let Some(cofactor) = d.checked_sub(g.degree()) else {
            continue;
        };
        for m in monomials_of(cofactor) {
            let mut row = vec![Rational::zero(); n];
            for (gm, c) in g.terms() {
                row[idx[&gm.mul(&m)]] = c.clone();
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return rows;
    }
    Matrix::from_rows(rows, n).row_space_basis()
}

/// Dimension of the degree-`d` part of the ideal generated by `gens`.
pub fn ideal_graded_dim(gens: &[MultiPoly], d: MultiDegree) -> usize {
    ideal_slice_basis(gens, d).len()
}

/// Basis of `U ∩ V` for subspaces given by spanning rows of length `n`.
fn intersect(u: &[Vec<Rational>], v: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    if u.is_empty() || v.is_empty() {
        return vec![];
    }
    // Solve sum a_i u_i - sum b_j v_j = 0.
    let cols = u.len() + v.len();
    let mut m = Matrix::zeros(n, cols);
    for (i, row) in u.iter().enumerate() {
        for (k, e) in row.iter().enumerate() {
            m.set(k, i, e.clone());
        }
    }
    for (j, row) in v.iter().enumerate() {
        for (k, e) in row.iter().enumerate() {
            m.set(k, u.len() + j, -e);
        }
    }
    let mut out = Vec::new();
    for ker in m.nullspace() {
        let mut w = vec![Rational::zero(); n];
        for (i, row) in u.iter().enumerate() {
            if ker[i].is_zero() {
                continue;
            }
            for (k, e) in row.iter().enumerate() {
                w[k] += &ker[i] * e;
            }
        }
        out.push(w);
    }
    if out.is_empty() {
        return out;
    }
    Matrix::from_rows(out, n).row_space_basis()
}

/// Canonical basis of the degree-`d` part of an intersection of ideals, each
/// given by generators.
pub fn intersection_slice_basis(components: &[Vec<MultiPoly>], d: MultiDegree) -> Vec<Vec<Rational>> {
    let n = d.monomial_count();
    let mut iter = components.iter();
    let Some(first) = iter.next() else {
        return vec![];
    };
    let mut acc = ideal_slice_basis(first, d);
    for c in iter {
        acc = intersect(&acc, &ideal_slice_basis(c, d), n);
    }
    acc
}

/// Dimension of the degree-`d` part of an intersection of ideals.
pub fn intersection_graded_dim(components: &[Vec<MultiPoly>], d: MultiDegree) -> usize {
    intersection_slice_basis(components, d).len()
}

/// Whether `p` lies in the degree-`deg(p)` part of the ideal generated by `gens`.
pub fn slice_contains(gens: &[MultiPoly], p: &MultiPoly) -> bool {
    let d = p.degree();
    let basis = ideal_slice_basis(gens, d);
    let mut with = basis.clone();
    with.push(p.dense());
    crate::exactmath::rank_of(&with, d.monomial_count()) == basis.len()
}

/// Dimension of `{g in R_d : g * m in B for every monomial m of degree (k,k,k)}`,
/// i.e. the degree-`d` part of the colon ideal `B : N^k` with `N` the irrelevant ideal.
///
/// `k = 0` returns [`ideal_graded_dim`].
pub fn colon_graded_dim(gens: &[MultiPoly], d: MultiDegree, k: u32) -> usize {
    if k == 0 {
        return ideal_graded_dim(gens, d);
    }
    let e = MultiDegree::tri(k, k, k);
    let big = d.add(e);
    let nb = big.monomial_count();
    let basis = ideal_slice_basis(gens, big);
    let ann: Vec<Vec<Rational>> = if basis.is_empty() {
        (0..nb)
            .map(|i| {
                let mut v = vec![Rational::zero(); nb];
                v[i] = num::One::one();
                v
            })
            .collect()
    } else {
        Matrix::from_rows(basis, nb).nullspace()
    };
    let (_, big_idx) = index_of(big);
    let small = monomials_of(d);
    let mut rows = Vec::new();
    for lam in &ann {
        for m in monomials_of(e) {
            rows.push(
                small
                    .iter()
                    .map(|u| lam[big_idx[&u.mul(&m)]].clone())
                    .collect::<Vec<_>>(),
            );
        }
    }
    d.monomial_count() - crate::exactmath::rank_of(&rows, small.len())
}

/// Slice dimensions of an ideal generated by t-free forms of tri-degree (1,1,1).
///
/// Works with the orthogonal complement `B_D^perp` of each slice, obtained
/// recursively: for `D_g >= 2`, a functional on `R_D` kills `B_D` iff both of its
/// contractions by the variables of group `g` kill `B_{D - e_g}`.
pub struct SliceEngine<F: crate::exactmath::Field> {
    gens: Vec<[F; 8]>,
    cache: HashMap<[u32; 3], Arc<Vec<Vec<F>>>>,
}

impl<F: crate::exactmath::Field> SliceEngine<F> {
    pub fn new(gens: Vec<[F; 8]>) -> Self {
        SliceEngine {
            gens,
            cache: HashMap::new(),
        }
    }

    /// Basis of the functionals on `R_D` vanishing on `B_D`.
    pub fn annihilator(&mut self, d: [u32; 3]) -> Arc<Vec<Vec<F>>> {
        if let Some(a) = self.cache.get(&d) {
            return a.clone();
        }
        let n = tri_count(d);
        let result = if d.contains(&0) {
            (0..n)
                .map(|i| {
                    let mut v = vec![F::zero(); n];
                    v[i] = F::one();
                    v
                })
                .collect()
        } else if d == [1, 1, 1] {
            let rows: Vec<Vec<F>> = self.gens.iter().map(|g| g.to_vec()).collect();
            Matrix::from_rows(rows, 8).nullspace()
        } else {
            let g = (0..3).max_by_key(|&i| (d[i], std::cmp::Reverse(i))).unwrap();
            let mut dp = d;
            dp[g] -= 1;
            let prev = self.annihilator(dp);
            lift(&prev, d, g)
        };
        let result = Arc::new(result);
        self.cache.insert(d, result.clone());
        result
    }

    /// `dim B_d`.
    pub fn hilbert(&mut self, d: [u32; 3]) -> usize {
        tri_count(d) - self.annihilator(d).len()
    }

    /// Dimension of `(B : N^k)_d`.
    pub fn colon(&mut self, d: [u32; 3], k: u32) -> usize {
        if k == 0 {
            return self.hilbert(d);
        }
        let big = [d[0] + k, d[1] + k, d[2] + k];
        let mut cur: Vec<Vec<F>> = self.annihilator(big).as_ref().clone();
        let mut deg = big;
        for g in 0..3 {
            for _ in 0..k {
                cur = contract(&cur, deg, g);
                deg[g] -= 1;
            }
        }
        tri_count(d) - cur.len()
    }
}

/// Functionals on `R_D` whose contractions by both group-`g` variables lie in
/// the span of `prev` (functionals on `R_{D - e_g}`).
fn lift<F: crate::exactmath::Field>(prev: &[Vec<F>], d: [u32; 3], g: usize) -> Vec<Vec<F>> {
    let a = prev.len();
    if a == 0 {
        return vec![];
    }
    let mut dp = d;
    dp[g] -= 1;
    let mut dpp = dp;
    dpp[g] -= 1;
    let unit = |mut pqr: [u32; 3], delta: u32| {
        pqr[g] += delta;
        pqr
    };
    // alpha = sum c_i prev_i, beta = sum d_i prev_i; alpha(x_g1 m) = beta(x_g0 m).
    let mut rows = Vec::with_capacity(tri_count(dpp));
    for p in 0..=dpp[0] {
        for q in 0..=dpp[1] {
            for r in 0..=dpp[2] {
                let base = [p, q, r];
                let up = unit(base, 1);
                let i1 = tri_index(dp, up[0], up[1], up[2]);
                let i0 = tri_index(dp, p, q, r);
                let mut row = Vec::with_capacity(2 * a);
                row.extend(prev.iter().map(|v| v[i1].clone()));
                row.extend(prev.iter().map(|v| v[i0].neg()));
                rows.push(row);
            }
        }
    }
    let kernel = Matrix::from_rows(rows, 2 * a).nullspace();
    let n = tri_count(d);
    kernel
        .into_iter()
        .map(|cd| {
            let combine = |coeffs: &[F]| {
                let mut out = vec![F::zero(); tri_count(dp)];
                for (c, v) in coeffs.iter().zip(prev) {
                    if c.is_zero() {
                        continue;
                    }
                    for (o, e) in out.iter_mut().zip(v) {
                        if !e.is_zero() {
                            *o = o.add(&c.mul(e));
                        }
                    }
                }
                out
            };
            let alpha = combine(&cd[..a]);
            let beta = combine(&cd[a..]);
            let mut lam = vec![F::zero(); n];
            for p in 0..=d[0] {
                for q in 0..=d[1] {
                    for r in 0..=d[2] {
                        let pqr = [p, q, r];
                        let v = if pqr[g] < d[g] {
                            alpha[tri_index(dp, p, q, r)].clone()
                        } else {
                            let mut s = pqr;
                            s[g] -= 1;
                            beta[tri_index(dp, s[0], s[1], s[2])].clone()
                        };
                        lam[tri_index(d, p, q, r)] = v;
                    }
                }
            }
            lam
        })
        .collect()
}

/// Basis of the span of the contractions of `vecs` (functionals on `R_D`) by
/// the two variables of group `g`.
fn contract<F: crate::exactmath::Field>(vecs: &[Vec<F>], d: [u32; 3], g: usize) -> Vec<Vec<F>> {
    let mut dp = d;
    dp[g] -= 1;
    let n = tri_count(dp);
    let mut rows = Vec::with_capacity(2 * vecs.len());
    for v in vecs {
        for shift in 0..2u32 {
            let mut w = Vec::with_capacity(n);
            for p in 0..=dp[0] {
                for q in 0..=dp[1] {
                    for r in 0..=dp[2] {
                        let mut pqr = [p, q, r];
                        pqr[g] += shift;
                        w.push(v[tri_index(d, pqr[0], pqr[1], pqr[2])].clone());
                    }
                }
            }
            rows.push(w);
        }
    }
    if rows.is_empty() {
        return rows;
    }
    Matrix::from_rows(rows, n).row_space_basis()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Fp;
    use crate::triring::parse_poly;

    fn gens(s: &[&str]) -> Vec<MultiPoly> {
        s.iter().map(|g| parse_poly(g).unwrap()).collect()
    }

    #[test]
    fn twisted_cubic_slices() {
        let b = gens(&["x0*y1 - x1*y0", "x0*z1 - x1*z0", "y0*z1 - y1*z0"]);
        assert_eq!(ideal_graded_dim(&b, MultiDegree::ONES), 4);
        assert_eq!(ideal_graded_dim(&b, MultiDegree::tri(1, 0, 0)), 0);
        assert_eq!(colon_graded_dim(&b, MultiDegree::ONES, 1), 4);
    }

    #[test]
    fn line_slice() {
        let b = gens(&["y1", "z1"]);
        assert_eq!(ideal_graded_dim(&b, MultiDegree::ONES), 6);
    }

    #[test]
    fn colon_of_irrelevant_component() {
        let b = gens(&["x0", "x1"]);
        assert_eq!(colon_graded_dim(&b, MultiDegree::tri(0, 1, 1), 1), 4);
        assert_eq!(ideal_graded_dim(&b, MultiDegree::tri(0, 1, 1)), 0);
    }

    #[test]
    fn intersection_of_lines() {
        let comps = vec![gens(&["x1", "y1"]), gens(&["x1", "z1"]), gens(&["y1", "z1"])];
        assert_eq!(intersection_graded_dim(&comps, MultiDegree::ONES), 4);
        let comps = vec![gens(&["x1", "z0"]), gens(&["y1", "z1"])];
        assert_eq!(intersection_graded_dim(&comps, MultiDegree::ONES), 4);
    }

    fn engine<F: crate::exactmath::Field>(polys: &[MultiPoly]) -> SliceEngine<F> {
        SliceEngine::new(
            polys
                .iter()
                .map(|p| {
                    let d = p.dense();
                    std::array::from_fn(|i| F::from_rational(&d[i]).unwrap())
                })
                .collect(),
        )
    }

    #[test]
    fn engine_agrees_with_direct_computation() {
        let f = gens(&[
            "x0*y1*z1",
            "x1*y0*z1",
            "x1*y1*z0",
            "x1*y0*z0 + x0*y1*z0 + x0*y0*z1",
        ]);
        let mut eq = engine::<Rational>(&f);
        let mut ep = engine::<Fp>(&f);
        for d in [[1, 1, 1], [2, 1, 1], [2, 2, 1], [1, 2, 2], [0, 2, 2], [2, 2, 2]] {
            let md = MultiDegree::tri(d[0], d[1], d[2]);
            let exact = ideal_graded_dim(&f, md);
            assert_eq!(eq.hilbert(d), exact, "{d:?}");
            assert_eq!(ep.hilbert(d), exact, "{d:?}");
        }
        for d in [[1, 1, 1], [0, 1, 1], [1, 0, 0]] {
            let md = MultiDegree::tri(d[0], d[1], d[2]);
            assert_eq!(ep.colon(d, 1), colon_graded_dim(&f, md, 1), "{d:?}");
        }
    }
}
