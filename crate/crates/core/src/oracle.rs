//! Definition-level checks: exact fiber solving over random targets, and
//! dominance and injectivity sampling.

use std::collections::BTreeSet;

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactmath::{gcd_binary_forms, BinaryForm, Matrix, QMatrix, Rational};
use crate::triring::{monomials_of, Automorphism, Axis, MultiDegree, MultiPoly, Point, TriLinearMap, Var};

const FRAMES: usize = 3;
const MAX_RETRIES: usize = 5;

/// Rational points of one fiber plus the number of complex points.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberResult {
    pub target: [Rational; 4],
    pub rational_points: Vec<Point>,
    pub complex_count: usize,
    /// `false` when `complex_count` is only a lower bound.
    pub exact: bool,
    pub discarded_base_points: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("target is the zero vector")]
    ZeroTarget,
    #[error("no usable coordinate frame after {attempts} attempts")]
    Degenerate { attempts: usize },
}

/// A random rational number `n/d` with `|n| <= 20`, `1 <= d <= 20`.
fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let n: i64 = rng.random_range(-20..=20);
    let d: i64 = rng.random_range(1..=20);
    Rational::new(n.into(), d.into())
}

fn random_pair(rng: &mut ChaCha8Rng) -> [Rational; 2] {
    loop {
        let p = [small_rational(rng), small_rational(rng)];
        if !(p[0].is_zero() && p[1].is_zero()) {
            return p;
        }
    }
}

/// A random rational point of (P^1)^3.
pub fn random_point(rng: &mut ChaCha8Rng) -> Point {
    std::array::from_fn(|_| random_pair(rng))
}

/// Random automorphism with integer matrices in [-3, 3]; the factor order is
/// shuffled when `permute` is set.
pub fn random_automorphism(rng: &mut ChaCha8Rng, permute: bool) -> Automorphism {
    let mut sources = [0usize, 1, 2];
    if permute {
        for i in (1..3).rev() {
            let j = rng.random_range(0..=i);
            sources.swap(i, j);
        }
    }
    let mats = std::array::from_fn(|_| loop {
        let m: [[i64; 2]; 2] = std::array::from_fn(|_| std::array::from_fn(|_| rng.random_range(-3..=3)));
        if m[0][0] * m[1][1] - m[0][1] * m[1][0] != 0 {
            break m.map(|r| r.map(|v| Rational::from_integer(v.into())));
        }
    });
    Automorphism::new(sources, mats)
}

/// Random invertible 4x4 integer matrix with entries in [-3, 3].
pub fn random_left_factor(rng: &mut ChaCha8Rng) -> QMatrix {
    loop {
        let entries = (0..16)
            .map(|_| Rational::from_integer(rng.random_range(-3i64..=3).into()))
            .collect();
        let m = Matrix::from_vec(4, 4, entries);
        if m.rank() == 4 {
            return m;
        }
    }
}

/// Scale each pair so its first nonzero coordinate is 1.
pub fn normalize_point(p: &Point) -> Point {
    std::array::from_fn(|g| {
        let [a, b] = &p[g];
        if a.is_zero() {
            [Rational::zero(), Rational::one()]
        } else {
            [Rational::one(), b / a]
        }
    })
}

/// Projective equality of two vectors.
pub fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    (0..a.len()).all(|i| (i + 1..a.len()).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

fn normalize_vec(v: &[Rational; 4]) -> Option<[Rational; 4]> {
    let lead = v.iter().find(|c| !c.is_zero())?.clone();
    Some(std::array::from_fn(|i| &v[i] / &lead))
}

// ---------------------------------------------------------------------------
// Linear algebra of multilinear forms split along one factor.

/// Rows are the forms; columns are the monomials in the other factors (in
/// `monomials_of` order); entries are binary forms in `axis`.
pub(crate) fn group_matrix(forms: &[MultiPoly], axis: Axis) -> Vec<Vec<BinaryForm>> {
    let deg = forms[0].degree();
    let da = deg.axis(axis) as usize;
    let mut rest = deg;
    rest.0[axis.index()] = 0;
    let cols = monomials_of(rest);
    forms
        .iter()
        .map(|f| {
            let parts = f.binary_parts(axis);
            cols.iter()
                .map(|m| {
                    parts
                        .iter()
                        .find(|(r, _)| r == m)
                        .map(|(_, b)| b.clone())
                        .unwrap_or_else(|| BinaryForm::zero(axis, da))
                })
                .collect()
        })
        .collect()
}

/// Determinant of a square matrix of binary forms by cofactor expansion.
pub(crate) fn det_forms(m: &[Vec<&BinaryForm>]) -> BinaryForm {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc: Option<BinaryForm> = None;
    for c in 0..n {
        let sub: Vec<Vec<&BinaryForm>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| *v).collect())
            .collect();
        let term = m[0][c].mul(&det_forms(&sub));
        acc = Some(match acc {
            None => term,
            Some(a) if c % 2 == 0 => a.add(&term),
            Some(a) => a.sub(&term),
        });
    }
    acc.expect("nonempty matrix")
}

/// All k x k minors of a matrix of binary forms.
pub(crate) fn minors(m: &[Vec<BinaryForm>], k: usize) -> Vec<BinaryForm> {
    let rows = subsets(m.len(), k);
    let cols = subsets(m[0].len(), k);
    let mut out = Vec::with_capacity(rows.len() * cols.len());
    for r in &rows {
        for c in &cols {
            let sub: Vec<Vec<&BinaryForm>> = r.iter().map(|&i| c.iter().map(|&j| &m[i][j]).collect()).collect();
            out.push(det_forms(&sub));
        }
    }
    out
}

pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out.sort();
    out
}

pub(crate) fn eval_matrix(m: &[Vec<BinaryForm>], root: &(Rational, Rational)) -> QMatrix {
    let cols = m[0].len();
    Matrix::from_rows(
        m.iter()
            .map(|row| row.iter().map(|b| b.eval(&root.0, &root.1)).collect())
            .collect(),
        cols,
    )
}

/// Solutions of a linear system on 2x2 tensors that are rank one.
pub(crate) enum KernelPoints {
    Finite(Vec<([Rational; 2], [Rational; 2])>),
    Infinite,
}

fn factor_rank_one(w: &[Rational]) -> Option<([Rational; 2], [Rational; 2])> {
    if &w[0] * &w[3] != &w[1] * &w[2] {
        return None;
    }
    let k = w.iter().position(|c| !c.is_zero())?;
    let (j, l) = (k / 2, k % 2);
    Some(([w[l].clone(), w[2 + l].clone()], [w[2 * j].clone(), w[2 * j + 1].clone()]))
}

/// Rank-one tensors `y ⊗ z` in the kernel of a matrix with four columns.
pub(crate) fn rank_one_kernel(m: &QMatrix) -> KernelPoints {
    let ker = m.nullspace();
    match ker.len() {
        0 => KernelPoints::Finite(vec![]),
        1 => KernelPoints::Finite(factor_rank_one(&ker[0]).into_iter().collect()),
        2 => {
            let (a, b) = (&ker[0], &ker[1]);
            let mixed = &a[0] * &b[3] + &b[0] * &a[3] - &a[1] * &b[2] - &b[1] * &a[2];
            let q = BinaryForm::new(
                Axis::X,
                vec![&a[0] * &a[3] - &a[1] * &a[2], mixed, &b[0] * &b[3] - &b[1] * &b[2]],
            );
            if q.is_zero() {
                return KernelPoints::Infinite;
            }
            let pts = q
                .rational_roots()
                .into_iter()
                .filter_map(|(s, t)| {
                    let w: Vec<Rational> = (0..4).map(|i| &s * &a[i] + &t * &b[i]).collect();
                    factor_rank_one(&w)
                })
                .collect();
            KernelPoints::Finite(pts)
        }
        _ => KernelPoints::Infinite,
    }
}

/// Assemble a point from the `axis` coordinate and the pairs of the two other
/// factors in increasing order.
pub(crate) fn assemble(axis: Axis, a: &(Rational, Rational), u: [Rational; 2], v: [Rational; 2]) -> Point {
    let mut others = [u, v].into_iter();
    std::array::from_fn(|g| {
        if g == axis.index() {
            [a.0.clone(), a.1.clone()]
        } else {
            others.next().expect("two other factors")
        }
    })
}

// ---------------------------------------------------------------------------
// Fibers.

/// Three entry combinations vanishing exactly on the fiber over `target`
/// (together with the base locus).
fn constraint_forms(phi: &TriLinearMap, target: &[Rational; 4]) -> Vec<MultiPoly> {
    let p = target.iter().position(|c| !c.is_zero()).expect("nonzero target");
    let f = phi.entries();
    (0..4)
        .filter(|&q| q != p)
        .map(|q| {
            MultiPoly::linear_combination(
                MultiDegree::ONES,
                &[(target[p].clone(), &f[q]), (-target[q].clone(), &f[p])],
            )
            .expect("equal degrees")
        })
        .collect()
}

/// The x-coordinate eliminant of three (1,1,1)-forms along `axis`: the rank-one
/// condition on the kernel vector, or the gcd of the maximal minors when that
/// vanishes identically. The flag records which one was used.
fn eliminant(forms: &[MultiPoly], axis: Axis) -> Option<(BinaryForm, bool)> {
    let m = group_matrix(forms, axis);
    // column subsets come in lexicographic order, so reversing indexes the
    // minors by the deleted column; kernel entry c is (-1)^c times that minor.
    let mut w = minors(&m, 3);
    w.reverse();
    for (c, v) in w.iter_mut().enumerate() {
        if c % 2 == 1 {
            *v = v.scale(&-Rational::one());
        }
    }
    let e = w[0].mul(&w[3]).sub(&w[1].mul(&w[2]));
    if !e.is_zero() {
        return Some((e, true));
    }
    gcd_binary_forms(&w).ok().map(|g| (g, false))
}

struct FrameFiber {
    count: usize,
    axes_agree: bool,
    points: Vec<Point>,
    base_points: Vec<Point>,
}

fn frame_fiber(psi: &TriLinearMap, target: &[Rational; 4], reference: &[Rational; 4]) -> Option<FrameFiber> {
    let gt = constraint_forms(psi, target);
    let gr = constraint_forms(psi, reference);
    let mut counts = Vec::new();
    let mut points = BTreeSet::new();
    let mut base_points = BTreeSet::new();
    for axis in Axis::ALL {
        let (Some((ct, mt)), Some((cr, mr))) = (eliminant(&gt, axis), eliminant(&gr, axis)) else {
            continue;
        };
        if mt != mr {
            continue;
        }
        let s = ct.squarefree_part();
        let Ok(common) = gcd_binary_forms(&[s.clone(), cr]) else {
            continue;
        };
        let f = s.exact_div(&common).expect("gcd divides");
        counts.push(f.degree());
        let m = group_matrix(&gt, axis);
        for root in f.rational_roots() {
            let KernelPoints::Finite(sols) = rank_one_kernel(&eval_matrix(&m, &root)) else {
                continue;
            };
            for (u, v) in sols {
                let p = normalize_point(&assemble(axis, &root, u, v));
                let img = psi.eval_point(&p);
                if img.iter().all(|c| c.is_zero()) {
                    base_points.insert(p);
                } else if proportional(&img, target) {
                    points.insert(p);
                }
            }
        }
    }
    let count = *counts.iter().max()?;
    Some(FrameFiber {
        count,
        axes_agree: counts.iter().all(|&c| c == count),
        points: points.into_iter().collect(),
        base_points: base_points.into_iter().collect(),
    })
}

fn random_image(phi: &TriLinearMap, rng: &mut ChaCha8Rng) -> [Rational; 4] {
    loop {
        let v = phi.eval_point(&random_point(rng));
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

/// Exact fiber of `phi` over `target`, solved in several random coordinate frames.
pub fn fiber(phi: &TriLinearMap, target: &[Rational; 4], seed: u64) -> Result<FiberResult, OracleError> {
    if target.iter().all(|c| c.is_zero()) {
        return Err(OracleError::ZeroTarget);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = Vec::new();
    let mut agree = Vec::new();
    let mut points = BTreeSet::new();
    let mut base_points = BTreeSet::new();
    let mut attempts = 0;
    while counts.len() < FRAMES && attempts < FRAMES + MAX_RETRIES {
        attempts += 1;
        let xi = random_automorphism(&mut rng, false);
        let psi = phi.compose_right(&xi);
        let reference = random_image(&psi, &mut rng);
        if proportional(&reference, target) {
            continue;
        }
        let Some(ff) = frame_fiber(&psi, target, &reference) else {
            continue;
        };
        counts.push(ff.count);
        agree.push(ff.axes_agree);
        for p in ff.points {
            points.insert(normalize_point(&xi.apply(&p)));
        }
        for p in ff.base_points {
            base_points.insert(normalize_point(&xi.apply(&p)));
        }
    }
    let Some(&min) = counts.iter().min() else {
        return Err(OracleError::Degenerate { attempts });
    };
    let rational_points: Vec<Point> = points
        .into_iter()
        .filter(|p| {
            let img = phi.eval_point(p);
            img.iter().any(|c| !c.is_zero()) && proportional(&img, target)
        })
        .collect();
    let mut exact = counts.iter().all(|&c| c == min) && agree.iter().all(|&a| a);
    let mut complex_count = min;
    if rational_points.len() > complex_count {
        complex_count = rational_points.len();
        exact = false;
    }
    Ok(FiberResult {
        target: target.clone(),
        rational_points,
        complex_count,
        exact,
        discarded_base_points: base_points.len(),
    })
}

/// Fiber over the image of a random point, for the given seed.
///
/// Small random points can land on a contracted surface, whose fibers are
/// curves; such targets are redrawn.
pub fn fiber_at_random_target(phi: &TriLinearMap, seed: u64) -> Result<FiberResult, OracleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut last = None;
    for _ in 0..MAX_RETRIES {
        let target = random_image(phi, &mut rng);
        match fiber(phi, &target, seed) {
            Err(e @ OracleError::Degenerate { .. }) => last = Some(e),
            r => return r,
        }
    }
    Err(last.expect("at least one attempt"))
}

// ---------------------------------------------------------------------------
// Sampling.

/// Two distinct points with the same image, if sampling finds one.
pub fn injectivity_witness(phi: &TriLinearMap, trials: usize, seed: u64) -> Option<(Point, Point)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: Vec<([Rational; 4], Point)> = Vec::new();
    for i in 0..trials {
        let p = normalize_point(&random_point(&mut rng));
        let img = phi.eval_point(&p);
        let Some(n) = normalize_vec(&img) else {
            continue;
        };
        if let Some((_, q)) = seen.iter().find(|(m, q)| m == &n && q != &p) {
            return Some((q.clone(), p));
        }
        if let Ok(fr) = fiber(phi, &img, seed.wrapping_add(i as u64)) {
            if let Some(q) = fr.rational_points.into_iter().find(|q| q != &p) {
                return Some((p, q));
            }
        }
        seen.push((n, p));
    }
    None
}

/// `true` iff no collision was found among `trials` random points and their fibers.
pub fn injectivity_sample(phi: &TriLinearMap, trials: usize, seed: u64) -> bool {
    injectivity_witness(phi, trials, seed).is_none()
}

/// Rank of the differential at a random point of the chart x0 = y0 = z0 = 1,
/// measured on the affine cone: rows `(f, df/dx1, df/dy1, df/dz1)`.
fn differential_rank(phi: &TriLinearMap, rng: &mut ChaCha8Rng) -> usize {
    let one = Rational::one();
    let x = [one.clone(), small_rational(rng)];
    let y = [one.clone(), small_rational(rng)];
    let z = [one, small_rational(rng)];
    let vars = [Var(1), Var(3), Var(5)];
    let mut rows = Vec::with_capacity(4);
    for f in phi.entries() {
        let mut row = vec![f.eval_xyz(&x, &y, &z)];
        for v in vars {
            row.push(f.partial(v).eval_xyz(&x, &y, &z));
        }
        rows.push(row);
    }
    Matrix::from_rows(rows, 4).rank()
}

/// `true` iff the differential has full rank at some sampled point.
pub fn dominance_sample(phi: &TriLinearMap, trials: usize, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials.max(1)).any(|_| differential_rank(phi, &mut rng) == 4)
}
