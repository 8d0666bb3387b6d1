//! Inverse maps from the bounded-degree slices of the Rees ideal, and their
//! verification by composition.

use num::Zero;
use thiserror::Error;

use crate::birational::{decide, type_string};
use crate::exactmath::{Matrix, Rational};
use crate::triring::{
    monomials_of, Axis, Monomial, MultiDegree, MultiPoly, PartialPoint, Point, TriLinearMap,
};

/// Three pairs of t-forms `(a0:a1) x (b0:b1) x (c0:c1)` with `deg = (r1, r2, r3)`.
#[derive(Clone, Debug, PartialEq)]
pub struct InverseMap {
    pub components: [(MultiPoly, MultiPoly); 3],
    pub phi_type: [u32; 3],
}

impl InverseMap {
    /// Image of a point of P^3; `None` if some pair vanishes there.
    pub fn eval(&self, t: &[Rational; 4]) -> Option<Point> {
        let pt = PartialPoint::t(t.clone());
        let mut out: Point = Default::default();
        for (g, (c0, c1)) in self.components.iter().enumerate() {
            let v0 = scalar(&c0.eval(&pt).ok()?);
            let v1 = scalar(&c1.eval(&pt).ok()?);
            if v0.is_zero() && v1.is_zero() {
                return None;
            }
            out[g] = [v0, v1];
        }
        Some(out)
    }
}

fn scalar(p: &MultiPoly) -> Rational {
    p.coeff(&Monomial::one())
}

/// Cofactors `s, t, u` with `a_i(f) = x_i s`, `b_j(f) = y_j t`, `c_k(f) = z_k u`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompositionCertificate {
    pub cofactors: [Option<MultiPoly>; 3],
    pub checks: [bool; 3],
}

impl CompositionCertificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|&c| c)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InverseError {
    #[error("map is not birational: {0}")]
    NotBirational(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// All solutions `(c0, c1)` of t-degree `r` with `w0 c1(f) - w1 c0(f) = 0`, as
/// canonical kernel vectors, normalized.
pub fn jdc_slice(phi: &TriLinearMap, axis: Axis, r: u32) -> Vec<(MultiPoly, MultiPoly)> {
    let tdeg = MultiDegree::new(0, 0, 0, r);
    let tmons = monomials_of(tdeg);
    let n = tmons.len();
    let images: Vec<MultiPoly> = tmons
        .iter()
        .map(|m| phi.substitute_t(&MultiPoly::monomial(*m, Rational::from_integer(1.into()))))
        .collect();
    let target = MultiDegree::tri(r, r, r).add(MultiDegree::e(axis));
    let rows_mons = monomials_of(target);
    let idx: std::collections::HashMap<Monomial, usize> =
        rows_mons.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let [w0, w1] = axis.vars();
    let mut m = Matrix::zeros(rows_mons.len(), 2 * n);
    for (j, img) in images.iter().enumerate() {
        for (mon, c) in img.terms() {
            // column j: c0_j contributes -w1 * img; column n + j: c1_j contributes w0 * img.
            let r1 = idx[&mon.mul(&Monomial::var(w1))];
            m.set(r1, j, m.get(r1, j) - c);
            let r0 = idx[&mon.mul(&Monomial::var(w0))];
            m.set(r0, n + j, m.get(r0, n + j) + c);
        }
    }
    m.nullspace()
        .into_iter()
        .map(|v| {
            let c0 = MultiPoly::from_dense(tdeg, &v[..n]);
            let c1 = MultiPoly::from_dense(tdeg, &v[n..]);
            normalize_pair(c0, c1)
        })
        .collect()
}

fn normalize_pair(c0: MultiPoly, c1: MultiPoly) -> (MultiPoly, MultiPoly) {
    let lead = c0
        .leading_term()
        .or_else(|| c1.leading_term())
        .map(|(_, c)| c.recip());
    match lead {
        Some(s) => (c0.scale(&s), c1.scale(&s)),
        None => (c0, c1),
    }
}

/// First canonical solution of t-degree `r`, if the slice is nonzero.
pub fn jdc_component(phi: &TriLinearMap, axis: Axis, r: u32) -> Option<(MultiPoly, MultiPoly)> {
    jdc_slice(phi, axis, r).into_iter().next()
}

/// Cofactor check for one axis: `c0(f) = w0 s`, `c1(f) = w1 s`, `s != 0`.
fn check_component(phi: &TriLinearMap, axis: Axis, c: &(MultiPoly, MultiPoly)) -> Option<MultiPoly> {
    let [w0, w1] = axis.vars();
    let a0 = phi.substitute_t(&c.0);
    let a1 = phi.substitute_t(&c.1);
    let s0 = a0.div_var(w0)?;
    let s1 = a1.div_var(w1)?;
    (s0 == s1 && !s0.is_zero()).then_some(s0)
}

/// Substitute each component through `phi` and factor out the coordinate.
pub fn verify_inverse(phi: &TriLinearMap, psi: &InverseMap) -> CompositionCertificate {
    let cofactors: [Option<MultiPoly>; 3] = std::array::from_fn(|g| {
        let c = &psi.components[g];
        let r = c.0.degree().d4();
        if !(1..=2).contains(&r) {
            return None;
        }
        check_component(phi, Axis::from_index(g), c)
    });
    let checks = std::array::from_fn(|g| cofactors[g].is_some());
    CompositionCertificate { cofactors, checks }
}

/// Inverse of a birational map with its composition certificate.
pub fn invert(phi: &TriLinearMap) -> Result<(InverseMap, CompositionCertificate), InverseError> {
    let report = decide(phi);
    let Some(expected) = report.phi_type else {
        return Err(InverseError::NotBirational(report.branch.to_string()));
    };
    let mut comps: Vec<(MultiPoly, MultiPoly)> = Vec::with_capacity(3);
    let mut ty = [0u32; 3];
    for axis in Axis::ALL {
        let mut found = None;
        'degrees: for r in 1..=2 {
            for cand in jdc_slice(phi, axis, r) {
                if check_component(phi, axis, &cand).is_some() {
                    found = Some((r, cand));
                    break 'degrees;
                }
            }
        }
        let Some((r, cand)) = found else {
            return Err(InverseError::Internal(format!(
                "no inverse component for factor {axis} in t-degree at most 2"
            )));
        };
        ty[axis.index()] = r;
        comps.push(cand);
    }
    if ty != expected {
        return Err(InverseError::Internal(format!(
            "inverse degrees {} differ from the decided type {}",
            type_string(ty),
            type_string(expected)
        )));
    }
    let psi = InverseMap {
        components: comps.try_into().expect("three components"),
        phi_type: ty,
    };
    let cert = verify_inverse(phi, &psi);
    if !cert.passed() {
        return Err(InverseError::Internal("composition certificate failed".into()));
    }
    Ok((psi, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triring::parse_poly;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    fn rho4() -> TriLinearMap {
        TriLinearMap::from_strs(&["x1*y1*z1", "x0*y1*z1", "x1*y0*z1", "x1*y1*z0"]).unwrap()
    }

    #[test]
    fn monomial_inverse_component() {
        let (c0, c1) = jdc_component(&rho4(), Axis::X, 1).unwrap();
        assert_eq!((c0, c1), (p("t1"), p("t0")));
    }

    #[test]
    fn invert_monomial_map() {
        let (psi, cert) = invert(&rho4()).unwrap();
        assert_eq!(psi.phi_type, [1, 1, 1]);
        assert_eq!(psi.components[1], (p("t2"), p("t0")));
        assert_eq!(psi.components[2], (p("t3"), p("t0")));
        assert!(cert.passed());
        assert_eq!(cert.cofactors[0].as_ref().unwrap(), &p("y1*z1"));
    }

    #[test]
    fn swapped_pair_fails_the_check() {
        let (mut psi, _) = invert(&rho4()).unwrap();
        let (a, b) = psi.components[0].clone();
        psi.components[0] = (b, a);
        let cert = verify_inverse(&rho4(), &psi);
        assert_eq!(cert.checks, [false, true, true]);
    }

    #[test]
    fn inverse_undoes_the_map() {
        let phi = rho4();
        let (psi, _) = invert(&phi).unwrap();
        let pt: Point = [
            [Rational::from_integer(1.into()), Rational::from_integer(1.into())],
            [Rational::from_integer(1.into()), Rational::from_integer(2.into())],
            [Rational::from_integer(1.into()), Rational::from_integer(3.into())],
        ];
        let back = psi.eval(&phi.eval_point(&pt)).unwrap();
        for g in 0..3 {
            assert_eq!(&back[g][0] * &pt[g][1], &back[g][1] * &pt[g][0]);
        }
    }
}
