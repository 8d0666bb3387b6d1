use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use thiserror::Error;

use super::degree::{monomials_of, Axis, Monomial, MultiDegree, Var};
use crate::exactmath::{fmt_rational, BinaryForm, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: MultiDegree, right: MultiDegree },
    #[error("group {group} evaluated at (0,0), which is not a projective point")]
    ZeroPoint { group: &'static str },
    #[error("term {monomial} has degree {found}, expected {expected}")]
    NotHomogeneous {
        monomial: String,
        found: MultiDegree,
        expected: MultiDegree,
    },
}

/// Multi-homogeneous polynomial over Q in x, y, z and t.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    degree: MultiDegree,
    terms: BTreeMap<Monomial, Rational>,
}

/// Values substituted for whole variable groups.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PartialPoint {
    pub x: Option<[Rational; 2]>,
    pub y: Option<[Rational; 2]>,
    pub z: Option<[Rational; 2]>,
    pub t: Option<[Rational; 4]>,
}

impl PartialPoint {
    pub fn xyz(x: [Rational; 2], y: [Rational; 2], z: [Rational; 2]) -> Self {
        PartialPoint {
            x: Some(x),
            y: Some(y),
            z: Some(z),
            t: None,
        }
    }

    pub fn t(t: [Rational; 4]) -> Self {
        PartialPoint {
            t: Some(t),
            ..Default::default()
        }
    }
}

impl MultiPoly {
    pub fn zero(degree: MultiDegree) -> Self {
        MultiPoly {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::one(), Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly {
            degree: m.degree(),
            terms,
        }
    }

    /// Build from terms, summing repeated monomials. Every monomial must have degree `degree`.
    pub fn from_terms(
        degree: MultiDegree,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self, PolyError> {
        let mut p = MultiPoly::zero(degree);
        for (m, c) in terms {
            if m.degree() != degree {
                return Err(PolyError::NotHomogeneous {
                    monomial: m.to_string(),
                    found: m.degree(),
                    expected: degree,
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Inverse of [`MultiPoly::dense`].
    pub fn from_dense(degree: MultiDegree, coeffs: &[Rational]) -> Self {
        let mons = monomials_of(degree);
        assert_eq!(mons.len(), coeffs.len(), "coefficient count");
        let terms = mons
            .into_iter()
            .zip(coeffs.iter())
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, c.clone()))
            .collect();
        MultiPoly { degree, terms }
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn degree(&self) -> MultiDegree {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// First (largest in descending lex) term.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next()
    }

    /// Coefficients listed in the order of `monomials_of(self.degree())`.
    pub fn dense(&self) -> Vec<Rational> {
        monomials_of(self.degree)
            .iter()
            .map(|m| self.coeff(m))
            .collect()
    }

    pub fn add(&self, o: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if self.degree != o.degree {
            return Err(PolyError::DegreeMismatch {
                left: self.degree,
                right: o.degree,
            });
        }
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.degree);
        }
        MultiPoly {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul(&self, o: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.degree.add(o.degree));
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Linear combination `sum c_i p_i` of polynomials of degree `degree`.
    pub fn linear_combination(
        degree: MultiDegree,
        items: &[(Rational, &MultiPoly)],
    ) -> Result<MultiPoly, PolyError> {
        let mut acc = MultiPoly::zero(degree);
        for (c, p) in items {
            acc = acc.add(&p.scale(c))?;
        }
        Ok(acc)
    }

    /// Exact division by a variable.
    pub fn div_var(&self, v: Var) -> Option<MultiPoly> {
        let mut d = self.degree;
        d.0[v.group()] = d.0[v.group()].checked_sub(1)?;
        let mut out = MultiPoly::zero(d);
        for (m, c) in &self.terms {
            out.terms.insert(m.div_var(v)?, c.clone());
        }
        Some(out)
    }

    /// Partial derivative with respect to `v`.
    pub fn partial(&self, v: Var) -> MultiPoly {
        let mut d = self.degree;
        d.0[v.group()] = d.0[v.group()].saturating_sub(1);
        let mut out = MultiPoly::zero(d);
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e > 0 {
                out.add_term(m.div_var(v).unwrap(), c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Replace each variable by a polynomial. All images of variables in the
    /// same group must share a degree; `images[i]` replaces variable `i`.
    pub fn substitute(&self, images: &[MultiPoly; 10]) -> MultiPoly {
        let mut deg = MultiDegree([0; 4]);
        for g in 0..4 {
            let slot = if g < 3 { 2 * g } else { 6 };
            let img = images[slot].degree();
            for k in 0..4 {
                deg.0[k] += self.degree.0[g] * img.0[k];
            }
        }
        let mut out = MultiPoly::zero(deg);
        let mut cache: std::collections::HashMap<(usize, u8), MultiPoly> = Default::default();
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = cache
                    .entry((i, e))
                    .or_insert_with(|| images[i].pow(u32::from(e)));
                term = term.mul(p);
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        out
    }

    /// Replace `t_i` by entry `i` of `entries` (four forms of one degree).
    pub fn substitute_t_entries(&self, entries: &[MultiPoly; 4]) -> MultiPoly {
        let mut images: [MultiPoly; 10] =
            std::array::from_fn(|i| MultiPoly::var(Var(i as u8)));
        images[6..].clone_from_slice(entries);
        self.substitute(&images)
    }

    /// Substitute values for whole groups. Substituted groups get degree 0.
    pub fn eval(&self, point: &PartialPoint) -> Result<MultiPoly, PolyError> {
        let groups: [(Option<&[Rational]>, &'static str); 4] = [
            (point.x.as_ref().map(|v| &v[..]), "x"),
            (point.y.as_ref().map(|v| &v[..]), "y"),
            (point.z.as_ref().map(|v| &v[..]), "z"),
            (point.t.as_ref().map(|v| &v[..]), "t"),
        ];
        let mut deg = self.degree;
        for (g, (vals, name)) in groups.iter().enumerate() {
            if let Some(vals) = vals {
                if vals.iter().all(Zero::is_zero) {
                    return Err(PolyError::ZeroPoint { group: name });
                }
                deg.0[g] = 0;
            }
        }
        let mut out = MultiPoly::zero(deg);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = *m;
            for (i, e) in m.0.iter().enumerate() {
                let g = Var(i as u8).group();
                let offset = if g < 3 { 2 * g } else { 6 };
                if let Some(vals) = groups[g].0 {
                    if *e > 0 {
                        coeff *= num::pow(vals[i - offset].clone(), usize::from(*e));
                    }
                    rest.0[i] = 0;
                }
            }
            out.add_term(rest, coeff);
        }
        Ok(out)
    }

    /// Value at a full assignment of x, y, z (t-free input).
    pub fn eval_xyz(&self, x: &[Rational; 2], y: &[Rational; 2], z: &[Rational; 2]) -> Rational {
        let mut acc = Rational::zero();
        let vals = [&x[0], &x[1], &y[0], &y[1], &z[0], &z[1]];
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for i in 0..6 {
                if m.0[i] > 0 {
                    v *= num::pow(vals[i].clone(), usize::from(m.0[i]));
                }
            }
            acc += v;
        }
        acc
    }

    /// Apply `v_i -> sum_j mats[g][i][j] * w_j` where `w` are the variables of
    /// group `sources[g]`, for each of the three groups `g`; t is left unchanged.
    pub fn transform_groups(
        &self,
        sources: [usize; 3],
        mats: &[[[Rational; 2]; 2]; 3],
    ) -> MultiPoly {
        let mut images: [MultiPoly; 10] =
            std::array::from_fn(|i| MultiPoly::var(Var(i as u8)));
        for g in 0..3 {
            let s = sources[g];
            let w = [Var(2 * s as u8), Var(2 * s as u8 + 1)];
            for i in 0..2 {
                let terms = (0..2).map(|j| (Monomial::var(w[j]), mats[g][i][j].clone()));
                images[2 * g + i] = MultiPoly::from_terms(MultiDegree::e(Axis::from_index(s)), terms)
                    .expect("linear forms of one group");
            }
        }
        self.substitute(&images)
    }

    /// Coefficients of `v0^(d-i) v1^i`, `i = 0..=d`, where `v` are the variables
    /// of `axis` and `d` its degree in `self`.
    pub fn split_group(&self, axis: Axis) -> Vec<MultiPoly> {
        let g = axis.index();
        let d = self.degree.0[g];
        let mut rest = self.degree;
        rest.0[g] = 0;
        let mut out = vec![MultiPoly::zero(rest); d as usize + 1];
        for (m, c) in &self.terms {
            let i = m.0[2 * g + 1] as usize;
            let mut r = *m;
            r.0[2 * g] = 0;
            r.0[2 * g + 1] = 0;
            out[i].add_term(r, c.clone());
        }
        out
    }

    /// The binary forms in the variables of `axis` multiplying each monomial in the
    /// remaining variables, in monomial order.
    pub fn binary_parts(&self, axis: Axis) -> Vec<(Monomial, BinaryForm)> {
        let d = self.degree.0[axis.index()] as usize;
        let mut parts: BTreeMap<Monomial, Vec<Rational>> = BTreeMap::new();
        let g = axis.index();
        for (m, c) in &self.terms {
            let mut r = *m;
            r.0[2 * g] = 0;
            r.0[2 * g + 1] = 0;
            parts.entry(r).or_insert_with(|| vec![Rational::zero(); d + 1])[m.0[2 * g + 1] as usize] =
                c.clone();
        }
        parts
            .into_iter()
            .map(|(m, c)| (m, BinaryForm::new(axis, c)))
            .collect()
    }

    /// Polynomial of a binary form.
    pub fn from_binary(f: &BinaryForm) -> MultiPoly {
        let g = f.group().index();
        let d = f.degree();
        let mut deg = MultiDegree::ZERO;
        deg.0[g] = d as u32;
        let mut out = MultiPoly::zero(deg);
        for (i, c) in f.coeffs().iter().enumerate() {
            let mut e = [0u8; 10];
            e[2 * g] = (d - i) as u8;
            e[2 * g + 1] = i as u8;
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Whether some term mentions a t variable.
    pub fn has_t(&self) -> bool {
        self.degree.d4() > 0
    }

    fn write_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format_term(c, &m.factors()))
            .collect();
        f.write_str(&join_terms(&terms))
    }
}

/// Signed text of one term: coefficient (omitted when it is 1 or -1) followed by factors.
pub fn format_term(c: &Rational, factors: &[String]) -> String {
    if factors.is_empty() {
        return fmt_rational(c);
    }
    let body = factors.join("*");
    if c.is_one() {
        body
    } else if (-c).is_one() {
        format!("-{body}")
    } else {
        format!("{}*{body}", fmt_rational(c))
    }
}

/// Join signed terms as `a + b - c`.
pub fn join_terms(terms: &[String]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = terms[0].clone();
    for t in &terms[1..] {
        match t.strip_prefix('-') {
            Some(rest) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            None => {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
    }
    out
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_terms(f)
    }
}
