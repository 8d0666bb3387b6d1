use std::fmt;

use num::{One, Zero};
use thiserror::Error;

use super::field::Rational;
use super::univariate::Univ;
use crate::triring::Axis;

/// Homogeneous form in the two variables `(v0, v1)` of one factor of (P^1)^3.
///
/// `coeffs[i]` multiplies `v0^(d-i) * v1^i`, where `d` is the degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    group: Axis,
    coeffs: Vec<Rational>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BinaryFormError {
    #[error("zero family: every form is zero")]
    ZeroFamily,
    #[error("divisor is not a nonzero linear form")]
    NotLinear,
    #[error("forms belong to different variable groups")]
    MixedGroups,
    #[error("division is not exact, remainder {remainder}")]
    NotExact { remainder: BinaryForm },
}

/// Multiset of root multiplicities: `(multiplicity, number of distinct roots)`,
/// sorted by multiplicity.
pub type MultiplicityPattern = Vec<(usize, usize)>;

impl BinaryForm {
    pub fn new(group: Axis, coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs degree + 1 coefficients");
        BinaryForm { group, coeffs }
    }

    pub fn zero(group: Axis, degree: usize) -> Self {
        BinaryForm {
            group,
            coeffs: vec![Rational::zero(); degree + 1],
        }
    }

    pub fn constant(group: Axis, c: Rational) -> Self {
        BinaryForm {
            group,
            coeffs: vec![c],
        }
    }

    /// The linear form `a*v0 + b*v1`.
    pub fn linear(group: Axis, a: Rational, b: Rational) -> Self {
        BinaryForm {
            group,
            coeffs: vec![a, b],
        }
    }

    /// The linear form vanishing at the projective point `(p0 : p1)`.
    pub fn vanishing_at(group: Axis, p0: &Rational, p1: &Rational) -> Self {
        Self::linear(group, p1.clone(), -p0.clone())
    }

    pub fn group(&self) -> Axis {
        self.group
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Number of leading zero coefficients: the multiplicity of the root `(1 : 0)`.
    fn infinite_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// `f(s, 1)` as a univariate polynomial in `s`.
    fn dehomogenize(&self) -> Univ {
        Univ::new(self.coeffs.iter().rev().cloned().collect())
    }

    fn homogenize(group: Axis, p: &Univ, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        for (k, c) in p.0.iter().enumerate() {
            coeffs[degree - k] = c.clone();
        }
        BinaryForm { group, coeffs }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        BinaryForm {
            group: self.group,
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    /// Sum of two forms of the same degree.
    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.degree(), o.degree(), "degree mismatch");
        BinaryForm {
            group: self.group,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.degree(), o.degree(), "degree mismatch");
        BinaryForm {
            group: self.group,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut coeffs = vec![Rational::zero(); self.degree() + o.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        BinaryForm {
            group: self.group,
            coeffs,
        }
    }

    pub fn eval(&self, v0: &Rational, v1: &Rational) -> Rational {
        let d = self.degree();
        let mut acc = Rational::zero();
        let mut p1 = Rational::one();
        for i in 0..=d {
            let p0 = num::pow(v0.clone(), d - i);
            acc += &self.coeffs[i] * &p0 * &p1;
            p1 *= v1;
        }
        acc
    }

    /// Scale so the first nonzero coefficient equals 1. The zero form is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(l) => self.scale(&l.recip()),
            None => self.clone(),
        }
    }

    pub fn partial_v0(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return Self::zero(self.group, 0);
        }
        BinaryForm {
            group: self.group,
            coeffs: (0..d)
                .map(|i| &self.coeffs[i] * Rational::from_integer((d - i).into()))
                .collect(),
        }
    }

    pub fn partial_v1(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return Self::zero(self.group, 0);
        }
        BinaryForm {
            group: self.group,
            coeffs: (1..=d)
                .map(|i| &self.coeffs[i] * Rational::from_integer(i.into()))
                .collect(),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by the zero form");
        if d.degree() > self.degree() {
            return if self.is_zero() {
                Some(Self::zero(self.group, 0))
            } else {
                None
            };
        }
        let qd = self.degree() - d.degree();
        if self.is_zero() {
            return Some(Self::zero(self.group, qd));
        }
        let (q, r) = self.long_division(d);
        if r.iter().all(|c| c.is_zero()) {
            Some(BinaryForm {
                group: self.group,
                coeffs: q,
            })
        } else {
            None
        }
    }

    /// Division in the homogeneous sense: quotient of degree `deg f - deg d` and remainder
    /// coefficients. Works from the leading `v0` power, shifting past leading zeros of `d`.
    fn long_division(&self, d: &Self) -> (Vec<Rational>, Vec<Rational>) {
        let shift = d.infinite_multiplicity();
        let dd = &d.coeffs[shift..];
        let qlen = self.degree() - d.degree() + 1;
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); qlen];
        let lead = dd[0].clone();
        for k in 0..qlen {
            let c = &r[k + shift] / &lead;
            if !c.is_zero() {
                for (j, dc) in dd.iter().enumerate() {
                    r[k + shift + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        (q, r)
    }

    /// Squarefree decomposition over the complex numbers, summarized as the
    /// multiplicity pattern of the distinct projective roots.
    pub fn multiplicity_pattern(&self) -> MultiplicityPattern {
        if self.is_zero() {
            return vec![];
        }
        let mut counts = std::collections::BTreeMap::new();
        let inf = self.infinite_multiplicity();
        if inf > 0 {
            *counts.entry(inf).or_insert(0) += 1;
        }
        for (m, p) in self.dehomogenize().squarefree_decomposition() {
            *counts.entry(m).or_insert(0) += p.degree();
        }
        counts.into_iter().collect()
    }

    /// Number of distinct complex projective roots (0 for the zero form).
    pub fn squarefree_degree(&self) -> usize {
        self.multiplicity_pattern().iter().map(|(_, c)| c).sum()
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inf = self.infinite_multiplicity().min(1);
        let p = self.dehomogenize().squarefree_part();
        let deg = p.degree() + inf;
        Self::homogenize(self.group, &p, deg).monic()
    }

    /// Rational projective roots, each as `(p0, p1)` normalized to `(s, 1)` or `(1, 0)`.
    pub fn rational_roots(&self) -> Vec<(Rational, Rational)> {
        if self.is_zero() {
            return vec![];
        }
        let mut out = Vec::new();
        if self.infinite_multiplicity() > 0 {
            out.push((Rational::one(), Rational::zero()));
        }
        for s in self.dehomogenize().rational_roots() {
            out.push((s, Rational::one()));
        }
        out
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let (a, b) = self.group.var_names();
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut factors = Vec::new();
            for (name, e) in [(a, d - i), (b, i)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            terms.push(crate::triring::format_term(c, &factors));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", crate::triring::join_terms(&terms))
    }
}

/// Monic homogeneous gcd of a family of binary forms of one group.
///
/// Degree 0 means the forms have no common projective root over C.
pub fn gcd_binary_forms(forms: &[BinaryForm]) -> Result<BinaryForm, BinaryFormError> {
    let group = forms.first().ok_or(BinaryFormError::ZeroFamily)?.group;
    if forms.iter().any(|f| f.group != group) {
        return Err(BinaryFormError::MixedGroups);
    }
    let nonzero: Vec<&BinaryForm> = forms.iter().filter(|f| !f.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(BinaryFormError::ZeroFamily);
    }
    let inf = nonzero
        .iter()
        .map(|f| f.infinite_multiplicity())
        .min()
        .unwrap_or(0);
    let mut g = nonzero[0].dehomogenize();
    for f in &nonzero[1..] {
        if g.degree() == 0 {
            break;
        }
        g = g.gcd(&f.dehomogenize());
    }
    let g = g.monic();
    Ok(BinaryForm::homogenize(group, &g, g.degree() + inf).monic())
}

/// Quotient of `f` by the linear form `l`, which must divide `f` exactly.
pub fn divide_by_linear(f: &BinaryForm, l: &BinaryForm) -> Result<BinaryForm, BinaryFormError> {
    if l.degree() != 1 || l.is_zero() {
        return Err(BinaryFormError::NotLinear);
    }
    if f.group != l.group {
        return Err(BinaryFormError::MixedGroups);
    }
    if f.degree() == 0 {
        return if f.is_zero() {
            Ok(BinaryForm::zero(f.group, 0))
        } else {
            Err(BinaryFormError::NotExact {
                remainder: f.clone(),
            })
        };
    }
    let (q, r) = f.long_division(l);
    if r.iter().all(|c| c.is_zero()) {
        Ok(BinaryForm {
            group: f.group,
            coeffs: q,
        })
    } else {
        // The remainder of division by a linear form is a scalar multiple of the
        // complementary variable power; report it as a form of f's degree.
        Err(BinaryFormError::NotExact {
            remainder: BinaryForm {
                group: f.group,
                coeffs: r,
            },
        })
    }
}
