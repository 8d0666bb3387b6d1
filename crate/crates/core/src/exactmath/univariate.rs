//! Dense univariate polynomials over Q, ascending coefficients.

use num::{BigInt, Integer, One, Signed, Zero};

use super::field::Rational;

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Univ(pub Vec<Rational>);

impl Univ {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        Univ(c)
    }

    pub fn one() -> Self {
        Univ(vec![Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lead(&self) -> &Rational {
        self.0.last().expect("leading coefficient of zero polynomial")
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead().clone();
        Univ(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn derivative(&self) -> Self {
        Univ::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn sub(&self, o: &Univ) -> Univ {
        let n = self.0.len().max(o.0.len());
        Univ::new(
            (0..n)
                .map(|i| {
                    let a = self.0.get(i).cloned().unwrap_or_else(Rational::zero);
                    let b = o.0.get(i).cloned().unwrap_or_else(Rational::zero);
                    a - b
                })
                .collect(),
        )
    }

    #[cfg(test)]
    pub fn mul(&self, o: &Univ) -> Univ {
        if self.is_zero() || o.is_zero() {
            return Univ(vec![]);
        }
        let mut out = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Univ::new(out)
    }

    pub fn divrem(&self, d: &Univ) -> (Univ, Univ) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.0.clone();
        if r.len() < d.0.len() {
            return (Univ(vec![]), self.clone());
        }
        let dl = d.lead().clone();
        let dd = d.degree();
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &dl;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Univ::new(q), Univ::new(r))
    }

    pub fn gcd(&self, o: &Univ) -> Univ {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Yun's squarefree decomposition: `(multiplicity, factor)` pairs with
    /// positive-degree monic factors.
    pub fn squarefree_decomposition(&self) -> Vec<(usize, Univ)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.divrem(&a0).0;
        let mut c = df.divrem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree() > 0 {
            let a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((i, a.clone()));
            }
            b = b.divrem(&a).0;
            c = d.divrem(&a).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    pub fn squarefree_part(&self) -> Univ {
        if self.degree() == 0 {
            return Univ::one();
        }
        self.divrem(&self.gcd(&self.derivative())).0.monic()
    }

    /// All rational roots, ascending, each listed once.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.degree() == 0 {
            return vec![];
        }
        let sf = self.squarefree_part();
        // Integer primitive form a_n x^n + ... + a_0.
        let lcm = sf
            .0
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = sf
            .0
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let n = ints.len() - 1;
        let a = ints[n].clone();
        // Monic transform g(y) = a^{n-1} f(y / a): rational roots of f are y / a
        // for integer roots y of g.
        let mut g = Vec::with_capacity(n + 1);
        let mut pow = BigInt::one();
        let mut pows = vec![BigInt::one(); n + 1];
        for k in (0..n).rev() {
            pows[k] = pow.clone();
            pow *= &a;
        }
        for k in 0..n {
            g.push(Rational::from_integer(&ints[k] * &pows[k]));
        }
        g.push(Rational::one());
        let g = Univ::new(g);
        let mut roots: Vec<Rational> = integer_roots(&g)
            .into_iter()
            .map(|y| Rational::new(y, a.clone()))
            .collect();
        roots.sort();
        roots
    }
}

struct Sturm(Vec<Univ>);

impl Sturm {
    fn new(f: &Univ) -> Self {
        let mut seq = vec![f.clone(), f.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let (_, r) = seq[n - 2].divrem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(Univ::new(r.0.iter().map(|c| -c).collect()));
        }
        Sturm(seq)
    }

    fn sign_changes(&self, x: &Rational) -> usize {
        let mut changes = 0;
        let mut last = 0i8;
        for p in &self.0 {
            let v = p.eval(x);
            let s = if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            };
            if s != 0 {
                if last != 0 && s != last {
                    changes += 1;
                }
                last = s;
            }
        }
        changes
    }
}

/// Integer roots of a monic squarefree polynomial with integer coefficients.
fn integer_roots(g: &Univ) -> Vec<BigInt> {
    let bound = g
        .0
        .iter()
        .map(|c| c.abs().to_integer())
        .max()
        .unwrap_or_else(BigInt::zero)
        + BigInt::one();
    let sturm = Sturm::new(g);
    let mut out = Vec::new();
    // Roots lie in (-bound - 1, bound]; search half-open integer intervals.
    let lo = -&bound - BigInt::one();
    let count = |lo: &BigInt, hi: &BigInt| {
        sturm.sign_changes(&Rational::from_integer(lo.clone()))
            - sturm.sign_changes(&Rational::from_integer(hi.clone()))
    };
    let mut stack = vec![(lo, bound)];
    while let Some((lo, hi)) = stack.pop() {
        if count(&lo, &hi) == 0 {
            continue;
        }
        if &hi - &lo == BigInt::one() {
            if g.eval(&Rational::from_integer(hi.clone())).is_zero() {
                out.push(hi);
            }
            continue;
        }
        let mid = (&lo + &hi).div_floor(&BigInt::from(2));
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::field::{int, ratio};

    fn u(c: &[i64]) -> Univ {
        Univ::new(c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn gcd_of_shared_root() {
        // (x-1)(x+2) and (x-1)(x-3)
        let g = u(&[-2, 1, 1]).gcd(&u(&[3, -4, 1]));
        assert_eq!(g, u(&[-1, 1]));
    }

    #[test]
    fn yun_multiplicities() {
        // (x-1)^2 (x+1)^3 x
        let f = u(&[-1, 1])
            .mul(&u(&[-1, 1]))
            .mul(&u(&[1, 1]).mul(&u(&[1, 1])).mul(&u(&[1, 1])))
            .mul(&u(&[0, 1]));
        let dec = f.squarefree_decomposition();
        let mults: Vec<(usize, usize)> = dec.iter().map(|(m, p)| (*m, p.degree())).collect();
        assert_eq!(mults, vec![(1, 1), (2, 1), (3, 1)]);
    }

    #[test]
    fn rational_roots_found_exactly() {
        // (3x - 2)(x + 5)(x^2 + 1)
        let f = u(&[-2, 3]).mul(&u(&[5, 1])).mul(&u(&[1, 0, 1]));
        assert_eq!(f.rational_roots(), vec![int(-5), ratio(2, 3)]);
        assert!(u(&[-2, 0, 1]).rational_roots().is_empty());
        assert_eq!(u(&[0, 1]).rational_roots(), vec![int(0)]);
    }
}
