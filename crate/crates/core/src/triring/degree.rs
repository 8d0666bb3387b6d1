use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// One of the three factors of (P^1)^3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Axis {
        Axis::ALL[i]
    }

    pub fn var_names(self) -> (&'static str, &'static str) {
        match self {
            Axis::X => ("x0", "x1"),
            Axis::Y => ("y0", "y1"),
            Axis::Z => ("z0", "z1"),
        }
    }

    /// The two ring variables of this factor.
    pub fn vars(self) -> [Var; 2] {
        [Var(2 * self.index() as u8), Var(2 * self.index() as u8 + 1)]
    }

    pub fn name(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }

    pub fn parse(s: &str) -> Option<Axis> {
        match s {
            "x" => Some(Axis::X),
            "y" => Some(Axis::Y),
            "z" => Some(Axis::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Ring variable: 0..6 are x0,x1,y0,y1,z0,z1 and 6..10 are t0..t3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub u8);

pub const VAR_NAMES: [&str; 10] = ["x0", "x1", "y0", "y1", "z0", "z1", "t0", "t1", "t2", "t3"];

impl Var {
    pub fn t(i: usize) -> Var {
        Var(6 + i as u8)
    }

    pub fn name(self) -> &'static str {
        VAR_NAMES[self.0 as usize]
    }

    /// Grading slot: 0, 1, 2 for the x, y, z groups and 3 for t.
    pub fn group(self) -> usize {
        if self.0 < 6 {
            (self.0 / 2) as usize
        } else {
            3
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        VAR_NAMES.iter().position(|n| *n == s).map(|i| Var(i as u8))
    }
}

/// Multi-degree `(d1, d2, d3; d4)`: degrees in x, y, z and t.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiDegree(pub [u32; 4]);

impl MultiDegree {
    pub const fn new(d1: u32, d2: u32, d3: u32, d4: u32) -> Self {
        MultiDegree([d1, d2, d3, d4])
    }

    /// A tri-degree, i.e. t-degree zero.
    pub const fn tri(d1: u32, d2: u32, d3: u32) -> Self {
        MultiDegree([d1, d2, d3, 0])
    }

    pub const ZERO: MultiDegree = MultiDegree::tri(0, 0, 0);
    pub const ONES: MultiDegree = MultiDegree::tri(1, 1, 1);

    /// The unit tri-degree of a factor.
    pub fn e(axis: Axis) -> Self {
        let mut d = [0; 4];
        d[axis.index()] = 1;
        MultiDegree(d)
    }

    pub fn d1(self) -> u32 {
        self.0[0]
    }
    pub fn d2(self) -> u32 {
        self.0[1]
    }
    pub fn d3(self) -> u32 {
        self.0[2]
    }
    pub fn d4(self) -> u32 {
        self.0[3]
    }

    pub fn tri_part(self) -> [u32; 3] {
        [self.0[0], self.0[1], self.0[2]]
    }

    pub fn axis(self, a: Axis) -> u32 {
        self.0[a.index()]
    }

    pub fn add(self, o: MultiDegree) -> MultiDegree {
        MultiDegree([
            self.0[0] + o.0[0],
            self.0[1] + o.0[1],
            self.0[2] + o.0[2],
            self.0[3] + o.0[3],
        ])
    }

    /// Componentwise difference, `None` if some component would be negative.
    pub fn checked_sub(self, o: MultiDegree) -> Option<MultiDegree> {
        let mut d = [0; 4];
        for i in 0..4 {
            d[i] = self.0[i].checked_sub(o.0[i])?;
        }
        Some(MultiDegree(d))
    }

    /// Componentwise `<=`.
    pub fn le(self, o: MultiDegree) -> bool {
        (0..4).all(|i| self.0[i] <= o.0[i])
    }

    /// Number of monomials of this degree.
    pub fn monomial_count(self) -> usize {
        let [a, b, c, t] = self.0.map(|v| v as usize);
        let tcount = (t + 1) * (t + 2) * (t + 3) / 6;
        (a + 1) * (b + 1) * (c + 1) * tcount
    }

    /// Relabel the x, y, z components: component `i` of the result is component
    /// `perm[i]` of `self`.
    pub fn permuted(self, perm: [usize; 3]) -> MultiDegree {
        MultiDegree([self.0[perm[0]], self.0[perm[1]], self.0[perm[2]], self.0[3]])
    }

    /// Parse `d1,d2,d3` or `d1,d2,d3;d4`, with optional parentheses.
    pub fn parse(s: &str) -> Option<MultiDegree> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (tri, t) = match s.split_once(';') {
            Some((a, b)) => (a, b.trim().parse().ok()?),
            None => (s, 0),
        };
        let parts: Vec<u32> = tri
            .split(',')
            .map(|p| p.trim().parse().ok())
            .collect::<Option<Vec<_>>>()?;
        if parts.len() != 3 {
            return None;
        }
        Some(MultiDegree([parts[0], parts[1], parts[2], t]))
    }

    /// `(d1,d2,d3)` notation, ignoring the t-degree.
    pub fn tri_string(self) -> String {
        format!("({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{};{})", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

/// Exponent vector over x0,x1,y0,y1,z0,z1,t0,t1,t2,t3.
///
/// Ordered so that iteration in ascending `Ord` lists monomials in descending
/// lexicographic order of the exponent vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u8; 10]);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; 10])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 10];
        e[v.0 as usize] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> MultiDegree {
        let e = self.0.map(u32::from);
        MultiDegree([e[0] + e[1], e[2] + e[3], e[4] + e[5], e[6] + e[7] + e[8] + e[9]])
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(o.0) {
            *a += b;
        }
        Monomial(e)
    }

    pub fn exponent(&self, v: Var) -> u8 {
        self.0[v.0 as usize]
    }

    /// `self / v`, if `v` divides `self`.
    pub fn div_var(&self, v: Var) -> Option<Monomial> {
        let mut e = self.0;
        let slot = &mut e[v.0 as usize];
        *slot = slot.checked_sub(1)?;
        Some(Monomial(e))
    }

    /// Factors written as `x0`, `x1^2`, ... in variable order.
    pub fn factors(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => out.push(VAR_NAMES[i].to_string()),
                _ => out.push(format!("{}^{}", VAR_NAMES[i], e)),
            }
        }
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fs = self.factors();
        if fs.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&fs.join("*"))
        }
    }
}

/// All monomials of degree `d`, in descending lexicographic order of the exponent vector.
pub fn monomials_of(d: MultiDegree) -> Vec<Monomial> {
    let [a, b, c, t] = d.0.map(|v| v as u8);
    let mut out = Vec::with_capacity(d.monomial_count());
    let tmons = t_monomials(t);
    for i in (0..=a).rev() {
        for j in (0..=b).rev() {
            for k in (0..=c).rev() {
                for tm in &tmons {
                    let mut e = [0u8; 10];
                    e[0] = i;
                    e[1] = a - i;
                    e[2] = j;
                    e[3] = b - j;
                    e[4] = k;
                    e[5] = c - k;
                    e[6..].copy_from_slice(tm);
                    out.push(Monomial(e));
                }
            }
        }
    }
    out
}

fn t_monomials(t: u8) -> Vec<[u8; 4]> {
    let mut out = Vec::new();
    for a in (0..=t).rev() {
        for b in (0..=t - a).rev() {
            for c in (0..=t - a - b).rev() {
                out.push([a, b, c, t - a - b - c]);
            }
        }
    }
    out
}

/// Position of a t-free monomial inside `monomials_of(d)`, from the exponents
/// `(p, q, r)` of x1, y1, z1.
#[inline]
pub fn tri_index(d: [u32; 3], p: u32, q: u32, r: u32) -> usize {
    ((p * (d[1] + 1) + q) * (d[2] + 1) + r) as usize
}

/// Number of t-free monomials of tri-degree `d`.
#[inline]
pub fn tri_count(d: [u32; 3]) -> usize {
    ((d[0] + 1) * (d[1] + 1) * (d[2] + 1)) as usize
}
