//! Coordinate lines in the base locus, and the determinantal divisors of the
//! matrix pencil obtained by fixing one factor.

use crate::exactmath::{gcd_binary_forms, MultiplicityPattern, Rational};
use crate::oracle::{eval_matrix, group_matrix, minors, normalize_point};
use crate::triring::{Axis, MultiPoly, TriLinearMap};

use super::AtlasError;

/// A line of the base locus parallel to `direction`: the two other factors
/// are fixed at `fixed` (in increasing factor order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub direction: Axis,
    pub fixed: [[Rational; 2]; 2],
}

#[derive(Clone, Debug, PartialEq)]
pub struct LineCensus {
    pub direction: Axis,
    pub lines: Vec<Line>,
    /// Number of such lines over C.
    pub complex_count: usize,
}

fn others(a: Axis) -> [Axis; 2] {
    let v: Vec<Axis> = Axis::ALL.into_iter().filter(|&b| b != a).collect();
    [v[0], v[1]]
}

/// Lines of the base locus parallel to `direction`.
pub fn line_census(phi: &TriLinearMap, direction: Axis) -> Result<LineCensus, AtlasError> {
    let forms: Vec<MultiPoly> = phi.entries().iter().flat_map(|f| f.split_group(direction)).collect();
    let [b, _] = others(direction);
    let m = group_matrix(&forms, b);
    let degenerate = AtlasError::DivisorialDegeneration { direction };
    let all: Vec<_> = m.iter().flatten().cloned().collect();
    if let Ok(g) = gcd_binary_forms(&all) {
        if g.degree() > 0 {
            return Err(degenerate);
        }
    }
    let d = gcd_binary_forms(&minors(&m, 2)).map_err(|_| degenerate.clone())?;
    let mut lines = Vec::new();
    for root in d.rational_roots() {
        let ker = eval_matrix(&m, &root).nullspace();
        if ker.len() != 1 {
            return Err(degenerate);
        }
        let v = &ker[0];
        let p = normalize_point(&[
            [root.0.clone(), root.1.clone()],
            [v[0].clone(), v[1].clone()],
            [Rational::from_integer(1.into()), Rational::from_integer(0.into())],
        ]);
        lines.push(Line {
            direction,
            fixed: [p[0].clone(), p[1].clone()],
        });
    }
    Ok(LineCensus {
        direction,
        lines,
        complex_count: d.squarefree_degree(),
    })
}

/// For each factor, the multiplicity patterns of the gcds of the k x k minors
/// (k = 1..4) of the 4x4 pencil obtained by fixing that factor; `None` when
/// all k x k minors vanish.
pub type PencilSignature = [Vec<Option<MultiplicityPattern>>; 3];

pub fn pencil_signature(phi: &TriLinearMap) -> PencilSignature {
    std::array::from_fn(|g| {
        let m = group_matrix(phi.entries(), Axis::from_index(g));
        (1..=4)
            .map(|k| gcd_binary_forms(&minors(&m, k)).ok().map(|d| d.multiplicity_pattern()))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;

    fn map(s: [&str; 4]) -> TriLinearMap {
        TriLinearMap::from_strs(&s).unwrap()
    }

    #[test]
    fn monomial_map_has_one_line_per_direction() {
        let phi = map(["x1*y1*z1", "x0*y1*z1", "x1*y0*z1", "x1*y1*z0"]);
        let c = line_census(&phi, Axis::Z).unwrap();
        assert_eq!(c.complex_count, 1);
        assert_eq!(c.lines[0].fixed, [[int(1), int(0)], [int(1), int(0)]]);
    }

    #[test]
    fn irreducible_curve_contains_no_line() {
        let phi = map([
            "x1*y0*z1-x0*y1*z1",
            "x1*y1*z0-x0*y1*z1",
            "x0*y1*z0-x0*y0*z1",
            "x1*y0*z0-x0*y0*z1",
        ]);
        for a in Axis::ALL {
            assert_eq!(line_census(&phi, a).unwrap().complex_count, 0);
        }
    }

    #[test]
    fn pencil_signature_permutes_with_factors() {
        let phi = map(["x1*y1*z1", "x0*y1*z1", "x1*y0*z1", "x1*y0*z0-x0*y1*z0"]);
        let s = pencil_signature(&phi);
        let perm = [2, 0, 1];
        assert_eq!(super::super::permute3(&s, perm), pencil_signature(&phi.permute_factors(perm)));
    }
}
