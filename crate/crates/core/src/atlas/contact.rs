//! The point of contact of a birational map of type (2,2,2).

use num::Zero;

use crate::birational::{decide, type_string};
use crate::exactmath::{BinaryForm, Matrix, Rational};
use crate::oracle::{assemble, eval_matrix, group_matrix, minors, normalize_point, rank_one_kernel, KernelPoints};
use crate::triring::{ideal_graded_dim, Axis, MultiDegree, MultiPoly, Point, TriLinearMap, Var};

use super::AtlasError;

#[derive(Clone, Debug, PartialEq)]
pub struct ContactData {
    pub q: Point,
    /// `(lambda : mu : nu)` scaled so that `lambda = 1`.
    pub lambda_mu_nu: [Rational; 3],
    /// The linear forms vanishing at the coordinates of `q`, one per factor.
    pub deltas: [MultiPoly; 3],
}

impl ContactData {
    /// Generators of the contact ideal: the surface through `q` and the
    /// products of two deltas.
    pub fn ideal_generators(&self) -> Vec<MultiPoly> {
        let mut gens = vec![self.surface()];
        for a in 0..3 {
            for b in a..3 {
                gens.push(self.deltas[a].mul(&self.deltas[b]));
            }
        }
        gens
    }

    /// `lambda D1 y_j z_k + mu x_i D2 z_k + nu x_i y_j D3`.
    pub fn surface(&self) -> MultiPoly {
        let base = base_coordinates(&self.q);
        let terms: Vec<(Rational, MultiPoly)> = (0..3)
            .map(|g| {
                let mut p = self.deltas[g].clone();
                for h in (0..3).filter(|&h| h != g) {
                    p = p.mul(&MultiPoly::var(base[h]));
                }
                (self.lambda_mu_nu[g].clone(), p)
            })
            .collect();
        let items: Vec<(Rational, &MultiPoly)> = terms.iter().map(|(c, p)| (c.clone(), p)).collect();
        MultiPoly::linear_combination(MultiDegree::ONES, &items).expect("equal degrees")
    }
}

/// For each factor, the first coordinate variable not vanishing at `q`.
fn base_coordinates(q: &Point) -> [Var; 3] {
    std::array::from_fn(|g| {
        let i = if q[g][0].is_zero() { 1 } else { 0 };
        Var((2 * g + i) as u8)
    })
}

/// `det [[v0, v1], [a0, a1]]` for the variables of factor `g`.
fn delta(g: usize, p: &[Rational; 2]) -> MultiPoly {
    MultiPoly::from_binary(&BinaryForm::new(Axis::from_index(g), vec![p[1].clone(), -p[0].clone()]))
}

/// Rational points of a zero-dimensional base locus.
fn rational_base_points(phi: &TriLinearMap) -> Vec<Point> {
    for axis in Axis::ALL {
        let m = group_matrix(phi.entries(), axis);
        let det = minors(&m, 4).pop().expect("one maximal minor");
        if det.is_zero() {
            continue;
        }
        let mut out = Vec::new();
        for root in det.rational_roots() {
            if let KernelPoints::Finite(sols) = rank_one_kernel(&eval_matrix(&m, &root)) {
                for (u, v) in sols {
                    let p = normalize_point(&assemble(axis, &root, u, v));
                    if !out.contains(&p) {
                        out.push(p);
                    }
                }
            }
        }
        return out;
    }
    Vec::new()
}

/// Gradient test and (lambda : mu : nu) at a base point, if it is a contact point.
fn contact_at(phi: &TriLinearMap, q: &Point) -> Option<ContactData> {
    let base = base_coordinates(q);
    let free: [Var; 3] = std::array::from_fn(|g| Var(base[g].0 ^ 1));
    let grads: Vec<Vec<Rational>> = phi
        .entries()
        .iter()
        .map(|f| free.iter().map(|&v| f.partial(v).eval_xyz(&q[0], &q[1], &q[2])).collect())
        .collect();
    if Matrix::from_rows(grads.clone(), 3).rank() != 1 {
        return None;
    }
    let dir = grads.into_iter().find(|g| g.iter().any(|c| !c.is_zero()))?;
    let deltas: [MultiPoly; 3] = std::array::from_fn(|g| delta(g, &q[g]));
    // d(delta_g)/d(free_g) times the base coordinates of the other factors at q.
    let mut lmn: [Rational; 3] = std::array::from_fn(|g| {
        let dd = deltas[g].partial(free[g]).eval_xyz(&q[0], &q[1], &q[2]);
        let others: Rational = (0..3)
            .filter(|&h| h != g)
            .map(|h| q[h][(base[h].0 & 1) as usize].clone())
            .product();
        &dir[g] / (dd * others)
    });
    if lmn.iter().any(|c| c.is_zero()) {
        return None;
    }
    let l0 = lmn[0].clone();
    for c in lmn.iter_mut() {
        *c = &*c / &l0;
    }
    let data = ContactData {
        q: q.clone(),
        lambda_mu_nu: lmn,
        deltas,
    };
    let gens = data.ideal_generators();
    let d0 = ideal_graded_dim(&gens, MultiDegree::ONES);
    let mut with_entries = gens;
    with_entries.extend(phi.entries().iter().cloned());
    (d0 == 5 && ideal_graded_dim(&with_entries, MultiDegree::ONES) == d0).then_some(data)
}

/// The unique base point where all gradients of the entries are proportional.
pub fn contact_point(phi: &TriLinearMap) -> Result<ContactData, AtlasError> {
    let report = decide(phi);
    match report.phi_type {
        Some([2, 2, 2]) => {}
        Some(t) => return Err(AtlasError::NotType222(type_string(t))),
        None => return Err(AtlasError::NotType222(report.verdict.to_string())),
    }
    rational_base_points(phi)
        .iter()
        .find_map(|q| contact_at(phi, q))
        .ok_or(AtlasError::ContactNotRational)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;
    use crate::triring::Automorphism;

    fn rho1() -> TriLinearMap {
        TriLinearMap::from_strs(&["x0*y1*z1", "x1*y0*z1", "x1*y1*z0", "x1*y0*z0+x0*y1*z0+x0*y0*z1"]).unwrap()
    }

    #[test]
    fn contact_point_of_first_representative() {
        let c = contact_point(&rho1()).unwrap();
        assert_eq!(c.q, [[int(1), int(0)], [int(1), int(0)], [int(1), int(0)]]);
        assert_eq!(c.lambda_mu_nu, [int(1), int(1), int(1)]);
    }

    #[test]
    fn contact_point_moves_with_the_automorphism() {
        // xi sends (1:0)^3 to (1:1) x (2:1) x (0:1); phi ∘ xi^{-1} has contact there.
        let m = |a: i64, b: i64, c: i64, d: i64| [[int(a), int(b)], [int(c), int(d)]];
        let xi = Automorphism::new([0, 1, 2], [m(1, 0, 1, 1), m(2, 0, 1, 1), m(0, 1, 1, 0)]);
        let phi = rho1().compose_right(&xi.inverse());
        let c = contact_point(&phi).unwrap();
        assert_eq!(c.q, normalize_point(&[[int(1), int(1)], [int(2), int(1)], [int(0), int(1)]]));
    }

    #[test]
    fn wrong_type_is_rejected() {
        let phi = TriLinearMap::from_strs(&["x1*y1*z1", "x0*y1*z1", "x1*y0*z1", "x1*y1*z0"]).unwrap();
        assert!(matches!(contact_point(&phi), Err(AtlasError::NotType222(_))));
    }
}
