//! The ring Q[x0,x1,y0,y1,z0,z1,t0..t3] graded by (x, y, z, t)-degree.

mod degree;
mod ideal;
mod map;
mod parse;
mod poly;

pub use degree::{monomials_of, tri_count, tri_index, Axis, Monomial, MultiDegree, Var, VAR_NAMES};
pub use ideal::{
    colon_graded_dim, ideal_graded_dim, ideal_slice_basis, intersection_graded_dim,
    intersection_slice_basis, slice_contains, SliceEngine,
};
pub use map::{substitute_t, Automorphism, MapError, Point, TriLinearMap};
pub use parse::{parse_poly, parse_poly_with_degree, ParseError};
pub use poly::{format_term, join_terms, MultiPoly, PartialPoint, PolyError};
