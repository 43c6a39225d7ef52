//! Exact symbolic algebra for the field class spanned by the catalog
//! solutions: parameter-rational coefficients, monomials in `x1, x2, x3`,
//! `R = x1^2 + x2^2` and `s = T* - t`, with differentiation and evaluation.

pub mod coeff;
pub mod field;
pub mod poly;

pub use coeff::ParamRational;
pub use field::{
    exp_frac, exp_int, AffineExp, BoundField, Exp, Exponents, ParamValues, Point, SymField, Term,
    Var,
};
pub use poly::{Monomial, Poly, Symbol, Q};
