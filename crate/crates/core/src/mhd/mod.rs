//! The MHD system as exact residual operators.

pub mod bundle;
pub mod cylindrical;
pub mod residuals;
pub mod scaling;
pub mod vector;

pub use bundle::{Binding, Exclusion, FamilyTag, SolutionBundle};
pub use cylindrical::{
    bundle_to_cartesian, cyl_equations, cyl_incompressibility, cyl_residuals, pbar_from,
    to_cartesian, CylFields,
};
pub use residuals::{
    cartesian_equations, divergence_equations, divergence_residuals, induction_equations,
    induction_residual, lorentz_force, lorentz_two_ways, momentum_equations, momentum_residual,
    EquationTerms,
};
pub use scaling::{rational_pow, scale_solution};
pub use vector::{curl, divergence, gradient, Frame, VecField3};
