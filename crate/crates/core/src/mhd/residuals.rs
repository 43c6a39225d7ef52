//! Cartesian residual operators.
//!
//! Every equation is returned as a list of labelled parts whose sum is the
//! residual (left side minus right side). The numeric sampler reuses the
//! parts to normalize floating-point residuals by the largest individual
//! contribution.

use super::bundle::SolutionBundle;
use super::vector::{advect, curl, divergence, gradient, vector_laplacian, Frame, VecField3};
use crate::algebra::{ParamRational, SymField, Var};
use crate::error::Result;

/// One scalar equation split into labelled additive parts.
#[derive(Clone, Debug)]
pub struct EquationTerms {
    pub id: String,
    pub parts: Vec<(&'static str, SymField)>,
}

impl EquationTerms {
    pub fn residual(&self) -> SymField {
        SymField::sum(self.parts.iter().map(|(_, f)| f))
    }
}

fn nu() -> SymField {
    SymField::constant(ParamRational::nu())
}

/// `H . grad H - grad(|H|^2 / 2)`.
pub fn lorentz_force(h: &VecField3) -> Result<VecField3> {
    let half = ParamRational::frac(1, 2);
    let pressure = h.dot(h).scale(&half);
    Ok(advect(h, h)?.sub(&gradient(&pressure)))
}

/// `((curl H) x H, H . grad H - grad(|H|^2 / 2))`.
pub fn lorentz_two_ways(h: &VecField3) -> Result<(VecField3, VecField3)> {
    let direct = curl(h)?.cross(h)?;
    Ok((direct, lorentz_force(h)?))
}

/// `d_t v + (v . grad) v + grad P - nu lap v - (curl H) x H`, per component.
pub fn momentum_equations(b: &SolutionBundle) -> Result<Vec<EquationTerms>> {
    b.v.require(Frame::Cartesian)?;
    let dt = b.v.diff(Var::T);
    let adv = advect(&b.v, &b.v)?;
    let gp = gradient(&b.p);
    let visc = vector_laplacian(&b.v)?.scale_field(&nu());
    let lor = lorentz_force(&b.h)?;
    Ok((0..3)
        .map(|i| EquationTerms {
            id: format!("momentum_{}", i + 1),
            parts: vec![
                ("dt_v", dt.c[i].clone()),
                ("advection", adv.c[i].clone()),
                ("grad_p", gp.c[i].clone()),
                ("viscous", visc.c[i].neg()),
                ("lorentz", lor.c[i].neg()),
            ],
        })
        .collect())
}

/// `d_t H - nu lap H - curl(v x H)`, per component.
pub fn induction_equations(b: &SolutionBundle) -> Result<Vec<EquationTerms>> {
    b.h.require(Frame::Cartesian)?;
    let dt = b.h.diff(Var::T);
    let visc = vector_laplacian(&b.h)?.scale_field(&nu());
    let stretch = curl(&b.v.cross(&b.h)?)?;
    Ok((0..3)
        .map(|i| EquationTerms {
            id: format!("induction_{}", i + 1),
            parts: vec![
                ("dt_h", dt.c[i].clone()),
                ("viscous", visc.c[i].neg()),
                ("curl_v_cross_h", stretch.c[i].neg()),
            ],
        })
        .collect())
}

/// `div v` and `div H`, each split by component.
pub fn divergence_equations(b: &SolutionBundle) -> Result<Vec<EquationTerms>> {
    let split = |f: &VecField3, id: &str| -> Result<EquationTerms> {
        f.require(Frame::Cartesian)?;
        Ok(EquationTerms {
            id: id.to_string(),
            parts: vec![
                ("d1", f.c[0].diff(Var::X1)),
                ("d2", f.c[1].diff(Var::X2)),
                ("d3", f.c[2].diff(Var::X3)),
            ],
        })
    };
    Ok(vec![split(&b.v, "div_v")?, split(&b.h, "div_h")?])
}

/// Momentum, induction and both divergence constraints: eight equations.
pub fn cartesian_equations(b: &SolutionBundle) -> Result<Vec<EquationTerms>> {
    let mut out = momentum_equations(b)?;
    out.extend(induction_equations(b)?);
    out.extend(divergence_equations(b)?);
    Ok(out)
}

pub fn momentum_residual(b: &SolutionBundle) -> Result<VecField3> {
    let eqs = momentum_equations(b)?;
    Ok(VecField3::cartesian(
        eqs[0].residual(),
        eqs[1].residual(),
        eqs[2].residual(),
    ))
}

pub fn induction_residual(b: &SolutionBundle) -> Result<VecField3> {
    let eqs = induction_equations(b)?;
    Ok(VecField3::cartesian(
        eqs[0].residual(),
        eqs[1].residual(),
        eqs[2].residual(),
    ))
}

/// `(div v, div H)`.
pub fn divergence_residuals(b: &SolutionBundle) -> Result<(SymField, SymField)> {
    Ok((divergence(&b.v)?, divergence(&b.h)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mhd::bundle::FamilyTag;
    use crate::Error;

    fn x(i: usize) -> SymField {
        SymField::coord(i)
    }

    #[test]
    fn rest_state_has_zero_residual() {
        let b = SolutionBundle::zero(Frame::Cartesian);
        assert!(momentum_residual(&b).unwrap().is_zero());
        assert!(induction_residual(&b).unwrap().is_zero());
    }

    #[test]
    fn steady_linear_magnetic_field() {
        let abar = ParamRational::abar();
        let h = VecField3::cartesian(
            x(0).scale(&abar),
            x(1).scale(&abar),
            x(2).scale(&abar.scale(&crate::algebra::poly::q_int(-2))),
        );
        let b = SolutionBundle::new(
            VecField3::zero(Frame::Cartesian),
            h,
            SymField::zero(),
            FamilyTag::Other("linear-h".into()),
        )
        .unwrap();
        assert!(induction_residual(&b).unwrap().is_zero());
        let (dv, dh) = divergence_residuals(&b).unwrap();
        assert!(dv.is_zero() && dh.is_zero());
    }

    #[test]
    fn lorentz_identity_on_shear() {
        // H = (x2, 0, 0): (curl H) x H = (0, -x2, 0)... both routes agree.
        let h = VecField3::cartesian(x(1), SymField::zero(), SymField::zero());
        let (a, b) = lorentz_two_ways(&h).unwrap();
        assert_eq!(a, b);
        assert!(a.c[0].is_zero() && a.c[2].is_zero());
        assert_eq!(a.c[1], x(1).neg());
        let (z1, z2) = lorentz_two_ways(&VecField3::zero(Frame::Cartesian)).unwrap();
        assert!(z1.is_zero() && z2.is_zero());
    }

    #[test]
    fn cylindrical_bundle_is_rejected() {
        let b = SolutionBundle::zero(Frame::CylAxisym);
        assert!(matches!(momentum_residual(&b), Err(Error::Frame(_))));
        assert!(matches!(induction_residual(&b), Err(Error::Frame(_))));
    }
}
