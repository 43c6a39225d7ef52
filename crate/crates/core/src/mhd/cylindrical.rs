//! Axisymmetric reduction in the frame
//! `e_r = (x1, x2, 0)/r`, `e_theta = (x2, -x1, 0)/r`, `e_z = (0, 0, 1)`.
//!
//! Scalars are functions of `r = R^(1/2)`, `z = x3` and `s`. The scalar
//! Laplacian is `d_rr + (1/r) d_r + d_zz`; the `r` and `theta` components of
//! the vector Laplacian carry the extra `-1/r^2`.

use super::bundle::SolutionBundle;
use super::residuals::EquationTerms;
use super::vector::{Frame, VecField3};
use crate::algebra::{ParamRational, SymField, Var};
use crate::error::Result;

/// The six unknowns of the reduced system plus the effective pressure.
#[derive(Clone, Debug, PartialEq)]
pub struct CylFields {
    pub vr: SymField,
    pub vth: SymField,
    pub vz: SymField,
    pub hr: SymField,
    pub hth: SymField,
    pub hz: SymField,
    pub pbar: SymField,
}

impl CylFields {
    /// Reads a cylindrical bundle, forming `Pbar = P + |H|^2/2`.
    pub fn from_bundle(b: &SolutionBundle) -> Result<Self> {
        b.v.require(Frame::CylAxisym)?;
        let [vr, vth, vz] = b.v.c.clone();
        let [hr, hth, hz] = b.h.c.clone();
        Ok(CylFields {
            vr,
            vth,
            vz,
            hr,
            hth,
            hz,
            pbar: pbar_from(&b.p, &b.h),
        })
    }
}

fn inv_r() -> SymField {
    SymField::radius_pow(-1)
}

fn inv_r2() -> SymField {
    SymField::radius_pow(-2)
}

fn nu() -> SymField {
    SymField::constant(ParamRational::nu())
}

/// `(u_r d_r + u_z d_z) f`.
fn transport(ur: &SymField, uz: &SymField, f: &SymField) -> Result<SymField> {
    Ok(ur.mul(&f.diff_r()?).add(&uz.mul(&f.diff_z())))
}

/// `(lap - 1/r^2) f`.
pub fn shifted_laplacian(f: &SymField) -> Result<SymField> {
    Ok(f.cyl_laplacian()?.sub(&inv_r2().mul(f)))
}

/// The six reduced equations, each as labelled parts summing to the
/// residual (left side minus right side).
pub fn cyl_equations(f: &CylFields) -> Result<Vec<EquationTerms>> {
    let CylFields {
        vr,
        vth,
        vz,
        hr,
        hth,
        hz,
        pbar,
    } = f;
    let visc = |g: &SymField, shifted: bool| -> Result<SymField> {
        let lap = if shifted {
            shifted_laplacian(g)?
        } else {
            g.cyl_laplacian()?
        };
        Ok(nu().mul(&lap).neg())
    };
    Ok(vec![
        EquationTerms {
            id: "cyl_momentum_r".into(),
            parts: vec![
                ("dt", vr.diff(Var::T)),
                ("transport", transport(vr, vz, vr)?),
                ("swirl", inv_r().mul(&vth.mul(vth)).neg()),
                ("grad_pbar", pbar.diff_r()?),
                ("viscous", visc(vr, true)?),
                ("magnetic_transport", transport(hr, hz, hr)?.neg()),
                ("magnetic_hoop", inv_r().mul(&hth.mul(hth))),
            ],
        },
        EquationTerms {
            id: "cyl_momentum_theta".into(),
            parts: vec![
                ("dt", vth.diff(Var::T)),
                ("transport", transport(vr, vz, vth)?),
                ("coriolis", inv_r().mul(&vr.mul(vth))),
                ("viscous", visc(vth, true)?),
                ("magnetic_transport", transport(hr, hz, hth)?.neg()),
                ("magnetic_coupling", inv_r().mul(&hth.mul(hr)).neg()),
            ],
        },
        EquationTerms {
            id: "cyl_momentum_z".into(),
            parts: vec![
                ("dt", vz.diff(Var::T)),
                ("transport", transport(vr, vz, vz)?),
                ("grad_pbar", pbar.diff_z()),
                ("viscous", visc(vz, false)?),
                ("magnetic_transport", transport(hr, hz, hz)?.neg()),
            ],
        },
        EquationTerms {
            id: "cyl_induction_r".into(),
            parts: vec![
                ("dt", hr.diff(Var::T)),
                ("transport", transport(vr, vz, hr)?),
                ("viscous", visc(hr, true)?),
                ("stretching", transport(hr, hz, vr)?.neg()),
            ],
        },
        EquationTerms {
            id: "cyl_induction_theta".into(),
            parts: vec![
                ("dt", hth.diff(Var::T)),
                ("transport", transport(vr, vz, hth)?),
                ("forcing", inv_r().mul(&hr.mul(vth))),
                ("viscous", visc(hth, true)?),
                ("stretching", transport(hr, hz, vth)?.neg()),
                ("compression", inv_r().mul(&vr.mul(hth)).neg()),
            ],
        },
        EquationTerms {
            id: "cyl_induction_z".into(),
            parts: vec![
                ("dt", hz.diff(Var::T)),
                ("transport", transport(vr, vz, hz)?),
                ("viscous", visc(hz, false)?),
                ("stretching", transport(hr, hz, vz)?.neg()),
            ],
        },
    ])
}

/// Residuals of the six reduced equations in the order
/// `(momentum r, theta, z, induction r, theta, z)`.
pub fn cyl_residuals(
    vr: &SymField,
    vth: &SymField,
    vz: &SymField,
    hr: &SymField,
    hth: &SymField,
    hz: &SymField,
    pbar: &SymField,
) -> Result<[SymField; 6]> {
    let f = CylFields {
        vr: vr.clone(),
        vth: vth.clone(),
        vz: vz.clone(),
        hr: hr.clone(),
        hth: hth.clone(),
        hz: hz.clone(),
        pbar: pbar.clone(),
    };
    let eqs = cyl_equations(&f)?;
    Ok(std::array::from_fn(|i| eqs[i].residual()))
}

/// `d_r(r u_r) + d_z(r u_z)`.
pub fn cyl_incompressibility(ur: &SymField, uz: &SymField) -> Result<SymField> {
    let r = SymField::radius_pow(1);
    Ok(r.mul(ur).diff_r()?.add(&r.mul(uz).diff_z()))
}

/// `P + |H|^2 / 2`.
pub fn pbar_from(p: &SymField, h: &VecField3) -> SymField {
    p.add(&h.dot(h).scale(&ParamRational::frac(1, 2)))
}

/// Cartesian components of an axisymmetric field:
/// `c1 = (f_r x1 + f_theta x2)/r`, `c2 = (f_r x2 - f_theta x1)/r`, `c3 = f_z`.
pub fn to_cartesian(f: &VecField3) -> Result<VecField3> {
    f.require(Frame::CylAxisym)?;
    let inv_r = inv_r();
    let x1 = SymField::coord(0).mul(&inv_r);
    let x2 = SymField::coord(1).mul(&inv_r);
    Ok(VecField3::cartesian(
        f.c[0].mul(&x1).add(&f.c[1].mul(&x2)),
        f.c[0].mul(&x2).sub(&f.c[1].mul(&x1)),
        f.c[2].clone(),
    ))
}

/// Converts a whole cylindrical bundle; the scalar pressure is unchanged.
pub fn bundle_to_cartesian(b: &SolutionBundle) -> Result<SolutionBundle> {
    let mut out = b.clone();
    out.v = to_cartesian(&b.v)?;
    out.h = to_cartesian(&b.h)?;
    Ok(out)
}
