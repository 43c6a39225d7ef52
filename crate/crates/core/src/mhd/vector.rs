use serde::{Deserialize, Serialize};

use crate::algebra::{ParamRational, SymField, Var};
use crate::error::{Error, Result};

/// Basis a vector field's components refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Frame {
    Cartesian,
    /// Components ordered `(r, theta, z)`, functions of `r = R^(1/2)`, `z`, `s`.
    CylAxisym,
}

/// Three scalar components tagged with their frame.
#[derive(Clone, Debug, PartialEq)]
pub struct VecField3 {
    pub c: [SymField; 3],
    pub frame: Frame,
}

impl VecField3 {
    pub fn new(c1: SymField, c2: SymField, c3: SymField, frame: Frame) -> Self {
        VecField3 {
            c: [c1, c2, c3],
            frame,
        }
    }

    pub fn cartesian(c1: SymField, c2: SymField, c3: SymField) -> Self {
        Self::new(c1, c2, c3, Frame::Cartesian)
    }

    pub fn cylindrical(r: SymField, theta: SymField, z: SymField) -> Self {
        Self::new(r, theta, z, Frame::CylAxisym)
    }

    pub fn zero(frame: Frame) -> Self {
        Self::new(SymField::zero(), SymField::zero(), SymField::zero(), frame)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(SymField::is_zero)
    }

    pub fn require(&self, frame: Frame) -> Result<()> {
        if self.frame == frame {
            Ok(())
        } else {
            Err(Error::Frame(format!(
                "operation needs a {frame:?} field, got {:?}",
                self.frame
            )))
        }
    }

    fn zip_with(&self, o: &VecField3, f: impl Fn(&SymField, &SymField) -> SymField) -> VecField3 {
        VecField3::new(
            f(&self.c[0], &o.c[0]),
            f(&self.c[1], &o.c[1]),
            f(&self.c[2], &o.c[2]),
            self.frame,
        )
    }

    pub fn map(&self, f: impl Fn(&SymField) -> SymField) -> VecField3 {
        VecField3::new(f(&self.c[0]), f(&self.c[1]), f(&self.c[2]), self.frame)
    }

    pub fn try_map(&self, f: impl Fn(&SymField) -> Result<SymField>) -> Result<VecField3> {
        Ok(VecField3::new(
            f(&self.c[0])?,
            f(&self.c[1])?,
            f(&self.c[2])?,
            self.frame,
        ))
    }

    pub fn add(&self, o: &VecField3) -> VecField3 {
        self.zip_with(o, SymField::add)
    }

    pub fn sub(&self, o: &VecField3) -> VecField3 {
        self.zip_with(o, SymField::sub)
    }

    pub fn scale(&self, c: &ParamRational) -> VecField3 {
        self.map(|f| f.scale(c))
    }

    pub fn scale_field(&self, g: &SymField) -> VecField3 {
        self.map(|f| f.mul(g))
    }

    /// Pointwise dot product; valid in any orthonormal frame.
    pub fn dot(&self, o: &VecField3) -> SymField {
        SymField::sum(&[
            self.c[0].mul(&o.c[0]),
            self.c[1].mul(&o.c[1]),
            self.c[2].mul(&o.c[2]),
        ])
    }

    /// Pointwise cross product of Cartesian fields.
    pub fn cross(&self, o: &VecField3) -> Result<VecField3> {
        self.require(Frame::Cartesian)?;
        o.require(Frame::Cartesian)?;
        let (a, b) = (&self.c, &o.c);
        Ok(VecField3::cartesian(
            a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
            a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
            a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
        ))
    }

    pub fn diff(&self, var: Var) -> VecField3 {
        self.map(|f| f.diff(var))
    }
}

/// `grad f` in Cartesian components.
pub fn gradient(f: &SymField) -> VecField3 {
    VecField3::cartesian(f.diff(Var::X1), f.diff(Var::X2), f.diff(Var::X3))
}

/// `(u . grad) f` for a scalar.
pub fn directional(u: &VecField3, f: &SymField) -> SymField {
    SymField::sum(&[
        u.c[0].mul(&f.diff(Var::X1)),
        u.c[1].mul(&f.diff(Var::X2)),
        u.c[2].mul(&f.diff(Var::X3)),
    ])
}

/// `(u . grad) F` componentwise, Cartesian only.
pub fn advect(u: &VecField3, field: &VecField3) -> Result<VecField3> {
    u.require(Frame::Cartesian)?;
    field.require(Frame::Cartesian)?;
    Ok(field.map(|f| directional(u, f)))
}

pub fn divergence(f: &VecField3) -> Result<SymField> {
    f.require(Frame::Cartesian)?;
    Ok(SymField::sum(&[
        f.c[0].diff(Var::X1),
        f.c[1].diff(Var::X2),
        f.c[2].diff(Var::X3),
    ]))
}

pub fn curl(f: &VecField3) -> Result<VecField3> {
    f.require(Frame::Cartesian)?;
    let c = &f.c;
    Ok(VecField3::cartesian(
        c[2].diff(Var::X2).sub(&c[1].diff(Var::X3)),
        c[0].diff(Var::X3).sub(&c[2].diff(Var::X1)),
        c[1].diff(Var::X1).sub(&c[0].diff(Var::X2)),
    ))
}

/// Componentwise Cartesian Laplacian.
pub fn vector_laplacian(f: &VecField3) -> Result<VecField3> {
    f.require(Frame::Cartesian)?;
    Ok(f.map(SymField::laplacian))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> SymField {
        SymField::coord(i)
    }

    #[test]
    fn rigid_rotation_curl() {
        let f = VecField3::cartesian(x(1).neg(), x(0), SymField::zero());
        let w = curl(&f).unwrap();
        assert!(w.c[0].is_zero() && w.c[1].is_zero());
        assert_eq!(w.c[2], SymField::constant(ParamRational::int(2)));
    }

    #[test]
    fn divergence_of_x1() {
        let f = VecField3::cartesian(x(0), SymField::zero(), SymField::zero());
        assert_eq!(
            divergence(&f).unwrap(),
            SymField::constant(ParamRational::one())
        );
    }

    #[test]
    fn frame_errors() {
        let f = VecField3::zero(Frame::CylAxisym);
        assert!(matches!(curl(&f), Err(Error::Frame(_))));
        assert!(matches!(divergence(&f), Err(Error::Frame(_))));
        assert!(f.cross(&f).is_err());
    }
}
