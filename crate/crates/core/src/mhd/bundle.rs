use std::fmt;

use serde::{Deserialize, Serialize};

use super::vector::{Frame, VecField3};
use crate::algebra::poly::fmt_q;
use crate::algebra::{ParamRational, ParamValues, SymField, Symbol, Q};
use crate::error::{Error, Result};

/// Identifies where a bundle came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyTag {
    FamilyOne,
    FamilyTwo,
    NseOne,
    NseTwo,
    Zero,
    Other(String),
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::FamilyOne => f.write_str("family-one"),
            FamilyTag::FamilyTwo => f.write_str("family-two"),
            FamilyTag::NseOne => f.write_str("nse-one"),
            FamilyTag::NseTwo => f.write_str("nse-two"),
            FamilyTag::Zero => f.write_str("zero"),
            FamilyTag::Other(s) => f.write_str(s),
        }
    }
}

/// A forbidden value `symbol = value`.
#[derive(Clone, Debug, PartialEq)]
pub struct Exclusion {
    pub symbol: Symbol,
    pub value: Q,
}

impl Exclusion {
    pub fn new(symbol: Symbol, value: Q) -> Self {
        Exclusion { symbol, value }
    }
}

impl fmt::Display for Exclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} != {}", self.symbol, fmt_q(&self.value))
    }
}

/// Exact values for the family parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct Binding {
    pub a: Q,
    pub abar: Q,
    pub k: Q,
    pub tstar: Q,
}

impl Binding {
    pub fn get(&self, sym: Symbol) -> Option<&Q> {
        match sym {
            Symbol::A => Some(&self.a),
            Symbol::Abar => Some(&self.abar),
            Symbol::K => Some(&self.k),
            Symbol::Tstar => Some(&self.tstar),
            _ => None,
        }
    }

    pub fn values(&self, nu: f64) -> ParamValues {
        use num_traits::ToPrimitive;
        let f = |q: &Q| q.to_f64().unwrap_or(f64::NAN);
        ParamValues::new(f(&self.a), f(&self.abar), f(&self.k), f(&self.tstar), nu)
    }
}

/// One candidate solution `(v, H, P)` of the MHD system.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionBundle {
    pub v: VecField3,
    pub h: VecField3,
    pub p: SymField,
    pub excluded: Vec<Exclusion>,
    pub family: FamilyTag,
    /// The time origin of the generator: `s = tstar - t`.
    pub tstar: ParamRational,
    pub binding: Option<Binding>,
}

impl SolutionBundle {
    pub fn new(v: VecField3, h: VecField3, p: SymField, family: FamilyTag) -> Result<Self> {
        if v.frame != h.frame {
            return Err(Error::Frame("v and H must share a frame".into()));
        }
        if v.frame == Frame::CylAxisym
            && !(v.c.iter().chain(h.c.iter()).all(SymField::is_cylindrical) && p.is_cylindrical())
        {
            return Err(Error::Frame(
                "cylindrical bundle components may not contain x1 or x2".into(),
            ));
        }
        Ok(SolutionBundle {
            v,
            h,
            p,
            excluded: Vec::new(),
            family,
            tstar: ParamRational::tstar(),
            binding: None,
        })
    }

    pub fn zero(frame: Frame) -> Self {
        SolutionBundle::new(
            VecField3::zero(frame),
            VecField3::zero(frame),
            SymField::zero(),
            FamilyTag::Zero,
        )
        .expect("zero fields share a frame")
    }

    pub fn frame(&self) -> Frame {
        self.v.frame
    }

    pub fn with_exclusions(mut self, excluded: Vec<Exclusion>) -> Self {
        self.excluded = excluded;
        self
    }

    pub fn with_binding(mut self, binding: Binding) -> Result<Self> {
        self.check_binding(&binding)?;
        self.binding = Some(binding);
        Ok(self)
    }

    /// Rejects exact parameter values hitting an exclusion.
    pub fn check_binding(&self, b: &Binding) -> Result<()> {
        for ex in &self.excluded {
            if b.get(ex.symbol) == Some(&ex.value) {
                return Err(Error::Param(format!(
                    "{} = {} is excluded for {}",
                    ex.symbol,
                    fmt_q(&ex.value),
                    self.family
                )));
            }
        }
        Ok(())
    }

    /// Rejects real parameter values hitting an exclusion.
    pub fn check_values(&self, p: &ParamValues) -> Result<()> {
        use num_traits::ToPrimitive;
        for ex in &self.excluded {
            let forbidden = ex.value.to_f64().unwrap_or(f64::NAN);
            if p.get(ex.symbol) == Some(forbidden) {
                return Err(Error::Param(format!(
                    "{} = {} is excluded for {}",
                    ex.symbol,
                    fmt_q(&ex.value),
                    self.family
                )));
            }
        }
        if !(p.tstar > 0.0) {
            return Err(Error::Param("T* must be positive".into()));
        }
        Ok(())
    }

    /// Numeric parameters from the attached binding.
    pub fn values(&self, nu: f64) -> Result<ParamValues> {
        let b = self
            .binding
            .as_ref()
            .ok_or_else(|| Error::Param("bundle has no parameter binding".into()))?;
        let p = b.values(nu);
        self.check_values(&p)?;
        Ok(p)
    }

    /// Value of the time origin `tstar` at the given parameters.
    pub fn tstar_value(&self, p: &ParamValues) -> Result<f64> {
        self.tstar.eval(&p.as_array())
    }

    /// All ten scalar fields `(v1, v2, v3, H1, H2, H3, P)` in order.
    pub fn scalars(&self) -> [&SymField; 7] {
        [
            &self.v.c[0],
            &self.v.c[1],
            &self.v.c[2],
            &self.h.c[0],
            &self.h.c[1],
            &self.h.c[2],
            &self.p,
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::q_frac;

    #[test]
    fn exclusions_are_enforced() {
        let b = SolutionBundle::zero(Frame::Cartesian)
            .with_exclusions(vec![Exclusion::new(Symbol::A, q_frac(-1, 2))]);
        let bad = Binding {
            a: q_frac(-1, 2),
            abar: q_frac(1, 1),
            k: q_frac(1, 1),
            tstar: q_frac(1, 1),
        };
        assert!(matches!(b.check_binding(&bad), Err(Error::Param(_))));
        assert!(b
            .check_values(&ParamValues::new(-0.5, 1.0, 1.0, 1.0, 0.0))
            .is_err());
        assert!(b
            .check_values(&ParamValues::new(0.5, 1.0, 1.0, 1.0, 0.0))
            .is_ok());
    }

    #[test]
    fn mixed_frames_rejected() {
        let r = SolutionBundle::new(
            VecField3::zero(Frame::Cartesian),
            VecField3::zero(Frame::CylAxisym),
            SymField::zero(),
            FamilyTag::Zero,
        );
        assert!(r.is_err());
    }
}
