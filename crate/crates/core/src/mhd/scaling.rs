use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::bundle::SolutionBundle;
use super::vector::{Frame, VecField3};
use crate::algebra::{Exp, ParamRational, SymField, Q};
use crate::error::{Error, Result};

/// `base^e` if the result is rational.
pub fn rational_pow(base: &Q, e: &Exp) -> Option<Q> {
    if base.is_zero() {
        return (e.is_positive()).then(Q::zero);
    }
    let d = *e.denom() as u32;
    let n = *e.numer();
    let root = |x: &BigInt| -> Option<BigInt> {
        if x.is_negative() {
            return None;
        }
        let r = x.nth_root(d);
        (num_traits::pow(r.clone(), d as usize) == *x).then_some(r)
    };
    let rooted = if d == 1 {
        base.clone()
    } else {
        Q::new(root(base.numer())?, root(base.denom())?)
    };
    let p = num_traits::pow(rooted, n.unsigned_abs() as usize);
    Some(if n < 0 { p.recip() } else { p })
}

fn scale_field(f: &SymField, lambda: &Q, amplitude: &Exp, time_scale: &Exp) -> Result<SymField> {
    let mut out = SymField::zero();
    for t in f.terms() {
        let e = &t.exps;
        if !e.s.is_constant() && !time_scale.is_zero() {
            return Err(Error::UnsupportedField(format!(
                "time exponent {} depends on a; the rescaled time factor is not rational",
                e.s
            )));
        }
        let spatial = e.x[0] + e.x[1] + e.x[2] + e.r * Exp::from_integer(2);
        let total = *amplitude + spatial + *time_scale * e.s.c0;
        let factor = rational_pow(lambda, &total).ok_or_else(|| {
            Error::UnsupportedField(format!(
                "lambda^({total}) is irrational for lambda = {lambda}"
            ))
        })?;
        out = out.add(&SymField::monomial(t.coeff.scale(&factor), t.exps));
    }
    Ok(out)
}

/// `(l^alpha v(l^(alpha+1) t, l x), l^alpha H(..), l^(2 alpha) P(..))`.
///
/// Substituting `x -> l x` multiplies a term by `l` to its total spatial
/// degree. Substituting `t -> l^(alpha+1) t` turns `s = T* - t` into
/// `l^(alpha+1) s'` with `s' = T*' - t`, `T*' = l^-(alpha+1) T*`.
pub fn scale_solution(b: &SolutionBundle, lambda: &Q, alpha: &Exp) -> Result<SolutionBundle> {
    b.v.require(Frame::Cartesian)?;
    if !lambda.is_positive() {
        return Err(Error::Param("lambda must be positive".into()));
    }
    let time_scale = *alpha + Exp::one();
    let vec = |f: &VecField3| -> Result<VecField3> {
        f.try_map(|c| scale_field(c, lambda, alpha, &time_scale))
    };
    let mut out = b.clone();
    out.v = vec(&b.v)?;
    out.h = vec(&b.h)?;
    out.p = scale_field(&b.p, lambda, &(*alpha * Exp::from_integer(2)), &time_scale)?;
    let shrink = rational_pow(lambda, &(-time_scale))
        .ok_or_else(|| Error::UnsupportedField("lambda^-(alpha+1) is irrational".into()))?;
    out.tstar = b.tstar.mul(&ParamRational::from_q(shrink));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::{q_frac, q_int};

    #[test]
    fn rational_powers() {
        assert_eq!(rational_pow(&q_int(4), &Exp::new(3, 2)), Some(q_int(8)));
        assert_eq!(
            rational_pow(&q_int(2), &Exp::new(-2, 1)),
            Some(q_frac(1, 4))
        );
        assert_eq!(rational_pow(&q_int(2), &Exp::new(1, 2)), None);
        assert_eq!(
            rational_pow(&q_frac(9, 4), &Exp::new(1, 2)),
            Some(q_frac(3, 2))
        );
    }

    #[test]
    fn zero_bundle_scales_to_zero() {
        let b = SolutionBundle::zero(Frame::Cartesian);
        let s = scale_solution(&b, &q_int(3), &Exp::new(1, 1)).unwrap();
        assert!(s.v.is_zero() && s.h.is_zero() && s.p.is_zero());
    }
}
