//! Mechanized derivation of the magnetic field from the velocity families.
//!
//! The radial ansatz `H^r = abar r s^-alpha`, `H^z = -2 abar z s^-alpha` is
//! substituted into the radial induction equation with `alpha` kept as a
//! formal symbol. The azimuthal ansatz `H^theta = kbar r^p z^q s^-beta` is
//! solved by exponent matching: the azimuthal induction equation is linear in
//! `H^theta`, so its residual is `kbar L[r^p z^q s^-beta] + F` with a forcing
//! `F` that does not involve `H^theta`. Each term group of `L` is matched in
//! turn against the forcing signature; the surviving candidate fixes
//! `(p, q, beta)` and a single linear equation fixes `kbar`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::poly::{fmt_q, q_int};
use crate::algebra::{exp_frac, AffineExp, Exp, Exponents, ParamRational, SymField, Symbol, Q};
use crate::catalog::{self, Family, Form};
use crate::error::{Error, Result};
use crate::mhd::{cyl_equations, cyl_incompressibility, CylFields};

/// One step of the derivation trace.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceStep {
    pub step: String,
    pub equation: String,
    pub result: String,
}

impl TraceStep {
    fn new(step: &str, equation: impl Into<String>, result: impl Into<String>) -> Self {
        TraceStep {
            step: step.into(),
            equation: equation.into(),
            result: result.into(),
        }
    }
}

/// Solved radial ansatz.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadialAnsatz {
    #[serde(serialize_with = "ser_exp")]
    pub alpha_h: Exp,
    pub trace: Vec<TraceStep>,
}

/// Solved azimuthal ansatz `H^theta = kbar r^p z^q s^-beta`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThetaAnsatz {
    #[serde(serialize_with = "ser_display")]
    pub kbar: ParamRational,
    #[serde(serialize_with = "ser_exp")]
    pub p: Exp,
    #[serde(serialize_with = "ser_exp")]
    pub q: Exp,
    #[serde(serialize_with = "ser_display")]
    pub beta: AffineExp,
    pub trace: Vec<TraceStep>,
}

impl ThetaAnsatz {
    /// Exponent of `s` in the solved field, `-beta`.
    pub fn s_exponent(&self) -> AffineExp {
        self.beta.neg()
    }

    /// `p - 2q + 1`.
    pub fn constraint(&self) -> Exp {
        self.p - self.q * Exp::from_integer(2) + Exp::from_integer(1)
    }

    pub fn field(&self) -> SymField {
        theta_base(self.p, self.q, self.beta).scale(&self.kbar)
    }
}

fn ser_exp<S: serde::Serializer>(e: &Exp, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&e.to_string())
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Exact values for the family parameters; `None` keeps a symbol formal.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AnsatzParams {
    pub a: Option<Q>,
    pub abar: Option<Q>,
    pub k: Option<Q>,
}

impl AnsatzParams {
    pub fn formal() -> Self {
        AnsatzParams::default()
    }

    pub fn exact(a: Q, abar: Q, k: Q) -> Self {
        AnsatzParams {
            a: Some(a),
            abar: Some(abar),
            k: Some(k),
        }
    }

    fn pairs(&self) -> Vec<(Symbol, &Q)> {
        [
            (Symbol::A, &self.a),
            (Symbol::Abar, &self.abar),
            (Symbol::K, &self.k),
        ]
        .into_iter()
        .filter_map(|(s, v)| v.as_ref().map(|v| (s, v)))
        .collect()
    }

    /// `a`, `abar` and `k` must be nonzero before the ansatz is meaningful.
    fn check(&self) -> Result<()> {
        for (sym, v) in self.pairs() {
            if num_traits::Zero::is_zero(v) {
                return Err(Error::Param(format!("{sym} must be nonzero")));
            }
        }
        Ok(())
    }

    fn apply(&self, f: &SymField) -> Result<SymField> {
        let mut out = f.clone();
        for (sym, v) in self.pairs() {
            out = out.map_coefficients(|c| c.substitute(sym, v))?;
        }
        Ok(out)
    }

    fn apply_coeff(&self, c: &ParamRational) -> Result<ParamRational> {
        let mut out = c.clone();
        for (sym, v) in self.pairs() {
            out = out.substitute(sym, v)?;
        }
        Ok(out)
    }
}

fn theta_base(p: Exp, q: Exp, beta: AffineExp) -> SymField {
    let e = Exponents::one()
        .with_r(p / Exp::from_integer(2))
        .with_x(2, q)
        .with_s(beta.neg());
    SymField::monomial(ParamRational::one(), e)
}

/// Velocity of the family plus `H^r = abar r`, `H^z = -2 abar z`, and the
/// given azimuthal component.
fn fields(family: Family, hth: SymField, params: &AnsatzParams) -> Result<CylFields> {
    // Only the radial solve binds values before solving.
    let b = catalog::symbolic(family, Form::Cylindrical);
    let [vr, vth, vz] = b.v.c.clone();
    let abar = ParamRational::abar();
    let f = CylFields {
        vr,
        vth,
        vz,
        hr: SymField::radius_pow(1).scale(&abar),
        hth,
        hz: SymField::axial().scale(&abar.scale(&q_int(-2))),
        pbar: SymField::zero(),
    };
    let ap = |g: &SymField| params.apply(g);
    Ok(CylFields {
        vr: ap(&f.vr)?,
        vth: ap(&f.vth)?,
        vz: ap(&f.vz)?,
        hr: ap(&f.hr)?,
        hth: ap(&f.hth)?,
        hz: ap(&f.hz)?,
        pbar: f.pbar,
    })
}

const MOMENTUM_THETA: usize = 1;
const INDUCTION_R: usize = 3;
const INDUCTION_THETA: usize = 4;
const INDUCTION_Z: usize = 5;

fn equation(f: &CylFields, idx: usize) -> Result<SymField> {
    Ok(cyl_equations(f)?[idx].residual())
}

/// Solves for `alpha` in `H^r = abar r s^-alpha`, `H^z = -2 abar z s^-alpha`.
///
/// The envelope `s^-alpha` is factored out: every operator in the radial
/// induction equation is linear in `H` except `d_t`, which becomes
/// `d_t + alpha/s`.
pub fn solve_radial(family: Family) -> Result<RadialAnsatz> {
    solve_radial_at(family, &AnsatzParams::formal())
}

pub fn solve_radial_at(family: Family, params: &AnsatzParams) -> Result<RadialAnsatz> {
    params.check()?;
    let f = fields(family, SymField::zero(), params)?;
    let mut trace = vec![TraceStep::new(
        "ansatz",
        "H^r = abar r s^-alpha, H^z = -2 abar z s^-alpha",
        format!(
            "incompressibility d_r(r H^r) + d_z(r H^z) = {}",
            cyl_incompressibility(&f.hr, &f.hz)?
        ),
    )];
    let alpha = SymField::constant(ParamRational::symbol(Symbol::Alpha));
    let s_inv = SymField::s_pow(AffineExp::int(-1));
    let envelope = |h: &SymField| alpha.mul(&s_inv).mul(h);
    let res_r = equation(&f, INDUCTION_R)?.add(&envelope(&f.hr));
    trace.push(TraceStep::new(
        "radial induction",
        format!("{res_r} = 0"),
        "collect coefficients per term",
    ));
    let alpha_h = solve_linear_alpha(&res_r)?;
    trace.push(TraceStep::new(
        "solve",
        "each coefficient = 0",
        format!("alpha = {alpha_h}"),
    ));
    let fixed = ParamRational::from_q(crate::algebra::poly::q_frac(
        *alpha_h.numer(),
        *alpha_h.denom(),
    ));
    let res_z = equation(&f, INDUCTION_Z)?.add(&envelope(&f.hz));
    let res_z = res_z.substitute_symbol(Symbol::Alpha, &fixed)?;
    trace.push(TraceStep::new(
        "axial induction",
        "residual with the solved alpha",
        if res_z.is_zero() {
            "0 (satisfied)".to_string()
        } else {
            format!("{res_z} (not satisfied)")
        },
    ));
    if !res_z.is_zero() {
        return Err(Error::NoSolution(format!(
            "alpha = {alpha_h} does not satisfy the axial induction equation"
        )));
    }
    Ok(RadialAnsatz { alpha_h, trace })
}

/// Solves `c0 + alpha c1 = 0` simultaneously for every term of `res`.
fn solve_linear_alpha(res: &SymField) -> Result<Exp> {
    let parts = res.split_by_symbol(Symbol::Alpha)?;
    if parts.len() > 2 {
        return Err(Error::NoSolution("equation is nonlinear in alpha".into()));
    }
    let c0 = parts.first().cloned().unwrap_or_default();
    let c1 = parts.get(1).cloned().unwrap_or_default();
    let mut keys: BTreeSet<Exponents> = c0.iter().map(|(e, _)| *e).collect();
    keys.extend(c1.iter().map(|(e, _)| *e));
    let mut solution: Option<Q> = None;
    for e in keys {
        let (a0, a1) = (c0.coefficient(&e), c1.coefficient(&e));
        if a1.is_zero() {
            if a0.is_zero() {
                continue;
            }
            return Err(Error::NoSolution(format!(
                "term with coefficient {a0} cannot be balanced by alpha"
            )));
        }
        let val = a0
            .neg()
            .div(&a1)
            .and_then(|v| v.as_constant())
            .ok_or_else(|| Error::NoSolution("alpha is not a rational constant".into()))?;
        match &solution {
            Some(prev) if *prev != val => {
                return Err(Error::NoSolution(format!(
                    "inconsistent balances alpha = {} and {}",
                    fmt_q(prev),
                    fmt_q(&val)
                )))
            }
            _ => solution = Some(val),
        }
    }
    let q = solution.ok_or_else(|| Error::NoSolution("alpha is not determined".into()))?;
    let to_i64 = |b: &num_bigint::BigInt| -> Result<i64> {
        i64::try_from(b).map_err(|_| Error::NoSolution("alpha out of range".into()))
    };
    Ok(exp_frac(to_i64(q.numer())?, to_i64(q.denom())?))
}

/// Forcing written in the reduced equation for `H^theta` after the velocity
/// is substituted: `(2k/r^2) H^r` for family one, `2k s^(2a) H^r` for family
/// two.
pub fn displayed_forcing(family: Family, params: &AnsatzParams) -> Result<SymField> {
    let hr = SymField::radius_pow(1).scale(&ParamRational::abar());
    let g = match family {
        Family::One => SymField::radius_pow(-2),
        Family::Two => SymField::s_pow(AffineExp::affine(0, 2)),
    };
    params.apply(&g.mul(&hr).scale(&ParamRational::k().scale(&q_int(2))))
}

/// Exponent signature `(p, q, s-exponent)` of a cylindrical term.
fn signature(e: &Exponents) -> (Exp, Exp, AffineExp) {
    (e.radius_power(), e.x[2], e.s)
}

fn fmt_sig(p: Exp, q: Exp, s: AffineExp) -> String {
    format!("r^{p} z^{q} s^{s}")
}

/// Term groups of the homogeneous operator relative to `r^p z^q s^-beta`:
/// time/transport `(0, 0, -1)`, radial viscous `(-2, 0, 0)`, axial viscous
/// `(0, -2, 0)`.
const GROUP_OFFSETS: [(i64, i64, i64, &str); 3] = [
    (0, 0, -1, "time and transport"),
    (-2, 0, 0, "radial viscous"),
    (0, -2, 0, "axial viscous"),
];

struct Candidate {
    p: Exp,
    q: Exp,
    beta: AffineExp,
    group: &'static str,
}

fn candidates(forcing: &SymField) -> Vec<Candidate> {
    let mut out = Vec::new();
    for (e, _) in forcing.iter() {
        let (pf, qf, sf) = signature(e);
        for (dp, dq, ds, group) in GROUP_OFFSETS {
            let p = pf - Exp::from_integer(dp);
            let q = qf - Exp::from_integer(dq);
            let s = sf.sub(&AffineExp::int(ds));
            let c = Candidate {
                p,
                q,
                beta: s.neg(),
                group,
            };
            if !out
                .iter()
                .any(|o: &Candidate| o.p == c.p && o.q == c.q && o.beta == c.beta)
            {
                out.push(c);
            }
        }
    }
    out
}

/// Solves `kbar L + F = 0` termwise for a constant-in-space `kbar`.
fn solve_kbar(l: &SymField, forcing: &SymField) -> std::result::Result<ParamRational, String> {
    let mut keys: BTreeSet<Exponents> = l.iter().map(|(e, _)| *e).collect();
    keys.extend(forcing.iter().map(|(e, _)| *e));
    let mut kbar: Option<ParamRational> = None;
    for e in keys {
        let (lc, fc) = (l.coefficient(&e), forcing.coefficient(&e));
        let (p, q, s) = signature(&e);
        if lc.is_zero() {
            if fc.is_zero() {
                continue;
            }
            return Err(format!("forcing term {} is not matched", fmt_sig(p, q, s)));
        }
        let val = fc.neg().div(&lc).expect("nonzero divisor");
        if val.is_zero() {
            return Err(format!("group {} forces kbar = 0", fmt_sig(p, q, s)));
        }
        match &kbar {
            Some(prev) if *prev != val => {
                return Err(format!("inconsistent kbar values {prev} and {val}"))
            }
            _ => kbar = Some(val),
        }
    }
    kbar.ok_or_else(|| "kbar is not determined".to_string())
}

/// Solves the azimuthal ansatz with every parameter formal.
pub fn solve_theta(family: Family) -> Result<ThetaAnsatz> {
    let formal = AnsatzParams::formal();
    let mut trace = vec![TraceStep::new(
        "ansatz",
        "H^r = abar r, H^z = -2 abar z, H^theta = kbar r^p z^q s^-beta",
        format!("family {family}"),
    )];
    let forcing = equation(&fields(family, SymField::zero(), &formal)?, INDUCTION_THETA)?;
    let shown = displayed_forcing(family, &formal)?;
    trace.push(TraceStep::new(
        "forcing",
        "azimuthal induction residual at H^theta = 0",
        format!("{forcing}"),
    ));
    trace.push(TraceStep::new(
        "forcing check",
        format!("reduced-equation forcing {shown}"),
        if shown == forcing {
            "agrees with the general system".to_string()
        } else {
            "differs from the general system".to_string()
        },
    ));

    match attempt(family, &forcing, &mut trace) {
        Ok(sol) => Ok(ThetaAnsatz { trace, ..sol }),
        Err(first) => {
            if shown != forcing {
                trace.push(TraceStep::new(
                    "retry",
                    "repeat the match with the reduced-equation forcing",
                    "",
                ));
                return Err(Error::NoSolution(
                    match attempt(family, &shown, &mut trace) {
                        Ok(sol) => format!(
                        "{first}; the reduced-equation forcing gives p = {}, q = {}, beta = {}, \
                         kbar = {} but that field does not solve the general system",
                        sol.p, sol.q, sol.beta, sol.kbar
                    ),
                        Err(second) => {
                            format!("{first}; with the reduced-equation forcing: {second}")
                        }
                    },
                ));
            }
            Err(Error::NoSolution(first))
        }
    }
}

/// Solves the azimuthal ansatz formally, then binds exact values. A
/// denominator of `kbar` vanishing at the given `a` yields
/// [`Error::NoSolution`] naming the factor.
pub fn solve_theta_at(family: Family, params: &AnsatzParams) -> Result<ThetaAnsatz> {
    params.check()?;
    let mut sol = solve_theta(family)?;
    let kbar = params.apply_coeff(&sol.kbar).map_err(|e| match e {
        Error::Domain(msg) => Error::NoSolution(format!("kbar degenerates: {msg}")),
        other => other,
    })?;
    sol.trace.push(TraceStep::new(
        "bind",
        format!("kbar = {}", sol.kbar),
        format!("kbar = {kbar}"),
    ));
    sol.kbar = kbar;
    Ok(sol)
}

fn attempt(
    family: Family,
    forcing: &SymField,
    trace: &mut Vec<TraceStep>,
) -> std::result::Result<ThetaAnsatz, String> {
    if forcing.is_zero() {
        let msg = "the forcing vanishes, so the homogeneous equation only admits kbar = 0";
        trace.push(TraceStep::new("match", "kbar L[H^theta] = 0", msg));
        return Err(msg.to_string());
    }
    let mut reasons = Vec::new();
    for c in candidates(forcing) {
        let label = format!(
            "match {} group: p = {}, q = {}, beta = {}",
            c.group, c.p, c.q, c.beta
        );
        let formal = AnsatzParams::formal();
        let str_err = |e: Error| e.to_string();
        let with = fields(family, theta_base(c.p, c.q, c.beta), &formal).map_err(str_err)?;
        let without = fields(family, SymField::zero(), &formal).map_err(str_err)?;
        let l = equation(&with, INDUCTION_THETA)
            .map_err(str_err)?
            .sub(&equation(&without, INDUCTION_THETA).map_err(str_err)?);
        match solve_kbar(&l, forcing) {
            Err(why) => {
                trace.push(TraceStep::new(
                    "candidate",
                    label,
                    format!("rejected: {why}"),
                ));
                reasons.push(why);
            }
            Ok(kbar) => {
                let p_2q_1 = c.p - c.q * Exp::from_integer(2) + Exp::from_integer(1);
                let mom = equation(&with, MOMENTUM_THETA).map_err(str_err)?;
                trace.push(TraceStep::new("candidate", label, format!("kbar = {kbar}")));
                trace.push(TraceStep::new(
                    "constraint",
                    "azimuthal momentum: abar (p - 2q + 1) H^theta = 0",
                    format!(
                        "p - 2q + 1 = {p_2q_1}; residual {}",
                        if mom.is_zero() {
                            "0".to_string()
                        } else {
                            mom.to_string()
                        }
                    ),
                ));
                if !mom.is_zero() {
                    let why = format!(
                        "p = {}, q = {}, beta = {}, kbar = {kbar} solves the induction \
                         equation but p - 2q + 1 = {p_2q_1} != 0",
                        c.p, c.q, c.beta
                    );
                    reasons.push(why);
                    continue;
                }
                note_degenerate(&kbar, trace);
                trace.push(TraceStep::new("result", "kbar", format!("kbar = {kbar}")));
                return Ok(ThetaAnsatz {
                    kbar,
                    p: c.p,
                    q: c.q,
                    beta: c.beta,
                    trace: Vec::new(),
                });
            }
        }
    }
    Err(format!("no candidate survives: {}", reasons.join("; ")))
}

/// Records the denominators of `kbar` that exclude values of `a`.
fn note_degenerate(kbar: &ParamRational, trace: &mut Vec<TraceStep>) {
    for (f, _) in kbar.denominator_factors() {
        if f.mentions(Symbol::A) {
            trace.push(TraceStep::new(
                "degenerate",
                format!("kbar has denominator factor {f}"),
                "no solution where it vanishes",
            ));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::q_frac;

    #[test]
    fn radial_exponent_is_zero() {
        for fam in Family::ALL {
            let r = solve_radial(fam).unwrap();
            assert_eq!(r.alpha_h, Exp::from_integer(0));
        }
    }

    #[test]
    fn radial_rejects_zero_a() {
        let p = AnsatzParams::exact(q_int(0), q_int(1), q_int(1));
        assert!(matches!(
            solve_radial_at(Family::One, &p),
            Err(Error::Param(_))
        ));
    }

    #[test]
    fn theta_family_one() {
        let t = solve_theta(Family::One).unwrap();
        assert_eq!(t.p, Exp::from_integer(-1));
        assert_eq!(t.q, Exp::from_integer(0));
        assert_eq!(t.beta, AffineExp::int(-1));
        assert_eq!(t.kbar, catalog::kbar(Family::One));
        assert_eq!(t.constraint(), Exp::from_integer(0));
        assert!(t.trace.last().unwrap().result.contains("kbar"));

        let t = solve_theta_at(
            Family::One,
            &AnsatzParams::exact(q_int(1), q_int(3), q_int(2)),
        )
        .unwrap();
        assert_eq!(t.kbar, ParamRational::int(4));
    }

    #[test]
    fn theta_family_one_degenerate() {
        let p = AnsatzParams::exact(q_frac(-1, 2), q_int(3), q_int(2));
        let err = solve_theta_at(Family::One, &p).unwrap_err();
        assert!(matches!(err, Error::NoSolution(_)), "{err}");
        assert!(err.to_string().contains("2*a + 1"), "{err}");
    }

    #[test]
    fn theta_family_two_has_no_solution() {
        // The general azimuthal induction equation has no forcing for the
        // family-two velocity, and the reduced-equation forcing leads to
        // p = 1, q = 0, which violates p - 2q + 1 = 0.
        let err = solve_theta(Family::Two).unwrap_err();
        assert!(matches!(err, Error::NoSolution(_)));
        let msg = err.to_string();
        assert!(msg.contains("p = 1, q = 0"), "{msg}");
    }

    #[test]
    fn forcing_agreement_is_traced() {
        let t = solve_theta(Family::One).unwrap();
        assert!(t
            .trace
            .iter()
            .any(|s| s.result == "agrees with the general system"));
    }
}
