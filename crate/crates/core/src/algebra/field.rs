//! Scalar fields in the closed term class
//! `c * x1^p1 * x2^p2 * x3^p3 * R^pR * s^(c0 + c1*a)` with `R = x1^2 + x2^2`
//! and `s = T* - t`.
//!
//! Cylindrical fields reuse the same representation with `r = R^(1/2)` and
//! `z = x3`; they never carry `x1` or `x2` factors.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};

use super::coeff::ParamRational;
use super::poly::{Poly, Symbol, NSYMBOLS, Q};
use crate::error::{Error, Result};

/// Exponent of a spatial generator.
pub type Exp = Rational64;

pub fn exp_int(n: i64) -> Exp {
    Exp::from_integer(n)
}

pub fn exp_frac(n: i64, d: i64) -> Exp {
    Exp::new(n, d)
}

fn exp_to_q(e: &Exp) -> Q {
    super::poly::q_frac(*e.numer(), *e.denom())
}

fn fmt_exp(e: &Exp) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

/// Exponent `c0 + c1*a` of the time generator `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineExp {
    pub c0: Exp,
    pub c1: Exp,
}

impl AffineExp {
    pub fn new(c0: Exp, c1: Exp) -> Self {
        AffineExp { c0, c1 }
    }

    pub fn int(n: i64) -> Self {
        AffineExp::new(exp_int(n), Exp::zero())
    }

    /// `c0 + c1*a` with integer parts.
    pub fn affine(c0: i64, c1: i64) -> Self {
        AffineExp::new(exp_int(c0), exp_int(c1))
    }

    pub fn zero() -> Self {
        AffineExp::int(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.c1.is_zero()
    }

    pub fn add(&self, o: &AffineExp) -> AffineExp {
        AffineExp::new(self.c0 + o.c0, self.c1 + o.c1)
    }

    pub fn neg(&self) -> AffineExp {
        AffineExp::new(-self.c0, -self.c1)
    }

    pub fn sub(&self, o: &AffineExp) -> AffineExp {
        self.add(&o.neg())
    }

    /// The exponent as a coefficient polynomial `c0 + c1*a`.
    pub fn as_coefficient(&self) -> ParamRational {
        let p = Poly::constant(exp_to_q(&self.c0))
            .add(&Poly::var(Symbol::A).scale(&exp_to_q(&self.c1)));
        ParamRational::from_poly(p)
    }

    pub fn value(&self, a: f64) -> f64 {
        self.c0.to_f64().unwrap() + self.c1.to_f64().unwrap() * a
    }

    /// The exponent with `a` bound to an exact value.
    pub fn at(&self, a: &Exp) -> Exp {
        self.c0 + self.c1 * a
    }
}

impl fmt::Display for AffineExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.c1.is_negative() { "-" } else { "+" };
        write!(
            f,
            "({}{}{}*a)",
            fmt_exp(&self.c0),
            sign,
            fmt_exp(&self.c1.abs())
        )
    }
}

/// Exponent tuple of a term; the identity key for like-term merging.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponents {
    pub x: [Exp; 3],
    pub r: Exp,
    pub s: AffineExp,
}

impl Exponents {
    pub fn one() -> Self {
        Exponents {
            x: [Exp::zero(); 3],
            r: Exp::zero(),
            s: AffineExp::zero(),
        }
    }

    pub fn mul(&self, o: &Exponents) -> Exponents {
        Exponents {
            x: [self.x[0] + o.x[0], self.x[1] + o.x[1], self.x[2] + o.x[2]],
            r: self.r + o.r,
            s: self.s.add(&o.s),
        }
    }

    /// Builder-style helpers.
    pub fn with_x(mut self, i: usize, e: Exp) -> Self {
        self.x[i] = e;
        self
    }

    pub fn with_r(mut self, e: Exp) -> Self {
        self.r = e;
        self
    }

    pub fn with_s(mut self, e: AffineExp) -> Self {
        self.s = e;
        self
    }

    /// Exponent of the cylindrical radius `r = R^(1/2)`.
    pub fn radius_power(&self) -> Exp {
        self.r * exp_int(2)
    }

    pub fn is_cylindrical(&self) -> bool {
        self.x[0].is_zero() && self.x[1].is_zero()
    }
}

/// One monomial of a field.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coeff: ParamRational,
    pub exps: Exponents,
}

/// Differentiation variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X1,
    X2,
    X3,
    T,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X1, Var::X2, Var::X3, Var::T];
    pub const SPACE: [Var; 3] = [Var::X1, Var::X2, Var::X3];

    pub fn name(self) -> &'static str {
        match self {
            Var::X1 => "x1",
            Var::X2 => "x2",
            Var::X3 => "x3",
            Var::T => "t",
        }
    }
}

/// Normalized finite sum of terms.
#[derive(Clone, Debug, Default)]
pub struct SymField {
    terms: BTreeMap<Exponents, ParamRational>,
}

impl PartialEq for SymField {
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(other.terms.iter())
                .all(|((e1, c1), (e2, c2))| e1 == e2 && c1 == c2)
    }
}

impl SymField {
    pub fn zero() -> Self {
        SymField::default()
    }

    pub fn constant(c: ParamRational) -> Self {
        SymField::monomial(c, Exponents::one())
    }

    pub fn monomial(c: ParamRational, exps: Exponents) -> Self {
        let mut f = SymField::zero();
        f.push(exps, c);
        f
    }

    pub fn from_terms<I: IntoIterator<Item = Term>>(terms: I) -> Self {
        let mut f = SymField::zero();
        for t in terms {
            f.push(t.exps, t.coeff);
        }
        f
    }

    /// Cartesian coordinate `x_i` (`i` in 0..3).
    pub fn coord(i: usize) -> Self {
        SymField::monomial(ParamRational::one(), Exponents::one().with_x(i, exp_int(1)))
    }

    /// `R^e`.
    pub fn big_r_pow(e: Exp) -> Self {
        SymField::monomial(ParamRational::one(), Exponents::one().with_r(e))
    }

    /// Cylindrical radius `r^n = R^(n/2)`.
    pub fn radius_pow(n: i64) -> Self {
        SymField::big_r_pow(exp_frac(n, 2))
    }

    /// Cylindrical axial coordinate `z = x3`.
    pub fn axial() -> Self {
        SymField::coord(2)
    }

    pub fn s_pow(e: AffineExp) -> Self {
        SymField::monomial(ParamRational::one(), Exponents::one().with_s(e))
    }

    /// Inserts a term in normal form. Integer powers `x1^p` with `p >= 2` are
    /// rewritten through `x1^2 = R - x2^2`, so every stored term has an `x1`
    /// exponent below 2 (or a non-integer/negative one). In polar form the
    /// remaining monomials `x1^e x2^n R^q` are `rho^(e+n+2q) cos^e sin^n`,
    /// which are linearly independent, so an empty map is the only zero.
    fn push(&mut self, exps: Exponents, c: ParamRational) {
        if c.is_zero() {
            return;
        }
        let p1 = exps.x[0];
        if p1.is_integer() && p1 >= exp_int(2) {
            let mut via_r = exps;
            via_r.x[0] -= exp_int(2);
            let mut via_x2 = via_r;
            via_r.r += exp_int(1);
            via_x2.x[1] += exp_int(2);
            self.push(via_r, c.clone());
            self.push(via_x2, c.neg());
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.terms.iter().map(|(e, c)| Term {
            coeff: c.clone(),
            exps: *e,
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Exponents, &ParamRational)> {
        self.terms.iter()
    }

    /// Coefficient of one exponent signature (zero if absent).
    pub fn coefficient(&self, exps: &Exponents) -> ParamRational {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(ParamRational::zero)
    }

    /// Rebuilds the normalized form; a no-op on already normalized fields.
    pub fn normalize(&self) -> Self {
        SymField::from_terms(self.terms())
    }

    pub fn is_cylindrical(&self) -> bool {
        self.terms.keys().all(Exponents::is_cylindrical)
    }

    pub fn add(&self, g: &SymField) -> SymField {
        let mut out = self.clone();
        for (e, c) in &g.terms {
            out.push(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, g: &SymField) -> SymField {
        let mut out = self.clone();
        for (e, c) in &g.terms {
            out.push(*e, c.neg());
        }
        out
    }

    pub fn neg(&self) -> SymField {
        SymField {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn mul(&self, g: &SymField) -> SymField {
        let mut out = SymField::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &g.terms {
                out.push(e1.mul(e2), c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &ParamRational) -> SymField {
        let mut out = SymField::zero();
        for (e, x) in &self.terms {
            out.push(*e, x.mul(c));
        }
        out
    }

    pub fn scale_int(&self, n: i64) -> SymField {
        self.scale(&ParamRational::int(n))
    }

    pub fn pow(&self, n: u32) -> SymField {
        (0..n).fold(SymField::constant(ParamRational::one()), |acc, _| {
            acc.mul(self)
        })
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a SymField>>(fields: I) -> SymField {
        fields
            .into_iter()
            .fold(SymField::zero(), |acc, f| acc.add(f))
    }

    /// Exact partial derivative.
    pub fn diff(&self, var: Var) -> SymField {
        let mut out = SymField::zero();
        for (e, c) in &self.terms {
            match var {
                Var::X1 | Var::X2 => {
                    let i = if var == Var::X1 { 0 } else { 1 };
                    if !e.x[i].is_zero() {
                        let mut ne = *e;
                        ne.x[i] -= exp_int(1);
                        out.push(ne, c.scale(&exp_to_q(&e.x[i])));
                    }
                    if !e.r.is_zero() {
                        // d/dx_i R^q = 2q x_i R^(q-1)
                        let mut ne = *e;
                        ne.x[i] += exp_int(1);
                        ne.r -= exp_int(1);
                        out.push(ne, c.scale(&exp_to_q(&(e.r * exp_int(2)))));
                    }
                }
                Var::X3 => {
                    if !e.x[2].is_zero() {
                        let mut ne = *e;
                        ne.x[2] -= exp_int(1);
                        out.push(ne, c.scale(&exp_to_q(&e.x[2])));
                    }
                }
                Var::T => {
                    if !e.s.is_zero() {
                        // d/dt s^e = -e s^(e-1)
                        let mut ne = *e;
                        ne.s = e.s.sub(&AffineExp::int(1));
                        out.push(ne, c.mul(&e.s.as_coefficient()).neg());
                    }
                }
            }
        }
        out
    }

    /// Cartesian Laplacian.
    pub fn laplacian(&self) -> SymField {
        Var::SPACE
            .iter()
            .fold(SymField::zero(), |acc, v| acc.add(&self.diff(*v).diff(*v)))
    }

    /// Radial derivative of a cylindrical field: `d/dr R^q = 2q R^(q-1/2)`.
    pub fn diff_r(&self) -> Result<SymField> {
        let mut out = SymField::zero();
        for (e, c) in &self.terms {
            if !e.is_cylindrical() {
                return Err(Error::Frame(
                    "radial derivative of a field with x1/x2 factors".into(),
                ));
            }
            if !e.r.is_zero() {
                let mut ne = *e;
                ne.r -= exp_frac(1, 2);
                out.push(ne, c.scale(&exp_to_q(&(e.r * exp_int(2)))));
            }
        }
        Ok(out)
    }

    pub fn diff_z(&self) -> SymField {
        self.diff(Var::X3)
    }

    /// Axisymmetric scalar Laplacian `d_rr + (1/r) d_r + d_zz`.
    pub fn cyl_laplacian(&self) -> Result<SymField> {
        let dr = self.diff_r()?;
        let drr = dr.diff_r()?;
        let dzz = self.diff_z().diff_z();
        Ok(drr.add(&SymField::radius_pow(-1).mul(&dr)).add(&dzz))
    }

    /// Applies a map to every coefficient, re-normalizing.
    pub fn map_coefficients<F>(&self, mut f: F) -> Result<SymField>
    where
        F: FnMut(&ParamRational) -> Result<ParamRational>,
    {
        let mut out = SymField::zero();
        for (e, c) in &self.terms {
            out.push(*e, f(c)?);
        }
        Ok(out)
    }

    /// Substitutes a coefficient expression for a symbol in every coefficient.
    pub fn substitute_symbol(&self, sym: Symbol, value: &ParamRational) -> Result<SymField> {
        self.map_coefficients(|c| {
            c.substitute_expr(sym, value).ok_or_else(|| {
                Error::Domain(format!("substituting {sym} makes a denominator vanish"))
            })
        })
    }

    /// Substitutes `s = tstar` in the integer part of every time exponent.
    /// The remaining `s^(c1*a)` factor stays symbolic and denotes
    /// `tstar^(c1*a)`, so the result is time independent.
    pub fn freeze_time(&self, tstar: &ParamRational) -> Result<SymField> {
        let mut out = SymField::zero();
        for (e, c) in &self.terms {
            let whole = e.s.c0.floor();
            let n = whole.to_integer();
            let mut ne = *e;
            ne.s.c0 -= whole;
            let factor = if n >= 0 {
                tstar.pow(n as u32)
            } else {
                tstar
                    .pow((-n) as u32)
                    .recip()
                    .ok_or_else(|| Error::Domain("T* must be nonzero".into()))?
            };
            out.push(ne, c.mul(&factor));
        }
        Ok(out)
    }

    /// Separates the field by the power of one coefficient symbol:
    /// `self = sum_j sym^j * parts[j]`. Only polynomial dependence through
    /// the numerator is supported.
    pub fn split_by_symbol(&self, sym: Symbol) -> Result<Vec<SymField>> {
        let mut parts: Vec<SymField> = Vec::new();
        for (e, c) in &self.terms {
            if c.denominator_factors().any(|(f, _)| f.mentions(sym)) {
                return Err(Error::UnsupportedField(format!(
                    "{sym} appears in a denominator"
                )));
            }
            let den_inv = ParamRational::from_poly(c.denominator())
                .recip()
                .expect("nonzero denominator");
            for (j, p) in c.numerator().coefficients_in(sym).into_iter().enumerate() {
                if parts.len() <= j {
                    parts.resize(j + 1, SymField::zero());
                }
                parts[j].push(*e, ParamRational::from_poly(p).mul(&den_inv));
            }
        }
        Ok(parts)
    }

    pub fn mentions(&self, sym: Symbol) -> bool {
        self.terms.values().any(|c| c.mentions(sym))
    }

    /// Floating-point value at a space-time point; `s = T* - t`.
    pub fn eval(&self, point: &Point, params: &ParamValues) -> Result<f64> {
        self.eval_s(&point.x, params.tstar - point.t, params)
    }

    /// Floating-point value at spatial point `x` with the time generator
    /// already evaluated to `s`.
    pub fn eval_s(&self, x: &[f64; 3], s: f64, params: &ParamValues) -> Result<f64> {
        self.bind(params)?.eval(x, s)
    }

    /// Binds the parameters once for fast repeated evaluation.
    pub fn bind(&self, params: &ParamValues) -> Result<BoundField> {
        let vals = params.as_array();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            if c.mentions(Symbol::Alpha) {
                return Err(Error::Domain(
                    "field contains the unbound solver symbol alpha".into(),
                ));
            }
            terms.push(BoundTerm {
                c: c.eval(&vals)?,
                x: [Pow::of(e.x[0]), Pow::of(e.x[1]), Pow::of(e.x[2])],
                r: Pow::of(e.r),
                s: e.s.value(params.a),
            });
        }
        Ok(BoundField { terms })
    }
}

impl fmt::Display for SymField {
    /// Canonical text form used for export and golden tests.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(
                f,
                "{} * x1^{} * x2^{} * x3^{} * R^{} * s^{}",
                c,
                fmt_exp(&e.x[0]),
                fmt_exp(&e.x[1]),
                fmt_exp(&e.x[2]),
                fmt_exp(&e.r),
                e.s
            )?;
        }
        Ok(())
    }
}

/// Real parameter values.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ParamValues {
    pub a: f64,
    pub abar: f64,
    pub k: f64,
    pub tstar: f64,
    pub nu: f64,
}

impl ParamValues {
    pub fn new(a: f64, abar: f64, k: f64, tstar: f64, nu: f64) -> Self {
        ParamValues {
            a,
            abar,
            k,
            tstar,
            nu,
        }
    }

    pub fn as_array(&self) -> [f64; NSYMBOLS] {
        let mut v = [f64::NAN; NSYMBOLS];
        v[Symbol::A.index()] = self.a;
        v[Symbol::Abar.index()] = self.abar;
        v[Symbol::K.index()] = self.k;
        v[Symbol::Tstar.index()] = self.tstar;
        v[Symbol::Nu.index()] = self.nu;
        v
    }

    pub fn get(&self, sym: Symbol) -> Option<f64> {
        match sym {
            Symbol::A => Some(self.a),
            Symbol::Abar => Some(self.abar),
            Symbol::K => Some(self.k),
            Symbol::Tstar => Some(self.tstar),
            Symbol::Nu => Some(self.nu),
            Symbol::Alpha => None,
        }
    }
}

/// Space-time point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub x: [f64; 3],
    pub t: f64,
}

impl Point {
    pub fn new(x1: f64, x2: f64, x3: f64, t: f64) -> Self {
        Point { x: [x1, x2, x3], t }
    }
}

#[derive(Clone, Copy, Debug)]
enum Pow {
    Zero,
    Int(i32),
    Real(f64),
}

impl Pow {
    fn of(e: Exp) -> Pow {
        if e.is_zero() {
            Pow::Zero
        } else if e.is_integer() {
            Pow::Int(e.to_integer() as i32)
        } else {
            Pow::Real(e.to_f64().unwrap())
        }
    }

    fn apply(self, base: f64, what: &str) -> Result<f64> {
        match self {
            Pow::Zero => Ok(1.0),
            Pow::Int(n) if n > 0 => Ok(base.powi(n)),
            Pow::Int(n) => {
                if base == 0.0 {
                    Err(Error::Domain(format!("{what} = 0 with negative exponent")))
                } else {
                    Ok(base.powi(n))
                }
            }
            Pow::Real(e) => {
                if base > 0.0 {
                    Ok((e * base.ln()).exp())
                } else {
                    Err(Error::Domain(format!(
                        "{what} must be positive for a fractional exponent"
                    )))
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
struct BoundTerm {
    c: f64,
    x: [Pow; 3],
    r: Pow,
    s: f64,
}

/// A field with every coefficient evaluated to `f64`.
#[derive(Clone, Debug)]
pub struct BoundField {
    terms: Vec<BoundTerm>,
}

impl BoundField {
    pub fn eval(&self, x: &[f64; 3], s: f64) -> Result<f64> {
        if !(s > 0.0) {
            return Err(Error::Domain(format!("t must be below T* (s = {s})")));
        }
        let big_r = x[0] * x[0] + x[1] * x[1];
        let mut acc = 0.0;
        for t in &self.terms {
            let mut v = t.c;
            for i in 0..3 {
                v *= t.x[i].apply(x[i], ["x1", "x2", "x3"][i])?;
            }
            v *= t.r.apply(big_r, "x1^2 + x2^2")?;
            if t.s != 0.0 {
                v *= if t.s.fract() == 0.0 && t.s.abs() < 64.0 {
                    s.powi(t.s as i32)
                } else {
                    (t.s * s.ln()).exp()
                };
            }
            acc += v;
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}
