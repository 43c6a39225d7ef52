//! Exact coefficients: ratios of parameter polynomials.
//!
//! The denominator is kept as a product of canonical (primitive, positive
//! leading coefficient) polynomial factors. Sums use the factor-wise least
//! common multiple, and numerators are trial-divided by the denominator's
//! factors after every operation. No multivariate gcd is ever computed, so
//! a fraction may stay unreduced; equality is decided by cross
//! multiplication.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::poly::{q_int, Monomial, Poly, Symbol, NSYMBOLS, Q};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct ParamRational {
    num: Poly,
    den: BTreeMap<Poly, u32>,
}

impl ParamRational {
    pub fn zero() -> Self {
        ParamRational {
            num: Poly::zero(),
            den: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_poly(num: Poly) -> Self {
        ParamRational {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn from_q(q: Q) -> Self {
        Self::from_poly(Poly::constant(q))
    }

    pub fn int(n: i64) -> Self {
        Self::from_q(q_int(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_q(super::poly::q_frac(n, d))
    }

    pub fn symbol(sym: Symbol) -> Self {
        Self::from_poly(Poly::var(sym))
    }

    pub fn a() -> Self {
        Self::symbol(Symbol::A)
    }

    pub fn abar() -> Self {
        Self::symbol(Symbol::Abar)
    }

    pub fn k() -> Self {
        Self::symbol(Symbol::K)
    }

    pub fn tstar() -> Self {
        Self::symbol(Symbol::Tstar)
    }

    pub fn nu() -> Self {
        Self::symbol(Symbol::Nu)
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    /// Canonical denominator factors with multiplicities.
    pub fn denominator_factors(&self) -> impl Iterator<Item = (&Poly, u32)> {
        self.den.iter().map(|(p, e)| (p, *e))
    }

    pub fn denominator(&self) -> Poly {
        self.den
            .iter()
            .fold(Poly::one(), |acc, (f, e)| acc.mul(&f.pow(*e)))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num == Poly::one()
    }

    /// The exact rational value when no symbol occurs.
    pub fn as_constant(&self) -> Option<Q> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn mentions(&self, sym: Symbol) -> bool {
        self.num.mentions(sym) || self.den.keys().any(|f| f.mentions(sym))
    }

    pub fn neg(&self) -> Self {
        ParamRational {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return ParamRational {
                num: self.num.add(&other.num),
                den: self.den.clone(),
            }
            .reduced();
        }
        let mut lcm = self.den.clone();
        for (f, e) in &other.den {
            let slot = lcm.entry(f.clone()).or_insert(0);
            *slot = (*slot).max(*e);
        }
        let lift = |x: &Self| {
            let mut n = x.num.clone();
            for (f, e) in &lcm {
                let have = x.den.get(f).copied().unwrap_or(0);
                if *e > have {
                    n = n.mul(&f.pow(e - have));
                }
            }
            n
        };
        ParamRational {
            num: lift(self).add(&lift(other)),
            den: lcm.clone(),
        }
        .reduced()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut den = self.den.clone();
        for (f, e) in &other.den {
            *den.entry(f.clone()).or_insert(0) += e;
        }
        ParamRational {
            num: self.num.mul(&other.num),
            den,
        }
        .reduced()
    }

    pub fn scale(&self, q: &Q) -> Self {
        ParamRational {
            num: self.num.scale(q),
            den: if q.is_zero() {
                BTreeMap::new()
            } else {
                self.den.clone()
            },
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut num = self.denominator();
        let mut den = BTreeMap::new();
        let mono = self.num.monomial_content();
        for sym in Symbol::ALL {
            let e = mono.0[sym.index()];
            if e > 0 {
                den.insert(Poly::var(sym), e);
            }
        }
        let rest = self
            .num
            .div_exact(&Poly::monomial(mono, Q::one()))
            .expect("monomial content divides");
        let (c, prim) = rest.primitive();
        num = num.scale(&c.recip());
        if prim != Poly::one() {
            *den.entry(prim).or_insert(0) += 1;
        }
        Some(ParamRational { num, den }.reduced())
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.recip().map(|inv| self.mul(&inv))
    }

    /// Moves constants out of the denominator and cancels factors that
    /// divide the numerator exactly.
    fn reduced(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let factors: Vec<(Poly, u32)> = std::mem::take(&mut self.den).into_iter().collect();
        for (f, mut e) in factors {
            while e > 0 {
                match self.num.div_exact(&f) {
                    Some(q) => {
                        self.num = q;
                        e -= 1;
                    }
                    None => break,
                }
            }
            if e > 0 {
                self.den.insert(f, e);
            }
        }
        self
    }

    /// Exact substitution of a rational value for one symbol. Fails when a
    /// denominator factor vanishes at that value.
    pub fn substitute(&self, sym: Symbol, value: &Q) -> Result<Self> {
        let mut out = Self::from_poly(self.num.substitute(sym, value));
        for (f, e) in &self.den {
            let g = f.substitute(sym, value);
            if g.is_zero() {
                return Err(Error::Domain(format!(
                    "denominator factor {f} vanishes at {sym} = {}",
                    super::poly::fmt_q(value)
                )));
            }
            let g = ParamRational::from_poly(g).pow(*e);
            out = out.div(&g).expect("nonzero factor");
        }
        Ok(out)
    }

    /// Substitutes an arbitrary coefficient expression for one symbol.
    pub fn substitute_expr(&self, sym: Symbol, value: &Self) -> Option<Self> {
        let sub = |p: &Poly| -> Self {
            let mut out = Self::zero();
            for (m, c) in p.terms() {
                let e = m.0[sym.index()];
                let mut rest = *m;
                rest.0[sym.index()] = 0;
                let piece = Self::from_poly(Poly::monomial(rest, c.clone())).mul(&value.pow(e));
                out = out.add(&piece);
            }
            out
        };
        let mut out = sub(&self.num);
        for (f, e) in &self.den {
            out = out.div(&sub(f).pow(*e))?;
        }
        Some(out)
    }

    /// Floating-point value at a binding of the symbols. Fails on a vanishing
    /// denominator.
    pub fn eval(&self, vals: &[f64; NSYMBOLS]) -> Result<f64> {
        let mut d = 1.0;
        for (f, e) in &self.den {
            let v = f.eval(vals);
            if v == 0.0 || !v.is_finite() {
                return Err(Error::Domain(format!(
                    "coefficient denominator {f} vanishes at the given parameters"
                )));
            }
            d *= v.powi(*e as i32);
        }
        Ok(self.num.eval(vals) / d)
    }

    /// Monomial used only by tests and the term printer.
    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.num.leading().map(|(m, _)| *m)
    }
}

impl PartialEq for ParamRational {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul(&other.denominator()) == other.num.mul(&self.denominator())
    }
}

impl From<Poly> for ParamRational {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for ParamRational {
    /// `(num)` or `(num)/(f1^e1*f2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.num)?;
        if self.den.is_empty() {
            return Ok(());
        }
        let parts: Vec<String> = self
            .den
            .iter()
            .map(|(p, e)| {
                let body = if p.len() > 1 {
                    format!("({p})")
                } else {
                    p.to_string()
                };
                if *e == 1 {
                    body
                } else {
                    format!("{body}^{e}")
                }
            })
            .collect();
        write!(f, "/({})", parts.join("*"))
    }
}

impl std::ops::Add for &ParamRational {
    type Output = ParamRational;
    fn add(self, rhs: Self) -> ParamRational {
        ParamRational::add(self, rhs)
    }
}

impl std::ops::Sub for &ParamRational {
    type Output = ParamRational;
    fn sub(self, rhs: Self) -> ParamRational {
        ParamRational::sub(self, rhs)
    }
}

impl std::ops::Mul for &ParamRational {
    type Output = ParamRational;
    fn mul(self, rhs: Self) -> ParamRational {
        ParamRational::mul(self, rhs)
    }
}

impl std::ops::Neg for &ParamRational {
    type Output = ParamRational;
    fn neg(self) -> ParamRational {
        ParamRational::neg(self)
    }
}
