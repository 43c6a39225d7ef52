//! Sparse multivariate polynomials with exact rational coefficients over the
//! fixed parameter alphabet of the workbench.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar used for every coefficient.
pub type Q = BigRational;

/// Number of formal symbols a polynomial may mention.
pub const NSYMBOLS: usize = 6;

/// Formal parameters. `Alpha` is reserved for the ansatz solver's unknown
/// time exponent and never carries a numeric binding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    A,
    Abar,
    K,
    Tstar,
    Nu,
    Alpha,
}

impl Symbol {
    pub const ALL: [Symbol; NSYMBOLS] = [
        Symbol::A,
        Symbol::Abar,
        Symbol::K,
        Symbol::Tstar,
        Symbol::Nu,
        Symbol::Alpha,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::A => "a",
            Symbol::Abar => "abar",
            Symbol::K => "k",
            Symbol::Tstar => "Tstar",
            Symbol::Nu => "nu",
            Symbol::Alpha => "alpha",
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector indexed by [`Symbol::index`]. The derived ordering is
/// lexicographic, which is a monomial order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub [u32; NSYMBOLS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NSYMBOLS])
    }

    pub fn var(sym: Symbol) -> Self {
        let mut e = [0; NSYMBOLS];
        e[sym.index()] = 1;
        Monomial(e)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut e = other.0;
        for (a, b) in e.iter_mut().zip(self.0.iter()) {
            *a -= b;
        }
        Monomial(e)
    }

    pub fn min(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = (*a).min(*b);
        }
        Monomial(e)
    }
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<Monomial, Q>,
}

pub(crate) fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub(crate) fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(sym: Symbol) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::var(sym), Q::one());
        p
    }

    pub fn monomial(m: Monomial, c: Q) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    /// The value if the polynomial has no symbol dependence.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn mentions(&self, sym: Symbol) -> bool {
        self.terms.keys().any(|m| m.0[sym.index()] > 0)
    }

    fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Exact quotient `self / divisor` if the division leaves no remainder.
    ///
    /// Single-divisor division in a monomial order: a nonzero multiple of
    /// `divisor` always has a leading monomial divisible by the divisor's
    /// leading monomial, so the first failure proves non-divisibility.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.leading()?;
        let (lm, lc) = (*lm, lc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient_of(m);
            let qc = c / &lc;
            let step = Poly::monomial(qm, qc.clone());
            rem = rem.sub(&divisor.mul(&step));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Gcd of all monomials (the largest monomial dividing every term).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(*first, |acc, m| Monomial::min(&acc, m)),
        }
    }

    /// Splits `self = c * p` where `p` has coprime integer coefficients and a
    /// positive leading coefficient.
    pub fn primitive(&self) -> (Q, Poly) {
        if self.is_zero() {
            return (Q::zero(), Poly::zero());
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let scaled = (c * Q::from_integer(den_lcm.clone())).to_integer();
            num_gcd = num_gcd.gcd(&scaled);
        }
        let mut content = Q::new(num_gcd, den_lcm);
        if self.leading().unwrap().1.is_negative() {
            content = -content;
        }
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    /// Substitutes an exact value for one symbol.
    pub fn substitute(&self, sym: Symbol, value: &Q) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.0[sym.index()];
            let mut rest = *m;
            rest.0[sym.index()] = 0;
            let factor = num_traits::pow(value.clone(), e as usize);
            out.add_term(rest, c * factor);
        }
        out
    }

    /// Substitutes a polynomial for one symbol.
    pub fn substitute_poly(&self, sym: Symbol, value: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.0[sym.index()];
            let mut rest = *m;
            rest.0[sym.index()] = 0;
            let piece = Poly::monomial(rest, c.clone()).mul(&value.pow(e));
            out = out.add(&piece);
        }
        out
    }

    /// Coefficients of `sym^0, sym^1, ...`.
    pub fn coefficients_in(&self, sym: Symbol) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for (m, c) in &self.terms {
            let e = m.0[sym.index()] as usize;
            if out.len() <= e {
                out.resize(e + 1, Poly::zero());
            }
            let mut rest = *m;
            rest.0[sym.index()] = 0;
            out[e].add_term(rest, c.clone());
        }
        out
    }

    /// Floating-point value; `vals` is indexed by [`Symbol::index`].
    pub fn eval(&self, vals: &[f64; NSYMBOLS]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = c.to_f64().unwrap_or(f64::NAN);
                for (i, &e) in m.0.iter().enumerate() {
                    if e > 0 {
                        v *= vals[i].powi(e as i32);
                    }
                }
                v
            })
            .sum()
    }
}

pub(crate) fn fmt_q(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn fmt_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for sym in Symbol::ALL {
        match m.0[sym.index()] {
            0 => {}
            1 => parts.push(sym.name().to_string()),
            e => parts.push(format!("{}^{}", sym.name(), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    /// Terms in descending lexicographic order, e.g. `2*a*abar*k - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                f.write_str(&fmt_q(&mag))?;
            } else if mag.is_one() {
                f.write_str(&fmt_monomial(m))?;
            } else {
                write!(f, "{}*{}", fmt_q(&mag), fmt_monomial(m))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Poly {
        Poly::var(Symbol::A)
    }

    #[test]
    fn exact_division_recovers_factor() {
        let f = a().scale(&q_int(2)).add(&Poly::one()); // 2a + 1
        let g = Poly::var(Symbol::K).sub(&a()); // k - a
        let prod = f.mul(&g);
        assert_eq!(prod.div_exact(&f), Some(g.clone()));
        assert_eq!(prod.div_exact(&g), Some(f.clone()));
        assert_eq!(f.div_exact(&g), None);
    }

    #[test]
    fn primitive_part_is_integral_and_positive() {
        let p = a()
            .scale(&q_frac(-4, 3))
            .add(&Poly::constant(q_frac(-2, 3)));
        let (c, prim) = p.primitive();
        assert_eq!(c, q_frac(-2, 3));
        assert_eq!(prim.to_string(), "2*a + 1");
    }

    #[test]
    fn substitution_and_display() {
        let p = a()
            .mul(&a())
            .add(&Poly::var(Symbol::Abar).scale(&q_int(-3)));
        assert_eq!(p.to_string(), "a^2 - 3*abar");
        let s = p.substitute(Symbol::A, &q_frac(1, 2));
        assert_eq!(s.to_string(), "-3*abar + 1/4");
    }

    #[test]
    fn coefficients_split_by_power() {
        let p = a()
            .mul(&Poly::var(Symbol::Alpha))
            .add(&Poly::var(Symbol::K));
        let cs = p.coefficients_in(Symbol::Alpha);
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0], Poly::var(Symbol::K));
        assert_eq!(cs[1], a());
    }
}
