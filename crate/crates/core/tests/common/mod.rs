//! Seeded generator of small random fields in the supported term class.

#![allow(dead_code)]

use mhd_blowup::algebra::{
    exp_frac, exp_int, AffineExp, Exponents, ParamRational, SymField, Symbol,
};
use mhd_blowup::mhd::VecField3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn coefficient(rng: &mut ChaCha8Rng) -> ParamRational {
    let mut n = rng.gen_range(-3i64..=3);
    if n == 0 {
        n = 1;
    }
    let c = ParamRational::int(n);
    match rng.gen_range(0..5) {
        0 => c.mul(&ParamRational::symbol(Symbol::A)),
        1 => c.mul(&ParamRational::symbol(Symbol::Abar)),
        2 => c.mul(&ParamRational::symbol(Symbol::K)),
        3 => c.mul(&ParamRational::symbol(Symbol::Nu)),
        _ => c,
    }
}

/// One to three terms `c x1^i x2^j x3^l R^(m/2) s^(c0 + c1 a)`.
pub fn random_field(rng: &mut ChaCha8Rng) -> SymField {
    let mut f = SymField::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let e = Exponents::one()
            .with_x(0, exp_int(rng.gen_range(0..=2)))
            .with_x(1, exp_int(rng.gen_range(0..=2)))
            .with_x(2, exp_int(rng.gen_range(0..=2)))
            .with_r(exp_frac(rng.gen_range(-2..=2), 2))
            .with_s(AffineExp::affine(
                rng.gen_range(-2..=2),
                rng.gen_range(-1..=1),
            ));
        f = f.add(&SymField::monomial(coefficient(rng), e));
    }
    f
}

pub fn random_vec(rng: &mut ChaCha8Rng) -> VecField3 {
    VecField3::cartesian(random_field(rng), random_field(rng), random_field(rng))
}
