use rayon::prelude::*;
use serde::Serialize;

use super::domain::{pairwise_sum, SampleDomain};
use crate::algebra::{BoundField, ParamValues, Var};
use crate::error::{Error, Result};
use crate::mhd::{bundle_to_cartesian, Frame, SolutionBundle, VecField3};

/// Sup norms approaching the singular time and their power-law fits in `s`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlowupSeries {
    pub times: Vec<f64>,
    /// `s = T* - t` for each time.
    pub s: Vec<f64>,
    pub sup_v: Vec<f64>,
    pub sup_gradv: Vec<f64>,
    pub sup_h: Vec<f64>,
    pub fitted_exponents: Exponents,
    pub fit_residuals: Exponents,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Exponents {
    pub v: f64,
    pub gradv: f64,
    pub h: f64,
}

/// Minimum number of times in a fit.
pub const MIN_FIT_POINTS: usize = 5;

/// `n` times with `s` geometric from `s_hi * T*` down to `s_lo * T*`,
/// ascending in `t`.
pub fn geometric_times(tstar: f64, s_hi: f64, s_lo: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            let w = if n == 1 {
                0.0
            } else {
                i as f64 / (n - 1) as f64
            };
            let s = s_hi * (s_lo / s_hi).powf(w);
            tstar * (1.0 - s)
        })
        .collect()
}

/// Default diagnostic schedule: 9 times with `s / T*` from `1e-2` to `1e-4`.
pub fn default_times(tstar: f64) -> Vec<f64> {
    geometric_times(tstar, 1e-2, 1e-4, 9)
}

/// Ordinary least squares `y = c + m x`; returns `(m, rms residual)`.
pub fn fit_line(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = pairwise_sum(x) / n;
    let my = pairwise_sum(y) / n;
    let sxx: Vec<f64> = x.iter().map(|v| (v - mx) * (v - mx)).collect();
    let sxy: Vec<f64> = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).collect();
    let sxx = pairwise_sum(&sxx);
    let m = if sxx > 0.0 {
        pairwise_sum(&sxy) / sxx
    } else {
        0.0
    };
    let c = my - m * mx;
    let sq: Vec<f64> = x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - c - m * a).powi(2))
        .collect();
    (m, (pairwise_sum(&sq) / n).sqrt())
}

/// Power-law exponent of `sup` against `s`; an identically zero series has
/// exponent 0.
fn power_fit(s: &[f64], sup: &[f64]) -> Result<(f64, f64)> {
    if sup.iter().all(|v| *v == 0.0) {
        return Ok((0.0, 0.0));
    }
    if sup.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
        return Err(Error::Domain(
            "sup norm vanished or overflowed in a fit".into(),
        ));
    }
    let lx: Vec<f64> = s.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = sup.iter().map(|v| v.ln()).collect();
    Ok(fit_line(&lx, &ly))
}

struct BoundBundle {
    v: [BoundField; 3],
    h: [BoundField; 3],
    gradv: Vec<BoundField>,
}

fn bind3(f: &VecField3, params: &ParamValues) -> Result<[BoundField; 3]> {
    Ok([
        f.c[0].bind(params)?,
        f.c[1].bind(params)?,
        f.c[2].bind(params)?,
    ])
}

fn cartesian(b: &SolutionBundle) -> Result<SolutionBundle> {
    match b.frame() {
        Frame::Cartesian => Ok(b.clone()),
        Frame::CylAxisym => bundle_to_cartesian(b),
    }
}

fn bind_bundle(b: &SolutionBundle, params: &ParamValues) -> Result<BoundBundle> {
    let b = cartesian(b)?;
    let mut gradv = Vec::with_capacity(9);
    for c in &b.v.c {
        for var in Var::SPACE {
            gradv.push(c.diff(var).bind(params)?);
        }
    }
    Ok(BoundBundle {
        v: bind3(&b.v, params)?,
        h: bind3(&b.h, params)?,
        gradv,
    })
}

fn norm3(f: &[BoundField; 3], x: &[f64; 3], s: f64) -> Result<f64> {
    let mut acc = 0.0;
    for c in f {
        acc += c.eval(x, s)?.powi(2);
    }
    Ok(acc.sqrt())
}

/// Sup over the domain's spatial points of `|v|`, `max_ij |d_j v_i|` and
/// `|H|` at each time, with power-law fits in `s = T* - t`.
pub fn blowup_series(
    b: &SolutionBundle,
    d: &SampleDomain,
    params: &ParamValues,
    times: &[f64],
) -> Result<BlowupSeries> {
    if times.len() < MIN_FIT_POINTS {
        return Err(Error::Domain(format!(
            "a power-law fit needs at least {MIN_FIT_POINTS} times"
        )));
    }
    if times.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Domain("times must be strictly ascending".into()));
    }
    b.check_values(params)?;
    let tstar = b.tstar_value(params)?;
    if times.iter().any(|t| !(*t < tstar)) {
        return Err(Error::Domain("every time must lie below T*".into()));
    }
    let bound = bind_bundle(b, params)?;
    let pts = d.points()?;
    let mut series = BlowupSeries {
        times: times.to_vec(),
        s: times.iter().map(|t| tstar - t).collect(),
        sup_v: Vec::new(),
        sup_gradv: Vec::new(),
        sup_h: Vec::new(),
        fitted_exponents: Exponents {
            v: 0.0,
            gradv: 0.0,
            h: 0.0,
        },
        fit_residuals: Exponents {
            v: 0.0,
            gradv: 0.0,
            h: 0.0,
        },
    };
    for &s in &series.s {
        let per_point: Vec<Result<[f64; 3]>> = pts
            .par_iter()
            .map(|x| {
                let mut g: f64 = 0.0;
                for f in &bound.gradv {
                    g = g.max(f.eval(x, s)?.abs());
                }
                Ok([norm3(&bound.v, x, s)?, g, norm3(&bound.h, x, s)?])
            })
            .collect();
        let mut sup = [0.0f64; 3];
        for r in per_point {
            let r = r?;
            for i in 0..3 {
                sup[i] = sup[i].max(r[i]);
            }
        }
        series.sup_v.push(sup[0]);
        series.sup_gradv.push(sup[1]);
        series.sup_h.push(sup[2]);
    }
    let (v, rv) = power_fit(&series.s, &series.sup_v)?;
    let (g, rg) = power_fit(&series.s, &series.sup_gradv)?;
    let (h, rh) = power_fit(&series.s, &series.sup_h)?;
    series.fitted_exponents = Exponents { v, gradv: g, h };
    series.fit_residuals = Exponents {
        v: rv,
        gradv: rg,
        h: rh,
    };
    Ok(series)
}

/// Plot-ready `(ln s, ln sup)` rows for `|v|`, `|grad v|` and `|H|`.
pub fn log_log_rows(series: &BlowupSeries) -> Vec<[f64; 4]> {
    (0..series.s.len())
        .map(|i| {
            [
                series.s[i].ln(),
                series.sup_v[i].ln(),
                series.sup_gradv[i].ln(),
                series.sup_h[i].ln(),
            ]
        })
        .collect()
}

/// Monte-Carlo estimate of `int_ball (|v|^2 + |H|^2) / 2` over the ball of
/// the given radius at time `t`. The integrand is taken as zero inside the
/// cylinder `x1^2 + x2^2 < r_min^2` (fields singular on the axis have a
/// divergent integral there).
pub fn energy_on_ball(
    b: &SolutionBundle,
    radius: f64,
    t: f64,
    params: &ParamValues,
    n: usize,
    seed: u64,
    r_min: f64,
) -> Result<f64> {
    let tstar = b.tstar_value(params)?;
    let s = tstar - t;
    if !(s > 0.0) {
        return Err(Error::Domain("t must be below T*".into()));
    }
    let bound = bind_bundle(b, params)?;
    let d = SampleDomain::default()
        .with_ball(radius)
        .with_r_min(0.0)
        .with_n(n)
        .with_seed(seed);
    let pts = d.points()?;
    let vals: Vec<Result<f64>> = pts
        .par_iter()
        .map(|x| {
            if x[0] * x[0] + x[1] * x[1] < r_min * r_min {
                return Ok(0.0);
            }
            Ok(0.5 * (norm3(&bound.v, x, s)?.powi(2) + norm3(&bound.h, x, s)?.powi(2)))
        })
        .collect();
    let vals: Vec<f64> = vals.into_iter().collect::<Result<_>>()?;
    let volume = 4.0 / 3.0 * std::f64::consts::PI * radius.powi(3);
    Ok(volume * pairwise_sum(&vals) / vals.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ParamRational, SymField};
    use crate::catalog::{family_one, family_two, Family, FamilyParams};
    use crate::mhd::FamilyTag;

    #[test]
    fn line_fit_recovers_slope() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let y = [1.0, 3.0, 5.0, 7.0];
        let (m, r) = fit_line(&x, &y);
        assert!((m - 2.0).abs() < 1e-12 && r < 1e-12);
    }

    #[test]
    fn family_one_rates() {
        let b = family_one(&FamilyParams::unit(Family::One)).unwrap();
        let p = b.values(0.0).unwrap();
        let d = SampleDomain::default()
            .with_ball(1.0)
            .with_n(2000)
            .with_seed(1);
        let s = blowup_series(&b, &d, &p, &default_times(1.0)).unwrap();
        assert!(
            (s.fitted_exponents.v + 1.0).abs() <= 0.02,
            "{:?}",
            s.fitted_exponents
        );
        assert!(
            s.fitted_exponents.h.abs() <= 0.02,
            "{:?}",
            s.fitted_exponents
        );
    }

    #[test]
    fn constant_bundle_has_zero_exponents() {
        let c = SymField::constant(ParamRational::int(2));
        let b = SolutionBundle::new(
            VecField3::cartesian(c.clone(), SymField::zero(), SymField::zero()),
            VecField3::cartesian(SymField::zero(), c, SymField::zero()),
            SymField::zero(),
            FamilyTag::Other("constant".into()),
        )
        .unwrap();
        let p = ParamValues::new(1.0, 1.0, 1.0, 1.0, 0.0);
        let d = SampleDomain::default().with_n(50);
        let s = blowup_series(&b, &d, &p, &default_times(1.0)).unwrap();
        assert_eq!(
            s.fitted_exponents,
            Exponents {
                v: 0.0,
                gradv: 0.0,
                h: 0.0
            }
        );
    }

    #[test]
    fn too_few_times() {
        let b = SolutionBundle::zero(Frame::Cartesian);
        let p = ParamValues::new(1.0, 1.0, 1.0, 1.0, 0.0);
        let d = SampleDomain::default().with_n(10);
        assert!(blowup_series(&b, &d, &p, &[0.1, 0.2]).is_err());
    }

    #[test]
    fn energy_examples() {
        let p = ParamValues::new(1.0, 1.0, 1.0, 1.0, 0.0);
        let z = SolutionBundle::zero(Frame::Cartesian);
        assert_eq!(energy_on_ball(&z, 1.0, 0.0, &p, 100, 0, 0.0).unwrap(), 0.0);

        let c = SymField::constant(ParamRational::int(3));
        let h_only = SolutionBundle::new(
            VecField3::zero(Frame::Cartesian),
            VecField3::cartesian(SymField::zero(), SymField::zero(), c),
            SymField::zero(),
            FamilyTag::Other("constant-h".into()),
        )
        .unwrap();
        let e = energy_on_ball(&h_only, 1.0, 0.0, &p, 4000, 2, 0.0).unwrap();
        let exact = 4.5 * 4.0 / 3.0 * std::f64::consts::PI;
        assert!((e / exact - 1.0).abs() < 0.01);

        let b = family_two(&FamilyParams::unit(Family::Two)).unwrap();
        let energies: Vec<f64> = [1.0, 2.0, 4.0, 8.0]
            .iter()
            .map(|r| energy_on_ball(&b, *r, 0.0, &p, 20000, 5, 0.0).unwrap())
            .collect();
        for w in energies.windows(2) {
            assert!(w[1] / w[0] > 8.0, "{energies:?}");
        }
    }
}
