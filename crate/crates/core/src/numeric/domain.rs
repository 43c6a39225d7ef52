use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Spatial sampling region.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Region {
    Box { lo: [f64; 3], hi: [f64; 3] },
    Ball { radius: f64 },
}

/// Where and when fields are sampled.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SampleDomain {
    pub region: Region,
    /// Points with `x1^2 + x2^2 < r_min^2` are rejected.
    pub r_min: f64,
    /// Sampling times, as fractions of `T*`: `t in [t0, t1] * T*`.
    pub t_range: [f64; 2],
    pub n: usize,
    pub seed: u64,
}

/// Smallest admissible `s / T*` when sampling.
pub const TIME_GUARD: f64 = 0.01;
pub const DEFAULT_R_MIN: f64 = 0.1;

impl Default for SampleDomain {
    fn default() -> Self {
        SampleDomain {
            region: Region::Box {
                lo: [-2.0; 3],
                hi: [2.0; 3],
            },
            r_min: DEFAULT_R_MIN,
            t_range: [0.0, 1.0 - TIME_GUARD],
            n: 1000,
            seed: 0,
        }
    }
}

impl SampleDomain {
    pub fn with_box(mut self, lo: f64, hi: f64) -> Self {
        self.region = Region::Box {
            lo: [lo; 3],
            hi: [hi; 3],
        };
        self
    }

    pub fn with_ball(mut self, radius: f64) -> Self {
        self.region = Region::Ball { radius };
        self
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_r_min(mut self, r_min: f64) -> Self {
        self.r_min = r_min;
        self
    }

    /// A single sampling time `t = frac * T*`.
    pub fn at_time(mut self, frac: f64) -> Self {
        self.t_range = [frac, frac];
        self
    }

    pub fn validate(&self) -> Result<()> {
        let [t0, t1] = self.t_range;
        if !(t0 <= t1 && t1 < 1.0 && t0.is_finite()) {
            return Err(Error::Domain(format!(
                "time range [{t0}, {t1}] * T* must satisfy t0 <= t1 < T*"
            )));
        }
        if !(self.r_min >= 0.0) {
            return Err(Error::Domain("r_min must be nonnegative".into()));
        }
        match self.region {
            Region::Box { lo, hi } => {
                if (0..3).any(|i| !(lo[i] < hi[i])) {
                    return Err(Error::Domain("box must have lo < hi".into()));
                }
                let far = lo[0]
                    .abs()
                    .max(hi[0].abs())
                    .hypot(lo[1].abs().max(hi[1].abs()));
                if far <= self.r_min {
                    return Err(Error::Domain("box lies inside the axis exclusion".into()));
                }
            }
            Region::Ball { radius } => {
                if !(radius > self.r_min) {
                    return Err(Error::Domain("ball lies inside the axis exclusion".into()));
                }
            }
        }
        Ok(())
    }

    /// Deterministic admissible spatial points.
    pub fn points(&self) -> Result<Vec<[f64; 3]>> {
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut out = Vec::with_capacity(self.n);
        let mut tries = 0usize;
        while out.len() < self.n {
            tries += 1;
            if tries > 1000 * (self.n + 1) {
                return Err(Error::Domain(
                    "sampling region is almost all excluded".into(),
                ));
            }
            let x = match self.region {
                Region::Box { lo, hi } => std::array::from_fn(|i| rng.gen_range(lo[i]..hi[i])),
                Region::Ball { radius } => {
                    let x: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-radius..radius));
                    if x.iter().map(|v| v * v).sum::<f64>() > radius * radius {
                        continue;
                    }
                    x
                }
            };
            if x[0] * x[0] + x[1] * x[1] < self.r_min * self.r_min {
                continue;
            }
            out.push(x);
        }
        Ok(out)
    }

    /// Deterministic admissible space-time samples `(x, t)` for a given
    /// `T*`.
    pub fn samples(&self, tstar: f64) -> Result<Vec<([f64; 3], f64)>> {
        let pts = self.points()?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ 0x9e37_79b9_7f4a_7c15);
        let [t0, t1] = self.t_range;
        Ok(pts
            .into_iter()
            .map(|x| {
                let frac = if t0 == t1 { t0 } else { rng.gen_range(t0..=t1) };
                (x, frac * tstar)
            })
            .collect())
    }
}

/// Sum with a fixed pairwise reduction tree, independent of thread count.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        n => {
            let (a, b) = v.split_at(n / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_are_deterministic_and_admissible() {
        let d = SampleDomain::default().with_n(200).with_seed(7);
        let a = d.points().unwrap();
        assert_eq!(a, d.points().unwrap());
        assert!(a.iter().all(|x| x[0].hypot(x[1]) >= 0.1));
        let b = d.with_seed(8).points().unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn ball_points_stay_inside() {
        let d = SampleDomain::default().with_ball(1.5).with_n(100);
        assert!(d
            .points()
            .unwrap()
            .iter()
            .all(|x| x.iter().map(|v| v * v).sum::<f64>() <= 2.25));
    }

    #[test]
    fn bad_time_range() {
        let d = SampleDomain {
            t_range: [0.0, 1.0],
            ..SampleDomain::default()
        };
        assert!(matches!(d.validate(), Err(Error::Domain(_))));
    }

    #[test]
    fn pairwise_sum_matches() {
        let v: Vec<f64> = (1..=100).map(f64::from).collect();
        assert_eq!(pairwise_sum(&v), 5050.0);
    }
}
