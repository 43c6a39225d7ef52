use rayon::prelude::*;

use super::domain::SampleDomain;
use crate::algebra::{BoundField, ParamValues};
use crate::error::Result;
use crate::mhd::{
    cartesian_equations, cyl_equations, cyl_incompressibility, CylFields, EquationTerms, Frame,
    SolutionBundle,
};
use crate::report::{ResidualEntry, ResidualReport};

/// Every scalar equation of the bundle's frame, as labelled parts.
pub fn bundle_equations(b: &SolutionBundle) -> Result<Vec<EquationTerms>> {
    match b.frame() {
        Frame::Cartesian => cartesian_equations(b),
        Frame::CylAxisym => {
            let f = CylFields::from_bundle(b)?;
            let mut eqs = cyl_equations(&f)?;
            for (id, u, w) in [("cyl_div_v", &f.vr, &f.vz), ("cyl_div_h", &f.hr, &f.hz)] {
                eqs.push(EquationTerms {
                    id: id.into(),
                    parts: vec![("incompressibility", cyl_incompressibility(u, w)?)],
                });
            }
            Ok(eqs)
        }
    }
}

struct BoundEquation {
    id: String,
    symbolic_zero: bool,
    parts: Vec<BoundField>,
}

/// `(max |residual|, max |part|)` for one equation over the samples.
fn sample_equation(
    eq: &BoundEquation,
    samples: &[([f64; 3], f64)],
    tstar: f64,
) -> Result<(f64, f64)> {
    let per_point: Vec<Result<(f64, f64)>> = samples
        .par_iter()
        .map(|(x, t)| {
            let s = tstar - t;
            let mut sum = 0.0;
            let mut biggest: f64 = 0.0;
            for p in &eq.parts {
                let v = p.eval(x, s)?;
                sum += v;
                biggest = biggest.max(v.abs());
            }
            Ok((sum.abs(), biggest))
        })
        .collect();
    let mut res: f64 = 0.0;
    let mut part: f64 = 0.0;
    for r in per_point {
        let (a, b) = r?;
        res = res.max(a);
        part = part.max(b);
    }
    Ok((res, part))
}

/// Samples every residual of `b` at the domain's points with viscosity `nu`.
/// Each entry reports `max |residual| / (1 + max |individual part|)`.
pub fn sample_residual(b: &SolutionBundle, d: &SampleDomain, nu: f64) -> Result<ResidualReport> {
    let params = b.values(nu)?;
    sample_residual_with(b, d, &params)
}

/// As [`sample_residual`] with explicit numeric parameters.
pub fn sample_residual_with(
    b: &SolutionBundle,
    d: &SampleDomain,
    params: &ParamValues,
) -> Result<ResidualReport> {
    b.check_values(params)?;
    let tstar = b.tstar_value(params)?;
    let samples = d.samples(tstar)?;
    let mut report = ResidualReport::new(b.family.to_string());
    report.params = Some(*params);
    report.seed = Some(d.seed);
    for eq in bundle_equations(b)? {
        let bound = BoundEquation {
            id: eq.id.clone(),
            symbolic_zero: eq.residual().is_zero(),
            parts: eq
                .parts
                .iter()
                .map(|(_, f)| f.bind(params))
                .collect::<Result<_>>()?,
        };
        let (res, part) = sample_equation(&bound, &samples, tstar)?;
        let mut entry = ResidualEntry::symbolic(bound.id.clone(), &eq.residual());
        entry.symbolic_zero = bound.symbolic_zero;
        entry.numeric_max_rel = Some(res / (1.0 + part));
        entry.samples = samples.len();
        report.entries.push(entry);
    }
    Ok(report)
}
