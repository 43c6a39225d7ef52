//! End-to-end symbolic verification of one catalog bundle in both frames.

use crate::catalog::{symbolic, symbolic_nse, Family, Form};
use crate::error::Result;
use crate::mhd::{
    bundle_to_cartesian, cartesian_equations, cyl_equations, cyl_incompressibility, CylFields,
    SolutionBundle, VecField3,
};
use crate::report::{ResidualEntry, ResidualReport};

/// Number of entries in a [`verify`] report.
pub const VERIFY_ENTRIES: usize = 12;

/// The catalog bundle with every parameter formal.
pub fn catalog_bundle(family: Family, nse: bool, form: Form) -> SolutionBundle {
    if nse {
        symbolic_nse(family, form)
    } else {
        symbolic(family, form)
    }
}

/// Eight Cartesian residuals, the cylindrical system, cylindrical
/// incompressibility and the frame conversion of `v` and `H`.
pub fn verify(family: Family, nse: bool) -> Result<ResidualReport> {
    let cart = catalog_bundle(family, nse, Form::Cartesian);
    let cyl = catalog_bundle(family, nse, Form::Cylindrical);
    let mut report = ResidualReport::new(cart.family.to_string());
    for eq in cartesian_equations(&cart)? {
        report
            .entries
            .push(ResidualEntry::symbolic(eq.id.clone(), &eq.residual()));
    }

    let f = CylFields::from_bundle(&cyl)?;
    let failed: Vec<String> = cyl_equations(&f)?
        .iter()
        .filter_map(|eq| {
            let r = eq.residual();
            (!r.is_zero()).then(|| format!("{}: {r}", eq.id))
        })
        .collect();
    report.entries.push(joined("cyl_system", failed));

    let mut failed = Vec::new();
    for (id, u, w) in [("div_v", &f.vr, &f.vz), ("div_h", &f.hr, &f.hz)] {
        let r = cyl_incompressibility(u, w)?;
        if !r.is_zero() {
            failed.push(format!("{id}: {r}"));
        }
    }
    report.entries.push(joined("cyl_incompressibility", failed));

    let conv = bundle_to_cartesian(&cyl)?;
    report
        .entries
        .push(frame_entry("frame_v", &conv.v, &cart.v));
    report
        .entries
        .push(frame_entry("frame_H", &conv.h, &cart.h));
    Ok(report)
}

fn joined(id: &str, failed: Vec<String>) -> ResidualEntry {
    let holds = failed.is_empty();
    ResidualEntry::check(id, holds, (!holds).then(|| failed.join("; ")))
}

fn frame_entry(id: &str, converted: &VecField3, cart: &VecField3) -> ResidualEntry {
    let failed = (0..3)
        .filter_map(|i| {
            let d = converted.c[i].sub(&cart.c[i]);
            (!d.is_zero()).then(|| format!("component {}: {d}", i + 1))
        })
        .collect();
    joined(id, failed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_one_verifies() {
        let r = verify(Family::One, false).unwrap();
        assert_eq!(r.entries.len(), VERIFY_ENTRIES);
        assert!(r.all_symbolic_zero(), "{}", r.to_json());
    }

    #[test]
    fn nse_reductions_verify() {
        for fam in Family::ALL {
            let r = verify(fam, true).unwrap();
            assert_eq!(r.entries.len(), VERIFY_ENTRIES);
            assert!(r.all_symbolic_zero(), "{}", r.to_json());
        }
    }

    #[test]
    fn family_two_fails_where_expected() {
        let r = verify(Family::Two, false).unwrap();
        let failing: Vec<&str> = r
            .entries
            .iter()
            .filter(|e| !e.symbolic_zero)
            .map(|e| e.id.as_str())
            .collect();
        assert_eq!(
            failing,
            [
                "momentum_1",
                "momentum_2",
                "momentum_3",
                "induction_1",
                "induction_2",
                "cyl_system"
            ]
        );
    }
}
