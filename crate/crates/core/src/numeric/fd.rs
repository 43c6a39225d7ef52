use serde::Serialize;

use crate::algebra::{ParamValues, Point, SymField, Var};
use crate::error::Result;

/// Finite-difference comparison for one variable.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FdEntry {
    pub var: &'static str,
    pub exact: f64,
    pub fd_h: f64,
    pub fd_h2: f64,
    pub err_h: f64,
    pub err_h2: f64,
    /// `log2(err_h / err_h2)`; absent when the stencil is exact to rounding.
    pub order: Option<f64>,
}

impl FdEntry {
    /// Relative error below which the stencil counts as exact.
    pub const EXACT_TOL: f64 = 1e-9;

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FdReport {
    pub point: [f64; 4],
    pub h: f64,
    pub entries: Vec<FdEntry>,
}

impl FdReport {
    /// Every measured order lies in `[lo, hi]`; exact entries pass.
    pub fn orders_within(&self, lo: f64, hi: f64) -> bool {
        self.entries
            .iter()
            .all(|e| e.order.is_none_or(|o| (lo..=hi).contains(&o)))
    }
}

fn shifted(p: &Point, var: Var, d: f64) -> Point {
    let mut q = *p;
    match var {
        Var::X1 => q.x[0] += d,
        Var::X2 => q.x[1] += d,
        Var::X3 => q.x[2] += d,
        Var::T => q.t += d,
    }
    q
}

fn central(f: &SymField, p: &Point, params: &ParamValues, var: Var, h: f64) -> Result<f64> {
    let plus = f.eval(&shifted(p, var, h), params)?;
    let minus = f.eval(&shifted(p, var, -h), params)?;
    Ok((plus - minus) / (2.0 * h))
}

/// Compares the symbolic derivative in each of `x1, x2, x3, t` with central
/// differences of widths `h` and `h/2`.
pub fn fd_check(f: &SymField, point: &Point, params: &ParamValues, h: f64) -> Result<FdReport> {
    let mut entries = Vec::with_capacity(4);
    for var in Var::ALL {
        let exact = f.diff(var).eval(point, params)?;
        let fd_h = central(f, point, params, var, h)?;
        let fd_h2 = central(f, point, params, var, h / 2.0)?;
        let err_h = (fd_h - exact).abs();
        let err_h2 = (fd_h2 - exact).abs();
        let order = if err_h <= FdEntry::EXACT_TOL * (1.0 + exact.abs()) {
            None
        } else {
            Some((err_h / err_h2).log2())
        };
        entries.push(FdEntry {
            var: var.name(),
            exact,
            fd_h,
            fd_h2,
            err_h,
            err_h2,
            order,
        });
    }
    Ok(FdReport {
        point: [point.x[0], point.x[1], point.x[2], point.t],
        h,
        entries,
    })
}
