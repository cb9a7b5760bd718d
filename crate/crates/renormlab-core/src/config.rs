//! Shared numeric configuration.
//!
//! One [`Ctx`] is threaded through every operation: a single decimal
//! precision `D`, the series truncation order `N`, kneading length, and the
//! iteration budgets. Tolerances are derived from `D` so that changing the
//! precision rescales the whole tolerance ladder consistently.

use crate::real::{Prec, Real};
use serde::{Deserialize, Serialize};

/// Numeric knobs shared by all modules.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Ctx {
    /// Working precision in decimal digits (`D`).
    pub digits: u32,
    /// Extra digits used inside operator-level computations (interpolation
    /// back to monomial coefficients costs ~15 digits at N = 40; the guard
    /// keeps residuals meaningful at the caller's precision).
    pub guard_digits: u32,
    /// Truncation order of germ series (`N` coefficients of v in y = x²).
    pub series_order: usize,
    /// Kneading word length (`K`), doubled on ambiguity up to the cap.
    pub kneading_len: usize,
    pub kneading_len_max: usize,
    /// Central runs shorter than this are never classified.
    pub cascade_min: usize,
    /// Germ domain radius in x.
    pub rho_dom: f64,
    /// Exponent e in the tail certificate bound 10^e for renormalized germs.
    /// See `Germ::tail_bound`.
    pub tail_tol_exp: i32,
    /// Maximum orbit length when searching for first returns.
    pub orbit_budget: usize,
    /// Maximum principal-nest depth.
    pub depth_max: usize,
    /// Iteration budget for attracting-cycle searches.
    pub cycle_budget: usize,
    /// Newton iteration cap for fixed-germ solves.
    pub newton_max_iter: usize,
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx {
            digits: 50,
            guard_digits: 30,
            series_order: 40,
            kneading_len: 64,
            kneading_len_max: 512,
            cascade_min: 3,
            rho_dom: 1.6,
            tail_tol_exp: -12,
            orbit_budget: 200_000,
            depth_max: 8_000,
            cycle_budget: 60_000,
            newton_max_iter: 50,
        }
    }
}

impl Ctx {
    pub fn new(digits: u32, series_order: usize) -> Self {
        let ctx = Ctx {
            digits,
            series_order,
            ..Ctx::default()
        };
        ctx.validate().expect("invalid configuration");
        ctx
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.series_order >= 30 && self.digits < 30 {
            return Err(format!(
                "series order {} needs at least 30 digits (got {})",
                self.series_order, self.digits
            ));
        }
        if self.digits < 15 {
            return Err("precision below 15 digits is not usable".into());
        }
        if self.orbit_budget == 0 || self.depth_max == 0 || self.cycle_budget == 0 {
            return Err("iteration budgets must be positive".into());
        }
        Ok(())
    }

    /// Caller-facing precision.
    pub fn prec(&self) -> Prec {
        Prec::decimal(self.digits)
    }

    /// Operator-internal precision (renormalization, jacobians, spectra).
    pub fn guard(&self) -> Prec {
        Prec::decimal(self.digits + self.guard_digits)
    }

    /// Symbol tolerance 10^(6-D): below it an itinerary branch is undecidable.
    pub fn tol_sym(&self) -> Real {
        self.prec().pow10(6 - self.digits as i32)
    }

    /// Cycle-closure tolerance 10^(4-D).
    pub fn tol_cycle(&self) -> Real {
        self.prec().pow10(4 - self.digits as i32)
    }

    /// Root residual tolerance 10^(6-D) for superstable solves.
    pub fn tol_root(&self) -> Real {
        self.prec().pow10(6 - self.digits as i32)
    }

    /// Fixed-germ residual target 10^(10-D).
    pub fn tol_newton(&self) -> Real {
        self.prec().pow10(10 - self.digits as i32)
    }

    /// Eigen-residual certificate 10^(-D/2).
    pub fn tol_eig(&self) -> Real {
        self.prec().pow10(-(self.digits as i32) / 2)
    }

    /// Finite-difference step 10^(-D/3) for the truncated linearization.
    pub fn fd_step(&self) -> Real {
        self.guard().pow10(-(self.digits as i32) / 3)
    }

    pub fn rho_dom_real(&self) -> Real {
        self.guard().from_f64(self.rho_dom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_ladder_tracks_digits() {
        let ctx = Ctx::default();
        assert!(ctx.tol_sym() < ctx.prec().pow10(-43));
        assert!(ctx.tol_newton() > ctx.tol_sym());
    }

    #[test]
    fn order_precision_coupling_enforced() {
        let bad = Ctx {
            digits: 20,
            series_order: 40,
            ..Ctx::default()
        };
        assert!(bad.validate().is_err());
    }
}
