//! Closed real intervals with arbitrary-precision endpoints.

use crate::real::Real;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Interval {
    pub lo: Real,
    pub hi: Real,
}

impl Interval {
    pub fn new(lo: Real, hi: Real) -> Self {
        debug_assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    /// Hull of two points given in either order.
    pub fn hull(a: Real, b: Real) -> Self {
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn length(&self) -> Real {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Real {
        (&self.lo + &self.hi) / 2
    }

    pub fn contains(&self, x: &Real) -> bool {
        *x >= self.lo && *x <= self.hi
    }

    pub fn contains_strict(&self, x: &Real, margin: &Real) -> bool {
        *x > &self.lo + margin && *x < &self.hi - margin
    }

    /// Is `inner` contained in `self` up to `tol` slack on each side?
    pub fn contains_interval(&self, inner: &Interval, tol: &Real) -> bool {
        inner.lo >= &self.lo - tol && inner.hi <= &self.hi + tol
    }

    /// Interval image under x -> x² + c (fold-aware).
    pub fn image_quadratic(&self, c: &Real) -> Interval {
        let flo = self.lo.square() + c;
        let fhi = self.hi.square() + c;
        if self.lo.is_negative() && self.hi.is_positive() {
            // interval straddles the critical point: min is the critical value
            Interval {
                lo: c.clone(),
                hi: flo.max_ref(&fhi),
            }
        } else {
            Interval::hull(flo, fhi)
        }
    }

    /// True if the open interiors are disjoint up to `tol`.
    pub fn interior_disjoint(&self, other: &Interval, tol: &Real) -> bool {
        self.hi <= &other.lo + tol || other.hi <= &self.lo + tol
    }
}
