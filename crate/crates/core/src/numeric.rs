//! Compensated floating-point accumulation.
//!
//! U-statistics sum up to millions of near-equal kernel values and the
//! interval constants downstream are tight, so plain `f64` accumulation
//! error is worth eliminating.

use std::ops::AddAssign;

/// Neumaier-compensated sum.
///
/// Tracks a running compensation term so that the accumulated rounding
/// error stays O(eps) instead of O(n·eps). Unlike textbook Kahan, the
/// branch keeps the compensation correct when a term exceeds the running
/// sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl AddAssign<f64> for CompensatedSum {
    fn add_assign(&mut self, x: f64) {
        self.add(x);
    }
}

impl From<CompensatedSum> for f64 {
    fn from(s: CompensatedSum) -> f64 {
        s.value()
    }
}
