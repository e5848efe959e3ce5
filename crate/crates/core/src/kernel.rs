//! Symmetric kernels and the derived order-2m variance kernel.
//!
//! A kernel of order m is a symmetric map from m sample points to a real
//! in a declared range [a, b]. From any base kernel h we derive
//!
//! ```text
//! eta(x_1, .., x_2m)       = [h(x_1, .., x_m) - h(x_{m+1}, .., x_{2m})]^2 / 2
//! eta_tilde(x_1, .., x_2m) = permutation average of eta
//! ```
//!
//! whose expectation under IID sampling is the kernel variance V_F h. The
//! symmetrization is computed as the average over the C(2m, m) ways of
//! choosing which m arguments feed the first slot; because h is symmetric
//! within each slot and eta is invariant to swapping its two slots, this
//! equals the full (2m)!-permutation average at a factorially lower cost.

use std::fmt;
use std::sync::Arc;

use crate::combinatorics::{binomial, for_each_combination};
use crate::error::{Error, Result};

#[derive(Clone)]
enum EvalRule {
    /// h(x) = x, order 1. The mean kernel.
    Identity,
    /// h(x1, x2) = (x1 - x2)^2 / 2, order 2. Its U-statistic is the
    /// unbiased sample variance.
    SquaredHalfDiff,
    Closure(Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>),
}

/// An order-m kernel with a declared range and a symmetry assertion.
#[derive(Clone)]
pub struct KernelSpec {
    order: usize,
    lo: f64,
    hi: f64,
    symmetric: bool,
    rule: EvalRule,
}

impl fmt::Debug for KernelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rule = match self.rule {
            EvalRule::Identity => "identity",
            EvalRule::SquaredHalfDiff => "variance",
            EvalRule::Closure(_) => "closure",
        };
        f.debug_struct("KernelSpec")
            .field("order", &self.order)
            .field("range", &(self.lo, self.hi))
            .field("symmetric", &self.symmetric)
            .field("rule", &rule)
            .finish()
    }
}

impl KernelSpec {
    /// The mean kernel h(x) = x on [0, 1].
    pub fn identity() -> Self {
        Self {
            order: 1,
            lo: 0.0,
            hi: 1.0,
            symmetric: true,
            rule: EvalRule::Identity,
        }
    }

    /// The variance kernel h(x1, x2) = (x1 - x2)^2 / 2 for points in [0, 1];
    /// its range is [0, 1/2] and its U-statistic equals S_n^2.
    pub fn variance() -> Self {
        Self {
            order: 2,
            lo: 0.0,
            hi: 0.5,
            symmetric: true,
            rule: EvalRule::SquaredHalfDiff,
        }
    }

    /// A user-supplied kernel. `symmetric` is the caller's assertion that the
    /// closure is invariant under argument permutations; it is spot-checkable
    /// but not enforced here.
    pub fn closure<F>(order: usize, lo: f64, hi: f64, symmetric: bool, f: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        if order == 0 {
            return Err(Error::WrongArity {
                expected: 1,
                got: 0,
            });
        }
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidRange { lo, hi });
        }
        Ok(Self {
            order,
            lo,
            hi,
            symmetric,
            rule: EvalRule::Closure(Arc::new(f)),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn range(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn range_width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_declared_symmetric(&self) -> bool {
        self.symmetric
    }

    /// Which builtin this kernel is, if any; closures return `None`.
    pub fn builtin(&self) -> Option<BuiltinKernel> {
        match self.rule {
            EvalRule::Identity => Some(BuiltinKernel::Mean),
            EvalRule::SquaredHalfDiff => Some(BuiltinKernel::Variance),
            EvalRule::Closure(_) => None,
        }
    }

    /// The Bernstein linear-term constant c = 2 max{|a|, |b|}, which covers
    /// kernels that are not centered at zero.
    pub fn bernstein_c(&self) -> f64 {
        2.0 * self.lo.abs().max(self.hi.abs())
    }

    /// Errors unless the declared range is contained in [0, 1]; the
    /// empirical interval constants are only valid for such kernels.
    pub fn require_unit_range(&self) -> Result<()> {
        if self.lo >= 0.0 && self.hi <= 1.0 {
            Ok(())
        } else {
            Err(Error::RangeNotUnit {
                lo: self.lo,
                hi: self.hi,
            })
        }
    }

    /// Evaluates the kernel on exactly `order` points. A value escaping the
    /// declared range is a hard error, not a clamp: a misdeclared kernel
    /// would silently invalidate every downstream bound.
    pub fn eval(&self, points: &[f64]) -> Result<f64> {
        if points.len() != self.order {
            return Err(Error::WrongArity {
                expected: self.order,
                got: points.len(),
            });
        }
        let v = match &self.rule {
            EvalRule::Identity => points[0],
            EvalRule::SquaredHalfDiff => {
                let d = points[0] - points[1];
                d * d / 2.0
            }
            EvalRule::Closure(f) => f(points),
        };
        if !(v >= self.lo && v <= self.hi) {
            return Err(Error::KernelOutOfRange {
                value: v,
                lo: self.lo,
                hi: self.hi,
            });
        }
        Ok(v)
    }

    /// The affine rescaling h' = (h - a)/(b - a) with range [0, 1], together
    /// with the map that carries unit-scale intervals back to the original
    /// scale.
    pub fn rescaled_to_unit(&self) -> (KernelSpec, AffineMap) {
        let map = AffineMap {
            offset: self.lo,
            scale: self.hi - self.lo,
        };
        let inner = self.clone();
        let m = map;
        let rescaled = KernelSpec {
            order: self.order,
            lo: 0.0,
            hi: 1.0,
            symmetric: self.symmetric,
            rule: EvalRule::Closure(Arc::new(move |pts: &[f64]| {
                let raw = match &inner.rule {
                    EvalRule::Identity => pts[0],
                    EvalRule::SquaredHalfDiff => {
                        let d = pts[0] - pts[1];
                        d * d / 2.0
                    }
                    EvalRule::Closure(f) => f(pts),
                };
                m.to_unit(raw)
            })),
        };
        (rescaled, map)
    }
}

/// Linear change of scale between a kernel's native range and [0, 1].
#[derive(Debug, Clone, Copy)]
pub struct AffineMap {
    offset: f64,
    scale: f64,
}

impl AffineMap {
    pub fn to_unit(&self, x: f64) -> f64 {
        (x - self.offset) / self.scale
    }

    pub fn from_unit(&self, y: f64) -> f64 {
        self.offset + self.scale * y
    }

    /// Multiplies a unit-scale half-width back to the original scale.
    pub fn scale(&self) -> f64 {
        self.scale
    }
}

/// The two kernels the interval constructions instantiate directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinKernel {
    Mean,
    Variance,
}

impl BuiltinKernel {
    pub fn spec(self) -> KernelSpec {
        match self {
            BuiltinKernel::Mean => KernelSpec::identity(),
            BuiltinKernel::Variance => KernelSpec::variance(),
        }
    }

    pub fn order(self) -> usize {
        match self {
            BuiltinKernel::Mean => 1,
            BuiltinKernel::Variance => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BuiltinKernel::Mean => "mean",
            BuiltinKernel::Variance => "variance",
        }
    }
}

/// The order-2m kernel eta derived from a base kernel, in plain or
/// symmetrized form.
#[derive(Debug, Clone)]
pub struct VarianceKernel {
    base: KernelSpec,
    symmetrized: bool,
}

impl VarianceKernel {
    /// Plain eta. Only valid as a U-statistic kernel when eta happens to be
    /// symmetric (it is for an order-1 base, not in general).
    pub fn new(base: KernelSpec) -> Self {
        Self {
            base,
            symmetrized: false,
        }
    }

    /// Symmetrized eta-tilde, valid for any base kernel.
    pub fn symmetrized(base: KernelSpec) -> Self {
        Self {
            base,
            symmetrized: true,
        }
    }

    pub fn base(&self) -> &KernelSpec {
        &self.base
    }

    pub fn order(&self) -> usize {
        2 * self.base.order
    }

    pub fn is_symmetrized(&self) -> bool {
        self.symmetrized
    }

    /// Range of eta: [0, (b - a)^2 / 2]. A base in [0, 1] gives [0, 1/2].
    pub fn range(&self) -> (f64, f64) {
        let w = self.base.range_width();
        (0.0, w * w / 2.0)
    }

    /// eta(points) = [h(first m) - h(last m)]^2 / 2.
    pub fn eval_eta(&self, points: &[f64]) -> Result<f64> {
        let m = self.base.order;
        if points.len() != 2 * m {
            return Err(Error::WrongArity {
                expected: 2 * m,
                got: points.len(),
            });
        }
        let d = self.base.eval(&points[..m])? - self.base.eval(&points[m..])?;
        Ok(d * d / 2.0)
    }

    /// eta-tilde(points): the average of eta over all C(2m, m) first-slot
    /// choices, enumerated in lexicographic order. Equal to the full
    /// (2m)!-permutation average.
    pub fn eval_eta_symmetrized(&self, points: &[f64]) -> Result<f64> {
        let m = self.base.order;
        if points.len() != 2 * m {
            return Err(Error::WrongArity {
                expected: 2 * m,
                got: points.len(),
            });
        }
        let mut first = vec![0.0; m];
        let mut second = vec![0.0; m];
        let mut acc = 0.0;
        let mut err: Option<Error> = None;
        for_each_combination(2 * m, m, |chosen| {
            if err.is_some() {
                return;
            }
            let mut c = 0;
            let mut s = 0;
            for (i, &p) in points.iter().enumerate() {
                if c < m && chosen[c] == i {
                    first[c] = p;
                    c += 1;
                } else {
                    second[s] = p;
                    s += 1;
                }
            }
            match (self.base.eval(&first), self.base.eval(&second)) {
                (Ok(a), Ok(b)) => {
                    let d = a - b;
                    acc += d * d / 2.0;
                }
                (Err(e), _) | (_, Err(e)) => err = Some(e),
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        let splits = binomial(2 * m as u64, m as u64).expect("split count fits u64") as f64;
        Ok(acc / splits)
    }

    /// Evaluates eta or eta-tilde according to the symmetrized flag.
    pub fn eval(&self, points: &[f64]) -> Result<f64> {
        if self.symmetrized {
            self.eval_eta_symmetrized(points)
        } else {
            self.eval_eta(points)
        }
    }
}
