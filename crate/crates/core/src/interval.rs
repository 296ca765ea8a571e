//! Closed real intervals, the value of a single α-cut.

use crate::error::{Error, Result};

/// A non-empty closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(Error::InvalidEndpoints(format!(
                "interval endpoints must be ordered reals, got [{lo}, {hi}]"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn singleton(value: f64) -> Self {
        Self {
            lo: value,
            hi: value,
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        (self.lo + self.hi) / 2.0
    }

    pub fn contains(&self, value: f64) -> bool {
        self.lo <= value && value <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Minkowski sum: `[a,b] + [c,d] = [a+c, b+d]`.
    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo + other.lo,
            hi: self.hi + other.hi,
        }
    }

    /// `λ·[a,b]`, flipping the endpoints when `λ < 0`.
    pub fn scale(&self, factor: f64) -> Interval {
        if factor >= 0.0 {
            Interval {
                lo: factor * self.lo,
                hi: factor * self.hi,
            }
        } else {
            Interval {
                lo: factor * self.hi,
                hi: factor * self.lo,
            }
        }
    }

    /// Translation by a real constant.
    pub fn shift(&self, offset: f64) -> Interval {
        Interval {
            lo: self.lo + offset,
            hi: self.hi + offset,
        }
    }

    /// Largest endpoint deviation between two intervals.
    pub fn endpoint_distance(&self, other: &Interval) -> f64 {
        (self.lo - other.lo).abs().max((self.hi - other.hi).abs())
    }
}
