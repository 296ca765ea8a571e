//! Fuzzy numbers as sampled α-cut families and the classical operations
//! on them.
//!
//! A [`FuzzyNumber`] stores, for every level of a [`LevelGrid`], the lower
//! and upper endpoint of its α-cut. The invariants are exactly those of a
//! fuzzy number read levelwise: every cut is a non-empty interval and the
//! cuts are nested (lower endpoints non-decreasing, upper endpoints
//! non-increasing in α). Trapezoids are the exact parametric generators;
//! their cut endpoints are affine in α, so linear interpolation between
//! grid levels reproduces them without error.

use crate::error::{Error, Result};
use crate::grid::LevelGrid;
use crate::interval::Interval;
use crate::SINGLETON_TOL;

/// Parametric trapezoidal fuzzy number `(a, b, c, d)`: membership 0
/// outside `[a, d]`, 1 on `[b, c]`, linear in between.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trapezoid {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl Trapezoid {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if !(a <= b && b <= c && c <= d) {
            return Err(Error::InvalidTrapezoid { a, b, c, d });
        }
        Ok(Self { a, b, c, d })
    }

    /// Triangular shorthand: core collapses to the single point `b`.
    pub fn triangular(a: f64, b: f64, d: f64) -> Result<Self> {
        Self::new(a, b, b, d)
    }

    /// Crisp real number: all four knots coincide.
    pub fn crisp(value: f64) -> Self {
        Self {
            a: value,
            b: value,
            c: value,
            d: value,
        }
    }

    pub fn knots(&self) -> (f64, f64, f64, f64) {
        (self.a, self.b, self.c, self.d)
    }

    /// Whether the core `[b, c]` is a single point.
    pub fn has_singleton_core(&self) -> bool {
        self.c - self.b <= SINGLETON_TOL
    }

    /// Exact α-cut of the parametric form.
    pub fn cut(&self, alpha: f64) -> Interval {
        // bit-exact at the knots; elsewhere the lerp is clamped into
        // its knot bracket so rounding cannot reverse a singleton core
        let (lo, hi) = if alpha == 0.0 {
            (self.a, self.d)
        } else if alpha == 1.0 {
            (self.b, self.c)
        } else {
            (
                (self.a + alpha * (self.b - self.a)).clamp(self.a, self.b),
                (self.d - alpha * (self.d - self.c)).clamp(self.c, self.d),
            )
        };
        Interval::new(lo, hi).expect("trapezoid cuts stay ordered")
    }

    /// Sample the trapezoid on a level grid.
    pub fn sample(&self, grid: &LevelGrid) -> FuzzyNumber {
        let lower = grid.levels().iter().map(|&a| self.cut(a).lo()).collect();
        let upper = grid.levels().iter().map(|&a| self.cut(a).hi()).collect();
        FuzzyNumber::new(grid.clone(), lower, upper)
            .expect("sampled trapezoid satisfies the cut invariants")
    }
}

/// A fuzzy number represented by its α-cuts on a level grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyNumber {
    grid: LevelGrid,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl FuzzyNumber {
    /// Build from explicit endpoint sequences, validating the cut
    /// invariants: finite values, `lower <= upper` levelwise, lower
    /// non-decreasing and upper non-increasing.
    pub fn new(grid: LevelGrid, lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != grid.len() || upper.len() != grid.len() {
            return Err(Error::InvalidEndpoints(format!(
                "endpoint sequences of lengths {}/{} do not match grid of {} levels",
                lower.len(),
                upper.len(),
                grid.len()
            )));
        }
        if lower.iter().chain(upper.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidEndpoints(
                "endpoints must be finite".to_string(),
            ));
        }
        for k in 0..grid.len() {
            if lower[k] > upper[k] {
                return Err(Error::InvalidEndpoints(format!(
                    "empty cut at level {}: [{}, {}]",
                    grid.level(k),
                    lower[k],
                    upper[k]
                )));
            }
        }
        if lower.windows(2).any(|w| w[0] > w[1]) || upper.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidEndpoints(
                "cuts are not nested across levels".to_string(),
            ));
        }
        Ok(Self { grid, lower, upper })
    }

    /// Assemble from per-level cuts produced by interpolation or sampling.
    ///
    /// Interpolated endpoints can break nesting by a rounding ulp (and
    /// sampled inner approximations by more); monotonize before
    /// validating so the nestedness invariant holds by construction.
    pub(crate) fn from_levelwise(grid: LevelGrid, cuts: Vec<Interval>) -> Result<Self> {
        let mut lower: Vec<f64> = cuts.iter().map(Interval::lo).collect();
        let mut upper: Vec<f64> = cuts.iter().map(Interval::hi).collect();
        for k in 1..lower.len() {
            lower[k] = lower[k].max(lower[k - 1]);
            upper[k] = upper[k].min(upper[k - 1]);
        }
        Self::new(grid, lower, upper)
    }

    /// Crisp real number on the given grid.
    pub fn crisp(value: f64, grid: &LevelGrid) -> Self {
        Self {
            grid: grid.clone(),
            lower: vec![value; grid.len()],
            upper: vec![value; grid.len()],
        }
    }

    pub fn grid(&self) -> &LevelGrid {
        &self.grid
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Cut stored at grid index `k` (no interpolation).
    pub fn level_cut(&self, k: usize) -> Interval {
        Interval::new(self.lower[k], self.upper[k]).expect("stored cuts are ordered")
    }

    /// α-cut at an arbitrary level in `[0, 1]`.
    ///
    /// Exact at grid levels; linear interpolation of both endpoints
    /// between adjacent levels. Exact everywhere for trapezoids and
    /// their scalar combinations, whose endpoints are affine in α.
    pub fn alpha_cut(&self, alpha: f64) -> Result<Interval> {
        let k = self.grid.segment_of(alpha)?;
        if self.grid.level(k) == alpha {
            return Ok(self.level_cut(k));
        }
        let (a0, a1) = (self.grid.level(k), self.grid.level(k + 1));
        if a1 == alpha {
            return Ok(self.level_cut(k + 1));
        }
        let t = (alpha - a0) / (a1 - a0);
        // clamp the lerp to its bracketing values: endpoints are
        // monotone across levels, and overshooting by an ulp here would
        // leak out of the true cut
        let lo = (self.lower[k] + t * (self.lower[k + 1] - self.lower[k]))
            .clamp(self.lower[k], self.lower[k + 1]);
        let hi = (self.upper[k] + t * (self.upper[k + 1] - self.upper[k]))
            .clamp(self.upper[k + 1], self.upper[k]);
        Interval::new(lo.min(hi), hi.max(lo))
    }

    /// The 1-cut.
    pub fn core(&self) -> Interval {
        self.level_cut(self.grid.len() - 1)
    }

    /// Core midpoint, provided the core is a singleton up to
    /// [`SINGLETON_TOL`].
    pub fn singleton_core(&self) -> Result<f64> {
        let core = self.core();
        if core.width() > SINGLETON_TOL {
            return Err(Error::NonSingletonCore {
                width: core.width(),
            });
        }
        Ok(core.midpoint())
    }

    /// The 0-cut (closure of the support).
    pub fn support(&self) -> Interval {
        self.level_cut(0)
    }

    /// Length of the 0-cut.
    pub fn diam(&self) -> f64 {
        self.upper[0] - self.lower[0]
    }

    /// Midpoints of the cuts, one per grid level.
    pub fn midpoints(&self) -> Vec<f64> {
        (0..self.grid.len())
            .map(|k| (self.lower[k] + self.upper[k]) / 2.0)
            .collect()
    }

    /// Resample onto another grid by α-cut interpolation.
    pub fn resample(&self, grid: &LevelGrid) -> FuzzyNumber {
        if self.grid == *grid {
            return self.clone();
        }
        let cuts = grid
            .levels()
            .iter()
            .map(|&a| self.alpha_cut(a).expect("grid levels lie in [0, 1]"))
            .collect();
        Self::from_levelwise(grid.clone(), cuts).expect("resampling preserves the invariants")
    }

    /// Bring two fuzzy numbers onto a shared grid (union of level sets).
    pub fn align(&self, other: &FuzzyNumber) -> (FuzzyNumber, FuzzyNumber) {
        if self.grid == other.grid {
            (self.clone(), other.clone())
        } else {
            let grid = self.grid.union(&other.grid);
            (self.resample(&grid), other.resample(&grid))
        }
    }

    /// Levelwise Minkowski sum.
    pub fn minkowski_add(&self, other: &FuzzyNumber) -> FuzzyNumber {
        let (f, g) = self.align(other);
        let cuts = (0..f.grid.len())
            .map(|k| f.level_cut(k).add(&g.level_cut(k)))
            .collect();
        Self::from_levelwise(f.grid, cuts).expect("interval sums stay nested")
    }

    /// Levelwise scalar multiple, endpoints flipped for negative factors.
    pub fn scalar_mul(&self, factor: f64) -> FuzzyNumber {
        let cuts = (0..self.grid.len())
            .map(|k| self.level_cut(k).scale(factor))
            .collect();
        Self::from_levelwise(self.grid.clone(), cuts).expect("scaled cuts stay nested")
    }

    /// Whether every cut has midpoint `x` up to `tol`, the levelwise
    /// characterization of `A(x−y) = A(x+y)` for all `y`.
    pub fn is_symmetric_about(&self, x: f64, tol: f64) -> bool {
        self.midpoints().iter().all(|m| (m - x).abs() <= tol)
    }

    /// The symmetry center, if one exists up to `tol`: the common cut
    /// midpoint.
    pub fn symmetry_center(&self, tol: f64) -> Option<f64> {
        let center = (self.lower[0] + self.upper[0]) / 2.0;
        self.is_symmetric_about(center, tol).then_some(center)
    }

    /// Hausdorff-Pompeiu distance: the largest endpoint deviation over
    /// all levels.
    pub fn hausdorff(&self, other: &FuzzyNumber) -> f64 {
        let (f, g) = self.align(other);
        (0..f.grid.len())
            .map(|k| f.level_cut(k).endpoint_distance(&g.level_cut(k)))
            .fold(0.0, f64::max)
    }

    /// Power hedge: membership raised to the `i`-th power, realized
    /// levelwise as the cut at `α^(1/i)`.
    pub fn power_hedge(&self, i: u32) -> Result<FuzzyNumber> {
        if i == 0 {
            return Err(Error::InvalidHedgeExponent);
        }
        if i == 1 {
            return Ok(self.clone());
        }
        let exponent = 1.0 / f64::from(i);
        let cuts = self
            .grid
            .levels()
            .iter()
            .map(|&a| {
                self.alpha_cut(a.powf(exponent))
                    .expect("α^(1/i) stays in [0, 1]")
            })
            .collect::<Vec<_>>();
        Self::from_levelwise(self.grid.clone(), cuts)
    }

    /// Cross product `B ⊙ C = cB + bC − bc` with `{b} = [B]₁`,
    /// `{c} = [C]₁`; both operands must have singleton cores.
    pub fn cross_product(&self, other: &FuzzyNumber) -> Result<FuzzyNumber> {
        let b = self.singleton_core()?;
        let c = other.singleton_core()?;
        let (f, g) = self.align(other);
        let cuts = (0..f.grid.len())
            .map(|k| {
                f.level_cut(k)
                    .scale(c)
                    .add(&g.level_cut(k).scale(b))
                    .shift(-(b * c))
            })
            .collect();
        Self::from_levelwise(f.grid, cuts)
    }
}
