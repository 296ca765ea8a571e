//! Interval and fuzzy extensions of real functions on boxes.
//!
//! For a continuous function the image of a product of α-cuts is again an
//! interval, and applying the image construction level by level extends
//! the function to fuzzy arguments. Two interval oracles are provided:
//!
//! * [`extend_vertex`] evaluates the function on the `2^arity` corners of
//!   the box. For functions affine in each coordinate (multiaffine) the
//!   extrema sit at corners, so this is exact — and every extension the
//!   ring operations need is multiaffine.
//! * [`extend_grid`] scans a regular lattice of `density^arity` points.
//!   It yields an *inner* approximation of the image, suitable for
//!   containment checks on general continuous functions but not for
//!   asserting equalities.

use std::fmt;

use crate::error::{Error, Result};
use crate::fuzzy::FuzzyNumber;
use crate::interval::Interval;

/// Hard cap on evaluation points per interval extension, guarding
/// against accidental exponential blow-ups in arity or density.
const MAX_SAMPLES: u128 = 1 << 24;

/// Per-coordinate direction of monotonicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
}

/// A real-valued function of `arity` real variables, evaluated on boxes.
///
/// The callable must be deterministic and total on the boxes it is
/// applied to. An optional monotonicity pattern lets [`extend_vertex`]
/// skip the corner enumeration and evaluate only the two extremal
/// corners.
type EvalFn = Box<dyn Fn(&[f64]) -> f64 + Send + Sync>;

pub struct BoxFunction {
    arity: usize,
    eval: EvalFn,
    monotonicity_hint: Option<Vec<Monotonicity>>,
}

impl BoxFunction {
    pub fn new<F>(arity: usize, eval: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self {
            arity,
            eval: Box::new(eval),
            monotonicity_hint: None,
        }
    }

    /// Attach a per-coordinate monotonicity pattern; its length must
    /// equal the arity.
    pub fn with_monotonicity(mut self, hint: Vec<Monotonicity>) -> Result<Self> {
        if hint.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: hint.len(),
            });
        }
        self.monotonicity_hint = Some(hint);
        Ok(self)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn evaluate(&self, point: &[f64]) -> f64 {
        (self.eval)(point)
    }
}

impl fmt::Debug for BoxFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoxFunction")
            .field("arity", &self.arity)
            .field("monotonicity_hint", &self.monotonicity_hint)
            .finish_non_exhaustive()
    }
}

/// Which interval oracle [`extend_fuzzy`] applies at each level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionMode {
    /// Corner enumeration; exact for multiaffine functions.
    Vertex,
    /// Regular lattice scan with the given points per coordinate;
    /// inner approximation for general continuous functions.
    Grid { density: usize },
}

/// Image interval of `f` over the box, computed from the corner
/// evaluations. Exact when `f` is affine in each coordinate.
pub fn extend_vertex(f: &BoxFunction, cuts: &[Interval]) -> Result<Interval> {
    if cuts.len() != f.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            got: cuts.len(),
        });
    }
    if let Some(hint) = &f.monotonicity_hint {
        let floor: Vec<f64> = hint
            .iter()
            .zip(cuts)
            .map(|(m, cut)| match m {
                Monotonicity::Increasing => cut.lo(),
                Monotonicity::Decreasing => cut.hi(),
            })
            .collect();
        let ceil: Vec<f64> = hint
            .iter()
            .zip(cuts)
            .map(|(m, cut)| match m {
                Monotonicity::Increasing => cut.hi(),
                Monotonicity::Decreasing => cut.lo(),
            })
            .collect();
        let lo = f.evaluate(&floor);
        let hi = f.evaluate(&ceil);
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::NonFiniteValue);
        }
        return Interval::new(lo.min(hi), lo.max(hi));
    }

    let corners = 1u128.checked_shl(cuts.len() as u32).unwrap_or(u128::MAX);
    if corners > MAX_SAMPLES {
        return Err(Error::TooManySamples { points: corners });
    }
    let mut point = vec![0.0; cuts.len()];
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for mask in 0..corners as u64 {
        for (j, cut) in cuts.iter().enumerate() {
            point[j] = if mask >> j & 1 == 1 {
                cut.hi()
            } else {
                cut.lo()
            };
        }
        let value = f.evaluate(&point);
        if !value.is_finite() {
            return Err(Error::NonFiniteValue);
        }
        min = min.min(value);
        max = max.max(value);
    }
    Interval::new(min, max)
}

/// Image interval of `f` over the box, approximated from a regular
/// lattice of `density` points per coordinate (endpoints included, so
/// corner extrema are sampled exactly). The result is contained in the
/// true image interval.
pub fn extend_grid(f: &BoxFunction, cuts: &[Interval], density: usize) -> Result<Interval> {
    if cuts.len() != f.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            got: cuts.len(),
        });
    }
    if density < 2 {
        return Err(Error::InvalidDensity(density));
    }
    let total = (density as u128)
        .checked_pow(cuts.len() as u32)
        .unwrap_or(u128::MAX);
    if total > MAX_SAMPLES {
        return Err(Error::TooManySamples { points: total });
    }
    let mut point = vec![0.0; cuts.len()];
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for flat in 0..total as u64 {
        let mut rem = flat;
        for (j, cut) in cuts.iter().enumerate() {
            let digit = (rem % density as u64) as usize;
            rem /= density as u64;
            point[j] = lattice_coordinate(cut, digit, density);
        }
        let value = f.evaluate(&point);
        if !value.is_finite() {
            return Err(Error::NonFiniteValue);
        }
        min = min.min(value);
        max = max.max(value);
    }
    Interval::new(min, max)
}

/// `digit`-th of `density` equispaced positions in the cut, with both
/// endpoints hit exactly.
fn lattice_coordinate(cut: &Interval, digit: usize, density: usize) -> f64 {
    if digit == 0 {
        cut.lo()
    } else if digit == density - 1 {
        cut.hi()
    } else {
        let t = digit as f64 / (density - 1) as f64;
        cut.lo() + t * (cut.hi() - cut.lo())
    }
}

/// Extension of `f` to fuzzy arguments: the chosen interval oracle is
/// applied to the α-cuts level by level. Arguments on different grids
/// are first aligned onto the union of their level sets.
pub fn extend_fuzzy(
    f: &BoxFunction,
    args: &[FuzzyNumber],
    mode: ExtensionMode,
) -> Result<FuzzyNumber> {
    if args.len() != f.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            got: args.len(),
        });
    }
    let first = args.first().ok_or(Error::ArityMismatch {
        expected: 1,
        got: 0,
    })?;
    let grid = args
        .iter()
        .skip(1)
        .fold(first.grid().clone(), |acc, a| acc.union(a.grid()));
    let aligned: Vec<FuzzyNumber> = args.iter().map(|a| a.resample(&grid)).collect();
    let mut images = Vec::with_capacity(grid.len());
    for k in 0..grid.len() {
        let level_cuts: Vec<Interval> = aligned.iter().map(|a| a.level_cut(k)).collect();
        images.push(match mode {
            ExtensionMode::Vertex => extend_vertex(f, &level_cuts)?,
            ExtensionMode::Grid { density } => extend_grid(f, &level_cuts, density)?,
        });
    }
    FuzzyNumber::from_levelwise(grid, images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::Trapezoid;
    use crate::grid::LevelGrid;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn vertex_identity_and_constant() {
        let id = BoxFunction::new(1, |x| x[0]);
        let image = extend_vertex(&id, &[iv(2.0, 5.0)]).unwrap();
        assert_eq!((image.lo(), image.hi()), (2.0, 5.0));

        let constant = BoxFunction::new(2, |_| 7.5);
        let image = extend_vertex(&constant, &[iv(0.0, 1.0), iv(-1.0, 1.0)]).unwrap();
        assert_eq!((image.lo(), image.hi()), (7.5, 7.5));
    }

    #[test]
    fn vertex_multiaffine_example() {
        // oracle: extrema of 2x + y − 2 + z over the 8 corners of
        // [0,3]×[0,3]×[0,0] are at (0,0,0) and (3,3,0)
        let f = BoxFunction::new(3, |v| 2.0 * v[0] + v[1] - 2.0 + v[2]);
        let image = extend_vertex(&f, &[iv(0.0, 3.0), iv(0.0, 3.0), iv(0.0, 0.0)]).unwrap();
        assert_eq!((image.lo(), image.hi()), (-2.0, 7.0));
    }

    #[test]
    fn vertex_arity_mismatch() {
        let f = BoxFunction::new(2, |v| v[0] + v[1]);
        assert!(matches!(
            extend_vertex(&f, &[iv(0.0, 1.0)]),
            Err(Error::ArityMismatch {
                expected: 2,
                got: 1
            })
        ));
    }

    #[test]
    fn monotonicity_hint_matches_enumeration() {
        let cuts = [iv(-1.0, 2.0), iv(3.0, 5.0)];
        let plain = BoxFunction::new(2, |v| v[0] - 2.0 * v[1]);
        let hinted = BoxFunction::new(2, |v| v[0] - 2.0 * v[1])
            .with_monotonicity(vec![Monotonicity::Increasing, Monotonicity::Decreasing])
            .unwrap();
        let full = extend_vertex(&plain, &cuts).unwrap();
        let fast = extend_vertex(&hinted, &cuts).unwrap();
        assert_eq!((full.lo(), full.hi()), (fast.lo(), fast.hi()));

        let bad_hint =
            BoxFunction::new(2, |v| v[0] + v[1]).with_monotonicity(vec![Monotonicity::Increasing]);
        assert!(bad_hint.is_err());
    }

    #[test]
    fn grid_square_function() {
        // oracle: image of x² on [−1,2] is [0,4]; the lattice hits 0
        // and 2 exactly at density 301
        let square = BoxFunction::new(1, |v| v[0] * v[0]);
        let image = extend_grid(&square, &[iv(-1.0, 2.0)], 301).unwrap();
        assert!((image.lo() - 0.0).abs() <= 1e-2);
        assert!((image.hi() - 4.0).abs() <= 1e-2);
    }

    #[test]
    fn grid_samples_endpoints_exactly() {
        let id = BoxFunction::new(1, |v| v[0]);
        let image = extend_grid(&id, &[iv(2.0, 5.0)], 7).unwrap();
        assert_eq!((image.lo(), image.hi()), (2.0, 5.0));

        let add = BoxFunction::new(2, |v| v[0] + v[1]);
        let image = extend_grid(&add, &[iv(0.0, 1.0), iv(0.0, 1.0)], 4).unwrap();
        assert_eq!((image.lo(), image.hi()), (0.0, 2.0));
    }

    #[test]
    fn grid_rejects_degenerate_density() {
        let id = BoxFunction::new(1, |v| v[0]);
        assert!(matches!(
            extend_grid(&id, &[iv(0.0, 1.0)], 1),
            Err(Error::InvalidDensity(1))
        ));
    }

    #[test]
    fn grid_agrees_with_vertex_for_multiaffine() {
        let f = BoxFunction::new(2, |v| 3.0 * v[0] * v[1] - v[0] + 0.5);
        let cuts = [iv(-1.0, 2.0), iv(0.5, 4.0)];
        let by_vertex = extend_vertex(&f, &cuts).unwrap();
        let by_grid = extend_grid(&f, &cuts, 2).unwrap();
        assert_eq!(
            (by_vertex.lo(), by_vertex.hi()),
            (by_grid.lo(), by_grid.hi())
        );
    }

    #[test]
    fn sample_budget_is_enforced() {
        let f = BoxFunction::new(30, |_| 0.0);
        let cuts = vec![iv(0.0, 1.0); 30];
        assert!(matches!(
            extend_vertex(&f, &cuts),
            Err(Error::TooManySamples { .. })
        ));
        let g = BoxFunction::new(6, |_| 0.0);
        let cuts = vec![iv(0.0, 1.0); 6];
        assert!(matches!(
            extend_grid(&g, &cuts, 100),
            Err(Error::TooManySamples { .. })
        ));
    }

    #[test]
    fn non_finite_evaluations_are_rejected() {
        let f = BoxFunction::new(1, |v| 1.0 / v[0]);
        assert!(matches!(
            extend_vertex(&f, &[iv(0.0, 1.0)]),
            Err(Error::NonFiniteValue)
        ));
    }

    #[test]
    fn fuzzy_identity_is_exact() {
        let f = Trapezoid::new(0.0, 1.0, 1.0, 3.0)
            .unwrap()
            .sample(&LevelGrid::default());
        let id = BoxFunction::new(1, |v| v[0]);
        let extended = extend_fuzzy(&id, std::slice::from_ref(&f), ExtensionMode::Vertex).unwrap();
        assert_eq!(extended, f);
    }

    #[test]
    fn fuzzy_addition_matches_minkowski() {
        let grid = LevelGrid::default();
        let f = Trapezoid::new(0.0, 1.0, 1.0, 3.0).unwrap().sample(&grid);
        let g = Trapezoid::new(-2.0, 0.5, 0.5, 2.0).unwrap().sample(&grid);
        let add = BoxFunction::new(2, |v| v[0] + v[1]);
        let extended = extend_fuzzy(&add, &[f.clone(), g.clone()], ExtensionMode::Vertex).unwrap();
        let classical = f.minkowski_add(&g);
        assert!(extended.hausdorff(&classical) <= 1e-12);
    }

    #[test]
    fn fuzzy_composite_matches_cross_plus_add() {
        // the composite ā·x + x̄·y − ā·x̄ + z applied to (X, A, B)
        // against cross_product(A, X) + B, levelwise
        let grid = LevelGrid::default();
        let a = Trapezoid::new(0.0, 1.0, 1.0, 3.0).unwrap().sample(&grid);
        let x = Trapezoid::new(1.0, 2.0, 2.0, 4.0).unwrap().sample(&grid);
        let b = Trapezoid::new(-1.0, 0.0, 0.0, 1.0).unwrap().sample(&grid);
        let (abar, xbar) = (a.singleton_core().unwrap(), x.singleton_core().unwrap());
        let composite =
            BoxFunction::new(3, move |v| abar * v[0] + xbar * v[1] - abar * xbar + v[2]);
        let extended = extend_fuzzy(
            &composite,
            &[x.clone(), a.clone(), b.clone()],
            ExtensionMode::Vertex,
        )
        .unwrap();
        let classical = a.cross_product(&x).unwrap().minkowski_add(&b);
        assert!(extended.hausdorff(&classical) <= 1e-12);
    }

    #[test]
    fn inclusion_monotonicity() {
        let f = BoxFunction::new(2, |v| v[0] * v[1] + v[1]);
        let outer = extend_vertex(&f, &[iv(-2.0, 3.0), iv(-1.0, 4.0)]).unwrap();
        let inner = extend_vertex(&f, &[iv(-1.0, 2.0), iv(0.0, 2.0)]).unwrap();
        assert!(outer.contains_interval(&inner));
    }
}
