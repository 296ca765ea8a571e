//! The affine map `X ↦ A ⊙ X + B` on ring elements, its inverse, and
//! the exact solver for `A ⊙ X + B = C`.
//!
//! When the core of `A` is nonzero the map is a bijection and the
//! unique solution is `A⁻¹ ⊙ (C − B)`. When the core of `A` vanishes,
//! `A ⊙ X` collapses to `core(X)·A`, so the reduced right-hand side
//! must be a real multiple of `A`: either every element with the
//! matching core solves the equation (a one-constraint family) or no
//! element does. The solver returns the branch as a value — an
//! unsolvable equation is a result, not an error.

use crate::error::{Error, Result};
use crate::grid::LevelGrid;
use crate::interval::Interval;
use crate::sli::SVector;
use crate::{RESIDUAL_TOL, SINGLETON_TOL};

/// `A ⊙ X + B` over a shared basis.
pub fn apply_linear(a: &SVector, b: &SVector, x: &SVector) -> Result<SVector> {
    a.cross_psi(x)?.add_psi(b)
}

/// Inverse of the affine map: `A⁻¹ ⊙ Y − A⁻¹ ⊙ B`, defined when the
/// core of `A` is nonzero.
pub fn apply_inverse(a: &SVector, b: &SVector, y: &SVector) -> Result<SVector> {
    let inv = a.inv_psi()?;
    inv.cross_psi(y)?.sub_psi(&inv.cross_psi(b)?)
}

/// The equation `A ⊙ X + B = C` over one shared basis.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearEquation {
    a: SVector,
    b: SVector,
    c: SVector,
}

impl LinearEquation {
    pub fn new(a: SVector, b: SVector, c: SVector) -> Result<Self> {
        if !a.same_basis(&b) || !a.same_basis(&c) {
            return Err(Error::BasisMismatch);
        }
        Ok(Self { a, b, c })
    }

    pub fn a(&self) -> &SVector {
        &self.a
    }

    pub fn b(&self) -> &SVector {
        &self.b
    }

    pub fn c(&self) -> &SVector {
        &self.c
    }

    /// Solve for `X`.
    ///
    /// The branch is decided by the core of `A`: a nonzero core gives
    /// the unique solution, a zero core reduces the equation to
    /// `core(X)·A = C − B` and yields either a solution family or an
    /// inconsistency report.
    pub fn solve(&self) -> Solution {
        let reduced = self.c.sub_psi(&self.b).expect("validated shared basis");
        if self.a.core_value().abs() > SINGLETON_TOL {
            let value = self
                .a
                .inv_psi()
                .expect("core checked nonzero")
                .cross_psi(&reduced)
                .expect("validated shared basis");
            let verified = apply_linear(&self.a, &self.b, &value).expect("validated shared basis");
            let residual = coord_distance(&verified, &self.c);
            return Solution::Unique { value, residual };
        }

        // Degenerate branch: A ⊙ X = core(X)·A, so C − B must be a
        // real multiple of A. Fit the multiplier by least squares and
        // accept only if it reproduces the coordinates. An all-zero A
        // admits solutions only for C = B, and then every element
        // solves the equation; 0 is reported as the canonical core.
        let qa = self.a.coords();
        let qr = reduced.coords();
        let denom: f64 = qa.iter().map(|v| v * v).sum();
        let core = if denom > 0.0 {
            qa.iter().zip(qr).map(|(a, r)| a * r).sum::<f64>() / denom
        } else {
            0.0
        };
        let residual = qa
            .iter()
            .zip(qr)
            .map(|(a, r)| (r - core * a).abs())
            .fold(0.0, f64::max);
        if residual <= RESIDUAL_TOL {
            let representative = SVector::crisp(self.a.basis().clone(), core);
            Solution::Family {
                core,
                representative,
                residual,
            }
        } else {
            Solution::Inconsistent { residual }
        }
    }
}

/// Max-norm distance between coordinate vectors over one basis.
fn coord_distance(v: &SVector, w: &SVector) -> f64 {
    v.coords()
        .iter()
        .zip(w.coords())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

/// Result of [`LinearEquation::solve`].
#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    /// The single solution, with the coordinate max-norm residual of
    /// re-substituting it into the equation.
    Unique { value: SVector, residual: f64 },
    /// Zero-core branch with a consistent right-hand side: exactly the
    /// elements whose core equals `core` solve the equation, a
    /// hyperplane of coordinate vectors. The crisp embedding of that
    /// core is returned as the canonical representative.
    Family {
        core: f64,
        representative: SVector,
        residual: f64,
    },
    /// Zero-core branch whose right-hand side is not a real multiple
    /// of `A`; `residual` is the best-fit coordinate miss.
    Inconsistent { residual: f64 },
}

impl Solution {
    pub fn kind(&self) -> &'static str {
        match self {
            Solution::Unique { .. } => "unique",
            Solution::Family { .. } => "family",
            Solution::Inconsistent { .. } => "inconsistent",
        }
    }

    pub fn residual(&self) -> f64 {
        match self {
            Solution::Unique { residual, .. }
            | Solution::Family { residual, .. }
            | Solution::Inconsistent { residual } => *residual,
        }
    }
}

/// One level of the interval form of `A ⊙ X = B̄`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelResidual {
    pub alpha: f64,
    pub lhs: Interval,
    pub rhs: Interval,
    pub deviation: f64,
}

/// Per-level comparison of `Σᵢ (x̄aᵢ + āxᵢ)[Aᵢ]_α − āx̄` against the
/// cut of the realized right-hand side.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelwiseReport {
    pub levels: Vec<LevelResidual>,
    pub max_deviation: f64,
}

/// Expand `A ⊙ X = B̄` into interval equations on the given grid and
/// report the endpoint deviation at every level.
///
/// The left-hand side is evaluated coefficient-wise: with `aᵢ`, `xᵢ`
/// the coordinates and `ā`, `x̄` the cores of `A` and `X`, the cut at
/// level α is `Σᵢ (x̄aᵢ + āxᵢ)[Aᵢ]_α − āx̄`. For coordinates solving
/// the equation the deviation vanishes up to rounding at every level.
pub fn levelwise_system(
    a: &SVector,
    x: &SVector,
    bbar: &SVector,
    grid: &LevelGrid,
) -> Result<LevelwiseReport> {
    if !a.same_basis(x) || !a.same_basis(bbar) {
        return Err(Error::BasisMismatch);
    }
    let abar = a.core_value();
    let xbar = x.core_value();
    let coefficients: Vec<f64> = a
        .coords()
        .iter()
        .zip(x.coords())
        .map(|(ai, xi)| xbar * ai + abar * xi)
        .collect();
    let rhs_realized = bbar.realize();
    let elements = a.basis().elements();

    let mut levels = Vec::with_capacity(grid.len());
    let mut max_deviation = 0.0f64;
    for &alpha in grid.levels() {
        let mut lhs = Interval::singleton(0.0);
        for (coeff, elem) in coefficients.iter().zip(elements) {
            lhs = lhs.add(&elem.alpha_cut(alpha)?.scale(*coeff));
        }
        let lhs = lhs.shift(-(abar * xbar));
        let rhs = rhs_realized.alpha_cut(alpha)?;
        let deviation = lhs.endpoint_distance(&rhs);
        max_deviation = max_deviation.max(deviation);
        levels.push(LevelResidual {
            alpha,
            lhs,
            rhs,
            deviation,
        });
    }
    Ok(LevelwiseReport {
        levels,
        max_deviation,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fuzzy::Trapezoid;
    use crate::sli::SliBasis;

    fn basis() -> Arc<SliBasis> {
        let generator = Trapezoid::new(0.0, 1.0, 1.0, 3.0).unwrap();
        Arc::new(SliBasis::power_basis(generator, 2, &LevelGrid::default(), 1e-8).unwrap())
    }

    fn vec2(basis: &Arc<SliBasis>, q0: f64, q1: f64) -> SVector {
        SVector::new(Arc::clone(basis), vec![q0, q1]).unwrap()
    }

    #[test]
    fn apply_linear_examples() {
        let basis = basis();
        let one = SVector::crisp(Arc::clone(&basis), 1.0);
        let zero = SVector::zero(Arc::clone(&basis));
        let x = vec2(&basis, 2.0, 3.0);
        assert_eq!(apply_linear(&one, &zero, &x).unwrap(), x);

        // oracle: cross then add on the worked coordinates
        let a = vec2(&basis, 1.0, 1.0);
        let solution = vec2(&basis, 2.25, 0.25);
        let image = apply_linear(&a, &zero, &solution).unwrap();
        assert_eq!(image.coords(), &[2.0, 3.0]);

        let b = vec2(&basis, -1.0, 4.0);
        assert_eq!(apply_linear(&a, &b, &zero).unwrap(), b);
    }

    #[test]
    fn apply_inverse_examples() {
        let basis = basis();
        let a = SVector::crisp(Arc::clone(&basis), 2.0);
        let b = SVector::crisp(Arc::clone(&basis), 1.0);
        let y = SVector::crisp(Arc::clone(&basis), 7.0);
        assert_eq!(
            apply_inverse(&a, &b, &y).unwrap(),
            SVector::crisp(Arc::clone(&basis), 3.0)
        );
        assert_eq!(
            apply_inverse(&a, &b, &b).unwrap(),
            SVector::zero(Arc::clone(&basis))
        );

        let a = vec2(&basis, 1.0, 1.0);
        let b = vec2(&basis, 0.5, -2.0);
        let x = vec2(&basis, 2.0, 3.0);
        let round_trip = apply_inverse(&a, &b, &apply_linear(&a, &b, &x).unwrap()).unwrap();
        for (got, want) in round_trip.coords().iter().zip(x.coords()) {
            assert!((got - want).abs() <= 1e-9);
        }

        let degenerate = vec2(&basis, -1.0, 1.0);
        assert!(matches!(
            apply_inverse(&degenerate, &b, &x),
            Err(Error::NoInverse { .. })
        ));
    }

    #[test]
    fn solve_unique_worked_instance() {
        let basis = basis();
        let eq = LinearEquation::new(
            vec2(&basis, 1.0, 1.0),
            SVector::zero(Arc::clone(&basis)),
            vec2(&basis, 2.0, 3.0),
        )
        .unwrap();
        match eq.solve() {
            Solution::Unique { value, residual } => {
                assert_eq!(value.coords(), &[2.25, 0.25]);
                assert_eq!(value.core_value(), 2.5);
                assert!(residual <= 1e-9);
            }
            other => panic!("expected the unique branch, got {other:?}"),
        }
    }

    #[test]
    fn solve_with_crisp_coefficient_subtracts() {
        let basis = basis();
        let eq = LinearEquation::new(
            SVector::crisp(Arc::clone(&basis), 1.0),
            vec2(&basis, 1.0, 2.0),
            vec2(&basis, 4.0, 7.0),
        )
        .unwrap();
        match eq.solve() {
            Solution::Unique { value, .. } => assert_eq!(value.coords(), &[3.0, 5.0]),
            other => panic!("expected the unique branch, got {other:?}"),
        }
    }

    #[test]
    fn solve_family_branch() {
        let basis = basis();
        let a = vec2(&basis, -1.0, 1.0);
        assert_eq!(a.core_value(), 0.0);
        let eq = LinearEquation::new(
            a.clone(),
            SVector::zero(Arc::clone(&basis)),
            a.scalar_psi(2.0),
        )
        .unwrap();
        match eq.solve() {
            Solution::Family {
                core,
                representative,
                residual,
            } => {
                assert_eq!(core, 2.0);
                assert_eq!(representative.core_value(), 2.0);
                assert!(residual <= 1e-9);
                // any element with the right core verifies in coordinates
                let x = vec2(&basis, 1.0, 1.0);
                assert_eq!(x.core_value(), 2.0);
                let lhs = a.cross_psi(&x).unwrap();
                assert_eq!(lhs.coords(), a.scalar_psi(2.0).coords());
            }
            other => panic!("expected the family branch, got {other:?}"),
        }
    }

    #[test]
    fn solve_inconsistent_branch() {
        let basis = basis();
        let eq = LinearEquation::new(
            vec2(&basis, -1.0, 1.0),
            SVector::zero(Arc::clone(&basis)),
            SVector::crisp(Arc::clone(&basis), 1.0),
        )
        .unwrap();
        assert!(matches!(eq.solve(), Solution::Inconsistent { .. }));
    }

    #[test]
    fn solve_all_zero_coefficient() {
        let basis = basis();
        let zero = SVector::zero(Arc::clone(&basis));
        let solvable = LinearEquation::new(zero.clone(), zero.clone(), zero.clone());
        match solvable.unwrap().solve() {
            Solution::Family { core, .. } => assert_eq!(core, 0.0),
            other => panic!("expected the family branch, got {other:?}"),
        }
        let unsolvable = LinearEquation::new(
            zero.clone(),
            zero.clone(),
            SVector::crisp(Arc::clone(&basis), 1.0),
        );
        assert!(matches!(
            unsolvable.unwrap().solve(),
            Solution::Inconsistent { .. }
        ));
    }

    #[test]
    fn shifted_and_reduced_forms_agree() {
        let basis = basis();
        let a = vec2(&basis, 1.0, 1.0);
        let b = vec2(&basis, 0.5, -1.0);
        let c = vec2(&basis, 2.0, 3.0);
        let zero = SVector::zero(Arc::clone(&basis));
        let direct = LinearEquation::new(a.clone(), b.clone(), c.clone())
            .unwrap()
            .solve();
        let reduced = LinearEquation::new(a, zero, c.sub_psi(&b).unwrap())
            .unwrap()
            .solve();
        match (direct, reduced) {
            (Solution::Unique { value: x1, .. }, Solution::Unique { value: x2, .. }) => {
                assert_eq!(x1.coords(), x2.coords())
            }
            other => panic!("expected two unique branches, got {other:?}"),
        }
    }

    #[test]
    fn mismatched_bases_are_rejected() {
        let basis_a = basis();
        let basis_b = Arc::new(
            SliBasis::power_basis(
                Trapezoid::new(0.0, 2.0, 2.0, 3.0).unwrap(),
                2,
                &LevelGrid::default(),
                1e-8,
            )
            .unwrap(),
        );
        let a = vec2(&basis_a, 1.0, 1.0);
        let foreign = vec2(&basis_b, 1.0, 1.0);
        assert!(matches!(
            LinearEquation::new(a.clone(), foreign.clone(), a.clone()),
            Err(Error::BasisMismatch)
        ));
        assert!(matches!(
            levelwise_system(&a, &foreign, &a, &LevelGrid::default()),
            Err(Error::BasisMismatch)
        ));
    }

    #[test]
    fn levelwise_report_on_the_solved_instance() {
        let basis = basis();
        let a = vec2(&basis, 1.0, 1.0);
        let c = vec2(&basis, 2.0, 3.0);
        let x = vec2(&basis, 2.25, 0.25);
        let report = levelwise_system(&a, &x, &c, basis.grid()).unwrap();
        assert_eq!(report.levels.len(), 101);
        assert!(report.max_deviation <= 1e-9);
    }

    #[test]
    fn levelwise_report_zero_case() {
        let basis = basis();
        let a = vec2(&basis, 1.0, 1.0);
        let zero = SVector::zero(Arc::clone(&basis));
        let report = levelwise_system(&a, &zero, &zero, basis.grid()).unwrap();
        assert_eq!(report.max_deviation, 0.0);
    }

    #[test]
    fn levelwise_report_detects_a_unit_perturbation() {
        let basis = basis();
        let a = SVector::crisp(Arc::clone(&basis), 1.0);
        let x = vec2(&basis, 2.0, 3.0);
        let bbar = a.cross_psi(&x).unwrap();
        let clean = levelwise_system(&a, &x, &bbar, basis.grid()).unwrap();
        assert!(clean.max_deviation <= 1e-12);

        let perturbed = vec2(&basis, 3.0, 3.0);
        let report = levelwise_system(&a, &perturbed, &bbar, basis.grid()).unwrap();
        for level in &report.levels {
            assert!((level.deviation - 1.0).abs() <= 1e-12);
        }
    }
}
