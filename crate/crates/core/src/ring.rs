//! Coordinate arithmetic of the ring: addition, subtraction, scalar
//! multiples, the cross product, inverses and division.
//!
//! All operations act on [`SVector`] coordinates only and are exact up
//! to floating-point rounding; the fuzzy realizations are produced on
//! demand via [`SVector::realize`]. Addition is coordinatewise. The
//! cross product of elements with cores `b` and `c` is `c·B + b·C − bc`,
//! which stays inside the span and reduces to real multiplication on
//! crisp elements, and the inverse is the unique element whose cross
//! product with the original is crisp 1.

use crate::error::{Error, Result};
use crate::sli::SVector;
use crate::SINGLETON_TOL;

impl SVector {
    fn check_same_basis(&self, other: &SVector) -> Result<()> {
        if self.same_basis(other) {
            Ok(())
        } else {
            Err(Error::BasisMismatch)
        }
    }

    fn with_coords(&self, coords: Vec<f64>) -> SVector {
        SVector::new(self.basis().clone(), coords)
            .expect("derived coordinates keep the basis length")
    }

    /// Coordinatewise sum.
    pub fn add_psi(&self, other: &SVector) -> Result<SVector> {
        self.check_same_basis(other)?;
        let coords = self
            .coords()
            .iter()
            .zip(other.coords())
            .map(|(q, p)| q + p)
            .collect();
        Ok(self.with_coords(coords))
    }

    /// Coordinatewise difference.
    pub fn sub_psi(&self, other: &SVector) -> Result<SVector> {
        self.check_same_basis(other)?;
        let coords = self
            .coords()
            .iter()
            .zip(other.coords())
            .map(|(q, p)| q - p)
            .collect();
        Ok(self.with_coords(coords))
    }

    /// Coordinatewise scaling; commutes with fuzzy scalar
    /// multiplication of the realization at every level.
    pub fn scalar_psi(&self, lambda: f64) -> SVector {
        self.with_coords(self.coords().iter().map(|q| lambda * q).collect())
    }

    /// Cross product: with cores `b` and `c`, the coordinates are
    /// `c·q + b·p` with `b·c` subtracted from the leading entry. The
    /// core of the product is `b·c`.
    pub fn cross_psi(&self, other: &SVector) -> Result<SVector> {
        self.check_same_basis(other)?;
        let b = self.core_value();
        let c = other.core_value();
        let mut coords: Vec<f64> = self
            .coords()
            .iter()
            .zip(other.coords())
            .map(|(q, p)| c * q + b * p)
            .collect();
        coords[0] -= b * c;
        Ok(self.with_coords(coords))
    }

    /// Multiplicative inverse: for core `c ≠ 0` the coordinates are
    /// `(2/c − q₁/c², −q₂/c², …, −qₙ/c²)`, the unique element whose
    /// cross product with `self` is crisp 1.
    pub fn inv_psi(&self) -> Result<SVector> {
        let c = self.core_value();
        if c.abs() <= SINGLETON_TOL {
            return Err(Error::NoInverse { core: c });
        }
        let c2 = c * c;
        let mut coords: Vec<f64> = self.coords().iter().map(|q| -(q / c2)).collect();
        coords[0] += 2.0 / c;
        Ok(self.with_coords(coords))
    }

    /// Division: cross product with the inverse of `other`.
    pub fn div_psi(&self, other: &SVector) -> Result<SVector> {
        self.cross_psi(&other.inv_psi()?)
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fuzzy::Trapezoid;
    use crate::grid::LevelGrid;
    use crate::sli::SliBasis;

    fn basis() -> Arc<SliBasis> {
        let generator = Trapezoid::new(0.0, 1.0, 1.0, 3.0).unwrap();
        Arc::new(SliBasis::power_basis(generator, 2, &LevelGrid::default(), 1e-8).unwrap())
    }

    fn vec2(basis: &Arc<SliBasis>, q0: f64, q1: f64) -> SVector {
        SVector::new(Arc::clone(basis), vec![q0, q1]).unwrap()
    }

    #[test]
    fn addition_and_subtraction() {
        let basis = basis();
        let b = vec2(&basis, 2.0, 3.0);
        let c = vec2(&basis, 1.0, 1.0);
        assert_eq!(b.add_psi(&c).unwrap().coords(), &[3.0, 4.0]);
        assert_eq!(b.sub_psi(&b).unwrap(), SVector::zero(Arc::clone(&basis)));
        let zero = SVector::zero(Arc::clone(&basis));
        assert_eq!(b.add_psi(&zero).unwrap(), b);
    }

    #[test]
    fn scalar_scaling() {
        let basis = basis();
        let b = vec2(&basis, 2.0, 3.0);
        assert_eq!(b.scalar_psi(0.0), SVector::zero(Arc::clone(&basis)));
        assert_eq!(b.scalar_psi(-1.0).coords(), &[-2.0, -3.0]);

        // scaling coordinates and scaling the realization agree
        let v = vec2(&basis, 1.0, 1.0);
        let scaled = v.scalar_psi(2.0).realize();
        let support = scaled.alpha_cut(0.0).unwrap();
        assert_eq!((support.lo(), support.hi()), (2.0, 8.0));
        assert_eq!(scaled, v.realize().scalar_mul(2.0));
    }

    #[test]
    fn cross_product_examples() {
        let basis = basis();
        let two = SVector::crisp(Arc::clone(&basis), 2.0);
        let three = SVector::crisp(Arc::clone(&basis), 3.0);
        let six = two.cross_psi(&three).unwrap();
        assert_eq!(six, SVector::crisp(Arc::clone(&basis), 6.0));

        // oracle: cores are 5 and 2, so 2·(2,3) + 5·(1,1) − 10·e₁
        let b = vec2(&basis, 2.0, 3.0);
        let c = vec2(&basis, 1.0, 1.0);
        let product = b.cross_psi(&c).unwrap();
        assert_eq!(product.coords(), &[-1.0, 11.0]);
        assert_eq!(product.core_value(), 10.0);

        let one = SVector::crisp(Arc::clone(&basis), 1.0);
        assert_eq!(b.cross_psi(&one).unwrap(), b);
        assert_eq!(
            b.cross_psi(&c).unwrap().coords(),
            c.cross_psi(&b).unwrap().coords()
        );
    }

    #[test]
    fn inverse_examples() {
        let basis = basis();
        let crisp = SVector::crisp(Arc::clone(&basis), 2.0);
        assert_eq!(
            crisp.inv_psi().unwrap(),
            SVector::crisp(Arc::clone(&basis), 0.5)
        );

        // oracle: core 2, so (2/2 − 1/4, −1/4)
        let c = vec2(&basis, 1.0, 1.0);
        let inv = c.inv_psi().unwrap();
        assert_eq!(inv.coords(), &[0.75, -0.25]);
        assert_eq!(inv.core_value(), 0.5);

        let law = c.cross_psi(&inv).unwrap();
        assert_eq!(law.coords(), &[1.0, 0.0]);

        let degenerate = vec2(&basis, -1.0, 1.0);
        assert!(matches!(degenerate.inv_psi(), Err(Error::NoInverse { .. })));
    }

    #[test]
    fn division_examples() {
        let basis = basis();
        let six = SVector::crisp(Arc::clone(&basis), 6.0);
        let two = SVector::crisp(Arc::clone(&basis), 2.0);
        assert_eq!(
            six.div_psi(&two).unwrap(),
            SVector::crisp(Arc::clone(&basis), 3.0)
        );

        // dyadic coordinates make the self-division exact
        let b = vec2(&basis, 2.0, 2.0);
        assert_eq!(
            b.div_psi(&b).unwrap(),
            SVector::crisp(Arc::clone(&basis), 1.0)
        );

        let c = vec2(&basis, 2.0, 3.0);
        let quotient = c.div_psi(&c).unwrap();
        assert!((quotient.coords()[0] - 1.0).abs() <= 1e-12);
        assert!(quotient.coords()[1].abs() <= 1e-12);

        let one = SVector::crisp(Arc::clone(&basis), 1.0);
        assert_eq!(c.div_psi(&one).unwrap(), c);
    }

    #[test]
    fn core_is_a_ring_homomorphism() {
        let basis = basis();
        let b = vec2(&basis, 2.0, 3.0);
        let c = vec2(&basis, -1.0, 4.0);
        let sum = b.add_psi(&c).unwrap();
        assert_eq!(sum.core_value(), b.core_value() + c.core_value());
        let product = b.cross_psi(&c).unwrap();
        assert_eq!(product.core_value(), b.core_value() * c.core_value());
    }

    #[test]
    fn mismatched_bases_are_rejected() {
        let basis_a = basis();
        let other_gen = Trapezoid::new(0.0, 2.0, 2.0, 3.0).unwrap();
        let basis_b =
            Arc::new(SliBasis::power_basis(other_gen, 2, &LevelGrid::default(), 1e-8).unwrap());
        let b = vec2(&basis_a, 1.0, 1.0);
        let c = vec2(&basis_b, 1.0, 1.0);
        assert!(matches!(b.add_psi(&c), Err(Error::BasisMismatch)));
        assert!(matches!(b.cross_psi(&c), Err(Error::BasisMismatch)));

        // a structurally equal basis in a fresh allocation is accepted
        let clone = Arc::new(
            SliBasis::power_basis(
                Trapezoid::new(0.0, 1.0, 1.0, 3.0).unwrap(),
                2,
                &LevelGrid::default(),
                1e-8,
            )
            .unwrap(),
        );
        let d = vec2(&clone, 4.0, 5.0);
        assert!(b.add_psi(&d).is_ok());
    }

    #[test]
    fn product_realization_matches_fuzzy_cross_product() {
        // sign-compatible coordinates: the interval combination
        // collapses and both routes agree
        let basis = basis();
        let b = vec2(&basis, 2.0, 3.0);
        let c = vec2(&basis, 1.0, 1.0);
        let by_coords = b.cross_psi(&c).unwrap().realize();
        let by_cuts = b.realize().cross_product(&c.realize()).unwrap();
        assert!(by_coords.hausdorff(&by_cuts) <= 1e-9);
    }
}
