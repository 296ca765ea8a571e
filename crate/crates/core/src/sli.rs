//! Bases of symmetrically linearly independent (SLI) fuzzy numbers and
//! the coordinate representation they induce.
//!
//! A family `{A₁, …, Aₙ}` with `A₁ = 1` is SLI when the only real
//! combination `q₁A₁ + … + qₙAₙ` that is symmetric about zero is the
//! trivial one. A combination is symmetric about zero exactly when all
//! its cut midpoints vanish, and the midpoint of a combination is the
//! same combination of the elements' midpoints. On a level grid the
//! property therefore reduces to linear independence of the columns of
//! the *midpoint matrix* (one row per level, one column per element),
//! which is decided numerically through its smallest singular value.
//!
//! A certified [`SliBasis`] identifies each fuzzy number in its span
//! with a unique coordinate vector ([`SVector`]); [`SVector::realize`]
//! and [`SliBasis::recover`] convert between the two representations.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::fuzzy::{FuzzyNumber, Trapezoid};
use crate::grid::LevelGrid;
use crate::interval::Interval;
use crate::SINGLETON_TOL;

/// Numeric evidence that a family of fuzzy numbers is SLI on its grid.
///
/// The family is accepted when the smallest singular value of the
/// midpoint matrix exceeds `relative_threshold` times the largest
/// absolute matrix entry. Both the singular value and the resolved
/// absolute cutoff are kept so the decision can be audited.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SliCertificate {
    pub smallest_singular_value: f64,
    pub relative_threshold: f64,
    pub absolute_threshold: f64,
}

impl SliCertificate {
    pub fn accepted(&self) -> bool {
        self.smallest_singular_value > self.absolute_threshold
    }
}

/// Certificate for an arbitrary family of singleton-core fuzzy numbers,
/// aligned onto the union of their grids first.
pub fn verify_sli(elements: &[FuzzyNumber], threshold: f64) -> Result<SliCertificate> {
    if elements.is_empty() {
        return Err(Error::EmptyBasis);
    }
    let grid = elements
        .iter()
        .skip(1)
        .fold(elements[0].grid().clone(), |acc, e| acc.union(e.grid()));
    let aligned: Vec<FuzzyNumber> = elements.iter().map(|e| e.resample(&grid)).collect();
    Ok(certify(&aligned, &grid, threshold).1)
}

fn certify(
    elements: &[FuzzyNumber],
    grid: &LevelGrid,
    threshold: f64,
) -> (DMatrix<f64>, SliCertificate) {
    let matrix = DMatrix::from_fn(grid.len(), elements.len(), |k, i| {
        let cut = elements[i].level_cut(k);
        (cut.lo() + cut.hi()) / 2.0
    });
    // Fewer rows than columns means the columns cannot be independent,
    // which the truncated singular spectrum would not reveal.
    let smallest = if matrix.nrows() < matrix.ncols() {
        0.0
    } else {
        matrix
            .clone()
            .svd(false, false)
            .singular_values
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min)
    };
    let scale = matrix.iter().cloned().fold(0.0f64, |m, v| m.max(v.abs()));
    let certificate = SliCertificate {
        smallest_singular_value: smallest,
        relative_threshold: threshold,
        absolute_threshold: threshold * scale,
    };
    (matrix, certificate)
}

/// A certified SLI basis `{1, A₂, …, Aₙ}` over a fixed level grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SliBasis {
    elements: Vec<FuzzyNumber>,
    cores: Vec<f64>,
    midpoint_matrix: DMatrix<f64>,
    certificate: SliCertificate,
    grid: LevelGrid,
    generator: Option<Trapezoid>,
}

impl SliBasis {
    /// Power basis `{1, A, A², …, A^(n−1)}` from a singleton-core,
    /// non-symmetric trapezoidal generator, built with power hedges and
    /// certified before use.
    pub fn power_basis(
        generator: Trapezoid,
        n: usize,
        grid: &LevelGrid,
        threshold: f64,
    ) -> Result<SliBasis> {
        if n < 2 {
            return Err(Error::BasisTooSmall(n));
        }
        let sampled = generator.sample(grid);
        sampled.singleton_core()?;
        if let Some(center) = sampled.symmetry_center(SINGLETON_TOL) {
            return Err(Error::SymmetricGenerator { center });
        }
        let mut elements = Vec::with_capacity(n);
        elements.push(FuzzyNumber::crisp(1.0, grid));
        for i in 1..n {
            elements.push(sampled.power_hedge(i as u32)?);
        }
        Self::assemble(elements, grid.clone(), threshold, Some(generator))
    }

    /// Basis from explicit elements; the first must be crisp 1 and all
    /// must have singleton cores. Elements are aligned onto the union
    /// of their grids.
    pub fn from_elements(elements: Vec<FuzzyNumber>, threshold: f64) -> Result<SliBasis> {
        let first = elements.first().ok_or(Error::EmptyBasis)?;
        let grid = elements
            .iter()
            .skip(1)
            .fold(first.grid().clone(), |acc, e| acc.union(e.grid()));
        let one = FuzzyNumber::crisp(1.0, &grid);
        let aligned: Vec<FuzzyNumber> = elements.iter().map(|e| e.resample(&grid)).collect();
        let deviation = aligned[0].hausdorff(&one);
        if deviation > SINGLETON_TOL {
            return Err(Error::LeadingElementNotOne { deviation });
        }
        Self::assemble(aligned, grid, threshold, None)
    }

    fn assemble(
        elements: Vec<FuzzyNumber>,
        grid: LevelGrid,
        threshold: f64,
        generator: Option<Trapezoid>,
    ) -> Result<SliBasis> {
        let cores = elements
            .iter()
            .map(FuzzyNumber::singleton_core)
            .collect::<Result<Vec<f64>>>()?;
        let (midpoint_matrix, certificate) = certify(&elements, &grid, threshold);
        if !certificate.accepted() {
            return Err(Error::SliRejected {
                sigma_min: certificate.smallest_singular_value,
                threshold: certificate.absolute_threshold,
            });
        }
        Ok(SliBasis {
            elements,
            cores,
            midpoint_matrix,
            certificate,
            grid,
            generator,
        })
    }

    /// Number of basis elements.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> &[FuzzyNumber] {
        &self.elements
    }

    /// Core of each element; the leading entry is always 1.
    pub fn cores(&self) -> &[f64] {
        &self.cores
    }

    pub fn grid(&self) -> &LevelGrid {
        &self.grid
    }

    pub fn certificate(&self) -> &SliCertificate {
        &self.certificate
    }

    /// The trapezoid the basis was generated from, when built as a
    /// power basis.
    pub fn generator(&self) -> Option<&Trapezoid> {
        self.generator.as_ref()
    }

    /// Cut-midpoint matrix: one row per grid level, one column per
    /// basis element.
    pub fn midpoint_matrix(&self) -> &DMatrix<f64> {
        &self.midpoint_matrix
    }

    /// Coordinates of `f` in the basis, if `f` lies in its span.
    ///
    /// The cut midpoints of a combination depend linearly on the
    /// coordinates whatever their signs, so the coordinates are fitted
    /// to the midpoints by least squares and the candidate is accepted
    /// only if realizing it reproduces `f` within Hausdorff distance
    /// `tol`.
    pub fn recover(basis: &Arc<SliBasis>, f: &FuzzyNumber, tol: f64) -> Recovery {
        let resampled = f.resample(&basis.grid);
        let target = DVector::from_iterator(basis.grid.len(), resampled.midpoints());
        let coords = basis
            .midpoint_matrix
            .clone()
            .svd(true, true)
            .solve(&target, 1e-15)
            .expect("SVD decomposed with both factor sets");
        let vector = SVector::new(Arc::clone(basis), coords.iter().cloned().collect())
            .expect("fitted coordinate count matches the basis");
        let residual = vector.realize().hausdorff(&resampled);
        if residual <= tol {
            Recovery::Representable { vector, residual }
        } else {
            Recovery::NotRepresentable { residual }
        }
    }
}

/// Outcome of [`SliBasis::recover`]: either coordinates whose
/// realization matches the input within tolerance, or the distance by
/// which the best candidate missed.
#[derive(Debug, Clone)]
pub enum Recovery {
    Representable { vector: SVector, residual: f64 },
    NotRepresentable { residual: f64 },
}

/// Coordinates `(q₁, …, qₙ)` of a fuzzy number in a shared SLI basis:
/// the element `q₁ + q₂A₂ + … + qₙAₙ`.
#[derive(Debug, Clone)]
pub struct SVector {
    basis: Arc<SliBasis>,
    coords: Vec<f64>,
}

impl SVector {
    pub fn new(basis: Arc<SliBasis>, coords: Vec<f64>) -> Result<Self> {
        if coords.len() != basis.len() {
            return Err(Error::CoordLength {
                expected: basis.len(),
                got: coords.len(),
            });
        }
        Ok(Self { basis, coords })
    }

    /// Embedding of a crisp real: coordinates `(value, 0, …, 0)`.
    pub fn crisp(basis: Arc<SliBasis>, value: f64) -> Self {
        let mut coords = vec![0.0; basis.len()];
        coords[0] = value;
        Self { basis, coords }
    }

    /// The additive identity.
    pub fn zero(basis: Arc<SliBasis>) -> Self {
        let coords = vec![0.0; basis.len()];
        Self { basis, coords }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn basis(&self) -> &Arc<SliBasis> {
        &self.basis
    }

    /// Whether two vectors live in the same basis (shared allocation or
    /// structurally equal).
    pub fn same_basis(&self, other: &SVector) -> bool {
        Arc::ptr_eq(&self.basis, &other.basis) || self.basis == other.basis
    }

    /// Core of the realized element: `q₁ + Σ_{i≥2} qᵢ·core(Aᵢ)`.
    pub fn core_value(&self) -> f64 {
        self.coords
            .iter()
            .zip(self.basis.cores())
            .map(|(q, a)| q * a)
            .sum()
    }

    /// The fuzzy number the coordinates stand for: the levelwise sum of
    /// scalar multiples of the basis elements.
    pub fn realize(&self) -> FuzzyNumber {
        let grid = self.basis.grid();
        let cuts = (0..grid.len())
            .map(|k| {
                let mut acc = Interval::singleton(0.0);
                for (q, elem) in self.coords.iter().zip(self.basis.elements()) {
                    acc = acc.add(&elem.level_cut(k).scale(*q));
                }
                acc
            })
            .collect();
        FuzzyNumber::from_levelwise(grid.clone(), cuts)
            .expect("combinations of nested cuts stay nested")
    }
}

impl PartialEq for SVector {
    fn eq(&self, other: &Self) -> bool {
        self.same_basis(other) && self.coords == other.coords
    }
}
