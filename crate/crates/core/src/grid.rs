//! Membership-level grids on which α-cuts are sampled.

use crate::error::{Error, Result};

/// A sorted grid of membership grades `0 = α₀ < α₁ < … < α_M = 1`
/// with at least three levels.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelGrid {
    levels: Vec<f64>,
}

impl LevelGrid {
    /// Uniform grid with `count` levels, endpoints pinned to 0 and 1.
    pub fn uniform(count: usize) -> Result<Self> {
        if count < 3 {
            return Err(Error::InvalidGrid(format!(
                "need at least 3 levels, got {count}"
            )));
        }
        let m = (count - 1) as f64;
        let levels = (0..count).map(|k| k as f64 / m).collect();
        Self::from_levels(levels)
    }

    pub fn from_levels(levels: Vec<f64>) -> Result<Self> {
        if levels.len() < 3 {
            return Err(Error::InvalidGrid(format!(
                "need at least 3 levels, got {}",
                levels.len()
            )));
        }
        if levels.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidGrid("levels must be finite".to_string()));
        }
        if levels[0] != 0.0 {
            return Err(Error::InvalidGrid(format!(
                "first level must be exactly 0, got {}",
                levels[0]
            )));
        }
        if *levels.last().unwrap() != 1.0 {
            return Err(Error::InvalidGrid(format!(
                "last level must be exactly 1, got {}",
                levels.last().unwrap()
            )));
        }
        if levels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGrid(
                "levels must be strictly increasing".to_string(),
            ));
        }
        Ok(Self { levels })
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn level(&self, k: usize) -> f64 {
        self.levels[k]
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    /// Merge of two grids: the sorted union of their level sets.
    pub fn union(&self, other: &LevelGrid) -> LevelGrid {
        let mut merged = Vec::with_capacity(self.levels.len() + other.levels.len());
        let (mut i, mut j) = (0, 0);
        while i < self.levels.len() || j < other.levels.len() {
            let next = match (self.levels.get(i), other.levels.get(j)) {
                (Some(&a), Some(&b)) => {
                    if a < b {
                        i += 1;
                        a
                    } else if b < a {
                        j += 1;
                        b
                    } else {
                        i += 1;
                        j += 1;
                        a
                    }
                }
                (Some(&a), None) => {
                    i += 1;
                    a
                }
                (None, Some(&b)) => {
                    j += 1;
                    b
                }
                (None, None) => unreachable!(),
            };
            merged.push(next);
        }
        LevelGrid { levels: merged }
    }

    /// Index of the highest grid level `<= alpha`.
    ///
    /// Returns the left index of the bracketing segment; the caller
    /// interpolates towards index + 1 when `alpha` falls between levels.
    pub fn segment_of(&self, alpha: f64) -> Result<usize> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::AlphaOutOfRange(alpha));
        }
        let pos = self.levels.partition_point(|&l| l <= alpha);
        Ok(pos.saturating_sub(1).min(self.levels.len() - 2))
    }
}

impl Default for LevelGrid {
    fn default() -> Self {
        Self::uniform(crate::DEFAULT_LEVELS).expect("default grid is valid")
    }
}
