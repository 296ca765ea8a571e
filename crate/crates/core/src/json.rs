//! File formats: JSON interchange for fuzzy numbers, bases, problems
//! and solutions, plus CSV α-cut tables.
//!
//! All floating-point values are serialized in scientific notation with
//! 17 significant digits, enough to round-trip any double exactly, so
//! identical inputs always produce byte-identical output files.

use std::io;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{FuzzyNumber, Trapezoid};
use crate::grid::LevelGrid;
use crate::sli::{SVector, SliBasis};
use crate::solver::{LinearEquation, Solution};
use crate::{DEFAULT_LEVELS, DEFAULT_SLI_THRESHOLD};

/// Fixed decimal rendering of a double: 17 significant digits in
/// scientific notation, the shortest count that is always lossless.
pub fn fmt_f64(value: f64) -> String {
    format!("{value:.16e}")
}

/// Compact JSON formatter that renders every `f64` through
/// [`fmt_f64`].
struct FullPrecision;

impl serde_json::ser::Formatter for FullPrecision {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        writer.write_all(fmt_f64(value).as_bytes())
    }
}

/// Serialize as compact JSON with lossless float formatting.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FullPrecision);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(out).expect("serialized JSON is UTF-8"))
}

/// Parse a JSON document into any deserializable type.
pub fn from_json_str<T: DeserializeOwned>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

/// On-disk form of a fuzzy number: either explicit cut endpoints per
/// level or the four-knot trapezoid shorthand.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FuzzyNumberRepr {
    Shorthand {
        trapezoid: [f64; 4],
    },
    Cuts {
        levels: Vec<f64>,
        lower: Vec<f64>,
        upper: Vec<f64>,
    },
}

impl FuzzyNumberRepr {
    /// Materialize the description; trapezoid shorthands are sampled
    /// onto `grid`, explicit cuts keep their own level set.
    pub fn to_fuzzy(&self, grid: &LevelGrid) -> Result<FuzzyNumber> {
        match self {
            FuzzyNumberRepr::Shorthand {
                trapezoid: [a, b, c, d],
            } => Ok(Trapezoid::new(*a, *b, *c, *d)?.sample(grid)),
            FuzzyNumberRepr::Cuts {
                levels,
                lower,
                upper,
            } => {
                let grid = LevelGrid::from_levels(levels.clone())?;
                FuzzyNumber::new(grid, lower.clone(), upper.clone())
            }
        }
    }

    pub fn from_fuzzy(f: &FuzzyNumber) -> FuzzyNumberRepr {
        FuzzyNumberRepr::Cuts {
            levels: f.grid().levels().to_vec(),
            lower: f.lower().to_vec(),
            upper: f.upper().to_vec(),
        }
    }
}

/// Basis description: a trapezoidal generator with an element count, or
/// an explicit element list — exactly one of the two.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BasisSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<[f64; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levels: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<FuzzyNumberRepr>>,
}

impl BasisSpec {
    /// Level count with precedence: command-line flag, then file
    /// field, then the default of 101.
    pub fn resolve_levels(&self, flag: Option<usize>) -> usize {
        flag.or(self.levels).unwrap_or(DEFAULT_LEVELS)
    }

    /// Certification threshold with the same precedence chain.
    pub fn resolve_threshold(&self, flag: Option<f64>) -> f64 {
        flag.or(self.threshold).unwrap_or(DEFAULT_SLI_THRESHOLD)
    }

    /// Construct and certify the described basis.
    pub fn build(&self, levels: Option<usize>, threshold: Option<f64>) -> Result<SliBasis> {
        let threshold = self.resolve_threshold(threshold);
        let grid = LevelGrid::uniform(self.resolve_levels(levels))?;
        match (&self.generator, &self.elements) {
            (Some(_), Some(_)) => Err(Error::InvalidSpec(
                "basis gives both a generator and an element list; provide exactly one".to_string(),
            )),
            (None, None) => Err(Error::InvalidSpec(
                "basis needs either a generator or an element list".to_string(),
            )),
            (Some([a, b, c, d]), None) => {
                let n = self.n.ok_or_else(|| {
                    Error::InvalidSpec("generator basis needs the element count \"n\"".to_string())
                })?;
                SliBasis::power_basis(Trapezoid::new(*a, *b, *c, *d)?, n, &grid, threshold)
            }
            (None, Some(reprs)) => {
                let elements = reprs
                    .iter()
                    .map(|r| r.to_fuzzy(&grid))
                    .collect::<Result<Vec<_>>>()?;
                SliBasis::from_elements(elements, threshold)
            }
        }
    }

    /// Spec that reproduces `basis` when built: the generator form when
    /// the basis was generated, the explicit element list otherwise.
    pub fn describe(basis: &SliBasis) -> BasisSpec {
        let generator = basis.generator().map(|t| {
            let (a, b, c, d) = t.knots();
            [a, b, c, d]
        });
        let elements = generator.is_none().then(|| {
            basis
                .elements()
                .iter()
                .map(FuzzyNumberRepr::from_fuzzy)
                .collect()
        });
        BasisSpec {
            generator,
            n: Some(basis.len()),
            levels: Some(basis.grid().len()),
            threshold: Some(basis.certificate().relative_threshold),
            elements,
        }
    }
}

/// Coordinates of one ring element, `{"coords": [...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoordsSpec {
    pub coords: Vec<f64>,
}

/// The three coefficient elements of `A ⊙ X + B = C`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EquationSpec {
    #[serde(rename = "A")]
    pub a: CoordsSpec,
    #[serde(rename = "B")]
    pub b: CoordsSpec,
    #[serde(rename = "C")]
    pub c: CoordsSpec,
}

/// A full problem file: basis description plus equation coordinates.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemFile {
    pub basis: BasisSpec,
    pub equation: EquationSpec,
}

impl ProblemFile {
    /// Build the certified basis and the equation over it.
    pub fn build(
        &self,
        levels: Option<usize>,
        threshold: Option<f64>,
    ) -> Result<(Arc<SliBasis>, LinearEquation)> {
        let basis = Arc::new(self.basis.build(levels, threshold)?);
        let a = SVector::new(Arc::clone(&basis), self.equation.a.coords.clone())?;
        let b = SVector::new(Arc::clone(&basis), self.equation.b.coords.clone())?;
        let c = SVector::new(Arc::clone(&basis), self.equation.c.coords.clone())?;
        Ok((basis, LinearEquation::new(a, b, c)?))
    }
}

/// One α-cut row of a serialized solution.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LevelRow {
    pub alpha: f64,
    pub lower: f64,
    pub upper: f64,
}

/// Serialized solver outcome. `coords`, `core` and the cut table are
/// present for the unique and family kinds and absent for
/// inconsistent equations.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionFile {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub core: Option<f64>,
    pub residual: f64,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub levels: Vec<LevelRow>,
}

impl SolutionFile {
    pub fn from_solution(solution: &Solution) -> SolutionFile {
        let (coords, core, levels) = match solution {
            Solution::Unique { value, .. } => vector_parts(value),
            Solution::Family { representative, .. } => vector_parts(representative),
            Solution::Inconsistent { .. } => (None, None, Vec::new()),
        };
        SolutionFile {
            kind: solution.kind().to_string(),
            coords,
            core,
            residual: solution.residual(),
            levels,
        }
    }
}

fn vector_parts(v: &SVector) -> (Option<Vec<f64>>, Option<f64>, Vec<LevelRow>) {
    (
        Some(v.coords().to_vec()),
        Some(v.core_value()),
        level_rows(&v.realize()),
    )
}

/// α-cut table of a fuzzy number, one row per grid level.
pub fn level_rows(f: &FuzzyNumber) -> Vec<LevelRow> {
    (0..f.grid().len())
        .map(|k| {
            let cut = f.level_cut(k);
            LevelRow {
                alpha: f.grid().level(k),
                lower: cut.lo(),
                upper: cut.hi(),
            }
        })
        .collect()
}

/// CSV rendering of the α-cut table: `alpha,lower,upper` header, one
/// row per level in ascending α, lossless float formatting.
pub fn cut_table_csv(f: &FuzzyNumber) -> String {
    let mut out = String::from("alpha,lower,upper\n");
    for row in level_rows(f) {
        out.push_str(&fmt_f64(row.alpha));
        out.push(',');
        out.push_str(&fmt_f64(row.lower));
        out.push(',');
        out.push_str(&fmt_f64(row.upper));
        out.push('\n');
    }
    out
}
