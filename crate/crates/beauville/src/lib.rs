//! Exact computation of equivariant cohomology of line bundles on the
//! Beauville surface S = (C x C')/(Z/5)^2, enumeration of all length-4
//! exceptional collections of line bundles on S, and the derived
//! invariants: helices, Ext tables, anticanonical heights, Hochschild
//! cohomology and the quasi-phantom data of the orthogonal categories.
//!
//! Everything is computed in exponent arithmetic mod 5; there are no
//! floating point numbers and no symbolic roots of unity anywhere.

pub mod charpoly;
pub mod cli;
pub mod collections;
pub mod curve;
pub mod facts;
pub mod render;
pub mod surface;

pub use charpoly::{Character, GradedCharPoly};
pub use collections::{AcyclicSet, Collection, ExtMatrix, Helix, NumericalType};
pub use curve::CurveAction;
pub use surface::{Basis, CohomologyRanks, LineBundleClass, Surface};

use thiserror::Error as ThisError;

/// A deliberate engine corruption, used to validate that the verification
/// harness actually notices wrong answers. Production entry points never
/// set one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Fault {
    #[default]
    None,
    /// Perturbs the canonical character of every curve action by [1,0].
    WrongCanonicalCharacter,
    /// Swaps the two square-root characters in the K-to-O torsion offset.
    WrongTorsionOffset,
    /// Applies the degree-5 relation one degree too late when computing
    /// global sections.
    RestrictionOffByOne,
}

impl Fault {
    pub fn by_name(name: &str) -> Option<Fault> {
        match name {
            "wrong-canonical" => Some(Fault::WrongCanonicalCharacter),
            "wrong-torsion-offset" => Some(Fault::WrongTorsionOffset),
            "restriction-off-by-one" => Some(Fault::RestrictionOffByOne),
            _ => None,
        }
    }

    pub const ALL_NAMES: [&'static str; 3] = [
        "wrong-canonical",
        "wrong-torsion-offset",
        "restriction-off-by-one",
    ];
}

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("integer overflow in coefficient arithmetic")]
    Overflow,
    #[error("q-degree {q} exceeds bound {q_bound}")]
    QDegreeExceedsBound { q: u32, q_bound: u32 },
    #[error("parse error at position {pos}: {msg}")]
    ParsePoly { pos: usize, msg: String },
    #[error("bundle parse error at position {pos}: {msg}")]
    ParseBundle { pos: usize, msg: String },
    #[error("unknown curve '{0}' (expected 'C' or 'Cprime')")]
    UnknownCurve(String),
    #[error("bidegree range too small to certify completeness: {0}")]
    RangeTooSmall(String),
    #[error("collection is not exceptional: {0}")]
    NotExceptional(String),
    #[error("unknown helix '{0}' (expected 'H1' or 'H2')")]
    UnknownHelix(String),
    #[error("invalid range spec '{0}' (expected imin:imax,jmin:jmax)")]
    ParseRange(String),
}
