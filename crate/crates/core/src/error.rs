use alloc::string::String;
use core::fmt;

use crate::families::Family;

/// Errors raised by the core constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    ZeroDenominator,
    Parse(String),
    /// A family element's denominator vanished; `factor` names it.
    UndefinedElement { family: Family, factor: &'static str },
    /// Elements coincide or vanish.
    DegenerateTriple,
    DegenerateInput,
    /// `elems[i] * elems[j] + 1` is not a square.
    NotDiophantine(usize, usize),
    SingularCurve,
    NotOnCurve,
    InfinityPoint,
    NotSpecial,
    InfinityEncountered,
    NotSquare,
    ExcludedPoint,
    SingularImage,
    MissingStrongPair,
    InvalidConfig(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroDenominator => write!(f, "zero denominator"),
            Error::Parse(s) => write!(f, "cannot parse {s:?} as an exact rational (expected \"p/q\" or \"n\")"),
            Error::UndefinedElement { family, factor } => {
                write!(f, "{family} is undefined: factor {factor} vanishes")
            }
            Error::DegenerateTriple => write!(f, "degenerate triple: elements coincide or vanish"),
            Error::DegenerateInput => write!(f, "degenerate tuple: fewer than two elements, a zero, or a repeat"),
            Error::NotDiophantine(i, j) => {
                write!(f, "not Diophantine: product of elements {i} and {j} plus 1 is not a square")
            }
            Error::SingularCurve => write!(f, "curve is singular (zero discriminant)"),
            Error::NotOnCurve => write!(f, "point is not on the curve"),
            Error::InfinityPoint => write!(f, "point at infinity has no x-coordinate"),
            Error::NotSpecial => write!(f, "triple is not special"),
            Error::InfinityEncountered => write!(f, "a source point of the extension is the point at infinity"),
            Error::NotSquare => write!(f, "1 - x(W) is not a nonzero rational square"),
            Error::ExcludedPoint => write!(f, "W violates the order condition (6W = O)"),
            Error::SingularImage => write!(f, "image curve roots are not distinct and nonzero"),
            Error::MissingStrongPair => write!(f, "the first two elements do not form a strong pair"),
            Error::InvalidConfig(why) => write!(f, "invalid search configuration: {why}"),
        }
    }
}

impl core::error::Error for Error {}
