use thiserror::Error;

use crate::exterior::Diagnostic;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero has no canonical associate")]
    ZeroAssociate,
    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,
    #[error("cyclotomic orders of the zero polynomial are undefined")]
    ZeroCyclotomic,
    #[error("cannot invert the zero polynomial")]
    ZeroLocalization,
    #[error("multicurve label must be primitive, got ({0}, {1})")]
    NonPrimitiveMulticurve(i64, i64),
    #[error("pair ({0}, {1}) is not a canonical sign-class representative")]
    NonCanonicalPair(i64, i64),
    #[error("slope ({0}, {1}) must be a coprime pair")]
    InvalidSlope(i64, i64),
    #[error("annihilator of generator {0:?} is zero")]
    ZeroAnnihilator(String),
    #[error("invalid presentation: {}", format_diagnostics(.0))]
    InvalidPresentation(Vec<Diagnostic>),
    #[error(
        "slope ({p}, {q}) is a slope of the polygon of generator {generator:?} \
         (edge direction ({}, {}))", .edge.0, .edge.1
    )]
    InadmissibleSlope {
        p: i64,
        q: i64,
        generator: String,
        edge: (i64, i64),
    },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid input: {0}")]
    Parse(String),
    #[error("internal assertion failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn format_diagnostics(d: &[Diagnostic]) -> String {
    d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
