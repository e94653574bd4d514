use thiserror::Error;

/// Errors surfaced by the public API.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus must be monic of the declared degree")]
    BadModulus,
    #[error("reducible: {0}")]
    ReducibleModulus(String),
    #[error("field order {0} exceeds the supported range (2^64)")]
    FieldTooLarge(u128),
    #[error("division by zero in a finite field")]
    ZeroInversion,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("{0} is not a power of the field characteristic")]
    NotCharPower(u64),
    #[error("unit group of F_2 is trivial: no generator needed")]
    NoPrimitiveElement,
    #[error("F_{sub} is not a subfield of F_{sup}")]
    NotSubfield { sub: u64, sup: u64 },
    #[error("element does not lie in the declared subfield")]
    NotInSubfield,
    #[error("basis elements are linearly dependent")]
    SingularBasis,
    #[error("group ring not semisimple: gcd({q}, {group_order}) != 1")]
    NotSemisimple { q: u64, group_order: u64 },
    #[error("operands belong to different group rings")]
    RingMismatch,
    #[error("spectrum value violates the subfield constraint of its class")]
    InvalidSpectrum,
    #[error("tuple does not generate the requested module")]
    NotFullGenerator,
    #[error("operation requires a normal basis; the context uses a {0} basis")]
    BasisNotNormal(&'static str),
    #[error("scan requires {needed} codewords, budget is {budget}; use the information-set method instead")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("field order {0} too large for table-based code arithmetic")]
    TableTooLarge(u64),
    #[error("zero code has no minimum distance")]
    ZeroCode,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
