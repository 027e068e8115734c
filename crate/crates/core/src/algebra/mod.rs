//! Exact polynomial arithmetic over derived function symbols.

mod eval;
mod monomial;
mod poly;
mod symbol;

pub use eval::{evaluate, PointAssignment};
pub use monomial::Monomial;
pub use poly::Poly;
pub use symbol::{Base, DerivedSymbol, Frame};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
