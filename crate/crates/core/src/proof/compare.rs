use std::fmt;

use num_traits::One;

use crate::algebra::{Poly, Rational};

/// How a step's result relates to the displayed polynomial it is checked against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    ExactMatch,
    /// `result = lambda * expected` with `lambda != 0, 1`.
    ScalarMatch(Rational),
    NoExpectation,
    /// Difference between the result and the best rescaling of the expectation.
    Mismatch(Poly),
}

impl Comparison {
    pub fn is_match(&self) -> bool {
        matches!(self, Comparison::ExactMatch | Comparison::ScalarMatch(_))
    }

    pub fn is_mismatch(&self) -> bool {
        matches!(self, Comparison::Mismatch(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Comparison::ExactMatch => "ExactMatch",
            Comparison::ScalarMatch(_) => "ScalarMatch",
            Comparison::NoExpectation => "NoExpectation",
            Comparison::Mismatch(_) => "Mismatch",
        }
    }

    pub fn scalar(&self) -> Option<&Rational> {
        match self {
            Comparison::ScalarMatch(l) => Some(l),
            _ => None,
        }
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Comparison::ScalarMatch(l) => write!(f, "ScalarMatch({l})"),
            Comparison::Mismatch(d) => write!(f, "Mismatch(diff = {d})"),
            other => f.write_str(other.label()),
        }
    }
}

/// Decides whether `got` is a nonzero rational multiple of `expected`.
///
/// The candidate scalar is the ratio of leading coefficients; equality is then
/// checked on every term.
pub fn compare_up_to_scalar(got: &Poly, expected: &Poly) -> Comparison {
    if got == expected {
        return Comparison::ExactMatch;
    }
    let (Some((gm, gc)), Some((em, ec))) = (got.leading_term(), expected.leading_term()) else {
        return Comparison::Mismatch(got - expected);
    };
    if gm != em {
        return Comparison::Mismatch(got - expected);
    }
    let lambda = gc / ec;
    let scaled = expected.scale(&lambda);
    if *got == scaled {
        debug_assert!(!lambda.is_one());
        Comparison::ScalarMatch(lambda)
    } else {
        Comparison::Mismatch(got - &scaled)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Base};

    #[test]
    fn scalar_cases() {
        let p = Poly::base(Base::K1) * Poly::base(Base::F2) - Poly::base(Base::Sigma);
        assert_eq!(compare_up_to_scalar(&p.scale(&int(2)), &p), Comparison::ScalarMatch(int(2)));
        assert_eq!(compare_up_to_scalar(&p, &p), Comparison::ExactMatch);
        let shifted = &p + &Poly::base(Base::K1);
        assert!(compare_up_to_scalar(&p, &shifted).is_mismatch());
        assert!(compare_up_to_scalar(&Poly::zero(), &p).is_mismatch());
        assert_eq!(compare_up_to_scalar(&Poly::zero(), &Poly::zero()), Comparison::ExactMatch);
    }
}
