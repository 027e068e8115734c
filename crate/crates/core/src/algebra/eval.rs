use std::collections::BTreeMap;
use std::fmt;

use super::{Base, DerivedSymbol, Poly, Rational};
use crate::derivation::RewriteSystem;
use crate::error::Result;

/// Values for symbols at a point. Base symbols are the usual case; generic-mode
/// identities can also be checked by assigning values to derived symbols
/// (a jet at the point).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PointAssignment {
    values: BTreeMap<DerivedSymbol, Rational>,
}

impl PointAssignment {
    pub fn new() -> Self {
        PointAssignment::default()
    }

    pub fn with(mut self, b: Base, v: Rational) -> Self {
        self.set(DerivedSymbol::base(b), v);
        self
    }

    pub fn set(&mut self, s: DerivedSymbol, v: Rational) {
        self.values.insert(s, v);
    }

    pub fn get(&self, s: &DerivedSymbol) -> Option<&Rational> {
        self.values.get(s)
    }

    pub fn base_value(&self, b: Base) -> Option<&Rational> {
        self.values.get(&DerivedSymbol::base(b))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DerivedSymbol, &Rational)> {
        self.values.iter()
    }
}

impl fmt::Display for PointAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, (s, v)) in self.values.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}={v}")?;
        }
        Ok(())
    }
}

/// Normalizes `p` under `rules`, then evaluates the result exactly.
///
/// Fails with `UnboundSymbol` if a symbol of the normal form has no value.
pub fn evaluate(p: &Poly, at: &PointAssignment, rules: &RewriteSystem) -> Result<Rational> {
    rules.normalize(p).eval_with(|s| at.get(s).cloned())
}
