use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// One of the scalar fields carried by an adapted frame, plus the ambient
/// sectional curvature `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Base {
    K1,
    K2,
    F1,
    F2,
    Sigma,
    C,
}

impl Base {
    pub const ALL: [Base; 6] = [Base::K1, Base::K2, Base::F1, Base::F2, Base::Sigma, Base::C];

    pub fn name(self) -> &'static str {
        match self {
            Base::K1 => "k1",
            Base::K2 => "k2",
            Base::F1 => "f1",
            Base::F2 => "f2",
            Base::Sigma => "sigma",
            Base::C => "c",
        }
    }

    pub fn from_name(name: &str) -> Option<Base> {
        Base::ALL.into_iter().find(|b| b.name() == name)
    }

    /// `c` is a constant: every frame derivative of it vanishes.
    pub fn is_constant(self) -> bool {
        self == Base::C
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Index of a frame vector field `e1`, `e2`, `e3` (`e3` vertical).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Frame {
    E1,
    E2,
    E3,
}

impl Frame {
    pub const ALL: [Frame; 3] = [Frame::E1, Frame::E2, Frame::E3];

    /// Zero-based position, for indexing tables.
    pub fn idx(self) -> usize {
        self as usize
    }

    /// One-based label as written in formulas.
    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn from_idx(i: usize) -> Frame {
        Frame::ALL[i]
    }

    pub fn from_number(n: u8) -> Option<Frame> {
        match n {
            1 => Some(Frame::E1),
            2 => Some(Frame::E2),
            3 => Some(Frame::E3),
            _ => None,
        }
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.number())
    }
}

/// A base field with an iterated frame derivative applied to it.
///
/// `word[0]` is the innermost derivation, the last entry the outermost, so
/// `e3(e1(k1))` has word `[E1, E3]`. Normal words are non-decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DerivedSymbol {
    base: Base,
    word: Vec<Frame>,
}

impl DerivedSymbol {
    pub fn base(base: Base) -> Self {
        DerivedSymbol {
            base,
            word: Vec::new(),
        }
    }

    /// Checked constructor: the word must be in normal form and `c` carries no word.
    pub fn new(base: Base, word: Vec<Frame>) -> Result<Self> {
        if base.is_constant() && !word.is_empty() {
            return Err(Error::InvalidSymbol(format!(
                "`c` is constant and cannot carry the derivation word {word:?}"
            )));
        }
        if word.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidSymbol(format!(
                "word {word:?} on {base} is not in normal form"
            )));
        }
        Ok(DerivedSymbol { base, word })
    }

    pub(crate) fn from_parts(base: Base, word: Vec<Frame>) -> Self {
        debug_assert!(word.windows(2).all(|w| w[0] <= w[1]));
        DerivedSymbol { base, word }
    }

    pub fn base_field(&self) -> Base {
        self.base
    }

    pub fn word(&self) -> &[Frame] {
        &self.word
    }

    pub fn is_base(&self) -> bool {
        self.word.is_empty()
    }

    /// The symbol with its outermost derivation removed.
    pub(crate) fn parent(&self) -> Option<(DerivedSymbol, Frame)> {
        let (&last, rest) = self.word.split_last()?;
        Some((DerivedSymbol::from_parts(self.base, rest.to_vec()), last))
    }

    pub(crate) fn appended(&self, i: Frame) -> DerivedSymbol {
        let mut word = self.word.clone();
        word.push(i);
        DerivedSymbol::from_parts(self.base, word)
    }
}

impl From<Base> for DerivedSymbol {
    fn from(b: Base) -> Self {
        DerivedSymbol::base(b)
    }
}

// Base symbols first (k1 < k2 < f1 < f2 < sigma < c), then derived symbols by
// base, word length and word.
impl Ord for DerivedSymbol {
    fn cmp(&self, other: &Self) -> Ordering {
        (!self.word.is_empty(), self.base, self.word.len(), &self.word).cmp(&(
            !other.word.is_empty(),
            other.base,
            other.word.len(),
            &other.word,
        ))
    }
}

impl PartialOrd for DerivedSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DerivedSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in self.word.iter().rev() {
            write!(f, "{i}(")?;
        }
        f.write_str(self.base.name())?;
        for _ in &self.word {
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_nested_derivatives() {
        let s = DerivedSymbol::new(Base::K1, vec![Frame::E1, Frame::E3]).unwrap();
        assert_eq!(s.to_string(), "e3(e1(k1))");
        assert_eq!(DerivedSymbol::base(Base::Sigma).to_string(), "sigma");
    }

    #[test]
    fn rejects_unsorted_words_and_derived_constants() {
        assert!(DerivedSymbol::new(Base::K1, vec![Frame::E3, Frame::E1]).is_err());
        assert!(DerivedSymbol::new(Base::C, vec![Frame::E1]).is_err());
    }

    #[test]
    fn base_symbols_precede_derived_ones() {
        let c = DerivedSymbol::base(Base::C);
        let d = DerivedSymbol::new(Base::K1, vec![Frame::E1]).unwrap();
        assert!(DerivedSymbol::base(Base::K1) < DerivedSymbol::base(Base::F2));
        assert!(DerivedSymbol::base(Base::F2) < DerivedSymbol::base(Base::Sigma));
        assert!(c < d);
    }
}
