use std::cmp::Ordering;
use std::fmt;

use super::DerivedSymbol;

/// Power product of derived symbols, kept sorted by symbol with no zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(DerivedSymbol, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(s: DerivedSymbol) -> Self {
        Monomial {
            factors: vec![(s, 1)],
        }
    }

    pub fn power(s: DerivedSymbol, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial {
                factors: vec![(s, e)],
            }
        }
    }

    /// Builds a monomial from arbitrary factors, merging repeats and dropping zeros.
    pub fn from_factors<I: IntoIterator<Item = (DerivedSymbol, u32)>>(it: I) -> Self {
        let mut factors: Vec<(DerivedSymbol, u32)> = it.into_iter().filter(|f| f.1 > 0).collect();
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(DerivedSymbol, u32)> = Vec::with_capacity(factors.len());
        for (s, e) in factors {
            match merged.last_mut() {
                Some((last, acc)) if *last == s => *acc += e,
                _ => merged.push((s, e)),
            }
        }
        Monomial { factors: merged }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(DerivedSymbol, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|f| f.1).sum()
    }

    pub fn exponent(&self, s: &DerivedSymbol) -> u32 {
        self.factors
            .binary_search_by(|f| f.0.cmp(s))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (a, b) = (&self.factors[i], &other.factors[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0.clone(), a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.factors[i..]);
        out.extend_from_slice(&other.factors[j..]);
        Monomial { factors: out }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut j = 0;
        for (s, e) in &self.factors {
            if j < other.factors.len() && other.factors[j].0 == *s {
                let d = other.factors[j].1;
                if d > *e {
                    return None;
                }
                if d < *e {
                    out.push((s.clone(), e - d));
                }
                j += 1;
            } else if j < other.factors.len() && other.factors[j].0 < *s {
                return None;
            } else {
                out.push((s.clone(), *e));
            }
        }
        if j < other.factors.len() {
            return None;
        }
        Some(Monomial { factors: out })
    }

    /// Splits off every power of `s`: returns `(exponent, remaining monomial)`.
    pub fn split(&self, s: &DerivedSymbol) -> (u32, Monomial) {
        let mut rest = self.clone();
        match rest.factors.binary_search_by(|f| f.0.cmp(s)) {
            Ok(i) => {
                let (_, e) = rest.factors.remove(i);
                (e, rest)
            }
            Err(_) => (0, rest),
        }
    }

    pub fn symbols(&self) -> impl Iterator<Item = &DerivedSymbol> {
        self.factors.iter().map(|f| &f.0)
    }
}

// Graded lexicographic: higher total degree is greater; ties are broken
// lexicographically with the smallest symbol (k1) most significant.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.factors.get(i), other.factors.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(a), Some(b)) => match a.0.cmp(&b.0) {
                    // `self` has a more significant symbol that `other` lacks
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match a.1.cmp(&b.1) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (n, (s, e)) in self.factors.iter().enumerate() {
            if n > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}
