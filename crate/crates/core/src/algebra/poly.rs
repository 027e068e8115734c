use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Base, DerivedSymbol, Monomial, Rational};
use crate::error::{Error, Result};

/// Sparse polynomial with exact rational coefficients over derived symbols.
///
/// The term map never stores a zero coefficient, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(Rational::from_integer(n.into()))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn symbol(s: DerivedSymbol) -> Self {
        Poly::term(Rational::one(), Monomial::var(s))
    }

    pub fn base(b: Base) -> Self {
        Poly::symbol(DerivedSymbol::base(b))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from the leading (largest) monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// The value if this polynomial has no symbols.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn symbols(&self) -> BTreeSet<DerivedSymbol> {
        self.terms
            .keys()
            .flat_map(|m| m.symbols().cloned())
            .collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(n, k)| (n.mul(m), k.clone())).collect(),
        }
    }

    /// `self^n` by repeated squaring; `p^0 = 1` for every `p`, including zero.
    pub fn pow(&self, n: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Replaces every occurrence of `target` by `replacement`.
    pub fn substitute(&self, target: &DerivedSymbol, replacement: &Poly) -> Poly {
        let mut powers: Vec<Poly> = vec![Poly::one()];
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(target);
            if e == 0 {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            while powers.len() <= e as usize {
                let next = powers.last().unwrap() * replacement;
                powers.push(next);
            }
            for (n, k) in &powers[e as usize].terms {
                out.add_term(n.mul(&rest), k * c);
            }
        }
        out
    }

    /// Rewrites every symbol for which `f` returns a replacement.
    pub fn map_symbols<F>(&self, mut f: F) -> Poly
    where
        F: FnMut(&DerivedSymbol) -> Option<Poly>,
    {
        let mut cache: BTreeMap<DerivedSymbol, Option<Poly>> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(c.clone());
            let mut kept = Vec::new();
            for (s, e) in m.factors() {
                let r = cache.entry(s.clone()).or_insert_with(|| f(s));
                match r {
                    Some(p) => acc = &acc * &p.pow(*e),
                    None => kept.push((s.clone(), *e)),
                }
                if acc.is_zero() {
                    break;
                }
            }
            let kept = Monomial::from_factors(kept);
            for (n, k) in acc.terms {
                out.add_term(n.mul(&kept), k);
            }
        }
        out
    }

    /// Repeatedly replaces the monomial `pattern` by `replacement` wherever it
    /// divides a term. Terminates when `replacement` has no term divisible by
    /// `pattern`, which holds for every use in this crate.
    pub fn rewrite_monomial(&self, pattern: &Monomial, replacement: &Poly) -> Poly {
        let mut current = self.clone();
        loop {
            let mut changed = false;
            let mut out = Poly::zero();
            for (m, c) in &current.terms {
                match m.div(pattern) {
                    Some(rest) => {
                        changed = true;
                        for (n, k) in &replacement.terms {
                            out.add_term(n.mul(&rest), k * c);
                        }
                    }
                    None => out.add_term(m.clone(), c.clone()),
                }
            }
            if !changed {
                return out;
            }
            current = out;
        }
    }

    /// Returns `q` with `self = s^m * q`, or `NotDivisible` if some term lacks the factor.
    pub fn factor_out_power(&self, s: &DerivedSymbol, m: u32) -> Result<Poly> {
        let d = Monomial::power(s.clone(), m);
        let mut out = BTreeMap::new();
        for (mono, c) in &self.terms {
            let q = mono.div(&d).ok_or_else(|| Error::NotDivisible {
                symbol: s.clone(),
                power: m,
            })?;
            out.insert(q, c.clone());
        }
        Ok(Poly { terms: out })
    }

    /// Largest `m` such that `s^m` divides every term (0 for the zero polynomial).
    pub fn min_exponent(&self, s: &DerivedSymbol) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent(s))
            .min()
            .unwrap_or(0)
    }

    /// Partial derivative with respect to a symbol treated as an independent variable.
    pub fn partial(&self, s: &DerivedSymbol) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(s);
            if e > 0 {
                let mono = rest.mul(&Monomial::power(s.clone(), e - 1));
                out.add_term(mono, c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Exact value when every symbol has an assigned value.
    pub fn eval_with<F>(&self, mut value: F) -> Result<Rational>
    where
        F: FnMut(&DerivedSymbol) -> Option<Rational>,
    {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (s, e) in m.factors() {
                let v = value(s).ok_or_else(|| Error::UnboundSymbol(s.clone()))?;
                t *= num_traits::pow(v, *e as usize);
            }
            total += t;
        }
        Ok(total)
    }
}

impl From<Base> for Poly {
    fn from(b: Base) -> Self {
        Poly::base(b)
    }
}

impl From<DerivedSymbol> for Poly {
    fn from(s: DerivedSymbol) -> Self {
        Poly::symbol(s)
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        let mut out = Poly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &'a Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Poly> for &'a Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl std::ops::AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl std::ops::SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        let mut acc = Poly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

/// Canonical text: terms in descending graded-lex order, explicit `*`, `^` for powers.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}
