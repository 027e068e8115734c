//! Frame derivations `e1`, `e2`, `e3` acting on polynomials.
//!
//! Iterated derivatives are kept in a normal form where derivation indices are
//! non-decreasing from the inside out. Out-of-order pairs are swapped using
//!
//! ```text
//! e_i e_j (g) = e_j e_i (g) + [e_i, e_j](g)
//! [e1, e3] = k1 e3,   [e2, e3] = k2 e3,   [e1, e2] = f1 e1 + f2 e2 - 2 sigma e3
//! ```
//!
//! Two rewrite systems are provided:
//!
//! * **generic**: unresolved derivatives stay as fresh symbols. The only rules
//!   are the ones forced by the Jacobi identity of the bracket relations
//!   (`e3(f1) = e3(f2) = 0` since `f1`, `f2` are pulled back from the base,
//!   and `2 e3(sigma) = e1(k2) - e2(k1) - f1 k1 - f2 k2`). Without them the
//!   three bracket relations cannot hold simultaneously on all polynomials.
//! * **omega**: the constrained system valid on the open set of a space form
//!   where `k1` does not vanish, after choosing the frame with `k2 = 0`. Every
//!   derivative of a base field is resolved, so normal forms live in
//!   `Q[k1, f2, sigma, c]`. Never mix it into generic computations: the rule
//!   for `e1(f2)` divides by `k1`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::algebra::{rat, Base, DerivedSymbol, Frame, Monomial, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Generic,
    Omega,
}

/// Structure coefficients of the adapted frame: `c[i][j][k]` is the
/// coefficient of `e_k` in `[e_i, e_j]`.
pub fn structure_coefficients() -> [[[Poly; 3]; 3]; 3] {
    let mut c: [[[Poly; 3]; 3]; 3] = Default::default();
    let k1 = Poly::base(Base::K1);
    let k2 = Poly::base(Base::K2);
    let f1 = Poly::base(Base::F1);
    let f2 = Poly::base(Base::F2);
    let sigma = Poly::base(Base::Sigma);

    let mut set = |i: usize, j: usize, k: usize, p: Poly| {
        c[j][i][k] = -&p;
        c[i][j][k] = p;
    };
    set(0, 2, 2, k1);
    set(1, 2, 2, k2);
    set(0, 1, 0, f1);
    set(0, 1, 1, f2);
    set(0, 1, 2, sigma.scale(&rat(-2, 1)));
    c
}

/// A word of frame derivations, innermost first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FrameWord(pub Vec<Frame>);

impl FrameWord {
    pub fn new(indices: Vec<Frame>) -> Self {
        FrameWord(indices)
    }

    pub fn is_normal(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// Number of out-of-order pairs; zero exactly for normal words.
    pub fn inversions(&self) -> usize {
        let w = &self.0;
        (0..w.len())
            .flat_map(|a| (a + 1..w.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| w[a] > w[b])
            .count()
    }
}

/// Derivative rules for base symbols plus eager substitutions to zero.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    mode: Mode,
    vanishing: BTreeSet<Base>,
    rules: BTreeMap<DerivedSymbol, Poly>,
    brackets: [[Vec<(Frame, Poly)>; 3]; 3],
}

type Cache = HashMap<(DerivedSymbol, Frame), Poly>;

fn first_derivative(b: Base, i: Frame) -> DerivedSymbol {
    DerivedSymbol::from_parts(b, vec![i])
}

impl RewriteSystem {
    fn with_rules(mode: Mode, vanishing: BTreeSet<Base>, rules: BTreeMap<DerivedSymbol, Poly>) -> Self {
        let coeffs = structure_coefficients();
        let mut brackets: [[Vec<(Frame, Poly)>; 3]; 3] = Default::default();
        for i in 0..3 {
            for j in 0..3 {
                brackets[i][j] = (0..3)
                    .filter(|&k| !coeffs[i][j][k].is_zero())
                    .map(|k| (Frame::from_idx(k), coeffs[i][j][k].clone()))
                    .collect();
            }
        }
        let mut rs = RewriteSystem {
            mode,
            vanishing,
            rules,
            brackets,
        };
        rs.reduce_tables();
        rs
    }

    /// Free derivatives, constrained only by the Jacobi identity of the frame.
    pub fn generic() -> Self {
        let mut rules = BTreeMap::new();
        for i in Frame::ALL {
            rules.insert(first_derivative(Base::C, i), Poly::zero());
        }
        rules.insert(first_derivative(Base::F1, Frame::E3), Poly::zero());
        rules.insert(first_derivative(Base::F2, Frame::E3), Poly::zero());
        let e3_sigma = Poly::symbol(first_derivative(Base::K2, Frame::E1))
            - Poly::symbol(first_derivative(Base::K1, Frame::E2))
            - Poly::base(Base::F1) * Poly::base(Base::K1)
            - Poly::base(Base::F2) * Poly::base(Base::K2);
        rules.insert(
            first_derivative(Base::Sigma, Frame::E3),
            e3_sigma.scale(&rat(1, 2)),
        );
        RewriteSystem::with_rules(Mode::Generic, BTreeSet::new(), rules)
    }

    /// The constrained system on the set where `k1 != 0`.
    pub fn omega() -> Self {
        let k1 = Poly::base(Base::K1);
        let f2 = Poly::base(Base::F2);
        let sigma = Poly::base(Base::Sigma);
        let mut rules = BTreeMap::new();
        for b in Base::ALL {
            rules.insert(first_derivative(b, Frame::E2), Poly::zero());
            rules.insert(first_derivative(b, Frame::E3), Poly::zero());
        }
        rules.insert(first_derivative(Base::C, Frame::E1), Poly::zero());
        rules.insert(first_derivative(Base::K2, Frame::E1), Poly::zero());
        rules.insert(first_derivative(Base::F1, Frame::E1), Poly::zero());
        rules.insert(
            first_derivative(Base::Sigma, Frame::E1),
            (&k1 * &sigma).scale(&rat(2, 1)),
        );
        rules.insert(first_derivative(Base::K1, Frame::E1), &k1 * &k1 - &k1 * &f2);
        rules.insert(
            first_derivative(Base::F2, Frame::E1),
            &f2 * &f2 - &k1 * &f2 + (&sigma * &sigma).scale(&rat(4, 1)),
        );
        let vanishing = [Base::K2, Base::F1].into_iter().collect();
        RewriteSystem::with_rules(Mode::Omega, vanishing, rules)
    }

    pub fn for_mode(mode: Mode) -> Self {
        match mode {
            Mode::Generic => RewriteSystem::generic(),
            Mode::Omega => RewriteSystem::omega(),
        }
    }

    /// The same system with additional base fields set identically to zero.
    pub fn with_vanishing<I: IntoIterator<Item = Base>>(&self, bases: I) -> Self {
        let mut rs = self.clone();
        rs.vanishing.extend(bases);
        rs.reduce_tables();
        rs
    }

    fn reduce_tables(&mut self) {
        let vanishing = self.vanishing.clone();
        let kill = |p: &Poly| {
            p.map_symbols(|s| vanishing.contains(&s.base_field()).then(Poly::zero))
        };
        for rhs in self.rules.values_mut() {
            *rhs = kill(rhs);
        }
        for row in self.brackets.iter_mut() {
            for entry in row.iter_mut() {
                *entry = entry
                    .iter()
                    .map(|(k, p)| (*k, kill(p)))
                    .filter(|(_, p)| !p.is_zero())
                    .collect();
            }
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn vanishing(&self) -> &BTreeSet<Base> {
        &self.vanishing
    }

    pub fn is_vanishing(&self, b: Base) -> bool {
        self.vanishing.contains(&b)
    }

    /// Rule for a first derivative of a base field, if the system has one.
    pub fn lookup(&self, s: &DerivedSymbol) -> Option<&Poly> {
        self.rules.get(s)
    }

    pub fn rules(&self) -> impl Iterator<Item = (&DerivedSymbol, &Poly)> {
        self.rules.iter()
    }

    /// Nonzero terms of `[e_i, e_j]`.
    pub fn bracket(&self, i: Frame, j: Frame) -> &[(Frame, Poly)] {
        &self.brackets[i.idx()][j.idx()]
    }

    fn is_ruled(&self, b: Base, i: Frame) -> bool {
        self.rules.contains_key(&first_derivative(b, i))
    }

    /// Brings `p` into the normal form of this system.
    pub fn normalize(&self, p: &Poly) -> Poly {
        let mut cache = Cache::new();
        self.normalize_cached(p, &mut cache)
    }

    fn normalize_cached(&self, p: &Poly, cache: &mut Cache) -> Poly {
        p.map_symbols(|s| {
            let b = s.base_field();
            if self.is_vanishing(b) {
                return Some(Poly::zero());
            }
            if s.is_base() {
                return None;
            }
            let needs_rebuild = self.mode == Mode::Omega
                || b.is_constant()
                || s.word().iter().any(|&i| self.is_ruled(b, i));
            if !needs_rebuild {
                return None;
            }
            let mut acc = Poly::base(b);
            for &i in s.word() {
                acc = self.derive_poly(&acc, i, cache);
            }
            Some(acc)
        })
    }

    /// Applies `e_i` to `p` by the Leibniz rule.
    pub fn derive(&self, p: &Poly, i: Frame) -> Poly {
        let mut cache = Cache::new();
        let p = self.normalize_cached(p, &mut cache);
        self.derive_poly(&p, i, &mut cache)
    }

    fn derive_poly(&self, p: &Poly, i: Frame, cache: &mut Cache) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            for (s, e) in m.factors() {
                let ds = self.derive_symbol(s, i, cache);
                if ds.is_zero() {
                    continue;
                }
                let rest = m
                    .div(&Monomial::var(s.clone()))
                    .expect("factor divides its own monomial");
                let k = c * crate::algebra::int(i64::from(*e));
                out += &ds.mul_monomial(&rest).scale(&k);
            }
        }
        out
    }

    fn derive_symbol(&self, s: &DerivedSymbol, i: Frame, cache: &mut Cache) -> Poly {
        let b = s.base_field();
        if b.is_constant() || self.is_vanishing(b) {
            return Poly::zero();
        }
        let key = (s.clone(), i);
        if let Some(hit) = cache.get(&key) {
            return hit.clone();
        }
        let result = match s.parent() {
            None => match self.rules.get(&first_derivative(b, i)) {
                Some(rhs) => rhs.clone(),
                None => Poly::symbol(s.appended(i)),
            },
            Some((inner, last)) => {
                let in_order = last < i && !self.is_ruled(b, i) || last == i;
                if in_order {
                    Poly::symbol(s.appended(i))
                } else {
                    // e_i e_last t = e_last e_i t + [e_i, e_last] t
                    let swapped = self.derive_symbol(&inner, i, cache);
                    let mut out = self.derive_poly(&swapped, last, cache);
                    for (k, coef) in self.bracket(i, last).to_vec() {
                        let dk = self.derive_symbol(&inner, k, cache);
                        out += &(&coef * &dk);
                    }
                    out
                }
            }
        };
        cache.insert(key, result.clone());
        result
    }

    /// `sum_i e_i e_i p + f1 e2 p - f2 e1 p - k1 e1 p - k2 e2 p`, the Laplace
    /// operator of the adapted frame on functions.
    pub fn laplacian(&self, p: &Poly) -> Poly {
        let mut cache = Cache::new();
        let p = self.normalize_cached(p, &mut cache);
        let d1 = self.derive_poly(&p, Frame::E1, &mut cache);
        let d2 = self.derive_poly(&p, Frame::E2, &mut cache);
        let d3 = self.derive_poly(&p, Frame::E3, &mut cache);
        let mut out = self.derive_poly(&d1, Frame::E1, &mut cache);
        out += &self.derive_poly(&d2, Frame::E2, &mut cache);
        out += &self.derive_poly(&d3, Frame::E3, &mut cache);
        let f1 = Poly::base(Base::F1);
        let f2 = Poly::base(Base::F2);
        let k1 = Poly::base(Base::K1);
        let k2 = Poly::base(Base::K2);
        out += &(&f1 * &d2);
        out -= &(&f2 * &d1);
        out -= &(&k1 * &d1);
        out -= &(&k2 * &d2);
        self.normalize_cached(&out, &mut cache)
    }
}

impl fmt::Display for RewriteSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = match self.mode {
            Mode::Generic => "generic",
            Mode::Omega => "omega",
        };
        write!(f, "{mode}")?;
        if !self.vanishing.is_empty() {
            let names: Vec<_> = self.vanishing.iter().map(|b| b.name()).collect();
            write!(f, " [{} = 0]", names.join(", "))?;
        }
        Ok(())
    }
}

/// The rewrite system valid where `k1` does not vanish.
pub fn build_omega_rules() -> RewriteSystem {
    RewriteSystem::omega()
}

pub fn derive(p: &Poly, i: Frame, rules: &RewriteSystem) -> Poly {
    rules.derive(p, i)
}

pub fn laplacian(p: &Poly, rules: &RewriteSystem) -> Poly {
    rules.laplacian(p)
}

/// Expresses `e_{w_n}(... e_{w_1}(base))` in normal-form symbols.
pub fn normalize_word(base: Base, word: &FrameWord, rules: &RewriteSystem) -> Poly {
    let mut acc = rules.normalize(&Poly::base(base));
    for &i in &word.0 {
        acc = rules.derive(&acc, i);
    }
    acc
}
