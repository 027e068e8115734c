#![allow(dead_code)]

use proptest::prelude::*;
use triharm_core::algebra::{rat, Base, DerivedSymbol, Frame, Monomial, Poly, Rational};
use triharm_core::derivation::RewriteSystem;

/// Bases and derived symbols up to word length 2 that are normal in the generic system.
pub fn symbol_pool() -> Vec<DerivedSymbol> {
    let rs = RewriteSystem::generic();
    let mut words: Vec<Vec<Frame>> = vec![vec![]];
    for a in Frame::ALL {
        words.push(vec![a]);
        for b in Frame::ALL.into_iter().filter(|&b| b >= a) {
            words.push(vec![a, b]);
        }
    }
    let mut out = Vec::new();
    for b in Base::ALL {
        for w in &words {
            let Ok(s) = DerivedSymbol::new(b, w.clone()) else { continue };
            let p = Poly::symbol(s.clone());
            if rs.normalize(&p) == p {
                out.push(s);
            }
        }
    }
    out
}

pub fn omega_pool() -> Vec<DerivedSymbol> {
    [Base::K1, Base::F2, Base::Sigma, Base::C].into_iter().map(DerivedSymbol::base).collect()
}

pub fn arb_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

pub fn arb_nonzero_rational() -> impl Strategy<Value = Rational> {
    ((1i64..=9), any::<bool>(), 1i64..=4).prop_map(|(n, neg, d)| rat(if neg { -n } else { n }, d))
}

pub fn arb_monomial(pool: Vec<DerivedSymbol>) -> impl Strategy<Value = Monomial> {
    let n = pool.len();
    prop::collection::vec((0..n, 1u32..=3), 0..=3).prop_map(move |fs| {
        Monomial::from_factors(fs.into_iter().map(|(i, e)| (pool[i].clone(), e)))
    })
}

pub fn arb_poly_over(pool: Vec<DerivedSymbol>, max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((arb_monomial(pool), arb_rational()), 0..=max_terms)
        .prop_map(Poly::from_terms)
}

pub fn arb_poly() -> impl Strategy<Value = Poly> {
    arb_poly_over(symbol_pool(), 4)
}

pub fn arb_omega_poly() -> impl Strategy<Value = Poly> {
    arb_poly_over(omega_pool(), 5)
}

pub fn arb_frame() -> impl Strategy<Value = Frame> {
    prop::sample::select(Frame::ALL.to_vec())
}
