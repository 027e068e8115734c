use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{int, Base, DerivedSymbol, PointAssignment, Poly, Rational};
use crate::derivation::RewriteSystem;

pub const DEFAULT_SEED: u64 = 0x7269_6861_726d;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleOptions {
    pub seed: u64,
    /// Draw `k1, f2, sigma` and set `c = sigma^2 - k1*f2` instead of drawing `c`.
    pub on_variety: bool,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions {
            seed: DEFAULT_SEED,
            on_variety: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub samples: usize,
    pub passed: bool,
    /// First point with a nonzero value, and that value.
    pub witness: Option<(PointAssignment, Rational)>,
}

fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-20i64..=20).into(), rng.gen_range(1i64..=9).into())
}

/// Random point with `k1 != 0`, covering every symbol of `symbols`.
pub fn random_point<R: Rng>(rng: &mut R, symbols: &[DerivedSymbol], on_variety: bool) -> PointAssignment {
    let mut at = PointAssignment::new();
    let k1 = loop {
        let v = random_rational(rng);
        if !v.is_zero() {
            break v;
        }
    };
    at.set(Base::K1.into(), k1);
    for b in Base::ALL.into_iter().filter(|b| *b != Base::K1) {
        at.set(b.into(), random_rational(rng));
    }
    if on_variety {
        fix_c(&mut at);
    }
    for s in symbols.iter().filter(|s| !s.is_base()) {
        at.set(s.clone(), random_rational(rng));
    }
    at
}

fn fix_c(at: &mut PointAssignment) {
    let v = |b: Base| at.base_value(b).cloned().unwrap_or_else(Rational::zero);
    let c = v(Base::Sigma) * v(Base::Sigma) - v(Base::K1) * v(Base::F2);
    at.set(Base::C.into(), c);
}

/// Normalizes `p` under `rules` and evaluates it exactly at `samples` points.
///
/// The first point gives every symbol the value 1; the rest are drawn from a
/// seeded generator with `k1 != 0`.
pub fn numeric_cross_check(p: &Poly, rules: &RewriteSystem, samples: usize) -> CrossCheck {
    numeric_cross_check_with(p, rules, samples, SampleOptions::default())
}

pub fn numeric_cross_check_with(
    p: &Poly,
    rules: &RewriteSystem,
    samples: usize,
    opts: SampleOptions,
) -> CrossCheck {
    let q = rules.normalize(p);
    let symbols: Vec<DerivedSymbol> = q.symbols().into_iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for n in 0..samples {
        let at = if n == 0 {
            let mut at = PointAssignment::new();
            for b in Base::ALL {
                at.set(b.into(), int(1));
            }
            if opts.on_variety {
                fix_c(&mut at);
            }
            for s in &symbols {
                if !s.is_base() {
                    at.set(s.clone(), int(1));
                }
            }
            at
        } else {
            random_point(&mut rng, &symbols, opts.on_variety)
        };
        let value = q
            .eval_with(|s| at.get(s).cloned())
            .expect("every symbol of the normal form is assigned");
        if !value.is_zero() {
            return CrossCheck {
                samples: n + 1,
                passed: false,
                witness: Some((restrict(&at, &symbols), value)),
            };
        }
    }
    CrossCheck {
        samples,
        passed: true,
        witness: None,
    }
}

fn restrict(at: &PointAssignment, symbols: &[DerivedSymbol]) -> PointAssignment {
    let mut out = PointAssignment::new();
    for s in symbols {
        if let Some(v) = at.get(s) {
            out.set(s.clone(), v.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_for_k1() {
        let r = numeric_cross_check(&Poly::base(Base::K1), &RewriteSystem::omega(), 100);
        assert!(!r.passed);
        let (at, v) = r.witness.unwrap();
        assert_eq!(at.to_string(), "k1=1");
        assert_eq!(v, int(1));
    }

    #[test]
    fn zero_passes() {
        let r = numeric_cross_check(&Poly::zero(), &RewriteSystem::generic(), 100);
        assert!(r.passed && r.samples == 100);
    }

    #[test]
    fn points_avoid_k1_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..500 {
            let at = random_point(&mut rng, &[], true);
            assert!(!at.base_value(Base::K1).unwrap().is_zero());
        }
    }
}
