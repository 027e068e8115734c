use std::fmt;

use super::frame::{koszul_connection, FrameAlgebra, Vector};
use crate::algebra::{rat, Base, Frame, Poly};
use crate::derivation::RewriteSystem;

/// A vector field along the submersion, written on the target frame `eps1, eps2`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Section {
    pub comp1: Poly,
    pub comp2: Poly,
}

impl Section {
    pub fn new(comp1: Poly, comp2: Poly) -> Self {
        Section { comp1, comp2 }
    }

    pub fn zero() -> Self {
        Section::default()
    }

    pub fn is_zero(&self) -> bool {
        self.comp1.is_zero() && self.comp2.is_zero()
    }

    pub fn component(&self, a: usize) -> &Poly {
        match a {
            0 => &self.comp1,
            _ => &self.comp2,
        }
    }

    pub fn into_pair(self) -> (Poly, Poly) {
        (self.comp1, self.comp2)
    }

    pub fn map<F: FnMut(&Poly) -> Poly>(&self, mut f: F) -> Section {
        Section::new(f(&self.comp1), f(&self.comp2))
    }

    pub fn add(&self, other: &Section) -> Section {
        Section::new(&self.comp1 + &other.comp1, &self.comp2 + &other.comp2)
    }

    pub fn sub(&self, other: &Section) -> Section {
        Section::new(&self.comp1 - &other.comp1, &self.comp2 - &other.comp2)
    }

    pub fn times(&self, f: &Poly) -> Section {
        self.map(|p| p * f)
    }

    /// Pointwise inner product in the orthonormal target frame.
    pub fn dot(&self, other: &Section) -> Poly {
        &self.comp1 * &other.comp1 + &self.comp2 * &other.comp2
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, p) in [("eps1", &self.comp1), ("eps2", &self.comp2)] {
            if p.is_zero() {
                continue;
            }
            let text = if p.len() == 1 {
                match p.to_string().as_str() {
                    "1" => name.to_string(),
                    "-1" => format!("-{name}"),
                    t => format!("{t}*{name}"),
                }
            } else {
                format!("({p})*{name}")
            };
            match (first, text.strip_prefix('-')) {
                (true, _) => f.write_str(&text)?,
                (false, Some(rest)) => write!(f, " - {rest}")?,
                (false, None) => write!(f, " + {text}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `nabla^N_{eps_a} eps_b` on the target, from `[eps1, eps2] = F1 eps1 + F2 eps2`,
/// with coefficients already pulled back to `f1`, `f2`.
pub fn target_connection() -> [[Section; 2]; 2] {
    // two-dimensional Koszul formula, same shape as on the total space
    let f1 = Poly::base(Base::F1);
    let f2 = Poly::base(Base::F2);
    let mut c: [[[Poly; 2]; 2]; 2] = Default::default();
    c[0][1] = [f1.clone(), f2.clone()];
    c[1][0] = [-&f1, -&f2];
    let half = rat(1, 2);
    let mut out: [[Section; 2]; 2] = Default::default();
    for a in 0..2 {
        for b in 0..2 {
            let comp = |d: usize| (&c[a][b][d] - &c[a][d][b] - &c[b][d][a]).scale(&half);
            out[a][b] = Section::new(comp(0), comp(1));
        }
    }
    out
}

/// `d phi(e_i)`: horizontal vectors map isometrically, `e3` is killed.
pub fn differential(v: &Vector) -> Section {
    Section::new(v[0].clone(), v[1].clone())
}

fn frame_image(i: Frame) -> Section {
    match i {
        Frame::E1 => Section::new(Poly::one(), Poly::zero()),
        Frame::E2 => Section::new(Poly::zero(), Poly::one()),
        Frame::E3 => Section::zero(),
    }
}

/// `nabla^phi_{e_i} eps_j` for `i = 1..3`, `j = 1..2`.
pub fn pullback_connection() -> [[Section; 2]; 3] {
    let target = target_connection();
    let mut out: [[Section; 2]; 3] = Default::default();
    for i in Frame::ALL {
        let dphi = frame_image(i);
        for b in 0..2 {
            out[i.idx()][b] = target[0][b]
                .times(&dphi.comp1)
                .add(&target[1][b].times(&dphi.comp2));
        }
    }
    out
}

/// Covariant derivative of sections along the submersion.
#[derive(Clone, Debug)]
pub struct PullbackCalculus<'a> {
    rs: &'a RewriteSystem,
    pullback: [[Section; 2]; 3],
    levi_civita: super::ConnectionTable,
}

impl<'a> PullbackCalculus<'a> {
    pub fn new(rs: &'a RewriteSystem) -> Self {
        PullbackCalculus {
            rs,
            pullback: pullback_connection(),
            levi_civita: koszul_connection(&FrameAlgebra::default()),
        }
    }

    pub fn rules(&self) -> &RewriteSystem {
        self.rs
    }

    fn normalize(&self, s: &Section) -> Section {
        s.map(|p| self.rs.normalize(p))
    }

    /// `nabla^phi_{e_i} s`.
    pub fn covariant(&self, i: Frame, s: &Section) -> Section {
        let row = &self.pullback[i.idx()];
        let out = Section::new(self.rs.derive(&s.comp1, i), self.rs.derive(&s.comp2, i))
            .add(&row[0].times(&s.comp1))
            .add(&row[1].times(&s.comp2));
        self.normalize(&out)
    }

    /// `nabla^phi_X s` for a vector field `X` on the total space.
    pub fn covariant_along(&self, x: &Vector, s: &Section) -> Section {
        let mut out = Section::zero();
        for i in Frame::ALL {
            if !x[i.idx()].is_zero() {
                out = out.add(&self.covariant(i, s).times(&x[i.idx()]));
            }
        }
        self.normalize(&out)
    }

    /// `tau = sum_i nabla^phi_{e_i} dphi(e_i) - dphi(nabla_{e_i} e_i)`.
    pub fn tension_field(&self) -> Section {
        let mut out = Section::zero();
        for i in Frame::ALL {
            let along = self.covariant(i, &frame_image(i));
            let correction = differential(self.levi_civita.entry(i, i));
            out = out.add(&along).sub(&correction);
        }
        self.normalize(&out)
    }

    /// `sum_i nabla_{e_i} nabla_{e_i} s - nabla_{nabla_{e_i} e_i} s`.
    pub fn rough_laplacian(&self, s: &Section) -> Section {
        let mut out = Section::zero();
        for i in Frame::ALL {
            let twice = self.covariant(i, &self.covariant(i, s));
            let lower = self.covariant_along(self.levi_civita.entry(i, i), s);
            out = out.add(&twice).sub(&lower);
        }
        self.normalize(&out)
    }

    /// Gaussian curvature of the target, `<R^N(eps1,eps2)eps2, eps1>`, pulled back.
    pub fn gaussian_curvature(&self) -> Poly {
        // horizontal frame fields are lifts of eps1, eps2, so they act on
        // pulled-back functions the same way
        let eps2 = frame_image(Frame::E2);
        let nabla_1 = |s: &Section| self.covariant(Frame::E1, s);
        let nabla_2 = |s: &Section| self.covariant(Frame::E2, s);
        let first = nabla_1(&nabla_2(&eps2));
        let second = nabla_2(&nabla_1(&eps2));
        let f1 = Poly::base(Base::F1);
        let f2 = Poly::base(Base::F2);
        let bracket = nabla_1(&eps2).times(&f1).add(&nabla_2(&eps2).times(&f2));
        let r = first.sub(&second).sub(&bracket);
        self.rs.normalize(&r.comp1)
    }

    /// `R^N(X, Y) Z = K (<Y,Z> X - <X,Z> Y)` on the surface.
    pub fn target_curvature(&self, k: &Poly, x: &Section, y: &Section, z: &Section) -> Section {
        x.times(&y.dot(z)).sub(&y.times(&x.dot(z))).times(k)
    }

    /// `J(s) = rough_laplacian(s) - sum_i R^N(s, dphi(e_i)) dphi(e_i)`.
    pub fn jacobi_operator(&self, s: &Section) -> Section {
        let k = self.gaussian_curvature();
        let mut out = self.rough_laplacian(s);
        for i in [Frame::E1, Frame::E2] {
            let e = frame_image(i);
            out = out.sub(&self.target_curvature(&k, s, &e, &e));
        }
        self.normalize(&out)
    }

    /// `- sum_i R^N(nabla^phi_{e_i} tau, tau) dphi(e_i)`.
    pub fn curvature_correction(&self, tau: &Section) -> Section {
        let k = self.gaussian_curvature();
        let mut out = Section::zero();
        for i in [Frame::E1, Frame::E2] {
            let d = self.covariant(i, tau);
            out = out.sub(&self.target_curvature(&k, &d, tau, &frame_image(i)));
        }
        self.normalize(&out)
    }

    /// `tau_3 = J(rough_laplacian(tau)) + curvature_correction(tau)`.
    pub fn tritension_field(&self) -> Section {
        let tau = self.tension_field();
        let rough = self.rough_laplacian(&tau);
        self.jacobi_operator(&rough)
            .add(&self.curvature_correction(&tau))
    }

    /// `tau_2 = rough_laplacian(tau) - sum_i R^N(dphi(e_i), tau) dphi(e_i)`.
    ///
    /// The curvature trace takes `dphi(e_i)` in the first slot. This is the
    /// orientation whose target-curvature term enters as `-K k1`.
    pub fn bitension_field(&self) -> Section {
        let k = self.gaussian_curvature();
        let tau = self.tension_field();
        let mut out = self.rough_laplacian(&tau);
        for i in [Frame::E1, Frame::E2] {
            let e = frame_image(i);
            out = out.sub(&self.target_curvature(&k, &e, &tau, &e));
        }
        self.normalize(&out)
    }
}

pub fn tension_field(rs: &RewriteSystem) -> Section {
    PullbackCalculus::new(rs).tension_field()
}

pub fn rough_laplacian(s: &Section, rs: &RewriteSystem) -> Section {
    PullbackCalculus::new(rs).rough_laplacian(s)
}

pub fn gaussian_curvature(rs: &RewriteSystem) -> Poly {
    PullbackCalculus::new(rs).gaussian_curvature()
}

/// The two components of the tritension field.
pub fn tritension_components(rs: &RewriteSystem) -> (Poly, Poly) {
    PullbackCalculus::new(rs).tritension_field().into_pair()
}

/// The two components of the bitension field for a frame with `k2 = 0`.
pub fn bitension_components(rs: &RewriteSystem) -> (Poly, Poly) {
    let rs = rs.with_vanishing([Base::K2]);
    PullbackCalculus::new(&rs).bitension_field().into_pair()
}

/// Sets `k2` and all of its derivatives to zero in a generic-mode system.
pub fn specialize_k2_zero(system: &(Poly, Poly)) -> (Poly, Poly) {
    let rs = RewriteSystem::generic().with_vanishing([Base::K2]);
    (rs.normalize(&system.0), rs.normalize(&system.1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pullback_connection_entries() {
        let pb = pullback_connection();
        assert_eq!(pb[0][0], Section::new(Poly::zero(), -Poly::base(Base::F1)));
        assert_eq!(pb[0][1], Section::new(Poly::base(Base::F1), Poly::zero()));
        assert_eq!(pb[1][0], Section::new(Poly::zero(), -Poly::base(Base::F2)));
        assert_eq!(pb[1][1], Section::new(Poly::base(Base::F2), Poly::zero()));
        assert!(pb[2][0].is_zero() && pb[2][1].is_zero());
    }

    #[test]
    fn pullback_connection_vanishes_without_f() {
        let rs = RewriteSystem::generic().with_vanishing([Base::F1, Base::F2]);
        for row in pullback_connection() {
            for s in row {
                assert!(s.map(|p| rs.normalize(p)).is_zero());
            }
        }
    }

    #[test]
    fn tension_field_in_generic_mode() {
        let tau = tension_field(&RewriteSystem::generic());
        assert_eq!(tau, Section::new(-Poly::base(Base::K1), -Poly::base(Base::K2)));
        assert_eq!(tau.to_string(), "-k1*eps1 - k2*eps2");
    }

    #[test]
    fn tension_field_special_cases() {
        let k2_zero = RewriteSystem::generic().with_vanishing([Base::K2]);
        assert_eq!(tension_field(&k2_zero), Section::new(-Poly::base(Base::K1), Poly::zero()));
        let harmonic = RewriteSystem::generic().with_vanishing([Base::K1, Base::K2]);
        assert!(tension_field(&harmonic).is_zero());
    }

    #[test]
    fn rough_laplacian_of_zero() {
        assert!(rough_laplacian(&Section::zero(), &RewriteSystem::generic()).is_zero());
    }

    #[test]
    fn gaussian_curvature_generic() {
        let k = gaussian_curvature(&RewriteSystem::generic());
        assert_eq!(k.to_string(), "-f1^2 - f2^2 - e2(f1) + e1(f2)");
    }

    #[test]
    fn gaussian_curvature_with_constant_f() {
        // constant f1, f2: every derivative of them vanishes
        let f1 = Poly::base(Base::F1);
        let f2 = Poly::base(Base::F2);
        let generic = gaussian_curvature(&RewriteSystem::generic());
        let frozen = generic.map_symbols(|s| (!s.is_base()).then(Poly::zero));
        assert_eq!(frozen, -(&f1 * &f1) - &f2 * &f2);
    }

    #[test]
    fn section_rendering() {
        let s = Section::new(Poly::one(), -Poly::base(Base::K1) - Poly::base(Base::F2));
        assert_eq!(s.to_string(), "eps1 + (-k1 - f2)*eps2");
        assert_eq!(Section::zero().to_string(), "0");
    }
}
