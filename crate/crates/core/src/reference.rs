//! Transcriptions of the published formulas into the surface syntax.
//!
//! Sources may use the abbreviations `A`, `B` (components of the rough
//! Laplacian of the tension field), `Ap`, `Bp` (their `k2 = 0` versions) and
//! `K` (Gaussian curvature of the target). They are expanded textually before
//! parsing.

use crate::algebra::{Frame, Poly};
use crate::derivation::RewriteSystem;
use crate::error::{Error, Result};
use crate::expr::{parse_equation, Equation};

const ABBREVIATIONS: [(&str, &str); 5] = [
    (
        "A",
        "-L(k1) - f1*e1(k2) - e1(k2*f1) - f2*e2(k2) - e2(k2*f2) + k1*k2*f1 + f2*k2^2 \
         + k1*f1^2 + k1*f2^2",
    ),
    (
        "B",
        "-L(k2) + f1*e1(k1) + e1(k1*f1) + f2*e2(k1) + e2(k1*f2) - k1*k2*f2 - f1*k1^2 \
         + k2*f1^2 + k2*f2^2",
    ),
    ("Ap", "-L(k1) + k1*f1^2 + k1*f2^2"),
    ("Bp", "f1*e1(k1) + e1(k1*f1) + f2*e2(k1) + e2(k1*f2) - f1*k1^2"),
    ("K", "e1(f2) - e2(f1) - f1^2 - f2^2"),
];

/// Which rewrite system a display is stated in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Generic,
    /// generic, with `k2` and its derivatives set to zero
    K2Zero,
    Omega,
}

impl Regime {
    pub fn rules(self) -> RewriteSystem {
        match self {
            Regime::Generic => RewriteSystem::generic(),
            Regime::K2Zero => RewriteSystem::generic().with_vanishing([crate::algebra::Base::K2]),
            Regime::Omega => RewriteSystem::omega(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Display {
    pub id: &'static str,
    pub source: &'static str,
    pub regime: Regime,
    /// Set when the printed formula has a misprint and the source is the corrected reading.
    pub typo: Option<&'static str>,
}

impl Display {
    /// The source with abbreviations expanded.
    pub fn expanded(&self) -> String {
        expand(self.source)
    }

    pub fn equation(&self) -> Result<Equation> {
        parse_equation(&self.expanded())
    }

    /// `lhs - rhs` in the display's own regime.
    pub fn poly(&self) -> Poly {
        self.poly_in(&self.regime.rules())
    }

    pub fn poly_in(&self, rs: &RewriteSystem) -> Poly {
        self.equation()
            .unwrap_or_else(|e| panic!("transcription {} does not parse: {e}", self.id))
            .to_poly(rs)
    }
}

const fn d(id: &'static str, source: &'static str, regime: Regime) -> Display {
    Display { id, source, regime, typo: None }
}

const fn t(id: &'static str, source: &'static str, regime: Regime, typo: &'static str) -> Display {
    Display { id, source, regime, typo: Some(typo) }
}

use Regime::{Generic, K2Zero, Omega};

pub const DISPLAYS: &[Display] = &[
    d("sys.laplacian_k1", "L(k1) = e1(e1(k1)) + e2(e2(k1)) + e3(e3(k1)) + f1*e2(k1) - f2*e1(k1) - k1*e1(k1) - k2*e2(k1)", Generic),
    d("sys.gaussian_curvature", "K", Generic),
    d("sys.a", "A", Generic),
    d("sys.b", "B", Generic),
    d(
        "sys.jacobi.1",
        "L(A) + f1*e1(B) + e1(B*f1) + f2*e2(B) + e2(B*f2) - f1*k1*B - k2*f2*B - A*(f1^2 + f2^2) - A*K",
        Generic,
    ),
    d(
        "sys.jacobi.2",
        "L(B) - f1*e1(A) - e1(A*f1) - f2*e2(A) - e2(A*f2) + f1*k1*A + f2*k2*A - B*(f1^2 + f2^2) - B*K",
        Generic,
    ),
    d("sys.correction.1", "K*(-e2(k1)*k2 + e2(k2)*k1 - k1^2*f2 - k2^2*f2)", Generic),
    d("sys.correction.2", "K*(e1(k1)*k2 - e1(k2)*k1 + k1^2*f1 + k2^2*f1)", Generic),
    d(
        "sys.tritension.1",
        "L(A) + f1*e1(B) + e1(B*f1) + f2*e2(B) + e2(B*f2) - f1*k1*B - k2*f2*B \
         - A*(K + f1^2 + f2^2) + K*(-e2(k1)*k2 + e2(k2)*k1 - k1^2*f2 - k2^2*f2) = 0",
        Generic,
    ),
    d(
        "sys.tritension.2",
        "L(B) - f1*e1(A) - e1(A*f1) - f2*e2(A) - e2(A*f2) + f1*k1*A + f2*k2*A \
         - B*(K + f1^2 + f2^2) + K*(e1(k1)*k2 - e1(k2)*k1 + k1^2*f1 + k2^2*f1) = 0",
        Generic,
    ),
    d("vertical.f1", "e3(f1) = 0", Generic),
    d("vertical.f2", "e3(f2) = 0", Generic),
    d("vertical.k1", "e3(k1) = 0", Generic),
    d("vertical.k2", "e3(k2) = 0", Generic),
    d("vertical.sigma", "e3(sigma) = 0", Generic),
    d("red.a_prime", "Ap", K2Zero),
    d("red.b_prime", "Bp", K2Zero),
    d(
        "red.tritension.1",
        "L(Ap) + f1*e1(Bp) + e1(Bp*f1) + f2*e2(Bp) + e2(Bp*f2) - f1*k1*Bp \
         - Ap*(K + f1^2 + f2^2) - K*(k1^2*f2) = 0",
        K2Zero,
    ),
    d(
        "red.tritension.2",
        "L(Bp) - f1*e1(Ap) - e1(Ap*f1) - f2*e2(Ap) - e2(Ap*f2) + f1*k1*Ap \
         - Bp*(K + f1^2 + f2^2) + K*(k1^2*f1) = 0",
        K2Zero,
    ),
    d("red.bitension.1", "-L(k1) + k1*(-K + f1^2 + f2^2) = 0", K2Zero),
    d("red.bitension.2", "f1*e1(k1) + e1(k1*f1) + f2*e2(k1) + e2(k1*f2) - k1^2*f1 = 0", K2Zero),
    d("curvature.1312", "e1(sigma) - 2*k1*sigma = 0", K2Zero),
    d("curvature.1313", "-(-e1(k1) - sigma^2 + k1^2) = c", K2Zero),
    d("curvature.1323", "k1*f1 = 0", K2Zero),
    d("curvature.1212", "-(e2(f1) - e1(f2) + f1^2 + f2^2 + 3*sigma^2) = c", K2Zero),
    d("curvature.1223", "e2(sigma) = 0", K2Zero),
    d("curvature.2313", "e2(k1) = 0", K2Zero),
    d("curvature.2323", "-(-sigma^2 + k1*f2) = c", K2Zero),
    d("omega.e1_sigma", "e1(sigma) = 2*k1*sigma", Omega),
    d("omega.e1_k1", "e1(k1) = k1^2 - k1*f2", Omega),
    d("omega.e1_f2", "e1(f2) = f2^2 - k1*f2 + 4*sigma^2", Omega),
    d("tri.a_prime", "-k1^3 + 2*f2*k1^2 + 4*sigma^2*k1", Omega),
    d(
        "tri.omega_form",
        "L(-k1^3 + 2*f2*k1^2 + 4*sigma^2*k1) - (-k1^3 + 2*f2*k1^2 + 4*sigma^2*k1)*e1(f2) \
         - (e1(f2) - f2^2)*(f2*k1^2) = 0",
        Omega,
    ),
    d(
        "tri.omega_laplacian",
        "L(-k1^3 + 2*f2*k1^2 + 4*sigma^2*k1) = e1(e1(-k1^3 + 2*f2*k1^2 + 4*sigma^2*k1)) \
         - f2*e1(-k1^3 + 2*f2*k1^2 + 4*sigma^2*k1) - k1*e1(-k1^3 + 2*f2*k1^2 + 4*sigma^2*k1)",
        Omega,
    ),
    d(
        "tri.a_prime_e1",
        "-3*k1^4 + 5*f2*k1^3 + (-2*f2^2 + 28*sigma^2)*k1^2 - 4*sigma^2*f2*k1",
        Omega,
    ),
    d(
        "tri.a_prime_e1e1",
        "-12*k1^5 + 22*f2*k1^4 + (-10*f2^2 + 188*sigma^2)*k1^3 - 88*sigma^2*f2*k1^2 - 16*sigma^4*k1",
        Omega,
    ),
    t(
        "tri.quintic",
        "-9*k1^5 + 19*f2*k1^4 + (164*sigma^2 - 9*f2^2)*k1^3 - 120*sigma^2*f2*k1^2 - 32*sigma^4*k1 = 0",
        Omega,
        "last term printed as -32 sigma^4 k; read as k1",
    ),
    d(
        "tri.quartic",
        "-9*k1^4 + 19*f2*k1^3 + (164*sigma^2 - 9*f2^2)*k1^2 - 120*sigma^2*f2*k1 - 32*sigma^4 = 0",
        Omega,
    ),
    t(
        "tri.quartic_e1",
        "-18*k1^4 + 37*f2*k1^3 + (-19*f2^2 + 530*sigma^2)*k1^2 - 440*sigma^2*f2*k1 - 368*sigma^4 = 0",
        Omega,
        "leading term printed as -18 k^4; read as k1",
    ),
    t(
        "tri.cubic_combo",
        "f2*k1^3 + (-202*sigma^2 + f2^2)*k1^2 + 200*sigma^2*f2*k1 + 304*sigma^4 = 0",
        Omega,
        "leading term printed as f2 k^3; read as k1",
    ),
    d(
        "tri.cubic_combo_e1",
        "f2*k1^3 + (-f2^2 - 604*sigma^2)*k1^2 + 606*sigma^2*f2*k1 + 1616*sigma^4 = 0",
        Omega,
    ),
    d("tri.quadratic_combo", "(201*sigma^2 + f2^2)*k1^2 - 203*sigma^2*f2*k1 - 656*sigma^4 = 0", Omega),
    d("tri.quadratic_combo_2", "-f2^2*k1^2 + 2*sigma^2*f2*k1 - 354*sigma^4 = 0", Omega),
    d("tri.curvature_square", "-353*sigma^4 = c^2", Omega),
    d("tri.sigma_vanishing", "sigma^4*k1 = 0", Omega),
    d("tri.k1_f2", "k1*f2 = 0", Omega),
    d("tri.k1_e1", "e1(k1) = k1^2", Omega),
    d("tri.laplacian_cube", "L(k1^3) = 0", Omega),
    d("tri.k1_fifth", "k1^5 = 0", Omega),
    d(
        "bi.laplacian_k1",
        "-L(k1) = 5*k1*sigma^2 - k1^3 - k1*c + f2*(k1^2 - sigma^2 + c)",
        Omega,
    ),
    d("bi.k1_factor", "k1^2*(3*sigma^2 - k1^2 - 3*c) = 0", Omega),
    d("bi.quadric", "3*sigma^2 - k1^2 - 3*c = 0", Omega),
    d("bi.k1_squared", "k1^2 = 7*sigma^2 - c", Omega),
];

/// The nine entries `nabla_{e_i} e_j` as `(i, j, [e1, e2, e3] components)`.
pub const CONNECTION_TABLE: [(u8, u8, [&str; 3]); 9] = [
    (1, 1, ["0", "-f1", "0"]),
    (1, 2, ["f1", "0", "-sigma"]),
    (1, 3, ["0", "sigma", "0"]),
    (2, 1, ["0", "-f2", "sigma"]),
    (2, 2, ["f2", "0", "0"]),
    (2, 3, ["-sigma", "0", "0"]),
    (3, 1, ["0", "sigma", "-k1"]),
    (3, 2, ["-sigma", "0", "-k2"]),
    (3, 3, ["k1", "k2", "0"]),
];

/// `nabla^phi_{e_i} eps_j` as `(i, j, [eps1, eps2] components)`.
pub const PULLBACK_TABLE: [(u8, u8, [&str; 2]); 6] = [
    (1, 1, ["0", "-f1"]),
    (1, 2, ["f1", "0"]),
    (2, 1, ["0", "-f2"]),
    (2, 2, ["f2", "0"]),
    (3, 1, ["0", "0"]),
    (3, 2, ["0", "0"]),
];

pub const TENSION: [&str; 2] = ["-k1", "-k2"];

/// Index quadruples of the seven displayed curvature components, in display order.
pub const CURVATURE_INDICES: [[u8; 4]; 7] = [
    [1, 3, 1, 2],
    [1, 3, 1, 3],
    [1, 3, 2, 3],
    [1, 2, 1, 2],
    [1, 2, 2, 3],
    [2, 3, 1, 3],
    [2, 3, 2, 3],
];

pub fn lookup(id: &str) -> Result<&'static Display> {
    DISPLAYS
        .iter()
        .find(|d| d.id == id)
        .ok_or_else(|| Error::UnknownDisplay(id.to_string()))
}

/// The display for a curvature component, e.g. `[1, 3, 1, 3]`.
pub fn curvature_display(idx: [u8; 4]) -> &'static Display {
    let id = format!("curvature.{}{}{}{}", idx[0], idx[1], idx[2], idx[3]);
    lookup(&id).expect("all seven components are transcribed")
}

pub fn frame(n: u8) -> Frame {
    Frame::from_number(n).expect("frame index in 1..=3")
}

fn expand(src: &str) -> String {
    let mut out = String::with_capacity(src.len());
    let mut ident = String::new();
    let flush = |ident: &mut String, out: &mut String| {
        if ident.is_empty() {
            return;
        }
        match ABBREVIATIONS.iter().find(|(name, _)| *name == ident.as_str()) {
            Some((_, body)) => {
                out.push('(');
                out.push_str(&expand(body));
                out.push(')');
            }
            None => out.push_str(ident),
        }
        ident.clear();
    };
    for ch in src.chars() {
        if ch.is_alphanumeric() || ch == '_' {
            ident.push(ch);
        } else {
            flush(&mut ident, &mut out);
            out.push(ch);
        }
    }
    flush(&mut ident, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_transcription_parses() {
        for d in DISPLAYS {
            d.equation().unwrap_or_else(|e| panic!("{}: {e}", d.id));
        }
    }

    #[test]
    fn abbreviations_expand_whole_identifiers_only() {
        assert_eq!(expand("K*k1"), "(e1(f2) - e2(f1) - f1^2 - f2^2)*k1");
        assert!(expand("Ap").starts_with("(-L(k1)"));
    }

    #[test]
    fn omega_rules_hold_in_omega() {
        for id in ["omega.e1_sigma", "omega.e1_k1", "omega.e1_f2"] {
            assert!(lookup(id).unwrap().poly().is_zero(), "{id}");
        }
    }
}
