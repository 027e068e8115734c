//! Checks of computed geometric objects against the transcribed tables.

use crate::algebra::{Base, DerivedSymbol, Frame, Poly};
use crate::derivation::RewriteSystem;
use crate::expr::parse_expression;
use crate::geometry::{
    curvature_component, koszul_connection, pullback_connection, tension_field,
    FrameAlgebra, Section,
};
use crate::proof::{compare_up_to_scalar, Comparison};
use crate::reference::{self, frame, CURVATURE_INDICES};

fn parse_generic(src: &str) -> Poly {
    parse_expression(src)
        .expect("table entries parse")
        .to_poly(&RewriteSystem::generic())
}

fn render_vector(v: &[Poly]) -> String {
    let names = ["e1", "e2", "e3"];
    let mut parts = Vec::new();
    for (p, n) in v.iter().zip(names) {
        if p.is_zero() {
            continue;
        }
        parts.push(if p.len() == 1 { format!("{p}*{n}") } else { format!("({p})*{n}") });
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryCheck {
    pub label: String,
    pub expected: String,
    pub computed: String,
    pub ok: bool,
}

/// The nine Levi-Civita entries `nabla_{e_i} e_j` against the table.
pub fn verify_connection() -> Vec<EntryCheck> {
    let conn = koszul_connection(&FrameAlgebra::default());
    reference::CONNECTION_TABLE
        .iter()
        .map(|(i, j, comps)| {
            let expected: Vec<Poly> = comps.iter().map(|s| parse_generic(s)).collect();
            let got = conn.entry(frame(*i), frame(*j));
            EntryCheck {
                label: format!("nabla_e{i} e{j}"),
                expected: render_vector(&expected),
                computed: render_vector(got),
                ok: got.as_slice() == expected.as_slice(),
            }
        })
        .collect()
}

/// The six pullback entries and the tension field against their tables.
pub fn verify_pullback() -> Vec<EntryCheck> {
    let pb = pullback_connection();
    let mut out: Vec<EntryCheck> = reference::PULLBACK_TABLE
        .iter()
        .map(|(i, j, comps)| {
            let expected = Section::new(parse_generic(comps[0]), parse_generic(comps[1]));
            let got = &pb[frame(*i).idx()][*j as usize - 1];
            EntryCheck {
                label: format!("nabla^phi_e{i} eps{j}"),
                expected: expected.to_string(),
                computed: got.to_string(),
                ok: *got == expected,
            }
        })
        .collect();
    let expected = Section::new(parse_generic(reference::TENSION[0]), parse_generic(reference::TENSION[1]));
    let got = tension_field(&RewriteSystem::generic());
    out.push(EntryCheck {
        label: "tau".to_string(),
        expected: expected.to_string(),
        computed: got.to_string(),
        ok: got == expected,
    });
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureCheck {
    pub indices: [u8; 4],
    /// Left-hand side as displayed, after the same reductions as the computed value.
    pub expected: Poly,
    pub computed: Poly,
    /// Displayed right-hand side: `0` or `c`.
    pub rhs: Poly,
    pub comparison: Comparison,
    pub ok: bool,
}

/// Frame with `k2 = 0` on a manifold where `e3` annihilates the integrability data.
///
/// In the generic system `e3(sigma)` is already rewritten through the Jacobi
/// identity as `(e1(k2) - e2(k1) - k1*f1 - k2*f2) / 2`; with `k2 = 0` its
/// vanishing is the relation `e2(k1) = -k1*f1`.
pub fn space_form_frame(p: &Poly) -> Poly {
    let rs = RewriteSystem::generic().with_vanishing([Base::K2]);
    let e3k1 = DerivedSymbol::new(Base::K1, vec![Frame::E3]).expect("normal word");
    let e2k1 = DerivedSymbol::new(Base::K1, vec![Frame::E2]).expect("normal word");
    let k1f1 = Poly::base(Base::K1) * Poly::base(Base::F1);
    let p = rs.normalize(p);
    rs.normalize(&p.substitute(&e3k1, &Poly::zero()).substitute(&e2k1, &-k1f1))
}

/// The seven displayed curvature components.
///
/// Components whose displayed value is `c` must match exactly. Components
/// displayed as `= 0` are equations, so they match up to a nonzero scalar.
pub fn verify_curvature() -> Vec<CurvatureCheck> {
    let fa = FrameAlgebra::default();
    let conn = koszul_connection(&fa);
    let generic = RewriteSystem::generic();
    CURVATURE_INDICES
        .iter()
        .map(|&idx| {
            let [i, j, k, l] = idx.map(frame);
            let computed = space_form_frame(&curvature_component(&conn, &fa, &generic, i, j, k, l));
            let eq = reference::curvature_display(idx).equation().expect("display parses");
            let expected = space_form_frame(&eq.lhs.to_poly(&generic));
            let rhs = eq.rhs.map(|r| r.to_poly(&generic)).unwrap_or_else(Poly::zero);
            let comparison = compare_up_to_scalar(&computed, &expected);
            let ok = match comparison {
                Comparison::ExactMatch => true,
                Comparison::ScalarMatch(_) => rhs.is_zero(),
                _ => false,
            };
            CurvatureCheck { indices: idx, expected, computed, rhs, comparison, ok }
        })
        .collect()
}
