use std::fmt;

use crate::algebra::{rat, Frame, Poly};
use crate::derivation::{structure_coefficients, RewriteSystem};

/// Components of a tangent vector field on the frame `e1, e2, e3`.
pub type Vector = [Poly; 3];

/// Bracket structure coefficients: `[e_i, e_j] = sum_k c_ij^k e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameAlgebra {
    c: [[[Poly; 3]; 3]; 3],
}

impl Default for FrameAlgebra {
    /// `[e1,e3] = k1 e3`, `[e2,e3] = k2 e3`, `[e1,e2] = f1 e1 + f2 e2 - 2 sigma e3`.
    fn default() -> Self {
        FrameAlgebra {
            c: structure_coefficients(),
        }
    }
}

impl FrameAlgebra {
    pub fn new(c: [[[Poly; 3]; 3]; 3]) -> Self {
        FrameAlgebra { c }
    }

    /// All brackets vanish.
    pub fn abelian() -> Self {
        FrameAlgebra {
            c: Default::default(),
        }
    }

    /// Builds an antisymmetric algebra from the coefficients of `[e_i, e_j]` for `i < j`.
    pub fn from_upper<F: FnMut(Frame, Frame, Frame) -> Poly>(mut f: F) -> Self {
        let mut c: [[[Poly; 3]; 3]; 3] = Default::default();
        for i in 0..3 {
            for j in i + 1..3 {
                for k in 0..3 {
                    let p = f(Frame::from_idx(i), Frame::from_idx(j), Frame::from_idx(k));
                    c[j][i][k] = -&p;
                    c[i][j][k] = p;
                }
            }
        }
        FrameAlgebra { c }
    }

    pub fn coefficient(&self, i: Frame, j: Frame, k: Frame) -> &Poly {
        &self.c[i.idx()][j.idx()][k.idx()]
    }

    pub fn bracket(&self, i: Frame, j: Frame) -> Vector {
        self.c[i.idx()][j.idx()].clone()
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..3).all(|i| {
            (0..3).all(|j| (0..3).all(|k| self.c[i][j][k] == -&self.c[j][i][k]))
        })
    }
}

/// Levi-Civita connection on the orthonormal frame: `gamma[i][j][k]` is the
/// coefficient of `e_k` in `nabla_{e_i} e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionTable {
    gamma: [[[Poly; 3]; 3]; 3],
}

impl ConnectionTable {
    pub fn coefficient(&self, i: Frame, j: Frame, k: Frame) -> &Poly {
        &self.gamma[i.idx()][j.idx()][k.idx()]
    }

    /// `nabla_{e_i} e_j`.
    pub fn entry(&self, i: Frame, j: Frame) -> &Vector {
        &self.gamma[i.idx()][j.idx()]
    }

    /// Pairs `(i, j, k)` where `gamma_ij^k != -gamma_ik^j`.
    pub fn metric_defects(&self) -> Vec<(Frame, Frame, Frame)> {
        triples()
            .filter(|&(i, j, k)| *self.coefficient(i, j, k) != -self.coefficient(i, k, j))
            .collect()
    }

    /// Triples where `gamma_ij^k - gamma_ji^k != c_ij^k`.
    pub fn torsion_defects(&self, fa: &FrameAlgebra) -> Vec<(Frame, Frame, Frame)> {
        triples()
            .filter(|&(i, j, k)| {
                self.coefficient(i, j, k) - self.coefficient(j, i, k) != *fa.coefficient(i, j, k)
            })
            .collect()
    }

    /// `nabla_{e_i} v` for a vector field `v`.
    pub fn covariant(&self, rs: &RewriteSystem, i: Frame, v: &Vector) -> Vector {
        let mut out: Vector = Default::default();
        for l in Frame::ALL {
            let vl = &v[l.idx()];
            if vl.is_zero() {
                continue;
            }
            out[l.idx()] += &rs.derive(vl, i);
            for m in Frame::ALL {
                out[m.idx()] += &(vl * self.coefficient(i, l, m));
            }
        }
        out
    }
}

fn triples() -> impl Iterator<Item = (Frame, Frame, Frame)> {
    Frame::ALL.into_iter().flat_map(|i| {
        Frame::ALL
            .into_iter()
            .flat_map(move |j| Frame::ALL.into_iter().map(move |k| (i, j, k)))
    })
}

/// Koszul formula for an orthonormal frame:
/// `gamma_ij^k = (c_ij^k - c_ik^j - c_jk^i) / 2`.
pub fn koszul_connection(fa: &FrameAlgebra) -> ConnectionTable {
    let half = rat(1, 2);
    let mut gamma: [[[Poly; 3]; 3]; 3] = Default::default();
    for (i, j, k) in triples() {
        let p = fa.coefficient(i, j, k) - fa.coefficient(i, k, j) - fa.coefficient(j, k, i);
        gamma[i.idx()][j.idx()][k.idx()] = p.scale(&half);
    }
    ConnectionTable { gamma }
}

/// `R(e_i, e_j) e_k = nabla_i nabla_j e_k - nabla_j nabla_i e_k - nabla_[e_i,e_j] e_k`.
pub fn curvature_vector(
    conn: &ConnectionTable,
    fa: &FrameAlgebra,
    rs: &RewriteSystem,
    i: Frame,
    j: Frame,
    k: Frame,
) -> Vector {
    let a = conn.covariant(rs, i, conn.entry(j, k));
    let b = conn.covariant(rs, j, conn.entry(i, k));
    let mut out: Vector = Default::default();
    for l in 0..3 {
        out[l] = &a[l] - &b[l];
    }
    for m in Frame::ALL {
        let cm = fa.coefficient(i, j, m);
        if cm.is_zero() {
            continue;
        }
        for (l, g) in conn.entry(m, k).iter().enumerate() {
            out[l] -= &(cm * g);
        }
    }
    out.map(|p| rs.normalize(&p))
}

/// `R_ijkl = <R(e_i, e_j) e_l, e_k>`.
///
/// With this placement `R_ijij` is the sectional curvature of the plane
/// spanned by `e_i, e_j`, so on a space form `R_1313 = R_1212 = R_2323 = c`.
pub fn curvature_component(
    conn: &ConnectionTable,
    fa: &FrameAlgebra,
    rs: &RewriteSystem,
    i: Frame,
    j: Frame,
    k: Frame,
    l: Frame,
) -> Poly {
    curvature_vector(conn, fa, rs, i, j, l)[k.idx()].clone()
}

/// All 81 components of the Riemann tensor in the frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureComponents {
    r: Vec<Poly>,
}

fn flat(i: Frame, j: Frame, k: Frame, l: Frame) -> usize {
    ((i.idx() * 3 + j.idx()) * 3 + k.idx()) * 3 + l.idx()
}

impl CurvatureComponents {
    pub fn compute(conn: &ConnectionTable, fa: &FrameAlgebra, rs: &RewriteSystem) -> Self {
        let mut r = vec![Poly::zero(); 81];
        for (i, j, l) in triples() {
            let v = curvature_vector(conn, fa, rs, i, j, l);
            for k in Frame::ALL {
                r[flat(i, j, k, l)] = v[k.idx()].clone();
            }
        }
        CurvatureComponents { r }
    }

    pub fn get(&self, i: Frame, j: Frame, k: Frame, l: Frame) -> &Poly {
        &self.r[flat(i, j, k, l)]
    }

    /// Every failed instance of antisymmetry, pair symmetry or the first Bianchi identity.
    pub fn symmetry_violations(&self) -> Vec<SymmetryViolation> {
        let mut out = Vec::new();
        for (i, j, k) in triples() {
            for l in Frame::ALL {
                let r = self.get(i, j, k, l);
                if *r != -self.get(j, i, k, l) {
                    out.push(SymmetryViolation::FirstPair([i, j, k, l]));
                }
                if *r != -self.get(i, j, l, k) {
                    out.push(SymmetryViolation::SecondPair([i, j, k, l]));
                }
                if r != self.get(k, l, i, j) {
                    out.push(SymmetryViolation::PairExchange([i, j, k, l]));
                }
                // <R(e_i,e_j)e_l + R(e_j,e_l)e_i + R(e_l,e_i)e_j, e_k> = 0
                let bianchi =
                    self.get(i, j, k, l).clone() + self.get(j, l, k, i) + self.get(l, i, k, j);
                if !bianchi.is_zero() {
                    out.push(SymmetryViolation::Bianchi([i, j, k, l]));
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryViolation {
    FirstPair([Frame; 4]),
    SecondPair([Frame; 4]),
    PairExchange([Frame; 4]),
    Bianchi([Frame; 4]),
}

impl fmt::Display for SymmetryViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (name, idx) = match self {
            SymmetryViolation::FirstPair(x) => ("antisymmetry in the first pair", x),
            SymmetryViolation::SecondPair(x) => ("antisymmetry in the second pair", x),
            SymmetryViolation::PairExchange(x) => ("pair exchange", x),
            SymmetryViolation::Bianchi(x) => ("first Bianchi identity", x),
        };
        let n: Vec<String> = idx.iter().map(|i| i.number().to_string()).collect();
        write!(f, "{name} fails at R_{}", n.join(""))
    }
}
