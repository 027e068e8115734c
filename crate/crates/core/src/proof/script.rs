use std::fmt;

use num_traits::Signed;

use super::compare::{compare_up_to_scalar, Comparison};
use super::report::{Conclusion, Failure, Report, StepRecord, Verdict};
use crate::algebra::{Base, DerivedSymbol, Monomial, Poly, Rational};
use crate::derivation::{Mode, RewriteSystem};
use crate::error::{Error, Result};
use crate::expr::parse_equation;
use crate::geometry::{bitension_components, tritension_components, PullbackCalculus};
use crate::reference;

/// Polynomials a script can start from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Seed {
    /// First component of the tritension field.
    Triharmonic,
    /// First component of the bitension field.
    Biharmonic,
    /// First component of the rough Laplacian of the tension field.
    APrime,
    /// One of the seven space-form constraints, numbered from 1.
    Constraint(usize),
    /// An equation in the surface syntax.
    Literal(String),
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Seed::Triharmonic => f.write_str("triharmonic"),
            Seed::Biharmonic => f.write_str("biharmonic"),
            Seed::APrime => f.write_str("a_prime"),
            Seed::Constraint(n) => write!(f, "constraint {n}"),
            Seed::Literal(s) => write!(f, "\"{s}\""),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepKind {
    Seed(Seed),
    ApplyE1(usize),
    /// `a * #ref_a + b * #ref_b`
    LinearCombine {
        a: Rational,
        ref_a: usize,
        b: Rational,
        ref_b: usize,
    },
    DivideByPower {
        input: usize,
        symbol: Base,
        power: u32,
    },
    /// Rewrites `k1*f2` as `sigma^2 - c`.
    SubstituteC(usize),
    /// Renormalizes under everything concluded so far.
    Reduce(usize),
    Laplacian(usize),
    /// Passes the input through unchanged so it can be compared with a display.
    AssertEqualsPaper(usize),
    ConcludeVanishes {
        input: usize,
        symbol: Base,
    },
}

impl StepKind {
    pub fn inputs(&self) -> Vec<usize> {
        match self {
            StepKind::Seed(_) => vec![],
            StepKind::ApplyE1(i)
            | StepKind::SubstituteC(i)
            | StepKind::Reduce(i)
            | StepKind::Laplacian(i)
            | StepKind::AssertEqualsPaper(i)
            | StepKind::DivideByPower { input: i, .. }
            | StepKind::ConcludeVanishes { input: i, .. } => vec![*i],
            StepKind::LinearCombine { ref_a, ref_b, .. } => vec![*ref_a, *ref_b],
        }
    }
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepKind::Seed(s) => write!(f, "Seed({s})"),
            StepKind::ApplyE1(i) => write!(f, "ApplyE1(#{i})"),
            StepKind::LinearCombine { a, ref_a, b, ref_b } => {
                write!(f, "LinearCombine({a}*#{ref_a}")?;
                if b.is_negative() {
                    write!(f, " - {}*#{ref_b})", -b)
                } else {
                    write!(f, " + {b}*#{ref_b})")
                }
            }
            StepKind::DivideByPower { input, symbol, power } => {
                write!(f, "DivideByPower(#{input}, {symbol}^{power})")
            }
            StepKind::SubstituteC(i) => write!(f, "SubstituteC(#{i})"),
            StepKind::Reduce(i) => write!(f, "Reduce(#{i})"),
            StepKind::Laplacian(i) => write!(f, "Laplacian(#{i})"),
            StepKind::AssertEqualsPaper(i) => write!(f, "AssertEqualsPaper(#{i})"),
            StepKind::ConcludeVanishes { input, symbol } => {
                write!(f, "ConcludeVanishes(#{input}, {symbol})")
            }
        }
    }
}

/// What a step's result is compared against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    /// A transcribed display, by id, as `lhs - rhs`.
    Display(&'static str),
    /// The right-hand side of a transcribed display `lhs = rhs`.
    DisplayRhs(&'static str),
    /// An ad hoc equation in the surface syntax.
    Literal(String),
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Display(id) => f.write_str(id),
            Target::DisplayRhs(id) => write!(f, "{id} (right-hand side)"),
            Target::Literal(s) => write!(f, "literal: {s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub target: Target,
    /// A recorded expectation is compared and reported but never fails the script.
    pub asserted: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofStep {
    pub kind: StepKind,
    pub expect: Option<Expectation>,
}

impl ProofStep {
    pub fn new(kind: StepKind) -> Self {
        ProofStep { kind, expect: None }
    }

    pub fn expect(mut self, id: &'static str) -> Self {
        self.expect = Some(Expectation {
            target: Target::Display(id),
            asserted: true,
            note: None,
        });
        self
    }

    /// Compares against the right-hand side of display `id`.
    pub fn expect_rhs(mut self, id: &'static str) -> Self {
        self.expect = Some(Expectation {
            target: Target::DisplayRhs(id),
            asserted: true,
            note: None,
        });
        self
    }

    pub fn expect_literal(mut self, src: &str) -> Self {
        self.expect = Some(Expectation {
            target: Target::Literal(src.to_string()),
            asserted: true,
            note: None,
        });
        self
    }

    /// Compares against `id` for the record only.
    pub fn record(mut self, id: &'static str, note: &str) -> Self {
        self.expect = Some(Expectation {
            target: Target::Display(id),
            asserted: false,
            note: Some(note.to_string()),
        });
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofScript {
    pub id: String,
    pub steps: Vec<ProofStep>,
}

impl ProofScript {
    pub fn new(id: &str) -> Self {
        ProofScript {
            id: id.to_string(),
            steps: Vec::new(),
        }
    }

    /// Appends a step and returns its index.
    pub fn push(&mut self, step: ProofStep) -> usize {
        self.steps.push(step);
        self.steps.len() - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepOutcome {
    pub result: Poly,
    pub comparison: Comparison,
    pub note: Option<String>,
    pub conclusion: Option<Conclusion>,
}

fn k1f2() -> Monomial {
    Monomial::var(Base::K1.into()).mul(&Monomial::var(Base::F2.into()))
}

/// `sigma^2 - c`, the value of `k1*f2` on a space form.
fn curvature_relation() -> Poly {
    Poly::base(Base::Sigma).pow(2) - Poly::base(Base::C)
}

pub fn substitute_c(p: &Poly, rules: &RewriteSystem) -> Poly {
    rules.normalize(&p.rewrite_monomial(&k1f2(), &curvature_relation()))
}

/// Eliminates `c` with `c = sigma^2 - k1*f2`.
fn eliminate_c(p: &Poly, rules: &RewriteSystem) -> Poly {
    let c = DerivedSymbol::base(Base::C);
    let value = Poly::base(Base::Sigma).pow(2) - Poly::base(Base::K1) * Poly::base(Base::F2);
    rules.normalize(&p.substitute(&c, &value))
}

fn seed_poly(seed: &Seed, rules: &RewriteSystem) -> Result<Poly> {
    Ok(match seed {
        Seed::Triharmonic => tritension_components(rules).0,
        Seed::Biharmonic => bitension_components(rules).0,
        Seed::APrime => {
            let pc = PullbackCalculus::new(rules);
            pc.rough_laplacian(&pc.tension_field()).comp1
        }
        Seed::Constraint(n) => {
            let all = space_form_constraints();
            let p = n
                .checked_sub(1)
                .and_then(|i| all.get(i))
                .ok_or_else(|| Error::UnknownDisplay(format!("constraint {n}")))?;
            rules.normalize(p)
        }
        Seed::Literal(src) => parse_equation(src)?.to_poly(rules),
    })
}

/// The seven equations a space form imposes on the integrability data with `k2 = 0`,
/// each written as `lhs - rhs`.
pub fn space_form_constraints() -> Vec<Poly> {
    reference::CURVATURE_INDICES
        .iter()
        .map(|&idx| reference::curvature_display(idx).poly())
        .collect()
}

fn expected_poly(target: &Target, rules: &RewriteSystem) -> Result<Poly> {
    match target {
        Target::Display(id) => Ok(reference::lookup(id)?.poly_in(rules)),
        Target::DisplayRhs(id) => {
            let eq = reference::lookup(id)?.equation()?;
            Ok(eq.rhs.map(|r| r.to_poly(rules)).unwrap_or_else(Poly::zero))
        }
        Target::Literal(src) => Ok(parse_equation(src)?.to_poly(rules)),
    }
}

/// Applies one step to the outcomes of the steps before it.
pub fn apply_step(state: &[StepOutcome], step: &ProofStep, rules: &RewriteSystem) -> Result<StepOutcome> {
    let index = state.len();
    let input = |i: usize| -> Result<&Poly> {
        if i < index {
            Ok(&state[i].result)
        } else {
            Err(Error::InvalidRef { step: index, target: i })
        }
    };
    let mut conclusion = None;
    let result = match &step.kind {
        StepKind::Seed(seed) => seed_poly(seed, rules)?,
        StepKind::ApplyE1(i) => rules.derive(input(*i)?, crate::algebra::Frame::E1),
        StepKind::LinearCombine { a, ref_a, b, ref_b } => {
            rules.normalize(&(input(*ref_a)?.scale(a) + input(*ref_b)?.scale(b)))
        }
        StepKind::DivideByPower { input: i, symbol, power } => {
            input(*i)?.factor_out_power(&DerivedSymbol::base(*symbol), *power)?
        }
        StepKind::SubstituteC(i) => substitute_c(input(*i)?, rules),
        StepKind::Reduce(i) | StepKind::AssertEqualsPaper(i) => rules.normalize(input(*i)?),
        StepKind::Laplacian(i) => rules.laplacian(input(*i)?),
        StepKind::ConcludeVanishes { input: i, symbol } => {
            let p = rules.normalize(input(*i)?);
            conclusion = Some(conclude(&p, *symbol, index, rules));
            Poly::base(*symbol)
        }
    };
    let (comparison, note) = match &step.expect {
        None => (Comparison::NoExpectation, None),
        Some(e) => {
            let expected = expected_poly(&e.target, rules)?;
            let mut cmp = compare_up_to_scalar(&result, &expected);
            let mut note = e.note.clone();
            if cmp.is_mismatch() && rules.mode() == Mode::Omega {
                let alt = compare_up_to_scalar(&eliminate_c(&result, rules), &eliminate_c(&expected, rules));
                if alt.is_match() {
                    cmp = alt;
                    note = Some("after eliminating c = sigma^2 - k1*f2".to_string());
                }
            }
            (cmp, note)
        }
    };
    Ok(StepOutcome { result, comparison, note, conclusion })
}

/// Decides whether `p = 0` forces `s = 0`, returning the conclusion with its
/// justification or, if nothing is forced, a conclusion with `forced == false`.
fn conclude(p: &Poly, s: Base, step: usize, rules: &RewriteSystem) -> Conclusion {
    let nonvanishing = |b: Base| rules.mode() == Mode::Omega && b == Base::K1;
    let target = DerivedSymbol::base(s);
    let only = |m: &Monomial| m.symbols().all(|x| x.is_base() && (x == &target || nonvanishing(x.base_field())));
    let statement = if nonvanishing(s) {
        "contradiction: k1 vanishes on Omega".to_string()
    } else {
        format!("{s} = 0 on Omega")
    };
    let mut out = Conclusion {
        statement,
        step,
        justification: String::new(),
        forced: false,
        contradiction: nonvanishing(s),
    };
    if p.len() == 1 {
        let (m, c) = p.leading_term().expect("one term");
        if m.exponent(&target) > 0 && only(m) {
            out.forced = true;
            out.justification = format!("single term {}: a nonzero multiple of a power of {s}", Poly::term(c.clone(), m.clone()));
            if !nonvanishing(s) && m.degree() > m.exponent(&target) {
                out.justification.push_str(" times a power of k1, which is nonzero on Omega");
            }
            return out;
        }
    }
    let even = p.terms().all(|(m, _)| m.factors().iter().all(|(_, e)| e % 2 == 0));
    let one_sign = p.terms().all(|(_, c)| c.is_positive()) || p.terms().all(|(_, c)| c.is_negative());
    if !p.is_zero() && even && one_sign {
        if let Some((m, _)) = p.terms().find(|(m, _)| m.exponent(&target) > 0 && only(m)) {
            out.forced = true;
            out.justification = format!(
                "sum of even powers with coefficients of one sign; every term vanishes, including {m}"
            );
            return out;
        }
    }
    out.justification = format!("not forced by {p}");
    out
}

/// Replays a script from scratch. Concluded vanishing symbols are added to the
/// rewrite system for all later steps.
pub fn replay_script(script: &ProofScript, rules: &RewriteSystem) -> Report {
    let mut rules = rules.clone();
    let mut outcomes: Vec<StepOutcome> = Vec::new();
    let mut steps = Vec::new();
    let mut conclusions = Vec::new();
    let mut flags = Vec::new();
    let mut failure = None;
    for (index, step) in script.steps.iter().enumerate() {
        let outcome = match apply_step(&outcomes, step, &rules) {
            Ok(o) => o,
            Err(e) => {
                failure = Some(Failure { step: index, reason: e.to_string(), diff: None });
                break;
            }
        };
        let paper_eq = step.expect.as_ref().map(|e| e.target.to_string());
        steps.push(StepRecord {
            index,
            kind: step.kind.to_string(),
            paper_eq: paper_eq.clone(),
            polynomial: outcome.result.to_string(),
            comparison: outcome.comparison.label().to_string(),
            scalar: outcome.comparison.scalar().map(|l| l.to_string()),
            note: outcome.note.clone(),
        });
        if let Some(Expectation { target: Target::Display(id) | Target::DisplayRhs(id), .. }) = &step.expect {
            if let Some(typo) = reference::lookup(id).ok().and_then(|d| d.typo) {
                flags.push(format!("step {index}: {id} has a documented misprint ({typo})"));
            }
        }
        if let Some(e) = &step.expect {
            if !e.asserted {
                flags.push(format!(
                    "step {index}: {} recorded, not asserted ({}): {}",
                    e.target,
                    outcome.comparison.label(),
                    e.note.as_deref().unwrap_or("")
                ));
            } else if let Comparison::Mismatch(diff) = &outcome.comparison {
                failure = Some(Failure {
                    step: index,
                    reason: format!("mismatch against {}", e.target),
                    diff: Some(diff.to_string()),
                });
            }
        }
        if let Some(c) = &outcome.conclusion {
            if !c.forced {
                failure = Some(Failure {
                    step: index,
                    reason: format!("vanishing of {} is not forced: {}", outcome.result, c.justification),
                    diff: None,
                });
            } else {
                conclusions.push(c.clone());
                let s = *step_symbol(&step.kind).expect("conclusion step");
                rules = rules.with_vanishing([s]);
            }
        }
        outcomes.push(outcome);
        if failure.is_some() {
            break;
        }
    }
    let verdict = if failure.is_some() { Verdict::Failed } else { Verdict::ProofComplete };
    Report {
        version: Report::VERSION,
        script_id: script.id.clone(),
        steps,
        verdict,
        failure,
        conclusions,
        flags,
        outcomes,
    }
}

fn step_symbol(kind: &StepKind) -> Option<&Base> {
    match kind {
        StepKind::ConcludeVanishes { symbol, .. } => Some(symbol),
        _ => None,
    }
}
