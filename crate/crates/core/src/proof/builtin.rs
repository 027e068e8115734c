use super::script::{ProofScript, ProofStep, Seed, StepKind};
use crate::algebra::{int, rat, Base};

fn step(kind: StepKind) -> ProofStep {
    ProofStep::new(kind)
}

fn divide_by_k1(input: usize) -> StepKind {
    StepKind::DivideByPower { input, symbol: Base::K1, power: 1 }
}

fn conclude(input: usize, symbol: Base) -> StepKind {
    StepKind::ConcludeVanishes { input, symbol }
}

/// Elimination chain showing that a triharmonic submersion from a space form
/// cannot have `k1 != 0` anywhere.
pub fn builtin_triharmonic_script() -> ProofScript {
    let mut s = ProofScript::new("triharmonic");
    let quintic = s.push(step(StepKind::Seed(Seed::Triharmonic)).expect("tri.quintic"));
    let quartic = s.push(step(divide_by_k1(quintic)).expect("tri.quartic"));
    let d = s.push(step(StepKind::ApplyE1(quartic)));
    let quartic_e1 = s.push(step(divide_by_k1(d)).expect("tri.quartic_e1"));
    let cubic = s.push(
        step(StepKind::LinearCombine { a: int(2), ref_a: quartic, b: rat(-1, 2), ref_b: quartic_e1 })
            .expect("tri.cubic_combo"),
    );
    let d = s.push(step(StepKind::ApplyE1(cubic)));
    let cubic_e1 = s.push(step(divide_by_k1(d)).expect("tri.cubic_combo_e1"));
    let quadratic = s.push(
        step(StepKind::LinearCombine { a: rat(-1, 4), ref_a: cubic_e1, b: rat(1, 2), ref_b: cubic })
            .expect("tri.quadratic_combo"),
    );
    // the elided "same argument": differentiate once more and cancel the leading terms
    let d = s.push(step(StepKind::ApplyE1(quadratic)));
    let d = s.push(step(divide_by_k1(d)));
    let quadratic_2 = s.push(
        step(StepKind::LinearCombine { a: rat(1, 6), ref_a: d, b: int(-1), ref_b: quadratic })
            .expect("tri.quadratic_combo_2"),
    );
    let square = s.push(step(StepKind::SubstituteC(quadratic_2)).expect("tri.curvature_square"));
    let d = s.push(step(StepKind::ApplyE1(square)).expect("tri.sigma_vanishing"));
    s.push(step(conclude(d, Base::Sigma)));
    let d = s.push(step(StepKind::Reduce(quadratic)));
    s.push(step(conclude(d, Base::F2)));
    let d = s.push(step(StepKind::Seed(Seed::Constraint(7))));
    s.push(step(conclude(d, Base::C)));
    let cube = s.push(step(StepKind::Reduce(quintic)).expect("tri.laplacian_cube"));
    s.push(step(StepKind::AssertEqualsPaper(cube)).expect("tri.k1_fifth"));
    s.push(step(conclude(cube, Base::K1)));
    s
}

/// The same elimination for biharmonic submersions.
pub fn builtin_biharmonic_script() -> ProofScript {
    let mut s = ProofScript::new("biharmonic");
    s.push(step(StepKind::Seed(Seed::Literal("-L(k1)".into()))).expect_rhs("bi.laplacian_k1"));
    let seed = s.push(step(StepKind::Seed(Seed::Biharmonic)));
    let factored = s.push(step(StepKind::SubstituteC(seed)).record(
        "bi.k1_factor",
        "the display carries k1^2, the computation gives k1 to the first power; \
         both reduce to the same equation after dividing by k1",
    ));
    let quadric = s.push(step(divide_by_k1(factored)).expect("bi.quadric"));
    let d = s.push(step(StepKind::ApplyE1(quadric)));
    let d = s.push(step(divide_by_k1(d)));
    let squared = s.push(step(StepKind::SubstituteC(d)).expect("bi.k1_squared"));
    let combo = s.push(step(StepKind::LinearCombine {
        a: int(1),
        ref_a: quadric,
        b: rat(-1, 2),
        ref_b: squared,
    }));
    let d = s.push(step(StepKind::ApplyE1(combo)));
    s.push(step(conclude(d, Base::Sigma)));
    let d = s.push(step(StepKind::Reduce(combo)));
    s.push(step(conclude(d, Base::C)));
    let d = s.push(step(StepKind::Reduce(quadric)));
    s.push(step(conclude(d, Base::K1)));
    s
}
