use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::dg_leavitt::{parse_element, CohnElement, LeavittAlgebra};
use crate::fdalgebra::RadicalQuiverData;
use crate::fixtures;
use crate::foundation::Scalar;
use crate::quiver::Path;

fn setup(rq: RadicalQuiverData) -> (YonedaContext, LeavittAlgebra, PsiBridge) {
    let lv = LeavittAlgebra::from_radical(&rq);
    let bridge = PsiBridge::new(&lv);
    (YonedaContext::new(Arc::new(rq)), lv, bridge)
}

fn arrow(ctx: &YonedaContext, name: &str) -> Path {
    let q = ctx.quiver();
    Path::arrow_of(q, q.arrow_id(name).unwrap())
}

fn word(ctx: &YonedaContext, names: &[&str]) -> Path {
    let q = ctx.quiver();
    let ids: Vec<usize> = names.iter().map(|n| q.arrow_id(n).unwrap()).collect();
    Path::from_arrows(q, &ids).unwrap()
}

fn el(lv: &LeavittAlgebra, s: &str) -> CohnElement {
    parse_element(lv.cohn(), s).unwrap()
}

fn int(ctx: &YonedaContext, k: i64) -> Scalar {
    Scalar::from_i64(ctx.field(), k)
}

#[test]
fn identity_and_theta_are_closed() {
    for rq in [
        fixtures::rose(2),
        fixtures::radical("nonlocal"),
        fixtures::radical("rsz-cycle"),
    ] {
        let (mut ctx, _, _) = setup(rq);
        let id = ctx.identity(0);
        assert!(ctx.delta_ex(&id).is_zero());
        let theta = ctx.theta(0);
        let mut t = theta.clone();
        t.src_omega = 0;
        assert!(ctx.delta_ex(&t).is_zero());
    }
}

#[test]
fn theta_push_goldens() {
    let (mut ctx, _, _) = setup(fixtures::rose(2));
    assert_eq!(ctx.theta_push(&ctx.identity(0)), ctx.theta(0).with_src_omega(0));
    let x = arrow(&ctx, "x");
    let phi = ctx.phi(&x);
    let pushed = ctx.theta_push(&phi);
    // |φ(y₁)| = 1, so the push carries a minus sign.
    assert_eq!(pushed.entry(&x, &word(&ctx, &["x", "x"])), int(&ctx, 1));
    assert_eq!(
        pushed.entry(&word(&ctx, &["x^2"]), &word(&ctx, &["x^2", "x"])),
        int(&ctx, 1)
    );
    let twice = ctx.theta_push_n(&phi, 2);
    let step = ctx.theta_push(&pushed);
    assert_eq!(twice, step);
}

#[test]
fn composition_example_on_dual_numbers() {
    let (mut ctx, _, _) = setup(fixtures::rose(1));
    let x = arrow(&ctx, "x");
    let e = Path::trivial(0);
    let mut u = YonedaMap::zero(ctx.field(), 1, 0, 0);
    u.add_entry(e.clone(), x.clone(), int(&ctx, -1));
    let mut v = YonedaMap::zero(ctx.field(), 0, 0, 1);
    v.add_entry(x.clone(), e, int(&ctx, 1));
    let vu = ctx.compose(&v, &u);
    assert_eq!(vu.nnz(), 1);
    assert_eq!(vu.entry(&x, &x), int(&ctx, -1));
    let class = ctx.sy_compose(&SYElement::new(v), &SYElement::new(u));
    let minus_one = ctx.sy_scale(&ctx.sy_unit(), &int(&ctx, -1));
    assert!(ctx.class_eq(&class, &minus_one));
}

#[test]
fn filtration_one_composition_is_a_signed_matrix_product() {
    let (mut ctx, _, _) = setup(fixtures::rose(2));
    let (x, x2) = (arrow(&ctx, "x"), arrow(&ctx, "x^2"));
    // f: J → J of degree 0, g: J → E of degree 1.
    let mut f = YonedaMap::zero(ctx.field(), 1, 0, 1);
    f.add_entry(x2.clone(), x.clone(), int(&ctx, 2));
    let g1 = ctx.phi(&x2).with_src_omega(1);
    let gf = ctx.compose(&g1, &f);
    assert_eq!(gf.entry(&Path::trivial(0), &x), int(&ctx, -2));
    // With |f| = 1 and g of filtration one the composite picks up a minus sign.
    let mut f = YonedaMap::zero(ctx.field(), 2, 1, 1);
    f.add_entry(x2.clone(), word(&ctx, &["x", "x"]), int(&ctx, 1));
    let mut g = YonedaMap::zero(ctx.field(), 2, 1, 0);
    g.add_entry(Path::trivial(0), word(&ctx, &["x", "x^2"]), int(&ctx, 1));
    let gf = ctx.compose(&g, &f);
    assert_eq!(gf.nnz(), 1);
    assert_eq!(
        gf.entry(&Path::trivial(0), &word(&ctx, &["x", "x", "x"])),
        int(&ctx, -1)
    );
}

#[test]
fn phi_goldens() {
    let (mut ctx, _, _) = setup(fixtures::rose(2));
    let (x, x2) = (arrow(&ctx, "x"), arrow(&ctx, "x^2"));
    let e = Path::trivial(0);
    let p = ctx.phi(&x);
    assert_eq!(p.entry(&e, &x), int(&ctx, -1));
    assert!(p.entry(&e, &x2).is_zero());
    let xx = word(&ctx, &["x", "x"]);
    assert_eq!(ctx.phi(&xx).entry(&e, &xx), int(&ctx, 1));
    assert_eq!(ctx.phi(&e), ctx.identity(0));
    // δ_ex of the dual map of x vanishes, as ∂₊(y₁) = 0.
    assert!(ctx.delta_ex(&p).is_zero());
}

#[test]
fn left_action_rule_on_truncated_polynomials() {
    let (ctx, _, _) = setup(fixtures::rose(2));
    let q = ctx.quiver().clone();
    let x = q.arrow_id("x").unwrap();
    let one = int(&ctx, 1);
    assert_eq!(
        ctx.left_action(x, &arrow(&ctx, "x")),
        vec![(arrow(&ctx, "x^2"), one.clone())]
    );
    assert!(ctx.left_action(x, &arrow(&ctx, "x^2")).is_empty());
    // x ▶ (x ⊗ x) = x² ⊗ x − x ⊗ x²
    let got = ctx.left_action(x, &word(&ctx, &["x", "x"]));
    assert_eq!(
        got,
        vec![
            (word(&ctx, &["x^2", "x"]), one.clone()),
            (word(&ctx, &["x", "x^2"]), -one)
        ]
    );
    assert!(ctx.left_action(x, &Path::trivial(0)).is_empty());
}

#[test]
fn psi_goldens() {
    let (mut ctx, lv, bridge) = setup(fixtures::rose(1));
    let one = el(&lv, "1");
    let s = ctx.psi(&bridge, &one, 0).unwrap();
    assert_eq!(s, ctx.sy_unit());
    assert!(lv.eq(&ctx.psi_inverse(&bridge, &ctx.sy_unit(), &lv), &one));
    let theta = SYElement::new(ctx.theta(0).with_src_omega(0));
    assert!(lv.eq(&ctx.psi_inverse(&bridge, &theta, &lv), &one));

    // Ψ(y₁ x₁) = Ψ(1) = (−1)^{(1−0)(0−1)} Ψ(x₁) ⊙ Ψ(y₁)
    let (y, xr) = (el(&lv, "x*"), el(&lv, "x"));
    let prod = lv.cohn().mul(&y, &xr);
    let lhs = ctx.psi(&bridge, &prod, 0).unwrap();
    assert!(ctx.class_eq(&lhs, &ctx.sy_unit()));
    let py = ctx.psi(&bridge, &y, 1).unwrap();
    let px = ctx.psi(&bridge, &xr, -1).unwrap();
    let comp = ctx.sy_compose(&px, &py);
    let rhs = ctx.sy_scale(&comp, &int(&ctx, -1));
    assert!(ctx.class_eq(&lhs, &rhs));
}

#[test]
fn psi_commutes_with_differential_on_y2() {
    let (mut ctx, lv, bridge) = setup(fixtures::rose(2));
    let y2 = el(&lv, "x^2*");
    let d = lv.cohn().differential(&y2);
    assert!(!d.is_zero());
    let lhs = ctx.psi(&bridge, &d, 2).unwrap();
    let py = ctx.psi(&bridge, &y2, 1).unwrap();
    let rhs = ctx.sy_delta(&py);
    assert!(ctx.class_eq(&lhs, &rhs));
    // The real generator: δ_ex(Ψ(x)) against Ψ(∂x).
    let x = el(&lv, "x");
    let lhs = ctx.psi(&bridge, &lv.cohn().differential(&x), 0).unwrap();
    let px = ctx.psi(&bridge, &x, -1).unwrap();
    let rhs = ctx.sy_delta(&px);
    assert!(ctx.class_eq(&lhs, &rhs));
}

#[test]
fn class_equality_kills_eroding_maps() {
    let (mut ctx, _, _) = setup(fixtures::radical("a2"));
    let unit = ctx.sy_unit();
    let zero = SYElement::new(YonedaMap::zero(ctx.field(), 0, 0, 0));
    assert!(ctx.class_eq(&unit, &zero));
}

fn small_config(trials: usize) -> OracleConfig {
    OracleConfig {
        trials,
        seed: 42,
        max_filtration: 4,
        max_level: 4,
    }
}

#[test]
fn oracle_passes_on_fixtures() {
    for name in [
        "trunc2",
        "trunc3",
        "nonlocal",
        "rsz-cycle",
        "rsz-rose2",
        "square",
        "a2",
        "point",
    ] {
        let report = run_oracle(&fixtures::radical(name), &small_config(30), None);
        for law in &report.laws {
            assert!(law.passed, "{name}: {} failed: {:?}", law.law, law.counterexample);
        }
    }
}

#[test]
fn every_mutation_is_detected() {
    for name in ["trunc2", "trunc3", "nonlocal"] {
        let rq = fixtures::radical(name);
        for m in Mutation::ALL {
            let report = run_oracle(&rq, &small_config(60), Some(m));
            assert!(!report.passed(), "{name}: mutation {m} went unnoticed");
            assert_eq!(report.mutation.as_deref(), Some(m.name()));
        }
    }
}

#[test]
fn sign_rule_failure_is_shrunk() {
    let report = run_oracle(&fixtures::rose(2), &small_config(40), Some(Mutation::FlipCompose));
    let law = report.laws.iter().find(|l| l.law == "psi_sign_rule").unwrap();
    assert!(!law.passed);
    assert!(law.counterexample.as_deref().unwrap().starts_with("minimal:"));
}

#[test]
fn oracle_report_is_deterministic() {
    let rq = fixtures::rose(2);
    let a = serde_json::to_string(&run_oracle(&rq, &small_config(20), None)).unwrap();
    let b = serde_json::to_string(&run_oracle(&rq, &small_config(20), None)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn mutation_names_round_trip() {
    for m in Mutation::ALL {
        assert_eq!(m.name().parse::<Mutation>().unwrap(), m);
    }
    assert!("flip-everything".parse::<Mutation>().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]
    #[test]
    fn oracle_passes_for_any_seed(seed in any::<u64>()) {
        let cfg = OracleConfig { trials: 8, seed, max_filtration: 3, max_level: 3 };
        let report = run_oracle(&fixtures::rose(2), &cfg, None);
        prop_assert!(report.passed(), "{:?}", report.laws);
    }
}
