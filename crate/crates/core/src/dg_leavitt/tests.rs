use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::fdalgebra::RadicalQuiverData;
use crate::fixtures;
use crate::foundation::{Field, Scalar};
use crate::quiver::Quiver;

fn cohn(rq: RadicalQuiverData) -> CohnAlgebra {
    CohnAlgebra::new(Arc::new(rq))
}

fn el(alg: &CohnAlgebra, s: &str) -> CohnElement {
    parse_element(alg, s).unwrap()
}

fn rose_name(i: usize) -> String {
    if i == 1 {
        "x".into()
    } else {
        format!("x^{i}")
    }
}

#[test]
fn cuntz_krieger_contractions_on_roses() {
    for n in 1..=3 {
        let alg = cohn(fixtures::rose(n));
        for i in 1..=n {
            for j in 1..=n {
                let p = el(&alg, &format!("{} {}*", rose_name(i), rose_name(j)));
                let expected = if i == j { alg.one() } else { alg.zero() };
                assert_eq!(p, expected, "x_{i} y_{j} on R_{n}");
            }
        }
    }
    let alg = cohn(fixtures::rose(2));
    assert_eq!(alg.mul(&el(&alg, "x x"), &el(&alg, "x* x*")), alg.one());
    let u = el(&alg, "x* x^2 - 3 x^2*");
    assert_eq!(alg.mul(&u, &alg.one()), u);
    assert_eq!(alg.mul(&alg.one(), &u), u);
}

#[test]
fn ghost_real_order_is_kept() {
    let alg = cohn(fixtures::rose(2));
    let u = el(&alg, "x* x");
    assert_eq!(u.len(), 1);
    let w = u.terms().keys().next().unwrap();
    assert_eq!((w.ghost.len(), w.real.len()), (1, 1));
    assert_eq!(alg.render(&u), "x* x");
    assert_eq!(alg.render(&el(&alg, "x x^2*")), "0");
}

#[test]
fn casimir_examples() {
    let alg = cohn(fixtures::rose(3));
    assert_eq!(alg.casimir(), el(&alg, "x* x + x^2* x^2 + x^3* x^3"));
    let a2 = cohn(fixtures::radical("a2"));
    assert_eq!(a2.casimir(), el(&a2, "a* a"));
    let point = cohn(fixtures::radical("point"));
    assert!(point.casimir().is_zero());
}

#[test]
fn differential_on_rose_generators() {
    for n in 1..=4 {
        let alg = cohn(fixtures::rose(n));
        for i in 1..=n {
            let mut yi = alg.zero();
            for j in 1..i {
                yi = yi.add(&el(&alg, &format!("{}* {}*", rose_name(j), rose_name(i - j))));
            }
            assert_eq!(
                alg.differential(&el(&alg, &format!("{}*", rose_name(i)))),
                yi,
                "∂y_{i} on R_{n}"
            );
            let mut xi = alg.zero();
            for j in i + 1..=n {
                xi = xi.add(&el(&alg, &format!("{}* {}", rose_name(j - i), rose_name(j))));
            }
            assert_eq!(alg.differential(&el(&alg, &rose_name(i))), xi, "∂x_{i} on R_{n}");
        }
    }
    let r2 = cohn(fixtures::rose(2));
    assert_eq!(r2.d_plus(1), el(&r2, "x* x*"));
    assert_eq!(r2.d_minus(0), el(&r2, "x* x^2"));
    assert!(r2.d_plus(0).is_zero());
    assert!(r2.d_minus(1).is_zero());
}

#[test]
fn differential_of_x_squared() {
    let alg = cohn(fixtures::rose(2));
    let u = el(&alg, "x x");
    let expected = el(&alg, "x* x^2 x - x^2");
    assert_eq!(alg.differential(&u), expected);
    assert_eq!(alg.differential_by_leibniz(&u), expected);
    // The unreduced Leibniz expansion (y₁x₂)x₁ − x₁(y₁x₂) gives the same.
    let lhs = el(&alg, "x* x^2 x").sub(&el(&alg, "x x* x^2"));
    assert_eq!(lhs, expected);
    assert!(alg.differential(&alg.one()).is_zero());
}

#[test]
fn radical_square_zero_has_no_differential() {
    for name in ["rsz-rose2", "rsz-cycle"] {
        let alg = cohn(fixtures::radical(name));
        for a in 0..alg.quiver().num_arrows() {
            assert!(alg.d_plus(a).is_zero());
            assert!(alg.d_minus(a).is_zero());
        }
    }
}

#[test]
fn insert_casimir_goldens() {
    let alg = cohn(fixtures::rose(3));
    assert_eq!(alg.insert_casimir(&alg.one()), alg.casimir());
    assert_eq!(
        alg.insert_casimir(&el(&alg, "x*")),
        el(&alg, "x* x* x + x* x^2* x^2 + x* x^3* x^3")
    );
    assert_eq!(
        alg.insert_casimir(&el(&alg, "x")),
        el(&alg, "x* x x + x^2* x^2 x + x^3* x^3 x")
    );
}

#[test]
fn sink_removal() {
    let a2 = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
    assert_eq!(remove_sinks(&a2).num_vertices(), 0);
    let r1 = Quiver::new(&["1"], &[("x", "1", "1")]).unwrap();
    assert_eq!(remove_sinks(&r1).num_arrows(), 1);
    let both = Quiver::new(&["0", "1", "2"], &[("x", "0", "0"), ("a", "1", "2")]).unwrap();
    let core = remove_sinks(&both);
    assert_eq!(core.vertices(), &["0".to_string()]);
    assert_eq!(core.arrows().len(), 1);
    let fed = Quiver::new(&["1", "2"], &[("x", "1", "1"), ("a", "2", "1")]).unwrap();
    assert_eq!(remove_sinks(&fed).num_vertices(), 2);
    let drain = Quiver::new(&["1", "2"], &[("x", "1", "1"), ("a", "1", "2")]).unwrap();
    assert_eq!(remove_sinks(&drain).num_vertices(), 1);
}

#[test]
fn sinkless_constructor_rejects_sinks() {
    let err = LeavittAlgebra::on_sinkless(Arc::new(fixtures::radical("a2"))).unwrap_err();
    assert_eq!(err, DgError::SinkPresent("2".into()));
    assert!(LeavittAlgebra::on_sinkless(Arc::new(fixtures::rose(2))).is_ok());
}

#[test]
fn leavitt_normal_forms() {
    let r1 = LeavittAlgebra::from_radical(&fixtures::rose(1));
    let c1 = r1.cohn();
    assert_eq!(r1.normal_form(&el(c1, "x* x")), c1.one());
    let r2 = LeavittAlgebra::from_radical(&fixtures::rose(2));
    let c2 = r2.cohn();
    assert_eq!(r2.normal_form(&el(c2, "x* x")), el(c2, "1 - x^2* x^2"));
    assert_eq!(r2.normal_form(&el(c2, "x^2* x")), el(c2, "x^2* x"));
    assert_eq!(
        r2.normal_form(&el(c2, "x* x* x x^2")),
        el(c2, "x* x^2 - x* x^2* x^2 x^2")
    );
}

#[test]
fn leavitt_equalities() {
    for n in 1..=3 {
        let lv = LeavittAlgebra::from_radical(&fixtures::rose(n));
        let c = lv.cohn();
        assert!(lv.eq(&c.one(), &c.casimir()));
        assert!(lv.colimit_eq(&c.one(), &c.casimir()));
        let x = el(c, "x");
        assert!(lv.eq(&x, &c.insert_casimir(&x)));
        assert!(lv.colimit_eq(&x, &c.insert_casimir(&x)));
    }
    let lv = LeavittAlgebra::from_radical(&fixtures::rose(2));
    let c = lv.cohn();
    assert!(!lv.eq(&el(c, "x*"), &el(c, "x^2*")));
    assert!(!lv.colimit_eq(&el(c, "x*"), &el(c, "x^2*")));
}

#[test]
fn hereditary_input_gives_zero_algebra() {
    let lv = LeavittAlgebra::from_radical(&fixtures::radical("a2"));
    assert!(lv.is_zero_algebra());
    let full = cohn(fixtures::radical("a2"));
    let u = el(&full, "a* a - e_1");
    let p = lv.project(&u);
    assert!(p.is_zero());
    assert!(lv.eq(&p, &lv.cohn().zero()));
    let json = presentation_json(&lv);
    assert_eq!(json["generators"].as_array().unwrap().len(), 0);
}

#[test]
fn projection_drops_removed_arrows() {
    let q = Quiver::new(&["1", "2"], &[("x", "1", "1"), ("a", "1", "2")]).unwrap();
    let rq = RadicalQuiverData::from_lambda(Arc::new(q), Field::Rational, vec!["x".into(), "a".into()], None, vec![])
        .unwrap();
    let full = cohn(rq.clone());
    let lv = LeavittAlgebra::from_radical(&rq);
    let u = el(&full, "x* x + a* a");
    assert_eq!(lv.project(&u), el(lv.cohn(), "x* x"));
}

#[test]
fn presentation_json_of_rose() {
    let lv = LeavittAlgebra::from_radical(&fixtures::rose(2));
    let json = presentation_json(&lv);
    let gens = json["generators"].as_array().unwrap();
    let find = |name: &str| gens.iter().find(|g| g["name"] == name).unwrap().clone();
    assert_eq!(find("x^2*")["differential"], "x* x*");
    assert_eq!(find("x")["differential"], "x* x^2");
    assert_eq!(find("x")["degree"], -1);
    assert_eq!(find("x*")["degree"], 1);
    assert!(json["relations"]
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r == "1 = x* x + x^2* x^2"));
}

#[test]
fn expression_syntax() {
    let alg = cohn(fixtures::radical("nonlocal"));
    let u = el(&alg, "2 e_1 - 1/2 a");
    assert_eq!(u.len(), 2);
    assert!(parse_element(&alg, "zz").is_err());
    assert!(parse_element(&alg, "").is_err());
    assert!(parse_element(&alg, "a +").is_err());
    let r = cohn(fixtures::rose(2));
    assert_eq!(el(&r, "-x + x"), r.zero());
    assert_eq!(el(&r, "3"), r.one().scale(&Scalar::from_i64(Field::Rational, 3)));
}

#[test]
fn structural_laws_hold_on_fixtures() {
    for name in ["trunc3", "trunc4", "rsz-cycle", "square", "nonlocal", "a2", "point"] {
        for outcome in structural_laws(&fixtures::radical(name), 40, 7) {
            assert!(outcome.passed, "{name}: {outcome:?}");
        }
    }
}

#[test]
fn comodule_and_uniqueness_on_rose() {
    let alg = cohn(fixtures::rose(3));
    let (l, r) = comodule_sides(&alg);
    assert!(!l.is_zero());
    assert_eq!(l, r);
    for a in 0..3 {
        let x = alg.letter(Letter::Real(a));
        assert_eq!(d_minus_from_d_plus(&alg, &x), alg.d_minus(a));
    }
}

#[test]
fn tampered_lambda_breaks_d_squared() {
    // μ(x₁⊗x₁) = x₂, μ(x₁⊗x₂) = x₁ is not associative; ∂² detects it.
    let q = Quiver::new(&["1"], &[("x", "1", "1"), ("x^2", "1", "1")]).unwrap();
    let f = Field::Rational;
    let rq = RadicalQuiverData::from_lambda(
        Arc::new(q),
        f,
        vec!["x".into(), "x^2".into()],
        None,
        vec![(0, 0, 1, Scalar::one(f)), (0, 1, 0, Scalar::one(f))],
    )
    .unwrap();
    assert!(!rq.check_mu_associativity().holds());
    let failed: Vec<String> = structural_laws(&rq, 60, 1)
        .into_iter()
        .filter(|o| !o.passed)
        .map(|o| o.law)
        .collect();
    assert!(failed.contains(&"d_squared_zero".to_string()), "{failed:?}");
    assert!(failed.contains(&"coassociativity".to_string()), "{failed:?}");
}

#[test]
fn basis_change_is_a_dg_isomorphism_on_generators() {
    use crate::foundation::Matrix;
    use std::collections::BTreeMap;
    // New basis of J for K[x]/(x^4): x' = x + x², x²' = 2x² − x³, x³' = x³.
    let rq = fixtures::rose(3);
    let f = Field::Rational;
    let t = Matrix::from_i64_rows(f, &[&[1, 1, 0], &[0, 2, -1], &[0, 0, 1]]);
    let mut transforms = BTreeMap::new();
    transforms.insert((0, 0), t.clone());
    let new = rq.change_basis(&transforms).unwrap();
    let old_alg = cohn(rq);
    let new_alg = cohn(new);
    // Generator map: a'_k ↦ Σ T_kl a_l and a'_k* ↦ Σ (T⁻ᵀ)_kl a_l*, so that
    // the Cuntz–Krieger relations are preserved.
    let columns: Vec<_> = (0..3)
        .map(|j| t.solve(&crate::foundation::SparseVector::unit(j, f)).unwrap().unwrap())
        .collect();
    let tinv = Matrix::from_sparse_columns(3, f, &columns);
    let image = |l: Letter| -> CohnElement {
        let mut out = old_alg.zero();
        match l {
            Letter::Real(k) => {
                for (j, c) in t.row(k).entries() {
                    out.add_scaled(&old_alg.letter(Letter::Real(*j)), c);
                }
            }
            Letter::Ghost(k) => {
                for j in 0..3 {
                    out.add_scaled(&old_alg.letter(Letter::Ghost(j)), &tinv.get(j, k));
                }
            }
        }
        out
    };
    let map = |u: &CohnElement| -> CohnElement {
        let mut out = old_alg.zero();
        for (w, c) in u.terms() {
            let factors: Vec<CohnElement> = new_alg.letters(w).into_iter().map(image).collect();
            out.add_scaled(&old_alg.product_of(&factors), c);
        }
        out
    };
    for k in 0..3 {
        for l in [Letter::Real(k), Letter::Ghost(k)] {
            let g = new_alg.letter(l);
            assert_eq!(map(&new_alg.differential(&g)), old_alg.differential(&map(&g)), "{l:?}");
        }
        for j in 0..3 {
            let rel = new_alg.mul(&new_alg.letter(Letter::Real(k)), &new_alg.letter(Letter::Ghost(j)));
            let img = old_alg.mul(&image(Letter::Real(k)), &image(Letter::Ghost(j)));
            assert_eq!(map(&rel), img);
        }
    }
    assert_eq!(map(&new_alg.casimir()), old_alg.casimir());
}

fn sample(alg: &CohnAlgebra, seed: u64, k: usize) -> Vec<CohnElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k)
        .map(|i| alg.random_homogeneous(&mut rng, (i as i64 % 5) - 2, 3, 3))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn associativity_and_leibniz(seed in any::<u64>(), n in 1usize..=3) {
        let alg = cohn(fixtures::rose(n));
        let s = sample(&alg, seed, 3);
        let (u, v, w) = (&s[0], &s[1], &s[2]);
        prop_assert_eq!(alg.mul(&alg.mul(u, v), w), alg.mul(u, &alg.mul(v, w)));
        let sign = Scalar::sign(alg.field(), u.degree().unwrap_or(0));
        let mut r = alg.mul(&alg.differential(u), v);
        r.add_scaled(&alg.mul(u, &alg.differential(v)), &sign);
        prop_assert_eq!(alg.differential(&alg.mul(u, v)), r);
        prop_assert!(alg.differential(&alg.differential(w)).is_zero());
    }

    #[test]
    fn leavitt_equality_is_an_equivalence(seed in any::<u64>()) {
        let lv = LeavittAlgebra::from_radical(&fixtures::radical("nonlocal"));
        let c = lv.cohn();
        let s = sample(c, seed, 2);
        let u = &s[0];
        let v = u.add(&c.insert_casimir(&s[1])).sub(&s[1]);
        let w = c.insert_casimir(&v);
        prop_assert!(lv.eq(u, u));
        prop_assert_eq!(lv.eq(u, &v), lv.eq(&v, u));
        prop_assert!(lv.eq(u, &v) && lv.eq(&v, &w) && lv.eq(u, &w));
        prop_assert_eq!(lv.eq(u, &s[1]), lv.colimit_eq(u, &s[1]));
    }
}
