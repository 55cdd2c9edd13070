//! Acceptance suite: one PASS/FAIL line per criterion, with its tolerance,
//! wall time and time budget. Exits non-zero when any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use dgl_core::cohomology::{leavitt_hdim, tensor_algebra_hdim, AInfinityProducts, HClass, Retract, WordComplex};
use dgl_core::dg_leavitt::{parse_element, structural_laws, CohnAlgebra, CohnElement, LeavittAlgebra, Letter};
use dgl_core::fdalgebra::RadicalQuiverData;
use dgl_core::fixtures;
use dgl_core::singular_yoneda::{run_oracle, Mutation, OracleConfig};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Name of the `i`-th radical arrow of `K[x]/(x^{n+1})`, i.e. `x_i`.
fn x(i: usize) -> String {
    if i == 1 {
        "x".into()
    } else {
        format!("x^{i}")
    }
}

fn y(i: usize) -> String {
    format!("{}*", x(i))
}

fn el(alg: &CohnAlgebra, text: &str) -> Result<CohnElement, String> {
    parse_element(alg, text).map_err(|e| format!("`{text}`: {e}"))
}

fn letter(alg: &CohnAlgebra, name: &str) -> Result<CohnElement, String> {
    el(alg, name)
}

fn sum_or_zero(terms: Vec<String>) -> String {
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// ∂(y_i) = Σ_{1≤j≤i−1} y_j y_{i−j} and ∂(x_i) = Σ_{i<j≤n} y_{j−i} x_j on
/// `C(R_n)` and in `L(R_n)`.
fn differential_on_rn() -> Outcome {
    let mut checked = 0;
    for n in 1..=4 {
        let rq = fixtures::rose(n);
        let lv = LeavittAlgebra::from_radical(&rq);
        let cohn = CohnAlgebra::new(std::sync::Arc::new(rq.clone()));
        for i in 1..=n {
            let dy = sum_or_zero((1..i).map(|j| format!("{} {}", y(j), y(i - j))).collect());
            let dx = sum_or_zero((i + 1..=n).map(|j| format!("{} {}", y(j - i), x(j))).collect());
            for (gen, expected) in [(y(i), dy), (x(i), dx)] {
                let got = cohn.differential(&letter(&cohn, &gen)?);
                let want = el(&cohn, &expected)?;
                ensure(got == want, || {
                    format!("R_{n}: ∂({gen}) = {} in C, expected {expected}", cohn.render(&got))
                })?;
                let lc = lv.cohn();
                let got = lv.differential(&letter(lc, &gen)?);
                let want = lv.normal_form(&el(lc, &expected)?);
                ensure(got == want, || {
                    format!("R_{n}: ∂({gen}) = {} in L, expected {expected}", lc.render(&got))
                })?;
                checked += 1;
            }
        }
        let one = cohn.one();
        ensure(cohn.differential(&letter(&cohn, &y(1))?).is_zero(), || {
            format!("R_{n}: ∂(y_1) ≠ 0")
        })?;
        ensure(cohn.differential(&letter(&cohn, &x(n))?).is_zero(), || {
            format!("R_{n}: ∂(x_n) ≠ 0")
        })?;
        ensure(cohn.differential(&one).is_zero(), || format!("R_{n}: ∂(1) ≠ 0"))?;
    }
    Ok(format!("{checked} generator differentials on R_1..R_4 in C and L"))
}

fn structural_suite() -> Outcome {
    let random = fixtures::randomized(2024);
    let report = random.check_mu_associativity();
    ensure(report.holds(), || {
        format!("randomized λ-table is not associative: {:?}", report.violations)
    })?;
    let base = fixtures::rose(3);
    ensure(random.lambda_entries().count() > base.lambda_entries().count(), || {
        "randomized λ-table is no denser than the monomial one".into()
    })?;
    let cases: Vec<(String, RadicalQuiverData)> = vec![
        ("R_1".into(), fixtures::rose(1)),
        ("R_2".into(), fixtures::rose(2)),
        ("R_3".into(), fixtures::rose(3)),
        ("rsz-cycle".into(), fixtures::radical("rsz-cycle")),
        ("rsz-rose2".into(), fixtures::radical("rsz-rose2")),
        ("square".into(), fixtures::radical("square")),
        ("randomized(2024)".into(), random),
    ];
    let mut laws = 0;
    for (name, rq) in &cases {
        for l in structural_laws(rq, 500, 42) {
            ensure(l.trials >= 500, || format!("{name}: {} ran {} trials", l.law, l.trials))?;
            ensure(l.passed, || format!("{name}: {} failed: {:?}", l.law, l.counterexample))?;
            laws += 1;
        }
    }
    Ok(format!(
        "{laws} law runs × 500 trials over {} algebras, seed 42",
        cases.len()
    ))
}

fn oracle_suite() -> Outcome {
    let cfg = OracleConfig {
        trials: 200,
        seed: 42,
        max_filtration: 4,
        max_level: 4,
    };
    let cases = [
        ("R_1", fixtures::rose(1)),
        ("R_2", fixtures::rose(2)),
        ("nonlocal", fixtures::radical("nonlocal")),
    ];
    let mut caught = 0;
    for (name, rq) in &cases {
        let report = run_oracle(rq, &cfg, None);
        for l in &report.laws {
            ensure(l.passed, || format!("{name}: {} failed: {:?}", l.law, l.counterexample))?;
        }
        for m in Mutation::ALL {
            let report = run_oracle(rq, &cfg, Some(m));
            ensure(!report.passed(), || format!("{name}: mutation {m} went unnoticed"))?;
            caught += 1;
        }
    }
    Ok(format!(
        "200 trials per law on 3 algebras; {caught}/{caught} mutations caught"
    ))
}

fn tensor_cohomology() -> Outcome {
    let rq = fixtures::rose(2);
    let dims: Vec<usize> = (0..=3)
        .map(|d| tensor_algebra_hdim(&rq, d).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    ensure(dims == [1, 1, 1, 1], || format!("dim H^0..3(T_E(J*)) = {dims:?}"))?;
    Ok(format!("Λ_2: dim H^0..3 = {dims:?}"))
}

fn leavitt_cohomology() -> Outcome {
    let r1 = fixtures::rose(1);
    let lv = LeavittAlgebra::from_radical(&r1);
    for g in ["x", "x*"] {
        let u = letter(lv.cohn(), g)?;
        ensure(lv.differential(&u).is_zero(), || format!("L(R_1): ∂({g}) ≠ 0"))?;
    }
    for d in -4..=4 {
        let h = leavitt_hdim(&r1, d, 8, 3).map_err(|e| e.to_string())?;
        ensure(h.dimension == 1 && h.stabilized, || format!("L(R_1): H^{d} = {h:?}"))?;
    }
    let r2 = fixtures::rose(2);
    let mut witness = 0;
    for d in -3..=3 {
        let h = leavitt_hdim(&r2, d, 8, 3).map_err(|e| e.to_string())?;
        ensure(h.dimension == 1 && h.stabilized && h.last_level <= 8, || {
            format!("L(R_2): H^{d} = {h:?}")
        })?;
        witness = witness.max(h.last_level);
    }
    Ok(format!(
        "L(R_1): dim 1 for |d| ≤ 4, ∂ = 0; L(R_2): dim 1 for |d| ≤ 3, witness level {witness}"
    ))
}

fn degree_one_classes(a: &AInfinityProducts, rq: &RadicalQuiverData) -> Result<Vec<HClass>, String> {
    let k = a.retract().h_dim(1).map_err(|e| e.to_string())?;
    Ok((0..k).map(|i| HClass::basis(1, i, rq.field())).collect())
}

fn non_formality() -> Outcome {
    let r2 = fixtures::rose(2);
    let retract = Retract::build(WordComplex::leavitt(&r2), 0, 3, 2).map_err(|e| e.to_string())?;
    retract.verify()?;
    let lv = retract.complex().leavitt_algebra().expect("Leavitt complex").clone();
    let a = AInfinityProducts::new(retract, 4);
    let e = HClass::basis(1, 0, r2.field());
    let m3 = a.m(&[e.clone(), e.clone(), e.clone()]).map_err(|e| e.to_string())?;
    ensure(!m3.is_zero(), || "L(R_2): m_3(ε,ε,ε) = 0".into())?;
    let u = el(lv.cohn(), "x^2* x* + x* x^2*")?;
    let u_class = a.retract().p_element(2, &u).map_err(|e| e.to_string())?;
    ensure(
        !u_class.is_zero() && a.retract().h_dim(2).map_err(|e| e.to_string())? == 1,
        || "L(R_2): u does not span H^2".into(),
    )?;
    ensure(m3 == u_class, || format!("L(R_2): m_3(ε,ε,ε) = {m3:?} is not u"))?;

    let r3 = fixtures::rose(3);
    let retract = Retract::build(WordComplex::leavitt(&r3), 0, 3, 1).map_err(|e| e.to_string())?;
    retract.verify()?;
    let a = AInfinityProducts::new(retract, 4);
    let ones = degree_one_classes(&a, &r3)?;
    let mut triples = 0;
    for p in &ones {
        for q in &ones {
            for r in &ones {
                let m = a.m(&[p.clone(), q.clone(), r.clone()]).map_err(|e| e.to_string())?;
                ensure(m.is_zero(), || format!("L(R_3): m_3 ≠ 0 on {p:?}, {q:?}, {r:?}"))?;
                triples += 1;
            }
        }
    }
    let e = HClass::basis(1, 0, r3.field());
    let m4 = a
        .m(&[e.clone(), e.clone(), e.clone(), e.clone()])
        .map_err(|e| e.to_string())?;
    ensure(!m4.is_zero(), || "L(R_3): m_4(ε,ε,ε,ε) = 0".into())?;
    Ok(format!(
        "L(R_2): m_3(ε,ε,ε) = u ≠ 0; L(R_3): m_3 = 0 on {triples} degree-1 triple(s), m_4 = {}",
        a.retract().render_class(&m4)
    ))
}

fn degenerate_cases() -> Outcome {
    let a2 = LeavittAlgebra::from_radical(&fixtures::radical("a2"));
    ensure(a2.is_zero_algebra() && a2.quiver().num_vertices() == 0, || {
        "A_2: Q̃° is not empty".into()
    })?;
    for name in ["rsz-cycle", "rsz-rose2"] {
        let rq = fixtures::radical(name);
        let cohn = CohnAlgebra::new(std::sync::Arc::new(rq.clone()));
        for a in 0..rq.quiver().num_arrows() {
            for l in [Letter::Real(a), Letter::Ghost(a)] {
                let d = cohn.differential(&cohn.letter(l));
                ensure(d.is_zero(), || format!("{name}: ∂ ≠ 0 on a generator"))?;
            }
        }
    }
    let mut relations = 0;
    for n in 1..=4 {
        let lv = LeavittAlgebra::from_radical(&fixtures::rose(n));
        let c = lv.cohn();
        let one = lv.normal_form(&c.one());
        for i in 1..=n {
            for j in 1..=n {
                let got = lv.mul(&letter(c, &x(i))?, &letter(c, &y(j))?);
                let want = if i == j { one.clone() } else { c.zero() };
                ensure(got == want, || format!("R_{n}: x_{i} y_{j} = {}", c.render(&got)))?;
                relations += 1;
            }
        }
        let casimir = sum_or_zero((1..=n).map(|k| format!("{} {}", y(k), x(k))).collect());
        let got = lv.normal_form(&el(c, &casimir)?);
        ensure(got == one, || format!("R_{n}: Σ y_k x_k = {}", c.render(&got)))?;
        relations += 1;
    }
    Ok(format!(
        "A_2 erodes to 0; ∂ ≡ 0 on 2 radical-square-zero quivers; {relations} Cuntz–Krieger rewrites"
    ))
}

fn dgl(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_dgl"))
        .args(args)
        .current_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../.."))
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code().is_some(), || format!("dgl {args:?} was killed"))?;
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let runs: [&[&str]; 4] = [
        &[
            "--json",
            "check",
            "quivers/trunc3.quiver",
            "--trials",
            "50",
            "--seed",
            "7",
        ],
        &[
            "--json",
            "oracle",
            "quivers/nonlocal.quiver",
            "--trials",
            "50",
            "--seed",
            "7",
        ],
        &[
            "--json",
            "oracle",
            "quivers/trunc3.quiver",
            "--trials",
            "50",
            "--mutate",
            "flip-phi",
        ],
        &[
            "--json",
            "cohomology",
            "quivers/trunc3.quiver",
            "--degrees",
            "-2:2",
            "--max-level",
            "6",
        ],
    ];
    let mut bytes = 0;
    for args in runs {
        let a = dgl(args)?;
        let b = dgl(args)?;
        ensure(!a.is_empty() && a == b, || {
            format!("dgl {} is not reproducible", args.join(" "))
        })?;
        serde_json::from_slice::<serde_json::Value>(&a).map_err(|e| format!("dgl {}: {e}", args.join(" ")))?;
        bytes += a.len();
    }
    Ok(format!("{} reports identical across runs ({bytes} bytes)", runs.len()))
}

struct Criterion {
    id: u32,
    name: &'static str,
    tolerance: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "differential on R_n",
            tolerance: "exact",
            budget: Duration::from_secs(1),
            run: differential_on_rn,
        },
        Criterion {
            id: 2,
            name: "structural laws",
            tolerance: "exact",
            budget: Duration::from_secs(60),
            run: structural_suite,
        },
        Criterion {
            id: 3,
            name: "Ψ-oracle and mutations",
            tolerance: "exact",
            budget: Duration::from_secs(120),
            run: oracle_suite,
        },
        Criterion {
            id: 4,
            name: "cohomology of T_E(J*)",
            tolerance: "exact",
            budget: Duration::from_secs(10),
            run: tensor_cohomology,
        },
        Criterion {
            id: 5,
            name: "cohomology of L(Q̃°)",
            tolerance: "exact",
            budget: Duration::from_secs(300),
            run: leavitt_cohomology,
        },
        Criterion {
            id: 6,
            name: "non-formality witness",
            tolerance: "exact",
            budget: Duration::from_secs(300),
            run: non_formality,
        },
        Criterion {
            id: 7,
            name: "degenerate inputs",
            tolerance: "exact",
            budget: Duration::from_secs(10),
            run: degenerate_cases,
        },
        Criterion {
            id: 8,
            name: "determinism",
            tolerance: "byte-identical",
            budget: Duration::from_secs(120),
            run: determinism,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= c.budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("over budget: {d}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {} {status}  {}  tol={}  {:.3}s / {}s  {detail}",
            c.id,
            c.name,
            c.tolerance,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
