//! Command reports: one JSON value and one text rendering per command.
//!
//! JSON output carries no timing, so identical runs give identical bytes.

use std::path::Path;

use serde_json::{json, Value};

use dgl_core::cohomology::{leavitt_hdim_in, tensor_algebra_hdim, WordComplex};
use dgl_core::dg_leavitt::{parse_element, presentation_json, structural_laws, CohnAlgebra, LeavittAlgebra};
use dgl_core::fdalgebra::RadicalQuiverData;
use dgl_core::singular_yoneda::{run_oracle, Mutation, OracleConfig};

use crate::{AlgebraKind, ElementAlgebra};

pub struct Output {
    pub json: Value,
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(json: Value, text: String) -> Output {
        Output { json, text, code: 0 }
    }

    pub fn set_replay(&mut self, line: String) {
        self.text.push_str(&format!("replay: {line}\n"));
        if let Value::Object(map) = &mut self.json {
            map.insert("replay".into(), Value::String(line));
        }
    }

    pub fn print(&self, json: bool) {
        if json {
            println!("{}", serde_json::to_string_pretty(&self.json).expect("serializable"));
        } else {
            print!("{}", self.text);
        }
    }
}

struct Row {
    suite: &'static str,
    /// What `trials` counts.
    unit: &'static str,
    law: String,
    trials: usize,
    passed: bool,
    counterexample: Option<String>,
}

impl Row {
    fn json(&self) -> Value {
        let mut v = json!({
            "suite": self.suite,
            "law": self.law,
            "trials": self.trials,
            "passed": self.passed,
        });
        if let Some(c) = &self.counterexample {
            v["counterexample"] = Value::String(c.clone());
        }
        v
    }

    fn text(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut line = format!(
            "{status}  {}/{}  ({} {})\n",
            self.suite, self.law, self.trials, self.unit
        );
        if let Some(c) = &self.counterexample {
            line.push_str(&format!("      counterexample: {c}\n"));
        }
        line
    }
}

fn law_table(mut rows: Vec<Row>) -> (Vec<Value>, String, bool) {
    rows.sort_by(|a, b| (a.suite, &a.law).cmp(&(b.suite, &b.law)));
    let passed = rows.iter().all(|r| r.passed);
    let failed = rows.iter().filter(|r| !r.passed).count();
    let mut text: String = rows.iter().map(Row::text).collect();
    text.push_str(&if passed {
        format!("all {} laws passed\n", rows.len())
    } else {
        format!("{failed} of {} laws failed\n", rows.len())
    });
    (rows.iter().map(Row::json).collect(), text, passed)
}

fn oracle_rows(rq: &RadicalQuiverData, cfg: &OracleConfig, mutation: Option<Mutation>) -> Vec<Row> {
    run_oracle(rq, cfg, mutation)
        .laws
        .into_iter()
        .map(|l| Row {
            suite: "singular_yoneda",
            unit: "trials",
            law: l.law,
            trials: l.trials,
            passed: l.passed,
            counterexample: l.counterexample,
        })
        .collect()
}

/// Associativity of μ first: the other suites assume it, so they are
/// skipped when it fails.
pub fn check(input: &Path, rq: &RadicalQuiverData, cfg: &OracleConfig) -> Output {
    let assoc = rq.check_mu_associativity();
    let mut rows = vec![Row {
        suite: "radical",
        unit: "paths",
        law: "mu_associativity".into(),
        trials: assoc.paths_checked,
        passed: assoc.holds(),
        counterexample: assoc.violations.first().map(|v| {
            format!(
                "μ(μ({0}⊗{1})⊗{2}) ≠ μ({0}⊗μ({1}⊗{2})) at {3}: {4} vs {5} ({6} violations)",
                v.path[0],
                v.path[1],
                v.path[2],
                v.arrow,
                v.left,
                v.right,
                assoc.violations.len()
            )
        }),
    }];
    let skipped = !assoc.holds();
    if !skipped {
        for l in structural_laws(rq, cfg.trials, cfg.seed) {
            rows.push(Row {
                suite: "dg_leavitt",
                unit: "trials",
                law: l.law,
                trials: l.trials,
                passed: l.passed,
                counterexample: l.counterexample,
            });
        }
        rows.extend(oracle_rows(rq, cfg, None));
    }
    let (laws, mut text, passed) = law_table(rows);
    if skipped {
        text.push_str("structural and oracle suites skipped: μ is not associative\n");
    }
    let json = json!({
        "command": "check",
        "input": input.display().to_string(),
        "field": rq.field().to_string(),
        "trials": cfg.trials,
        "seed": cfg.seed,
        "max_filtration": cfg.max_filtration,
        "max_level": cfg.max_level,
        "laws": laws,
        "skipped_suites": skipped,
        "passed": passed,
    });
    Output {
        json,
        text,
        code: if passed { 0 } else { 1 },
    }
}

pub fn oracle(input: &Path, rq: &RadicalQuiverData, cfg: &OracleConfig, mutation: Option<Mutation>) -> Output {
    let (laws, mut text, passed) = law_table(oracle_rows(rq, cfg, mutation));
    if let Some(m) = mutation {
        text = format!("mutation: {m}\n{text}");
    }
    let mut json = json!({
        "command": "oracle",
        "input": input.display().to_string(),
        "field": rq.field().to_string(),
        "trials": cfg.trials,
        "seed": cfg.seed,
        "max_filtration": cfg.max_filtration,
        "max_level": cfg.max_level,
        "laws": laws,
        "passed": passed,
    });
    if let Some(m) = mutation {
        json["mutation"] = Value::String(m.name().into());
    }
    Output {
        json,
        text,
        code: if passed { 0 } else { 1 },
    }
}

pub fn radical(rq: &RadicalQuiverData) -> Output {
    let q = rq.quiver();
    let mut text = format!("field: {}\nvertices: {}\n", rq.field(), q.vertices().join(" "));
    for (a, arrow) in q.arrows().iter().enumerate() {
        text.push_str(&format!(
            "arrow {}: {} -> {}  [{}]\n",
            arrow.name,
            q.vertex_name(arrow.source),
            q.vertex_name(arrow.target),
            rq.labels()[a]
        ));
    }
    for (b, a, g, c) in rq.lambda_entries() {
        text.push_str(&format!(
            "mu({} ⊗ {}) ∋ {} {}\n",
            q.arrow(b).name,
            q.arrow(a).name,
            c,
            q.arrow(g).name
        ));
    }
    Output::ok(rq.to_json(), text)
}

pub fn leavitt(rq: &RadicalQuiverData) -> Output {
    let lv = LeavittAlgebra::from_radical(rq);
    let json = presentation_json(&lv);
    let mut text = String::new();
    if lv.is_zero_algebra() {
        text.push_str("L(Q̃°) = 0: every vertex erodes\n");
        return Output::ok(json, text);
    }
    text.push_str(&format!("field: {}\n", json["field"].as_str().unwrap_or_default()));
    text.push_str("generators:\n");
    for g in json["generators"].as_array().into_iter().flatten() {
        text.push_str(&format!(
            "  {}  |{}| = {}  {} -> {}  ∂ = {}\n",
            g["name"].as_str().unwrap_or_default(),
            g["name"].as_str().unwrap_or_default(),
            g["degree"],
            g["source"].as_str().unwrap_or_default(),
            g["target"].as_str().unwrap_or_default(),
            g["differential"].as_str().unwrap_or_default(),
        ));
    }
    text.push_str("relations:\n");
    for r in json["relations"].as_array().into_iter().flatten() {
        text.push_str(&format!("  {}\n", r.as_str().unwrap_or_default()));
    }
    Output::ok(json, text)
}

pub enum ElementOp<'a> {
    NormalForm(&'a str),
    Mul(&'a str, &'a str),
    Diff(&'a str),
}

pub fn element(rq: &RadicalQuiverData, algebra: ElementAlgebra, op: ElementOp) -> Result<Output, String> {
    let lv = LeavittAlgebra::from_radical(rq);
    let cohn_full;
    let (cohn, normal): (&CohnAlgebra, bool) = match algebra {
        ElementAlgebra::Leavitt => (lv.cohn(), true),
        ElementAlgebra::Cohn => {
            cohn_full = CohnAlgebra::new(std::sync::Arc::new(rq.clone()));
            (&cohn_full, false)
        }
    };
    let parse = |s: &str| parse_element(cohn, s).map_err(|e| e.to_string());
    let nf = |u| if normal { lv.normal_form(&u) } else { u };
    let (command, inputs, result) = match op {
        ElementOp::NormalForm(e) => ("normal-form", vec![e], nf(parse(e)?)),
        ElementOp::Mul(a, b) => ("mul", vec![a, b], nf(cohn.mul(&parse(a)?, &parse(b)?))),
        ElementOp::Diff(e) => ("diff", vec![e], nf(cohn.differential(&parse(e)?))),
    };
    let rendered = cohn.render(&result);
    let json = json!({
        "command": command,
        "algebra": match algebra { ElementAlgebra::Leavitt => "leavitt", ElementAlgebra::Cohn => "cohn" },
        "inputs": inputs,
        "result": rendered,
        "degree": result.degree(),
    });
    Ok(Output::ok(json, format!("{rendered}\n")))
}

pub fn cohomology(
    rq: &RadicalQuiverData,
    algebra: AlgebraKind,
    lo: i64,
    hi: i64,
    max_level: usize,
    window: usize,
) -> Result<Output, String> {
    let mut rows = Vec::new();
    let mut text = String::new();
    match algebra {
        AlgebraKind::Tensor => {
            text.push_str("degree  dim\n");
            for d in lo..=hi {
                let dim = tensor_algebra_hdim(rq, d).map_err(|e| e.to_string())?;
                text.push_str(&format!("{d:>6}  {dim:>3}\n"));
                rows.push(json!({ "degree": d, "dimension": dim }));
            }
        }
        AlgebraKind::Leavitt => {
            let cx = WordComplex::leavitt(rq);
            text.push_str("degree  dim  status\n");
            for d in lo..=hi {
                let h = leavitt_hdim_in(&cx, d, max_level, window).map_err(|e| e.to_string())?;
                let status = match (h.stabilized, h.stable_from) {
                    (true, Some(p)) => format!("stable from level {p} (checked to {})", h.last_level),
                    _ => format!("unstable up to level {}", h.last_level),
                };
                text.push_str(&format!("{d:>6}  {:>3}  {status}\n", h.dimension));
                rows.push(serde_json::to_value(&h).expect("serializable"));
            }
        }
    }
    let json = json!({
        "command": "cohomology",
        "algebra": match algebra { AlgebraKind::Leavitt => "leavitt", AlgebraKind::Tensor => "tensor" },
        "degrees": [lo, hi],
        "max_level": max_level,
        "window": window,
        "rows": rows,
    });
    Ok(Output::ok(json, text))
}
