//! dg Cohn algebra `C(Q̃)` and dg Leavitt algebra `L(Q̃°)` of a radical quiver.

mod cohn;
mod expr;
mod laws;
mod leavitt;
mod word;

pub use cohn::{CohnAlgebra, Letter};
pub use expr::parse_element;
pub use laws::{comodule_sides, d_minus_from_d_plus, structural_laws, LawOutcome};
pub use leavitt::{remove_sinks, sink_free_vertices, LeavittAlgebra, LeavittElement};
pub use word::{CohnElement, GeneralizedWord};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DgError {
    #[error("vertex `{0}` is a sink; remove sinks first")]
    SinkPresent(String),
    #[error("cannot parse element: {0}")]
    Parse(String),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("element is not at level {0}")]
    Misaligned(usize),
}

#[derive(Serialize)]
struct GeneratorJson {
    name: String,
    degree: i64,
    source: String,
    target: String,
    differential: String,
}

/// The dg Leavitt presentation: generators with degrees, Cuntz–Krieger
/// relations, and `∂` on every generator.
pub fn presentation_json(alg: &LeavittAlgebra) -> serde_json::Value {
    let cohn = alg.cohn();
    let q = cohn.quiver();
    let mut generators = Vec::new();
    for (a, arrow) in q.arrows().iter().enumerate() {
        for letter in [Letter::Real(a), Letter::Ghost(a)] {
            let (name, source, target) = match letter {
                Letter::Real(_) => (arrow.name.clone(), arrow.source, arrow.target),
                Letter::Ghost(_) => (format!("{}*", arrow.name), arrow.target, arrow.source),
            };
            generators.push(GeneratorJson {
                name,
                degree: letter.degree(),
                source: q.vertex_name(source).to_string(),
                target: q.vertex_name(target).to_string(),
                differential: cohn.render(&alg.differential(&cohn.letter(letter))),
            });
        }
    }
    let mut relations = Vec::new();
    for (a, x) in q.arrows().iter().enumerate() {
        for (b, y) in q.arrows().iter().enumerate() {
            if x.source == y.source {
                let rhs = if a == b {
                    cohn.render(&cohn.vertex(x.target))
                } else {
                    "0".into()
                };
                relations.push(format!("{} {}* = {}", x.name, y.name, rhs));
            }
        }
    }
    for v in 0..q.num_vertices() {
        let terms: Vec<String> = cohn
            .arrows_from(v)
            .iter()
            .map(|&a| format!("{0}* {0}", q.arrow(a).name))
            .collect();
        relations.push(format!("{} = {}", cohn.render(&cohn.vertex(v)), terms.join(" + ")));
    }
    serde_json::json!({
        "field": crate::fdalgebra::field_name(cohn.field()),
        "vertices": q.vertices(),
        "distinguished": (0..q.num_vertices())
            .map(|v| q.arrow(alg.distinguished(v)).name.clone())
            .collect::<Vec<_>>(),
        "generators": generators,
        "relations": relations,
    })
}

#[cfg(test)]
mod tests;
