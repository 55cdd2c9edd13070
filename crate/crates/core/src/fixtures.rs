//! Bundled example quivers, shared by tests, the acceptance suite and the CLI.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fdalgebra::{radical_quiver, AlgebraPresentation, RadicalQuiverData};
use crate::foundation::{Field, Matrix, Scalar};
use crate::quiver::parse_quiver_file;

/// `(name, text)` of every bundled quiver file.
pub const QUIVERS: &[(&str, &str)] = &[
    ("trunc2", include_str!("../../../quivers/trunc2.quiver")),
    ("trunc3", include_str!("../../../quivers/trunc3.quiver")),
    ("trunc4", include_str!("../../../quivers/trunc4.quiver")),
    ("trunc5", include_str!("../../../quivers/trunc5.quiver")),
    ("rsz-rose2", include_str!("../../../quivers/rsz-rose2.quiver")),
    ("rsz-cycle", include_str!("../../../quivers/rsz-cycle.quiver")),
    ("square", include_str!("../../../quivers/square.quiver")),
    ("nonlocal", include_str!("../../../quivers/nonlocal.quiver")),
    ("a2", include_str!("../../../quivers/a2.quiver")),
    ("point", include_str!("../../../quivers/point.quiver")),
];

pub fn text(name: &str) -> Option<&'static str> {
    QUIVERS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// `K[x]/(x^{n+1})`, whose radical quiver is the rose with `n` loops.
pub fn truncated_text(n: usize) -> String {
    let word = vec!["x"; n + 1].join("*");
    format!("field: Q\nvertex 1\narrow x: 1 -> 1\nrelation: {word}\n")
}

pub fn presentation_of(text: &str, field: Field) -> AlgebraPresentation {
    let pq = parse_quiver_file(text, field).expect("bundled quiver parses");
    AlgebraPresentation::from_parsed(&pq, 16).expect("bundled quiver is admissible")
}

pub fn radical_of(text: &str) -> RadicalQuiverData {
    radical_quiver(&presentation_of(text, Field::Rational))
}

/// Radical quiver data of a bundled example.
pub fn radical(name: &str) -> RadicalQuiverData {
    radical_of(text(name).expect("known fixture"))
}

/// Radical quiver data of `K[x]/(x^{n+1})`.
pub fn rose(n: usize) -> RadicalQuiverData {
    radical_of(&truncated_text(n))
}

/// `rq` in a random basis: every block of parallel arrows is replaced by an
/// invertible integer combination drawn from `seed`. The resulting λ-table is
/// dense but still associative.
pub fn randomize_basis(rq: &RadicalQuiverData, seed: u64) -> RadicalQuiverData {
    let field = rq.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut transforms = BTreeMap::new();
    for (key, arrows) in rq.blocks() {
        let m = arrows.len();
        let t = loop {
            let rows: Vec<Vec<Scalar>> = (0..m)
                .map(|_| (0..m).map(|_| Scalar::from_i64(field, rng.gen_range(-3..=3))).collect())
                .collect();
            let t = Matrix::from_rows(field, &rows).expect("square block");
            if t.rank() == m {
                break t;
            }
        };
        transforms.insert(key, t);
    }
    rq.change_basis(&transforms).expect("invertible transforms")
}

/// A randomized λ-table: `K[x]/(x⁴)` in a random basis of its radical.
pub fn randomized(seed: u64) -> RadicalQuiverData {
    randomize_basis(&rose(3), seed)
}
