//! Plain-text rendering of linear combinations.

use crate::foundation::Scalar;

/// Renders `Σ c_k m_k` in the order given, e.g. `x*x - 2 y + 1/2 z`.
///
/// Monomials named `1` absorb their coefficient (`3`, not `3 1`).
pub fn linear_combination(terms: &[(String, Scalar)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (name, c)) in terms.iter().enumerate() {
        let negative = c.is_negative();
        let magnitude = if negative { -c } else { c.clone() };
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if name == "1" {
            out.push_str(&magnitude.to_string());
        } else if magnitude.is_one() {
            out.push_str(name);
        } else {
            out.push_str(&format!("{magnitude} {name}"));
        }
    }
    out
}
