use std::collections::HashMap;

use super::retract::{HClass, Retract};
use super::CohomologyError;
use crate::dg_leavitt::CohnElement;
use crate::foundation::{Scalar, SparseVector};

/// Products transferred to cohomology along a retract.
///
/// `m_k` for `k ≥ 3` is the sum over planar binary trees written as the
/// recursion `u(i,i) = i(a_i)`, `w(i,j) = Σ_r ū(i,r) u(r+1,j)`,
/// `u(i,j) = −h(w(i,j))`, `m_k = p(w(1,k))`, where `ū = (−1)^{|u|+1} u`.
/// When the lower products vanish this is the Massey product.
#[derive(Clone, Debug)]
pub struct AInfinityProducts {
    retract: Retract,
    pub max_arity: usize,
}

impl AInfinityProducts {
    pub fn new(retract: Retract, max_arity: usize) -> AInfinityProducts {
        AInfinityProducts { retract, max_arity }
    }

    pub fn retract(&self) -> &Retract {
        &self.retract
    }

    fn mul(&self, a: &CohnElement, b: &CohnElement) -> CohnElement {
        self.retract.complex().mul(a, b)
    }

    pub fn m2(&self, a: &HClass, b: &HClass) -> Result<HClass, CohomologyError> {
        let x = self.mul(&self.retract.i_element(a)?, &self.retract.i_element(b)?);
        self.retract.p_element(a.degree + b.degree, &x)
    }

    /// `m_k(a_1, …, a_k)`; `m_1 = 0` since the model is minimal.
    pub fn m(&self, args: &[HClass]) -> Result<HClass, CohomologyError> {
        let k = args.len();
        if k == 0 || k > self.max_arity {
            return Err(CohomologyError::Invalid(format!(
                "arity {k} outside 1..={}",
                self.max_arity
            )));
        }
        let total: i64 = args.iter().map(|a| a.degree).sum();
        let degree = total + 2 - k as i64;
        match k {
            1 => Ok(HClass {
                degree: args[0].degree + 1,
                coords: SparseVector::new(),
            }),
            2 => self.m2(&args[0], &args[1]),
            _ => {
                let mut memo = HashMap::new();
                let w = self.w(args, 0, k - 1, &mut memo)?;
                self.retract.p_element(degree, &w.0)
            }
        }
    }

    fn u(
        &self,
        args: &[HClass],
        i: usize,
        j: usize,
        memo: &mut HashMap<(usize, usize), (CohnElement, i64)>,
    ) -> Result<(CohnElement, i64), CohomologyError> {
        if let Some(v) = memo.get(&(i, j)) {
            return Ok(v.clone());
        }
        let out = if i == j {
            (self.retract.i_element(&args[i])?, args[i].degree)
        } else {
            let (w, dw) = self.w(args, i, j, memo)?;
            let h = self.retract.h_element(dw, &w)?;
            (h.neg(), dw - 1)
        };
        memo.insert((i, j), out.clone());
        Ok(out)
    }

    fn w(
        &self,
        args: &[HClass],
        i: usize,
        j: usize,
        memo: &mut HashMap<(usize, usize), (CohnElement, i64)>,
    ) -> Result<(CohnElement, i64), CohomologyError> {
        let field = self.retract.complex().field();
        let mut out = CohnElement::zero(field);
        let mut degree = None;
        for r in i..j {
            let (a, da) = self.u(args, i, r, memo)?;
            let (b, db) = self.u(args, r + 1, j, memo)?;
            let bar = Scalar::sign(field, da + 1);
            out = out.add(&self.mul(&a, &b).scale(&bar));
            degree = Some(da + db);
        }
        Ok((out, degree.expect("j > i")))
    }

    /// `m₂(m₂(a, b), c) = m₂(a, m₂(b, c))` on all basis triples whose products
    /// stay inside the retract; returns the number of triples checked.
    pub fn check_m2_associativity(&self) -> Result<usize, String> {
        let r = &self.retract;
        let field = r.complex().field();
        let degrees: Vec<i64> = r.degrees().collect();
        let inside = |d: i64| r.degrees().contains(&d);
        let mut checked = 0;
        for &da in &degrees {
            for &db in &degrees {
                for &dc in &degrees {
                    if !inside(da + db) || !inside(db + dc) || !inside(da + db + dc) {
                        continue;
                    }
                    let dims = [da, db, dc].map(|d| r.h_dim(d).expect("in range"));
                    for x in 0..dims[0] {
                        for y in 0..dims[1] {
                            for z in 0..dims[2] {
                                let (a, b, c) = (
                                    HClass::basis(da, x, field),
                                    HClass::basis(db, y, field),
                                    HClass::basis(dc, z, field),
                                );
                                let run = || -> Result<bool, CohomologyError> {
                                    let l = self.m2(&self.m2(&a, &b)?, &c)?;
                                    let rr = self.m2(&a, &self.m2(&b, &c)?)?;
                                    Ok(l == rr)
                                };
                                match run() {
                                    Ok(true) => checked += 1,
                                    Ok(false) => {
                                        return Err(format!("m₂ not associative on degrees ({da}, {db}, {dc})"))
                                    }
                                    Err(CohomologyError::OutsideTruncation(_)) => {}
                                    Err(e) => return Err(e.to_string()),
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(checked)
    }
}
