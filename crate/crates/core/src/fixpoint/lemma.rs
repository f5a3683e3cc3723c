use serde::{Deserialize, Serialize};

use crate::arith::Field;
use crate::poly::{gcd_poly, squarefree_part, MultiPoly, Vars};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LemmaOutcome {
    Holds,
    /// `P` and `Q` share a nonconstant factor.
    NotCoprime,
    /// `P(z, z^{k+1}) − z^{k+1} Q(z, z^{k+1})` vanishes identically.
    DegenerateDifference,
    /// Some nonzero root of the difference is not a common root.
    RootCondition,
}

#[derive(Debug, Clone)]
pub struct LemmaReport<F: Field> {
    pub outcome: LemmaOutcome,
    /// `u(z) = P(z, z^{k+1}) − z^{k+1} Q(z, z^{k+1})`.
    pub difference: MultiPoly<F>,
    /// `gcd(P(z, z^{k+1}), Q(z, z^{k+1}))`.
    pub common: MultiPoly<F>,
}

impl<F: Field> LemmaReport<F> {
    pub fn passed(&self) -> bool {
        self.outcome == LemmaOutcome::Holds
    }
}

/// Root condition for the map `(z2 / z1^k, P / Q)`, with `P, Q` in `z1, z2`.
///
/// Panics if `k == 0`.
pub fn lemma_check<F: Field>(p: &MultiPoly<F>, q: &MultiPoly<F>, k: u32) -> LemmaReport<F> {
    assert!(k >= 1, "k must be positive");
    let zv = Vars::new(&["z"]);
    let z = MultiPoly::<F>::var(&zv, 0);
    let zk = z.pow(k + 1);
    let images = [z.clone(), zk.clone()];
    let pz = p.substitute(&images);
    let qz = q.substitute(&images);
    let difference = &pz - &(&zk * &qz);
    let common = gcd_poly(&pz, &qz);
    let report = |outcome| LemmaReport { outcome, difference: difference.clone(), common: common.clone() };

    if !gcd_poly(p, q).is_constant() {
        return report(LemmaOutcome::NotCoprime);
    }
    if difference.is_zero() {
        return report(LemmaOutcome::DegenerateDifference);
    }
    let (v, _) = difference.strip_var_power(0);
    let sf = squarefree_part(&v, 0).expect("nonzero");
    if sf.divides(&common) {
        report(LemmaOutcome::Holds)
    } else {
        report(LemmaOutcome::RootCondition)
    }
}
