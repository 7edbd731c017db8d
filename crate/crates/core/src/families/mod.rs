//! Monoid families with closed-form invariants: arithmetic sequences,
//! generalized arithmetic sequences, general embedding dimension three, the
//! gap family ⟨na, na+n, 2na+nx+1⟩ and the Frobenius family.
//!
//! Constructors reject parameters whose generators are not minimal.

mod arithmetic;
mod dim3;
mod gap;
mod generalized;

use serde::{Deserialize, Serialize};

pub use arithmetic::{ArithmeticFamily, OptimizedForm};
pub use dim3::{
    dim3_equivalent_classify, dim3_equivalent_closed, dim3_equivalent_report, dim3_length_step,
    dim3_same_length_step, dissonance,
};
pub use gap::{
    frobenius_family_invariants, gap_family_invariants, FrobeniusFamily, FrobeniusInvariants, GapChecks,
    GapFamily, GapInvariants, ThirdFactorizationCheck,
};
pub use generalized::GeneralizedArithmeticFamily;

use crate::catenary::{
    monoid_adjacent, monoid_catenary, monoid_equivalent, InvariantReport, Method,
};
use crate::error::Result;
use crate::monoid::NumericalMonoid;

/// A family whose closed forms apply to a given monoid.
#[derive(Debug, Clone)]
pub enum Recognized {
    Arithmetic(ArithmeticFamily),
    Gap(GapFamily),
}

impl Recognized {
    pub fn name(&self) -> String {
        match self {
            Recognized::Arithmetic(f) => format!("arithmetic(a={}, d={}, k={})", f.a(), f.d(), f.k()),
            Recognized::Gap(f) => format!("gap(n={}, a={}, x={})", f.n(), f.a(), f.x()),
        }
    }
}

/// Matches the generators against the arithmetic and gap families.
pub fn recognize(monoid: &NumericalMonoid) -> Option<Recognized> {
    if !monoid.is_minimal() {
        return None;
    }
    let g = monoid.generators();
    if g.len() >= 2 {
        let d = g[1] - g[0];
        if g.windows(2).all(|w| w[1] - w[0] == d) {
            if let Ok(f) = ArithmeticFamily::new(g[0], d, g.len() as u64 - 1) {
                return Some(Recognized::Arithmetic(f));
            }
        }
    }
    if g.len() == 3 {
        let n = g[1] - g[0];
        if g[0].is_multiple_of(n) {
            let a = g[0] / n;
            // n₃ = 2na + nx + 1.
            let rest = g[2].checked_sub(2 * g[0] + 1)?;
            if rest % n == 0 {
                if let Ok(f) = GapFamily::new(n, a, rest / n) {
                    return Some(Recognized::Gap(f));
                }
            }
        }
    }
    None
}

/// All four set-level degrees, with family closed forms substituted where
/// they apply.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetInvariants {
    pub catenary: InvariantReport,
    pub equivalent: InvariantReport,
    pub adjacent: InvariantReport,
    pub monotone: InvariantReport,
    pub family: Option<String>,
}

pub fn set_invariants(monoid: &NumericalMonoid, scan_bound: Option<u64>) -> Result<SetInvariants> {
    let catenary = monoid_catenary(monoid)?;
    let mut equivalent = monoid_equivalent(monoid, scan_bound)?;
    let mut adjacent = monoid_adjacent(monoid, scan_bound)?;
    let mut monotone = InvariantReport {
        value: equivalent.value.max(adjacent.value),
        exactness: equivalent.exactness.weakest(adjacent.exactness),
        method: Method::MaxFormula,
        scan_bound: adjacent.scan_bound,
        heuristic: equivalent.heuristic || adjacent.heuristic,
    };
    let family = recognize(monoid);
    match &family {
        Some(Recognized::Arithmetic(f)) => {
            let c = f.catenary_closed();
            let eq = if f.k() >= 2 { 2 } else { 0 };
            equivalent = InvariantReport::exact(eq, Method::ClosedForm);
            adjacent = InvariantReport::exact(c, Method::ClosedForm);
            monotone = InvariantReport::exact(c, Method::ClosedForm);
        }
        Some(Recognized::Gap(f)) => {
            monotone = InvariantReport::exact(f.equivalent_closed(), Method::ClosedForm);
        }
        None => {}
    }
    Ok(SetInvariants {
        catenary,
        equivalent,
        adjacent,
        monotone,
        family: family.map(|f| f.name()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recognition() {
        let m = NumericalMonoid::new(&[11, 15, 19, 23, 27]).unwrap();
        assert!(matches!(recognize(&m), Some(Recognized::Arithmetic(_))));
        let m = NumericalMonoid::new(&[5, 6, 19]).unwrap();
        match recognize(&m) {
            Some(Recognized::Gap(f)) => assert_eq!((f.n(), f.a(), f.x()), (1, 5, 8)),
            other => panic!("{other:?}"),
        }
        let m = NumericalMonoid::new(&[6, 8, 17]).unwrap();
        assert!(matches!(recognize(&m), Some(Recognized::Gap(_))));
        assert!(recognize(&NumericalMonoid::new(&[4, 9, 19]).unwrap()).is_none());
        let kept = NumericalMonoid::with_generators(&[4, 9, 18]).unwrap();
        assert!(recognize(&kept).is_none());
    }

    #[test]
    fn overrides_agree_with_scans() {
        let m = NumericalMonoid::new(&[11, 15, 19, 23, 27]).unwrap();
        let s = set_invariants(&m, None).unwrap();
        assert_eq!(s.catenary.value, 7);
        assert_eq!(s.adjacent.value, 7);
        assert_eq!(s.monotone.value, 7);
        assert_eq!(s.equivalent.value, 2);
        assert_eq!(monoid_adjacent(&m, None).unwrap().value, 7);

        let m = NumericalMonoid::new(&[5, 6, 19]).unwrap();
        let s = set_invariants(&m, None).unwrap();
        assert_eq!(s.monotone.value, 14);
        assert!(s.monotone.is_exact());
        assert!(s.adjacent.value < 14);
    }
}
