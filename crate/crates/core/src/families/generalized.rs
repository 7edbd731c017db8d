use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::monoid::NumericalMonoid;

/// ⟨a, ah+d, ah+2d⟩ with h ≥ 2.
#[derive(Debug, Clone)]
pub struct GeneralizedArithmeticFamily {
    a: u64,
    h: u64,
    d: u64,
    monoid: NumericalMonoid,
}

impl GeneralizedArithmeticFamily {
    pub fn new(a: u64, h: u64, d: u64) -> Result<Self> {
        if h < 2 {
            return Err(Error::InvalidFamily(format!("gen-arith: need h >= 2, got h={h}")));
        }
        if a < 1 || d < 1 {
            return Err(Error::InvalidFamily("gen-arith: need a >= 1 and d >= 1".into()));
        }
        if gcd(a, d) != 1 {
            return Err(Error::InvalidFamily(format!(
                "gen-arith: need gcd(a, d) = 1, got gcd({a}, {d}) = {}",
                gcd(a, d)
            )));
        }
        let ah = a.checked_mul(h).ok_or(Error::Overflow("gen-arith generators"))?;
        let gens = [a, ah + d, ah + 2 * d];
        let monoid = NumericalMonoid::new(&gens)?;
        if monoid.embedding_dimension() != 3 {
            return Err(Error::InvalidFamily(format!(
                "gen-arith: generators {gens:?} are not minimal (reduce to {:?})",
                monoid.generators()
            )));
        }
        Ok(GeneralizedArithmeticFamily { a, h, d, monoid })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn monoid(&self) -> &NumericalMonoid {
        &self.monoid
    }

    /// gcd(h − 1, d).
    pub fn step_gcd(&self) -> u64 {
        gcd(self.h - 1, self.d)
    }

    /// (ah + 2d − a)/gcd(h − 1, d).
    pub fn equivalent_closed(&self) -> u64 {
        (self.a * self.h + 2 * self.d - self.a) / self.step_gcd()
    }
}
