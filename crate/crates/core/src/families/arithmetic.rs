use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::arith::{ceil_div, gcd};
use crate::error::{Error, Result};
use crate::factorization::{enumerate, raw_distance, Factorization};
use crate::monoid::NumericalMonoid;

/// ⟨a, a+d, …, a+kd⟩.
#[derive(Debug, Clone)]
pub struct ArithmeticFamily {
    a: u64,
    d: u64,
    k: u64,
    monoid: NumericalMonoid,
    target: OnceLock<Vec<u64>>,
}

impl ArithmeticFamily {
    pub fn new(a: u64, d: u64, k: u64) -> Result<Self> {
        if a < 2 {
            return Err(Error::InvalidFamily(format!("arithmetic: need a >= 2, got a={a}")));
        }
        if d < 1 {
            return Err(Error::InvalidFamily("arithmetic: need d >= 1".into()));
        }
        if k < 1 || k > a - 1 {
            return Err(Error::InvalidFamily(format!(
                "arithmetic: need 1 <= k <= a-1, got k={k}, a={a}"
            )));
        }
        if gcd(a, d) != 1 {
            return Err(Error::InvalidFamily(format!(
                "arithmetic: need gcd(a, d) = 1, got gcd({a}, {d}) = {}",
                gcd(a, d)
            )));
        }
        let gens = (0..=k)
            .map(|i| i.checked_mul(d).and_then(|x| x.checked_add(a)))
            .collect::<Option<Vec<u64>>>()
            .ok_or(Error::Overflow("arithmetic generators"))?;
        let monoid = NumericalMonoid::new(&gens)?;
        if monoid.embedding_dimension() as u64 != k + 1 {
            return Err(Error::InvalidFamily(format!(
                "arithmetic: generators {gens:?} are not minimal"
            )));
        }
        Ok(ArithmeticFamily {
            a,
            d,
            k,
            monoid,
            target: OnceLock::new(),
        })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn monoid(&self) -> &NumericalMonoid {
        &self.monoid
    }

    /// ⌈a/k⌉ + d.
    pub fn catenary_closed(&self) -> u64 {
        ceil_div(self.a, self.k) + self.d
    }

    /// m = c₁·a + c₂·d with k·c₁ ≥ c₂ for some c₁, c₂ ≥ 0.
    pub fn contains(&self, m: i64) -> bool {
        if m < 0 {
            return false;
        }
        let (m, a, d, k) = (m as u64, self.a, self.d, self.k);
        (0..=m / a).any(|c1| {
            let rest = m - c1 * a;
            rest % d == 0 && rest / d <= k.saturating_mul(c1)
        })
    }

    fn check(&self, z: &Factorization) -> Result<()> {
        if z.dimension() as u64 != self.k + 1 {
            return Err(Error::InvalidFactorization(format!(
                "expected {} coordinates, got {}",
                self.k + 1,
                z.dimension()
            )));
        }
        z.element(&self.monoid)?;
        Ok(())
    }

    /// A factorization of the same element and length in optimized form,
    /// reached by length-preserving moves.
    pub fn optimize(&self, z: &Factorization) -> Result<Factorization> {
        self.check(z)?;
        let mut c = z.coeffs().to_vec();
        optimize_prefix(&mut c, self.k as usize);
        Ok(Factorization::from_coeffs(c))
    }

    /// The non-minimal-length inequality for an optimized form.
    pub fn is_non_minimal_length(&self, f: &OptimizedForm) -> bool {
        let (k, d, a) = (self.k as i128, self.d as i128, self.a as i128);
        let (alpha, beta) = (f.alpha as i128, f.beta as i128);
        match f.middle_index {
            Some(i) => k * (alpha + beta + 1 - d) >= i as i128 + beta * k + a,
            None => k * (alpha + beta - d) >= beta * k + a,
        }
    }

    /// α ≥ ⌈a/k⌉ + d − 1.
    pub fn alpha_lower_bound_check(&self, f: &OptimizedForm) -> bool {
        f.alpha + 1 >= self.catenary_closed()
    }

    /// b = a·(⌈a/k⌉ + d).
    pub fn move_element(&self) -> u64 {
        self.a * self.catenary_closed()
    }

    /// The canonical longest factorization of b with no copies of a.
    pub fn move_target(&self) -> Result<&[u64]> {
        if let Some(t) = self.target.get() {
            return Ok(t);
        }
        let b = self.move_element();
        let fs = enumerate(&self.monoid, b)?;
        let best = fs
            .factorizations()
            .iter()
            .filter(|z| z.coeffs()[0] == 0)
            .fold(None::<&Factorization>, |best, z| match best {
                Some(w) if w.len() >= z.len() => Some(w),
                _ => Some(z),
            })
            .ok_or_else(|| {
                Error::NoTargetFactorization(format!("no factorization of {b} avoids the first generator"))
            })?;
        Ok(self.target.get_or_init(|| best.coeffs().to_vec()))
    }

    /// Move B: trade c(M) copies of a for the stored factorization of b.
    pub fn move_b(&self, z: &Factorization) -> Result<Factorization> {
        self.check(z)?;
        let c = self.catenary_closed();
        if z.coeffs()[0] < c {
            return Err(Error::PreconditionFailed(format!(
                "move B needs first coordinate >= {c}, got {}",
                z.coeffs()[0]
            )));
        }
        let target = self.move_target()?;
        let mut out = z.coeffs().to_vec();
        out[0] -= c;
        for (o, t) in out.iter_mut().zip(target) {
            *o += t;
        }
        let out = Factorization::from_coeffs(out);
        debug_assert_eq!(raw_distance(z, &out), c);
        Ok(out)
    }
}

// Length-preserving moves on the arithmetic generators: one copy each of
// positions i−1 and j+1 replaces one copy each of positions i and j.
fn optimize_prefix(z: &mut [u64], r: usize) {
    if r <= 1 {
        return;
    }
    if r == 2 {
        let t = z[1] / 2;
        z[0] += t;
        z[1] -= 2 * t;
        z[2] += t;
        return;
    }
    loop {
        optimize_prefix(z, r - 1);
        if z[r - 1] >= 2 {
            z[r - 2] += 1;
            z[r - 1] -= 2;
            z[r] += 1;
        } else if z[r - 1] == 1 {
            match (1..r - 1).find(|&i| z[i] == 1) {
                Some(i) => {
                    z[i - 1] += 1;
                    z[i] -= 1;
                    z[r - 1] -= 1;
                    z[r] += 1;
                }
                None => return,
            }
        } else {
            return;
        }
    }
}

/// (α, 0, …, 0, 1, 0, …, 0, β) with the 1 at `middle_index`, or (α, 0, …, 0, β).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimizedForm {
    pub alpha: u64,
    pub beta: u64,
    pub middle_index: Option<usize>,
}

impl OptimizedForm {
    pub fn parse(z: &Factorization) -> Option<OptimizedForm> {
        let c = z.coeffs();
        if c.len() < 2 {
            return None;
        }
        let inner = &c[1..c.len() - 1];
        let mut middle = None;
        for (off, &v) in inner.iter().enumerate() {
            match v {
                0 => {}
                1 if middle.is_none() => middle = Some(off + 1),
                _ => return None,
            }
        }
        Some(OptimizedForm {
            alpha: c[0],
            beta: c[c.len() - 1],
            middle_index: middle,
        })
    }

    pub fn to_coeffs(&self, k: usize) -> Vec<u64> {
        let mut c = vec![0; k + 1];
        c[0] = self.alpha;
        c[k] += self.beta;
        if let Some(i) = self.middle_index {
            c[i] += 1;
        }
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::distance;

    fn fam() -> ArithmeticFamily {
        ArithmeticFamily::new(11, 4, 4).unwrap()
    }

    fn fz(c: &[u64]) -> Factorization {
        Factorization::from_coeffs(c.to_vec())
    }

    #[test]
    fn validation() {
        assert!(ArithmeticFamily::new(1, 1, 1).is_err());
        assert!(ArithmeticFamily::new(4, 2, 1).is_err());
        assert!(ArithmeticFamily::new(4, 1, 4).is_err());
        assert!(ArithmeticFamily::new(4, 0, 1).is_err());
        let f = ArithmeticFamily::new(2, 1, 1).unwrap();
        assert_eq!(f.monoid().generators(), &[2, 3]);
        assert_eq!(f.catenary_closed(), 3);
        assert_eq!(fam().monoid().generators(), &[11, 15, 19, 23, 27]);
    }

    #[test]
    fn membership_criterion() {
        let f = fam();
        assert!(f.contains(111));
        assert!(f.contains(0));
        assert!(!f.contains(-4));
        let g = ArithmeticFamily::new(7, 3, 2).unwrap();
        for m in 0..=200 {
            assert_eq!(g.contains(m), g.monoid().contains_dp(m).unwrap(), "m={m}");
        }
    }

    #[test]
    fn optimize_example() {
        let f = fam();
        assert_eq!(f.optimize(&fz(&[0, 1, 0, 3, 1])).unwrap(), fz(&[1, 0, 1, 0, 3]));
        assert_eq!(f.optimize(&fz(&[5, 0, 0, 0, 2])).unwrap(), fz(&[5, 0, 0, 0, 2]));
        assert!(f.optimize(&fz(&[1, 1])).is_err());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(
            OptimizedForm::parse(&fz(&[1, 0, 1, 0, 3])),
            Some(OptimizedForm { alpha: 1, beta: 3, middle_index: Some(2) })
        );
        assert_eq!(
            OptimizedForm::parse(&fz(&[4, 0, 0, 0, 0])),
            Some(OptimizedForm { alpha: 4, beta: 0, middle_index: None })
        );
        assert_eq!(OptimizedForm::parse(&fz(&[1, 1, 1, 0, 3])), None);
        assert_eq!(OptimizedForm::parse(&fz(&[1, 2, 0, 0, 3])), None);
        let f = OptimizedForm { alpha: 2, beta: 5, middle_index: Some(3) };
        assert_eq!(f.to_coeffs(4), vec![2, 0, 0, 1, 5]);
    }

    #[test]
    fn inequality_example() {
        let f = fam();
        let form = OptimizedForm::parse(&fz(&[8, 0, 0, 1, 0])).unwrap();
        assert!(f.is_non_minimal_length(&form));
        assert!(f.alpha_lower_bound_check(&form));
        let zero = OptimizedForm { alpha: 0, beta: 0, middle_index: Some(1) };
        assert!(!f.is_non_minimal_length(&zero));
    }

    #[test]
    fn move_b_example() {
        let f = fam();
        assert_eq!(f.move_element(), 77);
        let z77 = enumerate(f.monoid(), 77).unwrap();
        assert_eq!(z77.factorizations(), &[fz(&[7, 0, 0, 0, 0]), fz(&[0, 0, 0, 1, 2])]);
        assert_eq!(f.move_target().unwrap(), &[0, 0, 0, 1, 2]);
        let z = fz(&[7, 1, 1, 0, 0]);
        let bz = f.move_b(&z).unwrap();
        assert_eq!(bz, fz(&[0, 1, 1, 1, 2]));
        assert_eq!(distance(&z, &bz).unwrap(), 7);
        assert_eq!(z.len() - bz.len(), 4);
        assert_eq!(f.move_b(&fz(&[7, 0, 0, 0, 0])).unwrap(), fz(&[0, 0, 0, 1, 2]));
        assert!(matches!(
            f.move_b(&fz(&[6, 0, 0, 0, 0])),
            Err(Error::PreconditionFailed(_)) | Err(Error::InvalidFactorization(_))
        ));
        assert!(matches!(f.move_b(&fz(&[6, 1, 0, 0, 0])), Err(Error::PreconditionFailed(_))));
    }
}
