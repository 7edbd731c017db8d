//! Embedding dimension three: length-changing moves, c_eq and its
//! per-element classification.

use crate::arith::exact_div;
use crate::catenary::InvariantReport;
use crate::error::{Error, Result};
use crate::factorization::Factorization;
use crate::monoid::NumericalMonoid;

fn require_dim3(monoid: &NumericalMonoid) -> Result<[i64; 3]> {
    let g = monoid.generators();
    if g.len() != 3 {
        return Err(Error::NotDimension3(g.len()));
    }
    let conv = |x: u64| NumericalMonoid::signed(x);
    Ok([conv(g[0])?, conv(g[1])?, conv(g[2])?])
}

/// The factorization reached from z = (b, c, d) by shortening by `l` while the
/// third coordinate grows by `k`; `None` when the result is not a
/// non-negative integer vector. Negative `l` lengthens.
pub fn dim3_length_step(
    monoid: &NumericalMonoid,
    z: &Factorization,
    l: i64,
    k: i64,
) -> Result<Option<Factorization>> {
    let [n1, n2, n3] = require_dim3(monoid)?;
    if z.dimension() != 3 {
        return Err(Error::DimensionMismatch { left: z.dimension(), right: 3 });
    }
    let overflow = || Error::Overflow("dimension-three step");
    let num = l
        .checked_mul(n1)
        .and_then(|x| k.checked_mul(n3 - n1).and_then(|y| x.checked_sub(y)))
        .ok_or_else(overflow)?;
    let Some(q) = exact_div(num, n2 - n1) else {
        return Ok(None);
    };
    let c = z.coeffs();
    let (b, cc, d) = (c[0] as i128, c[1] as i128, c[2] as i128);
    let (q, k, l) = (q as i128, k as i128, l as i128);
    let out = [b - q - k - l, cc + q, d + k];
    if out.iter().any(|&x| x < 0 || x > u64::MAX as i128) {
        return Ok(None);
    }
    Ok(Some(Factorization::from_coeffs(out.iter().map(|&x| x as u64).collect())))
}

/// (n₃ − n₁)/gcd(n₃ − n₁, n₂ − n₁).
pub fn dim3_equivalent_closed(monoid: &NumericalMonoid) -> Result<u64> {
    require_dim3(monoid)?;
    Ok(crate::catenary::dim3_equivalent_value(monoid.generators()))
}

/// The exact set-level report for c_eq(M).
pub fn dim3_equivalent_report(monoid: &NumericalMonoid) -> Result<InvariantReport> {
    Ok(InvariantReport::exact(
        dim3_equivalent_closed(monoid)?,
        crate::catenary::Method::ClosedForm,
    ))
}

/// c_eq(M) when m − n₂·c_eq(M) is in M, else 0.
pub fn dim3_equivalent_classify(monoid: &NumericalMonoid, m: u64) -> Result<u64> {
    let ceq = dim3_equivalent_closed(monoid)?;
    monoid.require_element(m)?;
    let shift = monoid.generators()[1]
        .checked_mul(ceq)
        .ok_or(Error::Overflow("classification shift"))?;
    let x = NumericalMonoid::signed(m)? - NumericalMonoid::signed(shift)?;
    Ok(if monoid.contains(x) { ceq } else { 0 })
}

/// n₂·c_eq(M) + ℱ(M): past this, c_eq(m) = c_eq(M).
pub fn dissonance(monoid: &NumericalMonoid) -> Result<u64> {
    let ceq = dim3_equivalent_closed(monoid)?;
    let base = monoid.generators()[1]
        .checked_mul(ceq)
        .ok_or(Error::Overflow("dissonance"))?;
    Ok(base.saturating_add_signed(monoid.frobenius()))
}

/// The minimal same-length step ((n₃−n₂)/g, −(n₃−n₁)/g, (n₂−n₁)/g).
pub fn dim3_same_length_step(monoid: &NumericalMonoid) -> Result<[i64; 3]> {
    let [n1, n2, n3] = require_dim3(monoid)?;
    let g = crate::arith::gcd_i64(n3 - n1, n2 - n1);
    Ok([(n3 - n2) / g, -(n3 - n1) / g, (n2 - n1) / g])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catenary::equivalent;
    use crate::factorization::enumerate;

    fn m(g: &[u64]) -> NumericalMonoid {
        NumericalMonoid::new(g).unwrap()
    }

    fn fz(c: &[u64]) -> Factorization {
        Factorization::from_coeffs(c.to_vec())
    }

    #[test]
    fn step_example() {
        let mon = m(&[4, 9, 19]);
        let z = fz(&[15, 5, 0]);
        assert_eq!(dim3_length_step(&mon, &z, 0, 1).unwrap(), Some(fz(&[17, 2, 1])));
        assert_eq!(dim3_length_step(&mon, &z, 0, 0).unwrap(), Some(z.clone()));
        assert_eq!(dim3_length_step(&mon, &z, 0, 2).unwrap(), None);
        // (24,1,0) at length 25 down to (15,5,0) at length 20.
        assert_eq!(dim3_length_step(&mon, &fz(&[24, 1, 0]), 5, 0).unwrap(), Some(z));
        assert_eq!(
            dim3_length_step(&m(&[4, 9]), &fz(&[1, 1]), 0, 0).unwrap_err(),
            Error::NotDimension3(2)
        );
    }

    #[test]
    fn step_completeness() {
        let mon = m(&[4, 9, 19]);
        for e in 0..=300u64 {
            if !mon.contains(e as i64) {
                continue;
            }
            let fs = enumerate(&mon, e).unwrap();
            for z in fs.factorizations() {
                for w in fs.factorizations() {
                    let l = z.len() as i64 - w.len() as i64;
                    let k = w.coeffs()[2] as i64 - z.coeffs()[2] as i64;
                    assert_eq!(dim3_length_step(&mon, z, l, k).unwrap().as_ref(), Some(w));
                }
            }
        }
    }

    #[test]
    fn closed_forms() {
        assert_eq!(dim3_equivalent_closed(&m(&[4, 9, 19])).unwrap(), 3);
        assert_eq!(dim3_equivalent_closed(&m(&[3, 7, 8])).unwrap(), 5);
        assert_eq!(dim3_same_length_step(&m(&[4, 9, 19])).unwrap(), [2, -3, 1]);
        let kept = NumericalMonoid::with_generators(&[4, 9, 18]).unwrap();
        assert_eq!(dim3_equivalent_closed(&kept).unwrap(), 14);
    }

    #[test]
    fn classification_matches_direct() {
        for gens in [[4u64, 9, 19], [3, 7, 8], [5, 6, 19], [6, 8, 17]] {
            let mon = m(&gens);
            let top = dissonance(&mon).unwrap() + 50;
            for e in 0..=top {
                if mon.contains(e as i64) {
                    assert_eq!(
                        dim3_equivalent_classify(&mon, e).unwrap(),
                        equivalent(&mon, e).unwrap(),
                        "{gens:?} m={e}"
                    );
                }
            }
        }
        let mon = m(&[4, 9, 19]);
        assert_eq!(dim3_equivalent_classify(&mon, 27).unwrap(), 3);
        assert!(dim3_equivalent_classify(&mon, 5).is_err());
    }
}
