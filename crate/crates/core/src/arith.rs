//! Small integer helpers shared across modules.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_all(values: &[u64]) -> u64 {
    values.iter().fold(0, |g, &v| gcd(g, v))
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    gcd(a.unsigned_abs(), b.unsigned_abs()) as i64
}

/// Ceiling division for positive divisors.
pub fn ceil_div(a: u64, b: u64) -> u64 {
    a / b + u64::from(!a.is_multiple_of(b))
}

/// Exact quotient if `num` is divisible by `den`.
pub fn exact_div(num: i64, den: i64) -> Option<i64> {
    if den == 0 || num % den != 0 {
        None
    } else {
        Some(num / den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_basics() {
        assert_eq!(gcd(14, 5), 1);
        assert_eq!(gcd(15, 5), 5);
        assert_eq!(gcd(0, 7), 7);
        assert_eq!(gcd_all(&[6, 10, 15]), 1);
        assert_eq!(gcd_all(&[4, 8, 12]), 4);
        assert_eq!(gcd_i64(-6, 4), 2);
    }

    #[test]
    fn ceil_and_exact() {
        assert_eq!(ceil_div(11, 4), 3);
        assert_eq!(ceil_div(12, 4), 3);
        assert_eq!(exact_div(-15, 5), Some(-3));
        assert_eq!(exact_div(7, 5), None);
        assert_eq!(exact_div(7, 0), None);
    }
}
