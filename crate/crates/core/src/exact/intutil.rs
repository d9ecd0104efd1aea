//! Integer helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Exponent of 2 in `m`. `m` must be nonzero.
pub fn v2(m: &BigInt) -> u64 {
    assert!(!m.is_zero(), "v2 of zero");
    m.trailing_zeros().unwrap_or(0)
}

pub fn v2_u64(m: u64) -> u32 {
    assert!(m != 0, "v2 of zero");
    m.trailing_zeros()
}

/// True when no square of a prime divides `m` (trial division to sqrt m).
pub fn squarefree(m: u64) -> bool {
    assert!(m >= 1);
    !divisible_by_square(m, 2)
}

/// True when no square of an odd prime divides `m`.
pub fn odd_square_free(m: u64) -> bool {
    assert!(m >= 1);
    !divisible_by_square(m >> m.trailing_zeros(), 3)
}

fn divisible_by_square(mut m: u64, first: u64) -> bool {
    let mut p = first;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return true;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    false
}

/// Integer square root of `m` when `m` is a perfect square.
pub fn exact_sqrt(m: &BigInt) -> Option<BigInt> {
    if m.is_negative() {
        return None;
    }
    let r = m.sqrt();
    if &r * &r == *m {
        Some(r)
    } else {
        None
    }
}

pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Positive divisors of `|m|`, ascending; `m` must be nonzero and small.
pub fn divisors(m: &BigInt) -> Vec<BigInt> {
    let m = m.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::from(1);
    while &d * &d <= m {
        if (&m % &d).is_zero() {
            let q = &m / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_adic_valuation() {
        assert_eq!(v2(&BigInt::from(20)), 2);
        assert_eq!(v2(&BigInt::from(7)), 0);
        assert_eq!(v2(&BigInt::from(-64)), 6);
        assert_eq!(v2_u64(48), 4);
    }

    #[test]
    fn square_tests() {
        assert!(squarefree(30));
        assert!(!squarefree(12));
        assert!(squarefree(1));
        assert!(odd_square_free(32));
        assert!(!odd_square_free(25 * 4));
        assert!(!odd_square_free(500));
        assert!(odd_square_free(20));
    }

    #[test]
    fn sqrt_and_divisors() {
        assert_eq!(exact_sqrt(&BigInt::from(4)), Some(BigInt::from(2)));
        assert_eq!(exact_sqrt(&BigInt::from(5)), None);
        assert_eq!(exact_sqrt(&BigInt::from(0)), Some(BigInt::from(0)));
        let ds: Vec<i64> = divisors(&BigInt::from(-12))
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect();
        assert_eq!(ds, vec![1, 2, 3, 4, 6, 12]);
    }
}
