//! Irreducibility of monic integer polynomials modulo small primes (Rabin's test).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::poly::IntPoly;

type Fp = Vec<u64>;

fn trim(v: &mut Fp) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn reduce_coeffs(f: &IntPoly, p: u64) -> Fp {
    let bp = BigInt::from(p);
    let mut v: Fp = f
        .coeffs()
        .iter()
        .map(|c| c.mod_floor(&bp).to_u64().expect("residue fits"))
        .collect();
    trim(&mut v);
    v
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn rem(a: &Fp, m: &Fp, p: u64) -> Fp {
    let mut r = a.clone();
    let dm = m.len() - 1;
    let inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let dr = r.len() - 1;
        let f = r[dr] * inv % p;
        if f != 0 {
            for (i, c) in m.iter().enumerate() {
                let idx = dr - dm + i;
                r[idx] = (r[idx] + p - f * c % p) % p;
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn mulmod(a: &Fp, b: &Fp, m: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    rem(&out, m, p)
}

fn powmod(base: &Fp, mut e: u64, m: &Fp, p: u64) -> Fp {
    let mut r: Fp = vec![1];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(&r, &b, m, p);
        }
        b = mulmod(&b, &b, m, p);
        e >>= 1;
    }
    r
}

fn gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn sub_x(a: &Fp, p: u64) -> Fp {
    let mut v = a.clone();
    if v.len() < 2 {
        v.resize(2, 0);
    }
    v[1] = (v[1] + p - 1) % p;
    trim(&mut v);
    v
}

/// `x^(p^k) mod m`.
fn frobenius_power(k: usize, m: &Fp, p: u64) -> Fp {
    let mut h: Fp = vec![0, 1];
    for _ in 0..k {
        h = powmod(&h, p, m, p);
    }
    h
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Whether monic `f` is irreducible over `F_p`.
pub fn irreducible_mod(f: &IntPoly, p: u64) -> bool {
    assert!(f.is_monic());
    let n = f.degree();
    let m = reduce_coeffs(f, p);
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if sub_x(&frobenius_power(n, &m, p), p) != Vec::<u64>::new() {
        return false;
    }
    prime_factors(n).into_iter().all(|q| {
        let h = sub_x(&frobenius_power(n / q, &m, p), p);
        gcd(&m, &h, p).len() == 1
    })
}

pub fn small_primes(limit: u64) -> Vec<u64> {
    (2..limit).filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0)).collect()
}

/// First prime `p < 1000` modulo which `f` stays irreducible.
pub fn irreducibility_certificate(f: &IntPoly) -> Option<u64> {
    small_primes(1000).into_iter().find(|&p| irreducible_mod(f, p))
}
