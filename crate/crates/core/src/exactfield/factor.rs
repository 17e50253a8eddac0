//! Integer factorization support for the rational-root search: trial
//! division for small factors, Pollard's rho (Brent variant) for the rest.

use super::value::{is_prime_u64, mul_mod};
use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

/// All positive divisors of |n|, ascending. Requires n nonzero.
pub(crate) fn divisors(n: &BigInt) -> Vec<BigInt> {
    assert!(!n.is_zero(), "divisors of zero requested");
    let factors = factorize(n.abs());
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        let mut pk = BigInt::one();
        for _ in 0..=e {
            for d in &divs {
                next.push(d * &pk);
            }
            pk *= &p;
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Prime factorization of a positive integer as (prime, exponent) pairs.
fn factorize(mut n: BigInt) -> Vec<(BigInt, u32)> {
    assert!(n.is_positive());
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let push = |p: BigInt, e: u32, out: &mut Vec<(BigInt, u32)>| {
        if let Some(last) = out.iter_mut().find(|(q, _)| *q == p) {
            last.1 += e;
        } else {
            out.push((p, e));
        }
    };

    // Trial division by 2 and small odd numbers.
    let strip = |d: u64, n: &mut BigInt, out: &mut Vec<(BigInt, u32)>| {
        let big = BigInt::from(d);
        let mut e = 0u32;
        while (&*n % &big).is_zero() {
            *n /= &big;
            e += 1;
        }
        if e > 0 {
            push(big, e, out);
        }
    };
    strip(2, &mut n, &mut out);
    let mut d = 3u64;
    while d < 100_000 && BigInt::from(d) * BigInt::from(d) <= n {
        strip(d, &mut n, &mut out);
        d += 2;
    }

    // Whatever remains is either 1, prime, or a product of primes all
    // exceeding the trial bound; split it recursively with Pollard rho.
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if let Ok(small) = u64::try_from(&m) {
            for (p, e) in factorize_u64(small) {
                push(BigInt::from(p), e, &mut out);
            }
            continue;
        }
        if is_probable_prime(&m) {
            push(m, 1, &mut out);
            continue;
        }
        let f = pollard_rho_big(&m);
        stack.push(&m / &f);
        stack.push(f);
    }
    out.sort();
    out
}

fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, out: &mut Vec<(u64, u32)>| {
        if let Some(last) = out.iter_mut().find(|(q, _)| *q == p) {
            last.1 += 1;
        } else {
            out.push((p, 1));
        }
    };
    let mut stack = vec![n];
    // Quick strip of tiny factors keeps rho off easy cases.
    n = stack.pop().unwrap();
    for d in [2u64, 3, 5, 7, 11, 13] {
        while n % d == 0 {
            push(d, &mut out);
            n /= d;
        }
    }
    if n > 1 {
        stack.push(n);
    }
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            push(m, &mut out);
            continue;
        }
        let f = pollard_rho_u64(m);
        stack.push(f);
        stack.push(m / f);
    }
    out.sort();
    out
}

/// Brent-style Pollard rho for composite odd u64 (no small factors).
fn pollard_rho_u64(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Miller-Rabin on BigInt with fixed witnesses: deterministic well past
/// 10^24, overwhelmingly reliable beyond.
fn is_probable_prime(n: &BigInt) -> bool {
    if let Ok(small) = u64::try_from(n) {
        return is_prime_u64(small);
    }
    let one = BigInt::one();
    let two = BigInt::from(2);
    if (n % &two).is_zero() {
        return false;
    }
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while (&d % &two).is_zero() {
        d /= &two;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = BigInt::from(a);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho_big(n: &BigInt) -> BigInt {
    let one = BigInt::one();
    let two = BigInt::from(2);
    if (n % &two).is_zero() {
        return two;
    }
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut x = BigInt::from(2);
        let mut y = BigInt::from(2);
        let mut d = BigInt::one();
        while d == one {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
        }
        if &d != n {
            return d;
        }
        c += 1;
    }
}

/// Greatest n with n*n <= v, as a pure-integer check helper.
#[allow(dead_code)]
fn exact_sqrt(v: &BigInt) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    let r = v.sqrt();
    if &(&r * &r) == v {
        Some(r)
    } else {
        None
    }
}
