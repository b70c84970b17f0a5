use alloc::vec::Vec;

use num_bigint::BigInt;

use super::Rational;
use crate::{Error, Result};

/// `n!!` for odd `n ≥ -1`, with `(-1)!! = 1`.
pub fn double_factorial(n: i64) -> Result<Rational> {
    if n < -1 || n % 2 == 0 {
        return Err(Error::InvalidIndex {
            what: "double factorial",
            index: n,
        });
    }
    let mut acc = BigInt::from(1);
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    Ok(Rational::from_bigint(acc))
}

/// `n!` as an exact rational.
pub fn factorial(n: u64) -> Rational {
    let mut acc = BigInt::from(1);
    for k in 2..=n {
        acc *= k;
    }
    Rational::from_bigint(acc)
}

/// Binomial coefficient `C(n, k)` for a rational top entry.
pub fn binomial(n: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * (n - Rational::from_int(i as i64)) / Rational::from_int(i as i64 + 1);
    }
    acc
}

/// Extends a table of a sequence by repeated application of `next`, which
/// sees all earlier entries.
fn extend_to(table: &mut Vec<Rational>, n: usize, next: fn(&[Rational]) -> Rational) {
    while table.len() <= n {
        let v = next(table);
        table.push(v);
    }
}

// B_n from Σ_{k≤n} C(n+1, k) B_k = 0, which is the z/(e^z − 1) convention (B_1 = −1/2).
fn next_bernoulli(prev: &[Rational]) -> Rational {
    let n = prev.len() as i64;
    if n == 0 {
        return Rational::one();
    }
    let top = Rational::from_int(n + 1);
    let mut acc = Rational::zero();
    for (k, b) in prev.iter().enumerate() {
        if !b.is_zero() {
            acc += binomial(&top, k as u32) * b;
        }
    }
    -acc / top
}

// Secant numbers: Σ_{k even ≤ n} C(n, k) E_k = 0 for even n > 0, odd entries vanish.
fn next_euler(prev: &[Rational]) -> Rational {
    let n = prev.len() as i64;
    if n == 0 {
        return Rational::one();
    }
    if n % 2 == 1 {
        return Rational::zero();
    }
    let top = Rational::from_int(n);
    let mut acc = Rational::zero();
    for (k, e) in prev.iter().enumerate() {
        if !e.is_zero() {
            acc += binomial(&top, k as u32) * e;
        }
    }
    -acc
}

#[cfg(feature = "std")]
mod memo {
    use super::*;
    use std::sync::RwLock;

    static BERNOULLI: RwLock<Vec<Rational>> = RwLock::new(Vec::new());
    static EULER: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

    fn lookup(
        lock: &RwLock<Vec<Rational>>,
        n: usize,
        next: fn(&[Rational]) -> Rational,
    ) -> Rational {
        if let Some(v) = lock.read().unwrap_or_else(|e| e.into_inner()).get(n) {
            return v.clone();
        }
        let mut table = lock.write().unwrap_or_else(|e| e.into_inner());
        extend_to(&mut table, n, next);
        table[n].clone()
    }

    pub fn bernoulli(n: usize) -> Rational {
        lookup(&BERNOULLI, n, next_bernoulli)
    }

    pub fn euler(n: usize) -> Rational {
        lookup(&EULER, n, next_euler)
    }
}

#[cfg(not(feature = "std"))]
mod memo {
    use super::*;

    pub fn bernoulli(n: usize) -> Rational {
        let mut t = Vec::new();
        extend_to(&mut t, n, next_bernoulli);
        t.swap_remove(n)
    }

    pub fn euler(n: usize) -> Rational {
        let mut t = Vec::new();
        extend_to(&mut t, n, next_euler);
        t.swap_remove(n)
    }
}

/// Bernoulli number `B_k` from `z/(e^z − 1)`.
pub fn bernoulli_number(k: u32) -> Rational {
    memo::bernoulli(k as usize)
}

/// Secant Euler number `E_k`, from `2/(e^z + e^{−z}) = Σ E_k z^k/k!`.
///
/// Odd indices return 0.
pub fn euler_number(k: i64) -> Result<Rational> {
    if k < 0 {
        return Err(Error::InvalidIndex {
            what: "Euler number",
            index: k,
        });
    }
    Ok(memo::euler(k as usize))
}

/// `B_k(1/2) = (2^{1−k} − 1) B_k`.
pub fn bernoulli_at_half(k: u32) -> Rational {
    let factor = Rational::new(2, 1).pow(1 - k as i32) - Rational::one();
    factor * bernoulli_number(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(-1).unwrap(), r(1, 1));
        assert_eq!(double_factorial(1).unwrap(), r(1, 1));
        assert_eq!(double_factorial(5).unwrap(), r(15, 1));
        assert_eq!(double_factorial(9).unwrap(), r(945, 1));
        assert!(double_factorial(4).is_err());
        assert!(double_factorial(-3).is_err());
    }

    #[test]
    fn euler_values() {
        assert_eq!(euler_number(0).unwrap(), r(1, 1));
        assert_eq!(euler_number(2).unwrap(), r(-1, 1));
        assert_eq!(euler_number(4).unwrap(), r(5, 1));
        assert_eq!(euler_number(6).unwrap(), r(-61, 1));
        assert_eq!(euler_number(5).unwrap(), Rational::zero());
        assert!(euler_number(-2).is_err());
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli_number(1), r(-1, 2));
        assert_eq!(bernoulli_at_half(0), r(1, 1));
        assert_eq!(bernoulli_at_half(1), Rational::zero());
        assert_eq!(bernoulli_at_half(2), r(-1, 12));
        assert_eq!(bernoulli_at_half(4), r(7, 240));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(&r(5, 1), 2), r(10, 1));
        assert_eq!(binomial(&r(1, 3), 2), r(-1, 9));
        assert_eq!(binomial(&r(-1, 1), 3), r(-1, 1));
    }
}
