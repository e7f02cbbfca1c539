//! Integer sequences computed directly from recurrences and binomials, with
//! no power series involved. The identity checkers use these as one side of
//! each comparison.

use num::{BigInt, Integer, One, Zero};

/// `binom(n, k)`, zero outside `0 <= k <= n`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn pow_i(base: i64, e: u64) -> BigInt {
    num::pow(BigInt::from(base), e as usize)
}

/// Standard Fibonacci numbers `f_0 = 0, f_1 = 1`, extended backwards by
/// `f_{n} = f_{n+2} - f_{n+1}`.
pub fn fib_std(n: i64) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    if n >= 0 {
        for _ in 0..n {
            let c = &a + &b;
            a = std::mem::replace(&mut b, c);
        }
    } else {
        for _ in 0..(-n) {
            let prev = &b - &a;
            b = std::mem::replace(&mut a, prev);
        }
    }
    a
}

/// Fibonacci numbers shifted so that `F_0 = F_1 = 1`, i.e. `F_n = f_{n+1}`.
/// `F_{-1} = 0`.
pub fn fib(n: i64) -> BigInt {
    fib_std(n + 1)
}

/// Lucas numbers from `L_0 = 2, L_1 = 1`.
pub fn lucas(n: i64) -> BigInt {
    let (mut a, mut b) = (BigInt::from(2), BigInt::one());
    for _ in 0..n {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    a
}

pub fn catalan_number(n: i64) -> BigInt {
    if n < 0 {
        return BigInt::zero();
    }
    binom(2 * n, n) / BigInt::from(n + 1)
}

/// Motzkin numbers from `M_n = M_{n-1} + sum_{k=0}^{n-2} M_k M_{n-2-k}`.
pub fn motzkin_numbers(len: usize) -> Vec<BigInt> {
    let mut m: Vec<BigInt> = Vec::with_capacity(len);
    for n in 0..len {
        if n == 0 {
            m.push(BigInt::one());
            continue;
        }
        let mut v = m[n - 1].clone();
        for k in 0..n.saturating_sub(1) {
            v += &m[k] * &m[n - 2 - k];
        }
        m.push(v);
    }
    m
}

/// Riordan numbers from `(n+1) R_n = (n-1) (2 R_{n-1} + 3 R_{n-2})`.
pub fn riordan_numbers(len: usize) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = Vec::with_capacity(len);
    for n in 0..len {
        let v = match n {
            0 => BigInt::one(),
            1 => BigInt::zero(),
            _ => {
                let num = BigInt::from(n - 1) * (BigInt::from(2) * &r[n - 1] + BigInt::from(3) * &r[n - 2]);
                let (q, rem) = num.div_rem(&BigInt::from(n + 1));
                debug_assert!(rem.is_zero());
                q
            }
        };
        r.push(v);
    }
    r
}

/// `(-1)^n`
pub fn sign(n: i64) -> BigInt {
    if n.abs() % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn small_values() {
        assert_eq!(binom(5, 2), BigInt::from(10));
        assert_eq!(binom(3, 5), BigInt::zero());
        assert_eq!(binom(-1, 0), BigInt::zero());
        assert_eq!(factorial(6), BigInt::from(720));
        let f: Vec<i64> = (-1..8).map(|n| i64::try_from(&fib_std(n)).unwrap()).collect();
        assert_eq!(f, vec![1, 0, 1, 1, 2, 3, 5, 8, 13]);
        assert_eq!(fib(-1), BigInt::zero());
        assert_eq!(fib(0), BigInt::one());
        let l: Vec<i64> = (0..7).map(|n| i64::try_from(&lucas(n)).unwrap()).collect();
        assert_eq!(l, vec![2, 1, 3, 4, 7, 11, 18]);
        let c: Vec<i64> = (0..7).map(|n| i64::try_from(&catalan_number(n)).unwrap()).collect();
        assert_eq!(c, vec![1, 1, 2, 5, 14, 42, 132]);
        assert_eq!(ints(&motzkin_numbers(7)), vec![1, 1, 2, 4, 9, 21, 51]);
        assert_eq!(ints(&riordan_numbers(8)), vec![1, 0, 1, 1, 3, 6, 15, 36]);
    }

    #[test]
    fn motzkin_is_riordan_pair_sum() {
        let m = motzkin_numbers(20);
        let r = riordan_numbers(21);
        for n in 0..20 {
            assert_eq!(m[n], &r[n] + &r[n + 1]);
        }
    }
}
