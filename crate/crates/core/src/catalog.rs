//! Named generating functions and Riordan arrays, Eulerian polynomials,
//! closed forms for iterated `der` of the Pascal array, and the INVERT
//! transform.

use num::{BigInt, One, Zero};

use crate::error::{Error, Result};
use crate::riordan::RiordanArray;
use crate::series::{rat, rat_big, Rat, Seq, Series};

pub const GF_NAMES: &[&str] = &["fibonacci", "catalan", "catalan_shifted", "motzkin", "riordan_numbers"];

pub const ARRAY_NAMES: &[&str] = &[
    "T", "Fib", "Jac", "Pas", "PasInv", "Cat", "CatInv", "Sha", "ShaInv", "S1", "NegFib", "TwoFib", "CatFib",
    "MotzApp",
];

/// `sqrt(1 - c1 t - c2 t^2)` at the given order.
fn sqrt_quadratic(c1: i64, c2: i64, order: usize) -> Result<Series> {
    Series::from_ints(order, &[1, -c1, -c2]).sqrt1()
}

/// `C(t) = (1 - sqrt(1 - 4t)) / (2t)`, built at one extra order so that the
/// division by `t` leaves every coefficient exact.
fn catalan_closed(order: usize) -> Result<Series> {
    let m = order + 1;
    let root = sqrt_quadratic(4, 0, m)?;
    let num = Series::one(m).sub(&root)?.shift(-1)?;
    Ok(num.scale(&crate::series::ratio(1, 2)).truncate(order))
}

/// `C_{n+1} = sum_i C_i C_{n-i}`
fn catalan_convolution(order: usize) -> Series {
    let mut c: Vec<Rat> = vec![Rat::one()];
    for n in 0..order {
        let next = (0..=n).map(|i| &c[i] * &c[n - i]).sum();
        c.push(next);
    }
    Series::new(order, c)
}

/// The Catalan series, built from the closed form and from the convolution
/// recurrence, and checked against `t C^2 - C + 1 = 0`.
pub fn catalan(order: usize) -> Result<Series> {
    let closed = catalan_closed(order)?;
    let conv = catalan_convolution(order);
    if closed != conv {
        return Err(Error::CrossCheck("Catalan closed form and recurrence disagree".into()));
    }
    let quad = closed.mul(&closed)?.shift(1)?.sub(&closed)?.add(&Series::one(order))?;
    if !quad.is_zero() {
        return Err(Error::CrossCheck("Catalan series fails t C^2 - C + 1 = 0".into()));
    }
    Ok(closed)
}

/// `F(t) = 1 / (1 - t - t^2)`
pub fn fibonacci(order: usize) -> Series {
    Series::from_ints(order, &[1, -1, -1]).reciprocal().expect("constant term is 1")
}

/// `(C(t) - 1) / t`, the Catalan numbers without the leading one.
pub fn catalan_shifted(order: usize) -> Result<Series> {
    let c = catalan(order + 1)?;
    Ok(c.sub(&Series::one(order + 1))?.shift(-1)?.truncate(order))
}

/// `M(t) = (1 - t - sqrt(1 - 2t - 3t^2)) / (2 t^2)`
pub fn motzkin(order: usize) -> Result<Series> {
    let m = order + 2;
    let root = sqrt_quadratic(2, 3, m)?;
    let num = Series::from_ints(m, &[1, -1]).sub(&root)?.shift(-2)?;
    Ok(num.scale(&crate::series::ratio(1, 2)).truncate(order))
}

/// `(1 + t - sqrt(1 - 2t - 3t^2)) / (2t (1 + t))`
pub fn riordan_numbers(order: usize) -> Result<Series> {
    let m = order + 1;
    let root = sqrt_quadratic(2, 3, m)?;
    let num = Series::from_ints(m, &[1, 1]).sub(&root)?.shift(-1)?;
    let den = Series::from_ints(m, &[2, 2]);
    Ok(num.div(&den)?.truncate(order))
}

/// Looks up a generating function by name (case-insensitive).
pub fn gf(name: &str, order: usize) -> Result<Series> {
    match name.to_ascii_lowercase().as_str() {
        "fibonacci" => Ok(fibonacci(order)),
        "catalan" => catalan(order),
        "catalan_shifted" => catalan_shifted(order),
        "motzkin" => motzkin(order),
        "riordan_numbers" => riordan_numbers(order),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

fn poly(order: usize, c: &[i64]) -> Series {
    Series::from_ints(order, c)
}

fn frac(num: Series, den: Series) -> Result<Series> {
    num.div(&den)
}

/// Looks up a named Riordan array (case-insensitive).
pub fn array(name: &str, order: usize) -> Result<RiordanArray> {
    let n = order;
    let t = Series::t(n);
    let (d, h) = match name.to_ascii_lowercase().as_str() {
        "t" => (poly(n, &[1, 1]), t),
        "fib" => (Series::one(n), poly(n, &[0, 1, 1])),
        "jac" => (Series::one(n), poly(n, &[0, 1, 2])),
        "pas" => {
            let d = poly(n, &[1, -1]).reciprocal()?;
            (d.clone(), d.shift(1)?)
        }
        "pasinv" => {
            let d = poly(n, &[1, 1]).reciprocal()?;
            (d.clone(), d.shift(1)?)
        }
        "cat" => {
            let c = catalan(n)?;
            (c.clone(), c.shift(1)?)
        }
        "catinv" => (poly(n, &[1, -1]), poly(n, &[0, 1, -1])),
        "sha" => {
            let c = catalan(n)?;
            (c.clone(), c.mul(&c)?.shift(1)?)
        }
        "shainv" => {
            let d = poly(n, &[1, 1]).reciprocal()?;
            (d.clone(), d.mul(&d)?.shift(1)?)
        }
        "s1" => (poly(n, &[1, -2]).reciprocal()?, frac(t, poly(n, &[1, -1]))?),
        "negfib" => {
            let g = poly(n, &[1, 0, -1]).reciprocal()?;
            (g.neg(), g.shift(1)?)
        }
        "twofib" => {
            let g = poly(n, &[1, 0, -1]).reciprocal()?;
            (g.mul(&g)?.scale(&rat(2)), g.shift(1)?)
        }
        "catfib" => (catalan_shifted(n)?.mul(&poly(n, &[1, -1, -1]))?, t),
        "motzapp" => (motzkin(n)?.shift(1)?.add(&Series::one(n))?, t),
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    RiordanArray::new(d, h)
}

/// Eulerian polynomial `A_i(t) = sum over permutations of t^des`, with
/// `A_0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerianPoly {
    pub index: usize,
    pub coeffs: Vec<BigInt>,
}

impl EulerianPoly {
    /// `A_i(c t)` as a series; `c = -1` gives `A_i(-t)`.
    pub fn to_series(&self, c: i64, order: usize) -> Series {
        let mut p = BigInt::one();
        let mut v = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            v.push(rat_big(a * &p));
            p *= c;
        }
        Series::new(order, v)
    }
}

/// Builds `A_i` from `A_{n+1} = (1 + n t) A_n + t (1 - t) A_n'`.
pub fn eulerian(i: usize) -> EulerianPoly {
    let mut a: Vec<BigInt> = vec![BigInt::one()];
    for n in 0..i {
        let mut next = vec![BigInt::zero(); a.len() + 1];
        for (j, c) in a.iter().enumerate() {
            // (1 + n t) A_n
            next[j] += c;
            next[j + 1] += c * BigInt::from(n);
            // t (1 - t) A_n', where A_n' has c j t^{j-1}
            if j > 0 {
                let dj = c * BigInt::from(j);
                next[j] += &dj;
                next[j + 1] -= dj;
            }
        }
        while next.len() > 1 && next.last().is_some_and(Zero::is_zero) {
            next.pop();
        }
        a = next;
    }
    EulerianPoly { index: i, coeffs: a }
}

/// `sum_k k^i t^k = t A_i(t) / (1 - t)^{i+1}`
pub fn power_sum_gf(i: usize, order: usize) -> Result<Series> {
    let a = eulerian(i).to_series(1, order).shift(1)?;
    a.div(&poly(order, &[1, -1]).pow(i as i64 + 1)?)
}

/// `A_j(c t) / (1 - c t)^e`
fn eulerian_ratio(j: usize, c: i64, e: i64, order: usize) -> Result<Series> {
    eulerian(j).to_series(c, order).div(&poly(order, &[1, -c]).pow(e)?)
}

fn der_closed(k: usize, c: i64, order: usize) -> Result<RiordanArray> {
    let i = k / 2;
    let h = eulerian_ratio(i, c, i as i64 + 1, order)?.shift(1)?;
    let d = if k.is_multiple_of(2) {
        eulerian_ratio(i, c, i as i64 + 1, order)?
    } else {
        eulerian_ratio(i + 1, c, i as i64 + 2, order)?
    };
    RiordanArray::new(d, h)
}

/// `der^k` of the Pascal array in Eulerian closed form.
pub fn der_pas_closed(k: usize, order: usize) -> Result<RiordanArray> {
    der_closed(k, 1, order)
}

/// `der^k` of the inverse Pascal array, with `A_i(-t) / (1 + t)^{i+1}`.
pub fn der_pasinv_closed(k: usize, order: usize) -> Result<RiordanArray> {
    der_closed(k, -1, order)
}

/// INVERT transform: `1 + sum b_n t^n = 1 / (1 - sum a_n t^n)` with both
/// sequences indexed from 1. Returns as many terms as `a` has.
pub fn invert_transform(a: &Seq) -> Result<Seq> {
    let len = a.len();
    let mut coeffs = vec![Rat::one()];
    coeffs.extend((1..=len).map(|n| -a.term(n as i64)));
    let inv = Series::new(len, coeffs).reciprocal()?;
    Ok(Seq::with_offset(inv.coeffs()[1..].to_vec(), 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::gen_binomial;

    const N: usize = 14;

    fn ints(s: &Series, len: usize) -> Vec<i64> {
        s.coeffs()[..len].iter().map(|c| c.to_integer().try_into().unwrap()).collect()
    }

    #[test]
    fn named_gfs() {
        assert_eq!(ints(&gf("catalan", N).unwrap(), 6), [1, 1, 2, 5, 14, 42]);
        assert_eq!(ints(&gf("Motzkin", N).unwrap(), 6), [1, 1, 2, 4, 9, 21]);
        assert_eq!(ints(&gf("riordan_numbers", N).unwrap(), 7), [1, 0, 1, 1, 3, 6, 15]);
        assert_eq!(ints(&gf("catalan_shifted", N).unwrap(), 4), [1, 2, 5, 14]);
        assert_eq!(ints(&gf("fibonacci", N).unwrap(), 7), [1, 1, 2, 3, 5, 8, 13]);
        for name in GF_NAMES {
            assert!(gf(name, N).unwrap().is_exact());
        }
        assert!(matches!(gf("lucas", N), Err(Error::UnknownName(_))));
    }

    #[test]
    fn named_arrays_are_exact() {
        for name in ARRAY_NAMES {
            let a = array(name, N).unwrap();
            assert_eq!(a.valid_rows(), N + 1, "{name}");
        }
        assert!(array("nope", N).is_err());
    }

    #[test]
    fn catalan_and_shapiro_entries() {
        let cat = array("cat", N).unwrap();
        let sha = array("sha", N).unwrap();
        for n in 0..=N {
            for k in 0..=n {
                let b = gen_binomial(&rat((2 * n - k) as i64), n - k);
                assert_eq!(cat.entry(n, k).unwrap(), b * rat(k as i64 + 1) / rat(n as i64 + 1));
                let b = gen_binomial(&rat((2 * n) as i64), n - k);
                assert_eq!(sha.entry(n, k).unwrap(), b * rat(2 * k as i64 + 1) / rat((n + k + 1) as i64));
            }
        }
        assert_eq!(sha.entry(4, 2).unwrap(), rat(20));
    }

    #[test]
    fn inverses_match_catalog() {
        for (a, b) in [("pas", "pasinv"), ("cat", "catinv"), ("sha", "shainv")] {
            let x = array(a, N).unwrap();
            assert_eq!(x.inverse().unwrap(), array(b, N).unwrap());
        }
    }

    #[test]
    fn eulerian_polys() {
        let e = |i| eulerian(i).coeffs.iter().map(|c| c.try_into().unwrap()).collect::<Vec<i64>>();
        assert_eq!(e(0), [1]);
        assert_eq!(e(1), [1]);
        assert_eq!(e(2), [1, 1]);
        assert_eq!(e(3), [1, 4, 1]);
        assert_eq!(e(4), [1, 11, 11, 1]);
        let mut fact = BigInt::one();
        for i in 1..12 {
            fact *= i;
            let sum: BigInt = eulerian(i).coeffs.iter().sum();
            assert_eq!(sum, fact);
        }
    }

    #[test]
    fn power_sums() {
        for i in 0..5u32 {
            let s = power_sum_gf(i as usize, N).unwrap();
            for k in 1..=N {
                assert_eq!(s.coeff(k), rat((k as i64).pow(i)));
            }
        }
        assert_eq!(power_sum_gf(3, N).unwrap().coeff(4), rat(64));
    }

    #[test]
    fn der_pas_closed_small() {
        assert_eq!(der_pas_closed(0, N).unwrap(), array("pas", N).unwrap());
        let d2 = der_pas_closed(2, N).unwrap();
        for n in 0..=N {
            for k in 0..=n {
                assert_eq!(d2.entry(n, k).unwrap(), gen_binomial(&rat((n + k + 1) as i64), n - k));
            }
        }
        let want = poly(N, &[1, 1]).div(&poly(N, &[1, -4, 2, -1])).unwrap();
        assert_eq!(der_pas_closed(4, N).unwrap().row_sum_gf().unwrap(), want);
        assert_eq!(der_pasinv_closed(0, N).unwrap(), array("pasinv", N).unwrap());
    }

    #[test]
    fn invert() {
        let ones = Seq::with_offset(vec![rat(1); 6], 1);
        let b = invert_transform(&ones).unwrap();
        assert_eq!(b.terms, [1, 2, 4, 8, 16, 32].map(rat));
        assert_eq!(b.offset, 1);
        let nat = Seq::with_offset((1..=6).map(rat).collect(), 1);
        assert_eq!(invert_transform(&nat).unwrap().terms, [1, 3, 8, 21, 55, 144].map(rat));
    }
}
