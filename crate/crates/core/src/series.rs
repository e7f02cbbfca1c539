//! Truncated formal power series with exact rational coefficients.
//!
//! Every [`Series`] carries an explicit truncation order `N` and keeps the
//! coefficients of `t^0 ..= t^N`. Operations that lose information at the top
//! (derivatives, division by `t`) do not shrink the vector; they lower the
//! number of *valid* leading coefficients instead. [`Series::agrees`] compares
//! two series only over the window both of them know reliably.

use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{ArrayDefect, Error, Result};

/// Exact rational coefficient. `num` keeps it in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;

/// Truncation order used when the caller does not pick one.
pub const DEFAULT_ORDER: usize = 32;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_big(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

/// `r (r-1) ... (r-j+1) / j!` for rational `r`.
pub fn gen_binomial(r: &Rat, j: usize) -> Rat {
    let mut acc = Rat::one();
    for i in 0..j {
        acc *= r - rat(i as i64);
        acc /= rat(i as i64 + 1);
    }
    acc
}

fn check_orders(a: &Series, b: &Series) -> Result<()> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch { left: a.order(), right: b.order() });
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct Series {
    coeffs: Vec<Rat>,
    valid: usize,
}

impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for Series {}

impl Series {
    /// Builds a series of the given order from leading coefficients; missing
    /// ones are zero and extra ones are dropped.
    pub fn new(order: usize, coeffs: impl IntoIterator<Item = Rat>) -> Series {
        let mut v: Vec<Rat> = coeffs.into_iter().take(order + 1).collect();
        v.resize(order + 1, Rat::zero());
        Series { coeffs: v, valid: order + 1 }
    }

    pub fn from_ints(order: usize, coeffs: &[i64]) -> Series {
        Series::new(order, coeffs.iter().map(|&c| rat(c)))
    }

    pub fn zero(order: usize) -> Series {
        Series::new(order, std::iter::empty())
    }

    pub fn one(order: usize) -> Series {
        Series::constant(Rat::one(), order)
    }

    pub fn constant(c: Rat, order: usize) -> Series {
        Series::new(order, std::iter::once(c))
    }

    /// The series `t`.
    pub fn t(order: usize) -> Series {
        Series::monomial(Rat::one(), 1, order)
    }

    pub fn monomial(c: Rat, k: usize, order: usize) -> Series {
        let mut s = Series::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// `1 / (1 - c t)`
    pub fn geometric(c: Rat, order: usize) -> Series {
        let mut v = Vec::with_capacity(order + 1);
        let mut p = Rat::one();
        for _ in 0..=order {
            v.push(p.clone());
            p *= &c;
        }
        Series::new(order, v)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `t^i`; zero beyond the order.
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    /// Number of leading coefficients known to be exact.
    pub fn valid_len(&self) -> usize {
        self.valid
    }

    pub fn is_exact(&self) -> bool {
        self.valid == self.coeffs.len()
    }

    /// Caps the reliable window at `len` coefficients.
    pub fn with_valid_len(mut self, len: usize) -> Series {
        self.valid = self.valid.min(len);
        self
    }

    /// Marks every stored coefficient as reliable. Only for callers that know
    /// the tail is exact, e.g. polynomials.
    pub fn assume_exact(mut self) -> Series {
        self.valid = self.coeffs.len();
        self
    }

    /// Drops coefficients above `order`. Never extends.
    pub fn truncate(&self, order: usize) -> Series {
        let order = order.min(self.order());
        Series { coeffs: self.coeffs[..=order].to_vec(), valid: self.valid.min(order + 1) }
    }

    /// Raises the order by zero-padding; the new tail is marked unreliable.
    pub fn extend(&self, order: usize) -> Series {
        let mut s = self.clone();
        if order > s.order() {
            s.coeffs.resize(order + 1, Rat::zero());
        }
        s
    }

    /// True when both series match on their common valid window.
    pub fn agrees(&self, other: &Series) -> bool {
        let n = self.valid.min(other.valid);
        self.agrees_through(other, n)
    }

    /// True when the first `len` coefficients match.
    pub fn agrees_through(&self, other: &Series, len: usize) -> bool {
        (0..len).all(|i| self.coeff(i) == other.coeff(i))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        check_orders(self, other)?;
        Ok(Series {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            valid: self.valid.min(other.valid),
        })
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        check_orders(self, other)?;
        Ok(Series {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
            valid: self.valid.min(other.valid),
        })
    }

    pub fn neg(&self) -> Series {
        Series { coeffs: self.coeffs.iter().map(|c| -c).collect(), valid: self.valid }
    }

    pub fn scale(&self, c: &Rat) -> Series {
        Series { coeffs: self.coeffs.iter().map(|x| x * c).collect(), valid: self.valid }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        check_orders(self, other)?;
        let n = self.order();
        let mut out = vec![Rat::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(Series { coeffs: out, valid: self.valid.min(other.valid) })
    }

    pub fn reciprocal(&self) -> Result<Series> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() || self.valid == 0 {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = a0.recip();
        let n = self.order();
        let mut b: Vec<Rat> = Vec::with_capacity(n + 1);
        b.push(inv0.clone());
        for m in 1..=n {
            let mut s = Rat::zero();
            for i in 1..=m {
                let a = &self.coeffs[i];
                if !a.is_zero() {
                    s += a * &b[m - i];
                }
            }
            b.push(-(s * &inv0));
        }
        Ok(Series { coeffs: b, valid: self.valid })
    }

    pub fn div(&self, other: &Series) -> Result<Series> {
        self.mul(&other.reciprocal()?)
    }

    /// Termwise derivative. The top coefficient is padded with zero and the
    /// valid window shrinks by one.
    pub fn derivative(&self) -> Series {
        let n = self.order();
        let mut v: Vec<Rat> = (1..=n).map(|i| &self.coeffs[i] * rat(i as i64)).collect();
        v.push(Rat::zero());
        Series { coeffs: v, valid: self.valid.saturating_sub(1) }
    }

    /// Multiplies by `t^k` (`k > 0`) or divides by `t^|k|` (`k < 0`).
    pub fn shift(&self, k: i64) -> Result<Series> {
        let n = self.order();
        let m = k.unsigned_abs() as usize;
        if k >= 0 {
            let mut v = vec![Rat::zero(); m.min(n + 1)];
            v.extend(self.coeffs.iter().take((n + 1).saturating_sub(m)).cloned());
            return Ok(Series { coeffs: v, valid: (self.valid + m).min(n + 1) });
        }
        if m > self.valid {
            return Err(Error::PrecisionExhausted { needed: m, available: self.valid });
        }
        if let Some(index) = self.coeffs[..m.min(n + 1)].iter().position(|c| !c.is_zero()) {
            return Err(Error::NotDivisible { k: m, index });
        }
        let mut v: Vec<Rat> = self.coeffs.iter().skip(m).cloned().collect();
        v.resize(n + 1, Rat::zero());
        Ok(Series { coeffs: v, valid: self.valid - m })
    }

    /// `self(g(t))` by Horner evaluation. Requires `g(0) = 0`.
    pub fn compose(&self, g: &Series) -> Result<Series> {
        check_orders(self, g)?;
        if g.valid == 0 || !g.coeffs[0].is_zero() {
            return Err(Error::CompositionConstant);
        }
        let n = self.order();
        let mut acc = Series::zero(n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g)?;
            acc.coeffs[0] += c;
        }
        acc.valid = self.valid.min(g.valid);
        Ok(acc)
    }

    /// Compositional inverse, solved one coefficient at a time from
    /// `hbar(h(t)) = t` using the powers of `h`.
    pub fn comp_inverse(&self) -> Result<Series> {
        let n = self.order();
        if self.valid == 0 || !self.coeffs[0].is_zero() {
            return Err(Error::NotInvertible(ArrayDefect::NonZeroH0));
        }
        if n == 0 {
            return Ok(self.clone());
        }
        if self.valid < 2 || self.coeffs[1].is_zero() {
            return Err(Error::NotInvertible(ArrayDefect::ZeroH1));
        }
        let h1 = self.coeffs[1].clone();
        // powers[k] = h^k for k = 1..n
        let mut powers: Vec<Series> = Vec::with_capacity(n + 1);
        powers.push(Series::one(n));
        for k in 1..=n {
            let next = powers[k - 1].mul(self)?;
            powers.push(next);
        }
        let mut inv = vec![Rat::zero(); n + 1];
        let mut h1_pow = Rat::one();
        for m in 1..=n {
            h1_pow *= &h1;
            let mut rhs = if m == 1 { Rat::one() } else { Rat::zero() };
            for (k, ck) in inv.iter().enumerate().take(m).skip(1) {
                if !ck.is_zero() {
                    rhs -= ck * &powers[k].coeffs[m];
                }
            }
            inv[m] = rhs / &h1_pow;
        }
        Ok(Series { coeffs: inv, valid: self.valid })
    }

    /// Square root of a series with constant term 1, by Newton iteration
    /// `b <- (b + a/b) / 2`; each step doubles the number of correct terms.
    pub fn sqrt1(&self) -> Result<Series> {
        if self.valid == 0 || !self.coeffs[0].is_one() {
            return Err(Error::SqrtConstant);
        }
        let n = self.order();
        let half = ratio(1, 2);
        let mut b = Series::one(n);
        let mut correct = 1usize;
        while correct < n + 1 {
            let q = self.div(&b)?;
            b = b.add(&q)?.scale(&half);
            correct *= 2;
        }
        b.valid = self.valid;
        Ok(b)
    }

    /// Integer power; negative exponents go through the reciprocal.
    pub fn pow(&self, e: i64) -> Result<Series> {
        let base = if e < 0 { self.reciprocal()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Series::one(self.order()).with_valid_len(base.valid);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// The valid coefficients as a sequence starting at index 0.
    pub fn to_seq(&self) -> Seq {
        Seq::new(self.coeffs[..self.valid].to_vec())
    }

    pub fn from_seq(seq: &Seq, order: usize) -> Series {
        let mut v = vec![Rat::zero(); order + 1];
        for (i, x) in seq.terms.iter().enumerate() {
            let idx = seq.offset + i as i64;
            if idx >= 0 && (idx as usize) <= order {
                v[idx as usize] = x.clone();
            }
        }
        Series::new(order, v)
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, first: bool, c: &Rat, k: usize) -> fmt::Result {
    let neg = c.is_negative();
    let mag = c.abs();
    match (first, neg) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    let var = match k {
        0 => String::new(),
        1 => "t".to_string(),
        _ => format!("t^{k}"),
    };
    if k == 0 {
        write!(f, "{mag}")
    } else if mag.is_one() {
        f.write_str(&var)
    } else {
        write!(f, "{mag}*{var}")
    }
}

impl fmt::Display for Series {
    /// `c0 + c1*t - 1/2*t^2 + ...`, with an `O(t^k)` tail when only `k`
    /// coefficients are reliable.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs[..self.valid].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            write_term(f, first, c, k)?;
            first = false;
        }
        if !self.is_exact() {
            if first {
                write!(f, "O(t^{})", self.valid)
            } else {
                write!(f, " + O(t^{})", self.valid)
            }
        } else if first {
            f.write_str("0")
        } else {
            Ok(())
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: usize,
    coeffs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    valid: Option<usize>,
}

impl Serialize for Series {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesRepr {
            order: self.order(),
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
            valid: (!self.is_exact()).then_some(self.valid),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Series {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = SeriesRepr::deserialize(d)?;
        if repr.coeffs.len() != repr.order + 1 {
            return Err(D::Error::custom(format!(
                "expected {} coefficients, found {}",
                repr.order + 1,
                repr.coeffs.len()
            )));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|c| c.trim().parse::<Rat>().map_err(|e| D::Error::custom(format!("{c}: {e}"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let s = Series::new(repr.order, coeffs);
        Ok(match repr.valid {
            Some(v) => s.with_valid_len(v),
            None => s,
        })
    }
}

/// Finite sequence prefix; `terms[i]` is the term with index `offset + i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Seq {
    #[serde(with = "rat_strings")]
    pub terms: Vec<Rat>,
    pub offset: i64,
}

impl Seq {
    pub fn new(terms: Vec<Rat>) -> Seq {
        Seq { terms, offset: 0 }
    }

    pub fn with_offset(terms: Vec<Rat>, offset: i64) -> Seq {
        Seq { terms, offset }
    }

    pub fn from_ints(terms: &[i64]) -> Seq {
        Seq::new(terms.iter().map(|&x| rat(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Term with absolute index `n`; zero outside the stored range.
    pub fn term(&self, n: i64) -> Rat {
        let i = n - self.offset;
        if i < 0 {
            return Rat::zero();
        }
        self.terms.get(i as usize).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn prefix(&self, len: usize) -> Seq {
        Seq::with_offset(self.terms.iter().take(len).cloned().collect(), self.offset)
    }

    pub fn to_series(&self, order: usize) -> Series {
        Series::from_seq(self, order)
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

mod rat_strings {
    use super::Rat;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        use serde::de::Error;
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|x| x.trim().parse::<Rat>().map_err(|e| D::Error::custom(format!("{x}: {e}"))))
            .collect()
    }
}
