//! Riordan arrays `R(d, h)` over truncated series.

use std::fmt;
use std::sync::OnceLock;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{ArrayDefect, Error, Result};
use crate::matrix::Matrix;
use crate::series::{Rat, Seq, Series};

/// Subgroup membership, tested as truncated-series identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubgroupTag {
    /// `h = t`
    Appell,
    /// `d = 1`
    Lagrange,
    /// `h = t d`
    Bell,
    /// `d = h'`
    Derivative,
    /// `d = t h' / h`
    HittingTime,
    None,
}

impl fmt::Display for SubgroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SubgroupTag::Appell => "Appell",
            SubgroupTag::Lagrange => "Lagrange",
            SubgroupTag::Bell => "Bell",
            SubgroupTag::Derivative => "Derivative",
            SubgroupTag::HittingTime => "HittingTime",
            SubgroupTag::None => "None",
        };
        f.write_str(s)
    }
}

/// A validated pair `(d, h)` with `d(0) != 0`, `h(0) = 0`, `h'(0) != 0`.
///
/// Columns `d h^k` are computed once on first use and shared by all readers.
#[derive(Clone, Debug)]
pub struct RiordanArray {
    d: Series,
    h: Series,
    columns: OnceLock<Vec<Series>>,
}

impl PartialEq for RiordanArray {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.h == other.h
    }
}

impl Eq for RiordanArray {}

impl RiordanArray {
    pub fn new(d: Series, h: Series) -> Result<RiordanArray> {
        if d.order() != h.order() {
            return Err(Error::OrderMismatch { left: d.order(), right: h.order() });
        }
        if d.coeff(0).is_zero() {
            return Err(Error::InvalidArray(ArrayDefect::ZeroD0));
        }
        if !h.coeff(0).is_zero() {
            return Err(Error::InvalidArray(ArrayDefect::NonZeroH0));
        }
        if h.order() >= 1 && h.coeff(1).is_zero() {
            return Err(Error::InvalidArray(ArrayDefect::ZeroH1));
        }
        Ok(RiordanArray { d, h, columns: OnceLock::new() })
    }

    /// `R(1, t)`
    pub fn identity(order: usize) -> RiordanArray {
        RiordanArray::new(Series::one(order), Series::t(order)).expect("identity is valid")
    }

    pub fn d(&self) -> &Series {
        &self.d
    }

    pub fn h(&self) -> &Series {
        &self.h
    }

    pub fn order(&self) -> usize {
        self.d.order()
    }

    /// Number of leading rows whose entries are exact.
    pub fn valid_rows(&self) -> usize {
        self.d.valid_len().min(self.h.valid_len())
    }

    /// True when `d` and `h` match on their common valid windows.
    pub fn agrees(&self, other: &RiordanArray) -> bool {
        self.d.agrees(&other.d) && self.h.agrees(&other.h)
    }

    fn columns(&self) -> &[Series] {
        self.columns.get_or_init(|| {
            let n = self.order();
            let mut cols = Vec::with_capacity(n + 1);
            cols.push(self.d.clone());
            for k in 1..=n {
                let next = cols[k - 1].mul(&self.h).expect("orders match");
                cols.push(next);
            }
            cols
        })
    }

    /// The generating function `d h^k` of column `k`.
    pub fn column(&self, k: usize) -> Result<&Series> {
        self.columns().get(k).ok_or(Error::IndexOutOfRange { n: k, k, order: self.order() })
    }

    fn check_row(&self, n: usize, k: usize) -> Result<()> {
        if n > self.order() || k > self.order() {
            return Err(Error::IndexOutOfRange { n, k, order: self.order() });
        }
        if n >= self.valid_rows() {
            return Err(Error::PrecisionExhausted { needed: n + 1, available: self.valid_rows() });
        }
        Ok(())
    }

    /// `[t^n] d(t) h(t)^k`
    pub fn entry(&self, n: usize, k: usize) -> Result<Rat> {
        self.check_row(n, k)?;
        if k > n {
            return Ok(Rat::zero());
        }
        Ok(self.columns()[k].coeff(n))
    }

    /// Top-left `m x m` window.
    pub fn matrix(&self, m: usize) -> Result<Matrix> {
        if m > self.order() {
            return Err(Error::IndexOutOfRange { n: m, k: m, order: self.order() });
        }
        if m > self.valid_rows() {
            return Err(Error::PrecisionExhausted { needed: m, available: self.valid_rows() });
        }
        let cols = self.columns();
        Ok(Matrix::from_fn(m, |i, j| if j > i { Rat::zero() } else { cols[j].coeff(i) }))
    }

    /// `R1 R2 = R(d1 d2(h1), h2(h1))`
    pub fn multiply(&self, other: &RiordanArray) -> Result<RiordanArray> {
        let d = self.d.mul(&other.d.compose(&self.h)?)?;
        let h = other.h.compose(&self.h)?;
        RiordanArray::new(d, h)
    }

    /// `R^{-1} = R(1 / d(hbar), hbar)`
    pub fn inverse(&self) -> Result<RiordanArray> {
        let hbar = self.h.comp_inverse()?;
        let d = self.d.compose(&hbar)?.reciprocal()?;
        RiordanArray::new(d, hbar)
    }

    /// Integer power; negative exponents use the inverse.
    pub fn pow(&self, e: i64) -> Result<RiordanArray> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = RiordanArray::identity(self.order());
        let mut rest = e.unsigned_abs();
        while rest > 0 {
            if rest & 1 == 1 {
                acc = acc.multiply(&base)?;
            }
            rest >>= 1;
            if rest > 0 {
                base = base.multiply(&base)?;
            }
        }
        Ok(acc)
    }

    /// Entry of the inverse by Lagrange inversion,
    /// `[t^{n-k}] h'(t) / (d(t) (h(t)/t)^{n+1})`, without computing `hbar`.
    pub fn inverse_entry_lagrange(&self, n: usize, k: usize) -> Result<Rat> {
        let order = self.order();
        if n >= order || k >= order {
            return Err(Error::IndexOutOfRange { n, k, order });
        }
        if k > n {
            return Ok(Rat::zero());
        }
        let g = self.lagrange_series(n)?;
        if n - k >= g.valid_len() {
            return Err(Error::PrecisionExhausted { needed: n - k + 1, available: g.valid_len() });
        }
        Ok(g.coeff(n - k))
    }

    /// `h'(t) / (d(t) (h(t)/t)^{n+1})`
    fn lagrange_series(&self, n: usize) -> Result<Series> {
        let ratio = self.h.shift(-1)?;
        let denom = self.d.mul(&ratio.pow(n as i64 + 1)?)?;
        self.h.derivative().div(&denom)
    }

    /// Row `n` of the inverse, entries `0..=n`, by Lagrange inversion. The
    /// series is shared by the whole row.
    pub fn inverse_row_lagrange(&self, n: usize) -> Result<Vec<Rat>> {
        let order = self.order();
        if n >= order {
            return Err(Error::IndexOutOfRange { n, k: 0, order });
        }
        let g = self.lagrange_series(n)?;
        if n >= g.valid_len() {
            return Err(Error::PrecisionExhausted { needed: n + 1, available: g.valid_len() });
        }
        Ok((0..=n).map(|k| g.coeff(n - k)).collect())
    }

    /// The series `d(t) f(h(t))`.
    pub fn transform_series(&self, f: &Series) -> Result<Series> {
        self.d.mul(&f.compose(&self.h)?)
    }

    /// Applies the array to a sequence; the input is zero-padded to the
    /// order and the valid output terms are returned.
    pub fn transform(&self, f: &Seq) -> Result<Seq> {
        let fs = Series::from_seq(f, self.order());
        Ok(self.transform_series(&fs)?.to_seq())
    }

    /// `A(t) = t / hbar(t)`
    pub fn a_series(&self) -> Result<Series> {
        self.h.comp_inverse()?.shift(-1)?.reciprocal()
    }

    /// `Z(t) = (d(hbar) - d(0)) / (hbar d(hbar))`
    pub fn z_series(&self) -> Result<Series> {
        let hbar = self.h.comp_inverse()?;
        let dh = self.d.compose(&hbar)?;
        let d0 = Series::constant(self.d.coeff(0), self.order());
        let num = dh.sub(&d0)?.shift(-1)?;
        let den = hbar.shift(-1)?.mul(&dh)?;
        num.div(&den)
    }

    pub fn a_sequence(&self) -> Result<Seq> {
        Ok(self.a_series()?.to_seq())
    }

    pub fn z_sequence(&self) -> Result<Seq> {
        Ok(self.z_series()?.to_seq())
    }

    /// Generating function of the row sums, `d / (1 - h)`.
    pub fn row_sum_gf(&self) -> Result<Series> {
        self.d.div(&Series::one(self.order()).sub(&self.h)?)
    }

    /// Generating function of the alternating row sums, `d / (1 + h)`.
    pub fn alt_row_sum_gf(&self) -> Result<Series> {
        self.d.div(&Series::one(self.order()).add(&self.h)?)
    }

    pub fn row_sums(&self) -> Result<Seq> {
        Ok(self.row_sum_gf()?.to_seq())
    }

    pub fn alt_row_sums(&self) -> Result<Seq> {
        Ok(self.alt_row_sum_gf()?.to_seq())
    }

    /// First matching subgroup in the order Appell, Lagrange, Bell,
    /// Derivative, HittingTime. Equalities are checked up to the order.
    pub fn subgroup_of(&self) -> SubgroupTag {
        let n = self.order();
        let tag = (|| -> Result<SubgroupTag> {
            if self.h.agrees(&Series::t(n)) {
                return Ok(SubgroupTag::Appell);
            }
            if self.d.agrees(&Series::one(n)) {
                return Ok(SubgroupTag::Lagrange);
            }
            if self.h.agrees(&self.d.shift(1)?) {
                return Ok(SubgroupTag::Bell);
            }
            let dh = self.h.derivative();
            if self.d.agrees(&dh) {
                return Ok(SubgroupTag::Derivative);
            }
            // t h'/h has a removable singularity at 0; divide h by t first.
            if self.d.agrees(&dh.div(&self.h.shift(-1)?)?) {
                return Ok(SubgroupTag::HittingTime);
            }
            Ok(SubgroupTag::None)
        })();
        tag.unwrap_or(SubgroupTag::None)
    }

    /// The array with its first row and column removed: `R(d h / t, h)`.
    pub fn sigma(&self) -> Result<RiordanArray> {
        let d = self.d.mul(&self.h.shift(-1)?)?;
        RiordanArray::new(d, self.h.clone())
    }
}

/// `A(t) = A2(t) A1(t / A2(t))` for the product `R1 R2`.
pub fn product_a_series(a1: &Series, a2: &Series) -> Result<Series> {
    if a2.coeff(0).is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let u = a2.reciprocal()?.shift(1)?;
    a2.mul(&a1.compose(&u)?)
}

/// `Z(t) = (1 - (t/A2) Z2) Z1(t/A2) + A1(t/A2) Z2` for the product `R1 R2`.
pub fn product_z_series(a1: &Series, z1: &Series, a2: &Series, z2: &Series) -> Result<Series> {
    if a2.coeff(0).is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let n = a1.order();
    let u = a2.reciprocal()?.shift(1)?;
    let left = Series::one(n).sub(&u.mul(z2)?)?.mul(&z1.compose(&u)?)?;
    let right = a1.compose(&u)?.mul(z2)?;
    left.add(&right)
}

/// Rebuilds an `m x m` window from `d_{0,0}` and the A- and Z-sequences:
/// `d_{r+1,c+1} = sum_i a_i d_{r,c+i}` and `d_{r+1,0} = sum_i z_i d_{r,i}`.
pub fn matrix_from_az(d00: &Rat, a: &Seq, z: &Seq, m: usize) -> Matrix {
    let mut out = Matrix::zeros(m);
    if m == 0 {
        return out;
    }
    out.set(0, 0, d00.clone());
    for r in 0..m - 1 {
        let mut s = Rat::zero();
        for i in 0..=r {
            s += z.term(i as i64) * out.get(r, i);
        }
        out.set(r + 1, 0, s);
        for c in 0..=r {
            let mut s = Rat::zero();
            for i in 0..=(r - c) {
                s += a.term(i as i64) * out.get(r, c + i);
            }
            out.set(r + 1, c + 1, s);
        }
    }
    out
}

impl fmt::Display for RiordanArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R({}; {})", self.d, self.h)
    }
}

#[derive(Serialize, Deserialize)]
struct ArrayRepr {
    d: Series,
    h: Series,
    order: usize,
}

impl Serialize for RiordanArray {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ArrayRepr { d: self.d.clone(), h: self.h.clone(), order: self.order() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RiordanArray {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ArrayRepr::deserialize(d)?;
        if repr.d.order() != repr.order {
            return Err(D::Error::custom("order field disagrees with d"));
        }
        RiordanArray::new(repr.d, repr.h).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{rat, ratio};

    fn geo(order: usize, c: i64) -> Series {
        Series::geometric(rat(c), order)
    }

    fn pas(order: usize) -> RiordanArray {
        let d = geo(order, 1);
        let h = d.shift(1).unwrap();
        RiordanArray::new(d, h).unwrap()
    }

    fn binom(n: u64, k: u64) -> i64 {
        if k > n {
            return 0;
        }
        let mut r: i64 = 1;
        for i in 0..k {
            r = r * (n - i) as i64 / (i + 1) as i64;
        }
        r
    }

    #[test]
    fn validation() {
        let n = 6;
        assert_eq!(
            RiordanArray::new(Series::t(n), Series::t(n)),
            Err(Error::InvalidArray(ArrayDefect::ZeroD0))
        );
        assert_eq!(
            RiordanArray::new(Series::one(n), Series::one(n)),
            Err(Error::InvalidArray(ArrayDefect::NonZeroH0))
        );
        assert_eq!(
            RiordanArray::new(Series::one(n), Series::from_ints(n, &[0, 0, 1])),
            Err(Error::InvalidArray(ArrayDefect::ZeroH1))
        );
        assert!(RiordanArray::new(Series::one(n), Series::from_ints(n, &[0, 2])).is_ok());
        assert!(RiordanArray::new(Series::from_ints(n, &[-1]), Series::t(n)).is_ok());
    }

    #[test]
    fn pascal_entries() {
        let p = pas(10);
        for n in 0..10 {
            for k in 0..10 {
                assert_eq!(p.entry(n, k).unwrap(), rat(binom(n as u64, k as u64)));
            }
        }
        assert_eq!(p.entry(4, 2).unwrap(), rat(6));
        assert!(matches!(p.entry(11, 0), Err(Error::IndexOutOfRange { .. })));
        assert!(p.matrix(11).is_err());
    }

    #[test]
    fn pascal_square_matches_dense_product() {
        let p = pas(10);
        let sq = p.multiply(&p).unwrap();
        let dense = p.matrix(8).unwrap().mul(&p.matrix(8).unwrap());
        assert_eq!(sq.matrix(8).unwrap(), dense);
        let d = geo(10, 2);
        let expected = RiordanArray::new(d.clone(), d.shift(1).unwrap()).unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn inverse_of_pascal() {
        let p = pas(10);
        let inv = p.inverse().unwrap();
        let d = geo(10, -1);
        assert_eq!(inv, RiordanArray::new(d.clone(), d.shift(1).unwrap()).unwrap());
        assert_eq!(p.multiply(&inv).unwrap(), RiordanArray::identity(10));
        for n in 0..9 {
            for k in 0..9 {
                assert_eq!(p.inverse_entry_lagrange(n, k).unwrap(), inv.entry(n, k).unwrap());
            }
            let row = p.inverse_row_lagrange(n).unwrap();
            assert_eq!(row, (0..=n).map(|k| inv.entry(n, k).unwrap()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn a_and_z_of_pascal() {
        let p = pas(8);
        assert_eq!(p.a_sequence().unwrap(), Seq::from_ints(&[1, 1, 0, 0, 0, 0, 0, 0]));
        assert_eq!(p.z_sequence().unwrap(), Seq::from_ints(&[1, 0, 0, 0, 0, 0, 0, 0]));
        let s = RiordanArray::new(geo(8, 2), p.h().clone()).unwrap();
        assert_eq!(s.z_sequence().unwrap().terms[..3], [rat(2), rat(0), rat(0)]);
        let c = RiordanArray::new(Series::constant(ratio(3, 2), 8), Series::t(8)).unwrap();
        assert!(c.z_sequence().unwrap().terms.iter().all(Zero::is_zero));
    }

    #[test]
    fn rebuild_from_a_and_z() {
        let p = pas(12);
        let rebuilt = matrix_from_az(&rat(1), &p.a_sequence().unwrap(), &p.z_sequence().unwrap(), 12);
        assert_eq!(rebuilt, p.matrix(12).unwrap());
    }

    #[test]
    fn product_formulas_for_pascal_square() {
        let p = pas(10);
        let sq = p.multiply(&p).unwrap();
        let a = p.a_series().unwrap();
        let z = p.z_series().unwrap();
        assert!(product_a_series(&a, &a).unwrap().agrees(&sq.a_series().unwrap()));
        assert!(product_z_series(&a, &z, &a, &z).unwrap().agrees(&sq.z_series().unwrap()));
    }

    #[test]
    fn row_sums_and_subgroups() {
        let n = 8;
        let fib = RiordanArray::new(Series::one(n), Series::from_ints(n, &[0, 1, 1])).unwrap();
        assert_eq!(fib.row_sums().unwrap(), Seq::from_ints(&[1, 1, 2, 3, 5, 8, 13, 21, 34]));
        assert_eq!(fib.subgroup_of(), SubgroupTag::Lagrange);
        assert_eq!(pas(n).alt_row_sums().unwrap(), Seq::from_ints(&[1, 0, 0, 0, 0, 0, 0, 0, 0]));
        let t = RiordanArray::new(Series::from_ints(n, &[1, 1]), Series::t(n)).unwrap();
        assert_eq!(t.subgroup_of(), SubgroupTag::Appell);
        // Pascal: h = t d
        assert_eq!(pas(n).subgroup_of(), SubgroupTag::Bell);
        let h = Series::from_ints(n, &[0, 1, 1]);
        let der = RiordanArray::new(h.derivative(), h.clone()).unwrap();
        assert_eq!(der.subgroup_of(), SubgroupTag::Derivative);
        let ht =
            RiordanArray::new(Series::from_ints(n, &[1, 2]).div(&Series::from_ints(n, &[1, 1])).unwrap(), h)
                .unwrap();
        assert_eq!(ht.subgroup_of(), SubgroupTag::HittingTime);
        let none =
            RiordanArray::new(Series::from_ints(n, &[2, 1]), Series::from_ints(n, &[0, 1, 3])).unwrap();
        assert_eq!(none.subgroup_of(), SubgroupTag::None);
    }

    #[test]
    fn sigma_deletes_first_row_and_column() {
        let p = pas(10);
        let s = p.sigma().unwrap();
        let d = geo(10, 1);
        assert!(s.agrees(&RiordanArray::new(d.mul(&d).unwrap(), p.h().clone()).unwrap()));
        assert_eq!(s.valid_rows(), 10);
        for n in 0..9 {
            for k in 0..9 {
                assert_eq!(s.entry(n, k).unwrap(), p.entry(n + 1, k + 1).unwrap());
            }
        }
        assert_eq!(RiordanArray::identity(5).sigma().unwrap(), RiordanArray::identity(5));
    }

    #[test]
    fn transform_and_json() {
        let t = RiordanArray::new(Series::from_ints(6, &[1, 1]), Series::t(6)).unwrap();
        let id = RiordanArray::identity(6);
        let f = Seq::from_ints(&[1, 4, 9, 16, 25, 64, 100]);
        assert_eq!(id.transform(&f).unwrap(), f);
        assert_eq!(t.transform(&f).unwrap(), Seq::from_ints(&[1, 5, 13, 25, 41, 89, 164]));
        let j = serde_json::to_string(&t).unwrap();
        let back: RiordanArray = serde_json::from_str(&j).unwrap();
        assert_eq!(back, t);
        assert_eq!(t.to_string(), "R(1 + t; t)");
    }
}
