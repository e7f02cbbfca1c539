//! Sums of Riordan arrays, sumrays and Toeplitz lifts.

use std::fmt;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::riordan::RiordanArray;
use crate::series::{Rat, Seq, Series};

/// Why two Riordan arrays do not add up to a Riordan array.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SumFailure {
    /// The `h` series differ.
    DifferentH,
    /// `d_R(0) + d_S(0) = 0`.
    ZeroConstant,
    /// The truncation orders differ.
    OrderMismatch,
}

impl fmt::Display for SumFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SumFailure::DifferentH => "the h series differ; the sum is a sumray, not a Riordan array",
            SumFailure::ZeroConstant => "the constant terms of d cancel",
            SumFailure::OrderMismatch => "the truncation orders differ",
        })
    }
}

/// `R(d_R + d_S, h)` when `h_R = h_S` and the constants of `d` do not cancel.
pub fn try_add(r: &RiordanArray, s: &RiordanArray) -> std::result::Result<RiordanArray, SumFailure> {
    if r.order() != s.order() {
        return Err(SumFailure::OrderMismatch);
    }
    if !r.h().agrees(s.h()) {
        return Err(SumFailure::DifferentH);
    }
    let d = r.d().add(s.d()).map_err(|_| SumFailure::OrderMismatch)?;
    if d.coeff(0).is_zero() {
        return Err(SumFailure::ZeroConstant);
    }
    let h = if r.h().valid_len() <= s.h().valid_len() { r.h().clone() } else { s.h().clone() };
    RiordanArray::new(d, h).map_err(|_| SumFailure::ZeroConstant)
}

/// The Z-sequence of `R + S` computed five ways.
#[derive(Clone, Debug)]
pub struct ZSumForms {
    /// From `hbar` and the individual Z-series (the reference form).
    pub via_hbar: Series,
    /// Same expression with `hbar = t / A`.
    pub via_a: Series,
    /// `Z(h) = (d_R + d_S - d_R(0) - d_S(0)) / (t (d_R + d_S))`, composed with `hbar`.
    pub via_composition: Series,
    /// Weighted average of `Z_R` and `Z_S` with weights `d(hbar)`.
    pub weighted_average: Series,
    /// Z-sequence of the constructed sum.
    pub direct: Series,
}

impl ZSumForms {
    pub fn all_agree(&self) -> bool {
        let r = &self.via_hbar;
        [&self.via_a, &self.via_composition, &self.weighted_average, &self.direct].iter().all(|x| r.agrees(x))
    }
}

fn check_summable(r: &RiordanArray, s: &RiordanArray) -> Result<RiordanArray> {
    try_add(r, s).map_err(|e| Error::OutOfRange(e.to_string()))
}

pub fn z_of_sum_forms(r: &RiordanArray, s: &RiordanArray) -> Result<ZSumForms> {
    let sum = check_summable(r, s)?;
    let n = r.order();
    let h = sum.h();
    let hbar = h.comp_inverse()?;
    let a = sum.a_series()?;
    let (zr, zs) = (r.z_series()?, s.z_series()?);
    let (r0, s0) = (r.d().coeff(0), s.d().coeff(0));
    let c0 = &r0 + &s0;
    let c = |x: &Rat| Series::constant(x.clone(), n);

    // sum of d(0) Z, the cross term d_R(0) Z_S + d_S(0) Z_R, and Z_R Z_S
    let weighted = zr.scale(&r0).add(&zs.scale(&s0))?;
    let cross = zs.scale(&r0).add(&zr.scale(&s0))?;
    let prod = zr.mul(&zs)?;

    let via_hbar = {
        let num = weighted.sub(&hbar.mul(&prod)?.scale(&c0))?;
        let den = c(&c0).sub(&hbar.mul(&cross)?)?;
        num.div(&den)?
    };
    let via_a = {
        let t = Series::t(n);
        let num = weighted.mul(&a)?.sub(&t.mul(&prod)?.scale(&c0))?;
        let den = a.scale(&c0).sub(&t.mul(&cross)?)?;
        num.div(&den)?
    };
    let via_composition = {
        let d = sum.d();
        let z_of_h = d.sub(&c(&c0))?.shift(-1)?.div(d)?;
        z_of_h.compose(&hbar)?
    };
    let weighted_average = {
        let dr = r.d().compose(&hbar)?;
        let ds = s.d().compose(&hbar)?;
        dr.mul(&zr)?.add(&ds.mul(&zs)?)?.div(&dr.add(&ds)?)?
    };
    Ok(ZSumForms { via_hbar, via_a, via_composition, weighted_average, direct: sum.z_series()? })
}

/// Z-sequence of `R + S`, cross-validated against the equivalent forms.
pub fn z_of_sum(r: &RiordanArray, s: &RiordanArray) -> Result<Seq> {
    let forms = z_of_sum_forms(r, s)?;
    if !forms.all_agree() {
        return Err(Error::CrossCheck("Z-series of a sum disagree".into()));
    }
    Ok(forms.via_hbar.to_seq())
}

/// Matrix sum of two Riordan arrays with possibly different `h`.
#[derive(Clone, Debug, PartialEq)]
pub struct Sumray {
    r: RiordanArray,
    s: RiordanArray,
}

impl Sumray {
    pub fn new(r: RiordanArray, s: RiordanArray) -> Result<Sumray> {
        if r.order() != s.order() {
            return Err(Error::OrderMismatch { left: r.order(), right: s.order() });
        }
        Ok(Sumray { r, s })
    }

    pub fn from_series(d_r: Series, d_s: Series, h_r: Series, h_s: Series) -> Result<Sumray> {
        Sumray::new(RiordanArray::new(d_r, h_r)?, RiordanArray::new(d_s, h_s)?)
    }

    pub fn parts(&self) -> (&RiordanArray, &RiordanArray) {
        (&self.r, &self.s)
    }

    pub fn order(&self) -> usize {
        self.r.order()
    }

    pub fn valid_rows(&self) -> usize {
        self.r.valid_rows().min(self.s.valid_rows())
    }

    /// `[t^n] (d_R h_R^k + d_S h_S^k)`
    pub fn entry(&self, n: usize, k: usize) -> Result<Rat> {
        Ok(self.r.entry(n, k)? + self.s.entry(n, k)?)
    }

    pub fn matrix(&self, m: usize) -> Result<Matrix> {
        Ok(self.r.matrix(m)?.add(&self.s.matrix(m)?))
    }

    /// The sum as a Riordan array, when it is one.
    pub fn as_riordan(&self) -> std::result::Result<RiordanArray, SumFailure> {
        try_add(&self.r, &self.s)
    }
}

impl fmt::Display for Sumray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R({}, {}; {}, {})", self.r.d(), self.s.d(), self.r.h(), self.s.h())
    }
}

#[derive(Serialize, Deserialize)]
struct SumrayRepr {
    #[serde(rename = "dR")]
    d_r: Series,
    #[serde(rename = "dS")]
    d_s: Series,
    #[serde(rename = "hR")]
    h_r: Series,
    #[serde(rename = "hS")]
    h_s: Series,
    order: usize,
}

impl Serialize for Sumray {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SumrayRepr {
            d_r: self.r.d().clone(),
            d_s: self.s.d().clone(),
            h_r: self.r.h().clone(),
            h_s: self.s.h().clone(),
            order: self.order(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Sumray {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = SumrayRepr::deserialize(d)?;
        Sumray::from_series(r.d_r, r.d_s, r.h_r, r.h_s).map_err(D::Error::custom)
    }
}

/// Lower-triangular Toeplitz matrix built from a sequence: column `j` is the
/// sequence shifted down by `j` places.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToeplitzLift {
    pub seq: Seq,
}

impl ToeplitzLift {
    pub fn new(seq: Seq) -> ToeplitzLift {
        ToeplitzLift { seq }
    }

    /// `m x m` window with entry `(i, j) = a_{i-j}`.
    pub fn table(&self, m: usize) -> Matrix {
        Matrix::from_fn(m, |i, j| if j > i { Rat::zero() } else { self.seq.term((i - j) as i64) })
    }
}

pub fn toeplitz(seq: &Seq, m: usize) -> Matrix {
    ToeplitzLift::new(seq.clone()).table(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellMismatch {
    pub n: usize,
    pub k: usize,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecurrenceReport {
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<CellMismatch>,
}

/// The matrices `B = A_R + A_S` and `C = -A_R A_S` (Toeplitz lifts of the
/// two A-sequences) on an `m x m` window.
pub fn recurrence_coefficients(y: &Sumray, m: usize) -> Result<(Matrix, Matrix)> {
    let ar = toeplitz(&y.r.a_sequence()?, m);
    let as_ = toeplitz(&y.s.a_sequence()?, m);
    Ok((ar.add(&as_), ar.mul(&as_).neg()))
}

/// Checks `Y^{ss} = Y^s (A_R + A_S) - Y A_R A_S` on an `m x m` window, both
/// as a matrix identity and cell by cell in the scalar form
/// `d_{n+2,k+2} = sum_j d_{n+1,j+1} B_{j,k} + sum_j d_{n,j} C_{j,k}`.
pub fn sumray_recurrence_check(y: &Sumray, m: usize) -> Result<RecurrenceReport> {
    let need = m + 2;
    if need > y.order() {
        return Err(Error::IndexOutOfRange { n: need, k: need, order: y.order() });
    }
    let full = y.matrix(need)?;
    let shifted = |s: usize| Matrix::from_fn(m, |i, j| full.get(i + s, j + s).clone());
    let (y0, y1, y2) = (shifted(0), shifted(1), shifted(2));
    let (b, c) = recurrence_coefficients(y, m)?;

    let rhs = y1.mul(&b).add(&y0.mul(&c));
    if let Some((n, k)) = y2.first_difference(&rhs) {
        return Ok(RecurrenceReport {
            ok: false,
            first_failure: Some(CellMismatch {
                n,
                k,
                expected: y2.get(n, k).to_string(),
                got: rhs.get(n, k).to_string(),
            }),
        });
    }
    for n in 0..m {
        for k in 0..m {
            let mut got = Rat::zero();
            for j in 0..m {
                got += y.entry(n + 1, j + 1)? * b.get(j, k);
                got += y.entry(n, j)? * c.get(j, k);
            }
            let expected = y.entry(n + 2, k + 2)?;
            if got != expected {
                return Ok(RecurrenceReport {
                    ok: false,
                    first_failure: Some(CellMismatch {
                        n: n + 2,
                        k: k + 2,
                        expected: expected.to_string(),
                        got: got.to_string(),
                    }),
                });
            }
        }
    }
    Ok(RecurrenceReport { ok: true, first_failure: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{rat, ratio};

    const N: usize = 12;

    fn geo(c: i64) -> Series {
        Series::geometric(rat(c), N)
    }

    fn arr(d: Series, h: Series) -> RiordanArray {
        RiordanArray::new(d, h).unwrap()
    }

    fn pas() -> RiordanArray {
        arr(geo(1), geo(1).shift(1).unwrap())
    }

    fn s1() -> RiordanArray {
        arr(geo(2), geo(1).shift(1).unwrap())
    }

    #[test]
    fn pascal_plus_s1() {
        let sum = try_add(&pas(), &s1()).unwrap();
        let expected =
            Matrix::lower_from_ints(&[&[2], &[3, 2], &[5, 5, 2], &[9, 10, 7, 2], &[17, 19, 17, 9, 2]]);
        assert_eq!(sum.matrix(5).unwrap(), expected);
        let d = Series::from_ints(N, &[2, -3]).div(&Series::from_ints(N, &[1, -3, 2])).unwrap();
        assert_eq!(sum.d(), &d);
        let z = z_of_sum(&pas(), &s1()).unwrap();
        // (3 - t)/(2 - t)
        let mut want = vec![ratio(3, 2)];
        want.extend((1..8).map(|i| ratio(1, 1 << (i + 1))));
        assert_eq!(z.terms[..8], want[..]);
    }

    #[test]
    fn sum_failures() {
        let other = arr(geo(1), geo(1).shift(1).unwrap().scale(&rat(2)));
        assert_eq!(try_add(&pas(), &other), Err(SumFailure::DifferentH));
        let a = arr(Series::one(N), Series::t(N));
        let b = arr(Series::constant(rat(-1), N), Series::t(N));
        assert_eq!(try_add(&a, &b), Err(SumFailure::ZeroConstant));
        let c = RiordanArray::identity(N + 1);
        assert_eq!(try_add(&a, &c), Err(SumFailure::OrderMismatch));
    }

    #[test]
    fn equal_d_keeps_z() {
        let p = pas();
        let z = z_of_sum(&p, &p).unwrap();
        assert_eq!(z, p.z_sequence().unwrap());
    }

    #[test]
    fn appell_corollary_forms() {
        let r = arr(Series::from_ints(N, &[1, 2, -1]), Series::t(N));
        let s = arr(Series::from_ints(N, &[3, 0, 5, 1]), Series::t(N));
        let forms = z_of_sum_forms(&r, &s).unwrap();
        assert!(forms.all_agree());
    }

    #[test]
    fn example_sumray() {
        let y = Sumray::new(pas(), arr(geo(1), geo(1).shift(1).unwrap().scale(&rat(2)))).unwrap();
        let expected = Matrix::lower_from_ints(&[
            &[2],
            &[2, 3],
            &[2, 6, 5],
            &[2, 9, 15, 9],
            &[2, 12, 30, 36, 17],
            &[2, 15, 50, 90, 85, 33],
        ]);
        assert_eq!(y.matrix(6).unwrap(), expected);
        let (b, c) = recurrence_coefficients(&y, 3).unwrap();
        assert_eq!(b, Matrix::lower_from_ints(&[&[3], &[2, 3], &[0, 2, 3]]));
        assert_eq!(c, Matrix::lower_from_ints(&[&[-2], &[-3, -2], &[-1, -3, -2]]));
        assert!(sumray_recurrence_check(&y, 10).unwrap().ok);
    }

    #[test]
    fn toeplitz_tables() {
        let a = Seq::from_ints(&[1, 1]);
        let t = toeplitz(&a, 4);
        assert_eq!(t.mul(&t), Matrix::lower_from_ints(&[&[1], &[2, 1], &[1, 2, 1], &[0, 1, 2, 1]]));
        assert_eq!(toeplitz(&Seq::new(vec![]), 3), Matrix::zeros(3));
    }

    #[test]
    fn shared_h_specialization() {
        let sum = try_add(&pas(), &s1()).unwrap();
        let y = Sumray::new(pas(), s1()).unwrap();
        let a = toeplitz(&sum.a_sequence().unwrap(), 8);
        let full = y.matrix(10).unwrap();
        let y2 = Matrix::from_fn(8, |i, j| full.get(i + 2, j + 2).clone());
        assert_eq!(y.matrix(8).unwrap().mul(&a.mul(&a)), y2);
    }

    #[test]
    fn report_json_shape() {
        let y = Sumray::new(pas(), s1()).unwrap();
        let report = sumray_recurrence_check(&y, 6).unwrap();
        assert!(report.ok);
        assert_eq!(serde_json::to_string(&report).unwrap(), r#"{"ok":true}"#);
    }
}
