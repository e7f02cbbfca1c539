//! The `der` and `flip` operators on Riordan arrays, their iterates, closed
//! forms on the Appell subgroup, Stirling numbers of the second kind and the
//! weighted-composition count.

use std::collections::HashMap;
use std::sync::OnceLock;

use num::{BigInt, One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::riordan::{RiordanArray, SubgroupTag};
use crate::series::{rat_big, Rat, Seq, Series};

/// `R(d, h) -> R(h', t d)`
pub fn der(r: &RiordanArray) -> Result<RiordanArray> {
    let h = r.h();
    if h.valid_len() < 2 {
        return Err(Error::PrecisionExhausted { needed: 2, available: h.valid_len() });
    }
    RiordanArray::new(h.derivative(), r.d().shift(1)?)
}

/// `R(d, h) -> R(h / t, t d)`
pub fn flip(r: &RiordanArray) -> Result<RiordanArray> {
    RiordanArray::new(r.h().shift(-1)?, r.d().shift(1)?)
}

/// `der` applied `k` times. Fails once the reliable window is used up.
pub fn der_k(r: &RiordanArray, k: usize) -> Result<RiordanArray> {
    let mut acc = r.clone();
    for _ in 0..k {
        acc = der(&acc)?;
    }
    Ok(acc)
}

/// `flip` applied `k` times.
pub fn flip_k(r: &RiordanArray, k: usize) -> Result<RiordanArray> {
    let mut acc = r.clone();
    for _ in 0..k {
        acc = flip(&acc)?;
    }
    Ok(acc)
}

/// One structural property of `der`/`flip` checked on a specific array.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BulletCheck {
    pub name: &'static str,
    /// False when the property has a hypothesis the array does not meet.
    pub applicable: bool,
    pub holds: bool,
}

fn same(a: &RiordanArray, d: &Series, h: &Series) -> bool {
    a.d().agrees(d) && a.h().agrees(h)
}

/// Checks the elementary properties of `der` and `flip` on `r`, returning
/// one line per property.
pub fn der_flip_identities_check(r: &RiordanArray) -> Result<Vec<BulletCheck>> {
    let n = r.order();
    let (d, h) = (r.d(), r.h());
    let t = Series::t(n);
    let dr = der(r)?;
    let fr = flip(r)?;
    let is_appell = h.agrees(&t);
    let is_lagrange = d.agrees(&Series::one(n));
    let is_bell = h.agrees(&d.shift(1)?);
    let is_derivative = d.agrees(&h.derivative());
    let h_linear = h.valid_len() >= 2 && h.coeffs()[2..h.valid_len()].iter().all(Zero::is_zero);
    let check = |name, applicable, holds| BulletCheck { name, applicable, holds: !applicable || holds };

    let mut out = Vec::new();
    out.push(check("flip is an involution", true, flip(&fr)?.agrees(r)));
    out.push(check("flip(der(R)) = R(d, t h')", true, same(&flip(&dr)?, d, &h.derivative().shift(1)?)));
    out.push(check(
        "der(flip(R)) = R(d + t d', h)",
        true,
        same(&der(&fr)?, &d.add(&d.derivative().shift(1)?)?, h),
    ));
    {
        let want_h = d.shift(1)?;
        let one = Series::one(n);
        let holds = same(&dr, &one, &want_h)
            && same(&fr, &one, &want_h)
            && dr.subgroup_of() == SubgroupTag::Lagrange
            && fr.subgroup_of() == SubgroupTag::Lagrange;
        out.push(check("der and flip map Appell to Lagrange", is_appell, holds));
    }
    {
        let holds = same(&dr, &h.derivative(), &t)
            && same(&fr, &h.shift(-1)?, &t)
            && dr.subgroup_of() == SubgroupTag::Appell
            && fr.subgroup_of() == SubgroupTag::Appell;
        out.push(check("der and flip map Lagrange to Appell", is_lagrange, holds));
    }
    {
        let hp = h.derivative();
        let holds = same(&dr, &hp, &hp.shift(1)?) && dr.h().agrees(&dr.d().shift(1)?);
        out.push(check("der maps Derivative to Bell", is_derivative, holds));
    }
    out.push(check("flip fixes R iff R is Bell", true, fr.agrees(r) == is_bell));
    {
        let holds = same(&dr, &d.add(&d.derivative().shift(1)?)?, &d.shift(1)?);
        out.push(check("der on Bell is R(d + t d', t d)", is_bell, holds));
    }
    let scalar_pair = h_linear && d.agrees(&Series::constant(h.coeff(1), n));
    out.push(check("der fixes R iff R = R(c, c t)", true, dr.agrees(r) == scalar_pair));
    out.push(check("der(R) = flip(R) iff h = c t", true, dr.agrees(&fr) == h_linear));
    Ok(out)
}

/// The `(n, k)` entries of `der(R)` and `flip(R)` read off directly:
/// `[t^{n-k}] h' d^k` and `[t^{n-k+1}] h d^k`.
pub fn nk_entry_derflip(r: &RiordanArray, n: usize, k: usize) -> Result<(Rat, Rat)> {
    let order = r.order();
    if n > order || k > order {
        return Err(Error::IndexOutOfRange { n, k, order });
    }
    if k > n {
        return Ok((Rat::zero(), Rat::zero()));
    }
    let dk = r.d().pow(k as i64)?;
    let der_gf = r.h().derivative().mul(&dk)?;
    let flip_gf = r.h().mul(&dk)?;
    let (i, j) = (n - k, n - k + 1);
    if i >= der_gf.valid_len() {
        return Err(Error::PrecisionExhausted { needed: i + 1, available: der_gf.valid_len() });
    }
    if j > order || j >= flip_gf.valid_len() {
        return Err(Error::PrecisionExhausted { needed: j + 1, available: flip_gf.valid_len() });
    }
    Ok((der_gf.coeff(i), flip_gf.coeff(j)))
}

/// Row-sum generating functions of `der(R)` and `flip(R)`.
#[derive(Clone, Debug)]
pub struct DerFlipRowSums {
    /// `h' / (1 - t d)`
    pub der_rows: Series,
    /// `h' / (1 + t d)`
    pub der_alt: Series,
    /// `h / (t (1 - t d))`
    pub flip_rows: Series,
    /// `h / (t (1 + t d))`
    pub flip_alt: Series,
}

pub fn derflip_row_sum_gf(r: &RiordanArray) -> Result<DerFlipRowSums> {
    let one = Series::one(r.order());
    let td = r.d().shift(1)?;
    let minus = one.sub(&td)?;
    let plus = one.add(&td)?;
    let hp = r.h().derivative();
    let ht = r.h().shift(-1)?;
    Ok(DerFlipRowSums {
        der_rows: hp.div(&minus)?,
        der_alt: hp.div(&plus)?,
        flip_rows: ht.div(&minus)?,
        flip_alt: ht.div(&plus)?,
    })
}

/// A- and Z-series of `der(R)`, `flip(R)` and `der(der(R))` computed from
/// `d` and `h` of the original array.
#[derive(Clone, Debug)]
pub struct DerAz {
    /// `t / inv(t d)`, shared by `der(R)` and `flip(R)`.
    pub a_der_flip: Series,
    /// `(h'(u) - h'(0)) / (u h'(u))` with `u = inv(t d)`.
    pub z_der: Series,
    /// The same expression with `h/t` in place of `h'`.
    pub z_flip: Series,
    /// `t / inv(t h')`
    pub a_der2: Series,
}

fn z_from(g: &Series, u: &Series) -> Result<Series> {
    let gu = g.compose(u)?;
    let g0 = Series::constant(g.coeff(0), g.order());
    let num = gu.sub(&g0)?.shift(-1)?;
    let den = u.shift(-1)?.mul(&gu)?;
    num.div(&den)
}

pub fn der_az_sequences(r: &RiordanArray) -> Result<DerAz> {
    let u = r.d().shift(1)?.comp_inverse()?;
    let a_der_flip = u.shift(-1)?.reciprocal()?;
    let hp = r.h().derivative();
    let z_der = z_from(&hp, &u)?;
    let z_flip = z_from(&r.h().shift(-1)?, &u)?;
    let a_der2 = hp.shift(1)?.comp_inverse()?.shift(-1)?.reciprocal()?;
    Ok(DerAz { a_der_flip, z_der, z_flip, a_der2 })
}

const STIRLING_MAX: usize = 128;

fn stirling_table() -> &'static Vec<Vec<BigInt>> {
    static TABLE: OnceLock<Vec<Vec<BigInt>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // row m holds S(m, 0..=m)
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for m in 1..=STIRLING_MAX {
            let prev = &rows[m - 1];
            let mut row = vec![BigInt::zero(); m + 1];
            for (i, cell) in row.iter_mut().enumerate().skip(1) {
                let carry = prev.get(i - 1).cloned().unwrap_or_default();
                let stay = prev.get(i).cloned().unwrap_or_default() * BigInt::from(i);
                *cell = stay + carry;
            }
            rows.push(row);
        }
        rows
    })
}

/// Stirling number of the second kind `S(m, i)` for `1 <= i <= m`, from
/// `S(m+1, i+1) = (i+1) S(m, i+1) + S(m, i)`.
pub fn stirling2(m: usize, i: usize) -> Result<BigInt> {
    if i == 0 || i > m || m > STIRLING_MAX {
        return Err(Error::OutOfRange(format!("stirling2({m}, {i}) needs 1 <= i <= m <= {STIRLING_MAX}")));
    }
    Ok(stirling_table()[m][i].clone())
}

/// `der^k` of an Appell array `R(d, t)` in closed form. Both expressions
/// `sum_i S(m+1, i+1) t^i d^{(i)}` and `sum_i d_i (i+1)^m t^i` are built and
/// must agree; `k = 2m` gives `R(that, t)` and `k = 2m + 1` gives
/// `R(1, t * that)`.
pub fn appell_der_closed(r: &RiordanArray, k: usize) -> Result<RiordanArray> {
    let n = r.order();
    if !r.h().agrees(&Series::t(n)) {
        return Err(Error::NotAppell);
    }
    let d = r.d();
    let m = k / 2;

    let mut via_derivatives = Series::zero(n).with_valid_len(d.valid_len());
    let mut di = d.clone();
    for i in 0..=m {
        let term = di.shift(i as i64)?.scale(&rat_big(stirling2(m + 1, i + 1)?));
        via_derivatives = via_derivatives.add(&term)?;
        di = di.derivative();
    }

    let scaled: Vec<Rat> =
        d.coeffs().iter().enumerate().map(|(i, c)| c * rat_big(BigInt::from(i + 1).pow(m as u32))).collect();
    let via_powers = Series::new(n, scaled).with_valid_len(d.valid_len());

    if !via_derivatives.agrees(&via_powers) {
        return Err(Error::CrossCheck(format!("closed forms for der^{k} of an Appell array disagree")));
    }
    if k.is_multiple_of(2) {
        RiordanArray::new(via_powers, Series::t(n))
    } else {
        RiordanArray::new(Series::one(n), via_powers.shift(1)?)
    }
}

/// Sum over compositions of `n` into `k` positive parts of the product of
/// weights, where a part of size `c` weighs `d_{c-1}`.
pub fn weighted_compositions(d: &Seq, n: usize, k: usize) -> Rat {
    fn go(d: &Seq, rem: usize, parts: usize, memo: &mut HashMap<(usize, usize), Rat>) -> Rat {
        if parts == 0 {
            return if rem == 0 { Rat::one() } else { Rat::zero() };
        }
        if rem < parts {
            return Rat::zero();
        }
        if let Some(v) = memo.get(&(rem, parts)) {
            return v.clone();
        }
        let mut total = Rat::zero();
        for c in 1..=rem - (parts - 1) {
            let w = d.term(c as i64 - 1);
            if !w.is_zero() {
                total += w * go(d, rem - c, parts - 1, memo);
            }
        }
        memo.insert((rem, parts), total.clone());
        total
    }
    go(d, n, k, &mut HashMap::new())
}
