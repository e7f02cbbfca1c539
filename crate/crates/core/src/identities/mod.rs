//! Numeric regression suite: each registered identity evaluates both sides
//! exactly over a range of `n`, and where a bijective argument exists, also
//! compares against an enumeration oracle.

pub mod oracles;
pub mod table2;

use std::fmt::Display;

use num::{BigInt, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog;
use crate::combinat::{
    binom, catalan_number, fib, fib_std, lucas, motzkin_numbers, pow_i, riordan_numbers, sign,
};
use crate::derflip::{der, der_k, flip};
use crate::error::{Error, Result};
use crate::expr::parse_series;
use crate::riordan::RiordanArray;
use crate::series::{gen_binomial, rat, ratio, Rat, Seq, Series};
use crate::sums::try_add;

use oracles::Pattern;

pub const DEFAULT_N_MAX: i64 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub n: i64,
    pub label: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub n_min: i64,
    pub n_max: i64,
    pub status: Status,
    /// Number of individual equalities evaluated.
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<Failure>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Accumulates comparisons for one identity; keeps the first mismatch.
pub struct Ctx {
    n_min: i64,
    n_max: i64,
    checked: usize,
    failure: Option<Failure>,
    notes: Vec<String>,
}

impl Ctx {
    fn new(n_min: i64, n_max: i64) -> Ctx {
        Ctx { n_min, n_max, checked: 0, failure: None, notes: Vec::new() }
    }

    fn range(&self) -> std::ops::RangeInclusive<i64> {
        self.n_min..=self.n_max
    }

    /// Array working order large enough for rows up to `n_max`.
    fn order(&self) -> usize {
        (self.n_max.max(0) as usize + 8).max(12)
    }

    fn eq(&mut self, n: i64, label: impl Display, lhs: impl Into<Rat>, rhs: impl Into<Rat>) {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        self.checked += 1;
        if lhs != rhs && self.failure.is_none() {
            self.failure =
                Some(Failure { n, label: label.to_string(), lhs: lhs.to_string(), rhs: rhs.to_string() });
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn finish(self, id: &str, outcome: Result<()>) -> IdentityReport {
        let mut notes = self.notes;
        let mut status = if self.failure.is_some() { Status::Fail } else { Status::Pass };
        if let Err(e) = outcome {
            status = Status::Fail;
            notes.push(format!("error: {e}"));
        }
        IdentityReport {
            id: id.to_string(),
            n_min: self.n_min,
            n_max: self.n_max,
            status,
            checked: self.checked,
            first_failure: self.failure,
            notes,
        }
    }
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

fn array(name: &str, order: usize) -> Result<RiordanArray> {
    catalog::array(name, order)
}

fn gf(text: &str, order: usize) -> Result<Series> {
    parse_series(text, order).map_err(|e| Error::CrossCheck(format!("{text}: {e}")))
}

struct Entry {
    id: &'static str,
    n_min: i64,
    /// Largest `n` the checker accepts; requests above are clamped.
    cap: i64,
    run: fn(&mut Ctx) -> Result<()>,
}

const REGISTRY: &[Entry] = &[
    Entry { id: "fibo", n_min: 0, cap: 200, run: fibo },
    Entry { id: "gen_prop", n_min: 0, cap: 60, run: gen_prop },
    Entry { id: "cat_fib", n_min: 3, cap: 200, run: cat_fib },
    Entry { id: "riordan_motzkin", n_min: 1, cap: 200, run: riordan_motzkin },
    Entry { id: "fib_luc", n_min: 1, cap: 60, run: fib_luc },
    Entry { id: "fib_conv", n_min: 1, cap: 60, run: fib_conv },
    Entry { id: "comps_12", n_min: 0, cap: 20, run: comps_12 },
    Entry { id: "jacobsthal_derangements", n_min: 0, cap: 60, run: jacobsthal_derangements },
    Entry { id: "weak_comp_catalan", n_min: 0, cap: 14, run: weak_comp_catalan },
    Entry { id: "power_of_4", n_min: 0, cap: 200, run: power_of_4 },
    Entry { id: "odds_to_cat", n_min: 0, cap: 200, run: odds_to_cat },
    Entry { id: "pure_descents", n_min: 0, cap: 200, run: pure_descents },
    Entry { id: "lattice_paths", n_min: 0, cap: 40, run: lattice_paths },
    Entry { id: "avoiding", n_min: 0, cap: 40, run: avoiding },
    Entry { id: "weak_comp_catalan2", n_min: 0, cap: 12, run: weak_comp_catalan2 },
    Entry { id: "der_sha", n_min: 0, cap: 200, run: der_sha },
    Entry { id: "antichains", n_min: 0, cap: 40, run: antichains },
    Entry { id: "table2", n_min: 0, cap: table2::PREFIX_LEN as i64 - 1, run: table2_rows },
    Entry { id: "row_sum_gfs", n_min: 0, cap: 40, run: row_sum_gfs },
];

pub fn names() -> Vec<&'static str> {
    REGISTRY.iter().map(|e| e.id).collect()
}

fn run_entry(e: &Entry, n_max: i64) -> IdentityReport {
    let mut ctx = Ctx::new(e.n_min, n_max.min(e.cap));
    let outcome = (e.run)(&mut ctx);
    ctx.finish(e.id, outcome)
}

/// Runs one identity over `n_min..=min(n_max, cap)`.
pub fn check(id: &str, n_max: i64) -> Result<IdentityReport> {
    let e = REGISTRY.iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownName(id.to_string()))?;
    Ok(run_entry(e, n_max))
}

/// Runs every registered identity in parallel; the reports keep registry
/// order.
pub fn run_all(n_max: i64) -> Vec<IdentityReport> {
    REGISTRY.par_iter().map(|e| run_entry(e, n_max)).collect()
}

pub fn all_passed(reports: &[IdentityReport]) -> bool {
    reports.iter().all(IdentityReport::passed)
}

/// `f_n^2 + f_{n+1}^2 = f_{2n+1}` for a caller-supplied Fibonacci function
/// (`f_0 = 0, f_1 = 1`).
pub fn fibo_with(f: &dyn Fn(i64) -> BigInt, n_max: i64) -> IdentityReport {
    let mut ctx = Ctx::new(0, n_max);
    for n in ctx.range() {
        let lhs = f(n).pow(2) + f(n + 1).pow(2);
        ctx.eq(n, "f_n^2 + f_{n+1}^2 = f_{2n+1}", lhs, f(2 * n + 1));
    }
    ctx.finish("fibo", Ok(()))
}

fn fibo(ctx: &mut Ctx) -> Result<()> {
    let r = fibo_with(&fib_std, ctx.n_max);
    ctx.checked += r.checked;
    ctx.failure = r.first_failure;
    ctx.note("f_0 = 0, f_1 = 1; with F_n = f_{n+1} the statement is the same identity shifted by one");
    Ok(())
}

/// `sum_i f_{n-i} sum_j p_j g_{i-j} = g_n` where `f = 1/p`, for seeded
/// random polynomials `p` and sequences `g`, and for `p = 1 - t - t^2` with
/// `g` the shifted Catalan numbers.
fn gen_prop(ctx: &mut Ctx) -> Result<()> {
    let len = (ctx.n_max.max(0) + 1) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a09_e667);
    let mut cases: Vec<(Vec<Rat>, Vec<Rat>)> = Vec::new();
    for _ in 0..16 {
        let deg = rng.gen_range(1..=4);
        let mut p: Vec<Rat> = (0..=deg).map(|_| rat(rng.gen_range(-3..=3))).collect();
        if p[0].is_zero() {
            p[0] = rat(1);
        }
        let mut g: Vec<Rat> = (0..len).map(|_| ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3))).collect();
        if g[0].is_zero() {
            g[0] = rat(2);
        }
        cases.push((p, g));
    }
    let cbar: Vec<Rat> = (0..len).map(|n| Rat::from_integer(catalan_number(n as i64 + 1))).collect();
    cases.push((vec![rat(1), rat(-1), rat(-1)], cbar));

    for (case, (p, g)) in cases.iter().enumerate() {
        // f = 1/p by the recurrence p_0 f_n = [n = 0] - sum_{j>=1} p_j f_{n-j}
        let mut f: Vec<Rat> = Vec::with_capacity(len);
        for n in 0..len {
            let mut acc = if n == 0 { rat(1) } else { rat(0) };
            for j in 1..p.len().min(n + 1) {
                acc -= &p[j] * &f[n - j];
            }
            f.push(acc / &p[0]);
        }
        let g_at = |k: i64| if k < 0 { rat(0) } else { g[k as usize].clone() };
        for n in ctx.range() {
            let mut lhs = rat(0);
            for i in 0..=n {
                let inner: Rat = (0..p.len()).map(|j| &p[j] * g_at(i - j as i64)).sum();
                lhs += &f[(n - i) as usize] * inner;
            }
            ctx.eq(n, format!("case {case}"), lhs, g_at(n));
        }
    }
    ctx.note("16 seeded random (p, g) pairs plus p = 1 - t - t^2 with g the shifted Catalan numbers");
    Ok(())
}

/// With `f` the standard Fibonacci numbers and `C` the Catalan numbers:
/// `sum_{i=3}^n [C_i - C_{i-1} - C_{i-2}] f_{n+1-i} = C_n - f_n - f_{n-1}`,
/// which counts Dyck paths with a prime factor other than `UD` and `UUDD`.
fn cat_fib(ctx: &mut Ctx) -> Result<()> {
    let c = |i: i64| catalan_number(i);
    let side = |n: i64| -> (BigInt, BigInt) {
        let lhs = (3..=n).map(|i| (c(i) - c(i - 1) - c(i - 2)) * fib_std(n + 1 - i)).sum();
        (lhs, c(n) - fib_std(n) - fib_std(n - 1))
    };
    for n in ctx.range() {
        let (lhs, rhs) = side(n);
        ctx.eq(n, "sum = C_n - f_n - f_{n-1}", lhs, rhs.clone());
        if n as usize <= 12 {
            let count = oracles::dyck_paths_with_large_prime(n as usize)?;
            ctx.eq(n, "Dyck path enumeration", big(count), rhs);
        }
    }
    let small: Vec<String> = (0..3)
        .map(|n| {
            let (l, r) = side(n);
            format!("n={n}: {} (lhs {l}, rhs {r})", if l == r { "holds" } else { "fails" })
        })
        .collect();
    ctx.note(format!("below the summation start, with f_{{-1}} = 1: {}", small.join("; ")));
    let cbar = |i: i64| catalan_number(i + 1);
    let (l, r) = ((cbar(3) - cbar(2) - cbar(1)) * fib(1), cbar(3) - fib(3) - fib(2));
    ctx.note(format!(
        "with shifted Catalan numbers and F_0 = F_1 = 1 in place of C and f, n=3 gives {l} vs {r}; the unshifted form is the one checked"
    ));
    Ok(())
}

/// `sum_{i=1}^n R_{i-1} M_{n-i} = M_n - R_n`: Motzkin paths with at least
/// one level step on the axis, split at the first one.
fn riordan_motzkin(ctx: &mut Ctx) -> Result<()> {
    let len = ctx.n_max.max(1) as usize + 1;
    let m = motzkin_numbers(len);
    let r = riordan_numbers(len);
    for n in ctx.range() {
        let nu = n as usize;
        let lhs: BigInt = (1..=nu).map(|i| &r[i - 1] * &m[nu - i]).sum();
        let rhs = &m[nu] - &r[nu];
        ctx.eq(n, "sum R_{i-1} M_{n-i} = M_n - R_n", lhs, rhs.clone());
        if nu <= 12 {
            let all = oracles::motzkin_paths(nu, true)?;
            let none = oracles::motzkin_paths(nu, false)?;
            ctx.eq(n, "Motzkin path count", big(all), m[nu].clone());
            ctx.eq(n, "Riordan path count", big(none), r[nu].clone());
            ctx.eq(n, "paths with a level step on the axis", big(all - none), rhs);
        }
    }
    ctx.note("summation over i = 1..n; starting at i = 0 would reference R_{-1}");
    Ok(())
}

/// `2F_{i-1} + F_i = L_{i+1}` with `F_0 = F_1 = 1`, `L_0 = 2, L_1 = 1`, and
/// the row sums of the two Fibonacci arrays and their sum.
fn fib_luc(ctx: &mut Ctx) -> Result<()> {
    let order = ctx.order();
    let r = array("negfib", order)?;
    let s = array("twofib", order)?;
    let rs = try_add(&r, &s).map_err(|e| Error::CrossCheck(e.to_string()))?;
    let (r_rows, s_rows, sum_rows) = (r.row_sums()?, s.row_sums()?, rs.row_sums()?);
    for i in ctx.range() {
        ctx.eq(i, "2F_{i-1} + F_i = L_{i+1}", int(2) * fib(i - 1) + fib(i), lucas(i + 1));
        ctx.eq(i, "row sums of negfib = -F_i", r_rows.term(i), -fib(i));
        let alt = int(1) + sign(i + 1);
        ctx.eq(i, "row sums of twofib", s_rows.term(i), int(2) * fib(i + 1) - &alt);
        ctx.eq(i, "row sums of negfib + twofib", sum_rows.term(i), lucas(i + 1) - alt);
    }
    Ok(())
}

/// `sum_k F_k F_{n-k} = ((3n+5) F_n + (n+1) F_{n-1}) / 5` with `F_0 = F_1 = 1`,
/// and the transforms of `(i+1)` by the two Fibonacci arrays.
fn fib_conv(ctx: &mut Ctx) -> Result<()> {
    let order = ctx.order();
    let r = array("negfib", order)?;
    let s = array("twofib", order)?;
    let rs = try_add(&r, &s).map_err(|e| Error::CrossCheck(e.to_string()))?;
    let nat = Seq::new((1..=order as i64 + 1).map(rat).collect());
    let (rt, st, sumt) = (r.transform(&nat)?, s.transform(&nat)?, rs.transform(&nat)?);
    for n in ctx.range() {
        let conv: BigInt = (0..=n).map(|k| fib(k) * fib(n - k)).sum();
        let rhs = Rat::new(int(3 * n + 5) * fib(n) + int(n + 1) * fib(n - 1), int(5));
        ctx.eq(n, "Fibonacci self-convolution", conv.clone(), rhs);
        let neg = Rat::new(-(int(n + 5) * fib(n) + int(2 * (n + 1)) * fib(n - 1)), int(5));
        ctx.eq(n, "negfib applied to (i+1)", rt.term(n), neg);
        ctx.eq(n, "twofib applied to (i+1)", st.term(n), int(2) * conv);
        ctx.eq(n, "(negfib + twofib) applied to (i+1)", sumt.term(n), int(n + 1) * fib(n));
    }
    ctx.note("F_0 = F_1 = 1 and F_{-1} = 0; n starts at 1");
    Ok(())
}

/// `a_n = sum_k c^{n-k} binom(k, n-k)` counts compositions of `n` into parts
/// 1 and 2 with `c` colours of 2, and is the row sum of `R(1, t + c t^2)`.
fn comps_12(ctx: &mut Ctx) -> Result<()> {
    let order = ctx.order();
    for c in 1..=3i64 {
        let h = Series::from_ints(order, &[0, 1, c]);
        let rows = RiordanArray::new(Series::one(order), h)?.row_sums()?;
        for n in ctx.range() {
            let closed: BigInt = (0..=n).map(|k| pow_i(c, (n - k) as u64) * binom(k, n - k)).sum();
            let mut oracle = 0u64;
            for k in 0..=n as usize {
                oracle += oracles::compositions_colored(n as usize, k, c as u64)?;
            }
            ctx.eq(n, format!("c={c} enumeration"), big(oracle), closed.clone());
            ctx.eq(n, format!("c={c} row sum of R(1, t + c t^2)"), rows.term(n), closed);
        }
    }
    Ok(())
}

/// Jacobsthal row sums `(2^{n+1} + (-1)^n)/3 = sum_k 2^{n-k} binom(k, n-k)`,
/// equal to the number of derangements of `n+2` letters avoiding 231 and 132.
fn jacobsthal_derangements(ctx: &mut Ctx) -> Result<()> {
    let jac = array("jac", ctx.order())?.row_sums()?;
    let pats: [&Pattern; 2] = [&[2, 3, 1], &[1, 3, 2]];
    for n in ctx.range() {
        let closed = Rat::new(pow_i(2, n as u64 + 1) + sign(n), int(3));
        let sum: BigInt = (0..=n).map(|k| pow_i(2, (n - k) as u64) * binom(k, n - k)).sum();
        ctx.eq(n, "row sum of jac", jac.term(n), closed.clone());
        ctx.eq(n, "binomial sum", sum, closed.clone());
        if n + 2 <= oracles::DERANGEMENT_CAP as i64 {
            let count = oracles::derangements_avoiding(n as usize + 2, &pats)?;
            ctx.eq(n, "derangement enumeration", big(count), closed);
        }
    }
    Ok(())
}

/// Sum over weak compositions `(i_0, ..., i_m)` of `total` of
/// `binom(2 i_0, i_0) C_{i_1} ... C_{i_m}`.
fn central_catalan_weighted(total: usize, parts: usize) -> BigInt {
    let mut acc = BigInt::zero();
    oracles::each_weak_composition(total, parts, &mut |w| {
        let mut term = binom(2 * w[0] as i64, w[0] as i64);
        for &i in &w[1..] {
            term *= catalan_number(i as i64);
        }
        acc += term;
    });
    acc
}

/// Weak compositions of `n - k` into `k + 1` parts, weighted by one central
/// binomial and `k` Catalan numbers, give `binom(2n - k, n)`, the entries of
/// `der(cat)`.
fn weak_comp_catalan(ctx: &mut Ctx) -> Result<()> {
    let dc = der(&array("cat", ctx.order())?)?;
    for n in ctx.range() {
        for k in 0..=n.min(4) {
            let lhs = central_catalan_weighted((n - k) as usize, k as usize + 1);
            let rhs = binom(2 * n - k, n);
            ctx.eq(n, format!("k={k} enumeration"), lhs, rhs.clone());
            ctx.eq(n, format!("k={k} der(cat) entry"), dc.entry(n as usize, k as usize)?, rhs);
        }
    }
    Ok(())
}

/// `sum_k 2^k binom(2n-k, n-k) = 4^n`, and `sum_k (2k+1) sha_{n,k} = 4^n`.
fn power_of_4(ctx: &mut Ctx) -> Result<()> {
    for n in ctx.range() {
        let four = pow_i(4, n as u64);
        let lhs: BigInt = (0..=n).map(|k| pow_i(2, k as u64) * binom(2 * n - k, n - k)).sum();
        ctx.eq(n, "sum 2^k binom(2n-k, n-k)", lhs, four.clone());
        let sha: Rat = (0..=n)
            .map(|k| Rat::new(int((2 * k + 1).pow(2)) * binom(2 * n + 1, n - k), int(2 * n + 1)))
            .sum();
        ctx.eq(n, "sum (2k+1) sha_{n,k}", sha, four);
    }
    let n = 1;
    let alt: BigInt = (0..=n).map(|k| int(2 * k + 1) * binom(2 * n - k + 2, n - k)).sum();
    ctx.note(format!(
        "the form sum (2k+1) binom(2n-k+2, n-k) does not equal 4^n (n=1 gives {alt}); the shapiro entries (2k+1)/(2n+1) binom(2n+1, n-k) are used instead"
    ));
    Ok(())
}

fn odds_to_cat(ctx: &mut Ctx) -> Result<()> {
    for n in ctx.range() {
        let lhs: BigInt = (0..=n).map(|k| int(k + 1) * binom(2 * n - k, n - k)).sum();
        ctx.eq(n, "sum (k+1) binom(2n-k, n-k)", lhs, int(n + 1) * catalan_number(n + 1));
    }
    Ok(())
}

fn pure_descents(ctx: &mut Ctx) -> Result<()> {
    for n in ctx.range() {
        let lhs: BigInt = (0..=n).map(|k| int(2 * k + 1) * binom(2 * n - k, n - k)).sum();
        let rhs = Rat::new(int(3 * n + 2) * binom(2 * n + 1, n + 1), int(n + 2));
        ctx.eq(n, "sum (2k+1) binom(2n-k, n-k)", lhs, rhs);
    }
    Ok(())
}

/// `4^{n-k} binom(n - (k+1)/2, n-k)`
fn lattice_closed(n: i64, k: i64) -> Rat {
    let top = rat(n) - ratio(k + 1, 2);
    gen_binomial(&top, (n - k) as usize) * Rat::from_integer(pow_i(4, (n - k) as u64))
}

/// `der(der(cat))` entries against the half-integer binomial form and a
/// lattice-path enumeration with diagonal steps allowed only on the diagonal.
fn lattice_paths(ctx: &mut Ctx) -> Result<()> {
    let d2 = der_k(&array("cat", ctx.order())?, 2)?;
    for n in ctx.range() {
        for k in 0..=n {
            let closed = lattice_closed(n, k);
            ctx.eq(n, format!("k={k} der^2(cat) entry"), d2.entry(n as usize, k as usize)?, closed.clone());
            if n <= 9 {
                let count = oracles::lattice_paths_diag(n as usize, k as usize)?;
                ctx.eq(n, format!("k={k} path enumeration"), big(count), closed);
            }
        }
    }
    Ok(())
}

/// Permutations of `n+1` avoiding {3241, 3421, 4321}: the lattice-path sum
/// form, the row sums of `flip(der(cat))`, and enumeration.
fn avoiding(ctx: &mut Ctx) -> Result<()> {
    let fd = flip(&der(&array("cat", ctx.order())?)?)?.row_sums()?;
    let pats: [&Pattern; 3] = [&[3, 2, 4, 1], &[3, 4, 2, 1], &[4, 3, 2, 1]];
    let row = |i: i64| -> Rat { (0..=i).map(|j| lattice_closed(i, j)).sum() };
    for n in ctx.range() {
        let mut b = rat(2) * row(n);
        for i in 0..=n {
            b -= Rat::from_integer(catalan_number(n - i)) * row(i);
        }
        ctx.eq(n, "row sum of flip(der(cat))", fd.term(n), b.clone());
        if n < 8 {
            let count = oracles::permutations_avoiding(n as usize + 1, &pats)?;
            ctx.eq(n, "pattern-avoidance enumeration", big(count), b);
        }
    }
    Ok(())
}

/// Weak compositions of `n - k` into `k + 3` parts, weighted by one central
/// binomial and `k + 2` Catalan numbers, give `binom(2n-k+2, n+2)`, the
/// entries of `der(sha)`.
fn weak_comp_catalan2(ctx: &mut Ctx) -> Result<()> {
    let ds = der(&array("sha", ctx.order())?)?;
    for n in ctx.range() {
        for k in 0..=n.min(3) {
            let lhs = central_catalan_weighted((n - k) as usize, k as usize + 3);
            let rhs = binom(2 * n - k + 2, n + 2);
            ctx.eq(n, format!("k={k} enumeration"), lhs, rhs.clone());
            ctx.eq(n, format!("k={k} der(sha) entry"), ds.entry(n as usize, k as usize)?, rhs);
        }
    }
    let lhs = central_catalan_weighted(1, 3);
    let rhs = int(2) * binom(2, 2);
    ctx.note(format!(
        "compositions of n-k+1 against 2 binom(2n-k+2, n+2) fail at n=k=0 ({lhs} vs {rhs}); compositions of n-k against binom(2n-k+2, n+2) are checked"
    ));
    Ok(())
}

fn der_sha(ctx: &mut Ctx) -> Result<()> {
    for n in ctx.range() {
        let lhs: BigInt = (0..=n).map(|k| pow_i(2, k as u64) * binom(2 * n - k + 2, n - k)).sum();
        ctx.eq(n, "sum 2^k binom(2n-k+2, n-k)", lhs, pow_i(4, n as u64 + 1) - binom(2 * n + 3, n + 1));
    }
    Ok(())
}

/// Two binomial sums for the antichain counts, and the transform of the
/// Catalan numbers by `sha`.
fn antichains(ctx: &mut Ctx) -> Result<()> {
    let order = ctx.order();
    let cat = Seq::new((0..=order as i64).map(|i| Rat::from_integer(catalan_number(i))).collect());
    let tr = array("sha", order)?.transform(&cat)?;
    for n in ctx.range() {
        let a: Rat = (0..=n)
            .map(|k| Rat::new(int(2 * k + 1) * binom(2 * n, n - k) * catalan_number(k), int(n + k + 1)))
            .sum();
        let b: Rat =
            (0..=n).map(|k| Rat::new(binom(2 * n + 1, n - k) * binom(2 * k + 1, k), int(2 * n + 1))).sum();
        ctx.eq(n, "two binomial forms", a.clone(), b);
        ctx.eq(n, "sha applied to Catalan numbers", tr.term(n), a);
    }
    Ok(())
}

fn table2_rows(ctx: &mut Ctx) -> Result<()> {
    for row in &table2::ROWS {
        let got = table2::compute(row, table2::PREFIX_LEN)?;
        for n in ctx.range() {
            ctx.eq(
                n,
                format!("row {} ({} on {})", row.row, row.array, row.input.name()),
                got.term(n),
                rat(row.expected[n as usize]),
            );
        }
    }
    ctx.note(format!("{} rows, stored prefixes of {} terms", table2::ROWS.len(), table2::PREFIX_LEN));
    Ok(())
}

/// `((1-t) A_i + A_{i+1}) / ((1-t) ((1-t)^{i+1} - t A_i))`, the row-sum
/// generating function of `der^{2i} + der^{2i+1}` of the Pascal array.
fn paired_der_row_gf(i: usize, order: usize) -> Result<Series> {
    let one_minus_t = Series::from_ints(order, &[1, -1]);
    let a_i = catalog::eulerian(i).to_series(1, order);
    let a_next = catalog::eulerian(i + 1).to_series(1, order);
    let num = one_minus_t.mul(&a_i)?.add(&a_next)?;
    let inner = one_minus_t.pow(i as i64 + 1)?.sub(&a_i.shift(1)?)?;
    num.div(&one_minus_t.mul(&inner)?)
}

/// Row-sum and alternating row-sum generating functions of the derived
/// Pascal, `T`, and Catalan arrays.
fn row_sum_gfs(ctx: &mut Ctx) -> Result<()> {
    let order = ctx.order();
    let pas = array("pas", order)?;
    let t = array("T", order)?;
    let cat = array("cat", order)?;
    let dp = |k: usize| der_k(&pas, k);
    let mut claims: Vec<(String, Series, Series)> = vec![
        ("rows of fib".into(), array("fib", order)?.row_sum_gf()?, gf("1/(1 - t - t^2)", order)?),
        ("rows of der^2(T)".into(), der_k(&t, 2)?.row_sum_gf()?, gf("(1 + 2*t)/(1 - t)", order)?),
        ("rows of der^3(T)".into(), der_k(&t, 3)?.row_sum_gf()?, gf("1/(1 - t - 2*t^2)", order)?),
        ("rows of der^2(pas)".into(), dp(2)?.row_sum_gf()?, gf("1/(1 - 3*t + t^2)", order)?),
        (
            "rows of flip(der(pas))".into(),
            flip(&dp(1)?)?.row_sum_gf()?,
            gf("(1 - t)/(1 - 3*t + t^2)", order)?,
        ),
        ("alternating rows of pas".into(), pas.alt_row_sum_gf()?, gf("1", order)?),
        ("alternating rows of der(pas)".into(), dp(1)?.alt_row_sum_gf()?, gf("1/(1 - t)", order)?),
        ("alternating rows of der^2(pas)".into(), dp(2)?.alt_row_sum_gf()?, gf("(1 + t)/(1 + t^3)", order)?),
        (
            "alternating rows of flip(der(pas))".into(),
            flip(&dp(1)?)?.alt_row_sum_gf()?,
            gf("(1 - t^2)/(1 + t^3)", order)?,
        ),
        ("rows of der^3(pas)".into(), dp(3)?.row_sum_gf()?, gf("(1 + t)/(1 - 4*t + 4*t^2 - t^3)", order)?),
        ("rows of der^4(pas)".into(), dp(4)?.row_sum_gf()?, gf("(1 + t)/(1 - 4*t + 2*t^2 - t^3)", order)?),
        (
            "rows of der^6(pas)".into(),
            dp(6)?.row_sum_gf()?,
            gf("(1 + 4*t + t^2)/(1 - 5*t + 2*t^2 - 5*t^3 + t^4)", order)?,
        ),
        ("rows of der(cat)".into(), der(&cat)?.row_sum_gf()?, gf("C/sqrt(1 - 4*t)", order)?),
        (
            "rows of flip(der(cat))".into(),
            flip(&der(&cat)?)?.row_sum_gf()?,
            gf("(2 - C)/(sqrt(1 - 4*t) - t)", order)?,
        ),
    ];
    for i in 1..=3 {
        let sum = try_add(&dp(2 * i)?, &dp(2 * i + 1)?).map_err(|e| Error::CrossCheck(e.to_string()))?;
        claims.push((
            format!("rows of der^{}(pas) + der^{}(pas)", 2 * i, 2 * i + 1),
            sum.row_sum_gf()?,
            paired_der_row_gf(i, order)?,
        ));
    }
    let d23 = try_add(&dp(2)?, &dp(3)?).map_err(|e| Error::CrossCheck(e.to_string()))?;
    claims.push((
        "rows of der^2(pas) + der^3(pas)".into(),
        d23.row_sum_gf()?,
        gf("2/(1 - 4*t + 4*t^2 - t^3)", order)?,
    ));
    for m in 1..=3u32 {
        let powers = Seq::with_offset((1..=order as i64 + 1).map(|k| rat(k.pow(m))).collect(), 1);
        let b = catalog::invert_transform(&powers)?;
        let shifted = Series::new(order, (0..=order).map(|j| b.term(j as i64 + 1)));
        claims.push((
            format!("rows of der^{}(pas) = shifted INVERT of k^{m}", 2 * m),
            dp(2 * m as usize)?.row_sum_gf()?,
            shifted,
        ));
    }

    for (label, got, want) in &claims {
        let len = got.valid_len().min(want.valid_len()) as i64;
        for n in ctx.range() {
            if n >= len {
                return Err(Error::PrecisionExhausted { needed: n as usize + 1, available: len as usize });
            }
            ctx.eq(n, label, got.coeff(n as usize), want.coeff(n as usize));
        }
    }
    for n in ctx.range() {
        let want = Rat::new(binom(2 * n + 2, n + 1), int(2));
        ctx.eq(n, "n-th row sum of der(cat) = binom(2n+2, n+1)/2", claims[12].1.coeff(n as usize), want);
    }
    let wrong = gf("1/(1 - 3*t + 2*t^2)", order)?;
    ctx.note(format!(
        "the row sums of der^2(pas) are 1, 3, 8, 21, ...; 1/(1 - 3t + 2t^2) gives 1, 3, {}, {}, ... and is not checked here",
        wrong.coeff(2),
        wrong.coeff(3)
    ));
    ctx.note("der^{2i} + der^{2i+1} row sums use the denominator (1-t)((1-t)^{i+1} - t A_i)");
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_values() {
        let r = check("power_of_4", 20).unwrap();
        assert!(r.passed(), "{r:?}");
        let lhs: BigInt = (0..=2).map(|k| pow_i(2, k as u64) * binom(4 - k, 2 - k)).sum();
        assert_eq!(lhs, int(16));
        assert!(check("fibo", 30).unwrap().passed());
        assert_eq!(oracles::lattice_paths_diag(2, 0).unwrap(), 6);
        assert!(check("lattice_paths", 9).unwrap().passed());
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(check("nope", 5), Err(Error::UnknownName(_))));
    }

    #[test]
    fn injected_fibonacci_fault() {
        let bad = |n: i64| if n == 2 { int(2) } else { fib_std(n) };
        let r = fibo_with(&bad, 20);
        assert_eq!(r.status, Status::Fail);
        let f = r.first_failure.clone().unwrap();
        assert_eq!(f.n, 1);
        assert_eq!((f.lhs.as_str(), f.rhs.as_str()), ("5", "2"));
        assert!(!all_passed(&[r]));
    }

    #[test]
    fn degenerate_range() {
        let reports = run_all(0);
        assert_eq!(reports.len(), REGISTRY.len());
        assert!(all_passed(&reports), "{reports:#?}");
    }

    #[test]
    fn report_json() {
        let r = check("odds_to_cat", 5).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json_line()).unwrap();
        assert_eq!(v["id"], "odds_to_cat");
        assert_eq!(v["status"], "pass");
        assert_eq!(v["n_max"], 5);
        assert!(v.get("first_failure").is_none());
    }

    #[test]
    fn caps_clamp_the_range() {
        let r = check("weak_comp_catalan", 30).unwrap();
        assert_eq!(r.n_max, 14);
        assert!(r.passed());
    }
}
