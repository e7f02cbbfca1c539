//! Sequence transforms by named arrays, with expected prefixes stored as
//! static data. The expected values were produced once by
//! `bootstrap_prefixes` (run with `--ignored`) and then frozen.

use num::BigInt;

use crate::combinat::{fib, riordan_numbers};
use crate::error::{Error, Result};
use crate::expr::{eval_str, EvalError};
use crate::riordan::RiordanArray;
use crate::series::{rat, Rat, Seq};

pub const PREFIX_LEN: usize = 8;

/// Working order for the transforms; `der^6` loses six coefficients.
const ORDER: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Input {
    Ones,
    FibSquares,
    Fib,
    Delta,
    RiordanNumbers,
    /// `1, 2, 3, ...`
    Naturals,
    PowersOfTwo,
    Odd,
}

impl Input {
    pub fn name(self) -> &'static str {
        match self {
            Input::Ones => "1, 1, 1, ...",
            Input::FibSquares => "F_i^2",
            Input::Fib => "F_i",
            Input::Delta => "1, 0, 0, ...",
            Input::RiordanNumbers => "R_i",
            Input::Naturals => "i + 1",
            Input::PowersOfTwo => "2^i",
            Input::Odd => "2i + 1",
        }
    }

    pub fn terms(self, len: usize) -> Seq {
        let r = riordan_numbers(len);
        Seq::new(
            (0..len)
                .map(|i| match self {
                    Input::Ones => rat(1),
                    Input::FibSquares => Rat::from_integer(fib(i as i64).pow(2)),
                    Input::Fib => Rat::from_integer(fib(i as i64)),
                    Input::Delta => rat(i64::from(i == 0)),
                    Input::RiordanNumbers => Rat::from_integer(r[i].clone()),
                    Input::Naturals => rat(i as i64 + 1),
                    Input::PowersOfTwo => Rat::from_integer(BigInt::from(2).pow(i as u32)),
                    Input::Odd => rat(2 * i as i64 + 1),
                })
                .collect(),
        )
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Row {
    pub row: usize,
    /// The array, in the expression language.
    pub array: &'static str,
    pub input: Input,
    pub expected: [i64; PREFIX_LEN],
}

const NEGFIB_PLUS_TWOFIB: &str = "negfib + twofib";

#[rustfmt::skip]
pub const ROWS: [Row; 27] = [
    Row { row: 1, array: "T", input: Input::Ones, expected: [1, 2, 2, 2, 2, 2, 2, 2] },
    Row { row: 2, array: "T", input: Input::FibSquares, expected: [1, 2, 5, 13, 34, 89, 233, 610] },
    Row { row: 3, array: "fib", input: Input::Ones, expected: [1, 1, 2, 3, 5, 8, 13, 21] },
    Row { row: 4, array: "jac", input: Input::Ones, expected: [1, 1, 3, 5, 11, 21, 43, 85] },
    Row { row: 5, array: "catfib", input: Input::Fib, expected: [1, 2, 5, 14, 42, 132, 429, 1430] },
    Row { row: 6, array: "catfib", input: Input::Delta, expected: [1, 1, 2, 7, 23, 76, 255, 869] },
    Row { row: 7, array: "motzapp", input: Input::Ones, expected: [1, 2, 3, 5, 9, 18, 39, 90] },
    Row { row: 8, array: "motzapp", input: Input::RiordanNumbers, expected: [1, 1, 2, 4, 9, 21, 51, 127] },
    Row { row: 9, array: "negfib", input: Input::Ones, expected: [-1, -1, -2, -3, -5, -8, -13, -21] },
    Row { row: 10, array: "negfib", input: Input::Naturals, expected: [-1, -2, -4, -8, -15, -28, -51, -92] },
    Row { row: 11, array: "twofib", input: Input::Ones, expected: [2, 2, 6, 8, 16, 24, 42, 66] },
    Row { row: 12, array: "twofib", input: Input::Naturals, expected: [2, 4, 10, 20, 40, 76, 142, 260] },
    Row { row: 13, array: NEGFIB_PLUS_TWOFIB, input: Input::Ones, expected: [1, 1, 4, 5, 11, 16, 29, 45] },
    Row { row: 14, array: NEGFIB_PLUS_TWOFIB, input: Input::Naturals, expected: [1, 2, 6, 12, 25, 48, 91, 168] },
    Row { row: 15, array: "flip(der(pas))", input: Input::Ones, expected: [1, 2, 5, 13, 34, 89, 233, 610] },
    Row { row: 16, array: "der(der(pas))", input: Input::Ones, expected: [1, 3, 8, 21, 55, 144, 377, 987] },
    Row { row: 17, array: "der(der(der(pas)))", input: Input::Ones, expected: [1, 5, 16, 45, 121, 320, 841, 2205] },
    Row { row: 18, array: "der(der(der(der(pas))))", input: Input::Ones, expected: [1, 5, 18, 63, 221, 776, 2725, 9569] },
    Row { row: 19, array: "der(der(der(der(der(der(pas))))))", input: Input::Ones, expected: [1, 9, 44, 207, 991, 4752, 22769, 109089] },
    Row { row: 20, array: "der(der(pas)) + der(der(der(pas)))", input: Input::Ones, expected: [2, 8, 24, 66, 176, 464, 1218, 3192] },
    Row { row: 21, array: "der(cat)", input: Input::Ones, expected: [1, 3, 10, 35, 126, 462, 1716, 6435] },
    Row { row: 22, array: "der(cat)", input: Input::PowersOfTwo, expected: [1, 4, 16, 64, 256, 1024, 4096, 16384] },
    Row { row: 23, array: "der(cat)", input: Input::Odd, expected: [1, 5, 20, 77, 294, 1122, 4290, 16445] },
    Row { row: 24, array: "flip(der(cat))", input: Input::Ones, expected: [1, 2, 6, 21, 79, 309, 1237, 5026] },
    Row { row: 25, array: "der(der(cat))", input: Input::Ones, expected: [1, 3, 11, 43, 173, 707, 2917, 12111] },
    Row { row: 26, array: "der(sha)", input: Input::Ones, expected: [1, 5, 21, 84, 330, 1287, 5005, 19448] },
    Row { row: 27, array: "der(sha)", input: Input::PowersOfTwo, expected: [1, 6, 29, 130, 562, 2380, 9949, 41226] },
];

fn array_of(row: &Row) -> Result<RiordanArray> {
    eval_str(row.array, ORDER)
        .and_then(|v| v.into_array().map_err(EvalError::from))
        .map_err(|e| Error::CrossCheck(format!("row {}: {e}", row.row)))
}

/// The transform of the row's input sequence, first `len` terms.
pub fn compute(row: &Row, len: usize) -> Result<Seq> {
    let a = array_of(row)?;
    let out = a.transform(&row.input.terms(ORDER + 1))?;
    if out.len() < len {
        return Err(Error::PrecisionExhausted { needed: len, available: out.len() });
    }
    Ok(out.prefix(len))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[ignore]
    fn bootstrap_prefixes() {
        for row in &ROWS {
            let s = compute(row, PREFIX_LEN).unwrap();
            println!("{:>2} {:<40} {}", row.row, row.array, s);
        }
    }
}
