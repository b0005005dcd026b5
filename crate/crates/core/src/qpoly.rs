//! Tables of the even weight polynomials used by the radial part of the
//! inversion formula.
//!
//! A table at level `n` holds exact rational coefficients `d_j(n,i)` for
//! `0 <= i <= n`, `1 <= j <= n+i`; polynomial `i` is
//! `Q_i(t) = sum_j d_j t^(2j)` on `[0,1]`. There is no constant term, so
//! `Q_i(0) = 0`, and the leading coefficient must be nonzero so that
//! `deg Q_i = 2(n+i)` exactly. The level-2 table ships built in; other
//! levels load from file.
//!
//! Table file format: lines `n i j numerator denominator`, `#` comments,
//! any row order.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact coefficient table for one level `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct QTable {
    n: usize,
    /// coeffs[i][j-1] = d_j(n,i), length n+i per polynomial.
    coeffs: Vec<Vec<BigRational>>,
    /// Same coefficients rounded once to f64 for evaluation.
    coeffs_f64: Vec<Vec<f64>>,
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl QTable {
    /// Build a table from `(i, j, value)` rows, enforcing every invariant.
    pub fn from_rows(n: usize, rows: &[(usize, usize, BigRational)]) -> Result<Self> {
        let mut coeffs: Vec<Vec<Option<BigRational>>> =
            (0..=n).map(|i| vec![None; n + i]).collect();
        for (i, j, value) in rows {
            if *i > n {
                return Err(Error::Validation(vec![format!(
                    "row (i={i}, j={j}): i exceeds table level {n}"
                )]));
            }
            if *j == 0 {
                return Err(Error::Validation(vec![format!(
                    "row (i={i}, j=0): constant term forbidden"
                )]));
            }
            if *j > n + i {
                return Err(Error::Validation(vec![format!(
                    "row (i={i}, j={j}): exceeds degree bound j <= n+i = {}",
                    n + i
                )]));
            }
            let slot = &mut coeffs[*i][*j - 1];
            if slot.is_some() {
                return Err(Error::Validation(vec![format!(
                    "duplicate coefficient (i={i}, j={j})"
                )]));
            }
            *slot = Some(value.clone());
        }
        let mut dense = Vec::with_capacity(n + 1);
        for (i, row) in coeffs.into_iter().enumerate() {
            let top = n + i;
            match row.last() {
                Some(Some(lead)) if !lead.is_zero() => {}
                _ => {
                    return Err(Error::Validation(vec![format!(
                        "degree deficit: leading coefficient (i={i}, j={top}) missing or zero"
                    )]));
                }
            }
            dense.push(
                row.into_iter()
                    .map(|c| c.unwrap_or_else(BigRational::zero))
                    .collect::<Vec<_>>(),
            );
        }
        let coeffs_f64 = dense
            .iter()
            .map(|row| row.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect())
            .collect();
        Ok(QTable {
            n,
            coeffs: dense,
            coeffs_f64,
        })
    }

    /// The exact level-2 table.
    pub fn builtin_n2() -> QTable {
        let rows = vec![
            (0, 1, ratio(105, 2)),
            (0, 2, ratio(-315, 2)),
            (1, 1, ratio(105, 8)),
            (1, 2, ratio(-105, 2)),
            (1, 3, ratio(315, 8)),
            (2, 1, ratio(315, 384)),
            (2, 2, ratio(-315, 128)),
            (2, 3, ratio(315, 128)),
            (2, 4, ratio(-315, 384)),
        ];
        QTable::from_rows(2, &rows).expect("builtin table is valid")
    }

    pub fn level(&self) -> usize {
        self.n
    }

    /// Exact coefficient `d_j(n, i)`; zero for absent intermediate terms.
    pub fn coeff(&self, i: usize, j: usize) -> Result<&BigRational> {
        self.check_i(i)?;
        if j == 0 || j > self.n + i {
            return Err(Error::range(format!(
                "coefficient index j={j} outside 1..={}",
                self.n + i
            )));
        }
        Ok(&self.coeffs[i][j - 1])
    }

    fn check_i(&self, i: usize) -> Result<()> {
        if i > self.n {
            return Err(Error::domain(format!(
                "polynomial index {i} exceeds table level {}",
                self.n
            )));
        }
        Ok(())
    }

    /// Evaluate `Q_i(t)` for `t` in `[0,1]` by Horner's rule in `t^2`.
    pub fn eval(&self, i: usize, t: f64) -> Result<f64> {
        self.check_i(i)?;
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::domain(format!("t={t} outside [0,1]")));
        }
        Ok(self.eval_unchecked(i, t))
    }

    #[inline]
    pub(crate) fn eval_unchecked(&self, i: usize, t: f64) -> f64 {
        let s = t * t;
        let row = &self.coeffs_f64[i];
        let mut acc = 0.0;
        for &d in row.iter().rev() {
            acc = acc * s + d;
        }
        acc * s
    }

    /// Exact evaluation of `Q_i` at a rational argument.
    pub fn eval_exact(&self, i: usize, t: &BigRational) -> Result<BigRational> {
        self.check_i(i)?;
        if t.is_negative() || t > &BigRational::from_integer(BigInt::from(1)) {
            return Err(Error::domain(format!("t={t} outside [0,1]")));
        }
        let s = t * t;
        let mut acc = BigRational::zero();
        for d in self.coeffs[i].iter().rev() {
            acc = acc * &s + d;
        }
        Ok(acc * &s)
    }

    /// Exact `integral_0^1 Q_i(s) * s^c ds = sum_j d_j / (2j + c + 1)`.
    pub fn moment_power(&self, i: usize, c: u32) -> Result<BigRational> {
        self.check_i(i)?;
        let mut acc = BigRational::zero();
        for (jm1, d) in self.coeffs[i].iter().enumerate() {
            let denom = BigInt::from(2 * (jm1 as u32 + 1) + c + 1);
            acc += d / BigRational::from_integer(denom);
        }
        Ok(acc)
    }

    /// Exact `integral_0^1 Q_i(s) * s^(2m+1) ds`.
    pub fn q_moment(&self, i: usize, m: u32) -> Result<BigRational> {
        self.moment_power(i, 2 * m + 1)
    }

    /// Render in the table file format, rows sorted by (i, j).
    pub fn to_file_string(&self) -> String {
        let mut out = String::from("# q-table: n i j numerator denominator\n");
        for (i, row) in self.coeffs.iter().enumerate() {
            for (jm1, d) in row.iter().enumerate() {
                if d.is_zero() && jm1 + 1 < row.len() {
                    continue;
                }
                let _ = writeln!(out, "{} {} {} {} {}", self.n, i, jm1 + 1, d.numer(), d.denom());
            }
        }
        out
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_file_string())?;
        Ok(())
    }

    pub fn parse(text: &str) -> Result<QTable> {
        let mut rows: Vec<(usize, usize, BigRational)> = Vec::new();
        let mut level: Option<usize> = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 5 {
                return Err(Error::parse(format!(
                    "line {}: want `n i j numerator denominator`, got `{line}`",
                    lineno + 1
                )));
            }
            let n: usize = toks[0]
                .parse()
                .map_err(|_| Error::parse(format!("line {}: bad n `{}`", lineno + 1, toks[0])))?;
            let i: usize = toks[1]
                .parse()
                .map_err(|_| Error::parse(format!("line {}: bad i `{}`", lineno + 1, toks[1])))?;
            let j: usize = toks[2]
                .parse()
                .map_err(|_| Error::parse(format!("line {}: bad j `{}`", lineno + 1, toks[2])))?;
            let num: BigInt = toks[3].parse().map_err(|_| {
                Error::parse(format!("line {}: bad numerator `{}`", lineno + 1, toks[3]))
            })?;
            let den: BigInt = toks[4].parse().map_err(|_| {
                Error::parse(format!("line {}: bad denominator `{}`", lineno + 1, toks[4]))
            })?;
            if den.is_zero() {
                return Err(Error::parse(format!("line {}: zero denominator", lineno + 1)));
            }
            match level {
                None => level = Some(n),
                Some(l) if l != n => {
                    return Err(Error::Validation(vec![format!(
                        "line {}: mixed levels {l} and {n} in one table",
                        lineno + 1
                    )]));
                }
                _ => {}
            }
            rows.push((i, j, BigRational::new(num, den)));
        }
        let n = level.ok_or_else(|| Error::parse("table file has no coefficient rows"))?;
        QTable::from_rows(n, &rows)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<QTable> {
        QTable::parse(&fs::read_to_string(path)?)
    }
}

/// The mean-term weight `2n^2 + 3n + 1` of the level-`n` approximant.
pub fn level_weight(n: usize) -> u64 {
    let n = n as u64;
    let w = 2 * n * n + 3 * n + 1;
    debug_assert_eq!(w, (n + 1) * (2 * n + 1));
    w
}
