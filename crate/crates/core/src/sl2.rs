//! The `SL(2, R)` model case and the finite-dimensional `su(2)` action.
//!
//! A module with parameter `lambda` and K-weights `k` in `2Z` (even) or
//! `1 + 2Z` (odd) has raising and lowering coefficients
//! `a_k = (lambda + k + 1) / 2` and `b_k = (lambda - k + 1) / 2`; it is
//! unitary exactly when every product `a_k b_{k+2} = (lambda^2 - (k+1)^2) / 4`
//! is a negative real.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, Su21Error};
use crate::scalar::{GaussianRational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn admits(self, k: i64) -> bool {
        k.rem_euclid(2) == i64::from(self == Parity::Odd)
    }
}

impl FromStr for Parity {
    type Err = Su21Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            _ => Err(Su21Error::Parse(format!("parity must be even or odd, got {s:?}"))),
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sl2Params {
    pub lambda: GaussianRational,
    pub parity: Parity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sl2Kind {
    Principal,
    Complementary,
    ReducibleWithDiscreteParts,
    MockDiscretePoint,
    FiniteDimPoint,
    Nonunitary,
}

impl Sl2Kind {
    /// Irreducible and unitary as a whole.
    pub fn is_unitary(self) -> bool {
        matches!(self, Sl2Kind::Principal | Sl2Kind::Complementary)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sl2Classification {
    pub params: Sl2Params,
    pub kind: Sl2Kind,
}

/// `(a_k, b_k)`.
pub fn sl2_coeffs(params: &Sl2Params, k: i64) -> Result<(GaussianRational, GaussianRational)> {
    if !params.parity.admits(k) {
        return Err(Su21Error::InvalidParameter(format!("k={k} is not {}", params.parity)));
    }
    let half = Rational::new(1, 2).unwrap();
    let a = (&params.lambda + &GaussianRational::from_integer(k + 1)).scale(&half);
    let b = (&params.lambda - &GaussianRational::from_integer(k - 1)).scale(&half);
    Ok((a, b))
}

/// `a_k b_{k+2}`.
pub fn sl2_product(params: &Sl2Params, k: i64) -> Result<GaussianRational> {
    let (a, _) = sl2_coeffs(params, k)?;
    let (_, b) = sl2_coeffs(params, k + 2)?;
    Ok(&a * &b)
}

fn integer(x: &Rational) -> Option<i64> {
    x.to_integer().and_then(|n| i64::try_from(n).ok())
}

pub fn sl2_classify(params: &Sl2Params) -> Sl2Classification {
    let lambda = &params.lambda;
    let re = &lambda.re;
    let kind = if re.is_zero() {
        match params.parity {
            Parity::Odd if lambda.is_zero() => Sl2Kind::MockDiscretePoint,
            _ => Sl2Kind::Principal,
        }
    } else if !lambda.is_real() {
        Sl2Kind::Nonunitary
    } else {
        match (params.parity, integer(re)) {
            (Parity::Even, Some(1 | -1)) => Sl2Kind::FiniteDimPoint,
            (Parity::Even, Some(n)) if n % 2 != 0 => Sl2Kind::ReducibleWithDiscreteParts,
            (Parity::Even, _) if re.abs() < Rational::one() => Sl2Kind::Complementary,
            (Parity::Odd, Some(n)) if n % 2 == 0 => Sl2Kind::ReducibleWithDiscreteParts,
            _ => Sl2Kind::Nonunitary,
        }
    };
    Sl2Classification { params: params.clone(), kind }
}

/// Action of `H`, `X`, `Y` on `v^k` in the `n`-dimensional `su(2)` module;
/// each entry is `(target k, coefficient)` and `None` means zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Su2Rows {
    pub h: i64,
    pub x: Option<(i64, i64)>,
    pub y: Option<(i64, i64)>,
}

pub fn su2_finite_action(n: i64, k: i64) -> Result<Su2Rows> {
    if k < 1 || k > n {
        return Err(Su21Error::InvalidParameter(format!("k={k} outside 1..={n}")));
    }
    Ok(Su2Rows { h: n + 1 - 2 * k, x: (k > 1).then_some((k - 1, -(k - 1))), y: (k < n).then_some((k + 1, -(n - k))) })
}
